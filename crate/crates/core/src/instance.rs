//! Problem instances and schedules.

use std::fmt;

use thiserror::Error;

use crate::geometry::{interiors_overlap, Rect, Vec2};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Serial,
    Parallel,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Serial => "serial",
            Mode::Parallel => "parallel",
        })
    }
}

/// The first instance invariant that failed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantViolation {
    #[error("instance has no robots")]
    NoRobots,
    #[error("direction set is empty")]
    NoDirections,
    #[error("direction list contains the zero vector")]
    ZeroDirection,
    #[error("goal of robot {robot} does not match its start dimensions")]
    GoalDimensionMismatch { robot: usize },
    #[error("overlapping starts: robots {a} and {b}")]
    OverlappingStarts { a: usize, b: usize },
    #[error("overlapping goals: robots {a} and {b}")]
    OverlappingGoals { a: usize, b: usize },
    #[error("start of robot {robot} lies outside the box")]
    StartOutsideBox { robot: usize },
    #[error("goal of robot {robot} lies outside the box")]
    GoalOutsideBox { robot: usize },
    #[error("parallel mode requires the axis-aligned direction set")]
    ParallelNeedsAxisDirections,
}

/// Translation directions, closed under negation.
///
/// Order is the input order with each missing negation inserted right after
/// its vector, so `[(1,0), (0,1)]` becomes `+x, -x, +y, -y`.
#[derive(Clone, PartialEq, Eq)]
pub struct DirectionSet {
    dirs: Vec<Vec2>,
}

impl DirectionSet {
    pub fn new(input: impl IntoIterator<Item = Vec2>) -> Result<Self, InvariantViolation> {
        let mut dirs: Vec<Vec2> = Vec::new();
        for v in input {
            if v.is_zero() {
                return Err(InvariantViolation::ZeroDirection);
            }
            let neg = -&v;
            for d in [v, neg] {
                if !dirs.contains(&d) {
                    dirs.push(d);
                }
            }
        }
        if dirs.is_empty() {
            return Err(InvariantViolation::NoDirections);
        }
        Ok(DirectionSet { dirs })
    }

    /// `+x, -x, +y, -y`.
    pub fn axis() -> Self {
        DirectionSet::new([Vec2::plus_x(), Vec2::plus_y()]).expect("nonempty")
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Vec2> {
        self.dirs.iter()
    }

    pub fn as_slice(&self) -> &[Vec2] {
        &self.dirs
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn contains(&self, v: &Vec2) -> bool {
        self.dirs.contains(v)
    }

    pub fn index_of(&self, v: &Vec2) -> Option<usize> {
        self.dirs.iter().position(|d| d == v)
    }

    /// Exactly the four unit axis vectors.
    pub fn is_axis_aligned(&self) -> bool {
        self.dirs.len() == 4 && self.dirs.iter().all(Vec2::is_unit_axis)
    }

    pub fn has_two_non_parallel(&self) -> bool {
        let first = &self.dirs[0];
        self.dirs.iter().any(|d| !first.is_parallel_to(d))
    }
}

impl fmt::Debug for DirectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.dirs.iter()).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Robot {
    pub start: Rect,
    pub goal: Rect,
}

impl Robot {
    pub fn new(start: Rect, goal: Rect) -> Self {
        Robot { start, goal }
    }

    pub fn displacement(&self) -> Vec2 {
        &self.goal.center() - &self.start.center()
    }
}

/// A validated motion-planning instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    robots: Vec<Robot>,
    dirs: DirectionSet,
    bbox: Option<Rect>,
    budget: Option<usize>,
    mode: Mode,
}

impl Instance {
    pub fn new(
        robots: Vec<Robot>,
        dirs: DirectionSet,
        bbox: Option<Rect>,
        budget: Option<usize>,
        mode: Mode,
    ) -> Result<Self, InvariantViolation> {
        if robots.is_empty() {
            return Err(InvariantViolation::NoRobots);
        }
        for (i, r) in robots.iter().enumerate() {
            if !r.start.same_size(&r.goal) {
                return Err(InvariantViolation::GoalDimensionMismatch { robot: i });
            }
        }
        for a in 0..robots.len() {
            for b in a + 1..robots.len() {
                if interiors_overlap(&robots[a].start, &robots[b].start) {
                    return Err(InvariantViolation::OverlappingStarts { a, b });
                }
            }
        }
        for a in 0..robots.len() {
            for b in a + 1..robots.len() {
                if interiors_overlap(&robots[a].goal, &robots[b].goal) {
                    return Err(InvariantViolation::OverlappingGoals { a, b });
                }
            }
        }
        if let Some(bx) = &bbox {
            for (i, r) in robots.iter().enumerate() {
                if !bx.contains_rect(&r.start) {
                    return Err(InvariantViolation::StartOutsideBox { robot: i });
                }
                if !bx.contains_rect(&r.goal) {
                    return Err(InvariantViolation::GoalOutsideBox { robot: i });
                }
            }
        }
        if mode == Mode::Parallel && !dirs.is_axis_aligned() {
            return Err(InvariantViolation::ParallelNeedsAxisDirections);
        }
        Ok(Instance {
            robots,
            dirs,
            bbox,
            budget,
            mode,
        })
    }

    /// Axis-aligned serial instance in the free plane without a budget.
    pub fn free_serial(robots: Vec<Robot>) -> Result<Self, InvariantViolation> {
        Instance::new(robots, DirectionSet::axis(), None, None, Mode::Serial)
    }

    pub fn robots(&self) -> &[Robot] {
        &self.robots
    }

    pub fn k(&self) -> usize {
        self.robots.len()
    }

    pub fn dirs(&self) -> &DirectionSet {
        &self.dirs
    }

    pub fn bbox(&self) -> Option<&Rect> {
        self.bbox.as_ref()
    }

    pub fn budget(&self) -> Option<usize> {
        self.budget
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_budget(mut self, budget: Option<usize>) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_mode(self, mode: Mode) -> Result<Self, InvariantViolation> {
        Instance::new(self.robots, self.dirs, self.bbox, self.budget, mode)
    }

    pub fn with_box(self, bbox: Option<Rect>) -> Result<Self, InvariantViolation> {
        Instance::new(self.robots, self.dirs, bbox, self.budget, self.mode)
    }

    pub fn with_dirs(self, dirs: DirectionSet) -> Result<Self, InvariantViolation> {
        Instance::new(self.robots, dirs, self.bbox, self.budget, self.mode)
    }

    pub fn starts(&self) -> Vec<Rect> {
        self.robots.iter().map(|r| r.start.clone()).collect()
    }

    pub fn goals(&self) -> Vec<Rect> {
        self.robots.iter().map(|r| r.goal.clone()).collect()
    }

    pub fn all_at_goal(&self) -> bool {
        self.robots.iter().all(|r| r.start == r.goal)
    }
}

/// One robot translating by `amp * dir`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Move {
    pub robot: usize,
    pub dir: Vec2,
    pub amp: Rational,
}

impl Move {
    pub fn new(robot: usize, dir: Vec2, amp: Rational) -> Self {
        Move { robot, dir, amp }
    }

    pub fn displacement(&self) -> Vec2 {
        self.dir.scale(&self.amp)
    }
}

/// The moves performed during one time step. Serial steps hold one move.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Step {
    pub moves: Vec<Move>,
}

impl Step {
    pub fn single(m: Move) -> Self {
        Step { moves: vec![m] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Schedule {
    pub steps: Vec<Step>,
}

impl Schedule {
    pub fn empty() -> Self {
        Schedule::default()
    }

    /// One singleton step per move.
    pub fn serial(moves: impl IntoIterator<Item = Move>) -> Self {
        Schedule {
            steps: moves.into_iter().map(Step::single).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Applies every step's displacements to `rects`, ignoring collisions.
    pub fn final_positions(&self, rects: &[Rect]) -> Vec<Rect> {
        let mut cur = rects.to_vec();
        for step in &self.steps {
            for m in &step.moves {
                cur[m.robot] = crate::geometry::translate(&cur[m.robot], &m.displacement());
            }
        }
        cur
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, step) in self.steps.iter().enumerate() {
            write!(f, "{i}:")?;
            for m in &step.moves {
                write!(f, " R{}({:?})*{:?}", m.robot + 1, m.dir, m.amp)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
