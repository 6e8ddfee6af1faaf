//! Exact schedule simulation. Every solver's output goes through here.

use std::fmt;

use crate::geometry::{parallel_collision, serial_collision, translate, Rect};
use crate::instance::{Instance, Mode, Schedule};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailReason {
    /// A parallel step with no moves.
    EmptyStep,
    /// A serial step that does not hold exactly one move.
    SerialStepArity,
    UnknownRobot { robot: usize },
    /// The same robot appears twice in one step.
    DuplicateRobot { robot: usize },
    UnknownDirection { robot: usize },
    BadAmplitude { robot: usize },
    Collision { mover: usize, other: usize },
    OutOfBox { robot: usize },
    NotAtGoal { robot: usize },
    OverBudget { len: usize, budget: usize },
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailReason::EmptyStep => write!(f, "empty step"),
            FailReason::SerialStepArity => write!(f, "serial step must hold exactly one move"),
            FailReason::UnknownRobot { robot } => write!(f, "unknown robot {robot}"),
            FailReason::DuplicateRobot { robot } => write!(f, "robot {robot} moves twice in one step"),
            FailReason::UnknownDirection { robot } => write!(f, "robot {robot} uses a direction outside the set"),
            FailReason::BadAmplitude { robot } => write!(f, "robot {robot} has a non-positive amplitude"),
            FailReason::Collision { mover, other } => write!(f, "collision between robots {mover} and {other}"),
            FailReason::OutOfBox { robot } => write!(f, "robot {robot} leaves the box"),
            FailReason::NotAtGoal { robot } => write!(f, "robot {robot} does not end at its goal"),
            FailReason::OverBudget { len, budget } => write!(f, "schedule length {len} exceeds budget {budget}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyFailure {
    /// Offending step. End-of-schedule checks report `schedule.len()`.
    pub step: usize,
    pub reason: FailReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub failure: Option<VerifyFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn reason(&self) -> Option<&FailReason> {
        self.failure.as_ref().map(|f| &f.reason)
    }

    fn fail(step: usize, reason: FailReason) -> Self {
        VerifyReport {
            failure: Some(VerifyFailure { step, reason }),
        }
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "pass"),
            Some(VerifyFailure { step, reason }) => write!(f, "fail at step {step}: {reason}"),
        }
    }
}

pub fn verify_schedule(inst: &Instance, s: &Schedule) -> VerifyReport {
    let k = inst.k();
    let mut cur: Vec<Rect> = inst.starts();
    for (si, step) in s.steps.iter().enumerate() {
        match inst.mode() {
            Mode::Serial if step.moves.len() != 1 => return VerifyReport::fail(si, FailReason::SerialStepArity),
            Mode::Parallel if step.moves.is_empty() => return VerifyReport::fail(si, FailReason::EmptyStep),
            _ => {}
        }
        let mut moving = vec![false; k];
        for m in &step.moves {
            if m.robot >= k {
                return VerifyReport::fail(si, FailReason::UnknownRobot { robot: m.robot });
            }
            if moving[m.robot] {
                return VerifyReport::fail(si, FailReason::DuplicateRobot { robot: m.robot });
            }
            moving[m.robot] = true;
        }
        for m in &step.moves {
            if !inst.dirs().contains(&m.dir) {
                return VerifyReport::fail(si, FailReason::UnknownDirection { robot: m.robot });
            }
            if !m.amp.is_positive() {
                return VerifyReport::fail(si, FailReason::BadAmplitude { robot: m.robot });
            }
        }
        for (a, ma) in step.moves.iter().enumerate() {
            let va = ma.displacement();
            for other in 0..k {
                if moving[other] {
                    continue;
                }
                let hit = serial_collision(&cur[ma.robot], &va, &cur[other]).expect("nonzero displacement");
                if hit {
                    return VerifyReport::fail(si, FailReason::Collision { mover: ma.robot, other });
                }
            }
            for mb in &step.moves[a + 1..] {
                let hit = parallel_collision(&cur[ma.robot], &ma.dir, &ma.amp, &cur[mb.robot], &mb.dir, &mb.amp)
                    .expect("parallel instances use unit axis directions");
                if hit {
                    let (lo, hi) = (ma.robot.min(mb.robot), ma.robot.max(mb.robot));
                    return VerifyReport::fail(si, FailReason::Collision { mover: lo, other: hi });
                }
            }
        }
        let next: Vec<(usize, Rect)> = step
            .moves
            .iter()
            .map(|m| (m.robot, translate(&cur[m.robot], &m.displacement())))
            .collect();
        if let Some(bx) = inst.bbox() {
            // The box is convex, so containing both ends of a straight sweep suffices.
            for (r, rect) in &next {
                if !bx.contains_rect(rect) {
                    return VerifyReport::fail(si, FailReason::OutOfBox { robot: *r });
                }
            }
        }
        for (r, rect) in next {
            cur[r] = rect;
        }
    }
    for (i, r) in inst.robots().iter().enumerate() {
        if cur[i] != r.goal {
            return VerifyReport::fail(s.len(), FailReason::NotAtGoal { robot: i });
        }
    }
    if let Some(budget) = inst.budget() {
        if s.len() > budget {
            return VerifyReport::fail(s.len(), FailReason::OverBudget { len: s.len(), budget });
        }
    }
    VerifyReport { failure: None }
}
