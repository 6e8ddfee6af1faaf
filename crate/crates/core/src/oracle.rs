//! Brute-force optimal lengths for unit squares on the integer lattice.
//!
//! States are tuples of integer centers inside a window. A transition slides
//! robots by positive integer distances along the axes. Collision decisions
//! come from the geometry predicates alone, so this module shares no search or
//! LP code with the solvers.

use std::collections::HashSet;

use thiserror::Error;

use crate::geometry::{parallel_collision, serial_collision, Rect, Vec2};
use crate::instance::Instance;
use crate::rational::{qi, Rational};

/// Default cap on stored states.
pub const DEFAULT_STATE_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleAnswer {
    Optimal(usize),
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the oracle needs unit squares at integer centers with the axis-aligned direction set")]
    NonLatticeInstance,
    #[error("a start or goal lies outside the window")]
    WindowTooSmall,
    #[error("more than {0} states")]
    StateSpaceExceeded(usize),
}

type State = Vec<(i64, i64)>;

const DIRS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

struct Lattice {
    goal: State,
    /// Inclusive center ranges.
    xr: (i64, i64),
    yr: (i64, i64),
    cap: usize,
}

fn square(c: (i64, i64)) -> Rect {
    Rect::unit(c.0, c.1)
}

fn dir_vec(d: (i64, i64)) -> Vec2 {
    Vec2::from_ints(d.0, d.1)
}

fn lattice_center(r: &Rect) -> Option<(i64, i64)> {
    if r.w() != &Rational::one() || r.h() != &Rational::one() {
        return None;
    }
    Some((r.cx().to_i64()?, r.cy().to_i64()?))
}

impl Lattice {
    fn new(inst: &Instance, window: &Rect, cap: usize) -> Result<(Self, State), OracleError> {
        if !inst.dirs().is_axis_aligned() {
            return Err(OracleError::NonLatticeInstance);
        }
        let mut start = Vec::new();
        let mut goal = Vec::new();
        for r in inst.robots() {
            start.push(lattice_center(&r.start).ok_or(OracleError::NonLatticeInstance)?);
            goal.push(lattice_center(&r.goal).ok_or(OracleError::NonLatticeInstance)?);
        }
        let window = inst.bbox().unwrap_or(window);
        let half = Rational::new(1, 2);
        let range = |lo: Rational, hi: Rational| -> Option<(i64, i64)> {
            Some(((&lo + &half).ceil().to_i64()?, (&hi - &half).floor().to_i64()?))
        };
        let xr = range(window.left(), window.right()).ok_or(OracleError::WindowTooSmall)?;
        let yr = range(window.bottom(), window.top()).ok_or(OracleError::WindowTooSmall)?;
        let lat = Lattice { goal, xr, yr, cap };
        if !start.iter().chain(&lat.goal).all(|&c| lat.inside(c)) {
            return Err(OracleError::WindowTooSmall);
        }
        Ok((lat, start))
    }

    fn inside(&self, (x, y): (i64, i64)) -> bool {
        self.xr.0 <= x && x <= self.xr.1 && self.yr.0 <= y && y <= self.yr.1
    }

    fn off_goal(&self, s: &State, i: usize) -> usize {
        usize::from(s[i].0 != self.goal[i].0) + usize::from(s[i].1 != self.goal[i].1)
    }

    /// Every slide of robot `i` that stays in the window, nearest first per direction.
    fn slides(&self, s: &State, i: usize) -> Vec<((i64, i64), i64)> {
        let mut out = Vec::new();
        for d in DIRS {
            let mut dist = 1;
            loop {
                let to = (s[i].0 + d.0 * dist, s[i].1 + d.1 * dist);
                if !self.inside(to) {
                    break;
                }
                out.push((d, dist));
                dist += 1;
            }
        }
        out
    }

    fn hits_stationary(&self, s: &State, i: usize, d: (i64, i64), dist: i64, moving: &[bool]) -> bool {
        let v = dir_vec(d).scale(&qi(dist));
        (0..s.len()).any(|j| !moving[j] && serial_collision(&square(s[i]), &v, &square(s[j])).expect("nonzero"))
    }

    fn serial_successors(&self, s: &State) -> Vec<State> {
        let mut out = Vec::new();
        let mut moving = vec![false; s.len()];
        for i in 0..s.len() {
            moving[i] = true;
            let mut blocked_dir = None;
            for (d, dist) in self.slides(s, i) {
                if blocked_dir == Some(d) {
                    continue;
                }
                if self.hits_stationary(s, i, d, dist, &moving) {
                    blocked_dir = Some(d);
                    continue;
                }
                let mut t = s.clone();
                t[i] = (s[i].0 + d.0 * dist, s[i].1 + d.1 * dist);
                out.push(t);
            }
            moving[i] = false;
        }
        out
    }

    fn parallel_successors(&self, s: &State) -> Vec<State> {
        let k = s.len();
        let options: Vec<Vec<((i64, i64), i64)>> = (0..k).map(|i| self.slides(s, i)).collect();
        let mut out = Vec::new();
        let mut choice: Vec<Option<((i64, i64), i64)>> = vec![None; k];
        self.combine(s, &options, 0, &mut choice, &mut out);
        out
    }

    fn combine(
        &self,
        s: &State,
        options: &[Vec<((i64, i64), i64)>],
        i: usize,
        choice: &mut Vec<Option<((i64, i64), i64)>>,
        out: &mut Vec<State>,
    ) {
        if i == s.len() {
            if choice.iter().all(Option::is_none) || !self.joint_ok(s, choice) {
                return;
            }
            let mut t = s.clone();
            for (j, c) in choice.iter().enumerate() {
                if let Some((d, dist)) = c {
                    t[j] = (s[j].0 + d.0 * dist, s[j].1 + d.1 * dist);
                }
            }
            out.push(t);
            return;
        }
        choice[i] = None;
        self.combine(s, options, i + 1, choice, out);
        for &opt in &options[i] {
            choice[i] = Some(opt);
            self.combine(s, options, i + 1, choice, out);
        }
        choice[i] = None;
    }

    fn joint_ok(&self, s: &State, choice: &[Option<((i64, i64), i64)>]) -> bool {
        let moving: Vec<bool> = choice.iter().map(Option::is_some).collect();
        for (i, c) in choice.iter().enumerate() {
            let Some((d, dist)) = *c else { continue };
            if self.hits_stationary(s, i, d, dist, &moving) {
                return false;
            }
            for (j, c2) in choice.iter().enumerate().skip(i + 1) {
                let Some((d2, dist2)) = *c2 else { continue };
                let hit = parallel_collision(
                    &square(s[i]),
                    &dir_vec(d),
                    &qi(dist),
                    &square(s[j]),
                    &dir_vec(d2),
                    &qi(dist2),
                )
                .expect("unit axis directions");
                if hit {
                    return false;
                }
            }
        }
        true
    }

    /// Breadth-first search that discards states whose depth plus estimate
    /// exceeds `limit`. Returns the goal depth, or the smallest discarded
    /// bound when the goal was not reached (`None` when nothing was discarded,
    /// meaning every reachable state was visited).
    fn bounded(
        &self,
        start: &State,
        limit: usize,
        succ: &dyn Fn(&State) -> Vec<State>,
        h: &dyn Fn(&State) -> usize,
    ) -> Result<Result<usize, Option<usize>>, OracleError> {
        if *start == self.goal {
            return Ok(Ok(0));
        }
        let mut seen: HashSet<State> = HashSet::from([start.clone()]);
        let mut frontier = vec![start.clone()];
        let mut depth = 0;
        let mut next_limit: Option<usize> = None;
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for t in succ(s) {
                    if seen.contains(&t) {
                        continue;
                    }
                    if t == self.goal {
                        return Ok(Ok(depth + 1));
                    }
                    let f = depth + 1 + h(&t);
                    if f > limit {
                        next_limit = Some(next_limit.map_or(f, |n| n.min(f)));
                        continue;
                    }
                    seen.insert(t.clone());
                    if seen.len() > self.cap {
                        return Err(OracleError::StateSpaceExceeded(self.cap));
                    }
                    next.push(t);
                }
            }
            frontier = next;
            depth += 1;
        }
        Ok(Err(next_limit))
    }

    fn run(
        &self,
        start: &State,
        succ: &dyn Fn(&State) -> Vec<State>,
        h: &dyn Fn(&State) -> usize,
    ) -> Result<OracleAnswer, OracleError> {
        let mut limit = h(start);
        loop {
            match self.bounded(start, limit, succ, h)? {
                Ok(n) => return Ok(OracleAnswer::Optimal(n)),
                Err(None) => return Ok(OracleAnswer::Infeasible),
                Err(Some(next)) => limit = next,
            }
        }
    }
}

/// A `side` x `side` window around the middle of the instance's centers.
pub fn default_window(inst: &Instance, side: i64) -> Rect {
    let pts: Vec<Vec2> = inst
        .robots()
        .iter()
        .flat_map(|r| [r.start.center(), r.goal.center()])
        .collect();
    let lo_x = pts.iter().map(|p| p.x.clone()).min().expect("k >= 1");
    let hi_x = pts.iter().map(|p| p.x.clone()).max().expect("k >= 1");
    let lo_y = pts.iter().map(|p| p.y.clone()).min().expect("k >= 1");
    let hi_y = pts.iter().map(|p| p.y.clone()).max().expect("k >= 1");
    let two = qi(2);
    let cx = ((lo_x + hi_x) / &two).floor();
    let cy = ((lo_y + hi_y) / &two).floor();
    Rect::new(cx, cy, qi(side), qi(side)).expect("positive side")
}

pub fn bfs_serial(inst: &Instance, window: &Rect) -> Result<OracleAnswer, OracleError> {
    bfs_serial_capped(inst, window, DEFAULT_STATE_CAP)
}

pub fn bfs_serial_capped(inst: &Instance, window: &Rect, cap: usize) -> Result<OracleAnswer, OracleError> {
    let (lat, start) = Lattice::new(inst, window, cap)?;
    let h = |s: &State| (0..s.len()).map(|i| lat.off_goal(s, i)).sum();
    lat.run(&start, &|s| lat.serial_successors(s), &h)
}

pub fn bfs_parallel(inst: &Instance, window: &Rect) -> Result<OracleAnswer, OracleError> {
    bfs_parallel_capped(inst, window, DEFAULT_STATE_CAP)
}

pub fn bfs_parallel_capped(inst: &Instance, window: &Rect, cap: usize) -> Result<OracleAnswer, OracleError> {
    let (lat, start) = Lattice::new(inst, window, cap)?;
    let h = |s: &State| (0..s.len()).map(|i| lat.off_goal(s, i)).max().unwrap_or(0);
    lat.run(&start, &|s| lat.parallel_successors(s), &h)
}
