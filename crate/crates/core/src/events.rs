//! Pieces shared by the serial and parallel event solvers.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::affine::Row;
use crate::configurations::boxed_budget;
use crate::geometry::{Rect, Vec2};
use crate::instance::Instance;
use crate::lp::{solve_feasibility, LinProblem, LpOutcome, Relation};
use crate::rational::Rational;
use crate::solve::{SolveError, SolveOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EventError {
    #[error("case assignment does not match the events: {0}")]
    InconsistentCases(String),
    #[error("robot {robot} has no events but is not at its goal")]
    IdleRobotOffGoal { robot: usize },
    #[error("event {event} uses a direction outside the set")]
    UnknownDirection { event: usize },
}

/// Fewest moves that can carry a robot by `d`: none, one straight move along
/// some direction, or at least two.
pub fn min_moves(d: &Vec2, dirs: &[Vec2]) -> usize {
    if d.is_zero() {
        0
    } else if dirs.iter().any(|v| v.is_parallel_to(d) && v.dot(d).is_positive()) {
        1
    } else {
        2
    }
}

/// Is `d` a combination of `dirs` with every coefficient strictly positive?
pub fn strictly_positive_combination(dirs: &[Vec2], d: &Vec2) -> bool {
    if dirs.is_empty() {
        return d.is_zero();
    }
    // Homogenized: sum(a_j v_j) = t d with a_j >= 1 and t >= 1.
    let n = dirs.len();
    let mut p = LinProblem::with_vars((0..=n).map(|j| format!("v{j}")));
    for axis in 0..2 {
        let mut row: Vec<Rational> = dirs.iter().map(|v| if axis == 0 { v.x.clone() } else { v.y.clone() }).collect();
        row.push(-(if axis == 0 { d.x.clone() } else { d.y.clone() }));
        p.push(row, Relation::Eq, Rational::zero());
    }
    for j in 0..=n {
        let mut row = vec![Rational::zero(); n + 1];
        row[j] = Rational::one();
        p.push(row, Relation::Ge, Rational::one());
    }
    solve_feasibility(&p).expect("well formed").is_feasible()
}

/// Memo for [`strictly_positive_combination`] keyed by robot and the sorted
/// direction indices it uses.
#[derive(Default)]
pub struct PositivityCache {
    map: Mutex<HashMap<(usize, Vec<usize>), bool>>,
}

impl PositivityCache {
    pub fn check(&self, robot: usize, mut used: Vec<usize>, dirs: &[Vec2], d: &Vec2) -> bool {
        used.sort_unstable();
        let key = (robot, used);
        if let Some(&v) = self.map.lock().expect("not poisoned").get(&key) {
            return v;
        }
        let vs: Vec<Vec2> = key.1.iter().map(|&j| dirs[j].clone()).collect();
        let v = strictly_positive_combination(&vs, d);
        self.map.lock().expect("not poisoned").insert(key, v);
        v
    }
}

/// Directions along which `size` can move at all inside `bbox`.
pub fn usable_dirs(dirs: &[Vec2], size: &Rect, bbox: Option<&Rect>) -> Vec<bool> {
    dirs.iter()
        .map(|v| match bbox {
            None => true,
            Some(b) => !((b.w() == size.w() && !v.x.is_zero()) || (b.h() == size.h() && !v.y.is_zero())),
        })
        .collect()
}

/// Length cap for an event search.
pub fn length_cap(inst: &Instance, opts: &SolveOptions) -> Result<usize, SolveError> {
    let k = inst.k();
    let bound = if inst.bbox().is_none() && inst.dirs().has_two_non_parallel() {
        Some(4 * k)
    } else if inst.bbox().is_some() && inst.dirs().is_axis_aligned() {
        Some(boxed_budget(k).to_usize().unwrap_or(usize::MAX))
    } else {
        None
    };
    let cap = match (bound, inst.budget()) {
        (Some(b), Some(u)) => b.min(u),
        (Some(b), None) => b,
        (None, Some(u)) => u,
        (None, None) => return Err(SolveError::BudgetRequired),
    };
    Ok(opts.cap(cap))
}

/// Depth-first refinement of a feasible point. `conflict` returns `None`
/// when the point is acceptable, or the alternative constraint sets for the
/// first violated pair; each alternative must by itself rule that pair out.
pub fn refine(
    p: &LinProblem,
    x: Vec<Rational>,
    conflict: &dyn Fn(&[Rational]) -> Option<Vec<Vec<Row>>>,
) -> Option<Vec<Rational>> {
    let Some(options) = conflict(&x) else { return Some(x) };
    for rows in options {
        let mut q = p.clone();
        for r in &rows {
            r.push_to(&mut q);
        }
        if let LpOutcome::Feasible(y) = solve_feasibility(&q).expect("well formed") {
            if let Some(found) = refine(&q, y, conflict) {
                return Some(found);
            }
        }
    }
    None
}

/// Solves `p`, then refines.
pub fn solve_lazily(
    p: &LinProblem,
    conflict: &dyn Fn(&[Rational]) -> Option<Vec<Vec<Row>>>,
) -> Option<Vec<Rational>> {
    match solve_feasibility(p).expect("well formed") {
        LpOutcome::Feasible(x) => refine(p, x, conflict),
        LpOutcome::Infeasible(_) => None,
    }
}
