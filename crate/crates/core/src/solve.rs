//! Solver options, errors and the dispatcher that picks a solver per instance.

use thiserror::Error;

use crate::instance::{Instance, Mode, Schedule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("no schedule of length at most {max_len}")]
    Infeasible { max_len: usize },
    #[error("unsupported instance: {0}")]
    UnsupportedMode(String),
    #[error("no length bound is known for this instance; supply a budget")]
    BudgetRequired,
    #[error("parallel motion is only supported for the axis-aligned direction set")]
    NonAxisAligned,
}

/// Knobs shared by all solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Worker threads for top-level branching. `1` searches sequentially.
    pub threads: usize,
    /// Extra cap on schedule length, applied on top of the instance budget.
    pub max_moves: Option<usize>,
    /// Use the literal four-case edge constraints in the serial event solver.
    pub legacy_cases: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            threads: 1,
            max_moves: None,
            legacy_cases: false,
        }
    }
}

impl SolveOptions {
    pub(crate) fn cap(&self, len: usize) -> usize {
        self.max_moves.map_or(len, |m| m.min(len))
    }

    /// Runs `f` on a pool of `threads` workers, or inline for one thread.
    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        if self.threads <= 1 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    Grid,
    EventLp,
}

/// The solver used when none is requested: the grid search for axis-aligned
/// serial instances in the free plane, the event solvers otherwise.
pub fn default_solver(inst: &Instance) -> SolverChoice {
    if inst.mode() == Mode::Serial && inst.dirs().is_axis_aligned() && inst.bbox().is_none() {
        SolverChoice::Grid
    } else {
        SolverChoice::EventLp
    }
}

pub fn solve(inst: &Instance, choice: Option<SolverChoice>, opts: &SolveOptions) -> Result<Schedule, SolveError> {
    match choice.unwrap_or_else(|| default_solver(inst)) {
        SolverChoice::Grid => crate::grid_search::solve_serial_grid_with(inst, opts),
        SolverChoice::EventLp => match inst.mode() {
            Mode::Serial => crate::event_serial::solve_serial_lp_with(inst, opts),
            Mode::Parallel => crate::event_parallel::solve_parallel_lp_with(inst, opts),
        },
    }
}
