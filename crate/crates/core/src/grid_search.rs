//! Minimum-length serial schedules for axis-aligned robots in the free plane,
//! by iterative deepening over moves that end on stacking-grid lines.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::geometry::{interiors_overlap, sweep_bounds, Rect, Vec2};
use crate::grid::{build_grid, Grid};
use crate::instance::{Instance, Mode, Move, Schedule};
use crate::rational::Rational;
use crate::solve::{SolveError, SolveOptions};

type State = Vec<Vec2>;

struct Search<'a> {
    sizes: Vec<Rect>,
    goals: Vec<Vec2>,
    grid: &'a Grid,
    dirs: [Vec2; 4],
}

impl Search<'_> {
    fn rect(&self, state: &State, i: usize) -> Rect {
        self.sizes[i].with_center(&state[i])
    }

    /// Coordinates still away from their goal; one move fixes at most one.
    fn heuristic(&self, state: &State) -> usize {
        state
            .iter()
            .zip(&self.goals)
            .map(|(c, g)| usize::from(c.x != g.x) + usize::from(c.y != g.y))
            .sum()
    }

    fn blocked(&self, state: &State, robot: usize, v: &Vec2) -> bool {
        let sweep = sweep_bounds(&self.rect(state, robot), v);
        (0..state.len()).any(|j| j != robot && interiors_overlap(&sweep, &self.rect(state, j)))
    }

    /// Legal moves in canonical order: robot, then `+x, -x, +y, -y`, then
    /// destination coordinate ascending.
    fn moves(&self, state: &State) -> Vec<(Move, Vec2)> {
        let mut out = Vec::new();
        for robot in 0..state.len() {
            let here = &state[robot];
            for dir in &self.dirs {
                let horizontal = !dir.x.is_zero();
                let (lines, cur) = if horizontal { (&self.grid.xs, &here.x) } else { (&self.grid.ys, &here.y) };
                let forward = dir.x.is_positive() || dir.y.is_positive();
                let pos = lines.partition_point(|c| c <= cur);
                let candidates: Box<dyn Iterator<Item = &Rational>> = if forward {
                    Box::new(lines[pos..].iter())
                } else {
                    let below = lines.partition_point(|c| c < cur);
                    Box::new(lines[..below].iter().rev())
                };
                let mut found = Vec::new();
                // Sweeps grow with distance, so the first blocked destination
                // blocks all farther ones.
                for c in candidates {
                    let amp = (c - cur).abs();
                    let v = dir.scale(&amp);
                    if self.blocked(state, robot, &v) {
                        break;
                    }
                    let next = here + &v;
                    found.push((Move::new(robot, dir.clone(), amp), next));
                }
                if !forward {
                    found.reverse();
                }
                out.extend(found);
            }
        }
        out
    }

    fn dfs(&self, state: &mut State, left: usize, path: &mut Vec<Move>, seen: &mut HashMap<State, usize>) -> bool {
        let h = self.heuristic(state);
        if h == 0 {
            return true;
        }
        if h > left {
            return false;
        }
        if seen.get(state).is_some_and(|&failed| failed >= left) {
            return false;
        }
        for (m, next) in self.moves(state) {
            let robot = m.robot;
            let prev = std::mem::replace(&mut state[robot], next);
            path.push(m);
            if self.dfs(state, left - 1, path, seen) {
                return true;
            }
            path.pop();
            state[robot] = prev;
        }
        seen.insert(state.clone(), left);
        false
    }

    fn search(&self, start: &State, depth: usize, parallel: bool) -> Option<Vec<Move>> {
        if !parallel || depth == 0 {
            let mut state = start.clone();
            let mut path = Vec::new();
            return self
                .dfs(&mut state, depth, &mut path, &mut HashMap::new())
                .then_some(path);
        }
        if self.heuristic(start) == 0 {
            return Some(Vec::new());
        }
        self.moves(start).into_par_iter().find_map_first(|(m, next)| {
            let mut state = start.clone();
            state[m.robot] = next;
            let mut path = vec![m];
            self.dfs(&mut state, depth - 1, &mut path, &mut HashMap::new()).then_some(path)
        })
    }
}

/// Shortest serial schedule with the default options.
pub fn solve_serial_grid(inst: &Instance) -> Result<Schedule, SolveError> {
    solve_serial_grid_with(inst, &SolveOptions::default())
}

/// Among optimal schedules the result is the least in canonical move order,
/// independent of the thread count.
pub fn solve_serial_grid_with(inst: &Instance, opts: &SolveOptions) -> Result<Schedule, SolveError> {
    if inst.mode() != Mode::Serial {
        return Err(SolveError::UnsupportedMode("the grid search handles serial instances only".into()));
    }
    if !inst.dirs().is_axis_aligned() {
        return Err(SolveError::UnsupportedMode("the grid search needs the axis-aligned direction set".into()));
    }
    if inst.bbox().is_some() {
        return Err(SolveError::UnsupportedMode("the grid search works in the free plane only".into()));
    }
    let cap = 4 * inst.k();
    let max_len = opts.cap(inst.budget().map_or(cap, |b| b.min(cap)));
    let start: State = inst.robots().iter().map(|r| r.start.center()).collect();
    let goals: State = inst.robots().iter().map(|r| r.goal.center()).collect();
    let sizes = inst.starts();
    opts.install(|| {
        for depth in 0..=max_len {
            let grid = build_grid(inst, depth).expect("axis-aligned");
            let search = Search {
                sizes: sizes.clone(),
                goals: goals.clone(),
                grid: &grid,
                dirs: [Vec2::plus_x(), Vec2::minus_x(), Vec2::plus_y(), Vec2::minus_y()],
            };
            if let Some(path) = search.search(&start, depth, opts.threads > 1) {
                return Ok(Schedule::serial(path));
            }
        }
        Err(SolveError::Infeasible { max_len })
    })
}
