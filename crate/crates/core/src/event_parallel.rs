//! Parallel schedules with axis directions. Each event moves a nonempty
//! subset of robots at once, all at unit speed, each for its own amplitude.
//!
//! Pairs of movers are brought to a canonical frame (the first one moving
//! +x) by swapping axes and reflecting; the case rows are written once for
//! that frame and mapped back through the same linear transform.

use std::sync::Arc;

use rayon::prelude::*;

use crate::affine::{Affine, Row};
use crate::event_serial::SeparationWitness;
use crate::events::{length_cap, solve_lazily, usable_dirs, EventError, PositivityCache};
use crate::geometry::{parallel_collision, serial_collision, Rect, Vec2};
use crate::instance::{Instance, Mode, Move, Schedule, Step};
use crate::lp::LinProblem;
use crate::rational::Rational;
use crate::solve::{SolveError, SolveOptions};
use crate::verify::verify_schedule;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParallelEvent {
    /// (robot, unit axis direction), robots distinct and ascending.
    pub movers: Vec<(usize, Vec2)>,
}

impl ParallelEvent {
    pub fn new(mut movers: Vec<(usize, Vec2)>) -> Self {
        movers.sort_by_key(|m| m.0);
        ParallelEvent { movers }
    }

    fn dir_of(&self, r: usize) -> Option<&Vec2> {
        self.movers.iter().find(|m| m.0 == r).map(|m| &m.1)
    }
}

/// Case for two robots moving in the same event, stated in the canonical
/// frame where the first robot moves +x.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairCase {
    /// The second robot's band lies above the first's.
    Above,
    Below,
    /// Same direction, first robot behind and never catching up.
    ChaseBehind,
    /// Same direction, first robot ahead and never caught.
    ChaseAhead,
    /// Opposite directions, first robot already past the second.
    OppositeApart,
    /// Opposite directions, the gap never closes.
    OppositeGap,
    /// Crossing: the second robot starts above the first's band.
    CrossAbove,
    /// Crossing: the second robot starts left of the first.
    CrossLeft,
    /// Crossing: the second robot stops below the first's band.
    CrossStopsBelow,
    /// Crossing: the first robot stops left of the second.
    CrossStopsLeft,
    /// Crossing through the same corner: the first robot clears it before the
    /// second arrives.
    FirstEscapes,
    /// Crossing through the same corner: the second robot clears it first.
    SecondEscapes,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParallelCase {
    /// The first robot moves and the second stays put for this event.
    Static(SeparationWitness),
    Pair(PairCase),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParallelCaseChoice {
    pub event: usize,
    pub first: usize,
    pub second: usize,
    pub case: ParallelCase,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParallelCaseAssignment {
    pub choices: Vec<ParallelCaseChoice>,
}

/// A robot during one event: start center, size, direction and amplitude.
#[derive(Debug, Clone)]
struct Body {
    x: Affine,
    y: Affine,
    w: Rational,
    h: Rational,
    dir: Vec2,
    amp: Affine,
}

impl Body {
    fn swap_axes(self) -> Body {
        Body { x: self.y, y: self.x, w: self.h, h: self.w, dir: Vec2::new(self.dir.y, self.dir.x), amp: self.amp }
    }

    fn reflect_x(self) -> Body {
        Body { x: -&self.x, dir: Vec2::new(-&self.dir.x, self.dir.y.clone()), ..self }
    }

    fn reflect_y(self) -> Body {
        Body { y: -&self.y, dir: Vec2::new(self.dir.x.clone(), -&self.dir.y), ..self }
    }

    fn right(&self) -> Affine {
        self.x.plus_const(&half(&self.w))
    }
    fn left(&self) -> Affine {
        self.x.plus_const(&-half(&self.w))
    }
    fn top(&self) -> Affine {
        self.y.plus_const(&half(&self.h))
    }
    fn bottom(&self) -> Affine {
        self.y.plus_const(&-half(&self.h))
    }
}

fn half(r: &Rational) -> Rational {
    r / &Rational::from_integer(2)
}

/// Maps the pair so that `p` moves +x and `q` moves +x, -x or +y.
fn canonical(mut p: Body, mut q: Body) -> (Body, Body) {
    if p.dir.x.is_zero() {
        p = p.swap_axes();
        q = q.swap_axes();
    }
    if p.dir.x.is_negative() {
        p = p.reflect_x();
        q = q.reflect_x();
    }
    if q.dir.y.is_negative() {
        p = p.reflect_y();
        q = q.reflect_y();
    }
    (p, q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PairKind {
    Same,
    Opposite,
    Crossing,
}

fn pair_kind(p: &Vec2, q: &Vec2) -> PairKind {
    if q == p {
        PairKind::Same
    } else if q.is_parallel_to(p) {
        PairKind::Opposite
    } else {
        PairKind::Crossing
    }
}

impl PairCase {
    fn options(kind: PairKind) -> &'static [PairCase] {
        use PairCase::*;
        match kind {
            PairKind::Same => &[Above, Below, ChaseBehind, ChaseAhead],
            PairKind::Opposite => &[Above, Below, OppositeApart, OppositeGap],
            PairKind::Crossing => &[CrossAbove, CrossLeft, CrossStopsBelow, CrossStopsLeft, FirstEscapes, SecondEscapes],
        }
    }
}

/// Rows for a pair case in the canonical frame, or `None` if the case does
/// not apply to this pair of directions.
fn pair_rows(p: &Body, q: &Body, case: PairCase) -> Option<Vec<Row>> {
    use PairCase::*;
    let kind = pair_kind(&p.dir, &q.dir);
    if !PairCase::options(kind).contains(&case) {
        return None;
    }
    let rows = match case {
        Above => vec![Row::ge(&q.bottom(), &p.top())],
        Below => vec![Row::le(&q.top(), &p.bottom())],
        ChaseBehind => vec![
            Row::le(&p.right(), &q.left()),
            Row::le(&(&p.right() + &p.amp), &(&q.left() + &q.amp)),
        ],
        ChaseAhead => vec![
            Row::le(&q.right(), &p.left()),
            Row::le(&(&q.right() + &q.amp), &(&p.left() + &p.amp)),
        ],
        OppositeApart => vec![Row::le(&q.right(), &p.left())],
        OppositeGap => vec![Row::le(&(&p.right() + &p.amp), &(&q.left() - &q.amp))],
        CrossAbove => vec![Row::ge(&q.bottom(), &p.top())],
        CrossLeft => vec![Row::le(&q.right(), &p.left())],
        CrossStopsBelow => vec![Row::le(&(&q.top() + &q.amp), &p.bottom())],
        CrossStopsLeft => vec![Row::le(&(&p.right() + &p.amp), &q.left())],
        FirstEscapes => {
            let rise = &p.bottom() - &q.top();
            let clear = &q.right() - &p.left();
            vec![
                Row::ge(&rise, &Affine::default()),
                Row::ge(&rise, &clear),
                Row::ge(&p.amp, &clear),
            ]
        }
        SecondEscapes => {
            let run = &q.left() - &p.right();
            let clear = &p.top() - &q.bottom();
            vec![
                Row::ge(&run, &Affine::default()),
                Row::ge(&run, &clear),
                Row::ge(&q.amp, &clear),
            ]
        }
    };
    Some(rows)
}

/// Rows keeping a stationary robot `q` off the sweep of `p`.
fn static_rows(p: &Body, q: &Body, w: SeparationWitness) -> Option<Vec<Row>> {
    let reach = |c: &Rational, positive: bool| {
        if !c.is_zero() && c.is_positive() == positive {
            p.amp.scale(c)
        } else {
            Affine::default()
        }
    };
    let row = match w {
        SeparationWitness::Right => Row::le(&(&p.right() + &reach(&p.dir.x, true)), &q.left()),
        SeparationWitness::Left => Row::ge(&(&p.left() + &reach(&p.dir.x, false)), &q.right()),
        SeparationWitness::Above => Row::le(&(&p.top() + &reach(&p.dir.y, true)), &q.bottom()),
        SeparationWitness::Below => Row::ge(&(&p.bottom() + &reach(&p.dir.y, false)), &q.top()),
        SeparationWitness::PerpPos | SeparationWitness::PerpNeg => return None,
    };
    Some(vec![row])
}

const STATIC_OPTIONS: [SeparationWitness; 4] = [
    SeparationWitness::Right,
    SeparationWitness::Left,
    SeparationWitness::Above,
    SeparationWitness::Below,
];

struct Model<'a> {
    inst: &'a Instance,
    events: &'a [ParallelEvent],
    /// First slot of each event; slot `s` owns variables 3s, 3s+1, 3s+2.
    offsets: Vec<usize>,
}

type Point = (Affine, Affine);

impl<'a> Model<'a> {
    fn new(inst: &'a Instance, events: &'a [ParallelEvent]) -> Self {
        let mut offsets = Vec::with_capacity(events.len());
        let mut n = 0;
        for e in events {
            offsets.push(n);
            n += e.movers.len();
        }
        Model { inst, events, offsets }
    }

    fn slots(&self) -> usize {
        self.events.iter().map(|e| e.movers.len()).sum()
    }

    fn slot(&self, i: usize, r: usize) -> Option<usize> {
        self.events[i].movers.iter().position(|m| m.0 == r).map(|j| self.offsets[i] + j)
    }

    fn size(&self, r: usize) -> &Rect {
        &self.inst.robots()[r].start
    }

    fn end_of(&self, i: usize, r: usize) -> Point {
        let s = self.slot(i, r).expect("robot moves in this event");
        let v = self.events[i].dir_of(r).expect("robot moves in this event");
        (
            &Affine::var(3 * s) + &Affine::scaled_var(3 * s + 2, v.x.clone()),
            &Affine::var(3 * s + 1) + &Affine::scaled_var(3 * s + 2, v.y.clone()),
        )
    }

    /// Center of robot `r` just before event `i`.
    fn position(&self, r: usize, i: usize) -> Point {
        match (0..i).rev().find(|&j| self.slot(j, r).is_some()) {
            Some(j) => self.end_of(j, r),
            None => {
                let c = self.inst.robots()[r].start.center();
                (Affine::constant(c.x), Affine::constant(c.y))
            }
        }
    }

    fn body(&self, i: usize, r: usize) -> Body {
        let size = self.size(r);
        match self.slot(i, r) {
            Some(s) => Body {
                x: Affine::var(3 * s),
                y: Affine::var(3 * s + 1),
                w: size.w().clone(),
                h: size.h().clone(),
                dir: self.events[i].dir_of(r).expect("mover").clone(),
                amp: Affine::var(3 * s + 2),
            },
            None => {
                let (x, y) = self.position(r, i);
                Body { x, y, w: size.w().clone(), h: size.h().clone(), dir: Vec2::default(), amp: Affine::default() }
            }
        }
    }

    fn base(&self) -> Result<LinProblem, EventError> {
        let mut names = Vec::new();
        for s in 0..self.slots() {
            names.push(format!("x{s}"));
            names.push(format!("y{s}"));
            names.push(format!("a{s}"));
        }
        let mut p = LinProblem::with_vars(names);
        for (i, e) in self.events.iter().enumerate() {
            let distinct = e.movers.windows(2).all(|w| w[0].0 < w[1].0);
            if e.movers.is_empty() || !distinct || e.movers.iter().any(|m| m.0 >= self.inst.k()) {
                return Err(EventError::InconsistentCases(format!("event {i} has a bad mover set")));
            }
            if e.movers.iter().any(|m| !m.1.is_unit_axis() || !self.inst.dirs().contains(&m.1)) {
                return Err(EventError::UnknownDirection { event: i });
            }
        }
        for (r, robot) in self.inst.robots().iter().enumerate() {
            let (s, t) = (robot.start.center(), robot.goal.center());
            let moves: Vec<usize> = (0..self.events.len()).filter(|&i| self.slot(i, r).is_some()).collect();
            if moves.is_empty() {
                if s != t {
                    return Err(EventError::IdleRobotOffGoal { robot: r });
                }
                continue;
            }
            for &i in &moves {
                let before = self.position(r, i);
                let sl = self.slot(i, r).expect("mover");
                Row::eq(&Affine::var(3 * sl), &before.0).push_to(&mut p);
                Row::eq(&Affine::var(3 * sl + 1), &before.1).push_to(&mut p);
            }
            let last = self.end_of(*moves.last().expect("nonempty"), r);
            Row::eq(&last.0, &Affine::constant(t.x.clone())).push_to(&mut p);
            Row::eq(&last.1, &Affine::constant(t.y.clone())).push_to(&mut p);
        }
        for (i, e) in self.events.iter().enumerate() {
            for (r, _) in &e.movers {
                let s = self.slot(i, *r).expect("mover");
                Row::ge(&Affine::var(3 * s + 2), &Affine::default()).push_to(&mut p);
                if let Some(b) = self.inst.bbox() {
                    let size = self.size(*r);
                    let (ex, ey) = self.end_of(i, *r);
                    Row::ge(&ex, &Affine::constant(b.left() + &size.half_w())).push_to(&mut p);
                    Row::le(&ex, &Affine::constant(b.right() - &size.half_w())).push_to(&mut p);
                    Row::ge(&ey, &Affine::constant(b.bottom() + &size.half_h())).push_to(&mut p);
                    Row::le(&ey, &Affine::constant(b.top() - &size.half_h())).push_to(&mut p);
                }
            }
        }
        Ok(p)
    }

    fn case_rows(&self, c: &ParallelCaseChoice) -> Result<Vec<Row>, EventError> {
        let bad = |m: String| Err(EventError::InconsistentCases(m));
        if c.event >= self.events.len() || c.first >= self.inst.k() || c.second >= self.inst.k() || c.first == c.second {
            return bad(format!("no pair ({}, {}) in event {}", c.first, c.second, c.event));
        }
        let first_moves = self.slot(c.event, c.first).is_some();
        let second_moves = self.slot(c.event, c.second).is_some();
        let p = self.body(c.event, c.first);
        let q = self.body(c.event, c.second);
        let rows = match (c.case, first_moves, second_moves) {
            (ParallelCase::Static(w), true, false) => static_rows(&p, &q, w),
            (ParallelCase::Pair(case), true, true) => {
                let (p, q) = canonical(p, q);
                pair_rows(&p, &q, case)
            }
            _ => None,
        };
        match rows {
            Some(r) => Ok(r),
            None => bad(format!("case {:?} does not fit event {}", c.case, c.event)),
        }
    }

    fn rect(&self, r: usize, p: &Point, x: &[Rational]) -> Rect {
        self.size(r).with_center(&Vec2::new(p.0.eval(x), p.1.eval(x)))
    }

    fn collides(&self, i: usize, a: usize, b: usize, x: &[Rational]) -> bool {
        let amp = |r: usize| self.slot(i, r).map(|s| x[3 * s + 2].clone()).unwrap_or_else(Rational::zero);
        let (aa, ab) = (amp(a), amp(b));
        let ra = self.rect(a, &(self.body(i, a).x, self.body(i, a).y), x);
        let rb = self.rect(b, &(self.body(i, b).x, self.body(i, b).y), x);
        match (aa.is_positive(), ab.is_positive()) {
            (true, true) => {
                let (va, vb) = (self.events[i].dir_of(a).expect("mover"), self.events[i].dir_of(b).expect("mover"));
                parallel_collision(&ra, va, &aa, &rb, vb, &ab).expect("unit axis directions")
            }
            (true, false) => serial_collision(&ra, &self.events[i].dir_of(a).expect("mover").scale(&aa), &rb).expect("nonzero"),
            (false, true) => serial_collision(&rb, &self.events[i].dir_of(b).expect("mover").scale(&ab), &ra).expect("nonzero"),
            (false, false) => false,
        }
    }

    fn conflict(&self, x: &[Rational]) -> Option<Vec<Vec<Row>>> {
        for (i, e) in self.events.iter().enumerate() {
            for (a, _) in &e.movers {
                for b in 0..self.inst.k() {
                    let b_moves = self.slot(i, b).is_some();
                    // Each moving pair once, with the lower index first.
                    if b == *a || (b_moves && b < *a) || !self.collides(i, *a, b, x) {
                        continue;
                    }
                    let options: Vec<ParallelCase> = if b_moves {
                        let (p, q) = canonical(self.body(i, *a), self.body(i, b));
                        PairCase::options(pair_kind(&p.dir, &q.dir)).iter().map(|&c| ParallelCase::Pair(c)).collect()
                    } else {
                        STATIC_OPTIONS.iter().map(|&w| ParallelCase::Static(w)).collect()
                    };
                    return Some(
                        options
                            .into_iter()
                            .map(|case| {
                                self.case_rows(&ParallelCaseChoice { event: i, first: *a, second: b, case })
                                    .expect("consistent")
                            })
                            .collect(),
                    );
                }
            }
        }
        None
    }

    fn schedule(&self, x: &[Rational]) -> Schedule {
        let mut steps = Vec::new();
        for (i, e) in self.events.iter().enumerate() {
            let moves: Vec<Move> = e
                .movers
                .iter()
                .filter_map(|(r, v)| {
                    let amp = x[3 * self.slot(i, *r).expect("mover") + 2].clone();
                    amp.is_positive().then(|| Move::new(*r, v.clone(), amp))
                })
                .collect();
            if !moves.is_empty() {
                steps.push(Step { moves });
            }
        }
        Schedule { steps }
    }
}

/// The LP for a parallel event sequence with the given case choices.
pub fn build_parallel_lp(
    inst: &Instance,
    events: &[ParallelEvent],
    cases: &ParallelCaseAssignment,
) -> Result<LinProblem, EventError> {
    let model = Model::new(inst, events);
    let mut p = model.base()?;
    for c in &cases.choices {
        for row in model.case_rows(c)? {
            row.push_to(&mut p);
        }
    }
    Ok(p)
}

/// Amplitudes for a fixed parallel event sequence, if any work.
pub fn solve_parallel_sequence(inst: &Instance, events: &[ParallelEvent]) -> Option<Schedule> {
    let model = Model::new(inst, events);
    let base = model.base().ok()?;
    let x = solve_lazily(&base, &|x| model.conflict(x))?;
    Some(model.schedule(&x))
}

struct Enumerator<'a> {
    inst: &'a Instance,
    dirs: Vec<Vec2>,
    usable: Vec<Vec<bool>>,
    disp: Vec<Vec2>,
    cache: Arc<PositivityCache>,
    /// Every nonempty event as a per-robot choice (0 = idle, j + 1 = dirs[j]),
    /// in base-5 order with robot 0 most significant.
    events: Vec<Vec<usize>>,
}

impl Enumerator<'_> {
    fn all_events(k: usize, n: usize, usable: &[Vec<bool>]) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for r in 0..k {
            let mut next = Vec::new();
            for prefix in out {
                for c in 0..=n {
                    if c > 0 && !usable[r][c - 1] {
                        continue;
                    }
                    let mut e = prefix.clone();
                    e.push(c);
                    next.push(e);
                }
            }
            out = next;
        }
        out.retain(|e| e.iter().any(|&c| c > 0));
        out
    }

    fn extra(&self, r: usize, used: &[usize]) -> usize {
        if self.cache.check(r, used.to_vec(), &self.dirs, &self.disp[r]) {
            return 0;
        }
        let one_more = (0..self.dirs.len()).any(|j| {
            self.usable[r][j] && {
                let mut u = used.to_vec();
                u.push(j);
                self.cache.check(r, u, &self.dirs, &self.disp[r])
            }
        });
        if one_more {
            1
        } else {
            2
        }
    }

    fn to_event(&self, choice: &[usize]) -> ParallelEvent {
        ParallelEvent::new(
            choice
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(r, &c)| (r, self.dirs[c - 1].clone()))
                .collect(),
        )
    }

    fn step(&self, seq: &mut Vec<usize>, used: &mut [Vec<usize>], extras: &mut [usize], len: usize, e: usize) -> Option<Schedule> {
        let choice = &self.events[e];
        let old = extras.to_vec();
        for (r, &c) in choice.iter().enumerate() {
            if c > 0 {
                used[r].push(c - 1);
                extras[r] = self.extra(r, &used[r]);
            }
        }
        let left = len - seq.len() - 1;
        let mut found = None;
        if extras.iter().copied().max().unwrap_or(0) <= left {
            seq.push(e);
            found = self.dfs(seq, used, extras, len);
            seq.pop();
        }
        for (r, &c) in choice.iter().enumerate() {
            if c > 0 {
                used[r].pop();
            }
        }
        extras.copy_from_slice(&old);
        found
    }

    fn dfs(&self, seq: &mut Vec<usize>, used: &mut [Vec<usize>], extras: &mut [usize], len: usize) -> Option<Schedule> {
        if seq.len() == len {
            if extras.iter().any(|&e| e > 0) {
                return None;
            }
            let events: Vec<ParallelEvent> = seq.iter().map(|&e| self.to_event(&self.events[e])).collect();
            return solve_parallel_sequence(self.inst, &events);
        }
        (0..self.events.len()).find_map(|e| self.step(seq, used, extras, len, e))
    }

    fn search(&self, len: usize, parallel: bool) -> Option<Schedule> {
        let k = self.inst.k();
        let used = vec![Vec::new(); k];
        let extras: Vec<usize> = (0..k).map(|r| self.extra(r, &[])).collect();
        if extras.iter().copied().max().unwrap_or(0) > len {
            return None;
        }
        if len == 0 {
            return self.dfs(&mut Vec::new(), &mut used.clone(), &mut extras.clone(), 0);
        }
        let run = |e: usize| self.step(&mut Vec::new(), &mut used.clone(), &mut extras.clone(), len, e);
        if parallel {
            (0..self.events.len()).into_par_iter().find_map_first(run)
        } else {
            (0..self.events.len()).find_map(run)
        }
    }
}

pub fn solve_parallel_lp(inst: &Instance) -> Result<Schedule, SolveError> {
    solve_parallel_lp_with(inst, &SolveOptions::default())
}

/// Shortest parallel schedule found by event enumeration.
pub fn solve_parallel_lp_with(inst: &Instance, opts: &SolveOptions) -> Result<Schedule, SolveError> {
    if inst.mode() != Mode::Parallel {
        return Err(SolveError::UnsupportedMode("the parallel event solver needs a parallel instance".into()));
    }
    if !inst.dirs().is_axis_aligned() {
        return Err(SolveError::NonAxisAligned);
    }
    let max_len = length_cap(inst, opts)?;
    let dirs: Vec<Vec2> = inst.dirs().as_slice().to_vec();
    let usable: Vec<Vec<bool>> = inst.robots().iter().map(|r| usable_dirs(&dirs, &r.start, inst.bbox())).collect();
    let en = Enumerator {
        inst,
        events: Enumerator::all_events(inst.k(), dirs.len(), &usable),
        usable,
        disp: inst.robots().iter().map(|r| r.displacement()).collect(),
        dirs,
        cache: Arc::new(PositivityCache::default()),
    };
    opts.install(|| {
        for len in 0..=max_len {
            if let Some(s) = en.search(len, opts.threads > 1) {
                let report = verify_schedule(inst, &s);
                assert!(report.passed(), "parallel event solver produced an invalid schedule: {report}\n{s}");
                return Ok(s);
            }
        }
        Err(SolveError::Infeasible { max_len })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{DirectionSet, Robot};
    use crate::lp::{solve_feasibility, LpOutcome};
    use crate::rational::{q, qi};

    fn par(pairs: &[((i64, i64), (i64, i64))]) -> Instance {
        let robots = pairs
            .iter()
            .map(|&((sx, sy), (gx, gy))| Robot::new(Rect::unit(sx, sy), Rect::unit(gx, gy)))
            .collect();
        Instance::new(robots, DirectionSet::axis(), None, None, Mode::Parallel).unwrap()
    }

    fn feasible(p: &LinProblem) -> Option<Vec<Rational>> {
        match solve_feasibility(p).unwrap() {
            LpOutcome::Feasible(x) => Some(x),
            LpOutcome::Infeasible(_) => None,
        }
    }

    fn both(dx: Vec2, dy: Vec2) -> ParallelEvent {
        ParallelEvent::new(vec![(0, dx), (1, dy)])
    }

    #[test]
    fn rows_moving_together() {
        let inst = par(&[((0, 0), (3, 0)), ((0, 3), (3, 3))]);
        let ev = [both(Vec2::plus_x(), Vec2::plus_x())];
        let cases = ParallelCaseAssignment {
            choices: vec![ParallelCaseChoice { event: 0, first: 0, second: 1, case: ParallelCase::Pair(PairCase::Above) }],
        };
        let x = feasible(&build_parallel_lp(&inst, &ev, &cases).unwrap()).unwrap();
        assert_eq!((x[2].clone(), x[5].clone()), (qi(3), qi(3)));
        assert_eq!(solve_parallel_lp(&inst).unwrap().len(), 1);
    }

    #[test]
    fn head_on_has_no_branch() {
        let inst = par(&[((0, 0), (4, 0)), ((4, 0), (0, 0))]);
        let ev = [both(Vec2::plus_x(), Vec2::minus_x())];
        for &case in PairCase::options(PairKind::Opposite) {
            let cases = ParallelCaseAssignment {
                choices: vec![ParallelCaseChoice { event: 0, first: 0, second: 1, case: ParallelCase::Pair(case) }],
            };
            assert!(feasible(&build_parallel_lp(&inst, &ev, &cases).unwrap()).is_none(), "{case:?}");
        }
        assert!(solve_parallel_sequence(&inst, &ev).is_none());
    }

    fn escape_instance(amp_p: Rational) -> Instance {
        // Robot 0 sits above robot 1's column and slides right while robot 1 rises.
        let robots = vec![
            Robot::new(Rect::unit(0, 2), Rect::new(amp_p, qi(2), qi(1), qi(1)).unwrap()),
            Robot::new(Rect::unit(0, 0), Rect::unit(0, 5)),
        ];
        Instance::new(robots, DirectionSet::axis(), None, None, Mode::Parallel).unwrap()
    }

    #[test]
    fn escape_needs_enough_amplitude() {
        let ev = [both(Vec2::plus_x(), Vec2::plus_y())];
        let escape = ParallelCaseAssignment {
            choices: vec![ParallelCaseChoice {
                event: 0,
                first: 0,
                second: 1,
                case: ParallelCase::Pair(PairCase::FirstEscapes),
            }],
        };
        let ok = escape_instance(qi(3));
        assert!(feasible(&build_parallel_lp(&ok, &ev, &escape).unwrap()).is_some());
        assert!(solve_parallel_sequence(&ok, &ev).is_some());

        let short = escape_instance(q(1, 2));
        assert!(feasible(&build_parallel_lp(&short, &ev, &escape).unwrap()).is_none());
        assert!(solve_parallel_sequence(&short, &ev).is_none());
        let (a, b) = (Rect::unit(0, 2), Rect::unit(0, 0));
        assert!(parallel_collision(&a, &Vec2::plus_x(), &q(1, 2), &b, &Vec2::plus_y(), &qi(5)).unwrap());
    }

    #[test]
    fn swap_takes_three() {
        let inst = par(&[((0, 0), (4, 0)), ((4, 0), (0, 0))]);
        let s = solve_parallel_lp(&inst).unwrap();
        assert_eq!(s.len(), 3);
        let t = solve_parallel_lp_with(&inst, &SolveOptions { threads: 4, ..Default::default() }).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn at_goal_is_empty() {
        let inst = par(&[((0, 0), (0, 0)), ((3, 0), (3, 0))]);
        assert!(solve_parallel_lp(&inst).unwrap().is_empty());
    }

    #[test]
    fn canonical_frame_covers_all_direction_pairs() {
        let axis = [Vec2::plus_x(), Vec2::minus_x(), Vec2::plus_y(), Vec2::minus_y()];
        let body = |dir: &Vec2| Body {
            x: Affine::default(),
            y: Affine::default(),
            w: qi(1),
            h: qi(1),
            dir: dir.clone(),
            amp: Affine::default(),
        };
        for a in &axis {
            for b in &axis {
                let (p, q) = canonical(body(a), body(b));
                assert_eq!(p.dir, Vec2::plus_x());
                assert!([Vec2::plus_x(), Vec2::minus_x(), Vec2::plus_y()].contains(&q.dir), "{a} {b}");
            }
        }
    }

    #[test]
    fn rejects_wrong_inputs() {
        let serial = Instance::free_serial(vec![Robot::new(Rect::unit(0, 0), Rect::unit(1, 0))]).unwrap();
        assert!(matches!(solve_parallel_lp(&serial), Err(SolveError::UnsupportedMode(_))));
        let inst = par(&[((0, 0), (3, 0)), ((0, 3), (3, 3))]);
        let bad = ParallelCaseAssignment {
            choices: vec![ParallelCaseChoice {
                event: 0,
                first: 0,
                second: 1,
                case: ParallelCase::Pair(PairCase::OppositeGap),
            }],
        };
        let ev = [both(Vec2::plus_x(), Vec2::plus_x())];
        assert!(matches!(build_parallel_lp(&inst, &ev, &bad), Err(EventError::InconsistentCases(_))));
    }
}
