//! Serial schedules for any direction set, in the free plane or inside a box.
//!
//! A candidate schedule is a sequence of events (robot, direction). For each
//! sequence an exact LP over start positions and amplitudes decides whether
//! amplitudes exist. Collision constraints are added lazily: the LP point is
//! checked with the exact geometry and only the first colliding
//! (event, robot) pair is branched on.

use std::sync::Arc;

use rayon::prelude::*;

use crate::affine::{Affine, Row};
use crate::events::{length_cap, solve_lazily, usable_dirs, EventError, PositivityCache};
use crate::geometry::{serial_collision, Rect, Vec2};
use crate::instance::{Instance, Mode, Move, Schedule};
use crate::lp::LinProblem;
use crate::rational::Rational;
use crate::solve::{SolveError, SolveOptions};
use crate::verify::verify_schedule;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Event {
    pub robot: usize,
    pub dir: Vec2,
}

impl Event {
    pub fn new(robot: usize, dir: Vec2) -> Self {
        Event { robot, dir }
    }
}

/// Where the other robot sits relative to the swept region of a move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeparationWitness {
    Right,
    Left,
    Above,
    Below,
    /// On the side of the sweep that `perp(dir)` points to.
    PerpPos,
    PerpNeg,
}

impl SeparationWitness {
    pub const ALL: [SeparationWitness; 6] = [
        SeparationWitness::Right,
        SeparationWitness::Left,
        SeparationWitness::Above,
        SeparationWitness::Below,
        SeparationWitness::PerpPos,
        SeparationWitness::PerpNeg,
    ];

    /// Witnesses needed for a move along `dir`. For axis moves the normal of
    /// the direction is itself an axis, so the last two are redundant.
    pub fn for_dir(dir: &Vec2) -> &'static [SeparationWitness] {
        if dir.is_axis_parallel() {
            &Self::ALL[..4]
        } else {
            &Self::ALL
        }
    }
}

/// Where the crossing point of the two supporting lines lies, for a trace
/// edge `pq` and a robot edge `rs`, each ordered by increasing x (increasing
/// y when vertical).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeCase {
    BeforeTraceEdge,
    AfterTraceEdge,
    BeforeRobotEdge,
    AfterRobotEdge,
}

impl EdgeCase {
    pub const ALL: [EdgeCase; 4] = [
        EdgeCase::BeforeTraceEdge,
        EdgeCase::AfterTraceEdge,
        EdgeCase::BeforeRobotEdge,
        EdgeCase::AfterRobotEdge,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SerialCase {
    Separation(SeparationWitness),
    /// Legacy mode: one of the four cases for a pair of non-parallel edges.
    Edge { trace_edge: usize, robot_edge: usize, case: EdgeCase },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CaseChoice {
    pub event: usize,
    pub other: usize,
    pub case: SerialCase,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CaseAssignment {
    pub choices: Vec<CaseChoice>,
}

type Point = (Affine, Affine);

/// A polygon edge between two affine vertices whose direction is fixed.
#[derive(Debug, Clone)]
struct Edge {
    from: Point,
    to: Point,
    dir: Vec2,
}

fn cross_const(p: &Point, e: &Vec2) -> Affine {
    &p.0.scale(&e.y) - &p.1.scale(&e.x)
}

fn sub_pt(a: &Point, b: &Point) -> Point {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn half(r: &Rational) -> Rational {
    r / &Rational::from_integer(2)
}

/// Orients an edge so that it runs toward increasing x, or increasing y when vertical.
fn oriented(e: &Edge) -> (Point, Point, Vec2) {
    if e.dir.x.is_positive() || (e.dir.x.is_zero() && e.dir.y.is_positive()) {
        (e.from.clone(), e.to.clone(), e.dir.clone())
    } else {
        (e.to.clone(), e.from.clone(), -&e.dir)
    }
}

/// Rows for one of the four edge cases, or `None` for parallel edges.
fn edge_case_rows(trace: &Edge, robot: &Edge, case: EdgeCase) -> Option<Vec<Row>> {
    if trace.dir.is_parallel_to(&robot.dir) {
        return None;
    }
    let (p, q, d) = oriented(trace);
    let (r, s, e) = oriented(robot);
    let zero = Affine::default();
    if !d.x.is_zero() && !e.x.is_zero() {
        // Crossing abscissa x0 = N / (beta - gamma).
        let beta = &d.y / &d.x;
        let gamma = &e.y / &e.x;
        let den = &beta - &gamma;
        let num = &(&(&s.1 - &p.1) + &p.0.scale(&beta)) - &s.0.scale(&gamma);
        let (bound, below) = match case {
            EdgeCase::BeforeTraceEdge => (&p.0, true),
            EdgeCase::AfterTraceEdge => (&q.0, false),
            EdgeCase::BeforeRobotEdge => (&r.0, true),
            EdgeCase::AfterRobotEdge => (&s.0, false),
        };
        let rhs = bound.scale(&den);
        let row = if below == den.is_positive() { Row::le(&num, &rhs) } else { Row::ge(&num, &rhs) };
        return Some(vec![row]);
    }
    // A vertical edge: measure the crossing point along each edge instead.
    let c = d.cross(&e);
    let flip = |a: Affine| if c.is_positive() { a } else { -&a };
    let row = match case {
        EdgeCase::BeforeTraceEdge => Row::le(&flip(cross_const(&sub_pt(&r, &p), &e)), &zero),
        EdgeCase::AfterTraceEdge => Row::ge(&flip(cross_const(&sub_pt(&r, &q), &e)), &zero),
        EdgeCase::BeforeRobotEdge => Row::ge(&flip(cross_const(&sub_pt(&p, &r), &d)), &zero),
        EdgeCase::AfterRobotEdge => Row::le(&flip(cross_const(&sub_pt(&p, &s), &d)), &zero),
    };
    Some(vec![row])
}

fn eval_pt(p: &Point, x: &[Rational]) -> Vec2 {
    Vec2::new(p.0.eval(x), p.1.eval(x))
}

/// Do the relative interiors of two non-parallel segments cross?
fn interiors_cross(a: &Vec2, b: &Vec2, c: &Vec2, d: &Vec2) -> bool {
    let ab = b - a;
    let cd = d - c;
    if ab.is_zero() || cd.is_zero() || ab.is_parallel_to(&cd) {
        return false;
    }
    let o1 = ab.cross(&(c - a)).signum();
    let o2 = ab.cross(&(d - a)).signum();
    let o3 = cd.cross(&(a - c)).signum();
    let o4 = cd.cross(&(b - c)).signum();
    o1 * o2 < 0 && o3 * o4 < 0
}

struct Model<'a> {
    inst: &'a Instance,
    events: &'a [Event],
}

impl Model<'_> {
    fn vx(i: usize) -> usize {
        3 * i
    }
    fn vy(i: usize) -> usize {
        3 * i + 1
    }
    fn va(i: usize) -> usize {
        3 * i + 2
    }

    fn size(&self, r: usize) -> &Rect {
        &self.inst.robots()[r].start
    }

    fn start(&self, i: usize) -> Point {
        (Affine::var(Self::vx(i)), Affine::var(Self::vy(i)))
    }

    fn end(&self, i: usize) -> Point {
        let v = &self.events[i].dir;
        let a = Self::va(i);
        (
            &Affine::var(Self::vx(i)) + &Affine::scaled_var(a, v.x.clone()),
            &Affine::var(Self::vy(i)) + &Affine::scaled_var(a, v.y.clone()),
        )
    }

    /// Center of robot `r` just before event `i`.
    fn position(&self, r: usize, i: usize) -> Point {
        match (0..i).rev().find(|&j| self.events[j].robot == r) {
            Some(j) => self.end(j),
            None => {
                let c = self.inst.robots()[r].start.center();
                (Affine::constant(c.x), Affine::constant(c.y))
            }
        }
    }

    fn problem(&self) -> LinProblem {
        let mut names = Vec::with_capacity(3 * self.events.len());
        for i in 0..self.events.len() {
            names.push(format!("x{i}"));
            names.push(format!("y{i}"));
            names.push(format!("a{i}"));
        }
        LinProblem::with_vars(names)
    }

    /// Displacement, chaining, nonnegative amplitudes and box rows.
    fn base(&self) -> Result<LinProblem, EventError> {
        let mut p = self.problem();
        for (i, e) in self.events.iter().enumerate() {
            if e.robot >= self.inst.k() {
                return Err(EventError::InconsistentCases(format!("event {i} names robot {}", e.robot)));
            }
            if !self.inst.dirs().contains(&e.dir) {
                return Err(EventError::UnknownDirection { event: i });
            }
        }
        for (r, robot) in self.inst.robots().iter().enumerate() {
            let mine: Vec<usize> = (0..self.events.len()).filter(|&i| self.events[i].robot == r).collect();
            let (s, t) = (robot.start.center(), robot.goal.center());
            if mine.is_empty() {
                if s != t {
                    return Err(EventError::IdleRobotOffGoal { robot: r });
                }
                continue;
            }
            // Net displacement equals goal minus start.
            let mut sx = Affine::constant(s.x.clone());
            let mut sy = Affine::constant(s.y.clone());
            for &i in &mine {
                let v = &self.events[i].dir;
                sx = &sx + &Affine::scaled_var(Self::va(i), v.x.clone());
                sy = &sy + &Affine::scaled_var(Self::va(i), v.y.clone());
            }
            Row::eq(&sx, &Affine::constant(t.x.clone())).push_to(&mut p);
            Row::eq(&sy, &Affine::constant(t.y.clone())).push_to(&mut p);
            // Each event starts where the previous one of this robot ended.
            for &i in &mine {
                let before = self.position(r, i);
                let here = self.start(i);
                Row::eq(&here.0, &before.0).push_to(&mut p);
                Row::eq(&here.1, &before.1).push_to(&mut p);
            }
        }
        for (i, e) in self.events.iter().enumerate() {
            Row::ge(&Affine::var(Self::va(i)), &Affine::default()).push_to(&mut p);
            if let Some(b) = self.inst.bbox() {
                let size = self.size(e.robot);
                let (ex, ey) = self.end(i);
                let (hw, hh) = (size.half_w(), size.half_h());
                Row::ge(&ex, &Affine::constant(b.left() + &hw)).push_to(&mut p);
                Row::le(&ex, &Affine::constant(b.right() - &hw)).push_to(&mut p);
                Row::ge(&ey, &Affine::constant(b.bottom() + &hh)).push_to(&mut p);
                Row::le(&ey, &Affine::constant(b.top() - &hh)).push_to(&mut p);
            }
        }
        Ok(p)
    }

    fn witness_rows(&self, i: usize, other: usize, w: SeparationWitness) -> Vec<Row> {
        let e = &self.events[i];
        let v = &e.dir;
        let a = Self::va(i);
        let me = self.size(e.robot);
        let you = self.size(other);
        let (x, y) = self.start(i);
        let (qx, qy) = self.position(other, i);
        let reach = |c: &Rational, positive: bool| {
            if c.is_positive() == positive && !c.is_zero() {
                Affine::scaled_var(a, c.clone())
            } else {
                Affine::default()
            }
        };
        let row = match w {
            SeparationWitness::Right => {
                let hi = &x.plus_const(&me.half_w()) + &reach(&v.x, true);
                Row::le(&hi, &qx.plus_const(&-you.half_w()))
            }
            SeparationWitness::Left => {
                let lo = &x.plus_const(&-me.half_w()) + &reach(&v.x, false);
                Row::ge(&lo, &qx.plus_const(&you.half_w()))
            }
            SeparationWitness::Above => {
                let hi = &y.plus_const(&me.half_h()) + &reach(&v.y, true);
                Row::le(&hi, &qy.plus_const(&-you.half_h()))
            }
            SeparationWitness::Below => {
                let lo = &y.plus_const(&-me.half_h()) + &reach(&v.y, false);
                Row::ge(&lo, &qy.plus_const(&you.half_h()))
            }
            SeparationWitness::PerpPos | SeparationWitness::PerpNeg => {
                // Projections on n = perp(v); the sweep projects like the start rectangle.
                let n = v.perp();
                let radius = |r: &Rect| half(&(&(r.w() * &n.x.abs()) + &(r.h() * &n.y.abs())));
                let mine = &x.scale(&n.x) + &y.scale(&n.y);
                let yours = &qx.scale(&n.x) + &qy.scale(&n.y);
                let gap = &radius(me) + &radius(you);
                if w == SeparationWitness::PerpPos {
                    Row::ge(&yours, &mine.plus_const(&gap))
                } else {
                    Row::le(&yours, &mine.plus_const(&-gap))
                }
            }
        };
        vec![row]
    }

    /// Vertices of the swept hull, counterclockwise.
    fn trace_edges(&self, i: usize) -> Vec<Edge> {
        let e = &self.events[i];
        let me = self.size(e.robot);
        let (x, y) = self.start(i);
        let a = Self::va(i);
        let (hw, hh) = (me.half_w(), me.half_h());
        // Corners as (offset from center, translated?).
        let bl = (-&hw, -&hh);
        let br = (hw.clone(), -&hh);
        let tr = (hw.clone(), hh.clone());
        let tl = (-&hw, hh.clone());
        let (sx, sy) = (e.dir.x.signum(), e.dir.y.signum());
        let order: Vec<((Rational, Rational), bool)> = match (sx, sy) {
            (1, 1) => vec![(bl, false), (br.clone(), false), (br, true), (tr, true), (tl.clone(), true), (tl, false)],
            (-1, 1) => vec![(bl.clone(), false), (br, false), (tr.clone(), false), (tr, true), (tl, true), (bl, true)],
            (-1, -1) => vec![(bl, true), (br.clone(), true), (br, false), (tr, false), (tl.clone(), false), (tl, true)],
            (1, -1) => vec![(bl.clone(), false), (bl, true), (br, true), (tr.clone(), true), (tr, false), (tl, false)],
            (1, 0) => vec![(bl, false), (br, true), (tr, true), (tl, false)],
            (-1, 0) => vec![(bl, true), (br, false), (tr, false), (tl, true)],
            (0, 1) => vec![(bl, false), (br, false), (tr, true), (tl, true)],
            _ => vec![(bl, true), (br, true), (tr, false), (tl, false)],
        };
        let vert = |((ox, oy), moved): &((Rational, Rational), bool)| -> Point {
            let mut px = x.plus_const(ox);
            let mut py = y.plus_const(oy);
            if *moved {
                px = &px + &Affine::scaled_var(a, e.dir.x.clone());
                py = &py + &Affine::scaled_var(a, e.dir.y.clone());
            }
            (px, py)
        };
        let n = order.len();
        (0..n)
            .map(|j| {
                let (from, to) = (&order[j], &order[(j + 1) % n]);
                let dc = Vec2::new(&(to.0).0 - &(from.0).0, &(to.0).1 - &(from.0).1);
                let dir = if dc.is_zero() {
                    if to.1 { e.dir.clone() } else { -&e.dir }
                } else {
                    dc
                };
                Edge { from: vert(from), to: vert(to), dir }
            })
            .collect()
    }

    fn robot_edges(&self, other: usize, i: usize) -> Vec<Edge> {
        let r = self.size(other);
        let (qx, qy) = self.position(other, i);
        let (hw, hh) = (r.half_w(), r.half_h());
        let c = |ox: &Rational, oy: &Rational| (qx.plus_const(ox), qy.plus_const(oy));
        let bl = c(&-&hw, &-&hh);
        let br = c(&hw, &-&hh);
        let tr = c(&hw, &hh);
        let tl = c(&-&hw, &hh);
        vec![
            Edge { from: bl.clone(), to: br.clone(), dir: Vec2::plus_x() },
            Edge { from: br, to: tr.clone(), dir: Vec2::plus_y() },
            Edge { from: tr, to: tl.clone(), dir: Vec2::minus_x() },
            Edge { from: tl, to: bl, dir: Vec2::minus_y() },
        ]
    }

    fn case_rows(&self, c: &CaseChoice) -> Result<Vec<Row>, EventError> {
        let bad = |m: String| Err(EventError::InconsistentCases(m));
        if c.event >= self.events.len() {
            return bad(format!("no event {}", c.event));
        }
        if c.other >= self.inst.k() || c.other == self.events[c.event].robot {
            return bad(format!("event {} cannot be separated from robot {}", c.event, c.other));
        }
        match c.case {
            SerialCase::Separation(w) => Ok(self.witness_rows(c.event, c.other, w)),
            SerialCase::Edge { trace_edge, robot_edge, case } => {
                let te = self.trace_edges(c.event);
                let re = self.robot_edges(c.other, c.event);
                match (te.get(trace_edge), re.get(robot_edge)) {
                    (Some(a), Some(b)) => match edge_case_rows(a, b, case) {
                        Some(rows) => Ok(rows),
                        None => bad(format!("edges {trace_edge} and {robot_edge} are parallel")),
                    },
                    _ => bad(format!("no edge pair ({trace_edge}, {robot_edge})")),
                }
            }
        }
    }

    fn rect_at(&self, r: usize, p: &Point, x: &[Rational]) -> Rect {
        self.size(r).with_center(&eval_pt(p, x))
    }

    fn first_collision(&self, x: &[Rational]) -> Option<(usize, usize)> {
        for (i, e) in self.events.iter().enumerate() {
            let amp = Affine::var(Self::va(i)).eval(x);
            if !amp.is_positive() {
                continue;
            }
            let mover = self.rect_at(e.robot, &self.start(i), x);
            let v = e.dir.scale(&amp);
            for other in 0..self.inst.k() {
                if other == e.robot {
                    continue;
                }
                let still = self.rect_at(other, &self.position(other, i), x);
                if serial_collision(&mover, &v, &still).expect("nonzero") {
                    return Some((i, other));
                }
            }
        }
        None
    }

    fn conflict(&self, x: &[Rational], legacy: bool) -> Option<Vec<Vec<Row>>> {
        let (i, other) = self.first_collision(x)?;
        let choice = |case| CaseChoice { event: i, other, case };
        if legacy {
            let te = self.trace_edges(i);
            let re = self.robot_edges(other, i);
            for (a, ta) in te.iter().enumerate() {
                for (b, rb) in re.iter().enumerate() {
                    if ta.dir.is_parallel_to(&rb.dir) {
                        continue;
                    }
                    let hit = interiors_cross(
                        &eval_pt(&ta.from, x),
                        &eval_pt(&ta.to, x),
                        &eval_pt(&rb.from, x),
                        &eval_pt(&rb.to, x),
                    );
                    if hit {
                        return Some(
                            EdgeCase::ALL
                                .iter()
                                .map(|&case| {
                                    self.case_rows(&choice(SerialCase::Edge { trace_edge: a, robot_edge: b, case }))
                                        .expect("consistent")
                                })
                                .collect(),
                        );
                    }
                }
            }
        }
        // No crossing edges (or default mode): branch on separating axes.
        Some(
            SeparationWitness::for_dir(&self.events[i].dir)
                .iter()
                .map(|&w| self.case_rows(&choice(SerialCase::Separation(w))).expect("consistent"))
                .collect(),
        )
    }

    fn schedule(&self, x: &[Rational]) -> Schedule {
        Schedule::serial(self.events.iter().enumerate().filter_map(|(i, e)| {
            let amp = x[Self::va(i)].clone();
            amp.is_positive().then(|| Move::new(e.robot, e.dir.clone(), amp))
        }))
    }
}

/// The LP for an event sequence with the given separation choices.
pub fn build_lp(inst: &Instance, events: &[Event], cases: &CaseAssignment) -> Result<LinProblem, EventError> {
    let model = Model { inst, events };
    let mut p = model.base()?;
    for c in &cases.choices {
        for row in model.case_rows(c)? {
            row.push_to(&mut p);
        }
    }
    Ok(p)
}

/// Amplitudes for a fixed event sequence, if any make it a valid schedule.
pub fn solve_sequence(inst: &Instance, events: &[Event], legacy: bool) -> Option<Schedule> {
    let model = Model { inst, events };
    let base = model.base().ok()?;
    let x = solve_lazily(&base, &|x| model.conflict(x, legacy))?;
    Some(model.schedule(&x))
}

struct Enumerator<'a> {
    inst: &'a Instance,
    dirs: Vec<Vec2>,
    usable: Vec<Vec<bool>>,
    disp: Vec<Vec2>,
    cache: Arc<PositivityCache>,
    legacy: bool,
}

impl Enumerator<'_> {
    /// Lower bound on further events robot `r` needs after using `used`.
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

    fn choices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.inst.k() {
            for j in 0..self.dirs.len() {
                if self.usable[r][j] {
                    out.push((r, j));
                }
            }
        }
        out
    }

    fn dfs(&self, seq: &mut Vec<(usize, usize)>, used: &mut [Vec<usize>], extras: &mut [usize], len: usize) -> Option<Schedule> {
        if seq.len() == len {
            if extras.iter().any(|&e| e > 0) {
                return None;
            }
            let events: Vec<Event> = seq.iter().map(|&(r, j)| Event::new(r, self.dirs[j].clone())).collect();
            return solve_sequence(self.inst, &events, self.legacy);
        }
        for (r, j) in self.choices() {
            if let Some(&(lr, lj)) = seq.last() {
                // Two moves of one robot along one line merge into at most one.
                if lr == r && self.dirs[lj].is_parallel_to(&self.dirs[j]) {
                    continue;
                }
            }
            if let Some(found) = self.step(seq, used, extras, len, r, j) {
                return Some(found);
            }
        }
        None
    }

    fn step(
        &self,
        seq: &mut Vec<(usize, usize)>,
        used: &mut [Vec<usize>],
        extras: &mut [usize],
        len: usize,
        r: usize,
        j: usize,
    ) -> Option<Schedule> {
        used[r].push(j);
        let old = extras[r];
        extras[r] = self.extra(r, &used[r]);
        let left = len - seq.len() - 1;
        let mut found = None;
        if extras.iter().sum::<usize>() <= left {
            seq.push((r, j));
            found = self.dfs(seq, used, extras, len);
            seq.pop();
        }
        extras[r] = old;
        used[r].pop();
        found
    }

    fn search(&self, len: usize, parallel: bool) -> Option<Schedule> {
        let k = self.inst.k();
        let mut used = vec![Vec::new(); k];
        let mut extras: Vec<usize> = (0..k).map(|r| self.extra(r, &[])).collect();
        if extras.iter().sum::<usize>() > len {
            return None;
        }
        if !parallel || len == 0 {
            return self.dfs(&mut Vec::new(), &mut used, &mut extras, len);
        }
        self.choices().into_par_iter().find_map_first(|(r, j)| {
            let mut used = used.clone();
            let mut extras = extras.clone();
            self.step(&mut Vec::new(), &mut used, &mut extras, len, r, j)
        })
    }
}

pub fn solve_serial_lp(inst: &Instance) -> Result<Schedule, SolveError> {
    solve_serial_lp_with(inst, &SolveOptions::default())
}

/// Shortest serial schedule found by event enumeration.
pub fn solve_serial_lp_with(inst: &Instance, opts: &SolveOptions) -> Result<Schedule, SolveError> {
    if inst.mode() != Mode::Serial {
        return Err(SolveError::UnsupportedMode("the serial event solver needs a serial instance".into()));
    }
    let max_len = length_cap(inst, opts)?;
    let dirs: Vec<Vec2> = inst.dirs().as_slice().to_vec();
    let en = Enumerator {
        inst,
        usable: inst.robots().iter().map(|r| usable_dirs(&dirs, &r.start, inst.bbox())).collect(),
        disp: inst.robots().iter().map(|r| r.displacement()).collect(),
        dirs,
        cache: Arc::new(PositivityCache::default()),
        legacy: opts.legacy_cases,
    };
    opts.install(|| {
        for len in 0..=max_len {
            if let Some(s) = en.search(len, opts.threads > 1) {
                let report = verify_schedule(inst, &s);
                assert!(report.passed(), "event solver produced an invalid schedule: {report}\n{s}");
                return Ok(s);
            }
        }
        Err(SolveError::Infeasible { max_len })
    })
}
