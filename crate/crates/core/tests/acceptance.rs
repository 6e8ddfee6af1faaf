//! End-to-end acceptance checks. Run with
//! `cargo test -p rect-motion --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::Rng;
use rect_motion::configurations::{compute_configuration, morph};
use rect_motion::event_parallel::{
    build_parallel_lp, solve_parallel_lp, solve_parallel_sequence, PairCase, ParallelCase, ParallelCaseAssignment,
    ParallelCaseChoice, ParallelEvent,
};
use rect_motion::event_serial::{solve_serial_lp, solve_serial_lp_with};
use rect_motion::geometry::{parallel_collision, Rect, Vec2};
use rect_motion::grid::build_grid;
use rect_motion::grid_search::solve_serial_grid;
use rect_motion::instance::{DirectionSet, Instance, Mode, Move, Robot, Schedule, Step};
use rect_motion::lp::{solve_feasibility, LinProblem, LpOutcome, Relation};
use rect_motion::oracle::{bfs_parallel, bfs_serial, default_window, OracleAnswer};
use rect_motion::rational::{q, qi, Rational};
use rect_motion::solve::SolveOptions;
use rect_motion::verify::{verify_schedule, FailReason};

use common::float_lp::{self, Rel, Verdict};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn optimal(a: OracleAnswer) -> Result<usize, String> {
    match a {
        OracleAnswer::Optimal(n) => Ok(n),
        OracleAnswer::Infeasible => Err("oracle reports infeasible".into()),
    }
}

fn random_rect(rng: &mut impl Rng, span: i64) -> Rect {
    let c = |rng: &mut dyn rand::RngCore| q(rng.gen_range(-span * 4..=span * 4), 4);
    let cx = c(rng);
    let cy = c(rng);
    Rect::new(cx, cy, q(rng.gen_range(1..=12), 4), q(rng.gen_range(1..=12), 4)).unwrap()
}

fn grid_bound() -> Outcome {
    let mut rng = common::rng(1);
    let mut n = 0;
    while n < 100 {
        let k = rng.gen_range(1..=3usize);
        let depth = rng.gen_range(0..=6usize);
        let robots: Vec<Robot> = (0..k)
            .map(|_| {
                let s = random_rect(&mut rng, 6);
                let g = s.with_center(&random_rect(&mut rng, 6).center());
                Robot::new(s, g)
            })
            .collect();
        let Ok(inst) = Instance::free_serial(robots) else { continue };
        n += 1;
        let g = build_grid(&inst, depth).map_err(|e| e.to_string())?;
        let bound = (k as u128).pow(3) << (k + depth + 1);
        check(g.xs.len() as u128 <= bound && g.ys.len() as u128 <= bound, || {
            format!("k={k} depth={depth}: {} x {} lines, bound {bound}", g.xs.len(), g.ys.len())
        })?;
    }
    Ok(format!("{n} instances within k^3 * 2^(k+depth+1)"))
}

fn serial_oracle(harvest: &mut Vec<(Instance, Schedule)>) -> Outcome {
    let suite = common::serial_suite();
    for (i, inst) in suite.iter().enumerate() {
        let best = optimal(bfs_serial(inst, &default_window(inst, 13)).map_err(|e| e.to_string())?)?;
        let g = solve_serial_grid(inst).map_err(|e| format!("instance {i}: grid: {e}"))?;
        let l = solve_serial_lp(inst).map_err(|e| format!("instance {i}: lp: {e}"))?;
        for (name, s) in [("grid", &g), ("lp", &l)] {
            let report = verify_schedule(inst, s);
            check(report.passed(), || format!("instance {i}: {name} schedule rejected: {report}"))?;
            check(s.len() == best, || format!("instance {i}: {name} length {} vs oracle {best}", s.len()))?;
        }
        if i == 0 {
            check(best == 4, || format!("swap optimum {best}"))?;
        }
        harvest.push((inst.clone(), g));
        harvest.push((inst.clone(), l));
    }
    Ok(format!("{} instances, grid and lp equal the oracle", suite.len()))
}

fn free_plane(harvest: &mut Vec<(Instance, Schedule)>) -> Outcome {
    let suite = common::free_plane_suite();
    let mut longest = 0;
    for (i, inst) in suite.iter().enumerate() {
        let s = solve_serial_lp(inst).map_err(|e| format!("instance {i}: {e}"))?;
        let report = verify_schedule(inst, &s);
        check(report.passed(), || format!("instance {i}: rejected: {report}"))?;
        check(s.len() <= 4 * inst.k(), || format!("instance {i}: length {} > 4k", s.len()))?;
        longest = longest.max(s.len());
        harvest.push((inst.clone(), s));
    }
    Ok(format!("{} instances, all within 4k (longest {longest})", suite.len()))
}

fn parallel_oracle(harvest: &mut Vec<(Instance, Schedule)>) -> Outcome {
    let suite = common::parallel_suite();
    for (i, inst) in suite.iter().enumerate() {
        let best = optimal(bfs_parallel(inst, &default_window(inst, 13)).map_err(|e| e.to_string())?)?;
        let s = solve_parallel_lp(inst).map_err(|e| format!("instance {i}: {e}"))?;
        let report = verify_schedule(inst, &s);
        check(report.passed(), || format!("instance {i}: rejected: {report}"))?;
        check(s.len() == best, || format!("instance {i}: length {} vs oracle {best}", s.len()))?;
        if i == 0 {
            check(best == 3, || format!("parallel swap optimum {best}"))?;
        }
        harvest.push((inst.clone(), s));
    }
    Ok(format!("{} instances equal the parallel oracle", suite.len()))
}

/// Two robots whose bands overlap on some axis, with the direction that
/// sends the first straight at the second.
fn head_on_pair(rects: &[Rect]) -> Option<(usize, usize, Vec2, Rational)> {
    for a in 0..rects.len() {
        for b in a + 1..rects.len() {
            let (ra, rb) = (&rects[a], &rects[b]);
            let y_band = ra.bottom() < rb.top() && rb.bottom() < ra.top();
            let x_band = ra.left() < rb.right() && rb.left() < ra.right();
            if y_band {
                let d = rb.cx() - ra.cx();
                let dir = if d.is_negative() { Vec2::minus_x() } else { Vec2::plus_x() };
                return Some((a, b, dir, d.abs() + qi(1)));
            }
            if x_band {
                let d = rb.cy() - ra.cy();
                let dir = if d.is_negative() { Vec2::minus_y() } else { Vec2::plus_y() };
                return Some((a, b, dir, d.abs() + qi(1)));
            }
        }
    }
    None
}

enum Mutation {
    NotApplicable,
    Rejected,
}

fn mutate(inst: &Instance, s: &Schedule) -> Result<Vec<Mutation>, String> {
    use Mutation::*;
    let mut out = Vec::new();
    let moves: Vec<(usize, usize)> =
        (0..s.len()).flat_map(|i| (0..s.steps[i].moves.len()).map(move |j| (i, j))).collect();
    let reason = |t: &Schedule| verify_schedule(inst, t).reason().cloned();
    let expect = |name: &str, t: &Schedule, ok: &dyn Fn(&FailReason) -> bool| -> Result<Mutation, String> {
        match reason(t) {
            Some(r) if ok(&r) => Ok(Rejected),
            other => Err(format!("{name}: got {other:?} for\n{t}")),
        }
    };
    if moves.is_empty() {
        return Ok((0..5).map(|_| NotApplicable).collect());
    }
    let (si, mi) = moves[moves.len() / 2];
    let robot = s.steps[si].moves[mi].robot;

    let mut bumped = s.clone();
    bumped.steps[si].moves[mi].amp += &qi(1);
    out.push(expect("amplitude +1", &bumped, &|r| {
        matches!(r, FailReason::NotAtGoal { .. } | FailReason::Collision { .. } | FailReason::OutOfBox { .. })
    })?);

    let mut zeroed = s.clone();
    zeroed.steps[si].moves[mi].amp = Rational::zero();
    out.push(expect("amplitude 0", &zeroed, &|r| *r == FailReason::BadAmplitude { robot })?);

    let mut dropped = s.clone();
    let last = dropped.steps.last_mut().expect("nonempty");
    let gone = last.moves.pop().expect("nonempty step").robot;
    if last.moves.is_empty() {
        dropped.steps.pop();
    }
    out.push(expect("drop last move", &dropped, &|r| {
        *r == FailReason::NotAtGoal { robot: gone } || matches!(r, FailReason::Collision { .. })
    })?);

    // Exchange the robots of two moves with different robots and displacements.
    let pair = moves.iter().enumerate().find_map(|(x, &(i, j))| {
        moves[x + 1..].iter().find_map(|&(i2, j2)| {
            let (m1, m2) = (&s.steps[i].moves[j], &s.steps[i2].moves[j2]);
            (m1.robot != m2.robot && m1.displacement() != m2.displacement()).then_some(((i, j), (i2, j2)))
        })
    });
    match pair {
        Some(((i, j), (i2, j2))) => {
            let mut swapped = s.clone();
            let r1 = swapped.steps[i].moves[j].robot;
            let r2 = swapped.steps[i2].moves[j2].robot;
            swapped.steps[i].moves[j].robot = r2;
            swapped.steps[i2].moves[j2].robot = r1;
            out.push(expect("swap steps", &swapped, &|r| {
                matches!(
                    r,
                    FailReason::NotAtGoal { .. }
                        | FailReason::Collision { .. }
                        | FailReason::OutOfBox { .. }
                        | FailReason::DuplicateRobot { .. }
                )
            })?);
        }
        None => out.push(NotApplicable),
    }

    match head_on_pair(&inst.starts()) {
        Some((a, b, dir, amp)) => {
            let back = -&dir;
            let mut injected = s.clone();
            injected.steps.insert(
                0,
                Step { moves: vec![Move::new(a, dir, amp.clone()), Move::new(b, back, amp)] },
            );
            let want = match inst.mode() {
                Mode::Serial => FailReason::SerialStepArity,
                Mode::Parallel => FailReason::Collision { mover: a, other: b },
            };
            let step0 = verify_schedule(inst, &injected).failure.map(|f| f.step);
            check(step0 == Some(0), || format!("head-on reported at step {step0:?}"))?;
            out.push(expect("head-on step", &injected, &|r| {
                *r == want || (inst.mode() == Mode::Parallel && *r == FailReason::Collision { mover: b, other: a })
            })?);
        }
        None => out.push(NotApplicable),
    }
    Ok(out)
}

fn mutation_suite(harvest: &[(Instance, Schedule)]) -> Outcome {
    check(!harvest.is_empty(), || "no schedules collected".into())?;
    let (mut rejected, mut skipped) = (0, 0);
    for (inst, s) in harvest {
        for m in mutate(inst, s)? {
            match m {
                Mutation::Rejected => rejected += 1,
                Mutation::NotApplicable => skipped += 1,
            }
        }
    }
    Ok(format!(
        "{} schedules, {rejected} mutants rejected with the expected reason, {skipped} not applicable",
        harvest.len()
    ))
}

fn morph_contract() -> Outcome {
    let mut rng = common::rng(6);
    let bbox = common::square_box(20);
    let (mut done, mut moved) = (0, 0);
    while done < 100 {
        let k = rng.gen_range(1..=4usize);
        let from: Vec<Rect> = (0..k).map(|_| random_rect(&mut rng, 7)).collect();
        if compute_configuration(&from).is_err() || !from.iter().all(|r| bbox.contains_rect(r)) {
            continue;
        }
        let base = compute_configuration(&from).unwrap();
        let jitter = |rng: &mut common::ChaCha, r: &Rect, reach: i64| {
            let d = Vec2::new(q(rng.gen_range(-reach..=reach), 4), q(rng.gen_range(-reach..=reach), 4));
            rect_motion::geometry::translate(r, &d)
        };
        let mut to = None;
        for attempt in 0..500 {
            let reach = if attempt < 250 { 8 } else { 2 };
            let cand: Vec<Rect> = from.iter().map(|r| jitter(&mut rng, r, reach)).collect();
            if cand.iter().all(|r| bbox.contains_rect(r)) && compute_configuration(&cand).ok().as_ref() == Some(&base) {
                to = Some(cand);
                break;
            }
        }
        let to = to.unwrap_or_else(|| from.clone());
        let s = morph(&bbox, &from, &to).map_err(|e| e.to_string())?;
        let robots = from.iter().zip(&to).map(|(a, b)| Robot::new(a.clone(), b.clone())).collect();
        let inst = Instance::new(robots, DirectionSet::axis(), Some(bbox.clone()), None, Mode::Serial)
            .map_err(|e| e.to_string())?;
        let report = verify_schedule(&inst, &s);
        check(report.passed(), || format!("morph rejected: {report}\n{s}"))?;
        check(s.len() <= 2 * k, || format!("morph used {} moves for k={k}", s.len()))?;
        done += 1;
        moved += usize::from(!s.is_empty());
    }
    Ok(format!("{done} pairs ({moved} nontrivial), all within 2k moves and valid in the box"))
}

fn escape() -> Outcome {
    let inst = |amp_p: Rational| {
        let robots = vec![
            Robot::new(Rect::unit(0, 2), Rect::new(amp_p, qi(2), qi(1), qi(1)).unwrap()),
            Robot::new(Rect::unit(0, 0), Rect::unit(0, 5)),
        ];
        Instance::new(robots, DirectionSet::axis(), None, None, Mode::Parallel).unwrap()
    };
    let events = [ParallelEvent::new(vec![(0, Vec2::plus_x()), (1, Vec2::plus_y())])];
    let case = ParallelCaseAssignment {
        choices: vec![ParallelCaseChoice { event: 0, first: 0, second: 1, case: ParallelCase::Pair(PairCase::FirstEscapes) }],
    };
    let (p, rq) = (Rect::unit(0, 2), Rect::unit(0, 0));
    for (amp, accept) in [(qi(3), true), (q(1, 2), false)] {
        let i = inst(amp.clone());
        let lp = build_parallel_lp(&i, &events, &case).map_err(|e| e.to_string())?;
        let lp_ok = solve_feasibility(&lp).map_err(|e| e.to_string())?.is_feasible();
        let seq_ok = solve_parallel_sequence(&i, &events).is_some();
        let hit = parallel_collision(&p, &Vec2::plus_x(), &amp, &rq, &Vec2::plus_y(), &qi(5)).map_err(|e| e.to_string())?;
        check(lp_ok == accept && seq_ok == accept && hit == !accept, || {
            format!("amplitude {amp}: lp {lp_ok}, sequence {seq_ok}, collision {hit}")
        })?;
    }
    Ok("escape with amplitude 3 accepted, 1/2 rejected, both matching the collision test".into())
}

fn lp_kernel() -> Outcome {
    let mut rng = common::rng(8);
    let (mut feasible, mut infeasible, mut compared) = (0, 0, 0);
    for case in 0..1000 {
        let n = rng.gen_range(1..=4usize);
        let m = rng.gen_range(1..=6usize);
        let mut p = LinProblem::with_vars((0..n).map(|j| format!("x{j}")));
        let mut rows = Vec::new();
        for _ in 0..m {
            let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
            let rhs = rng.gen_range(-10..=10);
            let roll = rng.gen_range(0..20);
            let (rel, frel) = if roll < 9 {
                (Relation::Le, Rel::Le)
            } else if roll < 16 {
                (Relation::Ge, Rel::Ge)
            } else {
                (Relation::Eq, Rel::Eq)
            };
            p.push(coeffs.iter().map(|&c| qi(c)).collect(), rel, qi(rhs));
            rows.push((coeffs.iter().map(|&c| c as f64).collect(), frel, rhs as f64));
        }
        let exact = solve_feasibility(&p).map_err(|e| e.to_string())?;
        match &exact {
            LpOutcome::Feasible(x) => {
                feasible += 1;
                check(p.is_satisfied_by(x), || format!("case {case}: witness fails\n{p}"))?;
            }
            LpOutcome::Infeasible(cert) => {
                infeasible += 1;
                check(cert.verify(&p), || format!("case {case}: certificate fails\n{p}"))?;
            }
        }
        let reference = float_lp::decide(n, &rows);
        if reference.margin() > 1e-6 {
            compared += 1;
            let agree = matches!(reference, Verdict::Feasible(_)) == exact.is_feasible();
            check(agree, || format!("case {case}: exact {} vs float {reference:?}\n{p}", exact.is_feasible()))?;
        }
    }
    Ok(format!(
        "1000 systems ({feasible} feasible, {infeasible} infeasible), all proofs re-verified, {compared} agree with the float reference"
    ))
}

fn legacy() -> Outcome {
    let suite: Vec<Instance> = common::serial_suite().into_iter().filter(|i| i.k() == 2).collect();
    let opts = SolveOptions { legacy_cases: true, ..Default::default() };
    let mut same = 0;
    for (i, inst) in suite.iter().enumerate() {
        let best = optimal(bfs_serial(inst, &default_window(inst, 13)).map_err(|e| e.to_string())?)?;
        let legacy = solve_serial_lp_with(inst, &opts).map_err(|e| format!("instance {i}: legacy: {e}"))?;
        let report = verify_schedule(inst, &legacy);
        check(report.passed(), || format!("instance {i}: legacy schedule rejected: {report}"))?;
        let default = solve_serial_lp(inst).map_err(|e| format!("instance {i}: {e}"))?;
        check(default.len() == best, || format!("instance {i}: default {} vs oracle {best}", default.len()))?;
        same += usize::from(legacy.len() == best);
    }
    Ok(format!(
        "{} k=2 instances: legacy schedules all valid ({same} optimal), default mode optimal on all",
        suite.len()
    ))
}

#[test]
fn acceptance_suite() {
    let mut harvest = Vec::new();
    let mut results: Vec<(&str, Outcome, f64)> = Vec::new();
    let mut run = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        results.push((name, r, t.elapsed().as_secs_f64()));
    };
    run("1 grid size bound", &mut grid_bound);
    run("2 serial optimum equals oracle", &mut || serial_oracle(&mut harvest));
    run("3 free-plane schedules within 4k", &mut || free_plane(&mut harvest));
    run("4 parallel optimum equals oracle", &mut || parallel_oracle(&mut harvest));
    run("5 verifier rejects mutants", &mut || mutation_suite(&harvest));
    run("6 morph within 2k moves", &mut morph_contract);
    run("7 parallel escape amplitude", &mut escape);
    run("8 exact LP kernel", &mut lp_kernel);
    run("9 legacy edge cases", &mut legacy);
    let mut failed = 0;
    for (name, r, secs) in &results {
        match r {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
