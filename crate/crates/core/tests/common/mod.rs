//! Instance suites shared by the integration tests.
#![allow(dead_code)]

pub mod float_lp;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rect_motion::geometry::{Rect, Vec2};
use rect_motion::instance::{DirectionSet, Instance, Mode, Robot};
use rect_motion::rational::{q, qi};

pub type ChaCha = ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn units(mode: Mode, pairs: &[((i64, i64), (i64, i64))]) -> Instance {
    let robots = pairs
        .iter()
        .map(|&((sx, sy), (gx, gy))| Robot::new(Rect::unit(sx, sy), Rect::unit(gx, gy)))
        .collect();
    Instance::new(robots, DirectionSet::axis(), None, None, mode).unwrap()
}

pub fn swap(mode: Mode) -> Instance {
    units(mode, &[((0, 0), (4, 0)), ((4, 0), (0, 0))])
}

/// Unit squares at integer centers in `[-span, span]^2`.
pub fn random_lattice(rng: &mut impl Rng, k: usize, span: i64, mode: Mode) -> Instance {
    loop {
        let mut c = || (rng.gen_range(-span..=span), rng.gen_range(-span..=span));
        let pairs: Vec<_> = (0..k).map(|_| (c(), c())).collect();
        let robots = pairs
            .iter()
            .map(|&((sx, sy), (gx, gy))| Robot::new(Rect::unit(sx, sy), Rect::unit(gx, gy)))
            .collect();
        if let Ok(inst) = Instance::new(robots, DirectionSet::axis(), None, None, mode) {
            return inst;
        }
    }
}

/// The serial lattice suite: the swap plus random instances with k <= 3.
pub fn serial_suite() -> Vec<Instance> {
    let mut rng = rng(2024);
    let mut out = vec![swap(Mode::Serial)];
    for i in 0..59 {
        let k = 1 + i % 3;
        let span = if i % 2 == 0 { 1 } else { 3 };
        out.push(random_lattice(&mut rng, k, span, Mode::Serial));
    }
    out
}

/// The parallel lattice suite: the swap plus random instances with k <= 2.
pub fn parallel_suite() -> Vec<Instance> {
    let mut rng = rng(77);
    let mut out = vec![swap(Mode::Parallel)];
    for i in 0..34 {
        let k = 1 + (i % 4).min(1);
        let span = if i % 2 == 0 { 1 } else { 2 };
        out.push(random_lattice(&mut rng, k, span, Mode::Parallel));
    }
    out
}

fn rat(rng: &mut impl Rng, lo: i64, hi: i64) -> rect_motion::rational::Rational {
    q(rng.gen_range(lo * 4..=hi * 4), 4)
}

/// Free-plane serial instances with rational sizes and mixed direction sets.
pub fn free_plane_suite() -> Vec<Instance> {
    let sets = [
        vec![Vec2::plus_x(), Vec2::plus_y()],
        vec![Vec2::from_ints(1, 1), Vec2::from_ints(1, -1)],
        vec![Vec2::plus_x(), Vec2::from_ints(1, 2)],
        vec![Vec2::from_ints(2, 1), Vec2::plus_y(), Vec2::from_ints(-1, 3)],
        vec![Vec2::new(q(1, 2), q(1, 3)), Vec2::from_ints(-1, 1)],
    ];
    let mut rng = rng(5);
    let mut out = Vec::new();
    while out.len() < 100 {
        let k = 1 + out.len() % 3;
        let robots: Vec<Robot> = (0..k)
            .map(|_| {
                let w = q(rng.gen_range(2..=8), 4);
                let h = q(rng.gen_range(2..=8), 4);
                let s = Rect::new(rat(&mut rng, -3, 3), rat(&mut rng, -3, 3), w.clone(), h.clone()).unwrap();
                let g = Rect::new(rat(&mut rng, -3, 3), rat(&mut rng, -3, 3), w, h).unwrap();
                Robot::new(s, g)
            })
            .collect();
        let dirs = DirectionSet::new(sets[out.len() % sets.len()].clone()).unwrap();
        if let Ok(inst) = Instance::new(robots, dirs, None, None, Mode::Serial) {
            out.push(inst);
        }
    }
    out
}

/// A box of side `side` centered at the origin.
pub fn square_box(side: i64) -> Rect {
    Rect::new(qi(0), qi(0), qi(side), qi(side)).unwrap()
}
