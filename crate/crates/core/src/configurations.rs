//! Relative orders of rectangle placements and moving between placements
//! that share one.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigUint;
use thiserror::Error;

use crate::geometry::{interiors_overlap, Rect, Vec2};
use crate::instance::{Move, Schedule};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("robots {a} and {b} overlap")]
    OverlappingRealization { a: usize, b: usize },
    #[error("the two placements have different configurations")]
    ConfigurationMismatch,
    #[error("robot {robot} lies outside the box")]
    OutOfBox { robot: usize },
    #[error("placements differ in robot count or sizes")]
    ShapeMismatch,
}

/// Signs of `lo_i - lo_j`, `lo_i - hi_j`, `hi_i - lo_j`, `hi_i - hi_j` for one axis.
pub type AxisOrder = [Ordering; 4];

/// Per robot pair `i < j`, the edge order along x and along y.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub pairs: BTreeMap<(usize, usize), [AxisOrder; 2]>,
}

fn axis_order(lo_i: Rational, hi_i: Rational, lo_j: Rational, hi_j: Rational) -> AxisOrder {
    [lo_i.cmp(&lo_j), lo_i.cmp(&hi_j), hi_i.cmp(&lo_j), hi_i.cmp(&hi_j)]
}

pub fn compute_configuration(rects: &[Rect]) -> Result<Configuration, ConfigError> {
    let mut pairs = BTreeMap::new();
    for i in 0..rects.len() {
        for j in i + 1..rects.len() {
            let (a, b) = (&rects[i], &rects[j]);
            if interiors_overlap(a, b) {
                return Err(ConfigError::OverlappingRealization { a: i, b: j });
            }
            let x = axis_order(a.left(), a.right(), b.left(), b.right());
            let y = axis_order(a.bottom(), a.top(), b.bottom(), b.top());
            pairs.insert((i, j), [x, y]);
        }
    }
    Ok(Configuration { pairs })
}

/// `2k * 5^(k(k-1))`, the move budget used for boxed axis-aligned instances.
pub fn boxed_budget(k: usize) -> BigUint {
    BigUint::from(2 * k) * BigUint::from(5u32).pow((k * k.saturating_sub(1)) as u32)
}

/// Moves every robot from `from` to `to` with at most `2k` axis-parallel
/// moves: all horizontal moves first, then all vertical ones.
pub fn morph(bbox: &Rect, from: &[Rect], to: &[Rect]) -> Result<Schedule, ConfigError> {
    if from.len() != to.len() || from.iter().zip(to).any(|(a, b)| !a.same_size(b)) {
        return Err(ConfigError::ShapeMismatch);
    }
    for (i, r) in from.iter().chain(to).enumerate() {
        if !bbox.contains_rect(r) {
            return Err(ConfigError::OutOfBox { robot: i % from.len() });
        }
    }
    if compute_configuration(from)? != compute_configuration(to)? {
        return Err(ConfigError::ConfigurationMismatch);
    }
    let k = from.len();
    let mut moves = Vec::new();

    let dx: Vec<Rational> = (0..k).map(|i| to[i].cx() - from[i].cx()).collect();
    let mut left: Vec<usize> = (0..k).filter(|&i| dx[i].is_negative()).collect();
    left.sort_by_key(|&i| from[i].left());
    let mut right: Vec<usize> = (0..k).filter(|&i| dx[i].is_positive()).collect();
    right.sort_by_key(|&i| std::cmp::Reverse(from[i].right()));
    for i in left {
        moves.push(Move::new(i, Vec2::minus_x(), dx[i].abs()));
    }
    for i in right {
        moves.push(Move::new(i, Vec2::plus_x(), dx[i].clone()));
    }

    let dy: Vec<Rational> = (0..k).map(|i| to[i].cy() - from[i].cy()).collect();
    let mut up: Vec<usize> = (0..k).filter(|&i| dy[i].is_positive()).collect();
    up.sort_by_key(|&i| std::cmp::Reverse(from[i].top()));
    let mut down: Vec<usize> = (0..k).filter(|&i| dy[i].is_negative()).collect();
    down.sort_by_key(|&i| from[i].bottom());
    for i in up {
        moves.push(Move::new(i, Vec2::plus_y(), dy[i].clone()));
    }
    for i in down {
        moves.push(Move::new(i, Vec2::minus_y(), dy[i].abs()));
    }
    Ok(Schedule::serial(moves))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::translate;
    use crate::instance::{DirectionSet, Instance, Mode, Robot};
    use crate::rational::{q, qi};
    use crate::verify::verify_schedule;
    use Ordering::{Equal as Z, Greater as P, Less as N};

    #[test]
    fn unit_square_pair() {
        let c = compute_configuration(&[Rect::unit(0, 0), Rect::unit(3, 0)]).unwrap();
        assert_eq!(c.pairs[&(0, 1)], [[N, N, N, N], [Z, N, P, Z]]);
        assert!(compute_configuration(&[Rect::unit(0, 0)]).unwrap().pairs.is_empty());
        assert_eq!(
            compute_configuration(&[Rect::unit(0, 0), Rect::from_ints(0, 0, 3, 3)]),
            Err(ConfigError::OverlappingRealization { a: 0, b: 1 })
        );
    }

    #[test]
    fn invariant_under_translation_and_scaling() {
        let rects = [Rect::unit(0, 0), Rect::from_ints(3, 1, 3, 1), Rect::from_ints(-2, 4, 1, 5)];
        let c = compute_configuration(&rects).unwrap();
        let v = Vec2::new(q(7, 3), qi(-5));
        let moved: Vec<Rect> = rects.iter().map(|r| translate(r, &v)).collect();
        assert_eq!(compute_configuration(&moved).unwrap(), c);
        let s = q(5, 2);
        let scaled: Vec<Rect> = rects
            .iter()
            .map(|r| Rect::new(&(r.cx() - &qi(1)) * &s, &(r.cy() + &qi(2)) * &s, r.w() * &s, r.h() * &s).unwrap())
            .collect();
        assert_eq!(compute_configuration(&scaled).unwrap(), c);
    }

    #[test]
    fn budgets() {
        assert_eq!(boxed_budget(1), BigUint::from(2u32));
        assert_eq!(boxed_budget(2), BigUint::from(100u32));
        assert_eq!(boxed_budget(3), BigUint::from(93750u32));
    }

    fn check(bbox: &Rect, from: &[Rect], to: &[Rect]) -> Schedule {
        let s = morph(bbox, from, to).unwrap();
        let robots = from.iter().zip(to).map(|(a, b)| Robot::new(a.clone(), b.clone())).collect();
        let inst = Instance::new(robots, DirectionSet::axis(), Some(bbox.clone()), None, Mode::Serial).unwrap();
        assert!(verify_schedule(&inst, &s).passed(), "{s}");
        assert!(s.len() <= 2 * from.len());
        s
    }

    #[test]
    fn morph_examples() {
        let bbox = Rect::from_ints(0, 0, 20, 20);
        let same = [Rect::unit(0, 0), Rect::unit(3, 0)];
        assert!(check(&bbox, &same, &same).is_empty());
        let s = check(&bbox, &same, &[Rect::unit(1, 0), Rect::unit(4, 0)]);
        assert_eq!(s.steps.iter().map(|st| st.moves[0].robot).collect::<Vec<_>>(), vec![1, 0]);
        let s = check(&bbox, &same, &[Rect::unit(2, 1), Rect::unit(6, 1)]);
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn morph_rejects_bad_inputs() {
        let bbox = Rect::from_ints(0, 0, 20, 20);
        let from = [Rect::unit(0, 0), Rect::unit(3, 0)];
        assert_eq!(
            morph(&bbox, &from, &[Rect::unit(3, 0), Rect::unit(0, 0)]),
            Err(ConfigError::ConfigurationMismatch)
        );
        assert_eq!(
            morph(&bbox, &from, &[Rect::unit(0, 0), Rect::unit(30, 0)]),
            Err(ConfigError::OutOfBox { robot: 1 })
        );
        assert_eq!(morph(&bbox, &from, &from[..1]), Err(ConfigError::ShapeMismatch));
    }
}
