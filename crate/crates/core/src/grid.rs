//! The stacking grid for axis-aligned instances.
//!
//! Basic lines pass through every start and goal center. Further lines sit at
//! the distance where a robot of width `w` would rest against a stack of `i`
//! robots (a multiset, `1 <= i <= depth`) leaning on a robot centered on a
//! basic line.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use thiserror::Error;

use crate::instance::Instance;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("the grid is only defined for the axis-aligned direction set")]
    NonAxisAlignedDirections,
}

/// Sorted, deduplicated vertical (`xs`) and horizontal (`ys`) line coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub xs: Vec<Rational>,
    pub ys: Vec<Rational>,
}

impl Grid {
    pub fn contains_x(&self, x: &Rational) -> bool {
        self.xs.binary_search(x).is_ok()
    }

    pub fn contains_y(&self, y: &Rational) -> bool {
        self.ys.binary_search(y).is_ok()
    }
}

/// Upper bound on the number of lines per axis: `k^3 * 2^(k + depth + 1)`.
pub fn line_bound(k: usize, depth: usize) -> BigUint {
    BigUint::from(k).pow(3) << (k + depth + 1)
}

/// Calls `f` with every composition of `total` into `parts` positive parts.
fn compositions(total: usize, parts: usize, f: &mut impl FnMut(&[usize])) {
    fn go(rest: usize, left: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if left == 1 {
            acc.push(rest);
            f(acc);
            acc.pop();
            return;
        }
        for first in 1..=rest + 1 - left {
            acc.push(first);
            go(rest - first, left - 1, acc, f);
            acc.pop();
        }
    }
    if parts == 0 || parts > total {
        return;
    }
    go(total, parts, &mut Vec::with_capacity(parts), f);
}

/// Distinct sums of `i`-multisets of `sizes` for each `1 <= i <= depth`,
/// enumerated as a support subset plus a composition of `i` over it.
fn multiset_sums(sizes: &[Rational], depth: usize) -> BTreeSet<Rational> {
    let n = sizes.len();
    let mut out = BTreeSet::new();
    for mask in 1u64..(1u64 << n) {
        let support: Vec<&Rational> = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| &sizes[j]).collect();
        for i in support.len()..=depth {
            compositions(i, support.len(), &mut |mult| {
                let sum: Rational = support
                    .iter()
                    .zip(mult)
                    .map(|(s, &m)| *s * &Rational::from_integer(m as i64))
                    .sum();
                out.insert(sum);
            });
        }
    }
    out
}

fn axis_lines(centers: &[(Rational, Rational)], sizes: &[Rational], depth: usize) -> Vec<Rational> {
    // (coordinate, size of a robot centered there)
    let mut lines: BTreeSet<Rational> = centers.iter().map(|(c, _)| c.clone()).collect();
    let distinct_sizes: BTreeSet<Rational> = sizes.iter().cloned().collect();
    let sums = multiset_sums(sizes, depth);
    let anchors: BTreeSet<&(Rational, Rational)> = centers.iter().collect();
    for (base, base_size) in anchors {
        for w in &distinct_sizes {
            let rest = (base_size + w) / &Rational::from_integer(2);
            for s in &sums {
                let off = &rest + s;
                lines.insert(base + &off);
                lines.insert(base - &off);
            }
        }
    }
    lines.into_iter().collect()
}

pub fn build_grid(inst: &Instance, depth: usize) -> Result<Grid, GridError> {
    if !inst.dirs().is_axis_aligned() {
        return Err(GridError::NonAxisAlignedDirections);
    }
    let mut x_centers = Vec::new();
    let mut y_centers = Vec::new();
    for r in inst.robots() {
        for rect in [&r.start, &r.goal] {
            x_centers.push((rect.cx().clone(), rect.w().clone()));
            y_centers.push((rect.cy().clone(), rect.h().clone()));
        }
    }
    let widths: Vec<Rational> = inst.robots().iter().map(|r| r.start.w().clone()).collect();
    let heights: Vec<Rational> = inst.robots().iter().map(|r| r.start.h().clone()).collect();
    Ok(Grid {
        xs: axis_lines(&x_centers, &widths, depth),
        ys: axis_lines(&y_centers, &heights, depth),
    })
}
