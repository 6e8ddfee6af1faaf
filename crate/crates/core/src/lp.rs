//! Exact feasibility for systems of linear constraints over free variables.
//!
//! Equality rows are eliminated first. The remaining inequalities go through a
//! phase-one simplex on a dense rational tableau with Bland's rule. An
//! infeasible system comes back with a Farkas certificate that is checked
//! independently of the solver.

use std::fmt;

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn holds_at(&self, x: &[Rational]) -> bool {
        let lhs = dot(&self.coeffs, x);
        match self.rel {
            Relation::Le => lhs <= self.rhs,
            Relation::Eq => lhs == self.rhs,
            Relation::Ge => lhs >= self.rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("constraint {row} has {found} coefficients for {expected} variables")]
    DimensionMismatch { row: usize, expected: usize, found: usize },
}

/// Named free variables and constraints over them.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinProblem {
    vars: Vec<String>,
    constraints: Vec<Constraint>,
}

impl LinProblem {
    pub fn new() -> Self {
        LinProblem::default()
    }

    pub fn with_vars(names: impl IntoIterator<Item = impl Into<String>>) -> Self {
        LinProblem {
            vars: names.into_iter().map(Into::into).collect(),
            constraints: Vec::new(),
        }
    }

    pub fn add_var(&mut self, name: impl Into<String>) -> usize {
        self.vars.push(name.into());
        for c in &mut self.constraints {
            c.coeffs.push(Rational::zero());
        }
        self.vars.len() - 1
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Adds a dense row. The length is checked when solving.
    pub fn push(&mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) {
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }

    /// Adds a row given as `(variable, coefficient)` pairs; repeats are summed.
    pub fn push_sparse(&mut self, terms: &[(usize, Rational)], rel: Relation, rhs: Rational) {
        let mut coeffs = vec![Rational::zero(); self.vars.len()];
        for (v, c) in terms {
            coeffs[*v] += c;
        }
        self.push(coeffs, rel, rhs);
    }

    pub fn check_dimensions(&self) -> Result<(), LpError> {
        let n = self.vars.len();
        for (row, c) in self.constraints.iter().enumerate() {
            if c.coeffs.len() != n {
                return Err(LpError::DimensionMismatch {
                    row,
                    expected: n,
                    found: c.coeffs.len(),
                });
            }
        }
        Ok(())
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.vars.len() && self.constraints.iter().all(|c| c.holds_at(x))
    }
}

impl fmt::Display for LinProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.constraints {
            let mut first = true;
            for (v, a) in c.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{:?}*{}", a, self.vars[v])?;
            }
            if first {
                write!(f, "0")?;
            }
            writeln!(f, " {} {:?}", c.rel, c.rhs)?;
        }
        Ok(())
    }
}

/// Multipliers, one per constraint, proving infeasibility.
///
/// Each row is read as `a.x <= b` (a `>=` row is negated first). The
/// multipliers are nonnegative on inequality rows and free on equality rows,
/// the weighted sum of the left sides vanishes and the weighted sum of the
/// right sides is negative, which yields `0 <= negative`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Rational>,
}

impl FarkasCertificate {
    pub fn verify(&self, p: &LinProblem) -> bool {
        if self.multipliers.len() != p.constraints.len() || p.check_dimensions().is_err() {
            return false;
        }
        let n = p.vars.len();
        let mut lhs = vec![Rational::zero(); n];
        let mut rhs = Rational::zero();
        for (y, c) in self.multipliers.iter().zip(&p.constraints) {
            if c.rel != Relation::Eq && y.is_negative() {
                return false;
            }
            let y = if c.rel == Relation::Ge { -y } else { y.clone() };
            if y.is_zero() {
                continue;
            }
            for (acc, a) in lhs.iter_mut().zip(&c.coeffs) {
                *acc += &(&y * a);
            }
            rhs += &(&y * &c.rhs);
        }
        lhs.iter().all(Rational::is_zero) && rhs.is_negative()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Feasible(Vec<Rational>),
    Infeasible(FarkasCertificate),
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpOutcome::Feasible(_))
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Feasible(x) => Some(x),
            LpOutcome::Infeasible(_) => None,
        }
    }
}

fn dot(a: &[Rational], x: &[Rational]) -> Rational {
    let mut s = Rational::zero();
    for (ai, xi) in a.iter().zip(x) {
        if !ai.is_zero() && !xi.is_zero() {
            s += &(ai * xi);
        }
    }
    s
}

/// Adds `factor * src` to `dst`.
fn axpy(dst: &mut [Rational], factor: &Rational, src: &[Rational]) {
    if factor.is_zero() {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += &(factor * s);
        }
    }
}

/// An inequality `coeffs . x <= rhs` over the variables left after
/// elimination, with its derivation as a combination of original rows.
struct Reduced {
    coeffs: Vec<Rational>,
    rhs: Rational,
    /// Multipliers on the original rows, each read as `a.x <= b` or `a.x = b`.
    origin: Vec<Rational>,
}

/// Decides feasibility exactly.
pub fn solve_feasibility(p: &LinProblem) -> Result<LpOutcome, LpError> {
    p.check_dimensions()?;
    let n = p.vars.len();
    let m = p.constraints.len();
    let unit = |i: usize, s: Rational| {
        let mut v = vec![Rational::zero(); m];
        v[i] = s;
        v
    };

    // Gauss-Jordan on the equality rows. Each row keeps its combination of
    // original rows in `origin`.
    let mut eq: Vec<Reduced> = Vec::new();
    let mut ineq: Vec<Reduced> = Vec::new();
    for (i, c) in p.constraints.iter().enumerate() {
        match c.rel {
            Relation::Eq => eq.push(Reduced { coeffs: c.coeffs.clone(), rhs: c.rhs.clone(), origin: unit(i, Rational::one()) }),
            Relation::Le => ineq.push(Reduced { coeffs: c.coeffs.clone(), rhs: c.rhs.clone(), origin: unit(i, Rational::one()) }),
            Relation::Ge => ineq.push(Reduced {
                coeffs: c.coeffs.iter().map(|a| -a).collect(),
                rhs: -&c.rhs,
                origin: unit(i, -Rational::one()),
            }),
        }
    }
    let mut pivots: Vec<(usize, Reduced)> = Vec::new();
    for mut row in eq {
        for (col, prow) in &pivots {
            let f = -&row.coeffs[*col];
            if !f.is_zero() {
                axpy(&mut row.coeffs, &f, &prow.coeffs);
                row.rhs += &(&f * &prow.rhs);
                axpy(&mut row.origin, &f, &prow.origin);
            }
        }
        let Some(col) = row.coeffs.iter().position(|a| !a.is_zero()) else {
            if row.rhs.is_zero() {
                continue;
            }
            // 0 = rhs with rhs nonzero.
            let s = if row.rhs.is_positive() { -Rational::one() } else { Rational::one() };
            let multipliers = row.origin.iter().map(|y| y * &s).collect();
            return Ok(LpOutcome::Infeasible(FarkasCertificate { multipliers }));
        };
        let inv = row.coeffs[col].recip();
        for a in row.coeffs.iter_mut() {
            *a *= &inv;
        }
        row.rhs *= &inv;
        for y in row.origin.iter_mut() {
            *y *= &inv;
        }
        for (_, prow) in pivots.iter_mut() {
            let f = -&prow.coeffs[col];
            if !f.is_zero() {
                axpy(&mut prow.coeffs, &f, &row.coeffs);
                prow.rhs += &(&f * &row.rhs);
                axpy(&mut prow.origin, &f, &row.origin);
            }
        }
        pivots.push((col, row));
    }
    for row in ineq.iter_mut() {
        for (col, prow) in &pivots {
            let f = -&row.coeffs[*col];
            if !f.is_zero() {
                axpy(&mut row.coeffs, &f, &prow.coeffs);
                row.rhs += &(&f * &prow.rhs);
                axpy(&mut row.origin, &f, &prow.origin);
            }
        }
    }
    let pivot_cols: Vec<bool> = (0..n).map(|j| pivots.iter().any(|(c, _)| *c == j)).collect();
    let free: Vec<usize> = (0..n).filter(|&j| !pivot_cols[j]).collect();
    let rows: Vec<(Vec<Rational>, Rational)> = ineq
        .iter()
        .map(|r| (free.iter().map(|&j| r.coeffs[j].clone()).collect(), r.rhs.clone()))
        .collect();

    match phase_one(&rows, free.len()) {
        Ok(xf) => {
            let mut x = vec![Rational::zero(); n];
            for (v, &j) in xf.into_iter().zip(&free) {
                x[j] = v;
            }
            for (col, prow) in &pivots {
                let mut v = prow.rhs.clone();
                for &j in &free {
                    if !prow.coeffs[j].is_zero() {
                        v -= &(&prow.coeffs[j] * &x[j]);
                    }
                }
                x[*col] = v;
            }
            debug_assert!(p.is_satisfied_by(&x));
            Ok(LpOutcome::Feasible(x))
        }
        Err(y) => {
            let mut multipliers = vec![Rational::zero(); m];
            for (yi, r) in y.iter().zip(&ineq) {
                axpy(&mut multipliers, yi, &r.origin);
            }
            // Stored in `a.x <= b` orientation; `>=` rows report the
            // multiplier of the negated row, which is nonnegative.
            for (i, c) in p.constraints.iter().enumerate() {
                if c.rel == Relation::Ge {
                    multipliers[i] = -&multipliers[i];
                }
            }
            Ok(LpOutcome::Infeasible(FarkasCertificate { multipliers }))
        }
    }
}

/// Phase-one simplex for `A x <= b` with `x` free. Returns a point, or
/// nonnegative row multipliers `y` with `y A = 0` and `y b < 0`.
fn phase_one(rows: &[(Vec<Rational>, Rational)], n: usize) -> Result<Vec<Rational>, Vec<Rational>> {
    let m = rows.len();
    if m == 0 {
        return Ok(vec![Rational::zero(); n]);
    }
    // Columns: x+ (n), x- (n), slacks (m), one artificial per negative row.
    let negative: Vec<usize> = (0..m).filter(|&i| rows[i].1.is_negative()).collect();
    let cols = 2 * n + m + negative.len();
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    // Column holding the unit vector for row i at the start, and its cost.
    let mut home: Vec<(usize, bool)> = Vec::with_capacity(m);
    let mut art = 2 * n + m;
    for (i, (a, b)) in rows.iter().enumerate() {
        let flip = b.is_negative();
        let s = if flip { -Rational::one() } else { Rational::one() };
        let mut row = vec![Rational::zero(); cols];
        for j in 0..n {
            if !a[j].is_zero() {
                row[j] = &a[j] * &s;
                row[n + j] = -&row[j];
            }
        }
        row[2 * n + i] = s.clone();
        if flip {
            row[art] = Rational::one();
            basis.push(art);
            home.push((art, true));
            art += 1;
        } else {
            basis.push(2 * n + i);
            home.push((2 * n + i, false));
        }
        tab.push(row);
        rhs.push(b * &s);
    }
    let mut cost = vec![Rational::zero(); cols];
    let mut value = Rational::zero();
    for &i in &negative {
        axpy(&mut cost, &-Rational::one(), &tab[i]);
        value += &rhs[i];
    }
    for &i in &negative {
        cost[basis[i]] = Rational::zero();
    }

    while value.is_positive() {
        let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &rhs[i] / &tab[i][enter];
            let better = match &leave {
                None => true,
                Some((l, r)) => ratio < *r || (ratio == *r && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // The phase-one objective is bounded below by zero.
        let (r, _) = leave.expect("bounded phase one");
        let inv = tab[r][enter].recip();
        for a in tab[r].iter_mut() {
            if !a.is_zero() {
                *a *= &inv;
            }
        }
        rhs[r] *= &inv;
        let prow = tab[r].clone();
        let prhs = rhs[r].clone();
        for i in 0..m {
            if i == r {
                continue;
            }
            let f = -&tab[i][enter];
            if !f.is_zero() {
                axpy(&mut tab[i], &f, &prow);
                rhs[i] += &(&f * &prhs);
            }
        }
        let f = -&cost[enter];
        axpy(&mut cost, &f, &prow);
        value -= &(&f * &prhs);
        basis[r] = enter;
    }

    if value.is_positive() {
        // Dual prices: pi_i = (cost of home column) - (its reduced cost).
        // Row i was scaled by s_i, so the multiplier on `a.x <= b` is -pi_i s_i.
        let y = (0..m)
            .map(|i| {
                let (col, artificial) = home[i];
                let c0 = if artificial { Rational::one() } else { Rational::zero() };
                let pi = c0 - &cost[col];
                if rows[i].1.is_negative() {
                    pi
                } else {
                    -pi
                }
            })
            .collect();
        return Err(y);
    }
    let mut z = vec![Rational::zero(); cols];
    for (i, &b) in basis.iter().enumerate() {
        z[b] = rhs[i].clone();
    }
    Ok((0..n).map(|j| &z[j] - &z[n + j]).collect())
}
