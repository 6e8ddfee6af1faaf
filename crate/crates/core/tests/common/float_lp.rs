//! A small dense two-phase simplex in `f64`, used only as an independent
//! reference for the exact kernel.

const EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rel {
    Le,
    Eq,
    Ge,
}

/// `Feasible(t)` / `Infeasible(t)` where `t` is the distance from the
/// decision boundary: the largest uniform slack on the inequality rows, or
/// the residual of the equality rows when those alone are inconsistent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    Feasible(f64),
    Infeasible(f64),
}

impl Verdict {
    pub fn margin(&self) -> f64 {
        match self {
            Verdict::Feasible(m) | Verdict::Infeasible(m) => *m,
        }
    }
}

struct Tableau {
    a: Vec<Vec<f64>>,
    rhs: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.a[r][c];
        for v in self.a[r].iter_mut() {
            *v /= p;
        }
        self.rhs[r] /= p;
        for i in 0..self.a.len() {
            if i != r {
                let f = self.a[i][c];
                if f.abs() > 0.0 {
                    for j in 0..self.a[i].len() {
                        self.a[i][j] -= f * self.a[r][j];
                    }
                    self.rhs[i] -= f * self.rhs[r];
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . z` over the allowed columns with Bland's rule.
    fn maximize(&mut self, cost: &[f64], allowed: &[bool]) -> f64 {
        loop {
            let reduced = |j: usize| -> f64 {
                cost[j] - (0..self.a.len()).map(|i| cost[self.basis[i]] * self.a[i][j]).sum::<f64>()
            };
            let Some(enter) = (0..cost.len()).find(|&j| allowed[j] && !self.basis.contains(&j) && reduced(j) > EPS)
            else {
                return (0..self.a.len()).map(|i| cost[self.basis[i]] * self.rhs[i]).sum();
            };
            let mut best: Option<(f64, usize)> = None;
            for i in 0..self.a.len() {
                if self.a[i][enter] > EPS {
                    let ratio = self.rhs[i] / self.a[i][enter];
                    let better = match best {
                        None => true,
                        Some((r, bi)) => ratio < r - EPS || (ratio < r + EPS && self.basis[i] < self.basis[bi]),
                    };
                    if better {
                        best = Some((ratio, i));
                    }
                }
            }
            match best {
                Some((_, row)) => self.pivot(row, enter),
                None => return f64::INFINITY,
            }
        }
    }
}

/// Decides `rows` (coefficients, relation, right-hand side) over free variables.
pub fn decide(n: usize, rows: &[(Vec<f64>, Rel, f64)]) -> Verdict {
    // Columns: x+ (n), x- (n), t+, t-, one slack per inequality row and for t <= 1, then artificials.
    let ineq = rows.iter().filter(|r| r.1 != Rel::Eq).count();
    let m = rows.len() + 1;
    let tp = 2 * n;
    let tm = 2 * n + 1;
    let slack0 = 2 * n + 2;
    let art0 = slack0 + ineq + 1;
    let cols = art0 + m;
    let mut a = vec![vec![0.0; cols]; m];
    let mut rhs = vec![0.0; m];
    let mut s = 0;
    for (i, (coeffs, rel, b)) in rows.iter().enumerate() {
        let sign = if *rel == Rel::Ge { -1.0 } else { 1.0 };
        for j in 0..n {
            a[i][j] = sign * coeffs[j];
            a[i][n + j] = -sign * coeffs[j];
        }
        rhs[i] = sign * b;
        if *rel != Rel::Eq {
            a[i][tp] = 1.0;
            a[i][tm] = -1.0;
            a[i][slack0 + s] = 1.0;
            s += 1;
        }
    }
    a[m - 1][tp] = 1.0;
    a[m - 1][tm] = -1.0;
    a[m - 1][slack0 + ineq] = 1.0;
    rhs[m - 1] = 1.0;
    for i in 0..m {
        if rhs[i] < 0.0 {
            for v in a[i].iter_mut() {
                *v = -*v;
            }
            rhs[i] = -rhs[i];
        }
        a[i][art0 + i] = 1.0;
    }
    let mut t = Tableau { a, rhs, basis: (art0..art0 + m).collect() };

    let mut phase1 = vec![0.0; cols];
    for c in phase1.iter_mut().skip(art0) {
        *c = -1.0;
    }
    let all = vec![true; cols];
    let residual = -t.maximize(&phase1, &all);
    if residual > 1e-7 {
        return Verdict::Infeasible(residual);
    }
    for i in 0..m {
        if t.basis[i] >= art0 {
            if let Some(c) = (0..art0).find(|&c| t.a[i][c].abs() > 1e-7) {
                t.pivot(i, c);
            }
        }
    }
    let mut phase2 = vec![0.0; cols];
    phase2[tp] = 1.0;
    phase2[tm] = -1.0;
    let allowed: Vec<bool> = (0..cols).map(|c| c < art0).collect();
    let best = t.maximize(&phase2, &allowed);
    if best >= 0.0 {
        Verdict::Feasible(best)
    } else {
        Verdict::Infeasible(-best)
    }
}
