//! Affine expressions over LP variables.

use std::ops::{Add, Neg, Sub};

use crate::lp::{LinProblem, Relation};
use crate::rational::Rational;

/// `constant + sum(coeff * var)`, with at most one term per variable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Affine {
    pub terms: Vec<(usize, Rational)>,
    pub constant: Rational,
}

impl Affine {
    pub fn constant(c: Rational) -> Self {
        Affine { terms: Vec::new(), constant: c }
    }

    pub fn var(v: usize) -> Self {
        Affine {
            terms: vec![(v, Rational::one())],
            constant: Rational::zero(),
        }
    }

    pub fn scaled_var(v: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Affine::default();
        }
        Affine { terms: vec![(v, c)], constant: Rational::zero() }
    }

    fn add_term(&mut self, v: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        if let Some(i) = self.terms.iter().position(|(u, _)| *u == v) {
            self.terms[i].1 += c;
            if self.terms[i].1.is_zero() {
                self.terms.remove(i);
            }
        } else {
            self.terms.push((v, c.clone()));
        }
    }

    pub fn scale(&self, s: &Rational) -> Affine {
        if s.is_zero() {
            return Affine::default();
        }
        Affine {
            terms: self.terms.iter().map(|(v, c)| (*v, c * s)).collect(),
            constant: &self.constant * s,
        }
    }

    pub fn plus_const(&self, c: &Rational) -> Affine {
        let mut out = self.clone();
        out.constant += c;
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut s = self.constant.clone();
        for (v, c) in &self.terms {
            s += &(c * &x[*v]);
        }
        s
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Add<&Affine> for &Affine {
    type Output = Affine;
    fn add(self, o: &Affine) -> Affine {
        let mut out = self.clone();
        for (v, c) in &o.terms {
            out.add_term(*v, c);
        }
        out.constant += &o.constant;
        out
    }
}

impl Sub<&Affine> for &Affine {
    type Output = Affine;
    fn sub(self, o: &Affine) -> Affine {
        self + &(-o)
    }
}

impl Neg for &Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        Affine {
            terms: self.terms.iter().map(|(v, c)| (*v, -c)).collect(),
            constant: -&self.constant,
        }
    }
}

/// `lhs rel rhs` moved to `terms rel constant` form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub expr: Affine,
    pub rel: Relation,
}

impl Row {
    /// `lhs <= rhs`.
    pub fn le(lhs: &Affine, rhs: &Affine) -> Row {
        Row { expr: lhs - rhs, rel: Relation::Le }
    }

    /// `lhs >= rhs`.
    pub fn ge(lhs: &Affine, rhs: &Affine) -> Row {
        Row { expr: lhs - rhs, rel: Relation::Ge }
    }

    pub fn eq(lhs: &Affine, rhs: &Affine) -> Row {
        Row { expr: lhs - rhs, rel: Relation::Eq }
    }

    pub fn holds_at(&self, x: &[Rational]) -> bool {
        let v = self.expr.eval(x);
        match self.rel {
            Relation::Le => !v.is_positive(),
            Relation::Ge => !v.is_negative(),
            Relation::Eq => v.is_zero(),
        }
    }

    pub fn push_to(&self, p: &mut LinProblem) {
        p.push_sparse(&self.expr.terms, self.rel, -&self.expr.constant);
    }
}
