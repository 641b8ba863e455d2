use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::One;

use super::{Path, Quiver};
use crate::lincomb::LinComb;
use crate::{Error, Rational, Result};

/// An element of the path algebra `kQ`.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    quiver: Arc<Quiver>,
    terms: LinComb<Path>,
}

pub(crate) fn same_quiver(a: &Arc<Quiver>, b: &Arc<Quiver>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl AlgebraElement {
    pub fn zero(q: &Arc<Quiver>) -> Self {
        Self::from_terms(q, LinComb::new())
    }

    pub fn from_terms(q: &Arc<Quiver>, terms: LinComb<Path>) -> Self {
        AlgebraElement {
            quiver: q.clone(),
            terms,
        }
    }

    pub fn path(q: &Arc<Quiver>, p: Path) -> Self {
        Self::from_terms(q, LinComb::basis(p))
    }

    pub fn vertex(q: &Arc<Quiver>, v: usize) -> Self {
        Self::path(q, Path::Trivial(v))
    }

    pub fn arrow(q: &Arc<Quiver>, a: usize) -> Self {
        Self::path(q, Path::arrow(a))
    }

    pub fn scalar(q: &Arc<Quiver>, c: Rational) -> Self {
        Self::unit(q).scale(&c)
    }

    /// `1 = Σ e_i`.
    pub fn unit(q: &Arc<Quiver>) -> Self {
        Self::from_terms(
            q,
            (0..q.num_vertices())
                .map(|v| (Path::Trivial(v), Rational::one()))
                .collect(),
        )
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn terms(&self) -> &LinComb<Path> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_quiver(&self.quiver, &other.quiver) {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut t = self.terms.clone();
        t.add_assign(&other.terms);
        Ok(Self::from_terms(&self.quiver, t))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut t = self.terms.clone();
        t.add_scaled(&other.terms, &-Rational::one());
        Ok(Self::from_terms(&self.quiver, t))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let q = &*self.quiver;
        let mut t = LinComb::new();
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                if let Some(pr) = p.compose(r, q) {
                    t.add_term(pr, a * b);
                }
            }
        }
        Ok(Self::from_terms(&self.quiver, t))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(&self.quiver, self.terms.scaled(c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::unit(&self.quiver);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        same_quiver(&self.quiver, &other.quiver) && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

// The operator impls panic on mixed quivers; use the `try_*` methods to get
// an error instead.
impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: Self) -> AlgebraElement {
        self.try_add(rhs).expect("operands over the same quiver")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: Self) -> AlgebraElement {
        self.try_sub(rhs).expect("operands over the same quiver")
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: Self) -> AlgebraElement {
        self.try_mul(rhs).expect("operands over the same quiver")
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement::from_terms(&self.quiver, self.terms.negated())
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &*self.quiver;
        f.write_str(&crate::format_sum(self.terms.iter().map(|(p, c)| (p.display(q), c))))
    }
}
