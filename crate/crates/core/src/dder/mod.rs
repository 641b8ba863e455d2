//! Double derivations `A → A⊗A`, contraction operators and the
//! bi-symplectic test.

mod bisymp;
mod contract;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::One;

use crate::algebra::{AlgebraElement, Path, Quiver};
use crate::lincomb::LinComb;
use crate::{Error, Rational, Result};

pub use bisymp::{bisymplectic_matrix, is_bisymplectic, BiSymplecticMatrix, BisymplecticReport, SectorBlock, Verdict};
pub use contract::{contract, reduced_contract, reduced_contract_dr, TensorForm};

/// `Σ u⊗v ∈ A⊗A` on basis paths.
#[derive(Debug, Clone)]
pub struct TensorElement {
    quiver: Arc<Quiver>,
    terms: LinComb<(Path, Path)>,
}

impl TensorElement {
    pub fn zero(q: &Arc<Quiver>) -> Self {
        Self::from_terms(q, LinComb::new())
    }

    pub fn from_terms(q: &Arc<Quiver>, terms: LinComb<(Path, Path)>) -> Self {
        TensorElement {
            quiver: q.clone(),
            terms,
        }
    }

    pub fn pure(q: &Arc<Quiver>, u: Path, v: Path) -> Self {
        Self::from_terms(q, LinComb::basis((u, v)))
    }

    pub fn terms(&self) -> &LinComb<(Path, Path)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Whether every term is `e_i ⊗ e_j`.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|(u, v)| u.is_trivial() && v.is_trivial())
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.terms.add_assign(&other.terms);
    }

    pub fn add_term(&mut self, u: Path, v: Path, c: Rational) {
        self.terms.add_term((u, v), c);
    }

    /// Outer action `a(u⊗v)b = au⊗vb` by basis paths.
    pub fn outer_paths(&self, a: &Path, b: &Path) -> Self {
        let q = &*self.quiver;
        let terms = self.terms.map_keys(|(u, v)| {
            Some(((a.compose(u, q)?, v.compose(b, q)?), Rational::one()))
        });
        Self::from_terms(&self.quiver, terms)
    }

    /// Outer action by algebra elements.
    pub fn outer(&self, a: &AlgebraElement, b: &AlgebraElement) -> Self {
        self.bilinear(a, b, |t, p, r| t.outer_paths(p, r))
    }

    /// Inner action `a∗(u⊗v)∗b = ub⊗av` by basis paths.
    pub fn inner_paths(&self, a: &Path, b: &Path) -> Self {
        let q = &*self.quiver;
        let terms = self.terms.map_keys(|(u, v)| {
            Some(((u.compose(b, q)?, a.compose(v, q)?), Rational::one()))
        });
        Self::from_terms(&self.quiver, terms)
    }

    pub fn inner(&self, a: &AlgebraElement, b: &AlgebraElement) -> Self {
        self.bilinear(a, b, |t, p, r| t.inner_paths(p, r))
    }

    fn bilinear(&self, a: &AlgebraElement, b: &AlgebraElement, f: impl Fn(&Self, &Path, &Path) -> Self) -> Self {
        let mut out = LinComb::new();
        for (p, c) in a.terms() {
            for (r, d) in b.terms() {
                out.add_scaled(&f(self, p, r).terms, &(c * d));
            }
        }
        Self::from_terms(&self.quiver, out)
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        crate::algebra::element_same_quiver(&self.quiver, &other.quiver) && self.terms == other.terms
    }
}

impl Eq for TensorElement {}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &*self.quiver;
        let s = crate::format_sum(
            self.terms
                .iter()
                .map(|((u, v), c)| (format!("({} ⊗ {})", u.display(q), v.display(q)), c)),
        );
        f.write_str(&s)
    }
}

/// An `R`-linear derivation `A → (A⊗A)_out`, stored by its values on arrows.
#[derive(Debug, Clone)]
pub struct DoubleDerivation {
    quiver: Arc<Quiver>,
    values: BTreeMap<usize, TensorElement>,
}

impl DoubleDerivation {
    pub fn zero(q: &Arc<Quiver>) -> Self {
        DoubleDerivation {
            quiver: q.clone(),
            values: BTreeMap::new(),
        }
    }

    /// Checks `e_h(α) Θ(α) e_t(α) = Θ(α)` for every prescribed value.
    pub fn new(q: &Arc<Quiver>, values: BTreeMap<usize, TensorElement>) -> Result<Self> {
        for (&a, t) in &values {
            let (h, tl) = (q.head(a), q.tail(a));
            if t.terms.keys().any(|(u, v)| u.head(q) != h || v.tail(q) != tl) {
                return Err(Error::BadDoubleDerivation(q.arrow(a).name.clone()));
            }
        }
        let values = values.into_iter().filter(|(_, t)| !t.is_zero()).collect();
        Ok(DoubleDerivation {
            quiver: q.clone(),
            values,
        })
    }

    /// The coordinate double derivation `∂/∂α`.
    pub fn partial(q: &Arc<Quiver>, arrow: usize) -> Self {
        let t = TensorElement::pure(q, Path::Trivial(q.head(arrow)), Path::Trivial(q.tail(arrow)));
        DoubleDerivation {
            quiver: q.clone(),
            values: BTreeMap::from([(arrow, t)]),
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    /// `Θ(α)`, zero when unspecified.
    pub fn value(&self, arrow: usize) -> TensorElement {
        self.values
            .get(&arrow)
            .cloned()
            .unwrap_or_else(|| TensorElement::zero(&self.quiver))
    }

    pub fn values(&self) -> &BTreeMap<usize, TensorElement> {
        &self.values
    }

    /// Inner sandwich `a∗Θ∗b`, again a double derivation.
    pub fn inner(&self, a: &AlgebraElement, b: &AlgebraElement) -> Self {
        let values = self
            .values
            .iter()
            .map(|(&k, t)| (k, t.inner(a, b)))
            .filter(|(_, t)| !t.is_zero())
            .collect();
        DoubleDerivation {
            quiver: self.quiver.clone(),
            values,
        }
    }

    /// Extension to all of `A` by `Θ(ab) = aΘ(b) + Θ(a)b`.
    pub fn apply(&self, x: &AlgebraElement) -> TensorElement {
        let q = &*self.quiver;
        let mut out = LinComb::new();
        for (p, c) in x.terms() {
            for (l, a, r) in p.splittings(q) {
                if let Some(t) = self.values.get(&a) {
                    out.add_scaled(&t.outer_paths(&l, &r).terms, c);
                }
            }
        }
        TensorElement::from_terms(&self.quiver, out)
    }
}

/// `∂/∂α`.
pub fn partial(q: &Arc<Quiver>, name: &str) -> Result<DoubleDerivation> {
    let a = q.arrow_by_name(name).ok_or_else(|| Error::UnknownArrow(name.into()))?;
    Ok(DoubleDerivation::partial(q, a))
}

/// `Θ(x)`.
pub fn apply(theta: &DoubleDerivation, x: &AlgebraElement) -> Result<TensorElement> {
    if !crate::algebra::element_same_quiver(theta.quiver(), x.quiver()) {
        return Err(Error::QuiverMismatch);
    }
    Ok(theta.apply(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::double_quiver;

    fn jd() -> Arc<Quiver> {
        Arc::new(double_quiver(&Quiver::jordan()).unwrap())
    }

    fn p(a: &[usize]) -> Path {
        if a.is_empty() {
            Path::Trivial(0)
        } else {
            Path::Arrows(a.to_vec())
        }
    }

    #[test]
    fn partial_on_generators() {
        let q = jd();
        let dx = partial(&q, "x").unwrap();
        let x = AlgebraElement::arrow(&q, 0);
        assert_eq!(dx.apply(&x), TensorElement::pure(&q, p(&[]), p(&[])));
        assert!(dx.apply(&AlgebraElement::arrow(&q, 1)).is_zero());
        assert!(dx.apply(&AlgebraElement::unit(&q)).is_zero());
        assert_eq!(partial(&q, "z").unwrap_err(), Error::UnknownArrow("z".into()));
    }

    #[test]
    fn partial_on_powers() {
        let q = jd();
        let dx = partial(&q, "x").unwrap();
        let x = AlgebraElement::arrow(&q, 0);
        let sq = dx.apply(&x.pow(2));
        let expect: LinComb<(Path, Path)> =
            [((p(&[]), p(&[0])), crate::rat(1)), ((p(&[0]), p(&[])), crate::rat(1))].into_iter().collect();
        assert_eq!(sq.terms(), &expect);
        let cube = dx.apply(&x.pow(3));
        let expect: LinComb<(Path, Path)> = [
            ((p(&[]), p(&[0, 0])), crate::rat(1)),
            ((p(&[0]), p(&[0])), crate::rat(1)),
            ((p(&[0, 0]), p(&[])), crate::rat(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(cube.terms(), &expect);
    }

    #[test]
    fn sandwich_condition_enforced() {
        let q = Arc::new(double_quiver(&Quiver::linear(2)).unwrap());
        // a1: 1 → 2, so Θ(a1) must lie in e_2 (A⊗A) e_1
        let bad = TensorElement::pure(&q, Path::Trivial(0), Path::Trivial(0));
        assert!(DoubleDerivation::new(&q, BTreeMap::from([(0, bad)])).is_err());
        let good = TensorElement::pure(&q, Path::Trivial(1), Path::Trivial(0));
        assert!(DoubleDerivation::new(&q, BTreeMap::from([(0, good)])).is_ok());
    }

    #[test]
    fn inner_and_outer_actions() {
        let q = jd();
        let t = TensorElement::pure(&q, p(&[0]), p(&[1]));
        assert_eq!(t.outer_paths(&p(&[1]), &p(&[0])), TensorElement::pure(&q, p(&[1, 0]), p(&[1, 0])));
        assert_eq!(t.inner_paths(&p(&[1]), &p(&[0])), TensorElement::pure(&q, p(&[0, 0]), p(&[1, 1])));
    }
}
