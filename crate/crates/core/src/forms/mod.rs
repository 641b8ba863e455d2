//! Noncommutative differential forms relative to the vertex subalgebra.
//!
//! A basis word `p₀·dα₁·p₁·…·dα_n·p_n` has basis paths `p_i` and arrows `α_j`
//! under the differential. `d` of a longer path is always expanded by the
//! Leibniz rule into such words, so equality of forms is structural.

mod dr;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::One;

use crate::algebra::{AlgebraElement, Path, Quiver};
use crate::lincomb::LinComb;
use crate::{Error, Rational, Result};

pub use dr::{canonical_omega, dr_d, dr_project, is_closed, DrClass, DrKey, Letter};

/// Basis monomial `p₀·dα₁·p₁·…·dα_n·p_n` of `Ω^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormWord {
    paths: Vec<Path>,
    arrows: Vec<usize>,
}

impl FormWord {
    /// Validates composability along the whole word.
    pub fn new(q: &Quiver, paths: Vec<Path>, arrows: Vec<usize>) -> Result<Self> {
        if paths.len() != arrows.len() + 1 {
            return Err(Error::NotComposable("word needs one more path than differentials".into()));
        }
        for (k, &a) in arrows.iter().enumerate() {
            if paths[k].tail(q) != q.head(a) || q.tail(a) != paths[k + 1].head(q) {
                return Err(Error::NotComposable(format!("around d({})", q.arrow(a).name)));
            }
        }
        Ok(FormWord { paths, arrows })
    }

    pub(crate) fn from_parts_unchecked(paths: Vec<Path>, arrows: Vec<usize>) -> Self {
        debug_assert_eq!(paths.len(), arrows.len() + 1);
        FormWord { paths, arrows }
    }

    /// Degree-0 word.
    pub fn path(p: Path) -> Self {
        FormWord {
            paths: vec![p],
            arrows: Vec::new(),
        }
    }

    /// `dα` with idempotent padding.
    pub fn d_arrow(q: &Quiver, a: usize) -> Self {
        FormWord {
            paths: vec![Path::Trivial(q.head(a)), Path::Trivial(q.tail(a))],
            arrows: vec![a],
        }
    }

    pub fn degree(&self) -> usize {
        self.arrows.len()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn head(&self, q: &Quiver) -> usize {
        self.paths[0].head(q)
    }

    pub fn tail(&self, q: &Quiver) -> usize {
        self.paths[self.paths.len() - 1].tail(q)
    }

    /// Concatenation through the middle product `p_n(self)·p₀(other)`.
    pub fn concat(&self, other: &FormWord, q: &Quiver) -> Option<FormWord> {
        let mid = self.paths.last()?.compose(&other.paths[0], q)?;
        let mut paths = Vec::with_capacity(self.paths.len() + other.paths.len() - 1);
        paths.extend_from_slice(&self.paths[..self.paths.len() - 1]);
        paths.push(mid);
        paths.extend_from_slice(&other.paths[1..]);
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(FormWord { paths, arrows })
    }

    /// Left multiplication of the first path by `p`.
    pub fn premul(&self, p: &Path, q: &Quiver) -> Option<FormWord> {
        let first = p.compose(&self.paths[0], q)?;
        let mut w = self.clone();
        w.paths[0] = first;
        Some(w)
    }

    /// Right multiplication of the last path by `p`.
    pub fn postmul(&self, p: &Path, q: &Quiver) -> Option<FormWord> {
        let n = self.paths.len() - 1;
        let last = self.paths[n].compose(p, q)?;
        let mut w = self.clone();
        w.paths[n] = last;
        Some(w)
    }

    /// `d` of this word, expanded in the word basis.
    pub fn differential(&self, q: &Quiver) -> LinComb<FormWord> {
        let mut out = LinComb::new();
        for (i, p) in self.paths.iter().enumerate() {
            let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            for (l, a, r) in p.splittings(q) {
                let mut paths = Vec::with_capacity(self.paths.len() + 1);
                paths.extend_from_slice(&self.paths[..i]);
                paths.push(l);
                paths.push(r);
                paths.extend_from_slice(&self.paths[i + 1..]);
                let mut arrows = Vec::with_capacity(self.arrows.len() + 1);
                arrows.extend_from_slice(&self.arrows[..i]);
                arrows.push(a);
                arrows.extend_from_slice(&self.arrows[i..]);
                out.add_term(FormWord { paths, arrows }, sign.clone());
            }
        }
        out
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return self.paths[0].display(q);
        }
        let mut parts = Vec::new();
        for (k, p) in self.paths.iter().enumerate() {
            if !p.is_trivial() {
                parts.push(p.display(q));
            }
            if k < self.arrows.len() {
                parts.push(format!("d({})", q.arrow(self.arrows[k]).name));
            }
        }
        parts.join("*")
    }
}

impl Ord for FormWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.paths.cmp(&other.paths))
    }
}

impl PartialOrd for FormWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of `Ω•A`, possibly of mixed degree.
///
/// `nominal` is the degree reported for the zero form.
#[derive(Debug, Clone)]
pub struct NcForm {
    quiver: Arc<Quiver>,
    terms: LinComb<FormWord>,
    nominal: usize,
}

impl NcForm {
    pub fn zero(q: &Arc<Quiver>, degree: usize) -> Self {
        NcForm {
            quiver: q.clone(),
            terms: LinComb::new(),
            nominal: degree,
        }
    }

    pub fn from_terms(q: &Arc<Quiver>, terms: LinComb<FormWord>, nominal: usize) -> Self {
        NcForm {
            quiver: q.clone(),
            terms,
            nominal,
        }
    }

    pub fn word(q: &Arc<Quiver>, w: FormWord) -> Self {
        let n = w.degree();
        Self::from_terms(q, LinComb::basis(w), n)
    }

    pub fn d_arrow(q: &Arc<Quiver>, a: usize) -> Self {
        Self::word(q, FormWord::d_arrow(q, a))
    }

    /// Degree-0 form of an algebra element.
    pub fn from_element(x: &AlgebraElement) -> Self {
        Self::from_terms(x.quiver(), x.terms().map_keys(|p| Some((FormWord::path(p.clone()), Rational::one()))), 0)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn terms(&self) -> &LinComb<FormWord> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Homogeneous degree; the zero form reports its nominal degree.
    pub fn degree(&self) -> Result<usize> {
        let mut degs = self.terms.keys().map(FormWord::degree);
        match degs.next() {
            None => Ok(self.nominal),
            Some(d) if degs.all(|e| e == d) => Ok(d),
            Some(_) => Err(Error::MixedDegree),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree().is_ok()
    }

    /// Back to `A` for degree-0 forms.
    pub fn to_element(&self) -> Result<AlgebraElement> {
        let d = self.degree()?;
        if d != 0 {
            return Err(Error::WrongDegree { expected: 0, found: d });
        }
        Ok(AlgebraElement::from_terms(
            &self.quiver,
            self.terms.map_keys(|w| Some((w.paths[0].clone(), Rational::one()))),
        ))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if crate::algebra::element_same_quiver(&self.quiver, &other.quiver) {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    fn sum_nominal(&self, other: &Self) -> usize {
        if self.is_zero() {
            other.nominal_or_degree()
        } else {
            self.nominal_or_degree()
        }
    }

    fn nominal_or_degree(&self) -> usize {
        self.terms.keys().next().map_or(self.nominal, FormWord::degree)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut t = self.terms.clone();
        t.add_assign(&other.terms);
        Ok(Self::from_terms(&self.quiver, t, self.sum_nominal(other)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rational::one()))
    }

    /// Graded product, bilinear extension of word concatenation.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let q = &*self.quiver;
        let mut t = LinComb::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if let Some(w) = u.concat(v, q) {
                    t.add_term(w, a * b);
                }
            }
        }
        Ok(Self::from_terms(&self.quiver, t, self.nominal_or_degree() + other.nominal_or_degree()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(&self.quiver, self.terms.scaled(c), self.nominal_or_degree())
    }

    /// The differential; rejects mixed-degree input.
    pub fn d(&self) -> Result<Self> {
        let n = self.degree()?;
        let q = &*self.quiver;
        let mut t = LinComb::new();
        for (w, c) in &self.terms {
            t.add_scaled(&w.differential(q), c);
        }
        Ok(Self::from_terms(&self.quiver, t, n + 1))
    }
}

/// The universal derivation `A → Ω¹A` (relative to the vertex idempotents).
pub fn d_algebra(x: &AlgebraElement) -> NcForm {
    NcForm::from_element(x).d().expect("degree-0 forms are homogeneous")
}

/// `d` on forms.
pub fn d_form(u: &NcForm) -> Result<NcForm> {
    u.d()
}

/// Product in `Ω•A`.
pub fn form_mul(u: &NcForm, v: &NcForm) -> Result<NcForm> {
    u.try_mul(v)
}

impl PartialEq for NcForm {
    fn eq(&self, other: &Self) -> bool {
        crate::algebra::element_same_quiver(&self.quiver, &other.quiver) && self.terms == other.terms
    }
}

impl Eq for NcForm {}

impl Add for &NcForm {
    type Output = NcForm;
    fn add(self, rhs: Self) -> NcForm {
        self.try_add(rhs).expect("operands over the same quiver")
    }
}

impl Sub for &NcForm {
    type Output = NcForm;
    fn sub(self, rhs: Self) -> NcForm {
        self.try_sub(rhs).expect("operands over the same quiver")
    }
}

impl Mul for &NcForm {
    type Output = NcForm;
    fn mul(self, rhs: Self) -> NcForm {
        self.try_mul(rhs).expect("operands over the same quiver")
    }
}

impl Neg for &NcForm {
    type Output = NcForm;
    fn neg(self) -> NcForm {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for NcForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &*self.quiver;
        f.write_str(&crate::format_sum(self.terms.iter().map(|(w, c)| (w.display(q), c))))
    }
}
