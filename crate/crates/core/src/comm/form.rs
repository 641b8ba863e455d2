use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::One;

use super::{Monomial, PolyRing, Polynomial};
use crate::lincomb::LinComb;
use crate::{Error, Rational, Result};

/// Highest exterior degree represented.
pub const MAX_DEGREE: usize = 3;

/// Exterior form `Σ c·m·dx_I` with strictly increasing index tuples `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommForm {
    nvars: usize,
    degree: usize,
    terms: LinComb<(Vec<usize>, Monomial)>,
}

/// Inserts `i` into the sorted tuple `idx`; returns the new tuple and whether
/// moving `dx_i` from the front into place flips the sign.
fn insert_sorted(idx: &[usize], i: usize) -> Option<(Vec<usize>, bool)> {
    let pos = match idx.binary_search(&i) {
        Ok(_) => return None,
        Err(p) => p,
    };
    let mut v = idx.to_vec();
    v.insert(pos, i);
    Some((v, pos % 2 == 1))
}

/// Merges two sorted tuples; the sign is the parity of the shuffle.
fn merge_sorted(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut inversions = 0;
    for &x in a {
        for &y in b {
            match x.cmp(&y) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    Some((v, inversions % 2 == 1))
}

fn signed(c: Rational, neg: bool) -> Rational {
    if neg {
        -c
    } else {
        c
    }
}

impl CommForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        CommForm {
            nvars,
            degree,
            terms: LinComb::new(),
        }
    }

    pub fn from_poly(f: &Polynomial) -> Self {
        CommForm {
            nvars: f.nvars(),
            degree: 0,
            terms: f.terms().map_keys(|m| Some(((Vec::new(), m.clone()), Rational::one()))),
        }
    }

    /// `dx_i`.
    pub fn dx(nvars: usize, i: usize) -> Self {
        CommForm {
            nvars,
            degree: 1,
            terms: LinComb::basis((vec![i], Monomial::one(nvars))),
        }
    }

    /// `f · dx_I` for an arbitrary (unsorted) index list.
    pub fn monomial_form(f: &Polynomial, idx: &[usize]) -> Result<Self> {
        let nvars = f.nvars();
        let mut acc = Self::from_poly(f);
        for &i in idx {
            acc = wedge(&acc, &Self::dx(nvars, i))?;
        }
        Ok(acc)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &LinComb<(Vec<usize>, Monomial)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Polynomial coefficient of `dx_I` (`I` sorted).
    pub fn coefficient(&self, idx: &[usize]) -> Polynomial {
        let terms = self
            .terms
            .map_keys(|(i, m)| (i.as_slice() == idx).then(|| (m.clone(), Rational::one())));
        Polynomial::from_terms(self.nvars, terms)
    }

    /// Whether every coefficient is a constant.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|(_, m)| m.is_one())
    }

    pub fn to_poly(&self) -> Result<Polynomial> {
        if self.degree != 0 {
            return Err(Error::WrongDegree {
                expected: 0,
                found: self.degree,
            });
        }
        Ok(Polynomial::from_terms(self.nvars, self.terms.map_keys(|(_, m)| Some((m.clone(), Rational::one())))))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch(self.nvars, other.nvars));
        }
        if self.degree != other.degree {
            return Err(Error::WrongDegree {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut t = self.terms.clone();
        t.add_assign(&other.terms);
        Ok(CommForm { terms: t, ..self.clone() })
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.check(other).expect("forms of equal arity and degree");
        self.terms.add_assign(&other.terms);
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CommForm {
            terms: self.terms.scaled(c),
            ..self.clone()
        }
    }

    /// Multiplication by a polynomial.
    pub fn mul_poly(&self, f: &Polynomial) -> Self {
        let mut t = LinComb::new();
        for ((i, m), c) in &self.terms {
            for (n, d) in f.terms() {
                t.add_term((i.clone(), m.mul(n)), c * d);
            }
        }
        CommForm { terms: t, ..self.clone() }
    }

    /// Value of each coefficient at `point`, as a constant-coefficient form.
    pub fn eval(&self, point: &[Rational]) -> Self {
        let one = Monomial::one(self.nvars);
        let terms = self.terms.map_keys(|(i, m)| Some(((i.clone(), one.clone()), m.eval(point))));
        CommForm { terms, ..self.clone() }
    }

    /// Exterior derivative; inputs above degree 2 are rejected.
    pub fn d(&self) -> Result<Self> {
        if self.degree + 1 > MAX_DEGREE {
            return Err(Error::DegreeOverflow(self.degree + 1));
        }
        let mut t = LinComb::new();
        for ((idx, m), c) in &self.terms {
            for i in 0..self.nvars {
                let Some((e, m2)) = m.derive(i) else { continue };
                let Some((idx2, neg)) = insert_sorted(idx, i) else { continue };
                t.add_term((idx2, m2), signed(c * Rational::from_integer(e.into()), neg));
            }
        }
        Ok(CommForm {
            nvars: self.nvars,
            degree: self.degree + 1,
            terms: t,
        })
    }

    /// Interior product with the vector field whose components are `images`.
    pub fn interior(&self, images: &[Polynomial]) -> Self {
        let mut out = CommForm::zero(self.nvars, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for ((idx, m), c) in &self.terms {
            for (k, &i) in idx.iter().enumerate() {
                let mut rest = idx.clone();
                rest.remove(k);
                let sign = if k % 2 == 1 { -c.clone() } else { c.clone() };
                for (n, d) in images[i].terms() {
                    out.terms.add_term((rest.clone(), m.mul(n)), &sign * d);
                }
            }
        }
        out
    }

    /// Antisymmetric coefficient matrix of a 2-form at `point`.
    pub fn skew_matrix(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        if self.degree != 2 {
            return Err(Error::WrongDegree {
                expected: 2,
                found: self.degree,
            });
        }
        let n = self.nvars;
        let mut m = vec![vec![Rational::from_integer(0.into()); n]; n];
        for ((idx, mono), c) in &self.terms {
            let v = c * mono.eval(point);
            let (i, j) = (idx[0], idx[1]);
            m[i][j] += &v;
            m[j][i] -= v;
        }
        Ok(m)
    }

    pub fn display(&self, ring: Option<&PolyRing>) -> String {
        let name = |i: usize| ring.map_or_else(|| format!("x{i}"), |r| r.name(i).to_string());
        crate::format_sum(self.terms.iter().map(|((idx, m), c)| {
            let mut parts = Vec::new();
            let md = m.display(ring);
            if !md.is_empty() {
                parts.push(md);
            }
            let wedge: Vec<String> = idx.iter().map(|&i| format!("d{}", name(i))).collect();
            if !wedge.is_empty() {
                parts.push(wedge.join("^"));
            }
            (parts.join("*"), c)
        }))
    }
}

/// `u ∧ v`.
pub fn wedge(u: &CommForm, v: &CommForm) -> Result<CommForm> {
    if u.nvars != v.nvars {
        return Err(Error::ArityMismatch(u.nvars, v.nvars));
    }
    let degree = u.degree + v.degree;
    if degree > MAX_DEGREE {
        return Err(Error::DegreeOverflow(degree));
    }
    let mut t = LinComb::new();
    for ((i, m), a) in &u.terms {
        for ((j, n), b) in &v.terms {
            if let Some((k, neg)) = merge_sorted(i, j) {
                t.add_term((k, m.mul(n)), signed(a * b, neg));
            }
        }
    }
    Ok(CommForm {
        nvars: u.nvars,
        degree,
        terms: t,
    })
}

/// de Rham differential of a form of degree at most 2.
pub fn comm_d(u: &CommForm) -> Result<CommForm> {
    u.d()
}

impl Add for &CommForm {
    type Output = CommForm;
    fn add(self, rhs: Self) -> CommForm {
        self.try_add(rhs).expect("forms of equal arity and degree")
    }
}

impl Sub for &CommForm {
    type Output = CommForm;
    fn sub(self, rhs: Self) -> CommForm {
        self.try_add(&-rhs).expect("forms of equal arity and degree")
    }
}

impl Neg for &CommForm {
    type Output = CommForm;
    fn neg(self) -> CommForm {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for CommForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(None))
    }
}
