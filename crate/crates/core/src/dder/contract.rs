use std::sync::Arc;

use num::One;

use super::DoubleDerivation;
use crate::algebra::{Path, Quiver};
use crate::forms::{DrClass, FormWord, NcForm};
use crate::lincomb::LinComb;
use crate::{Error, Rational, Result};

/// Formal sum of pairs `u ⊗ v` of forms, with the outer `Ω•`-bimodule
/// structure.
#[derive(Debug, Clone)]
pub struct TensorForm {
    quiver: Arc<Quiver>,
    terms: LinComb<(FormWord, FormWord)>,
}

impl TensorForm {
    pub fn zero(q: &Arc<Quiver>) -> Self {
        TensorForm {
            quiver: q.clone(),
            terms: LinComb::new(),
        }
    }

    pub fn terms(&self) -> &LinComb<(FormWord, FormWord)> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.terms.add_assign(&other.terms);
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TensorForm {
            quiver: self.quiver.clone(),
            terms: self.terms.scaled(c),
        }
    }

    /// `w · (a ⊗ b) = wa ⊗ b`.
    pub fn left_mul(&self, w: &NcForm) -> Self {
        let q = &*self.quiver;
        let mut terms = LinComb::new();
        for (x, c) in w.terms() {
            for ((a, b), d) in &self.terms {
                if let Some(xa) = x.concat(a, q) {
                    terms.add_term((xa, b.clone()), c * d);
                }
            }
        }
        TensorForm {
            quiver: self.quiver.clone(),
            terms,
        }
    }

    /// `(a ⊗ b) · w = a ⊗ bw`.
    pub fn right_mul(&self, w: &NcForm) -> Self {
        let q = &*self.quiver;
        let mut terms = LinComb::new();
        for ((a, b), d) in &self.terms {
            for (x, c) in w.terms() {
                if let Some(bx) = b.concat(x, q) {
                    terms.add_term((a.clone(), bx), c * d);
                }
            }
        }
        TensorForm {
            quiver: self.quiver.clone(),
            terms,
        }
    }

    /// The map `a ⊗ b ↦ (-1)^{|a||b|} b·a`.
    pub fn flatten(&self) -> NcForm {
        let q = &*self.quiver;
        let mut out = LinComb::new();
        let mut degree = 0;
        for ((a, b), c) in &self.terms {
            degree = a.degree() + b.degree();
            if let Some(ba) = b.concat(a, q) {
                let sign = if a.degree() * b.degree() % 2 == 1 { -c.clone() } else { c.clone() };
                out.add_term(ba, sign);
            }
        }
        NcForm::from_terms(&self.quiver, out, degree)
    }
}

impl PartialEq for TensorForm {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

fn sign(neg: bool) -> Rational {
    if neg {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// The contraction `i_Θ : Ω^n → ⊕ Ω^i ⊗ Ω^j` (`i + j = n - 1`).
///
/// On a word `p₀ dα₁ p₁ … dα_n p_n` the k-th term is
/// `(-1)^{k-1} (p₀ dα₁ … p_{k-1} Θ′(α_k)) ⊗ (Θ″(α_k) p_k … dα_n p_n)`.
pub fn contract(theta: &DoubleDerivation, u: &NcForm) -> Result<TensorForm> {
    if !crate::algebra::element_same_quiver(theta.quiver(), u.quiver()) {
        return Err(Error::QuiverMismatch);
    }
    u.degree()?;
    let q = &**u.quiver();
    let mut terms = LinComb::new();
    for (w, c) in u.terms() {
        let (paths, arrows) = (w.paths(), w.arrows());
        for k in 0..arrows.len() {
            let Some(value) = theta.values().get(&arrows[k]) else {
                continue;
            };
            let s = sign(k % 2 == 1) * c;
            for ((tl, tr), tc) in value.terms() {
                let Some(last) = paths[k].compose(tl, q) else { continue };
                let Some(first) = tr.compose(&paths[k + 1], q) else { continue };
                let mut lp = paths[..k].to_vec();
                lp.push(last);
                let left = FormWord::from_parts_unchecked(lp, arrows[..k].to_vec());
                let mut rp = vec![first];
                rp.extend_from_slice(&paths[k + 2..]);
                let right = FormWord::from_parts_unchecked(rp, arrows[k + 1..].to_vec());
                terms.add_term((left, right), &s * tc);
            }
        }
    }
    Ok(TensorForm {
        quiver: u.quiver().clone(),
        terms,
    })
}

/// The reduced contraction `ι_Θ : Ω^n → Ω^{n-1}`.
///
/// On a word `p₀ dα₁ p₁ … dα_n p_n` the k-th term is
/// `(-1)^{(k-1)(n-k+1)} Θ″(α_k) p_k dα_{k+1} … dα_n (p_n p₀) dα₁ … dα_{k-1} p_{k-1} Θ′(α_k)`.
/// Degree-0 input gives zero.
pub fn reduced_contract(theta: &DoubleDerivation, u: &NcForm) -> Result<NcForm> {
    if !crate::algebra::element_same_quiver(theta.quiver(), u.quiver()) {
        return Err(Error::QuiverMismatch);
    }
    let n = u.degree()?;
    if n == 0 {
        return Ok(NcForm::zero(u.quiver(), 0));
    }
    let q = &**u.quiver();
    let mut out = LinComb::new();
    for (w, c) in u.terms() {
        let (paths, arrows) = (w.paths(), w.arrows());
        // p_n p_0 is only defined on closed words; open words contribute nothing.
        let Some(wrap) = paths[n].compose(&paths[0], q) else { continue };
        for k in 1..=n {
            let Some(value) = theta.values().get(&arrows[k - 1]) else {
                continue;
            };
            let s = sign((k - 1) * (n - k + 1) % 2 == 1) * c;
            // paths [p_k, …, p_{n-1}, p_n p_0, p_1, …, p_{k-1}],
            // arrows [α_{k+1}, …, α_n, α_1, …, α_{k-1}]
            let mut ps: Vec<Path> = Vec::with_capacity(n);
            let mut arr: Vec<usize> = Vec::with_capacity(n - 1);
            for j in k..n {
                ps.push(paths[j].clone());
                arr.push(arrows[j]);
            }
            ps.push(wrap.clone());
            for j in 1..k {
                arr.push(arrows[j - 1]);
                ps.push(paths[j].clone());
            }
            debug_assert_eq!(ps.len(), n);
            for ((tl, tr), tc) in value.terms() {
                let Some(first) = tr.compose(&ps[0], q) else { continue };
                let mut seq = ps.clone();
                seq[0] = first;
                let Some(last) = seq[n - 1].compose(tl, q) else { continue };
                seq[n - 1] = last;
                out.add_term(FormWord::from_parts_unchecked(seq, arr.clone()), &s * tc);
            }
        }
    }
    Ok(NcForm::from_terms(u.quiver(), out, n - 1))
}

/// `ι_Θ` applied to the canonical representative of a class.
pub fn reduced_contract_dr(theta: &DoubleDerivation, w: &DrClass) -> Result<NcForm> {
    reduced_contract(theta, &w.representative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{double_quiver, AlgebraElement};
    use crate::forms::dr_project;
    use crate::rat;

    fn jd() -> Arc<Quiver> {
        Arc::new(double_quiver(&Quiver::jordan()).unwrap())
    }

    fn e() -> Path {
        Path::Trivial(0)
    }

    fn elem(q: &Arc<Quiver>, arrows: &[usize]) -> NcForm {
        NcForm::from_element(&AlgebraElement::path(q, Path::Arrows(arrows.to_vec())))
    }

    #[test]
    fn contract_generators() {
        let q = jd();
        let dx = DoubleDerivation::partial(&q, 0);
        let t = contract(&dx, &NcForm::d_arrow(&q, 0)).unwrap();
        assert_eq!(t.terms().len(), 1);
        assert_eq!(t.terms().coeff(&(FormWord::path(e()), FormWord::path(e()))), rat(1));

        let (a, b) = (elem(&q, &[1, 0]), elem(&q, &[0, 0, 1]));
        let t = contract(&dx, &(&(&a * &NcForm::d_arrow(&q, 0)) * &b)).unwrap();
        let expect = (FormWord::path(Path::Arrows(vec![1, 0])), FormWord::path(Path::Arrows(vec![0, 0, 1])));
        assert_eq!(t.terms().len(), 1);
        assert_eq!(t.terms().coeff(&expect), rat(1));

        assert!(contract(&dx, &elem(&q, &[0])).unwrap().is_zero());
    }

    #[test]
    fn contract_two_form_first_slot_only() {
        let q = jd();
        let dx = DoubleDerivation::partial(&q, 0);
        let w = &NcForm::d_arrow(&q, 0) * &NcForm::d_arrow(&q, 1);
        let t = contract(&dx, &w).unwrap();
        assert_eq!(t.terms().len(), 1);
        assert_eq!(t.terms().coeff(&(FormWord::path(e()), FormWord::d_arrow(&q, 1))), rat(1));
    }

    #[test]
    fn reduced_contraction_golden() {
        let q = jd();
        let w = &NcForm::d_arrow(&q, 0) * &NcForm::d_arrow(&q, 1);
        let ix = reduced_contract(&DoubleDerivation::partial(&q, 0), &w).unwrap();
        let iy = reduced_contract(&DoubleDerivation::partial(&q, 1), &w).unwrap();
        assert_eq!(ix, NcForm::d_arrow(&q, 1));
        assert_eq!(iy, -&NcForm::d_arrow(&q, 0));
        let zero = reduced_contract(&DoubleDerivation::partial(&q, 0), &elem(&q, &[0, 1])).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn reduced_contraction_on_classes() {
        let q = jd();
        let (dx, dy) = (NcForm::d_arrow(&q, 0), NcForm::d_arrow(&q, 1));
        let theta = DoubleDerivation::partial(&q, 0);
        let c = dr_project(&(&dx * &dy)).unwrap();
        assert_eq!(reduced_contract_dr(&theta, &c).unwrap(), dy);
        let c2 = dr_project(&(&dy * &dx)).unwrap();
        assert_eq!(reduced_contract_dr(&theta, &c2).unwrap(), -&dy);
        assert!(reduced_contract_dr(&theta, &DrClass::zero(&q, 2)).unwrap().is_zero());
    }

    #[test]
    fn flatten_matches_reduced() {
        let q = jd();
        let x = elem(&q, &[0]);
        let (dx, dy) = (NcForm::d_arrow(&q, 0), NcForm::d_arrow(&q, 1));
        let u = &(&(&(&x * &dx) * &x) * &dy) * &dx;
        for a in 0..2 {
            let theta = DoubleDerivation::partial(&q, a);
            assert_eq!(contract(&theta, &u).unwrap().flatten(), reduced_contract(&theta, &u).unwrap());
        }
    }
}
