use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;
use serde::Serialize;

use super::{reduced_contract_dr, DoubleDerivation, TensorElement};
use crate::algebra::Quiver;
use crate::comm::linalg;
use crate::forms::{is_closed, DrClass};
use crate::{Error, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Undetermined,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Undetermined => "undetermined",
        })
    }
}

/// Matrix of `Θ ↦ ι_Θ ω` on the generators `∂/∂b` (rows) against the free
/// basis `dα` of `Ω¹` (columns). Entry `(b, α)` collects `Σ c·(p₀ ⊗ p₁)` over
/// the terms `c·p₀ dα p₁` of `ι_{∂/∂b} ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiSymplecticMatrix {
    quiver: Arc<Quiver>,
    entries: Vec<Vec<TensorElement>>,
}

impl BiSymplecticMatrix {
    pub fn entry(&self, row: usize, col: usize) -> &TensorElement {
        &self.entries[row][col]
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(TensorElement::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.entries.iter().flatten().all(TensorElement::is_constant)
    }

    /// Scalar part of an entry: the coefficient of `e_h(α) ⊗ e_t(α)`.
    pub fn constant_part(&self, row: usize, col: usize) -> Rational {
        self.entries[row][col]
            .terms()
            .iter()
            .filter(|((u, v), _)| u.is_trivial() && v.is_trivial())
            .map(|(_, c)| c.clone())
            .sum()
    }
}

/// The row/column decomposition by vertex pair.
///
/// Row `∂/∂b` lands in `e_t(b) Ω¹ e_h(b)` and column `dα` spans
/// `A e_h(α) ⊗ e_t(α) A`; constant entries only connect equal pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorBlock {
    /// `(left vertex, right vertex)` of the sector.
    pub sector: (String, String),
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: Vec<Vec<Rational>>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub determinant: Option<Rational>,
}

fn ser_matrix<S: serde::Serializer>(m: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(crate::fmt_rational).collect()).collect();
    strings.serialize(s)
}

fn ser_opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    r.as_ref().map(crate::fmt_rational).serialize(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BisymplecticReport {
    pub verdict: Verdict,
    pub closed: bool,
    pub constant_coefficients: bool,
    pub sectors: Vec<SectorBlock>,
    pub reason: String,
    #[serde(skip)]
    pub matrix: Option<BiSymplecticMatrix>,
}

/// Builds the matrix of `ι(ω)` for `ω ∈ DR²`.
pub fn bisymplectic_matrix(omega: &DrClass) -> Result<BiSymplecticMatrix> {
    if omega.degree() != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            found: omega.degree(),
        });
    }
    let q = omega.quiver();
    let n = q.num_arrows();
    let rows = crate::par::map_range(n, |b| {
        let iota = reduced_contract_dr(&DoubleDerivation::partial(q, b), omega).expect("same quiver, degree 2");
        let mut row = vec![TensorElement::zero(q); n];
        for (w, c) in iota.terms() {
            debug_assert_eq!(w.degree(), 1);
            row[w.arrows()[0]].add_term(w.paths()[0].clone(), w.paths()[1].clone(), c.clone());
        }
        row
    });
    Ok(BiSymplecticMatrix {
        quiver: q.clone(),
        entries: rows,
    })
}

fn no(closed: bool, constant: bool, sectors: Vec<SectorBlock>, reason: String, m: Option<BiSymplecticMatrix>) -> BisymplecticReport {
    BisymplecticReport {
        verdict: Verdict::No,
        closed,
        constant_coefficients: constant,
        sectors,
        reason,
        matrix: m,
    }
}

/// Decides whether `ω` is bi-symplectic.
///
/// `ι(ω)` is a map between free bimodules over the path-length graded ring
/// `A^e`, so it can only be invertible if its degree-0 part is; that part
/// splits into one rational block per vertex-pair sector. A singular block
/// therefore gives `No`. When every entry is constant the degree-0 part is the
/// whole map and invertible blocks give `Yes`; otherwise the answer is
/// `Undetermined`.
pub fn is_bisymplectic(omega: &DrClass) -> BisymplecticReport {
    if omega.degree() != 2 {
        return no(false, true, Vec::new(), format!("ω has degree {}, expected 2", omega.degree()), None);
    }
    let closed = is_closed(omega).expect("degree checked");
    if !closed {
        return no(false, true, Vec::new(), "ω is not closed in DR³".into(), None);
    }
    let m = bisymplectic_matrix(omega).expect("degree checked");
    let q = &*m.quiver;
    let n = m.size();
    let constant = m.is_constant();
    if let Some(b) = (0..n).find(|&b| (0..n).all(|a| m.entry(b, a).is_zero())) {
        let reason = format!("row for ∂/∂{} is zero", q.arrow(b).name);
        return no(true, constant, Vec::new(), reason, Some(m));
    }
    if let Some(a) = (0..n).find(|&a| (0..n).all(|b| m.entry(b, a).is_zero())) {
        let reason = format!("column for d{} is zero", q.arrow(a).name);
        return no(true, constant, Vec::new(), reason, Some(m));
    }

    let mut layout: BTreeMap<(usize, usize), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for b in 0..n {
        layout.entry((q.tail(b), q.head(b))).or_default().0.push(b);
        layout.entry((q.head(b), q.tail(b))).or_default().1.push(b);
    }
    let layout: Vec<_> = layout.into_iter().collect();
    let sectors = crate::par::map(&layout, |((i, j), (rows, cols))| {
        let matrix: Vec<Vec<Rational>> =
            rows.iter().map(|&b| cols.iter().map(|&a| m.constant_part(b, a)).collect()).collect();
        let determinant = (rows.len() == cols.len()).then(|| linalg::determinant(&matrix));
        SectorBlock {
            sector: (q.vertices()[*i].clone(), q.vertices()[*j].clone()),
            rows: rows.iter().map(|&b| format!("∂/∂{}", q.arrow(b).name)).collect(),
            cols: cols.iter().map(|&a| format!("d{}", q.arrow(a).name)).collect(),
            matrix,
            determinant,
        }
    });

    if let Some(s) = sectors.iter().find(|s| s.determinant.as_ref().is_none_or(Zero::is_zero)) {
        let reason = match &s.determinant {
            None => format!("sector ({}, {}) is not square: {}×{}", s.sector.0, s.sector.1, s.rows.len(), s.cols.len()),
            Some(_) => format!("sector ({}, {}) has a singular constant block", s.sector.0, s.sector.1),
        };
        return no(true, constant, sectors, reason, Some(m));
    }
    if constant {
        BisymplecticReport {
            verdict: Verdict::Yes,
            closed: true,
            constant_coefficients: true,
            sectors,
            reason: "all sector blocks invertible over ℚ".into(),
            matrix: Some(m),
        }
    } else {
        BisymplecticReport {
            verdict: Verdict::Undetermined,
            closed: true,
            constant_coefficients: false,
            sectors,
            reason: "entries involve nontrivial paths; constant part invertible, invertibility over A⊗A not decided".into(),
            matrix: Some(m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{double_quiver, AlgebraElement, Path};
    use crate::forms::{canonical_omega, dr_project, NcForm};
    use crate::rat;
    use num::Signed;

    fn canonical(q: &Arc<Quiver>) -> DrClass {
        canonical_omega(q).unwrap()
    }

    #[test]
    fn jordan_matrix() {
        let q = Arc::new(double_quiver(&Quiver::jordan()).unwrap());
        let m = bisymplectic_matrix(&canonical(&q)).unwrap();
        let ee = |c: i64| {
            let mut t = TensorElement::zero(&q);
            t.add_term(Path::Trivial(0), Path::Trivial(0), rat(c));
            t
        };
        assert!(m.entry(0, 0).is_zero() && m.entry(1, 1).is_zero());
        assert_eq!(m.entry(0, 1), &ee(1));
        assert_eq!(m.entry(1, 0), &ee(-1));
        let r = is_bisymplectic(&canonical(&q));
        assert_eq!(r.verdict, Verdict::Yes);
        assert_eq!(r.sectors.len(), 1);
        assert_eq!(r.sectors[0].determinant, Some(rat(1)));
    }

    #[test]
    fn a2_matrix_is_signed_permutation() {
        let q = Arc::new(double_quiver(&Quiver::linear(2)).unwrap());
        let m = bisymplectic_matrix(&canonical(&q)).unwrap();
        assert_eq!(m.constant_part(0, 1), rat(1));
        assert_eq!(m.constant_part(1, 0), rat(-1));
        assert!(m.entry(0, 0).is_zero() && m.entry(1, 1).is_zero());
        assert!(m.is_constant());
        // a1: 1 → 2, so ι_{∂/∂a1} ω = d(a1~) sits in e_1 Ω¹ e_2
        let t = m.entry(0, 1).terms().iter().next().unwrap().0.clone();
        assert_eq!(t, (Path::Trivial(0), Path::Trivial(1)));
        let r = is_bisymplectic(&canonical(&q));
        assert_eq!(r.verdict, Verdict::Yes);
        assert_eq!(r.sectors.len(), 2);
        assert!(r.sectors.iter().all(|s| s.determinant.as_ref().unwrap().abs() == rat(1)));
    }

    #[test]
    fn three_vertex_chain() {
        let q = Arc::new(double_quiver(&Quiver::linear(3)).unwrap());
        assert_eq!(is_bisymplectic(&canonical(&q)).verdict, Verdict::Yes);
    }

    #[test]
    fn degenerate_forms() {
        let q = Arc::new(double_quiver(&Quiver::jordan()).unwrap());
        let dx = NcForm::d_arrow(&q, 0);
        let w = dr_project(&(&dx * &dx)).unwrap();
        assert!(w.is_zero());
        let r = is_bisymplectic(&w);
        assert_eq!(r.verdict, Verdict::No);
        assert!(r.closed);
        assert!(bisymplectic_matrix(&DrClass::zero(&q, 2)).unwrap().is_zero());

        let x = NcForm::from_element(&AlgebraElement::arrow(&q, 0));
        let open = dr_project(&(&(&x * &dx) * &NcForm::d_arrow(&q, 1))).unwrap();
        let r = is_bisymplectic(&open);
        assert_eq!(r.verdict, Verdict::No);
        assert!(!r.closed);
    }

    #[test]
    fn path_coefficients() {
        let q = Arc::new(double_quiver(&Quiver::jordan()).unwrap());
        let x2 = NcForm::from_element(&AlgebraElement::path(&q, Path::Arrows(vec![0, 0])));
        let exact = dr_project(&(&x2 * &NcForm::d_arrow(&q, 1)).d().unwrap()).unwrap();
        let omega = canonical(&q).try_add(&exact).unwrap();
        let r = is_bisymplectic(&omega);
        assert_eq!(r.verdict, Verdict::Undetermined);
        assert!(!r.constant_coefficients);
        // the exact piece alone has no constant part at all
        let r = is_bisymplectic(&exact);
        assert_eq!(r.verdict, Verdict::No);
    }
}
