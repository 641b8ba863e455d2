//! Representation spaces of a quiver and the functor from noncommutative
//! objects on `kQ` to commutative ones on the coordinate ring `A_V`.
//!
//! Index convention: an arrow `α: s → t` is sent to a block matrix placed in
//! block `(t, s)`; its variable `x_{α,i,j}` sits in row `i` of the target block
//! and column `j` of the source block. Local indices in variable names are
//! 1-based.

mod kr;
mod matrix;

use std::ops::Range;
use std::sync::Arc;

use crate::algebra::{element_same_quiver, paths_up_to, AlgebraElement, DimensionVector, NecklaceKey, Path, Quiver};
use crate::comm::{CommForm, PolyDerivation, PolyRing, Polynomial, MAX_DEGREE};
use crate::dder::DoubleDerivation;
use crate::forms::{DrClass, FormWord, NcForm};
use crate::{Error, Result};

pub use kr::{canonical_comm_form, kr_verify, KrOptions, KrReport};
pub use matrix::{MatrixOfForms, MatrixOfPolys};

/// The ring `A_V` with its block layout.
#[derive(Debug, Clone)]
pub struct RepSetup {
    quiver: Arc<Quiver>,
    dims: DimensionVector,
    ring: PolyRing,
    offsets: Vec<usize>,
    arrow_base: Vec<usize>,
    arrow_mats: Vec<MatrixOfPolys>,
}

pub fn rep_setup(q: &Arc<Quiver>, dims: DimensionVector) -> Result<RepSetup> {
    if dims.as_slice().len() != q.num_vertices() {
        return Err(Error::DimensionLength {
            expected: q.num_vertices(),
            found: dims.as_slice().len(),
        });
    }
    let mut offsets = Vec::with_capacity(q.num_vertices() + 1);
    let mut acc = 0;
    for &v in dims.as_slice() {
        offsets.push(acc);
        acc += v;
    }
    offsets.push(acc);

    let mut names = Vec::new();
    let mut arrow_base = Vec::with_capacity(q.num_arrows());
    for a in q.arrows() {
        arrow_base.push(names.len());
        for i in 1..=dims.get(a.head) {
            for j in 1..=dims.get(a.tail) {
                names.push(format!("{}[{i},{j}]", a.name));
            }
        }
    }
    let ring = PolyRing::new(names)?;
    let mut s = RepSetup {
        quiver: q.clone(),
        dims,
        ring,
        offsets,
        arrow_base,
        arrow_mats: Vec::new(),
    };
    s.arrow_mats = (0..q.num_arrows()).map(|a| s.generic_matrix(a)).collect();
    Ok(s)
}

impl RepSetup {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dims(&self) -> &DimensionVector {
        &self.dims
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// `N = Σ v_i`.
    pub fn size(&self) -> usize {
        *self.offsets.last().expect("nonempty")
    }

    pub fn num_vars(&self) -> usize {
        self.ring.len()
    }

    /// Global index range of a vertex block.
    pub fn block(&self, vertex: usize) -> Range<usize> {
        self.offsets[vertex]..self.offsets[vertex + 1]
    }

    /// Variables of one arrow, row-major over its block.
    pub fn arrow_vars(&self, arrow: usize) -> Range<usize> {
        let start = self.arrow_base[arrow];
        let q = &self.quiver;
        start..start + self.dims.get(q.head(arrow)) * self.dims.get(q.tail(arrow))
    }

    /// Index of `x_{α,i,j}` for 0-based local indices.
    pub fn var(&self, arrow: usize, i: usize, j: usize) -> usize {
        self.arrow_base[arrow] + i * self.dims.get(self.quiver.tail(arrow)) + j
    }

    /// `(arrow, global row, global column)` of a variable.
    pub fn var_entry(&self, k: usize) -> (usize, usize, usize) {
        let a = self.arrow_base.partition_point(|&b| b <= k) - 1;
        let cols = self.dims.get(self.quiver.tail(a));
        let local = k - self.arrow_base[a];
        let q = &self.quiver;
        (a, self.offsets[q.head(a)] + local / cols, self.offsets[q.tail(a)] + local % cols)
    }

    fn generic_matrix(&self, arrow: usize) -> MatrixOfPolys {
        let n = self.num_vars();
        let mut m = MatrixOfPolys::zero(self.size(), n);
        for k in self.arrow_vars(arrow) {
            let (_, i, j) = self.var_entry(k);
            m.set(i, j, Polynomial::var(n, k));
        }
        m
    }

    fn projector(&self, vertex: usize) -> MatrixOfPolys {
        let mut m = MatrixOfPolys::zero(self.size(), self.num_vars());
        for i in self.block(vertex) {
            m.set(i, i, Polynomial::one(self.num_vars()));
        }
        m
    }

    /// `π(p)` for a basis path.
    pub fn path_matrix(&self, p: &Path) -> MatrixOfPolys {
        match p {
            Path::Trivial(v) => self.projector(*v),
            Path::Arrows(a) => {
                let mut m = self.arrow_mats[a[0]].clone();
                for &b in &a[1..] {
                    m = m.mul(&self.arrow_mats[b]);
                }
                m
            }
        }
    }

    /// `π` on a form word, with `d` applied entrywise to arrow matrices.
    pub fn word_matrix(&self, w: &FormWord) -> Result<MatrixOfForms> {
        let (paths, arrows) = (w.paths(), w.arrows());
        // trivial paths only select blocks that the arrow matrices already occupy
        let mut m = (arrows.is_empty() || !paths[0].is_trivial())
            .then(|| MatrixOfForms::from_polys(&self.path_matrix(&paths[0])));
        for (k, &a) in arrows.iter().enumerate() {
            let da = self.arrow_mats[a].d();
            let mut next = match m {
                None => da,
                Some(m) => m.mul(&da)?,
            };
            if !paths[k + 1].is_trivial() {
                next = next.mul_polys(&self.path_matrix(&paths[k + 1]));
            }
            m = Some(next);
        }
        Ok(m.expect("word has a path or an arrow"))
    }

    /// `π` on a homogeneous form.
    pub fn form_matrix(&self, u: &NcForm) -> Result<MatrixOfForms> {
        check_quiver(self, u.quiver())?;
        let degree = u.degree()?;
        let mut out = MatrixOfForms::zero(self.size(), self.num_vars(), degree);
        for (w, c) in u.terms() {
            out.add_scaled(&self.word_matrix(w)?, c);
        }
        Ok(out)
    }
}

fn check_quiver(s: &RepSetup, q: &Arc<Quiver>) -> Result<()> {
    if element_same_quiver(&s.quiver, q) {
        Ok(())
    } else {
        Err(Error::QuiverMismatch)
    }
}

/// The universal representation `π(x)`.
pub fn universal_rep(s: &RepSetup, x: &AlgebraElement) -> Result<MatrixOfPolys> {
    check_quiver(s, x.quiver())?;
    let mut out = MatrixOfPolys::zero(s.size(), s.num_vars());
    for (p, c) in x.terms() {
        out.add_scaled(&s.path_matrix(p), c);
    }
    Ok(out)
}

/// `Tr π(x)`.
pub fn trace_fn(s: &RepSetup, x: &AlgebraElement) -> Result<Polynomial> {
    check_quiver(s, x.quiver())?;
    let q = &**s.quiver();
    let mut out = Polynomial::zero(s.num_vars());
    for (p, c) in x.terms() {
        // open paths have off-diagonal blocks only
        if p.is_closed(q) {
            out.add_scaled(&s.path_matrix(p).trace(), c);
        }
    }
    Ok(out)
}

/// `Tr π(u)` for a form of degree at most 3.
pub fn rep_form(s: &RepSetup, u: &NcForm) -> Result<CommForm> {
    check_quiver(s, u.quiver())?;
    let degree = u.degree()?;
    if degree > MAX_DEGREE {
        return Err(Error::DegreeOverflow(degree));
    }
    let q = &**s.quiver();
    let terms: Vec<_> = u.terms().iter().filter(|(w, _)| w.head(q) == w.tail(q)).collect();
    let traces = crate::par::map(&terms, |(w, c)| s.word_matrix(w).map(|m| m.trace().scale(c)));
    let mut out = CommForm::zero(s.num_vars(), degree);
    for t in traces {
        out.add_assign(&t?);
    }
    Ok(out)
}

/// [`rep_form`] on the canonical representative of a class.
pub fn rep_form_dr(s: &RepSetup, w: &DrClass) -> Result<CommForm> {
    rep_form(s, &w.representative())
}

/// Product of traces of necklace representatives.
pub fn sym_necklace_map(s: &RepSetup, monomial: &[NecklaceKey]) -> Polynomial {
    let mut out = Polynomial::one(s.num_vars());
    for k in monomial {
        let x = AlgebraElement::path(s.quiver(), k.representative());
        out = &out * &trace_fn(s, &x).expect("same quiver");
    }
    out
}

/// The infinitesimal conjugation `E_{kl}` for `k`, `l` in one vertex block.
pub fn conjugation_generator(s: &RepSetup, k: usize, l: usize) -> PolyDerivation {
    let n = s.num_vars();
    let images = (0..n)
        .map(|v| {
            let (a, i, j) = s.var_entry(v);
            let q = &s.quiver;
            let (rows, cols) = (s.block(q.head(a)), s.block(q.tail(a)));
            let mut img = Polynomial::zero(n);
            if i == k && rows.contains(&l) {
                img.add_assign(&Polynomial::var(n, s.var(a, l - rows.start, j - cols.start)));
            }
            if j == l && cols.contains(&k) {
                img.add_assign(&-&Polynomial::var(n, s.var(a, i - rows.start, k - cols.start)));
            }
            img
        })
        .collect();
    PolyDerivation::new(images).expect("arity matches")
}

/// All `E_{kl}` with `k`, `l` in a common vertex block.
pub fn conjugation_generators(s: &RepSetup) -> Vec<PolyDerivation> {
    let mut out = Vec::new();
    for v in 0..s.quiver.num_vertices() {
        for k in s.block(v) {
            for l in s.block(v) {
                out.push(conjugation_generator(s, k, l));
            }
        }
    }
    out
}

/// Whether `f` is killed by every infinitesimal conjugation.
pub fn invariance_check(s: &RepSetup, f: &Polynomial) -> bool {
    let gens = conjugation_generators(s);
    crate::par::all(&gens, |e| e.apply(f).is_zero())
}

/// Outcome of materializing `(Ω¹ A)_V`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct OneFormsReport {
    pub generators: usize,
    pub num_vars: usize,
    /// Generators map bijectively onto the coordinate differentials.
    pub bijective: bool,
    pub relations_checked: usize,
    pub relations_hold: bool,
}

/// Path length used for the relation checks in [`vdb_one_forms`].
pub const ONE_FORM_CHECK_LEN: usize = 3;

/// Builds `(Ω¹ A)_V` as the free module on the symbols `(dα)_{ij}` and checks
/// its map to Kähler differentials.
///
/// Each symbol goes to `dx_{α,ij}`. For every path `p` up to
/// [`ONE_FORM_CHECK_LEN`], the image of `dp` computed through the bimodule
/// relations must equal the entrywise differential of `π(p)`.
pub fn vdb_one_forms(s: &RepSetup) -> OneFormsReport {
    let q = s.quiver();
    let n = s.num_vars();
    let mut images = Vec::new();
    for a in 0..q.num_arrows() {
        let m = s.arrow_mats[a].d();
        let (rows, cols) = (s.block(q.head(a)), s.block(q.tail(a)));
        for i in rows {
            for j in cols.clone() {
                images.push(m.get(i, j).clone());
            }
        }
    }
    let mut seen = vec![false; n];
    let mut bijective = images.len() == n;
    for f in &images {
        let mut it = f.terms().iter();
        match (it.next(), it.next()) {
            (Some(((idx, m), c)), None) if m.is_one() && *c == num::One::one() && !seen[idx[0]] => seen[idx[0]] = true,
            _ => bijective = false,
        }
    }

    let paths = paths_up_to(q, ONE_FORM_CHECK_LEN);
    let relations_hold = crate::par::all(&paths, |p| {
        let dp = crate::forms::d_algebra(&AlgebraElement::path(q, p.clone()));
        s.form_matrix(&dp).expect("same quiver") == s.path_matrix(p).d()
    });
    OneFormsReport {
        generators: images.len(),
        num_vars: n,
        bijective,
        relations_checked: paths.len(),
        relations_hold,
    }
}

/// The family `(Θ_V)_{ij}`, `i, j < N`, stored row-major.
///
/// `(Θ_V)_{ij}(x_{α,u,v}) = Σ c · π(Θ′(α))_{u,j} · π(Θ″(α))_{i,v}` with global
/// indices `u`, `v`.
pub fn vdb_double_derivation(s: &RepSetup, theta: &DoubleDerivation) -> Result<Vec<PolyDerivation>> {
    check_quiver(s, theta.quiver())?;
    let big_n = s.size();
    let n = s.num_vars();
    let mut images = vec![vec![Polynomial::zero(n); n]; big_n * big_n];
    for (&a, t) in theta.values() {
        for ((u, v), c) in t.terms() {
            let (pu, pv) = (s.path_matrix(u), s.path_matrix(v));
            for k in s.arrow_vars(a) {
                let (_, r, col) = s.var_entry(k);
                for i in 0..big_n {
                    let right = pv.get(i, col);
                    if right.is_zero() {
                        continue;
                    }
                    for j in 0..big_n {
                        let left = pu.get(r, j);
                        if !left.is_zero() {
                            images[i * big_n + j][k].add_assign(&(left * right).scale(c));
                        }
                    }
                }
            }
        }
    }
    images.into_iter().map(PolyDerivation::new).collect()
}
