//! Seeded random paths, elements and forms for property tests and benches.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{AlgebraElement, Path, Quiver};
use crate::dder::{DoubleDerivation, TensorElement};
use crate::forms::{FormWord, NcForm};
use crate::lincomb::LinComb;
use crate::Rational;

/// A nonzero rational with small numerator and denominator.
pub fn rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let mut num = rng.gen_range(-4..=4i64);
    if num == 0 {
        num = 1;
    }
    Rational::new(num.into(), rng.gen_range(1..=3i64).into())
}

/// Random composable arrow sequence of exactly `len` arrows, if one is found.
fn walk<R: Rng + ?Sized>(q: &Quiver, rng: &mut R, len: usize) -> Option<Vec<usize>> {
    if q.num_arrows() == 0 || len == 0 {
        return None;
    }
    let mut seq = vec![rng.gen_range(0..q.num_arrows())];
    while seq.len() < len {
        let t = q.tail(*seq.last().expect("nonempty"));
        let next: Vec<usize> = (0..q.num_arrows()).filter(|&b| q.head(b) == t).collect();
        seq.push(*next.choose(rng)?);
    }
    Some(seq)
}

/// A random basis path of length at most `max_len`; trivial paths included.
pub fn path<R: Rng + ?Sized>(q: &Quiver, rng: &mut R, max_len: usize) -> Path {
    let len = rng.gen_range(0..=max_len);
    match walk(q, rng, len) {
        Some(a) => Path::Arrows(a),
        None => Path::Trivial(rng.gen_range(0..q.num_vertices())),
    }
}

/// A random closed path of positive length, found by rejection sampling.
pub fn cycle<R: Rng + ?Sized>(q: &Quiver, rng: &mut R, max_len: usize) -> Option<Path> {
    for _ in 0..1000 {
        let len = rng.gen_range(1..=max_len.max(1));
        if let Some(a) = walk(q, rng, len) {
            let p = Path::Arrows(a);
            if p.is_closed(q) {
                return Some(p);
            }
        }
    }
    None
}

pub fn element<R: Rng + ?Sized>(q: &Arc<Quiver>, rng: &mut R, terms: usize, max_len: usize) -> AlgebraElement {
    let lc: LinComb<Path> = (0..terms).map(|_| (path(q, rng, max_len), rational(rng))).collect();
    AlgebraElement::from_terms(q, lc)
}

/// A random path with the given head (`at_head`) or tail vertex.
fn path_at<R: Rng + ?Sized>(q: &Quiver, rng: &mut R, vertex: usize, at_head: bool, max_len: usize) -> Path {
    for _ in 0..100 {
        let p = path(q, rng, max_len);
        let end = if at_head { p.head(q) } else { p.tail(q) };
        if end == vertex {
            return p;
        }
    }
    Path::Trivial(vertex)
}

/// A random double derivation with up to `terms` tensor terms per arrow.
pub fn double_derivation<R: Rng + ?Sized>(q: &Arc<Quiver>, rng: &mut R, terms: usize, max_len: usize) -> DoubleDerivation {
    let mut values = BTreeMap::new();
    for a in 0..q.num_arrows() {
        let n = rng.gen_range(0..=terms);
        let lc: LinComb<(Path, Path)> = (0..n)
            .map(|_| {
                let u = path_at(q, rng, q.head(a), true, max_len);
                let v = path_at(q, rng, q.tail(a), false, max_len);
                ((u, v), rational(rng))
            })
            .collect();
        values.insert(a, TensorElement::from_terms(q, lc));
    }
    DoubleDerivation::new(q, values).expect("values respect the sandwich condition")
}

/// A random basis word of the given degree with at most `max_len` plain arrows.
pub fn word<R: Rng + ?Sized>(q: &Quiver, rng: &mut R, degree: usize, max_len: usize) -> Option<FormWord> {
    if degree == 0 {
        return Some(FormWord::path(path(q, rng, max_len)));
    }
    let len = degree + rng.gen_range(0..=max_len);
    let seq = walk(q, rng, len)?;
    let mut marks: Vec<usize> = (0..seq.len()).collect();
    marks.shuffle(rng);
    let mut marks = marks[..degree].to_vec();
    marks.sort_unstable();

    let mut paths = Vec::with_capacity(degree + 1);
    let mut start = 0;
    for &m in &marks {
        paths.push(if m == start {
            Path::Trivial(q.head(seq[m]))
        } else {
            Path::Arrows(seq[start..m].to_vec())
        });
        start = m + 1;
    }
    paths.push(if start == seq.len() {
        Path::Trivial(q.tail(seq[seq.len() - 1]))
    } else {
        Path::Arrows(seq[start..].to_vec())
    });
    let arrows = marks.iter().map(|&m| seq[m]).collect();
    Some(FormWord::new(q, paths, arrows).expect("walk is composable"))
}

/// A random homogeneous form; may be zero when the quiver has no arrows.
pub fn form<R: Rng + ?Sized>(q: &Arc<Quiver>, rng: &mut R, degree: usize, terms: usize, max_len: usize) -> NcForm {
    let lc: LinComb<FormWord> = (0..terms)
        .filter_map(|_| Some((word(q, rng, degree, max_len)?, rational(rng))))
        .collect();
    NcForm::from_terms(q, lc, degree)
}
