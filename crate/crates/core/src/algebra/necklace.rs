use std::fmt;
use std::sync::Arc;

use super::{AlgebraElement, Path, Quiver};
use crate::lincomb::LinComb;

/// Basis of `A/[A,A]`: a vertex, or a closed path up to rotation stored as
/// its lexicographically least rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NecklaceKey {
    Vertex(usize),
    Cycle(Vec<usize>),
}

pub(crate) fn least_rotation<T: Ord + Clone>(s: &[T]) -> Vec<T> {
    let mut best = s.to_vec();
    for k in 1..s.len() {
        let rot: Vec<T> = s[k..].iter().chain(&s[..k]).cloned().collect();
        if rot < best {
            best = rot;
        }
    }
    best
}

impl NecklaceKey {
    /// Class of a basis path; `None` for paths that are not closed.
    pub fn of_path(p: &Path, q: &Quiver) -> Option<Self> {
        match p {
            Path::Trivial(v) => Some(NecklaceKey::Vertex(*v)),
            Path::Arrows(a) if p.is_closed(q) => Some(NecklaceKey::Cycle(least_rotation(a))),
            Path::Arrows(_) => None,
        }
    }

    pub fn representative(&self) -> Path {
        match self {
            NecklaceKey::Vertex(v) => Path::Trivial(*v),
            NecklaceKey::Cycle(a) => Path::Arrows(a.clone()),
        }
    }
}

/// Element of `A/[A,A]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecklaceElement {
    quiver: Arc<Quiver>,
    terms: LinComb<NecklaceKey>,
}

impl NecklaceElement {
    /// Projection `A → A/[A,A]`.
    pub fn of(x: &AlgebraElement) -> Self {
        let q = x.quiver();
        NecklaceElement {
            quiver: q.clone(),
            terms: x.terms().map_keys(|p| NecklaceKey::of_path(p, q).map(|k| (k, num::One::one()))),
        }
    }

    pub fn terms(&self) -> &LinComb<NecklaceKey> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Lifts back to `A` using the canonical representatives.
    pub fn lift(&self) -> AlgebraElement {
        AlgebraElement::from_terms(
            &self.quiver,
            self.terms.map_keys(|k| Some((k.representative(), num::One::one()))),
        )
    }
}

impl fmt::Display for NecklaceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = &*self.quiver;
        let s = crate::format_sum(
            self.terms
                .iter()
                .map(|(k, c)| (format!("<{}>", k.representative().display(q)), c)),
        );
        f.write_str(&s)
    }
}
