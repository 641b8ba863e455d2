use std::cmp::Ordering;

use super::Quiver;

/// A basis path of `kQ`.
///
/// Arrow sequences are stored in multiplication order: `[a_l, …, a_1]` is the
/// path that traverses `a_1` first. Concatenation of paths is therefore
/// concatenation of the stored vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Path {
    Trivial(usize),
    Arrows(Vec<usize>),
}

impl Path {
    pub fn arrow(a: usize) -> Self {
        Path::Arrows(vec![a])
    }

    /// Builds a path from arrows in multiplication order, checking composability.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Option<Self> {
        if arrows.is_empty() {
            return None;
        }
        for w in arrows.windows(2) {
            if q.tail(w[0]) != q.head(w[1]) {
                return None;
            }
        }
        Some(Path::Arrows(arrows))
    }

    /// Trivial paths are the empty ones.
    pub fn is_empty(&self) -> bool {
        matches!(self, Path::Trivial(_))
    }

    pub fn len(&self) -> usize {
        match self {
            Path::Trivial(_) => 0,
            Path::Arrows(a) => a.len(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Path::Trivial(_))
    }

    pub fn arrows(&self) -> &[usize] {
        match self {
            Path::Trivial(_) => &[],
            Path::Arrows(a) => a,
        }
    }

    pub fn head(&self, q: &Quiver) -> usize {
        match self {
            Path::Trivial(v) => *v,
            Path::Arrows(a) => q.head(a[0]),
        }
    }

    pub fn tail(&self, q: &Quiver) -> usize {
        match self {
            Path::Trivial(v) => *v,
            Path::Arrows(a) => q.tail(*a.last().expect("nonempty")),
        }
    }

    pub fn is_closed(&self, q: &Quiver) -> bool {
        self.head(q) == self.tail(q)
    }

    /// `self · other`, or `None` when `t(self) ≠ h(other)`.
    pub fn compose(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.tail(q) != other.head(q) {
            return None;
        }
        Some(match (self, other) {
            (Path::Trivial(_), p) | (p, Path::Trivial(_)) => p.clone(),
            (Path::Arrows(a), Path::Arrows(b)) => {
                let mut v = Vec::with_capacity(a.len() + b.len());
                v.extend_from_slice(a);
                v.extend_from_slice(b);
                Path::Arrows(v)
            }
        })
    }

    /// Splits an arrow sequence `[l.., r..]` at every arrow: yields
    /// `(left, arrow, right)` with trivial paths filling empty ends.
    pub fn splittings<'a>(&'a self, q: &'a Quiver) -> impl Iterator<Item = (Path, usize, Path)> + 'a {
        let arrows = self.arrows();
        (0..arrows.len()).map(move |k| {
            let a = arrows[k];
            let left = if k == 0 {
                Path::Trivial(q.head(a))
            } else {
                Path::Arrows(arrows[..k].to_vec())
            };
            let right = if k + 1 == arrows.len() {
                Path::Trivial(q.tail(a))
            } else {
                Path::Arrows(arrows[k + 1..].to_vec())
            };
            (left, a, right)
        })
    }

    pub fn display(&self, q: &Quiver) -> String {
        match self {
            Path::Trivial(v) => format!("e_{}", q.vertices()[*v]),
            Path::Arrows(a) => a
                .iter()
                .map(|&i| q.arrow(i).name.as_str())
                .collect::<Vec<_>>()
                .join("*"),
        }
    }
}

/// All nontrivial paths of length at most `max_len`, in canonical order.
pub fn paths_up_to(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = if max_len == 0 { Vec::new() } else { (0..q.num_arrows()).map(|a| vec![a]).collect() };
    while !layer.is_empty() {
        out.extend(layer.iter().cloned().map(Path::Arrows));
        if layer[0].len() == max_len {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|p| {
                let t = q.tail(*p.last().expect("nonempty"));
                (0..q.num_arrows()).filter(move |&a| q.head(a) == t).map(move |a| {
                    let mut v = p.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out.sort();
    out
}

impl Ord for Path {
    /// Length first, then vertex or arrow indices.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| match (self, other) {
            (Path::Trivial(a), Path::Trivial(b)) => a.cmp(b),
            (Path::Arrows(a), Path::Arrows(b)) => a.cmp(b),
            _ => unreachable!("equal lengths imply equal kinds"),
        })
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
