use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::{Error, Result};

/// Suffix appended to an arrow name to name its reverse in the double quiver.
pub const DEFAULT_SUFFIX: char = '~';

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

/// A finite quiver. Vertices and arrows are referred to by their position.
///
/// The star pairing is only ever set by [`double_quiver`], so a doubled quiver
/// always lists the original arrows first, followed by their reverses in the
/// same order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    star: Option<Vec<usize>>,
    suffix: char,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, tail, head)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        Self::with_suffix(vertices, arrows, DEFAULT_SUFFIX)
    }

    pub fn with_suffix<V, A>(vertices: V, arrows: A, suffix: char) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vindex = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut out = Vec::new();
        for (name, tail, head) in arrows {
            let tail = *vindex.get(&tail).ok_or(Error::UnknownVertex(tail))?;
            let head = *vindex.get(&head).ok_or(Error::UnknownVertex(head))?;
            out.push(Arrow { name, tail, head });
        }
        Self::from_parts(vertices, out, None, suffix)
    }

    fn from_parts(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        star: Option<Vec<usize>>,
        suffix: char,
    ) -> Result<Self> {
        let mut arrow_index = HashMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if star.is_none() && a.name.contains(suffix) {
                return Err(Error::ReservedName {
                    name: a.name.clone(),
                    reason: format!("`{suffix}` is the doubling suffix"),
                });
            }
            if a.name == "d" {
                return Err(Error::ReservedName {
                    name: a.name.clone(),
                    reason: "`d` denotes the differential".into(),
                });
            }
            if let Some(v) = a.name.strip_prefix("e_") {
                if vertices.iter().any(|w| w == v) {
                    return Err(Error::ReservedName {
                        name: a.name.clone(),
                        reason: format!("`e_{v}` denotes a trivial path"),
                    });
                }
            }
            if arrow_index.insert(a.name.clone(), i).is_some() {
                return Err(Error::DuplicateArrow(a.name.clone()));
            }
        }
        Ok(Quiver {
            vertices,
            arrows,
            star,
            suffix,
            arrow_index,
        })
    }

    /// The quiver with one vertex and one loop `x`.
    pub fn jordan() -> Self {
        Self::new(["v"], [("x".into(), "v".into(), "v".into())]).expect("valid quiver")
    }

    /// The quiver with one vertex and `d` loops `x1, …, xd`.
    pub fn loops(d: usize) -> Self {
        Self::new(
            ["v"],
            (1..=d).map(|i| (format!("x{i}"), "v".to_string(), "v".to_string())),
        )
        .expect("valid quiver")
    }

    /// Linearly oriented A_n: vertices `1..=n`, arrows `a1: 1→2, …`.
    pub fn linear(n: usize) -> Self {
        Self::new(
            (1..=n).map(|i| i.to_string()),
            (1..n).map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string())),
        )
        .expect("valid quiver")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn tail(&self, arrow: usize) -> usize {
        self.arrows[arrow].tail
    }

    pub fn head(&self, arrow: usize) -> usize {
        self.arrows[arrow].head
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<usize> {
        self.arrow_index.get(name).copied()
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn suffix(&self) -> char {
        self.suffix
    }

    pub fn is_double(&self) -> bool {
        self.star.is_some()
    }

    /// The partner `a*` of an arrow on a double quiver.
    pub fn star_of(&self, arrow: usize) -> Option<usize> {
        self.star.as_ref().map(|s| s[arrow])
    }

    /// Number of arrows of the underlying (undoubled) quiver.
    pub fn num_original_arrows(&self) -> usize {
        if self.is_double() {
            self.arrows.len() / 2
        } else {
            self.arrows.len()
        }
    }

    pub fn into_shared(self) -> Arc<Quiver> {
        Arc::new(self)
    }
}

/// Doubles `q` with the default `~` suffix.
pub fn double_quiver(q: &Quiver) -> Result<Quiver> {
    double_quiver_with_suffix(q, q.suffix)
}

/// Adds a reversed arrow `a<suffix>` for every arrow `a`.
pub fn double_quiver_with_suffix(q: &Quiver, suffix: char) -> Result<Quiver> {
    if q.star.is_some() {
        return Err(Error::AlreadyDoubled);
    }
    let n = q.arrows.len();
    let mut arrows = q.arrows.clone();
    for a in &q.arrows {
        let name = format!("{}{}", a.name, suffix);
        if q.arrow_index.contains_key(&name) {
            return Err(Error::NameCollision(name));
        }
        if a.name.contains(suffix) {
            return Err(Error::ReservedName {
                name: a.name.clone(),
                reason: format!("`{suffix}` is the doubling suffix"),
            });
        }
        arrows.push(Arrow {
            name,
            tail: a.head,
            head: a.tail,
        });
    }
    let star = (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect();
    Quiver::from_parts(q.vertices.clone(), arrows, Some(star), suffix)
}

impl fmt::Display for Quiver {
    /// Writes the quiver in the quiver-file syntax. Doubled quivers are written
    /// as their original arrows plus `double: true`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices: [{}]", self.vertices.join(", "))?;
        let shown = &self.arrows[..self.num_original_arrows()];
        let arrows: Vec<String> = shown
            .iter()
            .map(|a| format!("{{{}, {}, {}}}", a.name, self.vertices[a.tail], self.vertices[a.head]))
            .collect();
        writeln!(f, "arrows: [{}]", arrows.join(", "))?;
        if self.suffix != DEFAULT_SUFFIX {
            writeln!(f, "suffix: \"{}\"", self.suffix)?;
        }
        if self.is_double() {
            writeln!(f, "double: true")?;
        }
        Ok(())
    }
}

/// Positive integer per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DimensionVector(Vec<usize>);

impl DimensionVector {
    pub fn new(q: &Quiver, dims: Vec<usize>) -> Result<Self> {
        if dims.len() != q.num_vertices() {
            return Err(Error::DimensionLength {
                expected: q.num_vertices(),
                found: dims.len(),
            });
        }
        if dims.contains(&0) {
            return Err(Error::ZeroDimension);
        }
        Ok(DimensionVector(dims))
    }

    pub fn get(&self, vertex: usize) -> usize {
        self.0[vertex]
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jordan_double() {
        let q = double_quiver(&Quiver::jordan()).unwrap();
        assert_eq!(q.num_arrows(), 2);
        assert_eq!(q.arrow(1).name, "x~");
        assert_eq!(q.star_of(0), Some(1));
        assert_eq!(q.star_of(1), Some(0));
    }

    #[test]
    fn a2_double_reverses() {
        let q = double_quiver(&Quiver::linear(2)).unwrap();
        let a = q.arrow_by_name("a1").unwrap();
        let b = q.arrow_by_name("a1~").unwrap();
        assert_eq!((q.tail(a), q.head(a)), (0, 1));
        assert_eq!((q.tail(b), q.head(b)), (1, 0));
    }

    #[test]
    fn empty_arrow_set() {
        let q = Quiver::new(["1", "2"], Vec::new()).unwrap();
        let d = double_quiver(&q).unwrap();
        assert_eq!(d.num_arrows(), 0);
        assert!(d.is_double());
    }

    #[test]
    fn star_is_involution() {
        let q = double_quiver(&Quiver::loops(3)).unwrap();
        assert_eq!(q.num_arrows(), 6);
        for a in 0..6 {
            let s = q.star_of(a).unwrap();
            assert_ne!(s, a);
            assert_eq!(q.star_of(s), Some(a));
            assert_eq!(q.tail(s), q.head(a));
        }
    }

    #[test]
    fn rejects_bad_quivers() {
        let dup = Quiver::new(["v"], [("x".into(), "v".into(), "v".into()), ("x".into(), "v".into(), "v".into())]);
        assert_eq!(dup.unwrap_err(), Error::DuplicateArrow("x".into()));
        let unk = Quiver::new(["v"], [("x".into(), "v".into(), "w".into())]);
        assert_eq!(unk.unwrap_err(), Error::UnknownVertex("w".into()));
        let tilde = Quiver::new(["v"], [("x~".into(), "v".into(), "v".into())]);
        assert!(matches!(tilde, Err(Error::ReservedName { .. })));
        assert_eq!(double_quiver(&double_quiver(&Quiver::jordan()).unwrap()).unwrap_err(), Error::AlreadyDoubled);
    }

    #[test]
    fn suffix_collision() {
        let q = Quiver::new(["v"], [("x".into(), "v".into(), "v".into()), ("x_".into(), "v".into(), "v".into())]).unwrap();
        assert_eq!(
            double_quiver_with_suffix(&q, '_').unwrap_err(),
            Error::NameCollision("x_".into())
        );
        let d = double_quiver_with_suffix(&Quiver::jordan(), '\'').unwrap();
        assert_eq!(d.arrow(1).name, "x'");
        assert_eq!(d.suffix(), '\'');
    }
}
