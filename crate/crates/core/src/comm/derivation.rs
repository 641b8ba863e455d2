use super::{CommForm, Polynomial};
use crate::{Error, Result};

/// A derivation of the polynomial ring, given by the images of the variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyDerivation {
    images: Vec<Polynomial>,
}

impl PolyDerivation {
    pub fn new(images: Vec<Polynomial>) -> Result<Self> {
        let n = images.len();
        if let Some(p) = images.iter().find(|p| p.nvars() != n) {
            return Err(Error::ArityMismatch(n, p.nvars()));
        }
        Ok(PolyDerivation { images })
    }

    pub fn zero(nvars: usize) -> Self {
        PolyDerivation {
            images: vec![Polynomial::zero(nvars); nvars],
        }
    }

    /// `∂/∂x_i`.
    pub fn coordinate(nvars: usize, i: usize) -> Self {
        let mut d = Self::zero(nvars);
        d.images[i] = Polynomial::one(nvars);
        d
    }

    /// `Σ x_i ∂/∂x_i`.
    pub fn euler(nvars: usize) -> Self {
        PolyDerivation {
            images: (0..nvars).map(|i| Polynomial::var(nvars, i)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Polynomial::is_zero)
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars());
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let df = f.derivative(i);
            if !df.is_zero() {
                out.add_assign(&(img * &df));
            }
        }
        out
    }

    /// Lie derivative `L_D = i_D ∘ d + d ∘ i_D` on forms of degree at most 2.
    pub fn lie(&self, u: &CommForm) -> Result<CommForm> {
        let a = u.d()?.interior(&self.images);
        if u.degree() == 0 {
            return Ok(a);
        }
        let b = u.interior(&self.images).d()?;
        a.try_add(&b)
    }
}

/// Dimension over ℚ of the span of a family of derivations.
pub fn span_rank(family: &[PolyDerivation]) -> usize {
    let mut columns: Vec<(usize, super::Monomial)> = family
        .iter()
        .flat_map(|d| d.images.iter().enumerate().flat_map(|(i, p)| p.terms().keys().map(move |m| (i, m.clone()))))
        .collect();
    columns.sort();
    columns.dedup();
    let rows: Vec<Vec<crate::Rational>> = family
        .iter()
        .map(|d| columns.iter().map(|(i, m)| d.images[*i].terms().coeff(m)).collect())
        .collect();
    super::rank(&rows)
}

/// `D(f)`.
pub fn apply_derivation(d: &PolyDerivation, f: &Polynomial) -> Result<Polynomial> {
    if d.nvars() != f.nvars() {
        return Err(Error::ArityMismatch(d.nvars(), f.nvars()));
    }
    Ok(d.apply(f))
}
