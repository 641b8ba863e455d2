use crate::comm::{wedge, CommForm, Polynomial};
use crate::{Rational, Result};

/// Dense `N×N` matrix of polynomials, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixOfPolys {
    n: usize,
    nvars: usize,
    entries: Vec<Polynomial>,
}

impl MatrixOfPolys {
    pub fn zero(n: usize, nvars: usize) -> Self {
        MatrixOfPolys {
            n,
            nvars,
            entries: vec![Polynomial::zero(nvars); n * n],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zero(n, nvars);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one(nvars);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.n + j] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            a.add_scaled(b, c);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let rows = crate::par::map_range(n, |i| {
            (0..n)
                .map(|j| {
                    let mut acc = Polynomial::zero(self.nvars);
                    for k in 0..n {
                        let (a, b) = (self.get(i, k), other.get(k, j));
                        if !a.is_zero() && !b.is_zero() {
                            acc.add_assign(&(a * b));
                        }
                    }
                    acc
                })
                .collect::<Vec<_>>()
        });
        MatrixOfPolys {
            n,
            nvars: self.nvars,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn trace(&self) -> Polynomial {
        let mut t = Polynomial::zero(self.nvars);
        for i in 0..self.n {
            t.add_assign(self.get(i, i));
        }
        t
    }

    /// Entrywise differential.
    pub fn d(&self) -> MatrixOfForms {
        MatrixOfForms {
            n: self.n,
            nvars: self.nvars,
            degree: 1,
            entries: self
                .entries
                .iter()
                .map(|p| CommForm::from_poly(p).d().expect("degree 0"))
                .collect(),
        }
    }
}

/// Dense `N×N` matrix of exterior forms of one common degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixOfForms {
    n: usize,
    nvars: usize,
    degree: usize,
    entries: Vec<CommForm>,
}

impl MatrixOfForms {
    pub fn zero(n: usize, nvars: usize, degree: usize) -> Self {
        MatrixOfForms {
            n,
            nvars,
            degree,
            entries: vec![CommForm::zero(nvars, degree); n * n],
        }
    }

    pub fn from_polys(m: &MatrixOfPolys) -> Self {
        MatrixOfForms {
            n: m.n,
            nvars: m.nvars,
            degree: 0,
            entries: m.entries.iter().map(CommForm::from_poly).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, i: usize, j: usize) -> &CommForm {
        &self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CommForm::is_zero)
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            a.add_assign(&b.scale(c));
        }
    }

    /// Matrix product with entries multiplied by `∧`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let n = self.n;
        let degree = self.degree + other.degree;
        let rows = crate::par::map_range(n, |i| {
            (0..n)
                .map(|j| {
                    let mut acc = CommForm::zero(self.nvars, degree);
                    for k in 0..n {
                        let (a, b) = (self.get(i, k), other.get(k, j));
                        if !a.is_zero() && !b.is_zero() {
                            acc.add_assign(&wedge(a, b)?);
                        }
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<_>>>()
        });
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            entries.extend(r?);
        }
        Ok(MatrixOfForms {
            n,
            nvars: self.nvars,
            degree,
            entries,
        })
    }

    /// Product with a polynomial matrix on the right.
    pub fn mul_polys(&self, other: &MatrixOfPolys) -> Self {
        self.mul(&MatrixOfForms::from_polys(other)).expect("degree unchanged")
    }

    pub fn trace(&self) -> CommForm {
        let mut t = CommForm::zero(self.nvars, self.degree);
        for i in 0..self.n {
            t.add_assign(self.get(i, i));
        }
        t
    }
}
