//! Exact rank and determinant by fraction-free (Bareiss) elimination.

use num::{BigInt, Integer, One, Zero};

use crate::Rational;

/// Clears denominators row by row. Returns the integer matrix and the product
/// of the row scalings.
fn integer_rows(m: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &l;
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    (rows, scale)
}

/// Runs Bareiss elimination in place and returns `(rank, swap_parity)`.
fn bareiss(a: &mut [Vec<BigInt>]) -> (usize, bool) {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut odd = false;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            odd = !odd;
        }
        for i in r + 1..nrows {
            for j in col + 1..ncols {
                let v = &a[r][col] * &a[i][j] - &a[i][col] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[r][col].clone();
        r += 1;
    }
    (r, odd)
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let (mut a, _) = integer_rows(m);
    bareiss(&mut a).0
}

/// Determinant of a square matrix; the empty matrix has determinant 1.
pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return Rational::one();
    }
    let (mut a, scale) = integer_rows(m);
    let (r, odd) = bareiss(&mut a);
    if r < n {
        return Rational::zero();
    }
    let d = Rational::new(a[n - 1][n - 1].clone(), scale);
    if odd {
        -d
    } else {
        d
    }
}

pub fn is_antisymmetric(m: &[Vec<Rational>]) -> bool {
    (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == -&m[j][i]))
}
