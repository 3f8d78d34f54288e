use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Vector of exact rationals. `BigRational` keeps every entry reduced with a
/// positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    /// True when the vector is a rational multiple of `other`.
    pub fn is_parallel_to(&self, other: &[BigInt]) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let Some(k) = other.iter().position(|x| !x.is_zero()) else {
            return self.0.iter().all(Zero::is_zero);
        };
        let scale = &self.0[k] / BigRational::from_integer(other[k].clone());
        self.0
            .iter()
            .zip(other)
            .all(|(a, b)| *a == &scale * BigRational::from_integer(b.clone()))
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn to_rational(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(a: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..a[i].len() {
                let delta = &f * &a[r][j];
                a[i][j] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the rational kernel, one vector per free column (free entry 1).
pub fn rational_null_space(m: &IntMatrix) -> Vec<RationalVector> {
    let cols = m.cols();
    let mut a = to_rational(m);
    let pivots = rref(&mut a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            RationalVector(v)
        })
        .collect()
}

/// Unique rational solution of a nonsingular square system; `None` if `M` is singular.
pub fn solve_rational(m: &IntMatrix, b: &[BigInt]) -> Result<Option<RationalVector>> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows()
        )));
    }
    let n = m.rows();
    let mut a = to_rational(m);
    for (row, bi) in a.iter_mut().zip(b) {
        row.push(BigRational::from_integer(bi.clone()));
    }
    let pivots = rref(&mut a, n);
    if pivots.len() < n {
        return Ok(None);
    }
    Ok(Some(RationalVector(
        a.into_iter().map(|mut row| row.pop().expect("augmented")).collect(),
    )))
}

/// `M⁻¹` over the rationals, row-major; `None` if singular.
pub fn inverse_rational(m: &IntMatrix) -> Result<Option<Vec<Vec<BigRational>>>> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a = to_rational(m);
    for (i, row) in a.iter_mut().enumerate() {
        row.extend((0..n).map(|j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        }));
    }
    if rref(&mut a, n).len() < n {
        return Ok(None);
    }
    Ok(Some(a.into_iter().map(|row| row[n..].to_vec()).collect()))
}
