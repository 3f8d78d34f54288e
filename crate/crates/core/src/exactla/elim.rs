//! Fraction-free (Bareiss) elimination: every intermediate division is exact,
//! so no rational arithmetic is needed for determinants or rank.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};
use crate::util::combinations;

/// Largest `min(rows, cols)` accepted by [`minors_gcd`].
pub const MINORS_GCD_LIMIT: usize = 8;

pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(p) => {
                    a.swap_rows(k, p);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = v / &prev;
            }
            a[(i, k)] = BigInt::zero();
        }
        prev = a[(k, k)].clone();
    }
    let det = a[(n - 1, n - 1)].clone();
    Ok(if negate { -det } else { det })
}

pub fn rank(m: &IntMatrix) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[(r, c)] * &a[(i, j)] - &a[(i, c)] * &a[(r, j)];
                a[(i, j)] = v / &prev;
            }
            a[(i, c)] = BigInt::zero();
        }
        prev = a[(r, c)].clone();
        r += 1;
    }
    r
}

/// `det(t·I − M)`.
pub fn eval_charpoly(m: &IntMatrix, t: &BigInt) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut shifted = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            shifted[(i, j)] = -&m[(i, j)];
        }
        shifted[(i, i)] += t;
    }
    determinant(&shifted)
}

/// gcd of all `size × size` minors (0 when they all vanish). Exponential in the
/// matrix size, so it is only meant as a cross-check for small inputs.
pub fn minors_gcd(m: &IntMatrix, size: usize) -> Result<BigInt> {
    let small = m.rows().min(m.cols());
    if size > small {
        return Err(Error::IndexOutOfRange {
            index: size,
            size: small,
        });
    }
    if small > MINORS_GCD_LIMIT {
        return Err(Error::guard(
            "matrix size for minors_gcd",
            MINORS_GCD_LIMIT as u64,
        ));
    }
    if size == 0 {
        return Ok(BigInt::one());
    }
    let row_sets = combinations(m.rows(), size);
    let col_sets = combinations(m.cols(), size);
    let mut g = BigInt::zero();
    for rs in &row_sets {
        for cs in &col_sets {
            let d = determinant(&m.select(rs, cs))?;
            g = g.gcd(&d);
            if g.is_one() {
                return Ok(g);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Laplace expansion along the first row.
    fn cofactor_det(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        (0..n)
            .map(|j| {
                let minor = cofactor_det(&m.without_row_col(0, j).unwrap());
                let term = &m[(0, j)] * minor;
                if j % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    }

    #[test]
    fn identity_has_unit_determinant() {
        assert_eq!(determinant(&IntMatrix::identity(3)).unwrap(), BigInt::one());
    }

    #[test]
    fn non_square_rejected() {
        let m = IntMatrix::zeros(2, 3);
        assert!(matches!(determinant(&m), Err(Error::NonSquare { .. })));
        assert!(matches!(eval_charpoly(&m, &BigInt::zero()), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn needs_row_swap() {
        let m = IntMatrix::from_rows([[0, 1], [1, 0]]);
        assert_eq!(determinant(&m).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn rank_of_rectangular() {
        let m = IntMatrix::from_rows([[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&IntMatrix::zeros(3, 2)), 0);
        let wide = IntMatrix::from_rows([[0, 0, 2, 1], [0, 0, 4, 3]]);
        assert_eq!(rank(&wide), 2);
    }

    #[test]
    fn charpoly_at_zero_is_signed_determinant() {
        let m = IntMatrix::from_rows([[2, -1, 0], [-1, 3, 4], [5, 0, 1]]);
        let det = determinant(&m).unwrap();
        assert_eq!(eval_charpoly(&m, &BigInt::zero()).unwrap(), -det);
    }

    #[test]
    fn minors_gcd_size_one_is_entry_gcd() {
        let m = IntMatrix::from_rows([[4, 6], [10, 14]]);
        assert_eq!(minors_gcd(&m, 1).unwrap(), BigInt::from(2));
        assert!(minors_gcd(&m, 3).is_err());
        assert!(minors_gcd(&IntMatrix::zeros(9, 9), 1).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_square() -> impl Strategy<Value = IntMatrix> {
            (0usize..=4).prop_flat_map(|n| {
                proptest::collection::vec(-9i64..=9, n * n).prop_map(move |v| {
                    IntMatrix::from_vec(n, n, v.into_iter().map(BigInt::from).collect()).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn bareiss_matches_cofactor_expansion(m in small_square()) {
                prop_assert_eq!(determinant(&m).unwrap(), cofactor_det(&m));
            }

            #[test]
            fn full_rank_iff_nonzero_determinant(m in small_square()) {
                let full = rank(&m) == m.rows();
                prop_assert_eq!(full, !cofactor_det(&m).is_zero());
            }
        }
    }
}
