use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Smith normal form `S = U·M·V` together with its unimodular certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// `s[(i, i)]` for `i < min(rows, cols)`: positive entries first, each
    /// dividing the next, then zeros.
    pub diag: Vec<BigInt>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.iter().take_while(|d| !d.is_zero()).count()
    }

    pub fn nonzero_diag(&self) -> &[BigInt] {
        &self.diag[..self.rank()]
    }
}

struct Reducer {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        if let Some(u) = &mut self.u {
            u.swap_rows(x, y);
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        if let Some(v) = &mut self.v {
            v.swap_cols(x, y);
        }
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, k);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, k);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        if let Some(u) = &mut self.u {
            u.negate_row(r);
        }
    }

    /// Smallest nonzero |entry| in the trailing submatrix starting at (t, t);
    /// ties go to the lowest (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if x.magnitude() >= self.a[(bi, bj)].magnitude() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Returns `false` once the trailing submatrix is zero.
    fn reduce_step(&mut self, t: usize) -> bool {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        loop {
            let Some((pi, pj)) = self.pivot(t) else {
                return false;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if self.a[(i, t)].is_zero() {
                    continue;
                }
                let q = &self.a[(i, t)] / &self.a[(t, t)];
                self.add_row(i, t, &-q);
                clean &= self.a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if self.a[(t, j)].is_zero() {
                    continue;
                }
                let q = &self.a[(t, j)] / &self.a[(t, t)];
                self.add_col(j, t, &-q);
                clean &= self.a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            let pivot = self.a[(t, t)].clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !self.a[(i, j)].is_multiple_of(&pivot)));
            if let Some(i) = offender {
                self.add_row(t, i, &BigInt::from(1));
                continue;
            }

            if pivot.is_negative() {
                self.negate_row(t);
            }
            return true;
        }
    }

    fn run(mut self) -> (IntMatrix, Option<IntMatrix>, Option<IntMatrix>) {
        let steps = self.a.rows().min(self.a.cols());
        for t in 0..steps {
            if !self.reduce_step(t) {
                break;
            }
        }
        (self.a, self.u, self.v)
    }
}

fn diagonal_of(s: &IntMatrix) -> Vec<BigInt> {
    (0..s.rows().min(s.cols())).map(|i| s[(i, i)].clone()).collect()
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let reducer = Reducer {
        a: m.clone(),
        u: Some(IntMatrix::identity(m.rows())),
        v: Some(IntMatrix::identity(m.cols())),
    };
    let (s, u, v) = reducer.run();
    Snf {
        diag: diagonal_of(&s),
        s,
        u: u.expect("tracked"),
        v: v.expect("tracked"),
    }
}

/// SNF diagonal only; skips building the transforms.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let reducer = Reducer {
        a: m.clone(),
        u: None,
        v: None,
    };
    let (s, _, _) = reducer.run();
    diagonal_of(&s)
}

/// Some integer `x` with `M·x = b`, or `None` when no integer solution exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            m.rows()
        )));
    }
    let snf = smith_normal_form(m);
    Ok(solve_with(&snf, b))
}

/// Integer solve reusing a precomputed decomposition of `M`.
pub fn solve_with(snf: &Snf, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = snf.u.mul_vec(b).ok()?;
    let r = snf.rank();
    let mut y = vec![BigInt::zero(); snf.v.rows()];
    for (i, ci) in c.iter().enumerate() {
        if i < r {
            let (q, rem) = ci.div_rem(&snf.diag[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    snf.v.mul_vec(&y).ok()
}
