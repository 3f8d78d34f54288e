use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::critgrp::is_prime;
use crate::error::{Error, Result};

/// Number of invertible symmetric `m × m` matrices over `F_p`:
/// `p^{C(m+1, 2)} ∏_{j=1}^{⌈m/2⌉} (1 − p^{1−2j})`.
pub fn macwilliams_count(m: usize, p: u64) -> Result<BigInt> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pb = BigRational::from_integer(BigInt::from(p));
    let mut value = num_traits::pow(pb.clone(), m * (m + 1) / 2);
    for j in 1..=m.div_ceil(2) {
        value *= BigRational::one() - num_traits::pow(pb.recip(), 2 * j - 1);
    }
    assert!(value.is_integer(), "count must be an integer");
    Ok(value.to_integer())
}

/// `ζ(s)` for real `s > 1`: a direct partial sum plus an Euler–Maclaurin tail.
pub fn zeta(s: f64) -> f64 {
    const N: u32 = 64;
    let head: f64 = (1..N).map(|n| (n as f64).powf(-s)).sum();
    let n = N as f64;
    let tail = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s) + s * n.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0;
    head + tail
}

/// `∏_{k=1}^{terms} ζ(2k+1)^{-1}`.
pub fn cyclic_constant(terms: usize) -> f64 {
    (1..=terms).map(|k| 1.0 / zeta(2.0 * k as f64 + 1.0)).product()
}

/// Expected number of spanning trees of a uniform random labelled graph on
/// `n` vertices: `n^{n−2} / 2^{n−1}`.
pub fn mean_spanning_trees(n: usize) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two vertices".into()));
    }
    let num = num_traits::pow(BigInt::from(n), n - 2);
    let den = num_traits::pow(BigInt::from(2), n - 1);
    Ok(BigRational::new(num, den))
}
