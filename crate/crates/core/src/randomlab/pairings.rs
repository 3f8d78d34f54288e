use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::critgrp::{is_prime, AbelianGroup};
use crate::error::{Error, Result};

/// Largest group order accepted by [`count_pairings`].
pub const PAIRING_ORDER_LIMIT: u64 = 512;
/// Largest number of candidate Gram tables [`count_pairings`] will scan.
pub const GRAM_TABLE_LIMIT: u64 = 1 << 24;

fn small_factors(h: &AbelianGroup) -> Result<Vec<u64>> {
    let order = h.order();
    if order > BigInt::from(PAIRING_ORDER_LIMIT) {
        return Err(Error::guard("group order", PAIRING_ORDER_LIMIT));
    }
    Ok(h.factors().iter().map(|f| f.to_u64().expect("bounded")).collect())
}

/// Number of symmetric, bilinear, perfect pairings `H × H → Q/Z` on a
/// p-group, by scanning every symmetric Gram table on the invariant-factor
/// generators.
///
/// With generators of orders `n_i`, the value on `(g_i, g_j)` ranges over
/// multiples of `1/gcd(n_i, n_j)`. A table is perfect when no element of
/// order `p` pairs trivially with every generator, which suffices because a
/// nontrivial kernel always contains such an element.
pub fn count_pairings(h: &AbelianGroup) -> Result<BigInt> {
    if h.is_trivial() {
        return Ok(BigInt::one());
    }
    let p = h
        .p_group_prime()
        .ok_or_else(|| Error::InvalidParameter(format!("{h} is not a p-group")))?;
    let n = small_factors(h)?;
    let k = n.len();
    let big = *n.last().expect("nontrivial");

    let mut cells = Vec::new();
    for i in 0..k {
        for j in i..k {
            cells.push((i, j, n[i].gcd(&n[j])));
        }
    }
    let tables = cells
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.2).filter(|&t| t <= GRAM_TABLE_LIMIT))
        .ok_or_else(|| Error::guard("number of Gram tables", GRAM_TABLE_LIMIT))?;

    // Coefficient vectors of the nonzero order-p elements.
    let socle: Vec<Vec<u64>> = (1..p.pow(k as u32))
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let c = code % p;
                    code /= p;
                    c
                })
                .collect()
        })
        .collect();

    let perfect = (0..tables)
        .into_par_iter()
        .filter(|&index| {
            // b[i][j] = N·⟨(n_i/p)·g_i, g_j⟩ mod N
            let mut b = vec![vec![0u64; k]; k];
            let mut rest = index;
            for &(i, j, m) in &cells {
                let a = rest % m;
                rest /= m;
                b[i][j] = a * (big / m);
                b[j][i] = b[i][j];
            }
            for (i, row) in b.iter_mut().enumerate() {
                for x in row.iter_mut() {
                    *x = (*x * (n[i] / p)) % big;
                }
            }
            socle.iter().all(|c| {
                (0..k).any(|j| (0..k).map(|i| c[i] * b[i][j]).sum::<u64>() % big != 0)
            })
        })
        .count();
    Ok(BigInt::from(perfect))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `|Aut(H)|`, multiplied over the primary components.
///
/// For `H = ⊕ Z/p^{e_j}` with `e_1 ≤ … ≤ e_k`, let `d_j` be the largest and
/// `c_j` the smallest index `l` with `e_l = e_j`. Then
/// `|Aut(H)| = ∏ (p^{d_j} − p^{j−1}) · ∏ p^{e_j (k − d_j)} · ∏ p^{(e_j − 1)(k − c_j + 1)}`.
pub fn aut_order(h: &AbelianGroup) -> Result<BigInt> {
    let exponent = h
        .exponent()
        .to_u64()
        .ok_or_else(|| Error::InvalidParameter("group exponent exceeds 64 bits".into()))?;
    let mut total = BigInt::one();
    for p in prime_factors(exponent) {
        let part = h.sylow(p)?;
        let e: Vec<u32> = part
            .factors()
            .iter()
            .map(|f| {
                let mut f = f.to_u64().expect("divides the exponent");
                let mut e = 0;
                while f > 1 {
                    f /= p;
                    e += 1;
                }
                e
            })
            .collect();
        let k = e.len();
        let pb = BigInt::from(p);
        for j in 1..=k {
            let ej = e[j - 1];
            let d = (1..=k).filter(|&l| e[l - 1] == ej).max().expect("j itself");
            let c = (1..=k).filter(|&l| e[l - 1] == ej).min().expect("j itself");
            total *= pb.pow(d as u32) - pb.pow(j as u32 - 1);
            total *= pb.pow(ej * (k - d) as u32);
            total *= pb.pow((ej - 1) * (k - c + 1) as u32);
        }
    }
    Ok(total)
}

/// `∏_{k ≥ 0} (1 − p^{−2k−1})`, stopping once the next factor is within
/// `tol` of 1.
pub fn odd_zeta_product(p: u64, tol: f64) -> f64 {
    let mut value = 1.0;
    let mut term = 1.0 / p as f64;
    let step = term * term;
    while term >= tol {
        value *= 1.0 - term;
        term *= step;
    }
    value
}

/// Limiting probability that the Sylow p-subgroup of the critical group of a
/// random graph is `H`:
/// `#pairings(H) / (|H|·|Aut(H)|) · ∏_{k ≥ 0} (1 − p^{−2k−1})`.
pub fn wood_probability(h: &AbelianGroup, p: u64, tol: f64) -> Result<f64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    if !h.is_trivial() && h.p_group_prime() != Some(p) {
        return Err(Error::InvalidParameter(format!("{h} is not a {p}-group")));
    }
    let weight = count_pairings(h)?.to_f64().expect("finite")
        / (h.order() * aut_order(h)?).to_f64().expect("finite");
    Ok(weight * odd_zeta_product(p, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(f: &[u64]) -> AbelianGroup {
        AbelianGroup::from_cyclic_factors(f.iter().copied()).unwrap()
    }

    /// Automorphisms counted as bijective endomorphisms: images of the
    /// generators must have order dividing the generator's order.
    fn aut_brute(h: &AbelianGroup) -> u64 {
        let n: Vec<u64> = h.factors().iter().map(|f| f.to_u64().unwrap()).collect();
        let k = n.len();
        let elements: Vec<Vec<u64>> = {
            let mut all = vec![vec![]];
            for &m in &n {
                all = all
                    .into_iter()
                    .flat_map(|v: Vec<u64>| {
                        (0..m).map(move |x| {
                            let mut w = v.clone();
                            w.push(x);
                            w
                        })
                    })
                    .collect();
            }
            all
        };
        let killed_by = |x: &[u64], m: u64| (0..k).all(|i| (x[i] * m).is_multiple_of(n[i]));
        let candidates: Vec<Vec<&Vec<u64>>> =
            n.iter().map(|&m| elements.iter().filter(|x| killed_by(x, m)).collect()).collect();
        let mut count = 0;
        let mut choice = vec![0usize; k];
        loop {
            let images: Vec<&Vec<u64>> = (0..k).map(|i| candidates[i][choice[i]]).collect();
            let mut hit = std::collections::HashSet::new();
            for x in &elements {
                let y: Vec<u64> = (0..k)
                    .map(|t| (0..k).map(|i| x[i] * images[i][t]).sum::<u64>() % n[t])
                    .collect();
                hit.insert(y);
            }
            if hit.len() == elements.len() {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == k {
                    return count;
                }
                choice[i] += 1;
                if choice[i] < candidates[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn pairings_on_cyclic_groups() {
        assert_eq!(count_pairings(&AbelianGroup::trivial()).unwrap(), BigInt::one());
        for p in [2u64, 3, 5, 7] {
            assert_eq!(count_pairings(&grp(&[p])).unwrap(), BigInt::from(p - 1));
        }
        // units of Z/8
        assert_eq!(count_pairings(&grp(&[8])).unwrap(), BigInt::from(4));
    }

    #[test]
    fn pairings_on_elementary_groups() {
        // invertible symmetric 2x2 matrices over F_p
        assert_eq!(count_pairings(&grp(&[2, 2])).unwrap(), BigInt::from(4));
        assert_eq!(count_pairings(&grp(&[3, 3])).unwrap(), BigInt::from(18));
        assert_eq!(count_pairings(&grp(&[2, 2, 2])).unwrap(), BigInt::from(28));
    }

    #[test]
    fn pairings_reject_mixed_or_large_groups() {
        assert!(count_pairings(&grp(&[6])).is_err());
        assert!(matches!(count_pairings(&grp(&[1024])), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn automorphism_formula_matches_brute_force() {
        for f in [&[][..], &[2], &[8], &[2, 2], &[2, 4], &[3, 3], &[2, 2, 2], &[2, 8], &[4, 4], &[6], &[2, 6], &[3, 9], &[2, 2, 4]] {
            let h = grp(f);
            assert_eq!(aut_order(&h).unwrap(), BigInt::from(aut_brute(&h)), "{h}");
        }
        assert_eq!(aut_order(&grp(&[2, 2])).unwrap(), BigInt::from(6));
    }

    #[test]
    fn wood_values() {
        let trivial = wood_probability(&AbelianGroup::trivial(), 2, 1e-15).unwrap();
        assert!((trivial - 0.4194).abs() < 1e-3);
        let z2 = wood_probability(&grp(&[2]), 2, 1e-15).unwrap();
        assert!((z2 - trivial / 2.0).abs() < 1e-12);
        assert!(wood_probability(&grp(&[3]), 2, 1e-12).is_err());
        assert!(wood_probability(&grp(&[2]), 4, 1e-12).is_err());
        assert!(wood_probability(&grp(&[2]), 2, 0.0).is_err());
    }

    #[test]
    fn wood_mass_over_small_two_groups() {
        let groups: [&[u64]; 12] = [
            &[], &[2], &[4], &[2, 2], &[8], &[2, 4], &[2, 2, 2],
            &[16], &[2, 8], &[4, 4], &[2, 2, 4], &[2, 2, 2, 2],
        ];
        let mut total = 0.0;
        for f in groups {
            let w = wood_probability(&grp(f), 2, 1e-15).unwrap();
            assert!(w > 0.0);
            total += w;
        }
        assert!(total < 1.0 && total > 0.9, "{total}");
    }
}
