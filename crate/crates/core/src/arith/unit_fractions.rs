use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ArithmeticalStructure;
use crate::error::{Error, Result};

/// Largest `n` accepted by [`kn_unit_fractions`]; the ordered solution count
/// grows too fast beyond it.
pub const UNIT_FRACTION_LIMIT: usize = 6;

fn nondecreasing(rem: &BigRational, k: usize, min: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if k == 0 {
        if rem.is_zero() {
            out.push(cur.clone());
        }
        return;
    }
    if !rem.is_positive() {
        return;
    }
    // 1/a ≤ rem and k/a ≥ rem
    let lo = rem.recip().ceil().to_integer().to_u64().expect("fits").max(min);
    let hi = (rem.recip() * BigInt::from(k)).floor().to_integer();
    let hi = hi.to_u64().expect("fits");
    for a in lo..=hi {
        cur.push(a);
        let next = rem - BigRational::new(BigInt::one(), BigInt::from(a));
        nondecreasing(&next, k - 1, a, cur, out);
        cur.pop();
    }
}

fn next_permutation(v: &mut [u64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All structures on the complete graph `K_n`, via ordered solutions of
/// `Σ 1/(d_i + 1) = 1`; `r_i` is proportional to `1/(d_i + 1)`.
pub fn kn_unit_fractions(n: usize) -> Result<Vec<ArithmeticalStructure>> {
    if n == 0 {
        return Err(Error::InvalidParameter("K_0 has no structures".into()));
    }
    if n > UNIT_FRACTION_LIMIT {
        return Err(Error::guard("n for unit-fraction enumeration", UNIT_FRACTION_LIMIT as u64));
    }
    let mut sorted = Vec::new();
    nondecreasing(&BigRational::one(), n, 1, &mut Vec::new(), &mut sorted);
    let mut out = Vec::new();
    for mut a in sorted {
        let lcm = a.iter().fold(1u64, |l, &x| l.lcm(&x));
        loop {
            let r: Vec<u64> = a.iter().map(|&x| lcm / x).collect();
            let g = r.iter().fold(0u64, |acc, &x| acc.gcd(&x));
            out.push(ArithmeticalStructure {
                r: r.iter().map(|&x| x / g).collect(),
                d: a.iter().map(|&x| x - 1).collect(),
            });
            if !next_permutation(&mut a) {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_of_multiset() {
        let mut v = vec![1, 2, 2];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen, [vec![1, 2, 2], vec![2, 1, 2], vec![2, 2, 1]]);
    }

    #[test]
    fn small_complete_graphs() {
        assert_eq!(kn_unit_fractions(1).unwrap().len(), 1);
        let k2 = kn_unit_fractions(2).unwrap();
        assert_eq!(k2.len(), 1);
        assert_eq!(k2[0].r, [1, 1]);
        assert_eq!(kn_unit_fractions(3).unwrap().len(), 10);
        assert!(kn_unit_fractions(UNIT_FRACTION_LIMIT + 1).is_err());
    }
}
