use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{list_q_reduced_degree0, to_big, Divisor};
use crate::critgrp::{element_order, spanning_tree_count};
use crate::error::{Error, Result};
use crate::exactla::{inverse_rational, solve_integer, solve_rational};
use crate::graphs::Multigraph;

/// Largest critical group order for [`pairing_gram`].
pub const PAIRING_GRAM_LIMIT: u64 = 5000;

/// An element of `Q/Z`, stored as its representative in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairingValue(BigRational);

impl PairingValue {
    pub fn new(x: BigRational) -> Self {
        PairingValue(&x - x.floor())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl std::ops::Add for &PairingValue {
    type Output = PairingValue;

    fn add(self, rhs: &PairingValue) -> PairingValue {
        PairingValue::new(&self.0 + &rhs.0)
    }
}

/// Always `a/b`, including `0/1`.
impl fmt::Display for PairingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

fn check_inputs(g: &Multigraph, d1: &Divisor, d2: &Divisor, q: usize) -> Result<()> {
    g.require_connected()?;
    g.check_index(q)?;
    for d in [d1, d2] {
        d.check_len(g.n())?;
        if d.degree() != 0 {
            return Err(Error::NonzeroDegree(d.degree()));
        }
    }
    Ok(())
}

fn restrict(d: &Divisor, q: usize) -> Vec<BigInt> {
    let mut v = to_big(d.values());
    v.remove(q);
    v
}

/// `⟨D1, D2⟩ = D2ᵀ L_q⁻¹ D1 mod 1`, with both divisors restricted away from `q`.
pub fn monodromy_pairing(
    g: &Multigraph,
    d1: &Divisor,
    d2: &Divisor,
    q: usize,
) -> Result<PairingValue> {
    check_inputs(g, d1, d2, q)?;
    let x = solve_rational(&g.reduced_laplacian(q, q)?, &restrict(d1, q))?
        .expect("reduced Laplacian of a connected graph is nonsingular");
    let y = restrict(d2, q);
    let s: BigRational = x
        .entries()
        .iter()
        .zip(&y)
        .map(|(a, b)| a * BigRational::from_integer(b.clone()))
        .sum();
    Ok(PairingValue::new(s))
}

/// The same pairing from its definition: with `m·D2 = div(f)`,
/// `⟨D1, D2⟩ = (1/m) Σ_v D1(v) f(v) mod 1`.
pub fn monodromy_pairing_definitional(
    g: &Multigraph,
    d1: &Divisor,
    d2: &Divisor,
    q: usize,
) -> Result<PairingValue> {
    check_inputs(g, d1, d2, q)?;
    let m = element_order(g, d2, q)?;
    let target: Vec<BigInt> = d2.values().iter().map(|&x| &m * x).collect();
    let f = solve_integer(&g.laplacian(), &target)?.expect("m·D2 is principal");
    let s: BigInt = d1.values().iter().zip(&f).map(|(&a, b)| b * a).sum();
    Ok(PairingValue::new(BigRational::new(s, m)))
}

/// Pairing values between all q-reduced degree-0 divisors, as numerators
/// over `|K(G)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingGram {
    pub reps: Vec<Divisor>,
    pub order: u64,
    pub numerators: Vec<Vec<u64>>,
}

impl PairingGram {
    pub fn value(&self, i: usize, j: usize) -> PairingValue {
        PairingValue::new(BigRational::new(
            self.numerators[i][j].into(),
            self.order.into(),
        ))
    }

    pub fn is_symmetric(&self) -> bool {
        let k = self.reps.len();
        (0..k).all(|i| (0..k).all(|j| self.numerators[i][j] == self.numerators[j][i]))
    }

    /// `h ↦ ⟨h, ·⟩` is injective (hence bijective onto the dual) iff no two rows agree.
    pub fn is_perfect(&self) -> bool {
        let mut rows: Vec<&Vec<u64>> = self.numerators.iter().collect();
        rows.sort();
        rows.dedup();
        rows.len() == self.reps.len()
    }
}

pub fn pairing_gram(g: &Multigraph, q: usize) -> Result<PairingGram> {
    g.require_connected()?;
    g.check_index(q)?;
    let order = spanning_tree_count(g);
    if order > BigInt::from(PAIRING_GRAM_LIMIT) {
        return Err(Error::guard("critical group order for the pairing table", PAIRING_GRAM_LIMIT));
    }
    let order_u = order.to_u64().expect("checked above");
    let reps = list_q_reduced_degree0(g, q)?;
    let inv = inverse_rational(&g.reduced_laplacian(q, q)?)?
        .expect("reduced Laplacian of a connected graph is nonsingular");
    // |K|·L_q⁻¹ is the adjugate up to sign, so integral
    let adj: Vec<Vec<i128>> = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let y = x * BigRational::from_integer(order.clone());
                    debug_assert!(y.is_integer());
                    y.to_integer().to_i128().expect("adjugate entry fits in i128")
                })
                .collect()
        })
        .collect();
    let vecs: Vec<Vec<i128>> = reps
        .iter()
        .map(|d| {
            let mut v: Vec<i128> = d.values().iter().map(|&x| x as i128).collect();
            v.remove(q);
            v
        })
        .collect();
    let images: Vec<Vec<i128>> = vecs
        .iter()
        .map(|x| {
            adj.iter()
                .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    let modulus = order_u as i128;
    let numerators = images
        .iter()
        .map(|ax| {
            vecs.iter()
                .map(|y| {
                    let s: i128 = y.iter().zip(ax).map(|(a, b)| a * b).sum();
                    s.mod_floor(&modulus) as u64
                })
                .collect()
        })
        .collect();
    Ok(PairingGram {
        reps,
        order: order_u,
        numerators,
    })
}
