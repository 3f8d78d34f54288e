use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Finite abelian group `Z/n_1 ⊕ … ⊕ Z/n_k` in invariant-factor form:
/// every `n_i ≥ 2` and `n_i | n_{i+1}`. The empty list is the trivial group,
/// so two groups are isomorphic exactly when they compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    factors: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        AbelianGroup {
            factors: Vec::new(),
        }
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Result<Self> {
        Self::from_cyclic_factors([n])
    }

    /// Canonical form of `⊕ Z/a_i` for arbitrary positive `a_i` (1's allowed).
    ///
    /// Pairs are replaced by (gcd, lcm) until the list is a divisibility
    /// chain; this yields the same invariant factors as merging the prime-power
    /// decompositions, without factoring anything.
    pub fn from_cyclic_factors<T: Into<BigInt>>(factors: impl IntoIterator<Item = T>) -> Result<Self> {
        let mut a: Vec<BigInt> = factors.into_iter().map(Into::into).collect();
        if let Some(bad) = a.iter().find(|x| !x.is_positive()) {
            return Err(Error::InvalidParameter(format!(
                "cyclic factor {bad} must be positive"
            )));
        }
        a.sort();
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if a[j].is_multiple_of(&a[i]) {
                    continue;
                }
                let g = a[i].gcd(&a[j]);
                let l = &a[i] / &g * &a[j];
                a[i] = g;
                a[j] = l;
            }
        }
        a.retain(|x| !x.is_one());
        Ok(AbelianGroup { factors: a })
    }

    pub fn factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    /// Minimum number of generators.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// Largest element order.
    pub fn exponent(&self) -> BigInt {
        self.factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        Self::from_cyclic_factors(self.factors.iter().chain(&other.factors).cloned())
            .expect("factors are positive")
    }

    /// Subgroup of elements of `p`-power order.
    pub fn sylow(&self, p: u64) -> Result<AbelianGroup> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let p = BigInt::from(p);
        let parts = self.factors.iter().map(|f| {
            let mut part = BigInt::one();
            let mut rest = f.clone();
            while rest.is_multiple_of(&p) {
                rest /= &p;
                part *= &p;
            }
            part
        });
        Self::from_cyclic_factors(parts)
    }

    /// The prime dividing the order, if this is a nontrivial p-group.
    pub fn p_group_prime(&self) -> Option<u64> {
        let n = self.exponent().to_u64()?;
        if n < 2 {
            return None;
        }
        let p = smallest_prime_factor(n);
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        (m == 1).then_some(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return d;
        }
        d += 2;
    }
    n
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("trivial");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z/{n}")).collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// Accepts the rendering produced by `Display`, in any factor order.
impl FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "trivial" {
            return Ok(Self::trivial());
        }
        let factors = s
            .split('⊕')
            .map(|part| {
                let part = part.trim();
                part.strip_prefix("Z/")
                    .and_then(|n| n.parse::<BigInt>().ok())
                    .ok_or_else(|| Error::parse(1, format!("bad cyclic factor `{part}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_cyclic_factors(factors).map_err(|e| Error::parse(1, e.to_string()))
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `Z^free_rank ⊕ torsion`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CokernelResult {
    pub free_rank: usize,
    pub torsion: AbelianGroup,
}

impl fmt::Display for CokernelResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.free_rank, self.torsion.is_trivial()) {
            (0, _) => write!(f, "{}", self.torsion),
            (r, true) => write!(f, "Z^{r}"),
            (r, false) => write!(f, "Z^{r} ⊕ {}", self.torsion),
        }
    }
}
