//! Chip-firing on divisors: firing moves, principal divisors, q-reduced
//! forms, positive rank, gonality and the monodromy pairing.

mod pairing;
mod rank;
mod reduce;

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactla::solve_integer;
use crate::graphs::Multigraph;

pub use pairing::{
    monodromy_pairing, monodromy_pairing_definitional, pairing_gram, PairingGram, PairingValue,
    PAIRING_GRAM_LIMIT,
};
pub use rank::{effective_equivalent, gonality, has_positive_rank, Gonality, GONALITY_LIMIT};
pub use reduce::{
    equivalent, is_q_reduced, is_q_reduced_exhaustive, list_q_reduced_degree0, q_reduce,
    EXHAUSTIVE_LIMIT, LISTING_LIMIT,
};

/// Integer number of chips on each vertex (negative = in debt).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor(Vec<i64>);

impl Divisor {
    pub fn new(values: Vec<i64>) -> Self {
        Divisor(values)
    }

    pub fn zero(n: usize) -> Self {
        Divisor(vec![0; n])
    }

    /// One chip on `v`.
    pub fn unit(n: usize, v: usize) -> Self {
        let mut d = Self::zero(n);
        d.0[v] = 1;
        d
    }

    /// `e_x − e_y`.
    pub fn delta(n: usize, x: usize, y: usize) -> Self {
        let mut d = Self::zero(n);
        d.0[x] += 1;
        d.0[y] -= 1;
        d
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn into_values(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Divisor(self.0.iter().map(|x| x * k).collect())
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() == n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "divisor of length {} on a graph with {n} vertices",
                self.len()
            )))
        }
    }

    pub(crate) fn values_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    /// Parses `label:value` pairs separated by whitespace; unlisted vertices get 0.
    pub fn parse(g: &Multigraph, text: &str) -> Result<Self> {
        let mut d = Self::zero(g.n());
        for token in text.split_whitespace() {
            let (label, value) = token
                .rsplit_once(':')
                .ok_or_else(|| Error::parse(1, format!("expected `label:value`, got `{token}`")))?;
            let v = g.index_of(label)?;
            d.0[v] += value
                .parse::<i64>()
                .map_err(|_| Error::parse(1, format!("bad chip count `{value}`")))?;
        }
        Ok(d)
    }

    /// `label:value` for every vertex, in vertex order.
    pub fn render(&self, g: &Multigraph) -> String {
        g.labels()
            .iter()
            .zip(&self.0)
            .map(|(l, x)| format!("{l}:{x}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl Index<usize> for Divisor {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl Add for &Divisor {
    type Output = Divisor;

    fn add(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len(), "divisor lengths differ");
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Divisor {
    type Output = Divisor;

    fn sub(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len(), "divisor lengths differ");
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Divisor {
    type Output = Divisor;

    fn neg(self) -> Divisor {
        Divisor(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Integer-valued function on the vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexFunction(pub Vec<i64>);

/// `v` sends one chip along each incident edge.
pub fn fire(g: &Multigraph, d: &Divisor, v: usize) -> Result<Divisor> {
    shift(g, d, v, 1)
}

/// `v` takes one chip along each incident edge.
pub fn borrow(g: &Multigraph, d: &Divisor, v: usize) -> Result<Divisor> {
    shift(g, d, v, -1)
}

fn shift(g: &Multigraph, d: &Divisor, v: usize, sign: i64) -> Result<Divisor> {
    g.check_index(v)?;
    d.check_len(g.n())?;
    let mut out = d.clone();
    for w in g.neighbors(v) {
        let m = g.mult(v, w) as i64;
        out.0[w] += sign * m;
        out.0[v] -= sign * m;
    }
    Ok(out)
}

/// Fires every vertex of `set` once (`set[v]` true) and returns the result.
pub fn fire_set(g: &Multigraph, d: &Divisor, set: &[bool]) -> Result<Divisor> {
    d.check_len(g.n())?;
    if set.len() != g.n() {
        return Err(Error::DimensionMismatch("firing set length".into()));
    }
    let mut out = d.clone();
    for (i, j, m) in g.edges() {
        let m = m as i64;
        match (set[i], set[j]) {
            (true, false) => {
                out.0[i] -= m;
                out.0[j] += m;
            }
            (false, true) => {
                out.0[j] -= m;
                out.0[i] += m;
            }
            _ => {}
        }
    }
    Ok(out)
}

/// `div(f)` with `ord_v(f) = Σ_{w∼v} (f(v) − f(w))`, i.e. `L·f`.
pub fn div_of_function(g: &Multigraph, f: &VertexFunction) -> Result<Divisor> {
    if f.0.len() != g.n() {
        return Err(Error::DimensionMismatch("function length".into()));
    }
    let mut out = Divisor::zero(g.n());
    for (i, j, m) in g.edges() {
        let diff = (f.0[i] - f.0[j]) * m as i64;
        out.0[i] += diff;
        out.0[j] -= diff;
    }
    Ok(out)
}

/// Some `f` with `div(f) = D` (normalized so the last vertex has value 0),
/// or `None` if `D` is not principal.
pub fn is_principal(g: &Multigraph, d: &Divisor) -> Result<Option<VertexFunction>> {
    d.check_len(g.n())?;
    let b: Vec<BigInt> = d.values().iter().map(|&x| BigInt::from(x)).collect();
    let Some(mut f) = solve_integer(&g.laplacian(), &b)? else {
        return Ok(None);
    };
    if let Some(last) = f.last().cloned() {
        for x in &mut f {
            *x -= &last;
        }
    }
    let values = f
        .iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::InvalidParameter("firing script exceeds 64 bits".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(VertexFunction(values)))
}

/// Default base vertex: the last one.
pub fn default_q(g: &Multigraph) -> usize {
    g.n().saturating_sub(1)
}

pub(crate) fn to_big(values: &[i64]) -> Vec<BigInt> {
    values.iter().map(|&x| BigInt::from(x)).collect()
}
