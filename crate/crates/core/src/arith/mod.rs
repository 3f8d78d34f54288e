//! Arithmetical structures: pairs `(r, d)` of positive integer vectors with
//! `(diag(d) − A)·r = 0` and `gcd(r) = 1`.

mod unit_fractions;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::critgrp::{cokernel, spanning_tree_enumerate, AbelianGroup};
use crate::error::{Error, Result};
use crate::exactla::IntMatrix;
use crate::graphs::Multigraph;

pub use unit_fractions::{kn_unit_fractions, UNIT_FRACTION_LIMIT};

/// Largest allowed `n·log2(r_max)` for [`enumerate`].
pub const ENUMERATION_BITS_LIMIT: f64 = 64.0;

pub const COMPLETENESS_NOTE: &str =
    "complete only for structures whose r entries are all at most r_max";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ArithmeticalStructure {
    pub r: Vec<u64>,
    pub d: Vec<u64>,
}

impl ArithmeticalStructure {
    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    /// `diag(d) − A`.
    pub fn matrix(&self, g: &Multigraph) -> IntMatrix {
        let mut m = g.adjacency();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                m[(i, j)] = -std::mem::take(&mut m[(i, j)]);
            }
            m[(i, i)] += self.d[i];
        }
        m
    }

    /// Largest entry of `r`.
    pub fn r_max(&self) -> u64 {
        self.r.iter().copied().max().unwrap_or(0)
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ArithmeticalStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r=({}) d=({})", join(&self.r), join(&self.d))
    }
}

/// Enumeration output: the structures in increasing `r` order plus the bound
/// they were searched under.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub r_max: u64,
    pub completeness: &'static str,
    pub structures: Vec<ArithmeticalStructure>,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.structures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.structures.is_empty()
    }

    pub fn max_entry(&self) -> u64 {
        self.structures.iter().map(ArithmeticalStructure::r_max).max().unwrap_or(0)
    }
}

fn neighbor_sum(g: &Multigraph, r: &[u64], v: usize) -> u128 {
    g.neighbors(v)
        .map(|w| g.mult(v, w) as u128 * r[w] as u128)
        .sum()
}

/// Computes `d` from `r`, failing unless every `r_v` divides the weighted sum
/// of its neighbours' labels and the entries are coprime.
pub fn validate(g: &Multigraph, r: &[u64]) -> Result<ArithmeticalStructure> {
    if r.len() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "{} labels for {} vertices",
            r.len(),
            g.n()
        )));
    }
    g.require_connected()?;
    if let Some(v) = r.iter().position(|&x| x == 0) {
        return Err(Error::InvalidStructure(format!(
            "r at `{}` must be positive",
            g.label(v)
        )));
    }
    let mut d = Vec::with_capacity(r.len());
    for (v, &rv) in r.iter().enumerate() {
        let s = neighbor_sum(g, r, v);
        if !s.is_multiple_of(rv as u128) {
            return Err(Error::InvalidStructure(format!(
                "r at `{}` is {rv}, which does not divide the neighbour sum {s}",
                g.label(v)
            )));
        }
        let dv = u64::try_from(s / rv as u128)
            .map_err(|_| Error::InvalidStructure(format!("d at `{}` overflows", g.label(v))))?;
        d.push(dv);
    }
    let gcd = r.iter().fold(0u64, |a, &b| a.gcd(&b));
    if gcd != 1 {
        return Err(Error::InvalidStructure(format!("entries of r share the factor {gcd}")));
    }
    Ok(ArithmeticalStructure { r: r.to_vec(), d })
}

/// Checks a structure against `g`, recomputing `d`.
fn check(g: &Multigraph, s: &ArithmeticalStructure) -> Result<()> {
    let fresh = validate(g, &s.r)?;
    if fresh.d != s.d {
        return Err(Error::InvalidStructure(format!(
            "d should be ({}) for r=({})",
            join(&fresh.d),
            join(&s.r)
        )));
    }
    Ok(())
}

/// Search plan: vertices in BFS order, and for each position the vertices
/// whose whole closed neighbourhood is labelled once that position is.
struct Plan {
    order: Vec<usize>,
    ready: Vec<Vec<usize>>,
}

impl Plan {
    fn new(g: &Multigraph) -> Plan {
        let n = g.n();
        let mut order = vec![0];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
        let mut pos = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        let mut ready = vec![Vec::new(); n];
        for v in 0..n {
            let last = g.neighbors(v).map(|w| pos[w]).fold(pos[v], usize::max);
            ready[last].push(v);
        }
        Plan { order, ready }
    }
}

fn search(
    g: &Multigraph,
    plan: &Plan,
    r_max: u64,
    k: usize,
    r: &mut Vec<u64>,
    out: &mut Vec<ArithmeticalStructure>,
) {
    if k == plan.order.len() {
        if let Ok(s) = validate(g, r) {
            out.push(s);
        }
        return;
    }
    let v = plan.order[k];
    for x in 1..=r_max {
        r[v] = x;
        let ok = plan.ready[k]
            .iter()
            .all(|&u| neighbor_sum(g, r, u).is_multiple_of(r[u] as u128));
        if ok {
            search(g, plan, r_max, k + 1, r, out);
        }
    }
    r[v] = 0;
}

/// Every structure on `g` with all `r` entries in `1..=r_max`, sorted by `r`.
///
/// The search labels vertices in BFS order and checks each divisibility
/// condition as soon as the vertex and its neighbours are all labelled.
pub fn enumerate(g: &Multigraph, r_max: u64) -> Result<Enumeration> {
    if r_max == 0 {
        return Err(Error::InvalidParameter("r_max must be at least 1".into()));
    }
    g.require_connected()?;
    let n = g.n();
    if n as f64 * (r_max as f64).log2() > ENUMERATION_BITS_LIMIT {
        return Err(Error::guard("n·log2(r_max)", ENUMERATION_BITS_LIMIT as u64));
    }
    let plan = Plan::new(g);
    let first = plan.order[0];
    let mut structures: Vec<ArithmeticalStructure> = (1..=r_max)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut r = vec![0; n];
            r[first] = x;
            let mut out = Vec::new();
            let ok = plan.ready[0]
                .iter()
                .all(|&u| neighbor_sum(g, &r, u).is_multiple_of(r[u] as u128));
            if ok {
                search(g, &plan, r_max, 1, &mut r, &mut out);
            }
            out
        })
        .collect();
    structures.sort();
    structures.dedup();
    Ok(Enumeration {
        r_max,
        completeness: COMPLETENESS_NOTE,
        structures,
    })
}

/// The two neighbours of `v` when it has exactly two incident edges going to
/// distinct vertices.
fn two_neighbors(g: &Multigraph, v: usize) -> Option<(usize, usize)> {
    if g.degree(v) != 2 {
        return None;
    }
    let nb: Vec<usize> = g.neighbors(v).collect();
    match nb[..] {
        [u, w] => Some((u, w)),
        _ => None,
    }
}

fn one_neighbor(g: &Multigraph, v: usize) -> Option<usize> {
    if g.degree(v) != 1 {
        return None;
    }
    g.neighbors(v).next()
}

fn smoothable(g: &Multigraph, s: &ArithmeticalStructure, v: usize) -> bool {
    if let Some((u, w)) = two_neighbors(g, v) {
        return s.r[v] > s.r[u] && s.r[v] > s.r[w];
    }
    one_neighbor(g, v).is_some_and(|u| s.r[v] == s.r[u])
}

/// True when no vertex admits a smoothing step.
pub fn is_smooth(g: &Multigraph, s: &ArithmeticalStructure) -> bool {
    (0..g.n()).all(|v| !smoothable(g, s, v))
}

/// Removes `v`: a degree-2 vertex is replaced by an edge between its
/// neighbours, a degree-1 vertex is simply deleted.
pub fn smooth_at(
    g: &Multigraph,
    s: &ArithmeticalStructure,
    v: usize,
) -> Result<(Multigraph, ArithmeticalStructure)> {
    check(g, s)?;
    g.check_index(v)?;
    if !smoothable(g, s, v) {
        return Err(Error::InvalidParameter(format!(
            "no smoothing applies at `{}`",
            g.label(v)
        )));
    }
    let mut h = g.without_vertex(v)?;
    if let Some((u, w)) = two_neighbors(g, v) {
        let shift = |x: usize| if x > v { x - 1 } else { x };
        h.add_edges(shift(u), shift(w), 1)?;
    }
    let r: Vec<u64> = (0..g.n()).filter(|&i| i != v).map(|i| s.r[i]).collect();
    let t = validate(&h, &r)?;
    Ok((h, t))
}

/// Smooths repeatedly (lowest vertex first) until no step applies.
pub fn smooth_fully(
    g: &Multigraph,
    s: &ArithmeticalStructure,
) -> Result<(Multigraph, ArithmeticalStructure)> {
    let (mut h, mut t) = (g.clone(), s.clone());
    while let Some(v) = (0..h.n()).find(|&v| smoothable(&h, &t, v)) {
        (h, t) = smooth_at(&h, &t, v)?;
    }
    Ok((h, t))
}

/// `x_ij·r_i·r_j` edges between `i` and `j`.
pub fn g_r(g: &Multigraph, s: &ArithmeticalStructure) -> Result<Multigraph> {
    if s.len() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "structure on {} vertices for a graph on {}",
            s.len(),
            g.n()
        )));
    }
    let mut h = Multigraph::edgeless(g.labels().iter().cloned())?;
    for (i, j, m) in g.edges() {
        let scaled = m
            .checked_mul(s.r[i])
            .and_then(|x| x.checked_mul(s.r[j]))
            .ok_or_else(|| Error::InvalidParameter("edge multiplicity overflows".into()))?;
        h.add_edges(i, j, scaled)?;
    }
    Ok(h)
}

/// Torsion of the cokernel of `diag(d) − A`.
pub fn critical_group_arith(g: &Multigraph, s: &ArithmeticalStructure) -> Result<AbelianGroup> {
    check(g, s)?;
    Ok(cokernel(&s.matrix(g)).torsion)
}

fn r_power(r: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(r));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// `∏ x_ij · ∏ r_i^(deg_i − 2)` where `deg_i` counts distinct neighbours;
/// requires the underlying simple graph to be a tree.
pub fn order_formula_tree(g: &Multigraph, s: &ArithmeticalStructure) -> Result<BigRational> {
    check(g, s)?;
    let edges = g.edges();
    if edges.len() + 1 != g.n() {
        return Err(Error::InvalidParameter(
            "underlying simple graph is not a tree".into(),
        ));
    }
    let mut value = BigRational::one();
    for &(_, _, m) in &edges {
        value *= BigRational::from_integer(BigInt::from(m));
    }
    for v in 0..g.n() {
        value *= r_power(s.r[v], g.neighbors(v).count() as i64 - 2);
    }
    Ok(value)
}

/// Sum over spanning trees `T` of `∏ r_i^(deg_T(i) − 2)`.
pub fn order_formula_spanning(g: &Multigraph, s: &ArithmeticalStructure) -> Result<BigRational> {
    check(g, s)?;
    let mut total = BigRational::zero();
    for tree in spanning_tree_enumerate(g)? {
        let mut deg = vec![0i64; g.n()];
        for (u, v, _) in tree {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut term = BigRational::one();
        for (&r, &k) in s.r.iter().zip(&deg) {
            term *= r_power(r, k - 2);
        }
        total += term;
    }
    Ok(total)
}
