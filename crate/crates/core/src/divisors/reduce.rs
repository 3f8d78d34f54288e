//! q-reduced divisors.
//!
//! [`q_reduce`] runs in three phases:
//!
//! 1. If some entry is large, subtract `L·⌊L_q⁻¹ D⌋` (computed exactly over
//!    the rationals, `L_q` the reduced Laplacian). This leaves every entry off
//!    `q` below twice its degree in absolute value.
//! 2. Clear debt off `q` layer by layer. With `S_j` the vertices at distance
//!    `< j` from `q`, firing `S_j` only adds chips to layer `j` and only removes
//!    chips from `S_j`. Going from the farthest layer inwards, each layer is
//!    made nonnegative by firing `S_j` just often enough and is never touched
//!    again.
//! 3. Dhar's burning algorithm: light `q`; a vertex burns once its edges to
//!    burnt vertices outnumber its chips. If everything burns the divisor is
//!    reduced. Otherwise the unburnt set `U` can fire without debt, and is
//!    fired as many times as stays legal.
//!
//! Phase 3 terminates: every firing keeps the divisor nonnegative off `q` and
//! never increases the chips off `q`, so only finitely many divisors are
//! reachable. None repeats, because a cycle would give a nonzero firing script
//! `σ ≥ 0` with `σ(q) = 0` and `L·σ = 0`, which only constants satisfy.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{default_q, to_big, Divisor};
use crate::critgrp::spanning_tree_count;
use crate::error::{Error, Result};
use crate::exactla::solve_rational;
use crate::graphs::Multigraph;

/// Largest vertex count for [`is_q_reduced_exhaustive`].
pub const EXHAUSTIVE_LIMIT: usize = 20;
/// Largest critical group order for [`list_q_reduced_degree0`].
pub const LISTING_LIMIT: u64 = 100_000;

/// The unique q-reduced divisor equivalent to `d`.
pub fn q_reduce(g: &Multigraph, d: &Divisor, q: usize) -> Result<Divisor> {
    g.require_connected()?;
    g.check_index(q)?;
    d.check_len(g.n())?;
    let mut d = d.clone();
    if needs_lattice_step(g, &d, q) {
        d = lattice_step(g, &d, q)?;
    }
    clear_debt(g, &mut d, q);
    burn_down(g, &mut d, q);
    Ok(d)
}

fn needs_lattice_step(g: &Multigraph, d: &Divisor, q: usize) -> bool {
    let bound = 4 * (g.edge_count() as i64 + 1);
    d.values()
        .iter()
        .enumerate()
        .any(|(v, &x)| v != q && x.abs() > bound)
}

fn lattice_step(g: &Multigraph, d: &Divisor, q: usize) -> Result<Divisor> {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| v != q).collect();
    let x: Vec<BigInt> = keep.iter().map(|&v| BigInt::from(d[v])).collect();
    let y = solve_rational(&g.reduced_laplacian(q, q)?, &x)?
        .expect("reduced Laplacian of a connected graph is nonsingular");
    let mut f = vec![BigInt::from(0); g.n()];
    for (&v, yv) in keep.iter().zip(y.entries()) {
        f[v] = yv.numer().div_floor(yv.denom());
    }
    let lf = g.laplacian().mul_vec(&f)?;
    let big = to_big(d.values());
    big.iter()
        .zip(&lf)
        .map(|(a, b)| {
            (a - b)
                .to_i64()
                .ok_or_else(|| Error::InvalidParameter("divisor value exceeds 64 bits".into()))
        })
        .collect::<Result<Vec<_>>>()
        .map(Divisor::new)
}

fn clear_debt(g: &Multigraph, d: &mut Divisor, q: usize) {
    let dist: Vec<usize> = g
        .distances_from(q)
        .into_iter()
        .map(|x| x.expect("connected"))
        .collect();
    let far = dist.iter().copied().max().unwrap_or(0);
    for j in (1..=far).rev() {
        // edges from each layer-j vertex into S_j = {dist < j}
        let times = (0..g.n())
            .filter(|&v| dist[v] == j && d[v] < 0)
            .map(|v| {
                let inward: i64 = g
                    .neighbors(v)
                    .filter(|&w| dist[w] < j)
                    .map(|w| g.mult(v, w) as i64)
                    .sum();
                Integer::div_ceil(&-d[v], &inward)
            })
            .max()
            .unwrap_or(0);
        if times == 0 {
            continue;
        }
        let vals = d.values_mut();
        for (a, b, m) in g.edges() {
            let m = m as i64 * times;
            match (dist[a] < j, dist[b] < j) {
                (true, false) => {
                    vals[a] -= m;
                    vals[b] += m;
                }
                (false, true) => {
                    vals[b] -= m;
                    vals[a] += m;
                }
                _ => {}
            }
        }
    }
}

/// Unburnt vertices left by Dhar's algorithm started at `q`.
fn unburnt(g: &Multigraph, d: &Divisor, q: usize) -> Vec<bool> {
    let n = g.n();
    let mut burnt = vec![false; n];
    let mut heat = vec![0i64; n];
    burnt[q] = true;
    let mut queue = VecDeque::from([q]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if burnt[w] {
                continue;
            }
            heat[w] += g.mult(u, w) as i64;
            if heat[w] > d[w] {
                burnt[w] = true;
                queue.push_back(w);
            }
        }
    }
    burnt.into_iter().map(|b| !b).collect()
}

fn burn_down(g: &Multigraph, d: &mut Divisor, q: usize) {
    loop {
        let set = unburnt(g, d, q);
        if !set.contains(&true) {
            return;
        }
        // out[v]: edges from v ∈ U to the burnt part
        let mut out = vec![0i64; g.n()];
        for (a, b, m) in g.edges() {
            if set[a] != set[b] {
                let inside = if set[a] { a } else { b };
                out[inside] += m as i64;
            }
        }
        let times = (0..g.n())
            .filter(|&v| set[v] && out[v] > 0)
            .map(|v| d[v] / out[v])
            .min()
            .expect("U is a proper subset of a connected graph");
        debug_assert!(times >= 1);
        let vals = d.values_mut();
        for (a, b, m) in g.edges() {
            if set[a] != set[b] {
                let (inside, outside) = if set[a] { (a, b) } else { (b, a) };
                vals[inside] -= m as i64 * times;
                vals[outside] += m as i64 * times;
            }
        }
    }
}

/// Dhar's test: nonnegative off `q` and the fire from `q` burns everything.
pub fn is_q_reduced(g: &Multigraph, d: &Divisor, q: usize) -> Result<bool> {
    g.check_index(q)?;
    d.check_len(g.n())?;
    if (0..g.n()).any(|v| v != q && d[v] < 0) {
        return Ok(false);
    }
    Ok(!unburnt(g, d, q).contains(&true))
}

/// The definition checked directly: every nonempty `A ⊆ V ∖ {q}`, when fired,
/// puts some vertex of `A` in debt.
pub fn is_q_reduced_exhaustive(g: &Multigraph, d: &Divisor, q: usize) -> Result<bool> {
    g.check_index(q)?;
    d.check_len(g.n())?;
    let n = g.n();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::guard("vertex count for subset check", EXHAUSTIVE_LIMIT as u64));
    }
    if (0..n).any(|v| v != q && d[v] < 0) {
        return Ok(false);
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != q).collect();
    for mask in 1u32..(1 << others.len()) {
        let mut inside = vec![false; n];
        for (k, &v) in others.iter().enumerate() {
            inside[v] = mask >> k & 1 == 1;
        }
        let legal = (0..n).filter(|&v| inside[v]).all(|v| {
            let out: i64 = g
                .neighbors(v)
                .filter(|&w| !inside[w])
                .map(|w| g.mult(v, w) as i64)
                .sum();
            d[v] >= out
        });
        if legal {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same degree and same reduced form at the default base vertex.
pub fn equivalent(g: &Multigraph, d1: &Divisor, d2: &Divisor) -> Result<bool> {
    d1.check_len(g.n())?;
    d2.check_len(g.n())?;
    if d1.degree() != d2.degree() {
        return Ok(false);
    }
    let q = default_q(g);
    Ok(q_reduce(g, d1, q)? == q_reduce(g, d2, q)?)
}

/// All q-reduced divisors of degree 0, one per element of `K(G)`, in
/// descending lexicographic order.
pub fn list_q_reduced_degree0(g: &Multigraph, q: usize) -> Result<Vec<Divisor>> {
    g.require_connected()?;
    g.check_index(q)?;
    let order = spanning_tree_count(g);
    if order > BigInt::from(LISTING_LIMIT) {
        return Err(Error::guard("critical group order for listing", LISTING_LIMIT));
    }
    let n = g.n();
    let start = Divisor::zero(n);
    let mut seen: HashSet<Divisor> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(d) = queue.pop_front() {
        for v in (0..n).filter(|&v| v != q) {
            let next = q_reduce(g, &(&d + &Divisor::delta(n, v, q)), q)?;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let sorted: BTreeSet<Divisor> = seen.into_iter().collect();
    Ok(sorted.into_iter().rev().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{family, Family};

    fn diamond() -> Multigraph {
        family(Family::Diamond).unwrap()
    }

    fn dv(v: &[i64]) -> Divisor {
        Divisor::new(v.to_vec())
    }

    #[test]
    fn diamond_listing_at_v1() {
        // labelled so that v1 and v3 carry the degree-3 vertices
        let g = Multigraph::from_edges(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (2, 3, 1)])
            .unwrap();
        let got = list_q_reduced_degree0(&g, 0).unwrap();
        let mut want = vec![
            dv(&[0, 0, 0, 0]),
            dv(&[-1, 1, 0, 0]),
            dv(&[-1, 0, 1, 0]),
            dv(&[-1, 0, 0, 1]),
            dv(&[-2, 1, 1, 0]),
            dv(&[-2, 1, 0, 1]),
            dv(&[-2, 0, 1, 1]),
            dv(&[-2, 0, 2, 0]),
        ];
        want.sort();
        want.reverse();
        assert_eq!(got, want);
        assert_eq!(list_q_reduced_degree0(&diamond(), 1).unwrap().len(), 8);
        let tree = family(Family::Path(4)).unwrap();
        assert_eq!(list_q_reduced_degree0(&tree, 3).unwrap(), vec![Divisor::zero(4)]);
    }

    #[test]
    fn figure_examples() {
        let g = diamond();
        assert!(is_q_reduced(&g, &dv(&[-2, 1, 1, 0]), 0).unwrap());
        assert!(is_q_reduced(&g, &dv(&[-2, 0, 0, 2]), 0).unwrap());
        // v3 has degree 2 here and can fire alone
        assert!(!is_q_reduced(&g, &dv(&[-2, 0, 2, 0]), 0).unwrap());
        assert!(!is_q_reduced(&g, &dv(&[-3, 1, 1, 1]), 0).unwrap());
        let r = q_reduce(&g, &dv(&[-3, 1, 1, 1]), 0).unwrap();
        assert_ne!(r, dv(&[-3, 1, 1, 1]));
        assert!(is_q_reduced(&g, &r, 0).unwrap());
        // δ(v) ≥ deg(v) somewhere off q
        assert!(!is_q_reduced(&g, &dv(&[0, 2, 0, -2]), 0).unwrap());
    }

    #[test]
    fn effective_figure_pair() {
        let g = diamond();
        assert!(equivalent(&g, &dv(&[-1, 2, 2, -2]), &dv(&[1, 0, 0, 0])).unwrap());
        assert!(!equivalent(&g, &dv(&[1, 0, 0, 0]), &dv(&[0, 0, 0, 0])).unwrap());
    }

    #[test]
    fn large_entries_take_the_lattice_step() {
        let g = diamond();
        let d = dv(&[-1_000_000_007, 999_999_999, 5, 3]);
        let r = q_reduce(&g, &d, 3).unwrap();
        assert!(is_q_reduced(&g, &r, 3).unwrap());
        assert_eq!(r.degree(), d.degree());
        let small = dv(&[0, 0, 0, 0]);
        assert_eq!(q_reduce(&g, &small, 3).unwrap(), small);
    }

    #[test]
    fn exhaustive_guard() {
        let g = family(Family::Path(21)).unwrap();
        assert!(is_q_reduced_exhaustive(&g, &Divisor::zero(21), 0).is_err());
    }

    mod props {
        use super::*;
        use crate::divisors::fire;
        use proptest::prelude::*;

        fn connected_graph() -> impl Strategy<Value = Multigraph> {
            (2usize..=6).prop_flat_map(|n| {
                proptest::collection::vec(0u64..=2, n * (n - 1) / 2).prop_map(move |ms| {
                    let mut g = Multigraph::numbered(n);
                    let mut k = 0;
                    for i in 0..n {
                        for j in i + 1..n {
                            g.add_edges(i, j, ms[k]).unwrap();
                            k += 1;
                        }
                    }
                    // a spanning path keeps it connected
                    for i in 1..n {
                        if g.mult(i - 1, i) == 0 {
                            g.add_edges(i - 1, i, 1).unwrap();
                        }
                    }
                    g
                })
            })
        }

        proptest! {
            #[test]
            fn reduced_and_class_constant(g in connected_graph(),
                                          vals in proptest::collection::vec(-8i64..=8, 6),
                                          script in proptest::collection::vec(0usize..6, 0..12),
                                          qi in 0usize..6) {
                let n = g.n();
                let q = qi % n;
                let d = Divisor::new(vals[..n].to_vec());
                let r = q_reduce(&g, &d, q).unwrap();
                prop_assert!(is_q_reduced(&g, &r, q).unwrap());
                prop_assert_eq!(r.degree(), d.degree());
                prop_assert_eq!(q_reduce(&g, &r, q).unwrap(), r.clone());
                let mut e = d.clone();
                for &v in &script {
                    e = fire(&g, &e, v % n).unwrap();
                }
                prop_assert_eq!(q_reduce(&g, &e, q).unwrap(), r);
            }

            #[test]
            fn dhar_matches_definition(g in connected_graph(),
                                       vals in proptest::collection::vec(-3i64..=3, 6),
                                       qi in 0usize..6) {
                let n = g.n();
                let d = Divisor::new(vals[..n].to_vec());
                prop_assert_eq!(
                    is_q_reduced(&g, &d, qi % n).unwrap(),
                    is_q_reduced_exhaustive(&g, &d, qi % n).unwrap()
                );
            }
        }
    }
}
