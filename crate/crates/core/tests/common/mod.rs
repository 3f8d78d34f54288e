//! Graph generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use chipfire::exactla::{determinant, IntMatrix};
use chipfire::graphs::{family, Family};
use chipfire::Multigraph;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fam(kind: Family) -> Multigraph {
    family(kind).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Every connected multigraph on `n` labelled vertices with at most
/// `max_edges` edges counted with multiplicity.
pub fn connected_multigraphs(n: usize, max_edges: u64) -> Vec<Multigraph> {
    let slots = pairs(n);
    let mut out = Vec::new();
    let mut mult = vec![0u64; slots.len()];
    fn rec(
        k: usize,
        left: u64,
        n: usize,
        slots: &[(usize, usize)],
        mult: &mut Vec<u64>,
        out: &mut Vec<Multigraph>,
    ) {
        if k == slots.len() {
            let edges: Vec<_> = slots
                .iter()
                .zip(mult.iter())
                .filter(|(_, &m)| m > 0)
                .map(|(&(i, j), &m)| (i, j, m))
                .collect();
            let g = Multigraph::from_edges(n, &edges).unwrap();
            if g.is_connected() {
                out.push(g);
            }
            return;
        }
        for m in 0..=left {
            mult[k] = m;
            rec(k + 1, left - m, n, slots, mult, out);
        }
        mult[k] = 0;
    }
    rec(0, max_edges, n, &slots, &mut mult, &mut out);
    out
}

fn graph_from_mask(n: usize, mask: u32) -> Multigraph {
    let edges: Vec<_> = pairs(n)
        .into_iter()
        .enumerate()
        .filter(|(b, _)| mask >> b & 1 == 1)
        .map(|(_, (i, j))| (i, j, 1))
        .collect();
    Multigraph::from_edges(n, &edges).unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative of each isomorphism class of connected simple graphs on
/// `n` vertices.
pub fn connected_simple_graphs(n: usize) -> Vec<Multigraph> {
    let slots = pairs(n);
    let index = |i: usize, j: usize| {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        slots.iter().position(|&s| s == (a, b)).unwrap()
    };
    let perms = permutations(n);
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| slots.iter().map(|&(i, j)| index(p[i], p[j])).collect())
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0..1u32 << slots.len() {
        let canon = maps
            .iter()
            .map(|map| {
                map.iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .fold(0u32, |acc, (_, &t)| acc | 1 << t)
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let g = graph_from_mask(n, canon);
            if g.is_connected() {
                out.push(g);
            }
        }
    }
    out
}

/// Random connected multigraph on `2..=max_n` vertices: a random spanning tree
/// plus a few extra edges, multiplicities up to 2.
pub fn random_connected(rng: &mut ChaCha8Rng, max_n: usize, extra: usize) -> Multigraph {
    let n = rng.random_range(1..=max_n);
    let mut g = Multigraph::numbered(n);
    for v in 1..n {
        let u = rng.random_range(0..v);
        g.add_edges(u, v, rng.random_range(1..=2)).unwrap();
    }
    if n >= 2 {
        for _ in 0..rng.random_range(0..=extra) {
            let u = rng.random_range(0..n);
            let v = rng.random_range(0..n);
            if u != v {
                g.add_edges(u, v, 1).unwrap();
            }
        }
    }
    g
}

/// Every labelled tree on `n` vertices, decoded from Prüfer sequences.
pub fn labelled_trees(n: usize) -> Vec<Multigraph> {
    if n <= 2 {
        return vec![fam(Family::Path(n))];
    }
    let mut out = Vec::new();
    let total = n.pow(n as u32 - 2);
    for mut code in 0..total {
        let seq: Vec<usize> = (0..n - 2)
            .map(|_| {
                let x = code % n;
                code /= n;
                x
            })
            .collect();
        let mut degree = vec![1; n];
        for &x in &seq {
            degree[x] += 1;
        }
        let mut g = Multigraph::numbered(n);
        for &x in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            g.add_edges(leaf, x, 1).unwrap();
            degree[leaf] -= 1;
            degree[x] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        g.add_edges(rest[0], rest[1], 1).unwrap();
        out.push(g);
    }
    out
}

/// Invertible symmetric `m × m` matrices over `F_p`, counted one by one.
pub fn invertible_symmetric_brute(m: usize, p: u64) -> u64 {
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let total = p.pow(cells.len() as u32);
    let pb = BigInt::from(p);
    (0..total)
        .filter(|&code| {
            let mut a = IntMatrix::zeros(m, m);
            let mut rest = code;
            for &(i, j) in &cells {
                let x = BigInt::from(rest % p);
                rest /= p;
                a[(i, j)] = x.clone();
                a[(j, i)] = x;
            }
            !(determinant(&a).unwrap() % &pb).is_zero()
        })
        .count() as u64
}
