//! Critical groups, spanning trees and the structural predictions built on them.

mod group;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::divisors::Divisor;
use crate::error::{Error, Result};
use crate::exactla::{determinant, eval_charpoly, smith_diagonal, smith_normal_form, IntMatrix};
use crate::graphs::{toggle_edge, DirectedMultigraph, Multigraph};
use crate::util::combinations;

pub use group::{is_prime, AbelianGroup, CokernelResult};

/// Largest edge count accepted by [`spanning_tree_enumerate`].
pub const TREE_ENUMERATION_LIMIT: u64 = 20;

/// Torsion part of the SNF diagonal (entries > 1).
pub fn torsion_from_diagonal(diag: &[BigInt]) -> AbelianGroup {
    AbelianGroup::from_cyclic_factors(diag.iter().filter(|d| !d.is_zero()).cloned())
        .expect("SNF diagonal is nonnegative")
}

/// `Z^m / image(M)` for an `m × n` matrix.
pub fn cokernel(m: &IntMatrix) -> CokernelResult {
    let diag = smith_diagonal(m);
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    CokernelResult {
        free_rank: m.rows() - rank,
        torsion: torsion_from_diagonal(&diag),
    }
}

/// `K(G)`, read off the reduced Laplacian at the last vertex.
pub fn critical_group(g: &Multigraph) -> Result<AbelianGroup> {
    g.require_connected()?;
    let last = g.n() - 1;
    Ok(cokernel(&g.reduced_laplacian(last, last)?).torsion)
}

/// Cokernel of the Laplacian with row `i` and column `j` deleted.
pub fn reduced_cokernel(g: &Multigraph, i: usize, j: usize) -> Result<CokernelResult> {
    Ok(cokernel(&g.reduced_laplacian(i, j)?))
}

/// Cokernel of the full directed Laplacian.
pub fn directed_critical_group(g: &DirectedMultigraph) -> CokernelResult {
    cokernel(&g.laplacian())
}

/// Number of spanning trees (parallel edges distinguished); 0 when disconnected.
pub fn spanning_tree_count(g: &Multigraph) -> BigInt {
    if !g.is_connected() {
        return BigInt::zero();
    }
    let last = g.n() - 1;
    let l0 = g.reduced_laplacian(last, last).expect("index in range");
    determinant(&l0).expect("square").abs()
}

/// One parallel copy of an edge: endpoints `u < v` and the copy index.
pub type EdgeCopy = (usize, usize, u64);

/// Every spanning tree as a list of edge copies, by brute force over
/// `(n − 1)`-subsets of the edge copies.
pub fn spanning_tree_enumerate(g: &Multigraph) -> Result<Vec<Vec<EdgeCopy>>> {
    let e = g.edge_count();
    if e > TREE_ENUMERATION_LIMIT {
        return Err(Error::guard("edge count for tree enumeration", TREE_ENUMERATION_LIMIT));
    }
    let n = g.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let units: Vec<EdgeCopy> = g
        .edges()
        .into_iter()
        .flat_map(|(u, v, m)| (0..m).map(move |c| (u, v, c)))
        .collect();
    let mut trees = Vec::new();
    for subset in combinations(units.len(), n - 1) {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let acyclic = subset.iter().all(|&k| {
            let (u, v, _) = units[k];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
            a != b
        });
        // n − 1 edges without a cycle on n vertices always span
        if acyclic {
            trees.push(subset.iter().map(|&k| units[k]).collect());
        }
    }
    Ok(trees)
}

/// Least `m ≥ 1` with `m·D` principal, from the SNF of the reduced Laplacian at `q`.
pub fn element_order(g: &Multigraph, d: &Divisor, q: usize) -> Result<BigInt> {
    g.require_connected()?;
    g.check_index(q)?;
    d.check_len(g.n())?;
    if d.degree() != 0 {
        return Err(Error::NonzeroDegree(d.degree()));
    }
    let snf = smith_normal_form(&g.reduced_laplacian(q, q)?);
    let restricted: Vec<BigInt> = (0..g.n())
        .filter(|&v| v != q)
        .map(|v| BigInt::from(d[v]))
        .collect();
    let c = snf.u.mul_vec(&restricted)?;
    Ok(snf
        .diag
        .iter()
        .zip(&c)
        .fold(BigInt::one(), |acc, (s, ci)| acc.lcm(&(s / s.gcd(ci)))))
}

/// Outcome of toggling the edge `xy` and comparing critical group orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorTest {
    /// `gcd(|K(G)|, |K(G′)|)` with `G′` the toggled graph.
    pub gcd: BigInt,
    /// Index of the subgroup generated by `δ_xy = e_x − e_y`.
    pub index: BigInt,
    pub generates: bool,
}

pub fn delta_generator_test(g: &Multigraph, x: usize, y: usize) -> Result<GeneratorTest> {
    g.require_connected()?;
    let toggled = toggle_edge(g, x, y)?;
    toggled.require_connected()?;
    let order = spanning_tree_count(g);
    let gcd = order.gcd(&spanning_tree_count(&toggled));
    let delta = Divisor::delta(g.n(), x, y);
    let index = &order / element_order(g, &delta, x)?;
    Ok(GeneratorTest {
        generates: index.is_one(),
        gcd,
        index,
    })
}

/// `|p_L(−m)| / m · (m + k)^(m−1)` where `p_L` is the characteristic polynomial of
/// `L(G)` and `k = |V(G)|`: the order of the critical group of the `m`-th cone.
pub fn cone_order_formula(g: &Multigraph, m: usize) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::InvalidParameter("cone size must be ≥ 1".into()));
    }
    let p = eval_charpoly(&g.laplacian(), &-BigInt::from(m))?.abs();
    let (quot, rem) = p.div_rem(&BigInt::from(m));
    assert!(rem.is_zero(), "m must divide p(−m)");
    Ok(quot * BigInt::from(m + g.n()).pow(m as u32 - 1))
}

/// `F_n` with `F_1 = F_2 = 1`.
pub fn fibonacci(n: usize) -> BigInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// `Z/d ⊕ Z/F_n ⊕ Z/(n·F_n/d)` with `d = gcd(n, F_n)`: the predicted group of `C_n(1, 2)`.
pub fn predicted_circulant_group(n: usize) -> Result<AbelianGroup> {
    if n < 5 {
        return Err(Error::InvalidParameter(format!(
            "circulant prediction needs n ≥ 5, got {n}"
        )));
    }
    let f = fibonacci(n);
    let nb = BigInt::from(n);
    let d = nb.gcd(&f);
    let last = &nb * &f / &d;
    AbelianGroup::from_cyclic_factors([d, f, last])
}

/// Critical group after subdividing every edge into `k`: with `H` padded by 1's
/// to `g` factors `m_i`, the result is `⊕ Z/(k·m_i)`.
pub fn subdivision_predict(h: &AbelianGroup, genus: u64, k: u64) -> Result<AbelianGroup> {
    if k == 0 {
        return Err(Error::InvalidParameter("subdivision factor must be ≥ 1".into()));
    }
    if h.rank() as u64 > genus {
        return Err(Error::InvalidParameter(format!(
            "group rank {} exceeds genus {genus}",
            h.rank()
        )));
    }
    let k = BigInt::from(k);
    let ones = std::iter::repeat_n(BigInt::one(), genus as usize - h.rank());
    AbelianGroup::from_cyclic_factors(ones.chain(h.factors().iter().cloned()).map(|m| m * &k))
}

pub fn sylow(h: &AbelianGroup, p: u64) -> Result<AbelianGroup> {
    h.sylow(p)
}
