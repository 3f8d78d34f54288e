//! Finite multigraphs (undirected and directed) and their matrices.

mod families;
mod io;
mod ops;

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactla::IntMatrix;

pub use families::{family, Family};
pub use io::{parse_graph, write_graph, Graph};
pub use ops::{cone, realize_group, subdivide, subdivide_edge, toggle_edge, wedge};

/// Undirected multigraph without self-loops. Vertex `i` is `labels[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    labels: Vec<String>,
    mult: Vec<u64>,
}

impl Multigraph {
    /// Edgeless graph on the given (distinct) labels.
    pub fn edgeless<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_labels(&labels)?;
        let n = labels.len();
        Ok(Multigraph {
            labels,
            mult: vec![0; n * n],
        })
    }

    /// Edgeless graph on `v1..vn`.
    pub fn numbered(n: usize) -> Self {
        Self::edgeless((1..=n).map(|i| format!("v{i}"))).expect("distinct labels")
    }

    /// Graph on `v1..vn` with the given index edges `(i, j, multiplicity)`.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let mut g = Self::numbered(n);
        for &(i, j, m) in edges {
            g.add_edges(i, j, m)?;
        }
        Ok(g)
    }

    /// Adds `m` parallel edges between `i` and `j`.
    pub fn add_edges(&mut self, i: usize, j: usize, m: u64) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::InvalidParameter(format!(
                "self-loop at `{}`",
                self.labels[i]
            )));
        }
        let n = self.n();
        self.mult[i * n + j] += m;
        self.mult[j * n + i] += m;
        Ok(())
    }

    pub(crate) fn set_mult(&mut self, i: usize, j: usize, m: u64) {
        let n = self.n();
        self.mult[i * n + j] = m;
        self.mult[j * n + i] = m;
    }

    /// Appends an isolated vertex and returns its index.
    pub fn add_vertex(&mut self, label: impl Into<String>) -> Result<usize> {
        let label = label.into();
        if self.labels.contains(&label) {
            return Err(Error::InvalidParameter(format!("duplicate label `{label}`")));
        }
        let n = self.n();
        let mut mult = vec![0; (n + 1) * (n + 1)];
        for i in 0..n {
            mult[i * (n + 1)..i * (n + 1) + n].copy_from_slice(&self.mult[i * n..(i + 1) * n]);
        }
        self.mult = mult;
        self.labels.push(label);
        Ok(n)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                size: self.n(),
            })
        }
    }

    #[inline]
    pub fn mult(&self, i: usize, j: usize) -> u64 {
        self.mult[i * self.n() + j]
    }

    pub fn degree(&self, i: usize) -> u64 {
        let n = self.n();
        self.mult[i * n..(i + 1) * n].iter().sum()
    }

    pub fn edge_count(&self) -> u64 {
        self.edges().iter().map(|e| e.2).sum()
    }

    /// `(i, j, multiplicity)` with `i < j`, for every adjacent pair.
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let m = self.mult(i, j);
                if m > 0 {
                    out.push((i, j, m));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&j| self.mult(i, j) > 0)
    }

    pub fn adjacency(&self) -> IntMatrix {
        let n = self.n();
        let data = self.mult.iter().map(|&m| BigInt::from(m)).collect();
        IntMatrix::from_vec(n, n, data).expect("square table")
    }

    /// `L = D − A`.
    pub fn laplacian(&self) -> IntMatrix {
        let n = self.n();
        let mut l = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                l[(i, j)] = if i == j {
                    BigInt::from(self.degree(i))
                } else {
                    -BigInt::from(self.mult(i, j))
                };
            }
        }
        l
    }

    /// Laplacian with row `i` and column `j` removed.
    pub fn reduced_laplacian(&self, i: usize, j: usize) -> Result<IntMatrix> {
        self.laplacian().without_row_col(i, j)
    }

    /// Vertex sets of the connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut part = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        part.push(w);
                        queue.push_back(w);
                    }
                }
            }
            part.sort_unstable();
            parts.push(part);
        }
        parts
    }

    /// Connected and nonempty.
    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.connected_components().len() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// `|E| − |V| + 1`, the cycle rank.
    pub fn genus(&self) -> Result<u64> {
        self.require_connected()?;
        Ok(self.edge_count() + 1 - self.n() as u64)
    }

    /// Breadth-first distances from `q` (`None` for unreachable vertices).
    pub fn distances_from(&self, q: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[q] = Some(0);
        let mut queue = VecDeque::from([q]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have a distance");
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Copy with vertex `v` and its edges removed.
    pub fn without_vertex(&self, v: usize) -> Result<Self> {
        self.check_index(v)?;
        let keep: Vec<usize> = (0..self.n()).filter(|&i| i != v).collect();
        let mut mult = Vec::with_capacity(keep.len() * keep.len());
        for &i in &keep {
            mult.extend(keep.iter().map(|&j| self.mult(i, j)));
        }
        Ok(Multigraph {
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            mult,
        })
    }

    /// Same graph with new labels (same length, distinct).
    pub fn relabeled<S: Into<String>>(&self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        check_labels(&labels)?;
        Ok(Multigraph {
            labels,
            mult: self.mult.clone(),
        })
    }

    /// A label not yet in use, of the form `{prefix}{k}` with the smallest `k ≥ start`.
    pub(crate) fn fresh_label(&self, prefix: &str, start: usize) -> (String, usize) {
        let mut k = start;
        loop {
            let l = format!("{prefix}{k}");
            if !self.labels.contains(&l) {
                return (l, k);
            }
            k += 1;
        }
    }
}

/// Directed multigraph without self-loops; `mult(i, j)` counts edges `i → j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedMultigraph {
    labels: Vec<String>,
    mult: Vec<u64>,
}

impl DirectedMultigraph {
    pub fn edgeless<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        check_labels(&labels)?;
        let n = labels.len();
        Ok(DirectedMultigraph {
            labels,
            mult: vec![0; n * n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, u64)]) -> Result<Self> {
        let mut g = Self::edgeless((1..=n).map(|i| format!("v{i}")))?;
        for &(i, j, m) in edges {
            g.add_edges(i, j, m)?;
        }
        Ok(g)
    }

    pub fn add_edges(&mut self, from: usize, to: usize, m: u64) -> Result<()> {
        for i in [from, to] {
            if i >= self.n() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    size: self.n(),
                });
            }
        }
        if from == to {
            return Err(Error::InvalidParameter(format!(
                "self-loop at `{}`",
                self.labels[from]
            )));
        }
        let n = self.n();
        self.mult[from * n + to] += m;
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn mult(&self, from: usize, to: usize) -> u64 {
        self.mult[from * self.n() + to]
    }

    pub fn out_degree(&self, i: usize) -> u64 {
        let n = self.n();
        self.mult[i * n..(i + 1) * n].iter().sum()
    }

    /// `(from, to, multiplicity)` for every nonzero entry, in index order.
    pub fn edges(&self) -> Vec<(usize, usize, u64)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let m = self.mult(i, j);
                (m > 0).then_some((i, j, m))
            })
            .collect()
    }

    /// `D − A` with `D` the out-degrees; rows sum to zero.
    pub fn laplacian(&self) -> IntMatrix {
        let n = self.n();
        let mut l = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                l[(i, j)] = if i == j {
                    BigInt::from(self.out_degree(i))
                } else {
                    -BigInt::from(self.mult(i, j))
                };
            }
        }
        l
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if l.is_empty() || l.chars().any(char::is_whitespace) {
            return Err(Error::InvalidParameter(format!("bad vertex label `{l}`")));
        }
        if seen.insert(l.as_str(), i).is_some() {
            return Err(Error::InvalidParameter(format!("duplicate label `{l}`")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{determinant, rational_null_space};
    use num_traits::Zero;

    fn diamond() -> Multigraph {
        family(Family::Diamond).unwrap()
    }

    #[test]
    fn diamond_laplacian_matches_fixture() {
        let l = diamond().laplacian();
        assert_eq!(
            l,
            IntMatrix::from_rows([
                [3, -1, -1, -1],
                [-1, 2, 0, -1],
                [-1, 0, 2, -1],
                [-1, -1, -1, 3],
            ])
        );
    }

    #[test]
    fn small_laplacians() {
        let k2 = Multigraph::from_edges(2, &[(0, 1, 1)]).unwrap();
        assert_eq!(k2.laplacian(), IntMatrix::from_rows([[1, -1], [-1, 1]]));
        assert_eq!(k2.reduced_laplacian(1, 1).unwrap(), IntMatrix::from_rows([[1]]));
        assert_eq!(Multigraph::numbered(1).laplacian(), IntMatrix::from_rows([[0]]));
        assert!(k2.reduced_laplacian(2, 0).is_err());
    }

    #[test]
    fn directed_laplacians() {
        let two_cycle = DirectedMultigraph::from_edges(2, &[(0, 1, 1), (1, 0, 1)]).unwrap();
        assert_eq!(two_cycle.laplacian(), IntMatrix::from_rows([[1, -1], [-1, 1]]));
        let arrow = DirectedMultigraph::from_edges(2, &[(0, 1, 1)]).unwrap();
        assert_eq!(arrow.laplacian(), IntMatrix::from_rows([[1, -1], [0, 0]]));
    }

    #[test]
    fn components_and_genus() {
        assert_eq!(diamond().connected_components().len(), 1);
        assert_eq!(diamond().genus().unwrap(), 2);
        let two_triangles = Multigraph::from_edges(
            6,
            &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (3, 4, 1), (4, 5, 1), (5, 3, 1)],
        )
        .unwrap();
        assert_eq!(two_triangles.connected_components().len(), 2);
        assert_eq!(two_triangles.genus(), Err(Error::Disconnected));
        assert_eq!(Multigraph::numbered(4).connected_components().len(), 4);
        assert_eq!(family(Family::Path(5)).unwrap().genus().unwrap(), 0);
    }

    #[test]
    fn complete_graph_reduced_determinant() {
        for n in 3..=7u32 {
            let g = family(Family::Complete(n as usize)).unwrap();
            let last = g.n() - 1;
            let det = determinant(&g.reduced_laplacian(last, last).unwrap()).unwrap();
            assert_eq!(det, BigInt::from(n).pow(n - 2));
        }
    }

    #[test]
    fn house_has_eleven_trees() {
        let g = family(Family::House).unwrap();
        let det = determinant(&g.reduced_laplacian(4, 4).unwrap()).unwrap();
        assert_eq!(det, BigInt::from(11));
    }

    #[test]
    fn rejects_loops_and_duplicate_labels() {
        let mut g = Multigraph::numbered(2);
        assert!(g.add_edges(0, 0, 1).is_err());
        assert!(Multigraph::edgeless(["a", "a"]).is_err());
        assert!(g.add_vertex("v1").is_err());
        assert_eq!(g.add_vertex("w").unwrap(), 2);
        g.add_edges(2, 0, 2).unwrap();
        assert_eq!(g.mult(0, 2), 2);
        assert_eq!(g.degree(2), 2);
        let h = g.without_vertex(0).unwrap();
        assert_eq!(h.labels(), ["v2", "w"]);
        assert_eq!(h.edge_count(), 0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn any_graph() -> impl Strategy<Value = Multigraph> {
            (1usize..=7).prop_flat_map(|n| {
                proptest::collection::vec(0u64..=2, n * (n - 1) / 2).prop_map(move |ms| {
                    let mut g = Multigraph::numbered(n);
                    let mut k = 0;
                    for i in 0..n {
                        for j in i + 1..n {
                            g.add_edges(i, j, ms[k]).unwrap();
                            k += 1;
                        }
                    }
                    g
                })
            })
        }

        proptest! {
            #[test]
            fn laplacian_lines_sum_to_zero(g in any_graph()) {
                let l = g.laplacian();
                for i in 0..g.n() {
                    let row: BigInt = l.row(i).iter().sum();
                    let col: BigInt = (0..g.n()).map(|j| l[(j, i)].clone()).sum();
                    prop_assert!(row.is_zero() && col.is_zero());
                    prop_assert_eq!(&l[(i, i)], &BigInt::from(g.degree(i)));
                }
            }

            #[test]
            fn kernel_dimension_counts_components(g in any_graph()) {
                prop_assert_eq!(
                    rational_null_space(&g.laplacian()).len(),
                    g.connected_components().len()
                );
            }

            #[test]
            fn quadratic_form_is_edge_sum(g in any_graph(), xs in proptest::collection::vec(-20i64..=20, 7)) {
                let x: Vec<BigInt> = xs[..g.n()].iter().copied().map(BigInt::from).collect();
                let lx = g.laplacian().mul_vec(&x).unwrap();
                let form: BigInt = x.iter().zip(&lx).map(|(a, b)| a * b).sum();
                let edges: BigInt = g
                    .edges()
                    .iter()
                    .map(|&(i, j, m)| {
                        let d = &x[i] - &x[j];
                        &d * &d * BigInt::from(m)
                    })
                    .sum();
                prop_assert_eq!(form, edges);
            }
        }
    }
}
