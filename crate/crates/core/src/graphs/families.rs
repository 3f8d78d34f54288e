use super::Multigraph;
use crate::error::{Error, Result};

/// Standard graph families. Vertices are `v1..vn` unless noted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    /// `Cycle(2)` is a doubled edge.
    Cycle(usize),
    Complete(usize),
    /// Parts `x1..xm` and `y1..yn`.
    CompleteBipartite(usize, usize),
    /// Center `v0` joined to leaves `v1..vn`.
    Star(usize),
    /// Vertex `i` joined to `i ± a (mod n)` for each offset `a`; the offset
    /// `n/2` contributes a single antipodal edge.
    Circulant(usize, Vec<usize>),
    /// Square `v1 v2 v3 v4` with roof vertex `v5` over the edge `v3 v4`.
    House,
    /// `K4` minus the edge `v2 v3`.
    Diamond,
}

fn positive(what: &str, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(format!("{what} must be positive")));
    }
    Ok(())
}

pub fn family(kind: Family) -> Result<Multigraph> {
    match kind {
        Family::Path(n) => {
            positive("path length", n)?;
            let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
            Multigraph::from_edges(n, &edges)
        }
        Family::Cycle(n) => {
            if n < 2 {
                return Err(Error::InvalidParameter(
                    "cycle needs at least 2 vertices".into(),
                ));
            }
            let mut g = Multigraph::numbered(n);
            for i in 0..n {
                g.add_edges(i, (i + 1) % n, 1)?;
            }
            Ok(g)
        }
        Family::Complete(n) => {
            positive("complete graph size", n)?;
            let mut g = Multigraph::numbered(n);
            for i in 0..n {
                for j in i + 1..n {
                    g.add_edges(i, j, 1)?;
                }
            }
            Ok(g)
        }
        Family::CompleteBipartite(m, n) => {
            positive("part size", m)?;
            positive("part size", n)?;
            let labels = (1..=m)
                .map(|i| format!("x{i}"))
                .chain((1..=n).map(|j| format!("y{j}")));
            let mut g = Multigraph::edgeless(labels)?;
            for i in 0..m {
                for j in 0..n {
                    g.add_edges(i, m + j, 1)?;
                }
            }
            Ok(g)
        }
        Family::Star(n) => {
            positive("leaf count", n)?;
            let mut g = Multigraph::edgeless((0..=n).map(|i| format!("v{i}")))?;
            for i in 1..=n {
                g.add_edges(0, i, 1)?;
            }
            Ok(g)
        }
        Family::Circulant(n, offsets) => {
            positive("circulant size", n)?;
            let mut seen = Vec::new();
            for &a in &offsets {
                if a == 0 || a > n / 2 {
                    return Err(Error::InvalidParameter(format!(
                        "circulant offset {a} outside 1..={}",
                        n / 2
                    )));
                }
                if seen.contains(&a) {
                    return Err(Error::InvalidParameter(format!(
                        "repeated circulant offset {a}"
                    )));
                }
                seen.push(a);
            }
            let mut g = Multigraph::numbered(n);
            for &a in &offsets {
                for i in 0..n {
                    let j = (i + a) % n;
                    if 2 * a == n && j < i {
                        continue;
                    }
                    g.add_edges(i, j, 1)?;
                }
            }
            Ok(g)
        }
        Family::House => Multigraph::from_edges(
            5,
            &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1), (2, 4, 1), (3, 4, 1)],
        ),
        Family::Diamond => Multigraph::from_edges(
            4,
            &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 3, 1), (2, 3, 1)],
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let c = family(Family::Circulant(6, vec![1, 2])).unwrap();
        assert_eq!((c.n(), c.edge_count()), (6, 12));
        assert!((0..6).all(|i| c.degree(i) == 4));
        assert_eq!(family(Family::Complete(4)).unwrap().edge_count(), 6);
        let h = family(Family::House).unwrap();
        assert_eq!((h.n(), h.edge_count()), (5, 6));
        let d = family(Family::Diamond).unwrap();
        assert_eq!((d.n(), d.edge_count()), (4, 5));
        assert_eq!(family(Family::CompleteBipartite(2, 3)).unwrap().edge_count(), 6);
        assert_eq!(family(Family::Star(4)).unwrap().degree(0), 4);
    }

    #[test]
    fn antipodal_offset_is_single_edge() {
        let c = family(Family::Circulant(12, vec![2, 3])).unwrap();
        assert_eq!(c.edge_count(), 24);
        let c = family(Family::Circulant(6, vec![3])).unwrap();
        assert_eq!(c.edge_count(), 3);
        assert!((0..6).all(|i| c.degree(i) == 1));
    }

    #[test]
    fn full_circulant_is_complete_for_odd_n() {
        for n in [3usize, 5, 7, 9] {
            let all: Vec<usize> = (1..=n / 2).collect();
            assert_eq!(
                family(Family::Circulant(n, all)).unwrap(),
                family(Family::Complete(n)).unwrap()
            );
        }
    }

    #[test]
    fn two_cycle_is_doubled_edge() {
        let g = family(Family::Cycle(2)).unwrap();
        assert_eq!(g.mult(0, 1), 2);
        assert!(family(Family::Cycle(1)).is_err());
        assert!(family(Family::Circulant(6, vec![4])).is_err());
        assert!(family(Family::Circulant(6, vec![1, 1])).is_err());
        assert!(family(Family::Path(0)).is_err());
    }
}
