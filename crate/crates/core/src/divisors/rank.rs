use super::{default_q, q_reduce, Divisor};
use crate::error::{Error, Result};
use crate::graphs::Multigraph;

/// Largest vertex count accepted by [`gonality`].
pub const GONALITY_LIMIT: usize = 12;

/// Whether `d` is equivalent to an effective divisor: its q-reduced form
/// is already nonnegative off `q`, so only `q` can be in debt.
pub fn effective_equivalent(g: &Multigraph, d: &Divisor) -> Result<bool> {
    d.check_len(g.n())?;
    if d.degree() < 0 {
        return Ok(false);
    }
    let q = default_q(g);
    Ok(q_reduce(g, d, q)?[q] >= 0)
}

/// `d − e_v` is effective-equivalent for every vertex `v`.
pub fn has_positive_rank(g: &Multigraph, d: &Divisor) -> Result<bool> {
    g.require_connected()?;
    d.check_len(g.n())?;
    if d.degree() < 1 {
        return Ok(false);
    }
    positive_rank_at_all(g, d)
}

fn positive_rank_at_all(g: &Multigraph, d: &Divisor) -> Result<bool> {
    for v in 0..g.n() {
        if d[v] >= 1 && d.is_effective() {
            continue;
        }
        // reduce at v itself: debt can only remain at v
        let minus = d - &Divisor::unit(g.n(), v);
        if q_reduce(g, &minus, v)?[v] < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Gonality together with the first witness found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gonality {
    pub gonality: u64,
    pub witness: Divisor,
}

/// Least degree of an effective divisor of positive rank, by exhaustive search
/// over effective divisors of increasing degree.
///
/// One chip on every vertex always has positive rank, so the search stops by
/// degree `n`.
pub fn gonality(g: &Multigraph) -> Result<Gonality> {
    g.require_connected()?;
    let n = g.n();
    if n > GONALITY_LIMIT {
        return Err(Error::guard("vertex count for gonality", GONALITY_LIMIT as u64));
    }
    for deg in 1..=n as i64 {
        let mut found = None;
        for_each_effective(n, deg, &mut |values| {
            if found.is_some() {
                return Ok(());
            }
            let d = Divisor::new(values.to_vec());
            if positive_rank_at_all(g, &d)? {
                found = Some(d);
            }
            Ok(())
        })?;
        if let Some(witness) = found {
            return Ok(Gonality {
                gonality: deg as u64,
                witness,
            });
        }
    }
    unreachable!("the all-ones divisor has positive rank")
}

/// Visits every effective divisor of degree `deg` on `n` vertices, with
/// spread-out divisors (more nonzero entries) first within each degree.
fn for_each_effective(
    n: usize,
    deg: i64,
    visit: &mut dyn FnMut(&[i64]) -> Result<()>,
) -> Result<()> {
    fn rec(
        values: &mut Vec<i64>,
        n: usize,
        left: i64,
        visit: &mut dyn FnMut(&[i64]) -> Result<()>,
    ) -> Result<()> {
        if values.len() == n - 1 {
            values.push(left);
            let r = visit(values);
            values.pop();
            return r;
        }
        for x in 0..=left {
            values.push(x);
            rec(values, n, left - x, visit)?;
            values.pop();
        }
        Ok(())
    }
    // by support size: divisors with many small entries are the usual witnesses
    let mut all = Vec::new();
    rec(&mut Vec::with_capacity(n), n, deg, &mut |v| {
        all.push(v.to_vec());
        Ok(())
    })?;
    all.sort_by_key(|v| (std::cmp::Reverse(v.iter().filter(|&&x| x > 0).count()), v.clone()));
    for v in &all {
        visit(v)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{family, Family};

    fn doubled_triangle() -> Multigraph {
        Multigraph::from_edges(3, &[(0, 1, 2), (1, 2, 2), (0, 2, 2)]).unwrap()
    }

    #[test]
    fn doubled_triangle_example() {
        let g = doubled_triangle();
        assert!(has_positive_rank(&g, &Divisor::new(vec![1, 1, 1])).unwrap());
        assert!(!has_positive_rank(&g, &Divisor::unit(3, 0)).unwrap());
        let gon = gonality(&g).unwrap();
        assert_eq!(gon.gonality, 3);
        assert_eq!(gon.witness, Divisor::new(vec![1, 1, 1]));
    }

    #[test]
    fn effective_equivalence() {
        let d = family(Family::Diamond).unwrap();
        assert!(effective_equivalent(&d, &Divisor::new(vec![-1, 2, 2, -2])).unwrap());
        assert!(effective_equivalent(&d, &Divisor::new(vec![0, 3, 0, 1])).unwrap());
        assert!(!effective_equivalent(&d, &Divisor::new(vec![0, 0, 0, -1])).unwrap());
        assert!(!has_positive_rank(&d, &Divisor::new(vec![0, 0, 0, -1])).unwrap());
    }

    #[test]
    fn small_families() {
        for n in 2..=5 {
            assert_eq!(gonality(&family(Family::Path(n)).unwrap()).unwrap().gonality, 1);
        }
        for n in 3..=6 {
            assert_eq!(gonality(&family(Family::Cycle(n)).unwrap()).unwrap().gonality, 2);
        }
        assert_eq!(gonality(&Multigraph::numbered(1)).unwrap().gonality, 1);
        assert!(gonality(&family(Family::Path(13)).unwrap()).is_err());
    }
}
