use super::Multigraph;
use crate::error::{Error, Result};

/// Identifies `v1` of `g1` with `v2` of `g2`. Vertices keep `g1`'s order,
/// followed by `g2`'s minus `v2`; clashing `g2` labels get primes appended.
pub fn wedge(g1: &Multigraph, v1: usize, g2: &Multigraph, v2: usize) -> Result<Multigraph> {
    g1.check_index(v1)?;
    g2.check_index(v2)?;
    let mut g = g1.clone();
    let mut map = vec![0; g2.n()];
    for (i, slot) in map.iter_mut().enumerate() {
        if i == v2 {
            *slot = v1;
            continue;
        }
        let mut label = g2.label(i).to_string();
        while g.labels().contains(&label) {
            label.push('\'');
        }
        *slot = g.add_vertex(label)?;
    }
    for (i, j, m) in g2.edges() {
        g.add_edges(map[i], map[j], m)?;
    }
    Ok(g)
}

fn add_path(g: &mut Multigraph, from: usize, to: usize, k: usize, next: &mut usize) -> Result<()> {
    let mut prev = from;
    for _ in 1..k {
        let (label, used) = g.fresh_label("s", *next);
        *next = used + 1;
        let v = g.add_vertex(label)?;
        g.add_edges(prev, v, 1)?;
        prev = v;
    }
    g.add_edges(prev, to, 1)
}

/// Replaces every edge (each parallel copy separately) by a path of `k` edges.
/// New vertices are labelled `s1, s2, …` (skipping labels already in use).
pub fn subdivide(g: &Multigraph, k: usize) -> Result<Multigraph> {
    if k == 0 {
        return Err(Error::InvalidParameter("subdivision factor must be ≥ 1".into()));
    }
    let mut out = g.clone();
    if k == 1 {
        return Ok(out);
    }
    let mut next = 1;
    for (i, j, m) in g.edges() {
        out.set_mult(i, j, 0);
        for _ in 0..m {
            add_path(&mut out, i, j, k, &mut next)?;
        }
    }
    Ok(out)
}

/// Replaces one copy of the edge `xy` by a path of `k` edges.
pub fn subdivide_edge(g: &Multigraph, x: usize, y: usize, k: usize) -> Result<Multigraph> {
    if k == 0 {
        return Err(Error::InvalidParameter("subdivision factor must be ≥ 1".into()));
    }
    g.check_index(x)?;
    g.check_index(y)?;
    if g.mult(x, y) == 0 {
        return Err(Error::MissingEdge(g.label(x).into(), g.label(y).into()));
    }
    let mut out = g.clone();
    out.set_mult(x, y, g.mult(x, y) - 1);
    add_path(&mut out, x, y, k, &mut 1)?;
    Ok(out)
}

/// Join of `g` with `K_m`; the new vertices are `c1..cm` (skipping labels in use).
pub fn cone(g: &Multigraph, m: usize) -> Result<Multigraph> {
    if m == 0 {
        return Err(Error::InvalidParameter("cone size must be ≥ 1".into()));
    }
    let mut out = g.clone();
    let old = g.n();
    let mut next = 1;
    let mut added = Vec::with_capacity(m);
    for _ in 0..m {
        let (label, used) = out.fresh_label("c", next);
        next = used + 1;
        let v = out.add_vertex(label)?;
        for u in (0..old).chain(added.iter().copied()) {
            out.add_edges(u, v, 1)?;
        }
        added.push(v);
    }
    Ok(out)
}

/// Adds the edge `xy` if absent, removes it if simple. Multi-edges are rejected.
pub fn toggle_edge(g: &Multigraph, x: usize, y: usize) -> Result<Multigraph> {
    g.check_index(x)?;
    g.check_index(y)?;
    if x == y {
        return Err(Error::InvalidParameter("cannot toggle a self-loop".into()));
    }
    let m = g.mult(x, y);
    if m > 1 {
        return Err(Error::InvalidParameter(format!(
            "`{}`–`{}` has multiplicity {m}; only simple pairs can be toggled",
            g.label(x),
            g.label(y)
        )));
    }
    let mut out = g.clone();
    out.set_mult(x, y, 1 - m);
    Ok(out)
}

/// Wedge of cycles `C_{m_1}, …, C_{m_d}` at a common vertex `v0`, whose critical
/// group is `⊕ Z/m_i`. An empty list gives a single vertex.
pub fn realize_group(factors: &[u64]) -> Result<Multigraph> {
    let mut g = Multigraph::edgeless(["v0"])?;
    let mut next = 1;
    for &m in factors {
        if m < 2 {
            return Err(Error::InvalidParameter(format!(
                "cyclic factor {m} must be ≥ 2"
            )));
        }
        let mut prev = 0;
        for _ in 1..m {
            let v = g.add_vertex(format!("v{next}"))?;
            next += 1;
            g.add_edges(prev, v, 1)?;
            prev = v;
        }
        g.add_edges(prev, 0, 1)?;
    }
    Ok(g)
}
