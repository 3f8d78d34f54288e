//! Plain-text graph files.
//!
//! ```text
//! # optional comment
//! directed          (optional, first line only)
//! vertex u          (declares a vertex, possibly isolated)
//! u v [m]           (m ≥ 1 parallel edges, default 1)
//! ```
//!
//! Vertices are indexed in order of first appearance.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{DirectedMultigraph, Multigraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Graph {
    Undirected(Multigraph),
    Directed(DirectedMultigraph),
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut directed = false;
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize, u64, usize)> = Vec::new();
    let mut seen_content = false;

    let intern = |labels: &mut Vec<String>, l: &str| -> usize {
        match labels.iter().position(|x| x == l) {
            Some(i) => i,
            None => {
                labels.push(l.to_string());
                labels.len() - 1
            }
        }
    };

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[..] {
            ["directed"] => {
                if directed {
                    return Err(Error::parse(lineno, "duplicate `directed` flag"));
                }
                if seen_content {
                    return Err(Error::parse(lineno, "`directed` must precede all edges"));
                }
                directed = true;
            }
            ["vertex", u] => {
                intern(&mut labels, u);
            }
            [u, v] | [u, v, _] => {
                let m = match tokens.get(2) {
                    None => 1,
                    Some(t) => {
                        let m: i64 = t.parse().map_err(|_| {
                            Error::parse(lineno, format!("bad multiplicity `{t}`"))
                        })?;
                        if m <= 0 {
                            return Err(Error::parse(
                                lineno,
                                format!("multiplicity must be positive, got {m}"),
                            ));
                        }
                        m as u64
                    }
                };
                if u == v {
                    return Err(Error::parse(lineno, format!("self-loop at `{u}`")));
                }
                let i = intern(&mut labels, u);
                let j = intern(&mut labels, v);
                edges.push((i, j, m, lineno));
            }
            _ => return Err(Error::parse(lineno, format!("unrecognized line `{line}`"))),
        }
        seen_content = true;
    }

    let wrap = |lineno: usize| move |e: Error| Error::parse(lineno, e.to_string());
    if directed {
        let mut g = DirectedMultigraph::edgeless(labels).map_err(wrap(1))?;
        for (i, j, m, lineno) in edges {
            g.add_edges(i, j, m).map_err(wrap(lineno))?;
        }
        Ok(Graph::Directed(g))
    } else {
        let mut g = Multigraph::edgeless(labels).map_err(wrap(1))?;
        for (i, j, m, lineno) in edges {
            g.add_edges(i, j, m).map_err(wrap(lineno))?;
        }
        Ok(Graph::Undirected(g))
    }
}

/// Canonical text: every vertex declared in index order, then edges sorted
/// by label with explicit multiplicities. Parsing it back gives the same graph.
pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let (labels, mut lines): (&[String], Vec<(String, String, u64)>) = match g {
        Graph::Undirected(g) => {
            let lines = g
                .edges()
                .into_iter()
                .map(|(i, j, m)| {
                    let (a, b) = (g.label(i), g.label(j));
                    let (a, b) = if a <= b { (a, b) } else { (b, a) };
                    (a.to_string(), b.to_string(), m)
                })
                .collect();
            (g.labels(), lines)
        }
        Graph::Directed(g) => {
            out.push_str("directed\n");
            let lines = g
                .edges()
                .into_iter()
                .map(|(i, j, m)| (g.labels()[i].clone(), g.labels()[j].clone(), m))
                .collect();
            (g.labels(), lines)
        }
    };
    for l in labels {
        writeln!(out, "vertex {l}").expect("write to string");
    }
    lines.sort();
    for (a, b, m) in lines {
        writeln!(out, "{a} {b} {m}").expect("write to string");
    }
    out
}

impl FromStr for Multigraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match parse_graph(text)? {
            Graph::Undirected(g) => Ok(g),
            Graph::Directed(_) => Err(Error::parse(1, "expected an undirected graph")),
        }
    }
}

impl FromStr for DirectedMultigraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        match parse_graph(text)? {
            Graph::Directed(g) => Ok(g),
            Graph::Undirected(_) => Err(Error::parse(1, "expected a `directed` header")),
        }
    }
}

impl Multigraph {
    pub fn to_text(&self) -> String {
        write_graph(&Graph::Undirected(self.clone()))
    }
}

impl DirectedMultigraph {
    pub fn to_text(&self) -> String {
        write_graph(&Graph::Directed(self.clone()))
    }
}
