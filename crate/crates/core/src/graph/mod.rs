//! Finite graphs and their Hoffman-type spectral bounds.
//!
//! Vectors on the vertex set carry the uniform probability measure, so
//! (f, g) = (1/n) Σ_v f(v) g(v) and ‖1_V‖ = 1. With this convention the
//! operator statements for general self-adjoint operators specialize to
//! finite graphs without rescaling.

mod optimize;
mod oracle;

pub use optimize::{optimize_weights, OptimizedWeights};
pub use oracle::{brute_force_alpha, brute_force_chi, max_independent_set, MAX_ALPHA_VERTICES, MAX_CHI_VERTICES};

use std::collections::BTreeSet;

use crate::error::{BoundError, Result};
use crate::report::{BoundKind, BoundReport};
use crate::spectral::{numerical_range, SymMatrix, DEFAULT_TOL};

/// Finite simple undirected graph on vertices 0..n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(BoundError::InvalidInput(format!(
                    "edge ({u}, {v}) has an endpoint outside [0, {n})"
                )));
            }
            if u == v {
                return Err(BoundError::InvalidInput(format!("loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(BoundError::InvalidInput(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Self {
            n,
            edges: seen.into_iter().collect(),
        })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, edges: vec![] }
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).expect("valid clique")
    }

    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("valid star")
    }

    /// Outer 5-cycle, inner pentagram, five spokes.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Self::new(10, edges).expect("valid Petersen graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as sorted pairs (u, v) with u < v.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors().iter().map(Vec::len).collect()
    }

    /// Parses an edge list. Accepted lines:
    /// `u v` (0-based), `e u v` (DIMACS, 1-based), `p edge n m`, and
    /// comments starting with `#` or `c`. Without a header, n is one more
    /// than the largest endpoint.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| BoundError::Parse {
                line: lineno + 1,
                msg: msg.to_string(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| err(&format!("not a vertex index: {s:?}")))
            };
            match fields[0] {
                "c" => continue,
                "p" => {
                    if fields.len() != 4 || !(fields[1] == "edge" || fields[1] == "col") {
                        return Err(err("expected header 'p edge <n> <m>'"));
                    }
                    if header.is_some() {
                        return Err(err("duplicate header"));
                    }
                    header = Some((num(fields[2])?, num(fields[3])?));
                }
                "e" => {
                    if fields.len() != 3 {
                        return Err(err("expected 'e <u> <v>'"));
                    }
                    let (u, v) = (num(fields[1])?, num(fields[2])?);
                    if u == 0 || v == 0 {
                        return Err(err("DIMACS vertices are 1-based"));
                    }
                    edges.push((u - 1, v - 1));
                }
                _ => {
                    if fields.len() != 2 {
                        return Err(err("expected '<u> <v>'"));
                    }
                    edges.push((num(fields[0])?, num(fields[1])?));
                }
            }
        }
        let n = match header {
            Some((n, m)) => {
                if m != edges.len() {
                    return Err(BoundError::Parse {
                        line: 0,
                        msg: format!("header declares {m} edges, found {}", edges.len()),
                    });
                }
                n
            }
            None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0),
        };
        Graph::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("p edge {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

/// A symmetric matrix supported on the edges of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedAdjacency {
    base: Graph,
    matrix: SymMatrix,
}

impl WeightedAdjacency {
    /// Checks the support condition and, when `nonneg`, entrywise nonnegativity.
    pub fn new(base: Graph, matrix: SymMatrix, nonneg: bool) -> Result<Self> {
        if matrix.size() != base.n() {
            return Err(BoundError::InvalidInput("matrix size does not match graph".into()));
        }
        for i in 0..base.n() {
            for j in i..base.n() {
                let x = matrix.get(i, j);
                if x != 0.0 && (i == j || !base.has_edge(i, j)) {
                    return Err(BoundError::InvalidInput(format!(
                        "entry ({i}, {j}) = {x} lies off the edge set"
                    )));
                }
                if nonneg && x < 0.0 {
                    return Err(BoundError::InvalidInput(format!("negative entry at ({i}, {j})")));
                }
            }
        }
        Ok(Self { base, matrix })
    }

    pub fn graph(&self) -> &Graph {
        &self.base
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }
}

/// 0/1 adjacency matrix.
pub fn adjacency_matrix(g: &Graph) -> SymMatrix {
    let mut a = SymMatrix::zeros(g.n());
    for &(u, v) in g.edges() {
        a.set(u, v, 1.0);
    }
    a
}

/// True iff no edge has both endpoints in `s`.
pub fn is_independent(g: &Graph, s: &[usize]) -> Result<bool> {
    if let Some(&v) = s.iter().find(|&&v| v >= g.n()) {
        return Err(BoundError::InvalidInput(format!("vertex {v} outside [0, {})", g.n())));
    }
    let mut member = vec![false; g.n()];
    for &v in s {
        member[v] = true;
    }
    Ok(!g.edges().iter().any(|&(u, v)| member[u] && member[v]))
}

/// (A 1_V, 1_V) under the uniform probability measure.
pub fn mean_row_sum(a: &SymMatrix) -> f64 {
    a.row_sums().iter().sum::<f64>() / a.size() as f64
}

/// ‖A 1_V − R 1_V‖ under the uniform probability measure.
pub fn constant_defect(a: &SymMatrix, r: f64) -> f64 {
    let n = a.size() as f64;
    (a.row_sums().iter().map(|s| (s - r).powi(2)).sum::<f64>() / n).sqrt()
}

/// Hoffman's bound χ ≥ (M − m)/(−m).
pub fn hoffman_chi_bound(a: &SymMatrix) -> Result<BoundReport> {
    if a.is_zero() {
        return Err(BoundError::Vacuous("zero matrix".into()));
    }
    let (m, big_m) = numerical_range(a, DEFAULT_TOL)?;
    BoundReport::chromatic(BoundKind::ChiLb, m, big_m, big_m)
}

/// Independence-ratio bound (−m + 2ε)/(R − m − ε) with ε = ‖A1 − R1‖.
/// `r` defaults to (A 1_V, 1_V), which makes ε vanish on regular graphs.
pub fn ratio_bound(a: &SymMatrix, r: Option<f64>) -> Result<BoundReport> {
    if a.is_zero() {
        return Err(BoundError::Vacuous("zero matrix".into()));
    }
    let (m, big_m) = numerical_range(a, DEFAULT_TOL)?;
    let r = r.unwrap_or_else(|| mean_row_sum(a));
    let eps = constant_defect(a, r);
    BoundReport::ratio(m, big_m, r, eps)
}

/// Fractional chromatic bound χ* ≥ ((A1, 1) − m)/(−m).
pub fn fractional_chi_bound(a: &SymMatrix) -> Result<BoundReport> {
    if a.is_zero() {
        return Err(BoundError::Vacuous("zero matrix".into()));
    }
    let (m, big_m) = numerical_range(a, DEFAULT_TOL)?;
    let mean = mean_row_sum(a);
    let mut report = BoundReport::chromatic(BoundKind::ChiFracLb, m, big_m, mean)?;
    report.r = Some(mean);
    Ok(report)
}
