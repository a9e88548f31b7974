//! Circulant graphs on the discrete torus ℤ_mⁿ.
//!
//! A Cayley graph of ℤ_mⁿ is diagonalized by the characters, so its
//! spectrum is a set of cosine sums. This gives exact finite stand-ins for
//! the translation-invariant graphs on ℝⁿ, checkable against brute force.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{BoundError, Result};
use crate::euclidean::{chromatic_bound_euclidean, density_bound, RadialMeasure};
use crate::graph::Graph;
use crate::graph::{brute_force_alpha, MAX_ALPHA_VERTICES};
use crate::report::{format_sig, BoundKind, BoundReport};
use crate::special::{gcd, rational_approx};
use crate::spectral::SymMatrix;

pub const MAX_TORUS_VERTICES: usize = 1 << 20;
pub const DEFAULT_SHELL_TOL: f64 = 0.25;
pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// Cayley graph of ℤ_mⁿ. Elements are stored by their representatives in
/// (−m/2, m/2] in every coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CirculantGraph {
    modulus: usize,
    dim: usize,
    connection_set: Vec<Vec<i64>>,
}

fn reduce(x: i64, m: usize) -> i64 {
    let m = m as i64;
    let r = x.rem_euclid(m);
    if 2 * r > m {
        r - m
    } else {
        r
    }
}

fn vertex_count(m: usize, n: usize) -> Result<usize> {
    let total = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > MAX_TORUS_VERTICES as u128 {
        return Err(BoundError::TooLarge {
            what: "torus vertices",
            got: total.min(usize::MAX as u128) as usize,
            limit: MAX_TORUS_VERTICES,
        });
    }
    Ok(total as usize)
}

impl CirculantGraph {
    pub fn new(modulus: usize, dim: usize, elements: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        if modulus < 3 {
            return Err(BoundError::InvalidInput(format!("modulus {modulus} below 3")));
        }
        if dim == 0 {
            return Err(BoundError::InvalidInput("dimension must be positive".into()));
        }
        vertex_count(modulus, dim)?;
        let mut set = BTreeSet::new();
        for s in elements {
            if s.len() != dim {
                return Err(BoundError::InvalidInput(format!("element {s:?} has wrong length")));
            }
            let s: Vec<i64> = s.iter().map(|&x| reduce(x, modulus)).collect();
            if s.iter().all(|&x| x == 0) {
                return Err(BoundError::InvalidInput("connection set contains 0".into()));
            }
            set.insert(s);
        }
        if set.is_empty() {
            return Err(BoundError::InvalidInput("empty connection set".into()));
        }
        for s in &set {
            let neg: Vec<i64> = s.iter().map(|&x| reduce(-x, modulus)).collect();
            if !set.contains(&neg) {
                return Err(BoundError::InvalidInput(format!(
                    "connection set not closed under negation at {s:?}"
                )));
            }
        }
        Ok(Self {
            modulus,
            dim,
            connection_set: set.into_iter().collect(),
        })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn connection_set(&self) -> &[Vec<i64>] {
        &self.connection_set
    }

    pub fn degree(&self) -> usize {
        self.connection_set.len()
    }

    pub fn vertices(&self) -> usize {
        self.modulus.pow(self.dim as u32)
    }

    fn coords(&self, mut v: usize) -> Vec<usize> {
        let mut c = vec![0; self.dim];
        for x in c.iter_mut() {
            *x = v % self.modulus;
            v /= self.modulus;
        }
        c
    }

    fn index(&self, c: &[i64]) -> usize {
        c.iter().rev().fold(0, |acc, &x| {
            acc * self.modulus + x.rem_euclid(self.modulus as i64) as usize
        })
    }

    /// The expanded graph; vertex v has coordinates in base m, least
    /// significant first.
    pub fn to_graph(&self) -> Result<Graph> {
        let mut edges = Vec::new();
        for v in 0..self.vertices() {
            let c = self.coords(v);
            for s in &self.connection_set {
                let w: Vec<i64> = c.iter().zip(s).map(|(&a, &b)| a as i64 + b).collect();
                let w = self.index(&w);
                if v < w {
                    edges.push((v, w));
                }
            }
        }
        Graph::new(self.vertices(), edges)
    }

    pub fn adjacency(&self) -> Result<SymMatrix> {
        Ok(crate::graph::adjacency_matrix(&self.to_graph()?))
    }
}

/// Connection set {s ≠ 0 : |‖s‖ − d_i| ≤ tol for some i}, radii in lattice
/// units and ‖s‖ measured on minimal representatives.
pub fn build_torus_graph(m: usize, n: usize, radii: &[f64], tol: f64) -> Result<CirculantGraph> {
    if m < 3 || n == 0 {
        return Err(BoundError::InvalidInput(format!(
            "need m >= 3 and n >= 1, got m = {m}, n = {n}"
        )));
    }
    if !(tol >= 0.0) {
        return Err(BoundError::InvalidInput(format!("shell tolerance {tol} negative")));
    }
    let total = vertex_count(m, n)?;
    let elements: Vec<Vec<i64>> = (0..total)
        .filter_map(|mut v| {
            let s: Vec<i64> = (0..n)
                .map(|_| {
                    let x = (v % m) as i64;
                    v /= m;
                    x
                })
                .map(|x| reduce(x, m))
                .collect();
            let norm = s.iter().map(|&x| (x * x) as f64).sum::<f64>().sqrt();
            (norm > 0.0 && radii.iter().any(|&d| (norm - d).abs() <= tol)).then_some(s)
        })
        .collect();
    if elements.is_empty() {
        return Err(BoundError::InvalidInput("no lattice points within the shells".into()));
    }
    CirculantGraph::new(m, n, elements)
}

/// All eigenvalues Σ_{s∈S} cos(2π⟨u, s⟩/m), u ∈ ℤ_mⁿ, non-increasing.
pub fn circulant_spectrum(g: &CirculantGraph) -> Vec<f64> {
    let m = g.modulus;
    let table: Vec<f64> = (0..m)
        .map(|k| (2.0 * std::f64::consts::PI * k as f64 / m as f64).cos())
        .collect();
    let mut values: Vec<f64> = (0..g.vertices())
        .into_par_iter()
        .map(|v| {
            let u = g.coords(v);
            g.connection_set
                .iter()
                .map(|s| {
                    let phase = u.iter().zip(s).map(|(&a, &b)| a as i64 * b).sum::<i64>();
                    table[phase.rem_euclid(m as i64) as usize]
                })
                .sum()
        })
        .collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite eigenvalues"));
    values
}

/// Hoffman chromatic bound of a circulant from its character sums.
pub fn circulant_chi_bound(g: &CirculantGraph) -> Result<BoundReport> {
    let spec = circulant_spectrum(g);
    let (big_m, m) = (spec[0], spec[spec.len() - 1]);
    BoundReport::chromatic(BoundKind::ChiLb, m, big_m, big_m)
}

/// Ratio bound α(G)/|V| ≤ −m/(M − m); circulants are regular so ε = 0.
pub fn circulant_ratio_bound(g: &CirculantGraph) -> Result<BoundReport> {
    let spec = circulant_spectrum(g);
    let (big_m, m) = (spec[0], spec[spec.len() - 1]);
    BoundReport::ratio(m, big_m, big_m, 0.0)
}

fn check_perm(p: &[usize], n: usize) -> Result<()> {
    if p.len() != n {
        return Err(BoundError::InvalidInput(format!(
            "permutation of length {} on {n} points",
            p.len()
        )));
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(BoundError::InvalidInput(format!("{p:?} is not a permutation")));
        }
    }
    Ok(())
}

/// Average of PᵀAP over the group generated by `generators`, enumerated by
/// closure in breadth-first order.
pub fn symmetrize(a: &SymMatrix, generators: &[Vec<usize>], cap: usize) -> Result<SymMatrix> {
    let n = a.size();
    for g in generators {
        check_perm(g, n)?;
    }
    let identity: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut group = vec![identity];
    let mut head = 0;
    while head < group.len() {
        let p = group[head].clone();
        head += 1;
        for g in generators {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                if group.len() == cap {
                    return Err(BoundError::TooLarge {
                        what: "group order",
                        got: cap + 1,
                        limit: cap,
                    });
                }
                group.push(q);
            }
        }
    }
    let k = group.len() as f64;
    Ok(SymMatrix::from_fn(n, |i, j| {
        group.iter().map(|p| a.get(p[i], p[j])).sum::<f64>() / k
    }))
}

/// One row of the discretization study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub m: usize,
    pub discrete_chi_lb: f64,
    pub discrete_alpha_ub: f64,
    pub continuous_chi_lb: f64,
    pub continuous_alpha_ub: f64,
    /// α(G)/|V| by brute force when the torus is small enough.
    pub oracle_alpha: Option<f64>,
}

/// How physical radii are mapped to lattice units for a modulus-m torus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BoxRule {
    /// Box side L = c·max d_i for every modulus; radii become round(d_i·m/L).
    Fixed(f64),
    /// The largest radius spans about c·√m lattice units, with an integer
    /// number s of lattice points per unit length chosen so that every
    /// d_i·s is an integer. The box side is L = m/s, so both the frequency
    /// spacing 2π/L and the lattice spacing 1/s shrink as m grows. On the
    /// line a shell is two points at any scale, so s is the smallest
    /// admissible value there.
    Growing(f64),
}

impl Default for BoxRule {
    fn default() -> Self {
        BoxRule::Growing(2.0)
    }
}

/// Common denominator of the radii, if they are rationals with small ones.
fn common_denominator(radii: &[f64]) -> Option<u64> {
    radii.iter().try_fold(1u64, |l, &d| {
        let frac = d - d.floor();
        let q = if frac == 0.0 { 1 } else { rational_approx(frac, 1000)?.1 };
        l.checked_mul(q / gcd(l, q))
    })
}

impl BoxRule {
    /// Lattice radii for modulus `m`.
    /// Fails when the largest one exceeds m/2 and the shell would wrap around.
    pub fn lattice_radii(&self, dim: usize, radii: &[f64], m: usize) -> Result<Vec<f64>> {
        let d_max = radii.iter().copied().fold(0.0, f64::max);
        let scaled = self.scale(dim, radii, d_max, m)?;
        let top = scaled.iter().copied().fold(0.0, f64::max);
        if top > 0.5 * m as f64 {
            return Err(BoundError::InvalidInput(format!(
                "modulus {m} too small: lattice radius {top} exceeds m/2"
            )));
        }
        Ok(scaled)
    }

    fn scale(&self, dim: usize, radii: &[f64], d_max: f64, m: usize) -> Result<Vec<f64>> {
        match *self {
            BoxRule::Fixed(c) => {
                let side = c * d_max;
                Ok(radii.iter().map(|d| (d * m as f64 / side).round()).collect())
            }
            BoxRule::Growing(c) => {
                let q = common_denominator(radii)
                    .ok_or_else(|| BoundError::InvalidInput("growing box rule needs rational radii".into()))?
                    as f64;
                let per_unit = if dim == 1 {
                    q
                } else {
                    q * (c * (m as f64).sqrt() / (q * d_max)).round().max(1.0)
                };
                Ok(radii.iter().map(|d| (d * per_unit).round()).collect())
            }
        }
    }
}

/// Compares Hoffman bounds of torus discretizations of G(ℝⁿ, ∪ d_i S^{n−1})
/// with the continuous bounds, using the default box rule.
pub fn convergence_study(n: usize, radii: &[f64], moduli: &[usize]) -> Result<Vec<StudyRow>> {
    convergence_study_with(n, radii, moduli, BoxRule::default())
}

/// The continuous measure weights shell i by d_i^{n−1}, the limiting share of
/// lattice points.
pub fn convergence_study_with(n: usize, radii: &[f64], moduli: &[usize], rule: BoxRule) -> Result<Vec<StudyRow>> {
    if radii.is_empty() || radii.iter().any(|&d| !(d > 0.0 && d.is_finite())) {
        return Err(BoundError::InvalidInput("radii must be positive".into()));
    }
    if moduli.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BoundError::InvalidInput("moduli must be increasing".into()));
    }
    let mut sorted = radii.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite radii"));
    sorted.dedup();
    let weights: Vec<f64> = sorted.iter().map(|d| d.powi(n as i32 - 1)).collect();
    let total: f64 = weights.iter().sum();
    let measure = RadialMeasure::new(
        n,
        sorted.iter().copied().zip(weights.iter().map(|w| w / total)).collect(),
    )?;
    let continuous_chi = chromatic_bound_euclidean(&measure)?.value;
    let continuous_alpha = density_bound(&measure)?.value;

    moduli
        .iter()
        .map(|&m| {
            let lattice = rule.lattice_radii(n, &sorted, m)?;
            let g = build_torus_graph(m, n, &lattice, DEFAULT_SHELL_TOL)?;
            let oracle_alpha = if g.vertices() <= MAX_ALPHA_VERTICES {
                Some(brute_force_alpha(&g.to_graph()?)? as f64 / g.vertices() as f64)
            } else {
                None
            };
            Ok(StudyRow {
                m,
                discrete_chi_lb: circulant_chi_bound(&g)?.value,
                discrete_alpha_ub: circulant_ratio_bound(&g)?.value,
                continuous_chi_lb: continuous_chi,
                continuous_alpha_ub: continuous_alpha,
                oracle_alpha,
            })
        })
        .collect()
}

pub const STUDY_HEADER: &str = "m,discrete_chi_lb,discrete_alpha_ub,continuous_chi_lb,continuous_alpha_ub,oracle_alpha";

/// CSV with a header row, numbers at 10 significant digits.
pub fn study_csv(rows: &[StudyRow]) -> String {
    let mut out = String::from(STUDY_HEADER);
    out.push('\n');
    for r in rows {
        let oracle = r.oracle_alpha.map(format_sig).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.m,
            format_sig(r.discrete_chi_lb),
            format_sig(r.discrete_alpha_ub),
            format_sig(r.continuous_chi_lb),
            format_sig(r.continuous_alpha_ub),
            oracle
        );
    }
    out
}
