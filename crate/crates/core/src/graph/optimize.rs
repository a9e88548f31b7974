//! Projected subgradient ascent of the Hoffman ratio over edge weightings.
//!
//! The objective f(B) = (M(B) − m(B))/(−m(B)) = 1 − M/m is scale invariant,
//! so iterates live on the Frobenius unit sphere. Where the extreme
//! eigenvalues are simple, ∇f = −vvᵀ/m + (M/m²)·uuᵀ with v, u the top and
//! bottom unit eigenvectors; otherwise this is one element of the
//! Clarke subdifferential, which is all the ascent scheme needs.

use super::{adjacency_matrix, Graph, WeightedAdjacency};
use crate::error::{BoundError, Result};
use crate::report::{BoundKind, BoundReport};
use crate::spectral::{eigen_decompose, SymMatrix, DEFAULT_TOL};

#[derive(Debug, Clone)]
pub struct OptimizedWeights {
    pub weights: WeightedAdjacency,
    pub report: BoundReport,
    /// Best value after each iteration, starting with the uniform weights.
    pub history: Vec<f64>,
}

fn objective(b: &SymMatrix) -> Result<(f64, f64, f64, Vec<f64>, Vec<f64>)> {
    let s = eigen_decompose(b, DEFAULT_TOL)?;
    let (m, big_m) = (s.min(), s.max());
    if m >= 0.0 {
        return Err(BoundError::NoNegativeSpectrum(m));
    }
    let top = s.eigenvector(0).expect("vectors requested");
    let bottom = s.eigenvector(s.len() - 1).expect("vectors requested");
    Ok(((big_m - m) / -m, m, big_m, top, bottom))
}

/// Maximizes the Hoffman ratio over matrices supported on the edge set,
/// entrywise nonnegative when `nonneg`. Step sizes are 1/√k along the
/// normalized subgradient; the best iterate is returned, so the result
/// never falls below the plain adjacency matrix.
pub fn optimize_weights(g: &Graph, nonneg: bool, iters: usize) -> Result<OptimizedWeights> {
    if iters == 0 {
        return Err(BoundError::InvalidInput("iteration budget must be positive".into()));
    }
    if g.edges().is_empty() {
        return Err(BoundError::InvalidInput("graph has no edges".into()));
    }
    let mut b = adjacency_matrix(g);
    b.scale(1.0 / b.frobenius_norm());

    let mut current = objective(&b)?;
    let mut best_val = current.0;
    let mut best = (b.clone(), current.1, current.2);
    let mut history = vec![best_val];

    for k in 1..=iters {
        let (_, m, big_m, ref top, ref bottom) = current;
        let mut grad: Vec<f64> = g
            .edges()
            .iter()
            .map(|&(i, j)| 2.0 * (-top[i] * top[j] / m + big_m / (m * m) * bottom[i] * bottom[j]))
            .collect();
        let norm = grad.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            break;
        }
        let step = 1.0 / (k as f64).sqrt();
        for gi in &mut grad {
            *gi *= step / norm;
        }
        let mut next = SymMatrix::zeros(g.n());
        for (&(i, j), gi) in g.edges().iter().zip(&grad) {
            let mut w = b.get(i, j) + gi;
            if nonneg && w < 0.0 {
                w = 0.0;
            }
            next.set(i, j, w);
        }
        let fro = next.frobenius_norm();
        if fro == 0.0 {
            history.push(best_val);
            continue;
        }
        next.scale(1.0 / fro);
        match objective(&next) {
            Ok(val) => {
                if val.0 > best_val {
                    best_val = val.0;
                    best = (next.clone(), val.1, val.2);
                }
                b = next;
                current = val;
            }
            Err(BoundError::NoNegativeSpectrum(_)) => {}
            Err(e) => return Err(e),
        }
        history.push(best_val);
    }

    let (matrix, m, big_m) = best;
    let report = BoundReport::chromatic(BoundKind::ChiLb, m, big_m, big_m)?;
    Ok(OptimizedWeights {
        weights: WeightedAdjacency::new(g.clone(), matrix, nonneg)?,
        report,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::hoffman_chi_bound;

    #[test]
    fn edge_transitive_graphs_stay_at_adjacency_bound() {
        let c5 = optimize_weights(&Graph::cycle(5), true, 60).unwrap();
        assert!((c5.report.value - 5f64.sqrt()).abs() < 1e-9);
        let k5 = optimize_weights(&Graph::complete(5), true, 60).unwrap();
        assert!((k5.report.value - 5.0).abs() < 1e-9);
    }

    #[test]
    fn star_does_not_regress() {
        let g = Graph::star(3);
        let base = hoffman_chi_bound(&adjacency_matrix(&g)).unwrap().value;
        assert!((base - 2.0).abs() < 1e-12);
        let opt = optimize_weights(&g, true, 40).unwrap();
        assert!(opt.report.value >= base - 1e-12);
    }

    #[test]
    fn history_is_monotone_and_weights_respect_support() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (0, 5)]).unwrap();
        for nonneg in [true, false] {
            let opt = optimize_weights(&g, nonneg, 80).unwrap();
            assert!(opt.history.windows(2).all(|w| w[1] >= w[0]));
            assert_eq!(opt.history.len(), 81);
            assert!((opt.report.reproduce() - opt.report.value).abs() < 1e-12);
            assert!(opt.report.value >= opt.history[0]);
        }
    }

    #[test]
    fn errors() {
        assert!(optimize_weights(&Graph::cycle(5), true, 0).is_err());
        assert!(optimize_weights(&Graph::empty(4), true, 10).is_err());
    }
}
