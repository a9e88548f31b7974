//! Bounds for distance graphs on the unit sphere S^{n−1} where x ~ y when
//! (x, y) lies in a finite set of inner products.
//!
//! For an atomic measure ν = Σ w_i δ_{t_i} on [−1, 1) the averaging operator
//! acts on degree-k spherical harmonics by λ̃_k = Σ w_i P̄_k^{(α,α)}(t_i),
//! α = (n−3)/2. Its numerical range is spanned by inf and sup over k.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{BoundError, Result};
use crate::lp::{LinearProgram, Relation};
use crate::report::{BoundKind, BoundReport, Provenance};
use crate::special::{gcd, jacobi_recurrence, rational_approx, MAX_DIMENSION, MAX_JACOBI_DEGREE};

pub const DEFAULT_DEGREE: usize = 64;
pub const DEFAULT_TOL: f64 = 1e-10;

/// Largest degree the tail certification may reach by doubling.
pub const MAX_CERTIFIED_DEGREE: usize = 1 << 16;

/// Largest denominator tried when recognizing an angle as a rational
/// multiple of π, and the largest exact period scanned.
pub const MAX_ANGLE_DENOMINATOR: u64 = 1000;
pub const MAX_EXACT_PERIOD: u64 = 1 << 20;

/// Degrees scanned for planar measures with incommensurable angles.
pub const IRRATIONAL_SCAN: usize = 10_000;

/// Atomic measure on inner-product values. Serialized as
/// `{"dim": n, "atoms": [[t, w], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure", into = "RawMeasure")]
pub struct SphereMeasure {
    dim: usize,
    atoms: Vec<(f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct RawMeasure {
    dim: usize,
    atoms: Vec<(f64, f64)>,
}

impl TryFrom<RawMeasure> for SphereMeasure {
    type Error = BoundError;
    fn try_from(raw: RawMeasure) -> Result<Self> {
        SphereMeasure::new(raw.dim, raw.atoms)
    }
}

impl From<SphereMeasure> for RawMeasure {
    fn from(m: SphereMeasure) -> Self {
        RawMeasure {
            dim: m.dim,
            atoms: m.atoms,
        }
    }
}

impl SphereMeasure {
    /// Inner products must lie in [−1, 1) and be strictly increasing.
    pub fn new(dim: usize, atoms: Vec<(f64, f64)>) -> Result<Self> {
        if !(2..=MAX_DIMENSION).contains(&dim) {
            return Err(BoundError::Domain(format!("dimension {dim} outside [2, 32]")));
        }
        for (i, &(t, w)) in atoms.iter().enumerate() {
            if !(-1.0..1.0).contains(&t) {
                return Err(BoundError::InvalidInput(format!("inner product {t} outside [-1, 1)")));
            }
            if !w.is_finite() {
                return Err(BoundError::InvalidInput(format!("weight {w} is not finite")));
            }
            if i > 0 && atoms[i - 1].0 >= t {
                return Err(BoundError::InvalidInput(
                    "inner products must be strictly increasing".into(),
                ));
            }
        }
        Ok(Self { dim, atoms })
    }

    pub fn point(dim: usize, t: f64) -> Result<Self> {
        Self::new(dim, vec![(t, 1.0)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.1).sum()
    }

    pub fn total_variation(&self) -> f64 {
        self.atoms.iter().map(|a| a.1.abs()).sum()
    }

    fn is_zero(&self) -> bool {
        self.atoms.iter().all(|a| a.1 == 0.0)
    }
}

/// λ̃_0, …, λ̃_K together with a probe of the tail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSequence {
    pub values: Vec<f64>,
    #[serde(rename = "K")]
    pub k: usize,
    /// max |λ̃_k| over k ∈ (K, 2K].
    pub tail_bound: f64,
}

fn atom_values(dim: usize, t: f64, kmax: usize) -> Vec<f64> {
    if dim == 2 {
        let theta = t.acos();
        (0..=kmax).map(|k| (k as f64 * theta).cos()).collect()
    } else {
        jacobi_recurrence(kmax, 0.5 * (dim as f64 - 3.0), t)
    }
}

/// Σ w_i P̄_k(t_i) for k = 0..=kmax, atoms in parallel, summed in index order.
fn combined(mu: &SphereMeasure, kmax: usize) -> Vec<f64> {
    let per_atom: Vec<Vec<f64>> = mu
        .atoms
        .par_iter()
        .map(|&(t, _)| atom_values(mu.dim, t, kmax))
        .collect();
    let mut out = vec![0.0; kmax + 1];
    for (vals, &(_, w)) in per_atom.iter().zip(&mu.atoms) {
        for (o, v) in out.iter_mut().zip(vals) {
            *o += w * v;
        }
    }
    out[0] = mu.total_mass();
    out
}

pub fn eigenvalue_sequence(mu: &SphereMeasure, k: usize) -> Result<EigenSequence> {
    if !(1..=MAX_JACOBI_DEGREE).contains(&k) {
        return Err(BoundError::Domain(format!(
            "degree {k} outside [1, {MAX_JACOBI_DEGREE}]"
        )));
    }
    let mut values = combined(mu, 2 * k);
    let tail_bound = values[k + 1..].iter().fold(0.0f64, |a, v| a.max(v.abs()));
    values.truncate(k + 1);
    Ok(EigenSequence { values, k, tail_bound })
}

/// Endpoints of the numerical range of the operator attached to a measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorRange {
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    /// Degree attaining m, if attained at a finite degree.
    pub inf_degree: Option<usize>,
    #[serde(rename = "K")]
    pub k: usize,
    pub tail_bound: f64,
    pub certified: bool,
}

fn argmin(values: &[f64]) -> (usize, f64) {
    let mut best = (0, values[0]);
    for (k, &v) in values.iter().enumerate() {
        if v < best.1 {
            best = (k, v);
        }
    }
    best
}

fn argmax(values: &[f64]) -> (usize, f64) {
    let mut best = (0, values[0]);
    for (k, &v) in values.iter().enumerate() {
        if v > best.1 {
            best = (k, v);
        }
    }
    best
}

/// Planar case: λ̃_k = Σ w_i cos(kθ_i). Rational angles give a periodic
/// sequence that is scanned over a full period; a single irrational angle
/// has an equidistributed orbit, so its range is exactly [−|w|, |w|].
fn planar_range(mu: &SphereMeasure, k_min: usize) -> OperatorRange {
    let mut period: Option<u64> = Some(1);
    for &(t, _) in &mu.atoms {
        let x = t.acos() / std::f64::consts::PI;
        period = match (period, rational_approx(x, MAX_ANGLE_DENOMINATOR)) {
            (Some(p), Some((_, q))) => {
                let l = p / gcd(p, 2 * q) * 2 * q;
                (l <= MAX_EXACT_PERIOD).then_some(l)
            }
            _ => None,
        };
    }
    if let Some(p) = period {
        let kmax = (p as usize).max(k_min);
        let values = combined(mu, kmax);
        let (ki, m) = argmin(&values);
        let (_, big_m) = argmax(&values);
        return OperatorRange {
            m,
            big_m,
            inf_degree: Some(ki),
            k: kmax,
            tail_bound: 0.0,
            certified: true,
        };
    }
    let nonzero: Vec<&(f64, f64)> = mu.atoms.iter().filter(|a| a.1 != 0.0).collect();
    if nonzero.len() == 1 {
        let w = nonzero[0].1.abs();
        return OperatorRange {
            m: -w,
            big_m: w,
            inf_degree: None,
            k: 0,
            tail_bound: w,
            certified: true,
        };
    }
    let kmax = IRRATIONAL_SCAN.max(k_min);
    let values = combined(mu, kmax);
    let (ki, m) = argmin(&values);
    let (_, big_m) = argmax(&values);
    OperatorRange {
        m,
        big_m,
        inf_degree: Some(ki),
        k: kmax,
        tail_bound: mu.total_variation(),
        certified: false,
    }
}

/// inf and sup over all degrees of λ̃_k. For n ≥ 3, λ̃_k → 0, so the range
/// is the 0-augmented range over k ≤ K once the probed tail over (K, 2K]
/// cannot go below m or above M; K doubles until that holds.
pub fn operator_range(mu: &SphereMeasure, k: usize, tol: f64) -> Result<OperatorRange> {
    if k == 0 {
        return Err(BoundError::Domain("degree K must be positive".into()));
    }
    if !(tol > 0.0) {
        return Err(BoundError::Domain(format!("tolerance {tol} not positive")));
    }
    if mu.atoms.is_empty() || mu.is_zero() {
        return Ok(OperatorRange {
            m: 0.0,
            big_m: 0.0,
            inf_degree: Some(0),
            k,
            tail_bound: 0.0,
            certified: true,
        });
    }
    if mu.dim == 2 {
        return Ok(planar_range(mu, k));
    }
    let mut kk = k;
    loop {
        let values = combined(mu, 2 * kk);
        let (ki, m_k) = argmin(&values[..=kk]);
        let (_, big_k) = argmax(&values[..=kk]);
        let tail = values[kk + 1..].iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let (m, big_m) = (m_k.min(0.0), big_k.max(0.0));
        if tail <= -m + tol && tail <= big_m + tol {
            return Ok(OperatorRange {
                m,
                big_m,
                inf_degree: (m_k <= 0.0).then_some(ki),
                k: kk,
                tail_bound: tail,
                certified: true,
            });
        }
        if 2 * kk > MAX_CERTIFIED_DEGREE {
            return Err(BoundError::Uncertified { k: kk, m, big_m, tail });
        }
        kk *= 2;
    }
}

impl OperatorRange {
    pub fn provenance(&self) -> Provenance {
        Provenance {
            inf_arg: self.inf_degree.map(|k| k as f64),
            k: Some(self.k),
            tail_bound: Some(self.tail_bound),
            certified: Some(self.certified),
            ..Provenance::default()
        }
    }
}

/// Bounds for the graph on S^{n−1} joining points with inner product t.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingleTBounds {
    pub alpha_ub: BoundReport,
    pub chi_lb: BoundReport,
}

pub fn single_t_bounds(n: usize, t: f64) -> Result<SingleTBounds> {
    let mu = SphereMeasure::point(n, t)?;
    let range = operator_range(&mu, DEFAULT_DEGREE, DEFAULT_TOL)?;
    if range.m >= 0.0 {
        return Err(BoundError::Vacuous(format!("inf over degrees is {} >= 0", range.m)));
    }
    let prov = range.provenance();
    let alpha_ub = BoundReport::ratio(range.m, range.big_m, 1.0, 0.0)?.with_provenance(prov.clone());
    let chi_lb = BoundReport::chromatic(BoundKind::ChiLb, range.m, range.big_m, 1.0)?.with_provenance(prov);
    Ok(SingleTBounds { alpha_ub, chi_lb })
}

/// Result of the LP over probability weights on a fixed support.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereOptimum {
    pub measure: SphereMeasure,
    /// Bound from the certified range of the returned measure.
    pub report: BoundReport,
    /// LP optimum s* over the degrees 1..=K finally used.
    pub lp_value: f64,
    #[doc(alias = "K")]
    pub degree: usize,
}

/// Maximizes the chromatic bound over probability weights on `support`:
/// maximize s s.t. Σ w_i P̄_k(t_i) ≥ s for k = 1..K, Σ w = 1, w ≥ 0. The
/// optimum is checked against the certified range of the resulting
/// measure; K doubles while degrees above K undercut s*.
pub fn optimize_sphere_measure(n: usize, support: &[f64], k: usize, tol: f64) -> Result<SphereOptimum> {
    if support.is_empty() {
        return Err(BoundError::InvalidInput("empty support".into()));
    }
    if k == 0 {
        return Err(BoundError::Domain("degree K must be positive".into()));
    }
    let mut ts = support.to_vec();
    ts.sort_by(|a, b| a.partial_cmp(b).expect("finite support"));
    // validates the support
    SphereMeasure::new(n, ts.iter().map(|&t| (t, 1.0)).collect())?;
    let width = ts.len();
    let mut kk = k;
    loop {
        let cols: Vec<Vec<f64>> = ts.iter().map(|&t| atom_values(n, t, kk)).collect();
        let mut obj = vec![0.0; width + 1];
        obj[width] = 1.0;
        let mut lp = LinearProgram::maximize(obj);
        let mut simplex = vec![1.0; width + 1];
        simplex[width] = 0.0;
        lp.add_row(simplex, Relation::Eq, 1.0);
        for deg in 1..=kk {
            let mut row: Vec<f64> = cols.iter().map(|c| -c[deg]).collect();
            row.push(1.0);
            lp.add_row(row, Relation::Le, 1.0);
        }
        let sol = lp.solve()?;
        let s_star = sol.x[width] - 1.0;
        let mut w: Vec<f64> = sol.x[..width].iter().map(|&x| x.max(0.0)).collect();
        let total: f64 = w.iter().sum();
        for x in &mut w {
            *x /= total;
        }
        let measure = SphereMeasure::new(n, ts.iter().copied().zip(w).collect())?;
        let range = operator_range(&measure, kk, tol)?;
        if range.m >= s_star - tol || 2 * kk > MAX_CERTIFIED_DEGREE {
            if range.m >= 0.0 {
                return Err(BoundError::Vacuous("vacuous on this support".into()));
            }
            let report = BoundReport::chromatic(BoundKind::ChiLb, range.m, range.big_m, 1.0)?
                .with_provenance(range.provenance());
            return Ok(SphereOptimum {
                measure,
                report,
                lp_value: s_star,
                degree: kk,
            });
        }
        kk = (2 * kk).max(range.inf_degree.unwrap_or(0));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequence_examples() {
        let mu = SphereMeasure::point(3, -1.0 / 3.0).unwrap();
        let s = eigenvalue_sequence(&mu, 8).unwrap();
        assert_eq!(s.values[0], 1.0);
        assert!((s.values[1] + 1.0 / 3.0).abs() < 1e-15);
        assert!((s.values[2] + 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(s.values.len(), 9);
        assert!(s.tail_bound < 1.0);
        let p = SphereMeasure::point(5, 0.3).unwrap();
        assert!((eigenvalue_sequence(&p, 1).unwrap().values[1] - 0.3).abs() < 1e-15);
        assert!(eigenvalue_sequence(&p, 0).is_err());
    }

    #[test]
    fn measure_validation() {
        assert!(SphereMeasure::point(3, 1.0).is_err());
        assert!(SphereMeasure::point(1, 0.0).is_err());
        assert!(SphereMeasure::new(3, vec![(0.2, 1.0), (0.1, 1.0)]).is_err());
        let m: SphereMeasure = serde_json::from_str(r#"{"dim": 3, "atoms": [[-0.5, 1]]}"#).unwrap();
        assert_eq!(m.atoms(), &[(-0.5, 1.0)]);
        assert!(serde_json::from_str::<SphereMeasure>(r#"{"dim": 3, "atoms": [[1.5, 1]]}"#).is_err());
    }

    #[test]
    fn range_examples() {
        let r = operator_range(&SphereMeasure::point(3, -1.0 / 3.0).unwrap(), 64, 1e-10).unwrap();
        assert!((r.m + 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(r.big_m, 1.0);
        assert!(r.certified);
        let r = operator_range(&SphereMeasure::point(2, 0.0).unwrap(), 8, 1e-10).unwrap();
        assert!((r.m + 1.0).abs() < 1e-12 && r.inf_degree == Some(2));
        let zero = SphereMeasure::new(4, vec![(0.1, 0.0)]).unwrap();
        let r = operator_range(&zero, 8, 1e-10).unwrap();
        assert_eq!((r.m, r.big_m), (0.0, 0.0));
    }

    #[test]
    fn planar_rational_and_irrational() {
        let r = operator_range(&SphereMeasure::point(2, -0.5).unwrap(), 4, 1e-10).unwrap();
        assert!((r.m + 0.5).abs() < 1e-12);
        assert_eq!(rational_approx(2.0 / 3.0, 1000), Some((2, 3)));
        assert_eq!(rational_approx(std::f64::consts::SQRT_2 - 1.0, 1000), None);
        let irr = operator_range(&SphereMeasure::point(2, 0.3).unwrap(), 4, 1e-10).unwrap();
        assert_eq!(irr.m, -1.0);
        assert!(irr.certified);
        let two = SphereMeasure::new(2, vec![(0.3, 0.5), (0.7, 0.5)]).unwrap();
        let r = operator_range(&two, 4, 1e-10).unwrap();
        assert!(!r.certified && r.m < 0.0);
    }

    #[test]
    fn single_t_examples() {
        let b = single_t_bounds(3, -1.0 / 3.0).unwrap();
        assert!((b.alpha_ub.value - 0.25).abs() < 1e-12);
        assert!((b.chi_lb.value - 4.0).abs() < 1e-12);
        let b = single_t_bounds(2, 0.0).unwrap();
        assert!((b.chi_lb.value - 2.0).abs() < 1e-12);
        assert!((b.alpha_ub.value - 0.5).abs() < 1e-12);
        let b = single_t_bounds(2, -0.5).unwrap();
        assert!((b.chi_lb.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn optimizer_examples() {
        let o = optimize_sphere_measure(3, &[-1.0 / 3.0], 32, 1e-10).unwrap();
        assert!((o.report.value - 4.0).abs() < 1e-9);
        let o2 = optimize_sphere_measure(3, &[-0.8, -1.0 / 3.0], 32, 1e-10).unwrap();
        assert!(o2.report.value >= 4.0 - 1e-9);
        let o3 = optimize_sphere_measure(2, &[0.0], 16, 1e-10).unwrap();
        assert!((o3.report.value - 2.0).abs() < 1e-9);
        assert!(optimize_sphere_measure(3, &[], 16, 1e-10).is_err());
    }
}
