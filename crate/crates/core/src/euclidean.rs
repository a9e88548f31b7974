//! Bounds for translation-invariant graphs G(ℝⁿ, N) where N is a finite
//! union of spheres d_i·S^{n−1}.
//!
//! A radial measure ν = Σ w_i ω_{d_i} gives a convolution operator whose
//! numerical range is [inf ν̂, sup ν̂], and ν̂(u) = Σ w_i Ωₙ(d_i ‖u‖). The
//! frequency search is therefore one-dimensional.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{BoundError, Result};
use crate::lp::{LinearProgram, Relation};
use crate::report::{BoundKind, BoundReport, Provenance};
use crate::special::{bessel_first_zero, gcd, omega_envelope, omega_unchecked, rational_approx, MAX_DIMENSION};

/// Default accuracy for the extrema scan.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Scan points per oscillation period of the fastest atom.
pub const POINTS_PER_PERIOD: f64 = 40.0;

/// Hard cap on scan length; beyond it the result is reported uncertified.
pub const MAX_SCAN_POINTS: usize = 4_000_000;

/// Largest denominator tried when recognizing radius ratios as rational
/// (only used on the line, where the transform is almost periodic).
pub const MAX_RADIUS_DENOMINATOR: u64 = 1000;

/// Number of equispaced frequencies in the initial LP grid.
pub const LP_GRID_POINTS: usize = 512;

/// Finite signed combination Σ w_i ω_{d_i} of uniform probability measures on
/// spheres of radius d_i. Serialized as `{"dim": n, "atoms": [[d, w], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure", into = "RawMeasure")]
pub struct RadialMeasure {
    dim: usize,
    atoms: Vec<(f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct RawMeasure {
    dim: usize,
    atoms: Vec<(f64, f64)>,
}

impl TryFrom<RawMeasure> for RadialMeasure {
    type Error = BoundError;
    fn try_from(raw: RawMeasure) -> Result<Self> {
        RadialMeasure::new(raw.dim, raw.atoms)
    }
}

impl From<RadialMeasure> for RawMeasure {
    fn from(m: RadialMeasure) -> Self {
        RawMeasure {
            dim: m.dim,
            atoms: m.atoms,
        }
    }
}

impl RadialMeasure {
    /// Radii must be positive and strictly increasing. Dimension 1 is
    /// accepted (the "sphere" is {±d} and Ω₁ = cos) for discretization checks.
    pub fn new(dim: usize, atoms: Vec<(f64, f64)>) -> Result<Self> {
        if !(1..=MAX_DIMENSION).contains(&dim) {
            return Err(BoundError::Domain(format!("dimension {dim} outside [1, 32]")));
        }
        for (i, &(d, w)) in atoms.iter().enumerate() {
            if !(d.is_finite() && d > 0.0) {
                return Err(BoundError::InvalidInput(format!("radius {d} is not positive")));
            }
            if !w.is_finite() {
                return Err(BoundError::InvalidInput(format!("weight {w} is not finite")));
            }
            if i > 0 && atoms[i - 1].0 >= d {
                return Err(BoundError::InvalidInput("radii must be strictly increasing".into()));
            }
        }
        Ok(Self { dim, atoms })
    }

    /// Uniform probability measure on the sphere of radius `d`.
    pub fn shell(dim: usize, d: f64) -> Result<Self> {
        Self::new(dim, vec![(d, 1.0)])
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

    pub fn is_nonnegative(&self) -> bool {
        self.atoms.iter().all(|a| a.1 >= 0.0)
    }

    fn is_zero(&self) -> bool {
        self.atoms.iter().all(|a| a.1 == 0.0)
    }

    /// Same shells with every radius multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.dim, self.atoms.iter().map(|&(d, w)| (c * d, w)).collect())
    }

    /// Same shells with every weight multiplied by `c`.
    pub fn reweighted(&self, c: f64) -> Result<Self> {
        Self::new(self.dim, self.atoms.iter().map(|&(d, w)| (d, c * w)).collect())
    }
}

/// ν̂ at any frequency of norm `r`: Σ w_i Ωₙ(d_i r).
pub fn fourier_radial(mu: &RadialMeasure, r: f64) -> f64 {
    if r == 0.0 {
        return mu.total_mass();
    }
    mu.atoms
        .iter()
        .map(|&(d, w)| {
            if w == 0.0 {
                0.0
            } else {
                w * omega_unchecked(mu.dim, d * r)
            }
        })
        .sum()
}

/// Tail envelope Σ|w_i|·sup_{s ≥ r} |Ωₙ(d_i s)|.
fn tail_envelope(mu: &RadialMeasure, r: f64) -> f64 {
    let nu = 0.5 * (mu.dim as f64 - 2.0);
    mu.atoms
        .iter()
        .map(|&(d, w)| {
            let t = d * r;
            // the envelope is decreasing only past the turning point
            let e = if nu > 0.5 && t <= 1.5 * nu {
                1.0
            } else {
                omega_envelope(mu.dim, t)
            };
            w.abs() * e
        })
        .sum()
}

/// Global infimum and supremum of r ↦ ν̂(r) over r ≥ 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremaReport {
    pub inf_value: f64,
    pub sup_value: f64,
    pub inf_arg: f64,
    pub sup_arg: f64,
    pub cutoff: f64,
    pub grid_points: usize,
    /// False when the tail envelope could not be pushed below the threshold
    /// within the scan budget.
    pub certified: bool,
}

struct Scan {
    step: f64,
    values: Vec<f64>,
    cutoff: f64,
    certified: bool,
}

impl Scan {
    fn arg(&self, i: usize) -> f64 {
        i as f64 * self.step
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol >= 1e-12) || !tol.is_finite() {
        return Err(BoundError::Domain(format!("tolerance {tol} below 1e-12")));
    }
    Ok(())
}

fn eval_range(mu: &RadialMeasure, step: f64, from: usize, to: usize) -> Vec<f64> {
    (from..to)
        .into_par_iter()
        .map(|i| fourier_radial(mu, i as f64 * step))
        .collect()
}

/// Dense scan of ν̂ from 0 out to a cutoff beyond which the tail envelope
/// cannot beat the extremes already found (or falls below `tol`).
fn scan(mu: &RadialMeasure, tol: f64) -> Scan {
    let d_max = mu.atoms.last().map_or(1.0, |a| a.0);
    let d_min = mu.atoms.first().map_or(1.0, |a| a.0);
    let step = 2.0 * std::f64::consts::PI / (POINTS_PER_PERIOD * d_max);
    if mu.dim == 1 {
        return periodic_scan(mu, step, d_min);
    }
    let nu = 0.5 * (mu.dim as f64 - 2.0);
    let first_min = if mu.dim >= 2 {
        bessel_first_zero(0.5 * mu.dim as f64).unwrap_or(nu + 4.0)
    } else {
        std::f64::consts::PI
    };
    let mut cutoff = (2.0 * first_min + 10.0).max(3.0 * nu) / d_min;
    let mut n_pts = (cutoff / step).ceil() as usize + 1;
    let mut values = eval_range(mu, step, 0, n_pts.min(MAX_SCAN_POINTS));
    let mut certified = true;
    loop {
        let inf = values.iter().copied().fold(f64::INFINITY, f64::min);
        let sup = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let threshold = tol.max((-inf).max(0.0).min(sup.max(0.0)));
        if tail_envelope(mu, cutoff) <= threshold {
            break;
        }
        let mut next = cutoff * 2.0;
        while tail_envelope(mu, next) > threshold && next < 1e12 {
            next *= 2.0;
        }
        // bisect back down to the smallest doubling-free cutoff
        let mut lo = cutoff;
        for _ in 0..40 {
            let mid = 0.5 * (lo + next);
            if tail_envelope(mu, mid) <= threshold {
                next = mid;
            } else {
                lo = mid;
            }
        }
        let new_pts = (next / step).ceil() as usize + 1;
        if new_pts > MAX_SCAN_POINTS {
            let capped = MAX_SCAN_POINTS;
            if capped > values.len() {
                values.extend(eval_range(mu, step, values.len(), capped));
            }
            cutoff = (capped - 1) as f64 * step;
            certified = false;
            break;
        }
        values.extend(eval_range(mu, step, n_pts, new_pts));
        n_pts = new_pts;
        cutoff = next;
    }
    let cutoff = cutoff.min((values.len() - 1) as f64 * step);
    Scan {
        step,
        values,
        cutoff,
        certified,
    }
}

/// On the line ν̂(r) = Σ w_i cos(d_i r) does not decay. With commensurable
/// radii it is periodic and one period is scanned; otherwise the scan runs
/// to the budget and is reported uncertified.
fn periodic_scan(mu: &RadialMeasure, step: f64, d_min: f64) -> Scan {
    let mut q_all: Option<u64> = Some(1);
    for &(d, _) in &mu.atoms {
        q_all = match (q_all, rational_approx(d / d_min, MAX_RADIUS_DENOMINATOR)) {
            (Some(l), Some((_, q))) => l.checked_mul(q / gcd(l, q)),
            _ => None,
        };
    }
    let budget = (MAX_SCAN_POINTS - 1) as f64 * step;
    let (cutoff, certified) = match q_all {
        Some(q) if 2.0 * std::f64::consts::PI * q as f64 / d_min <= budget => {
            (2.0 * std::f64::consts::PI * q as f64 / d_min, true)
        }
        _ => (budget, false),
    };
    let n_pts = (cutoff / step).ceil() as usize + 1;
    Scan {
        step,
        values: eval_range(mu, step, 0, n_pts),
        cutoff,
        certified,
    }
}

/// Golden-section search for a local minimum of `f` on [a, b].
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let invphi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-13 * (1.0 + a.abs()) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Indices of grid local minima, most negative first.
fn local_minima(values: &[f64]) -> Vec<usize> {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n)
        .filter(|&i| {
            let left = i == 0 || values[i - 1] >= values[i];
            let right = i + 1 == n || values[i + 1] >= values[i];
            left && right
        })
        .collect();
    idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap().then(a.cmp(&b)));
    idx
}

/// Refines a grid local minimum of `sign`·ν̂ at index `i`.
fn refine(mu: &RadialMeasure, s: &Scan, i: usize, sign: f64) -> (f64, f64) {
    let lo = if i == 0 { 0.0 } else { s.arg(i - 1) };
    let hi = s.arg((i + 1).min(s.values.len() - 1));
    if hi <= lo {
        return (s.arg(i), s.values[i]);
    }
    let (x, fx) = golden_min(|r| sign * fourier_radial(mu, r), lo, hi);
    let grid_val = sign * s.values[i];
    if grid_val <= fx {
        (s.arg(i), s.values[i])
    } else {
        (x, sign * fx)
    }
}

/// Refined minima of `sign`·ν̂ whose grid value is within `window` of the best.
fn refined_minima(mu: &RadialMeasure, s: &Scan, sign: f64, window: f64) -> Vec<(f64, f64)> {
    let signed: Vec<f64> = s.values.iter().map(|v| sign * v).collect();
    let minima = local_minima(&signed);
    let best = minima.first().map_or(0.0, |&i| signed[i]);
    minima
        .into_iter()
        .take_while(|&i| signed[i] <= best + window)
        .take(64)
        .map(|i| refine(mu, s, i, sign))
        .collect()
}

fn pick_best(cands: &[(f64, f64)], sign: f64) -> (f64, f64) {
    cands
        .iter()
        .copied()
        .min_by(|a, b| {
            (sign * a.1)
                .partial_cmp(&(sign * b.1))
                .unwrap()
                .then(a.0.partial_cmp(&b.0).unwrap())
        })
        .expect("at least one candidate")
}

/// Infimum and supremum of ν̂ over all frequencies: dense scan at ≥ 40
/// points per period of the largest radius out to an envelope-certified
/// cutoff, then golden-section refinement of the leading candidates.
pub fn global_extrema(mu: &RadialMeasure, tol: f64) -> Result<ExtremaReport> {
    check_tol(tol)?;
    if mu.atoms.is_empty() || mu.is_zero() {
        return Ok(ExtremaReport {
            inf_value: 0.0,
            sup_value: 0.0,
            inf_arg: 0.0,
            sup_arg: 0.0,
            cutoff: 0.0,
            grid_points: 1,
            certified: true,
        });
    }
    let s = scan(mu, tol);
    let window = 1e-2 * mu.total_variation();
    let (inf_arg, inf_value) = pick_best(&refined_minima(mu, &s, 1.0, window), 1.0);
    let (sup_arg, sup_value) = pick_best(&refined_minima(mu, &s, -1.0, window), -1.0);
    Ok(ExtremaReport {
        inf_value,
        sup_value,
        inf_arg,
        sup_arg,
        cutoff: s.cutoff,
        grid_points: s.values.len(),
        certified: s.certified,
    })
}

fn provenance(ext: &ExtremaReport) -> Provenance {
    Provenance {
        grid_points: Some(ext.grid_points),
        cutoff: Some(ext.cutoff),
        inf_arg: Some(ext.inf_arg),
        certified: Some(ext.certified),
        ..Provenance::default()
    }
}

/// χ_m(G(ℝⁿ, N)) ≥ (sup ν̂ − inf ν̂)/(−inf ν̂).
pub fn chromatic_bound_euclidean(mu: &RadialMeasure) -> Result<BoundReport> {
    chromatic_bound_euclidean_tol(mu, DEFAULT_TOL)
}

pub fn chromatic_bound_euclidean_tol(mu: &RadialMeasure, tol: f64) -> Result<BoundReport> {
    let ext = global_extrema(mu, tol)?;
    if ext.inf_value >= 0.0 {
        return Err(BoundError::Vacuous(format!(
            "inf of the Fourier transform is {} >= 0",
            ext.inf_value
        )));
    }
    Ok(
        BoundReport::chromatic(BoundKind::ChiLb, ext.inf_value, ext.sup_value, ext.sup_value)?
            .with_provenance(provenance(&ext)),
    )
}

/// α̅(G(ℝⁿ, N)) ≤ (−inf ν̂)/(ν̂(0) − inf ν̂) for nonnegative ν.
pub fn density_bound(mu: &RadialMeasure) -> Result<BoundReport> {
    density_bound_tol(mu, DEFAULT_TOL)
}

pub fn density_bound_tol(mu: &RadialMeasure, tol: f64) -> Result<BoundReport> {
    if !mu.is_nonnegative() {
        return Err(BoundError::InvalidInput(
            "density bound needs nonnegative weights".into(),
        ));
    }
    if mu.is_zero() || mu.atoms.is_empty() {
        return Err(BoundError::Vacuous("zero measure".into()));
    }
    let ext = global_extrema(mu, tol)?;
    if ext.inf_value >= 0.0 {
        return Err(BoundError::Vacuous(format!(
            "inf of the Fourier transform is {} >= 0",
            ext.inf_value
        )));
    }
    let mut report = BoundReport::ratio(ext.inf_value, ext.sup_value, mu.total_mass(), 0.0)?;
    report.provenance = provenance(&ext);
    Ok(report)
}

/// Truncated Steinhardt measure ((β−1)/β) Σ_{k=0}^{N} β^{−k} ω_{2k+1} on ℝ².
pub fn steinhardt_measure(beta: f64, n_terms: usize) -> Result<RadialMeasure> {
    if !(beta > 1.0 && beta <= 10.0) {
        return Err(BoundError::Domain(format!("beta {beta} outside (1, 10]")));
    }
    if n_terms > 10_000 {
        return Err(BoundError::Domain(format!("N = {n_terms} above 10^4")));
    }
    let c = (beta - 1.0) / beta;
    let atoms = (0..=n_terms)
        .map(|k| ((2 * k + 1) as f64, c * beta.powi(-(k as i32))))
        .collect();
    RadialMeasure::new(2, atoms)
}

/// Bounds for the unit-distance graph G(ℝⁿ, S^{n−1}) from the uniform
/// measure on the unit sphere, whose transform Ωₙ attains its minimum at
/// the first zero j_{n/2,1} of J_{n/2}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitDistanceBounds {
    pub chi_lb: BoundReport,
    pub alpha_ub: BoundReport,
}

pub fn unit_distance_bound(n: usize) -> Result<UnitDistanceBounds> {
    if !(2..=MAX_DIMENSION).contains(&n) {
        return Err(BoundError::Domain(format!("dimension {n} outside [2, 32]")));
    }
    let z = bessel_first_zero(0.5 * n as f64)?;
    let om = omega_unchecked(n, z);
    let prov = Provenance {
        inf_arg: Some(z),
        ..Provenance::default()
    };
    let chi_lb = BoundReport::chromatic(BoundKind::ChiLb, om, 1.0, 1.0)?.with_provenance(prov.clone());
    let alpha_ub = BoundReport::ratio(om, 1.0, 1.0, 0.0)?.with_provenance(prov);
    Ok(UnitDistanceBounds { chi_lb, alpha_ub })
}

/// Result of the cutting-plane optimization over probability weights.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialOptimum {
    pub measure: RadialMeasure,
    /// Bound certified by the global extrema of the returned measure.
    pub report: BoundReport,
    /// LP optimum t* on the final frequency grid.
    pub lp_value: f64,
    pub rounds: usize,
    pub grid_size: usize,
    /// True when the true minimum agrees with t* within tol.
    pub converged: bool,
}

/// Maximizes the chromatic bound over probability weights on fixed shells:
/// maximize t s.t. Σ w_i Ωₙ(d_i r_j) ≥ t on a frequency grid, Σ w = 1,
/// w ≥ 0; then append the true minimizers of the current measure as new
/// frequencies until the LP value and the true minimum agree within `tol`.
pub fn optimize_radial_measure(n: usize, radii: &[f64], max_rounds: usize, tol: f64) -> Result<RadialOptimum> {
    check_tol(tol)?;
    if radii.is_empty() {
        return Err(BoundError::InvalidInput("no radii given".into()));
    }
    let mut radii = radii.to_vec();
    radii.sort_by(|a, b| a.partial_cmp(b).expect("finite radii"));
    let k = radii.len();
    let uniform = RadialMeasure::new(n, radii.iter().map(|&d| (d, 1.0 / k as f64)).collect())?;
    let initial = global_extrema(&uniform, tol)?;
    let mut grid: Vec<f64> = (0..LP_GRID_POINTS)
        .map(|j| initial.cutoff * j as f64 / (LP_GRID_POINTS - 1) as f64)
        .collect();

    let mut rounds = 0;
    loop {
        rounds += 1;
        // variables: w_1..w_k, s = t + 1 ≥ 0 (|Ωₙ| ≤ 1 so t ≥ −1)
        let mut obj = vec![0.0; k + 1];
        obj[k] = 1.0;
        let mut lp = LinearProgram::maximize(obj);
        let mut simplex = vec![1.0; k + 1];
        simplex[k] = 0.0;
        lp.add_row(simplex, Relation::Eq, 1.0);
        for &r in &grid {
            let mut row: Vec<f64> = radii.iter().map(|&d| -omega_unchecked(n, d * r)).collect();
            row.push(1.0);
            lp.add_row(row, Relation::Le, 1.0);
        }
        let sol = lp.solve()?;
        let t_star = sol.x[k] - 1.0;
        let mut w: Vec<f64> = sol.x[..k].iter().map(|&x| x.max(0.0)).collect();
        let total: f64 = w.iter().sum();
        if total <= 0.0 {
            return Err(BoundError::Internal("LP returned zero weights".into()));
        }
        for x in &mut w {
            *x /= total;
        }
        let measure = RadialMeasure::new(n, radii.iter().copied().zip(w).collect())?;
        let s = scan(&measure, tol);
        let window = 1e-2;
        let cands = refined_minima(&measure, &s, 1.0, window);
        let (inf_arg, inf_value) = pick_best(&cands, 1.0);
        let converged = inf_value >= t_star - tol;
        if converged || rounds >= max_rounds {
            if inf_value >= 0.0 {
                return Err(BoundError::Vacuous("vacuous on this support".into()));
            }
            let sup = measure.total_mass();
            let ext = ExtremaReport {
                inf_value,
                sup_value: sup,
                inf_arg,
                sup_arg: 0.0,
                cutoff: s.cutoff,
                grid_points: s.values.len(),
                certified: s.certified,
            };
            let report =
                BoundReport::chromatic(BoundKind::ChiLb, inf_value, sup, sup)?.with_provenance(provenance(&ext));
            return Ok(RadialOptimum {
                measure,
                report,
                lp_value: t_star,
                rounds,
                grid_size: grid.len(),
                converged,
            });
        }
        let before = grid.len();
        for &(r, v) in &cands {
            if v < t_star - tol {
                grid.push(r);
            }
        }
        if grid.len() == before {
            grid.push(inf_arg);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const J0_MIN: f64 = -0.402_759_395_702_553;
    const SINC_MIN: f64 = -0.217_233_628_211_222;

    #[test]
    fn fourier_examples() {
        let unit = RadialMeasure::shell(3, 1.0).unwrap();
        assert_eq!(fourier_radial(&unit, 0.0), 1.0);
        assert!(fourier_radial(&unit, std::f64::consts::PI).abs() < 1e-15);
        let two = RadialMeasure::new(2, vec![(1.0, 0.5), (2.0, 0.5)]).unwrap();
        assert_eq!(fourier_radial(&two, 0.0), 1.0);
    }

    #[test]
    fn measure_validation_and_json() {
        assert!(RadialMeasure::new(2, vec![(1.0, 1.0), (1.0, 1.0)]).is_err());
        assert!(RadialMeasure::new(2, vec![(0.0, 1.0)]).is_err());
        assert!(RadialMeasure::new(33, vec![(1.0, 1.0)]).is_err());
        let m: RadialMeasure = serde_json::from_str(r#"{"dim": 2, "atoms": [[1, 0.5], [3, 0.5]]}"#).unwrap();
        assert_eq!(m.atoms(), &[(1.0, 0.5), (3.0, 0.5)]);
        assert!(serde_json::from_str::<RadialMeasure>(r#"{"dim": 2, "atoms": [[3, 0.5], [1, 0.5]]}"#).is_err());
        let back: RadialMeasure = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn unit_shell_extrema() {
        let e2 = global_extrema(&RadialMeasure::shell(2, 1.0).unwrap(), 1e-9).unwrap();
        assert!((e2.inf_value - J0_MIN).abs() < 1e-10, "{}", e2.inf_value);
        assert!((e2.inf_arg - 3.831_705_970_2).abs() < 1e-6);
        assert_eq!(e2.sup_value, 1.0);
        assert!(e2.certified);
        let e3 = global_extrema(&RadialMeasure::shell(3, 1.0).unwrap(), 1e-9).unwrap();
        assert!((e3.inf_value - SINC_MIN).abs() < 1e-10);
        assert!((e3.inf_arg - 4.493_409_457_9).abs() < 1e-6);
        let zero = global_extrema(&RadialMeasure::new(2, vec![(1.0, 0.0)]).unwrap(), 1e-9).unwrap();
        assert_eq!((zero.inf_value, zero.sup_value), (0.0, 0.0));
        assert!(global_extrema(&RadialMeasure::shell(2, 1.0).unwrap(), 1e-13).is_err());
    }

    #[test]
    fn unit_shell_bounds() {
        let mu = RadialMeasure::shell(2, 1.0).unwrap();
        let chi = chromatic_bound_euclidean(&mu).unwrap();
        assert!((chi.value - (1.0 - J0_MIN) / -J0_MIN).abs() < 1e-9);
        let dens = density_bound(&mu).unwrap();
        assert!((dens.value - (-J0_MIN) / (1.0 - J0_MIN)).abs() < 1e-9);
        assert!((chi.value * dens.value - 1.0).abs() < 1e-9);
        let scaled = chromatic_bound_euclidean(&mu.reweighted(3.7).unwrap()).unwrap();
        assert!((scaled.value - chi.value).abs() < 1e-9);
        let chi3 = chromatic_bound_euclidean(&RadialMeasure::shell(3, 1.0).unwrap()).unwrap();
        assert!((chi3.value - 5.603_338).abs() < 1e-4);
    }

    #[test]
    fn unit_distance_examples() {
        let b2 = unit_distance_bound(2).unwrap();
        assert!((b2.chi_lb.value - 3.4829).abs() < 1e-4);
        assert!((b2.alpha_ub.value - 0.28712).abs() < 1e-5);
        let b3 = unit_distance_bound(3).unwrap();
        assert!((b3.chi_lb.value - 5.6033).abs() < 1e-4);
        assert!((b3.alpha_ub.value - 0.17846).abs() < 1e-5);
        for n in 2..=32 {
            let b = unit_distance_bound(n).unwrap();
            assert!((b.chi_lb.value * b.alpha_ub.value - 1.0).abs() < 1e-9);
        }
        assert!(unit_distance_bound(1).is_err());
    }

    #[test]
    fn steinhardt_examples() {
        let m0 = steinhardt_measure(2.0, 0).unwrap();
        assert_eq!(m0.atoms(), &[(1.0, 0.5)]);
        let m20 = steinhardt_measure(2.0, 20).unwrap();
        assert!((m20.total_mass() - (1.0 - 2f64.powi(-21))).abs() < 1e-15);
        assert!(steinhardt_measure(1.0, 3).is_err());
        assert!(steinhardt_measure(11.0, 3).is_err());
    }

    #[test]
    fn line_profiles_are_periodic() {
        let mu = RadialMeasure::new(1, vec![(1.0, 0.5), (2.0, 0.5)]).unwrap();
        let e = global_extrema(&mu, 1e-9).unwrap();
        // (cos r + cos 2r)/2 is smallest where cos r = −1/4
        assert!((e.inf_value + 0.5625).abs() < 1e-10);
        assert!(e.certified);
        let irr = RadialMeasure::new(1, vec![(1.0, 0.5), (std::f64::consts::SQRT_2, 0.5)]).unwrap();
        assert!(!global_extrema(&irr, 1e-9).unwrap().certified);
    }

    #[test]
    fn density_rejects_signed() {
        let m = RadialMeasure::new(2, vec![(1.0, 1.0), (2.0, -0.5)]).unwrap();
        assert!(density_bound(&m).is_err());
        assert!(chromatic_bound_euclidean(&m).is_ok());
    }
}
