//! Special functions: Bessel functions of the first kind and their first
//! zeros, the radial Fourier profile Ωₙ of the unit sphere, and Jacobi
//! polynomials normalized to one at t = 1.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{BoundError, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) by the Lanczos approximation (g = 7, nine terms).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut a = LANCZOS[0];
        let t = x + LANCZOS_G + 0.5;
        for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
    }
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    let t = x + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

pub const MAX_BESSEL_ORDER: f64 = 60.0;
pub const MAX_BESSEL_ARG: f64 = 1e4;

/// J_ν(x) for real order ν ∈ [0, 60] and x ∈ [0, 10⁴].
pub fn bessel_j(order: f64, x: f64) -> Result<f64> {
    if !(0.0..=MAX_BESSEL_ORDER).contains(&order) {
        return Err(BoundError::Domain(format!("Bessel order {order} outside [0, 60]")));
    }
    if !(0.0..=MAX_BESSEL_ARG).contains(&x) {
        return Err(BoundError::Domain(format!("Bessel argument {x} outside [0, 1e4]")));
    }
    Ok(bessel_j_unchecked(order, x))
}

/// Which evaluation route `bessel_j` takes; exposed so tests can cross-check routes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselRoute {
    Series,
    Asymptotic,
    BackwardRecurrence,
}

pub(crate) fn bessel_j_unchecked(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if use_series(nu, x) {
        return bessel_series(nu, x);
    }
    if let Some(v) = bessel_asymptotic(nu, x) {
        return v;
    }
    bessel_backward(nu, x)
}

/// Route selection. The power series is used while the terms stay small
/// enough that alternating cancellation costs at most a few digits.
pub fn bessel_route(nu: f64, x: f64) -> BesselRoute {
    if x == 0.0 || use_series(nu, x) {
        BesselRoute::Series
    } else if bessel_asymptotic(nu, x).is_some() {
        BesselRoute::Asymptotic
    } else {
        BesselRoute::BackwardRecurrence
    }
}

fn use_series(nu: f64, x: f64) -> bool {
    x <= 12.0 || 0.25 * x * x <= 4.0 * (nu + 1.0)
}

/// Σ (−1)^m (x/2)^{2m+ν} / (m! Γ(m+ν+1)).
pub fn bessel_series(nu: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    let lead = (nu * (0.5 * x).ln() - ln_gamma(nu + 1.0)).exp();
    lead * normalized_series(nu, 0.25 * x * x)
}

/// Σ (−y)^m / (m! (ν+1)_m), i.e. Γ(ν+1)(2/x)^ν J_ν(x) with y = x²/4.
fn normalized_series(nu: f64, y: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= -y / (m * (m + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) || m > 500.0 {
            break;
        }
    }
    sum
}

/// Hankel asymptotic expansion; `None` when the expansion has not reached
/// 1e-15 before its terms start growing.
pub fn bessel_asymptotic(nu: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0_f64;
    let mut k = 1.0;
    let mut converged = false;
    while k < 200.0 {
        let odd = 2.0 * k - 1.0;
        let next = term * (mu - odd * odd) / (k * 8.0 * x);
        if next == 0.0 {
            converged = true;
            break;
        }
        if next.abs() > term.abs() {
            break;
        }
        term = next;
        // signs: t1 +Q, t2 -P, t3 -Q, t4 +P, ...
        match (k as u64) % 4 {
            1 => q += term,
            2 => p -= term,
            3 => q -= term,
            _ => p += term,
        }
        if term.abs() < 1e-16 {
            converged = true;
            break;
        }
        k += 1.0;
    }
    if !converged {
        return None;
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    Some((2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin()))
}

/// Miller's backward recurrence on orders μ+k (μ = frac ν), normalized by
/// (x/2)^μ = Σ_i (μ+2i) Γ(μ+i)/i! · J_{μ+2i}(x).
pub fn bessel_backward(nu: f64, x: f64) -> f64 {
    let n0 = nu.floor() as usize;
    let mu = nu - n0 as f64;
    let top = nu.max(x);
    let mut start = (top + (160.0 * top).sqrt() + 30.0).ceil() as usize;
    start += start % 2;

    // d_i/Γ(μ+1): d_0 = 1, d_i = (μ+2i) g_i with g_1 = 1, g_{i+1} = g_i (μ+i)/(i+1)
    let half = start / 2;
    let mut d = vec![0.0; half + 1];
    d[0] = 1.0;
    let mut g = 1.0;
    for (i, di) in d.iter_mut().enumerate().skip(1) {
        if i > 1 {
            g *= (mu + (i - 1) as f64) / i as f64;
        }
        *di = (mu + 2.0 * i as f64) * g;
    }

    let mut f_next = 0.0;
    let mut f = 1e-30;
    let mut sum = if start % 2 == 0 { d[start / 2] * f } else { 0.0 };
    let mut target = if start == n0 { f } else { 0.0 };
    for k in (1..=start).rev() {
        let f_prev = 2.0 * (mu + k as f64) / x * f - f_next;
        f_next = f;
        f = f_prev;
        let idx = k - 1;
        if idx == n0 {
            target = f;
        }
        if idx % 2 == 0 {
            sum += d[idx / 2] * f;
        }
        if f.abs() > 1e250 {
            f *= 1e-250;
            f_next *= 1e-250;
            sum *= 1e-250;
            target *= 1e-250;
        }
    }
    let norm = (mu * (0.5 * x).ln()).exp() / gamma(mu + 1.0);
    target * norm / sum
}

/// Smallest positive zero of J_ν, ν ∈ [0, 60].
pub fn bessel_first_zero(order: f64) -> Result<f64> {
    if !(0.0..=MAX_BESSEL_ORDER).contains(&order) {
        return Err(BoundError::Domain(format!("Bessel order {order} outside [0, 60]")));
    }
    let f = |x: f64| bessel_j_unchecked(order, x);
    // J_ν > 0 on (0, j_{ν,1}) and j_{ν,1} > ν + 1
    let mut lo = order + 1.0;
    if f(lo) <= 0.0 {
        return Err(BoundError::Bracketing(order));
    }
    let mut found = None;
    'expand: for window in 0..40 {
        let w_lo = order + 1.0 + 3.0 * window as f64;
        let w_hi = w_lo + 3.0;
        let mut a = w_lo;
        while a < w_hi {
            let b = (a + 0.25).min(w_hi);
            if f(b) <= 0.0 {
                found = Some((a, b));
                break 'expand;
            }
            lo = b;
            a = b;
        }
    }
    let (mut a, mut b) = found.ok_or(BoundError::Bracketing(order))?;
    debug_assert!(a >= lo - 0.25);
    let mut fa = f(a);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

pub const MAX_DIMENSION: usize = 32;

/// Ωₙ(t) = Γ(n/2)(2/t)^{(n−2)/2} J_{(n−2)/2}(t), the Fourier transform of the
/// uniform probability measure on the unit sphere of ℝⁿ at radial frequency t,
/// with Ωₙ(0) = 1. For n = 1 this is cos t.
pub fn omega(n: usize, t: f64) -> Result<f64> {
    if !(1..=MAX_DIMENSION).contains(&n) {
        return Err(BoundError::Domain(format!("dimension {n} outside [1, 32]")));
    }
    if !(0.0..=MAX_BESSEL_ARG).contains(&t) {
        return Err(BoundError::Domain(format!("argument {t} outside [0, 1e4]")));
    }
    Ok(omega_unchecked(n, t))
}

pub(crate) fn omega_unchecked(n: usize, t: f64) -> f64 {
    if n == 1 {
        return t.cos();
    }
    if t == 0.0 {
        return 1.0;
    }
    let nu = 0.5 * (n as f64 - 2.0);
    if use_series(nu, t) {
        return normalized_series(nu, 0.25 * t * t);
    }
    let pre = (ln_gamma(nu + 1.0) + nu * (2.0 / t).ln()).exp();
    pre * bessel_j_unchecked(nu, t)
}

/// Upper envelope of |Ωₙ(t)|. For ν = (n−2)/2 ≤ 1/2 this is the classical
/// √(2/(πt)) Bessel amplitude bound; for larger ν the amplitude past the
/// turning point is √(2/(π√(t²−ν²))). Capped at 1.
pub fn omega_envelope(n: usize, t: f64) -> f64 {
    if n == 1 || t <= 0.0 {
        return 1.0;
    }
    let nu = 0.5 * (n as f64 - 2.0);
    let amp = if nu <= 0.5 {
        (2.0 / (PI * t)).sqrt()
    } else if t > nu {
        (2.0 / (PI * (t * t - nu * nu).sqrt())).sqrt()
    } else {
        return 1.0;
    };
    (gamma(nu + 1.0) * (2.0 / t).powf(nu) * amp).min(1.0)
}

/// Jacobi parameters with equal indices α = β = (n−3)/2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    pub alpha: f64,
}

impl JacobiParams {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha >= -0.5) || !alpha.is_finite() {
            return Err(BoundError::Domain(format!("Jacobi alpha {alpha} below -1/2")));
        }
        Ok(Self { alpha })
    }

    /// Parameters for the sphere S^{n−1} ⊂ ℝⁿ.
    pub fn for_dimension(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(BoundError::Domain(format!("sphere dimension {n} below 2")));
        }
        Ok(Self {
            alpha: 0.5 * (n as f64 - 3.0),
        })
    }

    pub fn is_chebyshev(&self) -> bool {
        self.alpha == -0.5
    }
}

pub const MAX_JACOBI_DEGREE: usize = 10_000;

/// P̄_k^{(α,α)}(t), normalized so that P̄_k(1) = 1.
pub fn jacobi_normalized(k: usize, p: JacobiParams, t: f64) -> Result<f64> {
    check_jacobi(k, t)?;
    if p.is_chebyshev() {
        return Ok((k as f64 * t.acos()).cos());
    }
    Ok(*jacobi_recurrence(k, p.alpha, t).last().expect("k+1 values"))
}

/// P̄_0(t), …, P̄_kmax(t) in one pass.
pub fn jacobi_sequence(kmax: usize, p: JacobiParams, t: f64) -> Result<Vec<f64>> {
    check_jacobi(kmax, t)?;
    if p.is_chebyshev() {
        let theta = t.acos();
        return Ok((0..=kmax).map(|k| (k as f64 * theta).cos()).collect());
    }
    Ok(jacobi_recurrence(kmax, p.alpha, t))
}

fn check_jacobi(k: usize, t: f64) -> Result<()> {
    if k > MAX_JACOBI_DEGREE {
        return Err(BoundError::Domain(format!("degree {k} above {MAX_JACOBI_DEGREE}")));
    }
    if !(-1.0..=1.0).contains(&t) {
        return Err(BoundError::Domain(format!("t = {t} outside [-1, 1]")));
    }
    Ok(())
}

/// Three-term recurrence for the normalized polynomials. Dividing the
/// classical recurrence by P_k(1) = (α+1)_k / k! gives
/// P̄_k = ((2k+2α−1) t P̄_{k−1} − (k−1) P̄_{k−2}) / (k+2α),
/// which keeps every iterate in [−1, 1] and never overflows.
/// Valid for α = −1/2 as well, where it is the Chebyshev recurrence.
pub fn jacobi_recurrence(kmax: usize, alpha: f64, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(1.0);
    if kmax == 0 {
        return out;
    }
    out.push(t);
    let (mut prev, mut cur) = (1.0, t);
    for k in 2..=kmax {
        let kf = k as f64;
        let next = ((2.0 * kf + 2.0 * alpha - 1.0) * t * cur - (kf - 1.0) * prev) / (kf + 2.0 * alpha);
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// Smallest q ≤ `max_q` with |x − p/q| ≤ 1e−12, from the continued fraction of x.
pub(crate) fn rational_approx(x: f64, max_q: u64) -> Option<(u64, u64)> {
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a > 1e12 {
            break;
        }
        let a = a as u64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_q {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() <= 1e-12 {
            return Some((h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a as f64;
        if frac <= 0.0 {
            break;
        }
        r = 1.0 / frac;
    }
    None
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(5.0) - 24.0).abs() < 1e-12);
        assert!((gamma(1.5) - 0.5 * PI.sqrt()).abs() < 1e-14);
        assert!((ln_gamma(61.0) - (2..=60).map(|k| (k as f64).ln()).sum::<f64>()).abs() < 1e-10);
    }

    #[test]
    fn bessel_basic_values() {
        assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(2.0, 0.0).unwrap(), 0.0);
        assert!(bessel_j(0.5, PI).unwrap().abs() < 1e-12);
        assert!(bessel_j(-1.0, 1.0).is_err());
        assert!(bessel_j(1.0, 2e4).is_err());
    }

    #[test]
    fn half_integer_closed_forms_across_routes() {
        for &x in &[0.3, 5.0, 13.0, 40.0, 250.0, 3000.0] {
            let j12 = (2.0 / (PI * x)).sqrt() * x.sin();
            let j32 = (2.0 / (PI * x)).sqrt() * (x.sin() / x - x.cos());
            assert!((bessel_j(0.5, x).unwrap() - j12).abs() < 1e-12, "x={x}");
            assert!((bessel_j(1.5, x).unwrap() - j32).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn routes_agree_where_they_overlap() {
        for &nu in &[0.0, 0.3, 1.0, 2.5, 7.0] {
            for &x in &[14.0, 20.0, 35.0, 60.0] {
                let b = bessel_backward(nu, x);
                if let Some(a) = bessel_asymptotic(nu, x) {
                    assert!((a - b).abs() < 1e-12, "nu={nu} x={x}: {a} vs {b}");
                }
                let s = bessel_series(nu, x);
                if x < 25.0 {
                    assert!((s - b).abs() < 1e-9, "nu={nu} x={x}: {s} vs {b}");
                }
            }
        }
    }

    #[test]
    fn first_zeros() {
        assert!((bessel_first_zero(0.5).unwrap() - PI).abs() < 1e-10);
        assert!((bessel_first_zero(1.0).unwrap() - 3.831_705_970_207_512).abs() < 1e-10);
        assert!((bessel_first_zero(0.0).unwrap() - 2.404_825_557_695_773).abs() < 1e-10);
        let z60 = bessel_first_zero(60.0).unwrap();
        assert!(bessel_j(60.0, z60).unwrap().abs() < 1e-12);
        assert!(bessel_j(60.0, z60 - 1.0).unwrap() > 0.0);
    }

    #[test]
    fn omega_special_cases() {
        for n in 1..=32 {
            assert_eq!(omega(n, 0.0).unwrap(), 1.0);
        }
        assert!((omega(3, PI / 2.0).unwrap() - 2.0 / PI).abs() < 1e-14);
        assert!((omega(3, 40.0).unwrap() - 40f64.sin() / 40.0).abs() < 1e-14);
        assert!((omega(1, 2.0).unwrap() - 2f64.cos()).abs() < 1e-15);
        assert!(omega(33, 1.0).is_err());
    }

    #[test]
    fn jacobi_base_cases() {
        let p = JacobiParams::new(1.3).unwrap();
        assert_eq!(jacobi_normalized(0, p, 0.4).unwrap(), 1.0);
        assert_eq!(jacobi_normalized(1, p, 0.4).unwrap(), 0.4);
        let legendre = JacobiParams::for_dimension(3).unwrap();
        assert!((jacobi_normalized(2, legendre, -1.0 / 3.0).unwrap() + 1.0 / 3.0).abs() < 1e-15);
        assert!(JacobiParams::new(-0.6).is_err());
        assert!(jacobi_normalized(3, p, 1.2).is_err());
        for k in [0, 5, 100] {
            assert!((jacobi_normalized(k, p, 1.0).unwrap() - 1.0).abs() < 1e-12);
        }
    }
}
