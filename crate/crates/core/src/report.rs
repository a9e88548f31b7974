use serde::{Deserialize, Serialize};

use crate::error::{BoundError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Lower bound on a (measurable) chromatic number.
    ChiLb,
    /// Upper bound on an independence ratio or upper density.
    AlphaRatioUb,
    /// Lower bound on a fractional chromatic number.
    ChiFracLb,
}

/// Optional data describing how a bound was obtained.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grid_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cutoff: Option<f64>,
    /// Frequency (Euclidean) or degree (sphere) attaining the infimum.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub inf_arg: Option<f64>,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tail_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certified: Option<bool>,
}

/// A bound together with the spectral data that certifies it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub value: f64,
    pub m: f64,
    #[serde(rename = "M")]
    pub big_m: f64,
    #[serde(rename = "R", skip_serializing_if = "Option::is_none", default)]
    pub r: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub epsilon: Option<f64>,
    #[serde(flatten)]
    pub provenance: Provenance,
}

impl BoundReport {
    /// χ ≥ (M − m)/(−m). `top` is M for the Hoffman form or (A1, 1) for the
    /// fractional form.
    pub fn chromatic(kind: BoundKind, m: f64, big_m: f64, top: f64) -> Result<Self> {
        if m == 0.0 && big_m == 0.0 {
            return Err(BoundError::Vacuous("zero operator".into()));
        }
        if m >= 0.0 {
            return Err(BoundError::NoNegativeSpectrum(m));
        }
        Ok(Self {
            kind,
            value: (top - m) / (-m),
            m,
            big_m,
            r: None,
            epsilon: None,
            provenance: Provenance::default(),
        })
    }

    /// α̅ ≤ (−m + 2ε)/(R − m − ε).
    pub fn ratio(m: f64, big_m: f64, r: f64, epsilon: f64) -> Result<Self> {
        let denom = r - m - epsilon;
        if denom <= 0.0 {
            return Err(BoundError::Inapplicable(denom));
        }
        Ok(Self {
            kind: BoundKind::AlphaRatioUb,
            value: (-m + 2.0 * epsilon) / denom,
            m,
            big_m,
            r: Some(r),
            epsilon: Some(epsilon),
            provenance: Provenance::default(),
        })
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Recomputes the value from the stored spectral data.
    pub fn reproduce(&self) -> f64 {
        match self.kind {
            BoundKind::ChiLb => (self.big_m - self.m) / -self.m,
            BoundKind::ChiFracLb => (self.r.unwrap_or(self.big_m) - self.m) / -self.m,
            BoundKind::AlphaRatioUb => {
                let eps = self.epsilon.unwrap_or(0.0);
                let r = self.r.unwrap_or(self.big_m);
                (-self.m + 2.0 * eps) / (r - self.m - eps)
            }
        }
    }
}

/// `x` rounded to 10 significant digits, printed in shortest form.
pub fn format_sig(x: f64) -> String {
    round_sig(x).to_string()
}

/// `x` rounded to 10 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.9e}").parse().expect("float formatting round-trips")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas() {
        let c = BoundReport::chromatic(BoundKind::ChiLb, -2.0, 3.0, 3.0).unwrap();
        assert_eq!(c.value, 2.5);
        assert_eq!(c.reproduce(), 2.5);
        let a = BoundReport::ratio(-2.0, 3.0, 3.0, 0.0).unwrap();
        assert_eq!(a.value, 0.4);
        assert_eq!(a.reproduce(), 0.4);
        assert!(matches!(
            BoundReport::chromatic(BoundKind::ChiLb, 0.0, 0.0, 0.0),
            Err(BoundError::Vacuous(_))
        ));
        assert!(matches!(
            BoundReport::chromatic(BoundKind::ChiLb, 0.5, 1.0, 1.0),
            Err(BoundError::NoNegativeSpectrum(_))
        ));
        assert!(matches!(
            BoundReport::ratio(-1.0, 1.0, 0.5, 2.0),
            Err(BoundError::Inapplicable(_))
        ));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(std::f64::consts::PI), "3.141592654");
        assert_eq!(format_sig(-0.000123456789012), "-0.000123456789");
        assert_eq!(round_sig(2.0), 2.0);
        assert_eq!(format_sig(0.0), "0");
    }

    #[test]
    fn json_field_names() {
        let r = BoundReport::ratio(-1.0, 2.0, 2.0, 0.0).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["kind"], "alpha_ratio_ub");
        assert_eq!(v["M"], 2.0);
        assert_eq!(v["R"], 2.0);
        assert!(v.get("K").is_none());
    }
}
