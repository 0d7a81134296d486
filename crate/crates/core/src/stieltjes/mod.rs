//! Stieltjes constants as sums over log-sine integrals at κ = 2πn.
//!
//! With P₁(x) = −Σ sin(2πnx)/(πn) and g_j(κ) = ∫_1^∞ sin(κx) ln^j x / x² dx,
//!
//!   S_j = Σ_n g_j(2πn)/(πn) = −∫_1^∞ P₁(x) ln^j x / x² dx,
//!
//! S_0 = γ − ½ and γ_j = S_j − j S_{j−1} for j ≥ 1. Each g_j is a finite
//! combination of ln(2πn) powers, constants and one ₚF_{p+1}(…; −π²n²).

mod hurwitz;
mod series;
pub mod tail;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Precision;
use crate::result::SeriesResult;
use crate::trigintegrals::J_MAX;

pub use hurwitz::{digamma_series, digamma_series_with, gamma1_half, gamma1_half_summand, gamma1_half_with};
pub use series::{
    euler_gamma, euler_gamma_partial, gamma1, gamma2, gamma_general, gamma_j, log_sine_sum, log_sine_summand,
    summand_model,
};
pub use tail::{fit_tail, fit_tail_with, power_law_exponent, TailModel, TailTerm};

pub const DEFAULT_TERMS: u64 = 10_000;
pub const DEFAULT_TAIL_ORDER: usize = 8;
pub const DEFAULT_BITS: u32 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Acceleration {
    None,
    /// Subtract the leading n⁻⁴ behaviour of each summand and add back its
    /// ζ(4) sum.
    Paper14,
    /// Close the sum with the asymptotic summand model.
    AsymptoticTail,
}

impl Acceleration {
    pub fn as_str(self) -> &'static str {
        match self {
            Acceleration::None => "none",
            Acceleration::Paper14 => "paper-1-4",
            Acceleration::AsymptoticTail => "asymptotic-tail",
        }
    }
}

impl fmt::Display for Acceleration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Acceleration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Acceleration::None),
            "paper-1-4" | "paper_1_4" => Ok(Acceleration::Paper14),
            "asymptotic-tail" | "asymptotic_tail" => Ok(Acceleration::AsymptoticTail),
            _ => Err(Error::InvalidParameters(format!("unknown acceleration {s:?}"))),
        }
    }
}

/// The Hurwitz parameter a; only 1 and ½ are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shift {
    One,
    Half,
}

impl Shift {
    pub fn as_str(self) -> &'static str {
        match self {
            Shift::One => "1",
            Shift::Half => "1/2",
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Shift {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "1.0" => Ok(Shift::One),
            "1/2" | "0.5" | ".5" => Ok(Shift::Half),
            _ => Err(Error::InvalidParameters(format!("a must be 1 or 1/2, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StieltjesRequest {
    pub k: usize,
    pub a: Shift,
    pub n_terms: u64,
    pub acceleration: Acceleration,
    pub precision: Precision,
    pub tail_order: usize,
}

impl StieltjesRequest {
    /// Defaults: a = 1, 10⁴ terms, asymptotic tail of order 8, 256 bits.
    pub fn new(k: usize) -> Self {
        StieltjesRequest {
            k,
            a: Shift::One,
            n_terms: DEFAULT_TERMS,
            acceleration: Acceleration::AsymptoticTail,
            precision: Precision::new(DEFAULT_BITS).unwrap(),
            tail_order: DEFAULT_TAIL_ORDER,
        }
    }

    pub fn with_a(mut self, a: Shift) -> Self {
        self.a = a;
        self
    }

    pub fn with_terms(mut self, n: u64) -> Self {
        self.n_terms = n;
        self
    }

    pub fn with_acceleration(mut self, acc: Acceleration) -> Self {
        self.acceleration = acc;
        self
    }

    pub fn with_precision(mut self, p: Precision) -> Self {
        self.precision = p;
        self
    }

    pub fn with_tail_order(mut self, order: usize) -> Self {
        self.tail_order = order;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k > J_MAX {
            return Err(Error::RecursionDepthExceeded {
                requested: self.k,
                max: J_MAX,
            });
        }
        if self.a == Shift::Half && self.k >= 2 {
            return Err(Error::InvalidParameters("k ≥ 2 is only available for a = 1".into()));
        }
        if self.n_terms == 0 {
            return Err(Error::InvalidParameters("the term budget must be positive".into()));
        }
        if self.tail_order == 0 {
            return Err(Error::InvalidParameters("the tail order must be positive".into()));
        }
        Ok(())
    }
}

/// γ_k(a) for a validated request.
pub fn compute(req: &StieltjesRequest) -> Result<SeriesResult> {
    req.validate()?;
    match (req.a, req.k) {
        (Shift::One, 0) => series::gamma0(req),
        (Shift::One, 1) => gamma1(req),
        (Shift::One, 2) => gamma2(req),
        (Shift::One, _) => gamma_j(req),
        (Shift::Half, 0) => {
            let p = req.precision;
            let r = digamma_series_with(&p.ratio(1, 2), req.n_terms, req.acceleration, req.tail_order)?;
            Ok(SeriesResult::new(-r.value, r.error_estimate, r.terms_used, r.method))
        }
        (Shift::Half, _) => gamma1_half_with(req),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn request_validation() {
        assert!(StieltjesRequest::new(1).validate().is_ok());
        assert!(matches!(
            StieltjesRequest::new(J_MAX + 1).validate(),
            Err(Error::RecursionDepthExceeded { .. })
        ));
        assert!(StieltjesRequest::new(2).with_a(Shift::Half).validate().is_err());
        assert!(StieltjesRequest::new(1).with_terms(0).validate().is_err());
    }

    #[test]
    fn parse_names() {
        assert_eq!("paper-1-4".parse::<Acceleration>().unwrap(), Acceleration::Paper14);
        assert_eq!("none".parse::<Acceleration>().unwrap(), Acceleration::None);
        assert!("fast".parse::<Acceleration>().is_err());
        assert_eq!("1/2".parse::<Shift>().unwrap(), Shift::Half);
        assert!("2".parse::<Shift>().is_err());
    }
}
