use std::fmt;

use crate::real::{Precision, Real};

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Taylor,
    Asymptotic,
    Hybrid,
    Quadrature,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Taylor => "taylor",
            Method::Asymptotic => "asymptotic",
            Method::Hybrid => "hybrid",
            Method::Quadrature => "quadrature",
            Method::ClosedForm => "closed_form",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Value with an absolute error estimate, the number of terms (or
/// integrand evaluations) spent, and the route taken.
#[derive(Debug, Clone)]
pub struct SeriesResult {
    pub value: Real,
    pub error_estimate: Real,
    pub terms_used: u64,
    pub method: Method,
}

impl SeriesResult {
    pub fn new(value: Real, error_estimate: Real, terms_used: u64, method: Method) -> Self {
        let error_estimate = error_estimate.abs();
        SeriesResult {
            value,
            error_estimate,
            terms_used,
            method,
        }
    }

    pub fn exact(value: Real, method: Method) -> Self {
        let prec = value.prec();
        let err = Precision::new(prec.max(64)).unwrap().epsilon() * value.clone().abs();
        SeriesResult::new(value, err, 0, method)
    }

    pub fn error_f64(&self) -> f64 {
        self.error_estimate.to_f64()
    }
}
