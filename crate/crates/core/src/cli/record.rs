//! The output record shared by `stieltjes` and `table`, in JSON-lines and
//! CSV form.

use serde::{Deserialize, Serialize};

use crate::real::shortest_decimal;
use crate::result::SeriesResult;
use crate::stieltjes::StieltjesRequest;

pub const CSV_HEADER: &str = "quantity,k,a,value,error_estimate,terms_used,method,precision_bits,wall_time_ms";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub quantity: String,
    pub k: usize,
    pub a: String,
    pub value: String,
    pub error_estimate: String,
    pub terms_used: u64,
    pub method: String,
    pub precision_bits: u32,
    pub wall_time_ms: u64,
}

impl OutputRecord {
    pub fn new(req: &StieltjesRequest, r: &SeriesResult, wall_time_ms: u64) -> Self {
        OutputRecord {
            quantity: format!("gamma_{}", req.k),
            k: req.k,
            a: req.a.as_str().to_string(),
            value: shortest_decimal(&r.value),
            error_estimate: r.error_estimate.to_string_radix(10, Some(6)),
            terms_used: r.terms_used,
            method: format!("{}/{}", r.method.as_str(), req.acceleration.as_str()),
            precision_bits: req.precision.bits(),
            wall_time_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain strings and integers")
    }

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.quantity,
            self.k,
            self.a,
            self.value,
            self.error_estimate,
            self.terms_used,
            self.method,
            self.precision_bits,
            self.wall_time_ms
        )
    }
}
