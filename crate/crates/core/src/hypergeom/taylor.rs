//! Direct summation of the defining series.

use rug::Float;

use super::HypSpec;
use crate::error::{Error, Result};
use crate::real::{at, Precision, Real};
use crate::result::{Method, SeriesResult};

#[derive(Debug, Clone, Copy)]
pub struct TaylorOptions {
    /// Terms allowed before the magnitudes must have started to decrease.
    pub growth_cap: u64,
    /// Absolute cap on the number of terms.
    pub max_terms: u64,
}

impl Default for TaylorOptions {
    fn default() -> Self {
        TaylorOptions {
            growth_cap: 100_000,
            max_terms: 2_000_000,
        }
    }
}

/// Extra bits needed to absorb cancellation at argument of modulus |z|.
pub fn cancellation_bits(zabs: f64) -> u32 {
    if zabs > 1.0 {
        (2.0 * zabs.sqrt() * std::f64::consts::LOG2_E).ceil() as u32 + 64
    } else {
        0
    }
}

pub fn eval_taylor(spec: &HypSpec, target_abs_err: &Real) -> Result<SeriesResult> {
    eval_taylor_with(spec, target_abs_err, TaylorOptions::default())
}

pub fn eval_taylor_with(
    spec: &HypSpec,
    target_abs_err: &Real,
    opts: TaylorOptions,
) -> Result<SeriesResult> {
    spec.validate()?;
    if !(target_abs_err.is_finite() && *target_abs_err > 0) {
        return Err(Error::InvalidParameters(
            "target_abs_err must be positive".into(),
        ));
    }
    let out = spec.precision();
    let zabs = spec.argument.to_f64().abs();
    let target_bits = (-target_abs_err.to_f64().log2()).max(0.0).ceil() as u32;
    let base = out.bits().max(target_bits + 32);
    let w = Precision::new(base + cancellation_bits(zabs) + 32).unwrap();

    let z = at(w, &spec.argument);
    let num: Vec<Real> = spec.numerator.iter().map(|a| at(w, a)).collect();
    let den: Vec<Real> = spec.denominator.iter().map(|b| at(w, b)).collect();
    let num64: Vec<f64> = spec.numerator.iter().map(|a| a.to_f64()).collect();
    let den64: Vec<f64> = spec.denominator.iter().map(|b| b.to_f64()).collect();
    let ratio_bound = |l: u64| -> f64 {
        let lf = l as f64;
        let mut r = zabs / (lf + 1.0);
        for a in &num64 {
            r *= (a + lf).abs();
        }
        for b in &den64 {
            r /= (b + lf).abs();
        }
        r
    };

    let target = at(w, target_abs_err);
    let mut term = w.real(1);
    let mut sum = w.real(1);
    let mut max_term = w.real(1);
    let mut started_decreasing = false;
    let mut l: u64 = 0;
    let err = loop {
        if l >= opts.max_terms {
            return Err(Error::NonConvergence(format!(
                "{spec}: {l} terms without reaching target"
            )));
        }
        let mut next = Float::with_val(w.bits(), &term * &z);
        for a in &num {
            next *= Float::with_val(w.bits(), a + l);
        }
        for b in &den {
            next /= Float::with_val(w.bits(), b + l);
        }
        next /= l + 1;
        l += 1;
        if next.is_zero() {
            // terminating series
            break w.zero();
        }
        let next_abs = next.clone().abs();
        if next_abs < term.clone().abs() {
            started_decreasing = true;
        } else if !started_decreasing && l > opts.growth_cap {
            return Err(Error::NonConvergence(format!(
                "{spec}: terms still growing after {l} terms"
            )));
        }
        if started_decreasing && ratio_bound(l) <= 0.5 {
            let tail = Float::with_val(w.bits(), &next_abs * 2u32);
            if tail < Float::with_val(w.bits(), &target / 2u32) {
                break tail;
            }
        }
        sum += &next;
        if next_abs > max_term {
            max_term = next_abs;
        }
        term = next;
    };
    // rounding: each of l additions contributes ~ ulp(max term)
    let mut rounding = max_term;
    rounding *= l + 1;
    rounding *= w.epsilon();
    let mut total_err = err + rounding;
    total_err += out.epsilon() * sum.clone().abs();
    Ok(SeriesResult::new(
        at(out, &sum),
        at(out, &total_err),
        l,
        Method::Taylor,
    ))
}
