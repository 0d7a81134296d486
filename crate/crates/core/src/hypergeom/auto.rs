//! Route selection between Taylor summation and the asymptotic expansion.

use rug::Float;

use super::{eval_taylor, expansion, HypSpec, RepeatedFamily};
use crate::error::Result;
use crate::real::{at, Precision, Real};
use crate::result::{Method, SeriesResult};

/// |z| above which the asymptotic route is tried first (2√z = 40).
pub const Z_SWITCH: f64 = 400.0;

/// Largest |z| for which the Taylor route is used as a fallback when the
/// asymptotic expansion cannot reach the target.
pub const Z_TAYLOR_FALLBACK: f64 = 4.0e6;

pub fn eval_auto(spec: &HypSpec, target_abs_err: &Real) -> Result<SeriesResult> {
    spec.validate()?;
    let zf = spec.argument.to_f64();
    let family = RepeatedFamily::from_spec(spec).ok();
    match family {
        Some(fam) if zf < -Z_SWITCH => {
            let asym = eval_asymptotic(fam, spec, target_abs_err);
            if asym.error_estimate <= *target_abs_err || -zf > Z_TAYLOR_FALLBACK {
                return Ok(asym);
            }
            let mut t = eval_taylor(spec, target_abs_err)?;
            t.method = Method::Hybrid;
            Ok(t)
        }
        _ => eval_taylor(spec, target_abs_err),
    }
}

/// H(−z) + E(−z) + E(z) at optimal truncation.
pub fn eval_asymptotic(fam: RepeatedFamily, spec: &HypSpec, target_abs_err: &Real) -> SeriesResult {
    let out = spec.precision();
    let w = out.boosted(32);
    let z = -at(w, &spec.argument);
    let e = expansion(fam, w);
    let h = e.algebraic(&z);
    let (ex, err, n) = e.exponential_optimal(&z, &Float::with_val(w.bits(), target_abs_err / 4u32));
    let value = h + ex;
    let mut err = err;
    err += Precision::new(out.bits()).unwrap().epsilon() * value.clone().abs() * 4u32;
    SeriesResult::new(at(out, &value), at(out, &err), n as u64 + e.algebraic_terms.len() as u64, Method::Asymptotic)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn below_switch_is_taylor_bit_for_bit() {
        let p = Precision::new(128).unwrap();
        let spec = RepeatedFamily::F34_52.spec(p.real(-0.25));
        let tol = p.real(1e-30);
        let a = eval_auto(&spec, &tol).unwrap();
        let t = eval_taylor(&spec, &tol).unwrap();
        assert_eq!(a.method, Method::Taylor);
        assert_eq!(a.value, t.value);
    }

    #[test]
    fn large_argument_uses_asymptotics_and_agrees_with_boosted_taylor() {
        let p = Precision::new(128).unwrap();
        let mut z = p.pi() * 100u32;
        z.square_mut();
        z /= 4u32;
        let spec = RepeatedFamily::F34_52.spec(-z.clone());
        let a = eval_auto(&spec, &p.real(1e-30)).unwrap();
        assert_eq!(a.method, Method::Asymptotic);
        let t = eval_taylor(&spec, &p.real(1e-40)).unwrap();
        let rel = ((a.value - &t.value) / t.value).abs();
        assert!(rel < 1e-12, "rel={}", rel.to_f64());
    }

    #[test]
    fn continuous_across_threshold() {
        let p = Precision::new(128).unwrap();
        let tol = p.real(1e-25);
        let lo = eval_auto(&RepeatedFamily::F34_52.spec(p.real(-Z_SWITCH * (1.0 - 1e-3))), &tol).unwrap();
        let hi = eval_auto(&RepeatedFamily::F34_52.spec(p.real(-Z_SWITCH * (1.0 + 1e-3))), &tol).unwrap();
        // both sides against the Taylor value at the far side
        let hi_t = eval_taylor(&RepeatedFamily::F34_52.spec(p.real(-Z_SWITCH * (1.0 + 1e-3))), &p.real(1e-40)).unwrap();
        assert!((hi.value.clone() - &hi_t.value).abs() < 10 * tol.clone());
        assert!(lo.method == Method::Taylor);
        assert!(hi.error_estimate <= tol);
    }
}
