//! Term-wise integration: ∫ κ^q F(…; −κ^p/4) dκ = κ^(q+1)/(q+1) F'(…; −κ^p/4).

use rug::Float;

use super::{eval_auto, HypSpec};
use crate::error::{Error, Result};
use crate::real::{at, Precision, Real};
use crate::result::SeriesResult;

/// κ^(q+1)/(q+1) · spec(−κ^p/4), the antiderivative produced by
/// [`integrate_spec`].
#[derive(Debug, Clone)]
pub struct Antiderivative {
    pub spec: HypSpec,
    /// Power of κ in front, q + 1.
    pub power: Real,
    /// Exponent p in the argument −κ^p/4.
    pub arg_power: Real,
    /// True when the new parameter cancelled an existing denominator
    /// parameter instead of growing the parameter lists.
    pub collapsed: bool,
}

impl Antiderivative {
    /// Evaluate at κ > 0.
    pub fn eval(&self, kappa: &Real, target_abs_err: &Real) -> Result<SeriesResult> {
        let p = Precision::new(kappa.prec().max(64)).unwrap();
        let lnk = Float::with_val(p.bits(), kappa.ln_ref());
        let mut z = Float::with_val(p.bits(), &self.arg_power * &lnk).exp();
        z /= -4i32;
        let mut front = Float::with_val(p.bits(), &self.power * &lnk).exp();
        front /= &self.power;
        let scaled_target = Float::with_val(p.bits(), target_abs_err / &front).abs();
        let f = eval_auto(&self.spec.with_argument(z), &scaled_target)?;
        let value = Float::with_val(p.bits(), &f.value * &front);
        let err = Float::with_val(p.bits(), &f.error_estimate * &front).abs();
        Ok(SeriesResult::new(value, err, f.terms_used, f.method))
    }
}

/// Antiderivative of κ^q · spec(−κ^p/4) with respect to κ.
///
/// Requires p ≠ 0, q ≠ −1 and (q+1)/p ≠ −1. The ratio c = (q+1)/p is
/// appended as a numerator parameter and c + 1 as a denominator parameter,
/// except when c already is a denominator parameter: then that parameter is
/// replaced by c + 1 and the lists do not grow.
pub fn integrate_spec(spec: &HypSpec, p: &Real, q: &Real) -> Result<Antiderivative> {
    if p.is_zero() {
        return Err(Error::InvalidParameters("p must be nonzero".into()));
    }
    if *q == -1 {
        return Err(Error::InvalidParameters("q must differ from -1".into()));
    }
    let prec = spec.precision().boosted(0);
    let w = Precision::new(prec.bits().max(p.prec()).max(q.prec())).unwrap();
    let q1 = Float::with_val(w.bits(), q + 1u32);
    let c = Float::with_val(w.bits(), &q1 / p);
    if c == -1 {
        return Err(Error::InvalidParameters("(q+1)/p must differ from -1".into()));
    }
    let c1 = Float::with_val(w.bits(), &c + 1u32);
    let mut numerator = spec.numerator.clone();
    let mut denominator = spec.denominator.clone();
    let collapsed = if let Some(pos) = denominator.iter().position(|b| *b == c) {
        denominator[pos] = at(w, &c1);
        true
    } else {
        numerator.push(at(w, &c));
        denominator.push(c1);
        false
    };
    let spec = HypSpec {
        numerator,
        denominator,
        argument: spec.argument.clone(),
    };
    // a lone appended pair keeps q = p + 1, a collapse keeps both lengths
    spec.validate()?;
    Ok(Antiderivative {
        spec,
        power: q1,
        arg_power: at(w, p),
        collapsed,
    })
}
