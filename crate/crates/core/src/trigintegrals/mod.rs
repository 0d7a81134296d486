//! Cosine and sine integrals and the logarithmic sine integrals built on
//! them.

pub mod laplace;
pub mod logsine;
pub mod recursion;

use rug::Float;

use crate::error::{Error, Result};
use crate::real::{at, Precision, Real};

pub use laplace::{laplace_form_3f4, mu_sine_integral, mu_sine_termwise};
pub use logsine::{ci_log_integral, ci_log_integral_to_infinity, logsine_finite, logsine_tail};
pub use recursion::{build_recursion, build_recursion_with, HypTerm, Level, RecursionState, Seed};

/// Largest log power handled by the recursion.
pub const J_MAX: usize = 6;

/// Argument above which Ci and si use their asymptotic expansions at
/// precision `p`. The expansions bottom out near e^{−x}, so the switch
/// moves out with the precision.
pub fn x_switch(p: Precision) -> f64 {
    (p.bits() as f64 * std::f64::consts::LN_2 + 16.0).max(40.0)
}

pub(crate) fn precision_of(xs: &[&Real]) -> Precision {
    let bits = xs.iter().map(|x| x.prec()).max().unwrap_or(64).max(64);
    Precision::new(bits).unwrap()
}

/// (Ci(x), si(x)) for x > 0, where si(x) = Si(x) − π/2.
pub fn ci_si(x: &Real) -> Result<(Real, Real)> {
    if !(*x > 0) {
        return Err(Error::DomainError(format!("Ci/si need x > 0, got {}", x.to_f64())));
    }
    let p = precision_of(&[x]);
    let xf = x.to_f64();
    let (c, s) = if xf >= x_switch(p) {
        asymptotic(x, p)
    } else {
        series(x, p)
    };
    Ok((at(p, &c), at(p, &s)))
}

pub fn ci(x: &Real) -> Result<Real> {
    Ok(ci_si(x)?.0)
}

/// si(x) = −∫_x^∞ sin t/t dt; si(0) = −π/2.
pub fn si_lower(x: &Real) -> Result<Real> {
    if *x < 0 {
        return Err(Error::DomainError(format!("si needs x ≥ 0, got {}", x.to_f64())));
    }
    let p = precision_of(&[x]);
    if x.is_zero() {
        return Ok(-(p.pi() / 2u32));
    }
    Ok(ci_si(x)?.1)
}

/// Si(x) = ∫_0^x sin t/t dt.
pub fn si(x: &Real) -> Result<Real> {
    let p = precision_of(&[x]);
    Ok(si_lower(x)? + p.pi() / 2u32)
}

fn series(x: &Real, p: Precision) -> (Real, Real) {
    // terms peak near e^x
    let w = p.boosted((x.to_f64() * std::f64::consts::LOG2_E) as u32 + 32);
    let x = at(w, x);
    let half = x.to_f64() / 2.0;
    let eps = w.epsilon();
    // Ci: γ + ln x + Σ_{l≥1} (−1)^l x^{2l}/(2l (2l)!)
    // Si: Σ_{l≥0} (−1)^l x^{2l+1}/((2l+1)(2l+1)!)
    let mut c_sum = w.zero();
    let mut s_sum = w.zero();
    let mut t = x.clone(); // (−1)^l x^{2l+1}/(2l+1)!
    s_sum += &t;
    let mut l: u32 = 1;
    loop {
        // x^{2l}/(2l)! from x^{2l−1}/(2l−1)!
        let even = Float::with_val(w.bits(), &t * &x) / (2 * l);
        let mut ct = Float::with_val(w.bits(), &even / (2 * l));
        ct = -ct;
        c_sum += &ct;
        t = -(Float::with_val(w.bits(), &even * &x) / (2 * l + 1));
        let st = Float::with_val(w.bits(), &t / (2 * l + 1));
        s_sum += &st;
        if l as f64 > half && ct.abs() < eps && st.abs() < eps {
            break;
        }
        l += 1;
    }
    let c = w.euler() + x.clone().ln() + c_sum;
    let s = s_sum - w.pi() / 2u32;
    (c, s)
}

fn asymptotic(x: &Real, p: Precision) -> (Real, Real) {
    let w = p.boosted(16);
    let x = at(w, x);
    let eps = w.epsilon();
    // f = Σ (−1)^k (2k)!/x^{2k+1}, g = Σ (−1)^k (2k+1)!/x^{2k+2}
    let mut f = w.zero();
    let mut g = w.zero();
    let mut tf = Float::with_val(w.bits(), x.recip_ref());
    let mut k: u32 = 0;
    loop {
        f += &tf;
        let tg = Float::with_val(w.bits(), &tf / &x) * (2 * k + 1);
        g += &tg;
        let next = -(Float::with_val(w.bits(), &tg / &x) * (2 * k + 2));
        if Float::with_val(w.bits(), next.abs_ref()) < Float::with_val(w.bits(), &eps * &f).abs()
            || next.clone().abs() > tf.clone().abs()
        {
            break;
        }
        tf = next;
        k += 1;
    }
    let (s, c) = x.clone().sin_cos(Float::new(w.bits()));
    let ci = Float::with_val(w.bits(), &f * &s) - Float::with_val(w.bits(), &g * &c);
    let si = -(Float::with_val(w.bits(), &f * &c) + Float::with_val(w.bits(), &g * &s));
    (ci, si)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::{eval_taylor, RepeatedFamily};

    #[test]
    fn ci_at_one() {
        let p = Precision::new(128).unwrap();
        let v = ci(&p.real(1)).unwrap();
        // 30 terms of the defining series
        let mut s = p.euler();
        let mut t = p.real(1);
        for l in 1..=30u32 {
            t /= (2 * l - 1) * (2 * l);
            t = -t;
            s += t.clone() / (2 * l);
        }
        assert!((v.clone() - s).abs() < 1e-35);
        assert!((v.to_f64() - 0.3374039229).abs() < 1e-10);
    }

    #[test]
    fn cosine_integral_hypergeometric_form() {
        let p = Precision::new(192).unwrap();
        for x in [0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
            let xr = p.real(x);
            let z = xr.clone().square() / 4u32;
            let f = eval_taylor(&RepeatedFamily::F23_32.spec(-z.clone()), &p.real(1e-55)).unwrap();
            let want = p.euler() + xr.clone().ln() - z * f.value;
            assert!((ci(&xr).unwrap() - want).abs() < 1e-50, "x={x}");
        }
    }

    #[test]
    fn small_argument_limit() {
        let p = Precision::new(128).unwrap();
        let x = p.real(1e-20);
        let d = ci(&x).unwrap() - x.clone().ln() - p.euler();
        assert!(d.abs() < 1e-35);
    }

    #[test]
    fn sine_integral_values() {
        let p = Precision::new(128).unwrap();
        assert_eq!(si_lower(&p.zero()).unwrap(), -(p.pi() / 2u32));
        assert!((si(&p.pi()).unwrap().to_f64() - 1.851937052).abs() < 1e-9);
        for x in [11.0, 30.0, 100.0, 1000.0] {
            let v = si_lower(&p.real(x)).unwrap();
            assert!(v.to_f64().abs() < 2.0 / x);
        }
    }

    #[test]
    fn routes_agree_at_switch() {
        for bits in [64u32, 128, 256] {
            let p = Precision::new(bits).unwrap();
            let x = p.real(x_switch(p) + 0.5);
            let (ca, sa) = asymptotic(&x, p);
            let (cs, ss) = series(&x, p);
            let tol = p.epsilon() * 64u32;
            assert!((ca - cs).abs() < tol, "bits={bits}");
            assert!((sa - ss).abs() < tol, "bits={bits}");
        }
    }

    #[test]
    fn domain_errors() {
        let p = Precision::new(64).unwrap();
        assert!(ci(&p.zero()).is_err());
        assert!(si_lower(&p.real(-1)).is_err());
    }
}
