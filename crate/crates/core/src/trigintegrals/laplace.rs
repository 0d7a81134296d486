//! The Laplace-type integral for ₃F₄(1,1,1; 2,2,2, 5/2; −κ²/4) and the
//! integrals ∫_0^1 x^{μ−1} sin(ax) ln^k x dx.

use rug::ops::Pow;
use rug::Float;

use super::precision_of;
use crate::error::{Error, Result};
use crate::hypergeom::{eval_taylor, HypSpec};
use crate::oracle::{integrate, QuadratureProblem};
use crate::real::{at, Precision, Real};
use crate::result::{Method, SeriesResult};

/// (3/2)κ⁻³ ∫_0^∞ x² [−κ cos(κe^{−x/2}) + e^{x/2} sin(κe^{−x/2})] dx.
///
/// The bracket is O(κ³e^{−x}) while its two parts are O(κ), so the
/// integrand is evaluated at roughly twice the output precision.
pub fn laplace_form_3f4(kappa: &Real) -> Result<SeriesResult> {
    if !(*kappa > 0) {
        return Err(Error::DomainError(format!("κ must be positive, got {}", kappa.to_f64())));
    }
    let p = precision_of(&[kappa]);
    let w = Precision::new(2 * p.bits() + 64).unwrap();
    let k = at(w, kappa);
    let kk = k.clone();
    let f = move |x: &Real| -> Real {
        let e = Float::with_val(w.bits(), -(x.clone() / 2u32)).exp();
        let arg = Float::with_val(w.bits(), &kk * &e);
        let (s, c) = arg.sin_cos(Float::new(w.bits()));
        let mut v = Float::with_val(w.bits(), &s / &e);
        v -= Float::with_val(w.bits(), &kk * &c);
        v * Float::with_val(w.bits(), x.square_ref())
    };
    let k3 = Float::with_val(w.bits(), (&k).pow(3u32));
    let tol = Float::with_val(w.bits(), p.epsilon() * &k3) / 8u32;
    let prob = QuadratureProblem::semi_infinite(f, w.zero()).decaying(64.0);
    let r = integrate(&prob, &tol)?;
    let scale = Float::with_val(w.bits(), w.ratio(3, 2) / &k3);
    let v = Float::with_val(w.bits(), &r.value * &scale);
    let err = Float::with_val(w.bits(), &r.error_estimate * &scale) + p.epsilon() * Float::with_val(p.bits(), v.abs_ref());
    Ok(SeriesResult::new(at(p, &v), at(p, &err), r.terms_used, Method::Quadrature))
}

/// (a/(μ+1)) ₁F₂((1+μ)/2; 3/2, (3+μ)/2; −a²/4) = ∫_0^1 x^{μ−1} sin(ax) dx.
fn one_f_two(mu: &Real, a: &Real, w: Precision, tol: &Real) -> Result<SeriesResult> {
    let mu1 = Float::with_val(w.bits(), mu + 1u32);
    let z = -(Float::with_val(w.bits(), a.square_ref()) / 4u32);
    let spec = HypSpec::new(
        vec![Float::with_val(w.bits(), &mu1 / 2u32)],
        vec![w.ratio(3, 2), Float::with_val(w.bits(), mu + 3u32) / 2u32],
        z,
    )?;
    let scale = Float::with_val(w.bits(), a / &mu1).abs();
    let ftol = Float::with_val(w.bits(), tol / &scale);
    let f = eval_taylor(&spec, &ftol)?;
    let v = Float::with_val(w.bits(), &f.value * a) / &mu1;
    Ok(SeriesResult::new(v, f.error_estimate * scale, f.terms_used, Method::Taylor))
}

/// ∫_0^1 x^{μ−1} sin(ax) ln^k x dx for μ > −1.
///
/// k = 0 uses the ₁F₂ form; k ≥ 1 takes the k-th central difference in μ
/// with step h = 2^{−P/3} at a precision that absorbs the h^{−k} loss.
pub fn mu_sine_integral(mu: &Real, a: &Real, k: u32) -> Result<SeriesResult> {
    if !(*mu > -1) {
        return Err(Error::DomainError(format!("μ must exceed −1, got {}", mu.to_f64())));
    }
    let p = precision_of(&[mu, a]);
    let tol = p.epsilon();
    if k == 0 {
        let w = p.boosted(32);
        let r = one_f_two(&at(w, mu), &at(w, a), w, &tol)?;
        return Ok(SeriesResult::new(at(p, &r.value), at(p, &r.error_estimate), r.terms_used, Method::Taylor));
    }
    let hbits = p.bits() / 3;
    let w = p.boosted(k * hbits + 64);
    let h = Float::with_val(w.bits(), Float::i_exp(1, -(hbits as i32)));
    // μ ± k h/2 must stay above −1
    let reach = Float::with_val(w.bits(), &h * k) / 2u32;
    if Float::with_val(w.bits(), mu - &reach) <= -1 {
        return Err(Error::DomainError(format!(
            "μ = {} too close to −1 for a derivative of order {k}",
            mu.to_f64()
        )));
    }
    let inner_tol = Float::with_val(w.bits(), w.epsilon() * 4u32);
    let mut acc = w.zero();
    let mut terms = 0;
    for i in 0..=k {
        let shift = Float::with_val(w.bits(), &h * (k as i32 - 2 * i as i32)) / 2u32;
        let m = Float::with_val(w.bits(), mu + &shift);
        let r = one_f_two(&m, &at(w, a), w, &inner_tol)?;
        terms += r.terms_used;
        let mut c = Float::with_val(w.bits(), rug::Integer::from(rug::Integer::binomial_u(k, i)));
        if i % 2 == 1 {
            c = -c;
        }
        acc += c * r.value;
    }
    acc /= Float::with_val(w.bits(), (&h).pow(k));
    // truncation error is O(h²)
    let err = Float::with_val(p.bits(), Float::i_exp(1, -(2 * hbits as i32) + 8));
    Ok(SeriesResult::new(at(p, &acc), err, terms, Method::Taylor))
}

/// The ₁F₁-difference form summed term by term:
/// Σ_m (−1)^m (μ)_{2m+1}/(μ+1)_{2m+1} a^{2m+1}/(μ (2m+1)!)
/// = Σ_m (−1)^m a^{2m+1} / ((μ+2m+1)(2m+1)!).
pub fn mu_sine_termwise(mu: &Real, a: &Real) -> Result<SeriesResult> {
    if !(*mu > -1) {
        return Err(Error::DomainError(format!("μ must exceed −1, got {}", mu.to_f64())));
    }
    let p = precision_of(&[mu, a]);
    let w = p.boosted((a.to_f64().abs() * std::f64::consts::LOG2_E) as u32 + 32);
    let a = at(w, a);
    let mu = at(w, mu);
    let a2 = Float::with_val(w.bits(), a.square_ref());
    let mut t = a.clone(); // (−1)^m a^{2m+1}/(2m+1)!
    let mut acc = w.zero();
    let eps = w.epsilon();
    let mut m: u32 = 0;
    loop {
        let term = Float::with_val(w.bits(), &t / Float::with_val(w.bits(), &mu + (2 * m + 1)));
        acc += &term;
        if term.abs() < eps && m as f64 > a.to_f64().abs() {
            break;
        }
        m += 1;
        t *= &a2;
        t /= (2 * m) * (2 * m + 1);
        t = -t;
    }
    let err = p.epsilon() * Float::with_val(p.bits(), acc.abs_ref());
    Ok(SeriesResult::new(at(p, &acc), err, m as u64 + 1, Method::Taylor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergeom::{eval_auto, RepeatedFamily};

    #[test]
    fn laplace_matches_hypergeometric() {
        let p = Precision::new(128).unwrap();
        for (k, tol) in [(1.0, 1e-30), (2.0 * std::f64::consts::PI, 1e-28), (3.0, 1e-30)] {
            let kr = p.real(k);
            let v = laplace_form_3f4(&kr).unwrap();
            let z = -(kr.clone().square() / 4u32);
            let f = eval_auto(&RepeatedFamily::F34_52.spec(z), &p.real(1e-35)).unwrap();
            assert!((v.value - f.value).abs() < tol, "κ={k}");
        }
        let small = laplace_form_3f4(&p.real(1e-3)).unwrap();
        assert!((small.value - 1u32).abs() < 1e-6);
    }

    #[test]
    fn elementary_values() {
        let p = Precision::new(128).unwrap();
        let v = mu_sine_integral(&p.real(1), &p.pi(), 0).unwrap().value;
        assert!((v - p.real(2) / p.pi()).abs() < 1e-35);
        let v = mu_sine_integral(&p.real(2), &p.real(1), 0).unwrap().value;
        let want = p.real(1).sin() - p.real(1).cos();
        assert!((v.clone() - want).abs() < 1e-35);
        assert!((v.to_f64() - 0.3011687).abs() < 1e-7);
    }

    #[test]
    fn three_forms_agree() {
        let p = Precision::new(192).unwrap();
        for (mu, a) in [(0.5, 1.0), (1.0, std::f64::consts::PI), (2.5, 3.0)] {
            let (m, ar) = (p.real(mu), p.real(a));
            let f = mu_sine_integral(&m, &ar, 0).unwrap().value;
            let t = mu_sine_termwise(&m, &ar).unwrap().value;
            let am = ar.clone();
            let mm = m.clone() - 1u32;
            let prob = QuadratureProblem::finite(
                move |x: &Real| Float::with_val(x.prec(), x.pow(&mm)) * Float::with_val(x.prec(), &am * x).sin(),
                p.zero(),
                p.real(1),
            )
            .singular_at_lower();
            let q = integrate(&prob, &p.real(1e-40)).unwrap().value;
            assert!((f.clone() - &t).abs() < 1e-50, "μ={mu}");
            assert!((f - q).abs() < 1e-38, "μ={mu}");
        }
    }

    #[test]
    fn log_derivative_against_quadrature() {
        let p = Precision::new(128).unwrap();
        let v = mu_sine_integral(&p.real(1), &p.real(1), 1).unwrap();
        let prob = QuadratureProblem::finite(|x: &Real| x.clone().sin() * x.clone().ln(), p.zero(), p.real(1)).singular_at_lower();
        let q = integrate(&prob, &p.real(1e-30)).unwrap().value;
        assert!((v.value.clone() - q).abs() < 1e-20);
        assert!(v.error_estimate < 1e-20);
        let v2 = mu_sine_integral(&p.real(1.5), &p.real(2), 2).unwrap().value;
        let prob = QuadratureProblem::finite(
            |x: &Real| x.clone().sqrt() * Float::with_val(x.prec(), x * 2u32).sin() * x.clone().ln().square(),
            p.zero(),
            p.real(1),
        )
        .singular_at_lower();
        let q2 = integrate(&prob, &p.real(1e-30)).unwrap().value;
        assert!((v2 - q2).abs() < 1e-15);
        assert!(mu_sine_integral(&p.real(-1), &p.real(1), 0).is_err());
    }
}
