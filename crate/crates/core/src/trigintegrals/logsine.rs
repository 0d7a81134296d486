//! Integrals of Ci(az)/z and of sin(κx) ln^j x / x².

use rug::ops::Pow;
use rug::Float;

use super::recursion::{recursion_state, Seed};
use super::{ci, precision_of, J_MAX};
use crate::error::{Error, Result};
use crate::hypergeom::asymptotic::phi_coefficients;
use crate::hypergeom::{eval_auto, Alpha, RepeatedFamily};
use crate::real::{at, Precision, Real};
use crate::result::{Method, SeriesResult};

const F34_32: RepeatedFamily = RepeatedFamily {
    ones: 3,
    alpha: Alpha::ThreeHalves,
};

/// Extra bits for closed forms whose pieces grow like t⁴ ln^k t while the
/// result stays bounded.
fn boost_for(t: f64, logs: u32) -> u32 {
    let lt = t.abs().max(1.0).log2();
    (4.0 * lt + logs as f64 * (lt + 1.0).log2()) as u32 + 32
}

/// G(t) = γ ln t + ½ ln²(at) − (a²t²/8) ₃F₄(1,1,1; 2,2,2, 3/2; −a²t²/4),
/// the antiderivative of Ci(at)/t.
fn ci_over_t_antiderivative(a: &Real, t: &Real, w: Precision, tol: &Real) -> Result<(Real, Real)> {
    let at_ = Float::with_val(w.bits(), a * t);
    let lat = Float::with_val(w.bits(), at_.ln_ref());
    let mut g = Float::with_val(w.bits(), t.ln_ref()) * w.euler();
    g += Float::with_val(w.bits(), lat.square_ref()) / 2u32;
    let s = Float::with_val(w.bits(), at_.square_ref()) / 8u32;
    let z = -Float::with_val(w.bits(), &s * 2u32);
    let ftol = Float::with_val(w.bits(), tol / &s);
    let f = eval_auto(&F34_32.spec(z), &ftol)?;
    g -= Float::with_val(w.bits(), &s * &f.value);
    Ok((g, f.error_estimate * s))
}

/// ∫_x^y Ci(az)/z dz for 0 < x ≤ y, a > 0.
pub fn ci_log_integral(a: &Real, x: &Real, y: &Real) -> Result<SeriesResult> {
    if !(*a > 0) || !(*x > 0) || *y < *x {
        return Err(Error::DomainError(format!(
            "∫Ci(az)/z needs a > 0 and 0 < x ≤ y, got a={}, x={}, y={}",
            a.to_f64(),
            x.to_f64(),
            y.to_f64()
        )));
    }
    let p = precision_of(&[a, x, y]);
    if x == y {
        return Ok(SeriesResult::exact(p.zero(), Method::ClosedForm));
    }
    let top = Float::with_val(p.bits(), a * y).to_f64();
    let w = p.boosted_coarse(boost_for(top, 2));
    let tol = p.epsilon();
    let (gy, ey) = ci_over_t_antiderivative(&at(w, a), &at(w, y), w, &tol)?;
    let (gx, ex) = ci_over_t_antiderivative(&at(w, a), &at(w, x), w, &tol)?;
    let v = gy - gx;
    let err = ey + ex + p.epsilon() * Float::with_val(p.bits(), v.abs_ref());
    Ok(SeriesResult::new(at(p, &v), at(p, &err), 2, Method::ClosedForm))
}

/// ∫_x^∞ Ci(az)/z dz. The limit of G(y) follows from the algebraic part of
/// ₃F₄(1,1,1; 2,2,2, 3/2; −w): G(∞) = −γ ln a − φ₂/2 + φ₁ ln 2 − ½ ln² 2
/// with φ_k the residue coefficients.
pub fn ci_log_integral_to_infinity(a: &Real, x: &Real) -> Result<SeriesResult> {
    if !(*a > 0) || !(*x > 0) {
        return Err(Error::DomainError(format!(
            "∫Ci(az)/z needs a > 0 and x > 0, got a={}, x={}",
            a.to_f64(),
            x.to_f64()
        )));
    }
    let p = precision_of(&[a, x]);
    let top = Float::with_val(p.bits(), a * x).to_f64();
    let w = p.boosted_coarse(boost_for(top, 2));
    let phi = phi_coefficients(Alpha::ThreeHalves, 3, w);
    let ln2 = w.ln2();
    let mut g_inf = -(Float::with_val(w.bits(), a.ln_ref()) * w.euler());
    g_inf -= Float::with_val(w.bits(), &phi[2] / 2u32);
    g_inf += Float::with_val(w.bits(), &phi[1] * &ln2);
    g_inf -= Float::with_val(w.bits(), ln2.square_ref()) / 2u32;
    let (gx, ex) = ci_over_t_antiderivative(&at(w, a), &at(w, x), w, &p.epsilon())?;
    let v = g_inf - gx;
    let err = ex + p.epsilon() * Float::with_val(p.bits(), v.abs_ref());
    Ok(SeriesResult::new(at(p, &v), at(p, &err), 1, Method::ClosedForm))
}

/// ∫_a^b sin(κx) ln x / x² dx for b ≥ a > 0, κ > 0.
pub fn logsine_finite(kappa: &Real, a: &Real, b: &Real) -> Result<SeriesResult> {
    if !(*kappa > 0) || !(*a > 0) || *b < *a {
        return Err(Error::DomainError(format!(
            "log-sine integral needs κ > 0 and 0 < a ≤ b, got κ={}, a={}, b={}",
            kappa.to_f64(),
            a.to_f64(),
            b.to_f64()
        )));
    }
    let p = precision_of(&[kappa, a, b]);
    if a == b {
        return Ok(SeriesResult::exact(p.zero(), Method::ClosedForm));
    }
    let top = Float::with_val(p.bits(), kappa * b).to_f64();
    let w = p.boosted_coarse(boost_for(top, 2));
    let (k, a, b) = (at(w, kappa), at(w, a), at(w, b));
    let one_ln = |t: &Real| Float::with_val(w.bits(), t.ln_ref()) + 1u32;
    let ka = Float::with_val(w.bits(), &k * &a);
    let kb = Float::with_val(w.bits(), &k * &b);
    // Ci terms
    let mut inner = Float::with_val(w.bits(), &ci(&kb)? * &one_ln(&b));
    inner -= Float::with_val(w.bits(), &ci(&ka)? * &one_ln(&a));
    // minus ∫_a^b Ci(κx)/x dx
    let tol = Float::with_val(w.bits(), p.epsilon() / &k);
    let (gb, eb) = ci_over_t_antiderivative(&k, &b, w, &tol)?;
    let (ga, ea) = ci_over_t_antiderivative(&k, &a, w, &tol)?;
    inner -= gb - ga;
    let mut v = Float::with_val(w.bits(), &inner * &k);
    v += Float::with_val(w.bits(), ka.sin_ref()) / &a * one_ln(&a);
    v -= Float::with_val(w.bits(), kb.sin_ref()) / &b * one_ln(&b);
    let err = (eb + ea) * &k + p.epsilon() * Float::with_val(p.bits(), v.abs_ref());
    Ok(SeriesResult::new(at(p, &v), at(p, &err), 2, Method::ClosedForm))
}

/// g_j(κ) = ∫_1^∞ sin(κx) ln^j x / x² dx.
///
/// j = 0 is sin κ − κ Ci κ, j = 1 is the closed form
/// κ[1 + ½(γ−2)γ − π²/24 − (κ²/24) ₃F₄(1,1,1; 2,2,2, 5/2; −κ²/4)
///   + ½ ln κ (2γ − 2 + ln κ)],
/// and j ≥ 2 comes from the recursion.
pub fn logsine_tail(kappa: &Real, j: usize) -> Result<SeriesResult> {
    logsine_tail_to(kappa, j, None)
}

/// As [`logsine_tail`] with an explicit absolute target.
pub fn logsine_tail_to(kappa: &Real, j: usize, target: Option<&Real>) -> Result<SeriesResult> {
    if j > J_MAX {
        return Err(Error::RecursionDepthExceeded {
            requested: j,
            max: J_MAX,
        });
    }
    if !(*kappa > 0) {
        return Err(Error::DomainError(format!("log-sine tail needs κ > 0, got {}", kappa.to_f64())));
    }
    let p = precision_of(&[kappa]);
    let target = target.cloned().unwrap_or_else(|| p.epsilon());
    match j {
        0 => {
            let w = p.boosted(16);
            let k = at(w, kappa);
            let v = Float::with_val(w.bits(), k.sin_ref()) - Float::with_val(w.bits(), &k * &ci(&k)?);
            let err = p.epsilon() * Float::with_val(p.bits(), v.abs_ref()) + p.epsilon() * &k;
            Ok(SeriesResult::new(at(p, &v), at(p, &err), 1, Method::ClosedForm))
        }
        1 => tail_one(kappa, p, &target),
        _ => {
            // the level coefficients meet pieces of size κ lnʲ κ
            let w = p.boosted_coarse(boost_for(kappa.to_f64(), j as u32 + 1));
            let state = recursion_state(Seed::FiveHalves, w)?;
            let r = state.eval(j, kappa, &target)?;
            let err = r.error_estimate + p.epsilon() * Float::with_val(w.bits(), r.value.abs_ref());
            Ok(SeriesResult::new(at(p, &r.value), at(p, &err), r.terms_used, r.method))
        }
    }
}

fn tail_one(kappa: &Real, p: Precision, target: &Real) -> Result<SeriesResult> {
    let w = p.boosted_coarse(boost_for(kappa.to_f64(), 2));
    let k = at(w, kappa);
    let g = w.euler();
    let l = Float::with_val(w.bits(), k.ln_ref());
    let mut bracket = w.real(1);
    bracket += Float::with_val(w.bits(), &g - 2u32) * &g / 2u32;
    bracket -= w.pi().square() / 24u32;
    let mut lt = Float::with_val(w.bits(), &g * 2u32) - 2u32 + &l;
    lt *= &l;
    bracket += lt / 2u32;
    let k2 = Float::with_val(w.bits(), k.square_ref());
    let z = -Float::with_val(w.bits(), &k2 / 4u32);
    let scale = Float::with_val(w.bits(), (&k).pow(3u32)) / 24u32;
    let ftol = Float::with_val(w.bits(), target / &scale);
    let f = eval_auto(&RepeatedFamily::F34_52.spec(z), &ftol)?;
    bracket -= Float::with_val(w.bits(), &k2 / 24u32) * &f.value;
    let v = bracket * &k;
    let err = f.error_estimate * scale + p.epsilon() * Float::with_val(p.bits(), v.abs_ref());
    Ok(SeriesResult::new(at(p, &v), at(p, &err), f.terms_used, Method::ClosedForm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{integrate, QuadratureProblem};

    fn tail_quad(kappa: &Real, j: u32, p: Precision) -> Real {
        let k = kappa.clone();
        let prob = QuadratureProblem::semi_infinite(
            move |x: &Real| {
                let s = Float::with_val(x.prec(), &k * x).sin();
                s * Float::with_val(x.prec(), x.ln_ref()).pow(j) / x.clone().square()
            },
            p.real(1),
        )
        .oscillating(p.pi() / kappa);
        integrate(&prob, &p.real(1e-30)).unwrap().value
    }

    #[test]
    fn ci_log_integral_against_quadrature() {
        let p = Precision::new(192).unwrap();
        let a = p.pi() * 2u32;
        assert!(ci_log_integral(&a, &p.real(1), &p.real(1)).unwrap().value.is_zero());
        let v = ci_log_integral(&a, &p.real(1), &p.real(2)).unwrap();
        let aa = a.clone();
        let prob = QuadratureProblem::finite(move |z: &Real| ci(&(aa.clone() * z)).unwrap() / z, p.real(1), p.real(2));
        let q = integrate(&prob, &p.real(1e-40)).unwrap();
        assert!((v.value - q.value).abs() < 1e-35);
    }

    #[test]
    fn ci_log_integral_limit() {
        let p = Precision::new(192).unwrap();
        let a = p.pi() * 2u32;
        let inf = ci_log_integral_to_infinity(&a, &p.real(1)).unwrap();
        // the finite integral approaches the limit like Ci(ay)/(ay)
        for y in [1.0e3, 1.0e4] {
            let fin = ci_log_integral(&a, &p.real(1), &p.real(y)).unwrap();
            let d = (inf.value.clone() - fin.value).abs();
            assert!(d.to_f64() < 1.0 / (2.0 * std::f64::consts::PI * y * y) * 2.0, "y={y}");
        }
        let aa = a.clone();
        let prob = QuadratureProblem::semi_infinite(move |z: &Real| ci(&(aa.clone() * z)).unwrap() / z, p.real(1))
            .oscillating(p.real(0.5));
        let q = integrate(&prob, &p.real(1e-30)).unwrap();
        assert!((inf.value - q.value).abs() < 1e-28);
    }

    #[test]
    fn finite_against_quadrature() {
        let p = Precision::new(192).unwrap();
        let kappa = p.pi() * 2u32;
        assert!(logsine_finite(&kappa, &p.real(1), &p.real(1)).unwrap().value.is_zero());
        for (a, b) in [(1.0, 2.0), (0.5, 1.0), (0.25, 7.5)] {
            let v = logsine_finite(&kappa, &p.real(a), &p.real(b)).unwrap();
            let k = kappa.clone();
            let prob = QuadratureProblem::finite(
                move |x: &Real| Float::with_val(x.prec(), &k * x).sin() * x.clone().ln() / x.clone().square(),
                p.real(a),
                p.real(b),
            );
            let q = integrate(&prob, &p.real(1e-40)).unwrap();
            assert!((v.value - q.value).abs() < 1e-35, "a={a} b={b}");
        }
    }

    #[test]
    fn finite_tends_to_tail() {
        let p = Precision::new(192).unwrap();
        let kappa = p.pi() * 2u32;
        let tail = logsine_tail(&kappa, 1).unwrap().value;
        let fin = logsine_finite(&kappa, &p.real(1), &p.real(1000.25)).unwrap().value;
        // remaining piece is about cos(κb) ln b/(κ b²)
        assert!((tail - fin).abs() < 1e-6);
    }

    #[test]
    fn tail_one_matches_quadrature_and_ci_route() {
        let p = Precision::new(192).unwrap();
        for kappa in [p.real(1), p.pi() * 2u32, p.pi() * 4u32] {
            let v = logsine_tail(&kappa, 1).unwrap().value;
            let q = tail_quad(&kappa, 1, p);
            assert!((v.clone() - q).abs() < 1e-28);
            // −κ[∫_1^∞ Ci(κt)/t dt + Ci(κ)] + sin κ
            let i = ci_log_integral_to_infinity(&kappa, &p.real(1)).unwrap().value;
            let r = -(kappa.clone() * (i + ci(&kappa).unwrap())) + kappa.clone().sin();
            assert!((v - r).abs() < 1e-40);
        }
    }

    #[test]
    fn higher_tails_match_quadrature() {
        let p = Precision::new(192).unwrap();
        let kappa = p.pi() * 2u32;
        for j in 0..=J_MAX {
            let v = logsine_tail(&kappa, j).unwrap().value;
            let q = tail_quad(&kappa, j as u32, p);
            assert!((v - q).abs() < 1e-26, "j={j}");
        }
        assert!(matches!(
            logsine_tail(&kappa, J_MAX + 1),
            Err(Error::RecursionDepthExceeded { .. })
        ));
    }
}
