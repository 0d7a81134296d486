//! Laplace-regularised logarithmic integrals
//! ∫_0^∞ e^{−at} trig(t) (1 − ln t) dt and their closed forms.

use rug::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::quadrature::{integrate, QuadratureProblem};
use crate::real::{at, f64_of, Precision, Real};
use crate::result::{Method, SeriesResult};
use crate::trigintegrals::{ci, si_lower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrigKind {
    Cosine,
    Sine,
}

impl TrigKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TrigKind::Cosine => "cosine",
            TrigKind::Sine => "sine",
        }
    }

    fn apply(self, t: &Real) -> Real {
        match self {
            TrigKind::Cosine => Float::with_val(t.prec(), t.cos_ref()),
            TrigKind::Sine => Float::with_val(t.prec(), t.sin_ref()),
        }
    }
}

/// Closed form of ∫_0^∞ e^{−at} trig(t)(1 − ln t) dt for a > 0:
///
/// cosine: {2 cot⁻¹a + a[ln(1 + 1/a²) + 2(1 + γ + ln a)]} / (2(1 + a²)),
/// sine:   [−2a cot⁻¹a + ln(1 + 1/a²) + 2(1 + γ + ln a)] / (2(1 + a²)).
pub fn appendix_closed_form(kind: TrigKind, a: &Real) -> Result<Real> {
    if !(*a > 0) {
        return Err(Error::DomainError(format!("log-trigonometric integrals need a > 0, got {}", a.to_f64())));
    }
    let p = Precision::new(a.prec().max(64)).unwrap();
    let w = p.boosted(32);
    let a = at(w, a);
    let acot = Float::with_val(w.bits(), a.recip_ref()).atan();
    let inv2 = Float::with_val(w.bits(), a.square_ref()).recip();
    let l = Float::with_val(w.bits(), inv2.ln_1p_ref());
    let mut g = Float::with_val(w.bits(), a.ln_ref()) + w.euler() + 1u32;
    g *= 2u32;
    let v = match kind {
        TrigKind::Cosine => (acot * 2u32) + Float::with_val(w.bits(), &l + &g) * &a,
        TrigKind::Sine => l + g - Float::with_val(w.bits(), &acot * &a) * 2u32,
    };
    let den = Float::with_val(w.bits(), a.square_ref()) + 1u32;
    Ok(at(p, &(v / (den * 2u32))))
}

/// ∫_0^∞ e^{−at} trig(t)(1 − ln t) dt by quadrature: a graded panel at the
/// logarithmic singularity, then half-period panels up to where e^{−at}
/// falls below the target.
pub fn appendix_quadrature(kind: TrigKind, a: &Real, target: &Real) -> Result<SeriesResult> {
    laplace_quadrature(a, target, move |t: &Real| {
        let one_minus_ln = 1u32 - Float::with_val(t.prec(), t.ln_ref());
        kind.apply(t) * one_minus_ln
    })
}

/// ∫_0^∞ e^{−at} cos t dt by quadrature, against a/(1 + a²).
pub fn laplace_cosine_quadrature(a: &Real, target: &Real) -> Result<SeriesResult> {
    laplace_quadrature(a, target, |t: &Real| Float::with_val(t.prec(), t.cos_ref()))
}

fn laplace_quadrature(a: &Real, target: &Real, g: impl Fn(&Real) -> Real + Send + Sync) -> Result<SeriesResult> {
    if !(*a > 0) {
        return Err(Error::DomainError(format!("log-trigonometric integrals need a > 0, got {}", a.to_f64())));
    }
    let p = Precision::new(a.prec().max(64)).unwrap();
    let a = a.clone();
    let f = |t: &Real| {
        let damp = Float::with_val(t.prec(), &a * t);
        g(t) * (-damp).exp()
    };
    let tol = Float::with_val(p.bits(), target / 64u32);
    let head = integrate(
        &QuadratureProblem::finite(f, p.zero(), p.real(1)).singular_at_lower().with_precision(p),
        &tol,
    )?;
    // e^{−aT}(1 + ln T)/a < tol
    let ln_tol = -f64_of(&tol).ln();
    let mut end = (ln_tol + 8.0) / a.to_f64() + 1.0;
    end += (end.ln() + 1.0) / a.to_f64();
    let pi = p.pi();
    let mut lo = p.real(1);
    let mut value = head.value.clone();
    let mut err = head.error_estimate.clone();
    let mut evals = head.terms_used;
    while lo.to_f64() < end {
        let hi = Float::with_val(p.bits(), &lo + &pi);
        let r = integrate(&QuadratureProblem::finite(f, lo.clone(), hi.clone()).with_precision(p), &tol)?;
        value += &r.value;
        err += &r.error_estimate;
        evals += r.terms_used;
        lo = hi;
    }
    err += &tol;
    Ok(SeriesResult::new(value, err, evals, Method::Quadrature))
}

/// 2 Σ_{m≥0} H_{2m} z^{2m} summed until the terms fall below the precision,
/// and the closed form −ln(1+z)/(1+z) + ln(1−z)/(z−1), for 0 < z < 1.
pub fn harmonic_generating_pair(z: &Real) -> Result<(Real, Real, u64)> {
    if !(*z > 0 && *z < 1) {
        return Err(Error::DomainError(format!("generating identity needs 0 < z < 1, got {}", z.to_f64())));
    }
    let p = Precision::new(z.prec().max(64)).unwrap();
    let w = p.boosted(32);
    let z = at(w, z);
    let z2 = Float::with_val(w.bits(), z.square_ref());
    let mut h = w.zero();
    let mut pow = w.real(1);
    let mut sum = w.zero();
    let mut m = 0u64;
    loop {
        let term = Float::with_val(w.bits(), &h * &pow);
        sum += &term;
        if m > 0 && term < Float::with_val(w.bits(), w.epsilon() * &sum) {
            break;
        }
        h += Float::with_val(w.bits(), 2 * m + 1).recip();
        h += Float::with_val(w.bits(), 2 * m + 2).recip();
        pow *= &z2;
        m += 1;
        if m > 1_000_000 {
            return Err(Error::NonConvergence("harmonic generating series".into()));
        }
    }
    sum *= 2u32;
    let zp = Float::with_val(w.bits(), &z + 1u32);
    let zm = Float::with_val(w.bits(), 1u32 - &z);
    let mut closed = -Float::with_val(w.bits(), zp.ln_ref()) / &zp;
    closed += Float::with_val(w.bits(), zm.ln_ref()) / (-zm);
    Ok((at(p, &sum), at(p, &closed), m))
}

/// The a → 0 value of the closed form, evaluated at a = 2^{−bits/2} where
/// the O(a ln a) remainder is below the precision.
pub fn closed_form_small_a_limit(kind: TrigKind, p: Precision) -> SeriesResult {
    let a = p.real(1) >> (p.bits() / 2 + 8);
    let v = appendix_closed_form(kind, &a).expect("a > 0");
    let la = Float::with_val(p.bits(), a.ln_ref()).abs();
    let err = Float::with_val(p.bits(), &a * &la) * 8u32 + p.epsilon();
    SeriesResult::new(v, err, 1, Method::ClosedForm)
}

/// ∫_0^∞ Ci(x) ln x dx (cosine) or ∫_0^∞ si(x) ln x dx (sine), directly by
/// quadrature: a graded panel at 0 and a between-zeros tail.
pub fn log_integral_direct(kind: TrigKind, target: &Real, p: Precision) -> Result<SeriesResult> {
    let f = move |x: &Real| {
        let lx = Float::with_val(x.prec(), x.ln_ref());
        let v = match kind {
            TrigKind::Cosine => ci(x).unwrap_or_else(|_| p.zero()),
            TrigKind::Sine => si_lower(x).unwrap_or_else(|_| p.zero()),
        };
        v * lx
    };
    let prob = QuadratureProblem::semi_infinite(f, p.zero())
        .singular_at_lower()
        .oscillating(p.pi())
        .with_precision(p);
    integrate(&prob, target)
}

#[derive(Debug, Clone, Serialize)]
pub struct AppendixCheck {
    pub name: String,
    pub computed: f64,
    pub reference: f64,
    pub error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AppendixReport {
    pub kind: TrigKind,
    pub a: f64,
    pub checks: Vec<AppendixCheck>,
    pub passed: bool,
}

fn check(name: &str, computed: &Real, reference: &Real, tol: &Real) -> AppendixCheck {
    let err = Float::with_val(computed.prec(), computed - reference).abs();
    AppendixCheck {
        name: name.to_string(),
        computed: computed.to_f64(),
        reference: reference.to_f64(),
        error: err.to_f64(),
        tolerance: tol.to_f64(),
        passed: err <= *tol,
    }
}

/// Quadrature against the closed form at `a`, plus the elementary Laplace
/// integral at `a` and the harmonic generating identity at z = ½.
pub fn appendix_verify(kind: TrigKind, a: &Real, target: &Real) -> Result<AppendixReport> {
    let p = Precision::new(a.prec().max(64)).unwrap();
    let closed = appendix_closed_form(kind, a)?;
    let quad = appendix_quadrature(kind, a, target)?;
    let mut checks = vec![check(
        &format!("{} closed form vs quadrature", kind.as_str()),
        &quad.value,
        &closed,
        target,
    )];
    let lap = laplace_cosine_quadrature(a, target)?;
    let a2 = Float::with_val(p.bits(), a.square_ref()) + 1u32;
    let elementary = Float::with_val(p.bits(), a / &a2);
    checks.push(check("laplace cosine a/(1+a^2)", &lap.value, &elementary, target));
    let (series, closed_gen, _) = harmonic_generating_pair(&p.ratio(1, 2))?;
    checks.push(check("harmonic generating identity z=1/2", &series, &closed_gen, target));
    let passed = checks.iter().all(|c| c.passed);
    Ok(AppendixReport {
        kind,
        a: a.to_f64(),
        checks,
        passed,
    })
}
