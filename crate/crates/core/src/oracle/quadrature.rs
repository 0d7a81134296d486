//! Adaptive Gauss-Legendre quadrature with endpoint substitution and
//! between-zeros summation of oscillatory tails.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rug::Float;

use crate::accel::levin_u;
use crate::error::{Error, Result};
use crate::real::{at, shortest_decimal, Precision, Real};
use crate::result::{Method, SeriesResult};

pub type Integrand<'a> = dyn Fn(&Real) -> Real + Send + Sync + 'a;

#[derive(Debug, Clone)]
pub enum Upper {
    Finite(Real),
    Infinity,
}

pub struct QuadratureProblem<'a> {
    pub integrand: Box<Integrand<'a>>,
    pub lower: Real,
    pub upper: Upper,
    pub singular_lower: bool,
    pub singular_upper: bool,
    /// Spacing of the cut points used on an oscillatory infinite tail
    /// (π/κ for sin κx).
    pub oscillation_period: Option<Real>,
    /// Integrand decays like x^(−s) on an infinite tail.
    pub decay_exponent: Option<f64>,
    pub precision: Precision,
}

impl<'a> QuadratureProblem<'a> {
    pub fn finite(f: impl Fn(&Real) -> Real + Send + Sync + 'a, a: Real, b: Real) -> Self {
        let precision = Precision::new(a.prec().max(b.prec()).max(64)).unwrap();
        QuadratureProblem {
            integrand: Box::new(f),
            lower: a,
            upper: Upper::Finite(b),
            singular_lower: false,
            singular_upper: false,
            oscillation_period: None,
            decay_exponent: None,
            precision,
        }
    }

    pub fn semi_infinite(f: impl Fn(&Real) -> Real + Send + Sync + 'a, a: Real) -> Self {
        let precision = Precision::new(a.prec().max(64)).unwrap();
        QuadratureProblem {
            integrand: Box::new(f),
            lower: a,
            upper: Upper::Infinity,
            singular_lower: false,
            singular_upper: false,
            oscillation_period: None,
            decay_exponent: None,
            precision,
        }
    }

    pub fn singular_at_lower(mut self) -> Self {
        self.singular_lower = true;
        self
    }

    pub fn singular_at_upper(mut self) -> Self {
        self.singular_upper = true;
        self
    }

    pub fn oscillating(mut self, spacing: Real) -> Self {
        self.oscillation_period = Some(spacing);
        self
    }

    pub fn decaying(mut self, exponent: f64) -> Self {
        self.decay_exponent = Some(exponent);
        self
    }

    pub fn with_precision(mut self, p: Precision) -> Self {
        self.precision = p;
        self
    }
}

/// Gauss-Legendre nodes and weights on [−1, 1].
pub struct GaussLegendre {
    pub nodes: Vec<Real>,
    pub weights: Vec<Real>,
}

pub fn gauss_legendre(n: usize, p: Precision) -> Arc<GaussLegendre> {
    static MEMO: OnceLock<RwLock<HashMap<(usize, u32), Arc<GaussLegendre>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(g) = memo.read().unwrap().get(&(n, p.bits())) {
        return g.clone();
    }
    let g = Arc::new(build_gauss_legendre(n, p));
    memo.write().unwrap().entry((n, p.bits())).or_insert(g).clone()
}

fn build_gauss_legendre(n: usize, p: Precision) -> GaussLegendre {
    let w = p.boosted(32);
    let eps = w.epsilon() * 16u32;
    let mut nodes = vec![w.zero(); n];
    let mut weights = vec![w.zero(); n];
    // P_n and P_n' by the three-term recurrence
    let legendre = |x: &Real| -> (Real, Real) {
        let mut p0 = w.real(1);
        let mut p1 = x.clone();
        for k in 2..=n as u32 {
            let mut p2 = Float::with_val(w.bits(), x * &p1) * (2 * k - 1);
            p2 -= Float::with_val(w.bits(), &p0 * (k - 1));
            p2 /= k;
            p0 = p1;
            p1 = p2;
        }
        let mut dp = Float::with_val(w.bits(), x * &p1) - &p0;
        dp *= n as u32;
        let den = Float::with_val(w.bits(), x.clone().square() - 1u32);
        dp /= den;
        (p1, dp)
    };
    for i in 0..n.div_ceil(2) {
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = w.real(guess);
        for _ in 0..100 {
            let (pn, dp) = legendre(&x);
            let dx = Float::with_val(w.bits(), &pn / &dp);
            x -= &dx;
            if dx.abs() < eps {
                break;
            }
        }
        let (_, dp) = legendre(&x);
        let one_minus = Float::with_val(w.bits(), 1u32 - x.clone().square());
        let wt = Float::with_val(w.bits(), 2u32 / (one_minus * dp.square()));
        nodes[i] = -x.clone();
        nodes[n - 1 - i] = x;
        weights[i] = wt.clone();
        weights[n - 1 - i] = wt;
    }
    GaussLegendre {
        nodes: nodes.iter().map(|v| at(p, v)).collect(),
        weights: weights.iter().map(|v| at(p, v)).collect(),
    }
}

/// Node count for a working precision.
pub fn default_order(p: Precision) -> usize {
    ((p.bits() / 5) as usize + 8).clamp(16, 120)
}

/// Single-panel Gauss-Legendre rule.
pub fn gl_panel(f: &Integrand<'_>, a: &Real, b: &Real, g: &GaussLegendre, p: Precision) -> Real {
    gl_panel_with_abs(f, a, b, g, p).0
}

/// The rule together with the same rule applied to |f|, which scales the
/// rounding floor.
fn gl_panel_with_abs(f: &Integrand<'_>, a: &Real, b: &Real, g: &GaussLegendre, p: Precision) -> (Real, Real) {
    let half = Float::with_val(p.bits(), b - a) / 2u32;
    let mid = Float::with_val(p.bits(), b + a) / 2u32;
    let mut acc = p.zero();
    let mut abs = p.zero();
    for (x, wt) in g.nodes.iter().zip(&g.weights) {
        let mut t = Float::with_val(p.bits(), x * &half);
        t += &mid;
        let v = Float::with_val(p.bits(), wt * &f(&t));
        abs += Float::with_val(p.bits(), v.abs_ref());
        acc += v;
    }
    let scale = Float::with_val(p.bits(), half.abs_ref());
    (acc * &half, abs * scale)
}

struct Adaptive<'f, 'a> {
    f: &'f Integrand<'a>,
    g: Arc<GaussLegendre>,
    p: Precision,
    evals: u64,
}

impl Adaptive<'_, '_> {
    fn run(&mut self, a: &Real, b: &Real, tol: &Real, depth: u32, parent_err: Option<&Real>) -> (Real, Real) {
        let p = self.p;
        let (whole, _) = gl_panel_with_abs(self.f, a, b, &self.g, p);
        let m = Float::with_val(p.bits(), a + b) / 2u32;
        let (left, la) = gl_panel_with_abs(self.f, a, &m, &self.g, p);
        let (right, ra) = gl_panel_with_abs(self.f, &m, b, &self.g, p);
        self.evals += 3 * self.g.nodes.len() as u64;
        let halves = Float::with_val(p.bits(), &left + &right);
        let err = Float::with_val(p.bits(), &whole - &halves).abs();
        // rounding in the integrand and the abscissae scales with ∫|f| and |x|
        let xs = Float::with_val(p.bits(), a.abs_ref()).max(&Float::with_val(p.bits(), b.abs_ref())) + 1u32;
        let floor = (la + ra) * xs * p.epsilon() * 64u32;
        // bisection that no longer shrinks the error is seeing rounding noise
        let stalled = depth > 4 && parent_err.is_some_and(|pe| err > Float::with_val(p.bits(), pe * 0.25f64));
        if err <= *tol || err <= floor || stalled || depth >= 48 {
            let e = if err <= floor { floor } else { err };
            return (halves, e);
        }
        let sub = Float::with_val(p.bits(), tol / 2u32);
        let (l, el) = self.run(a, &m, &sub, depth + 1, Some(&err));
        let (r, er) = self.run(&m, b, &sub, depth + 1, Some(&err));
        (l + r, el + er)
    }
}

/// Adaptive quadrature on a finite regular interval.
pub fn adaptive(f: &Integrand<'_>, a: &Real, b: &Real, tol: &Real, p: Precision) -> (Real, Real, u64) {
    let mut ad = Adaptive {
        f,
        g: gauss_legendre(default_order(p), p),
        p,
        evals: 0,
    };
    let (v, e) = ad.run(a, b, tol, 0, None);
    (v, e, ad.evals)
}

/// ∫_a^b with an integrable singularity at `a`, via x = a + (b−a)e^{−u}.
fn singular_left(f: &Integrand<'_>, a: &Real, b: &Real, tol: &Real, p: Precision) -> (Real, Real, u64) {
    let len = Float::with_val(p.bits(), b - a);
    let mapped = |u: &Real| -> Real {
        let e = Float::with_val(p.bits(), (-u.clone()).exp());
        let scale = Float::with_val(p.bits(), &len * &e);
        let x = Float::with_val(p.bits(), a + &scale);
        if x == *a {
            return p.zero();
        }
        f(&x) * scale
    };
    // the mapped integrand decays like e^{−u}·poly(u)
    let u_max = (p.bits() as f64) * std::f64::consts::LN_2 + 60.0;
    let mut total = p.zero();
    let mut err = p.zero();
    let mut evals = 0;
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let panel_tol = Float::with_val(p.bits(), tol / 64u32);
    while lo < u_max {
        let (v, e, n) = adaptive(&mapped, &p.real(lo), &p.real(hi.min(u_max)), &panel_tol, p);
        total += v;
        err += e;
        evals += n;
        lo = hi;
        hi *= 2.0;
    }
    (total, err, evals)
}

fn finite_piece(prob: &QuadratureProblem<'_>, a: &Real, b: &Real, sl: bool, su: bool, tol: &Real) -> (Real, Real, u64) {
    let p = prob.precision;
    let f = &*prob.integrand;
    match (sl, su) {
        (false, false) => adaptive(f, a, b, tol, p),
        (true, false) => singular_left(f, a, b, tol, p),
        (false, true) => {
            let neg_a = Float::with_val(p.bits(), -b);
            let neg_b = Float::with_val(p.bits(), -a);
            let g = |x: &Real| f(&Float::with_val(p.bits(), -x));
            singular_left(&g, &neg_a, &neg_b, tol, p)
        }
        (true, true) => {
            let m = Float::with_val(p.bits(), a + b) / 2u32;
            let half = Float::with_val(p.bits(), tol / 2u32);
            let (l, el, nl) = finite_piece(prob, a, &m, true, false, &half);
            let (r, er, nr) = finite_piece(prob, &m, b, false, true, &half);
            (l + r, el + er, nl + nr)
        }
    }
}

/// Between-zeros summation of an oscillatory tail ∫_a^∞ with cut points
/// at multiples of `d`, accelerated by the Levin u-transform.
fn oscillatory_tail(prob: &QuadratureProblem<'_>, a: &Real, d: &Real, tol: &Real) -> (Real, Real, u64) {
    let p = prob.precision;
    let w = p.boosted(32);
    let f = &*prob.integrand;
    let piece_tol = Float::with_val(p.bits(), tol / 1024u32);
    let k0 = Float::with_val(p.bits(), a / d).ceil();
    let mut cut = Float::with_val(p.bits(), &k0 * d);
    let mut evals = 0;
    let mut head = p.zero();
    let mut head_err = p.zero();
    if cut > *a {
        let (v, e, n) = adaptive(f, a, &cut, &piece_tol, p);
        head = v;
        head_err = e;
        evals += n;
    }
    let mut terms: Vec<Real> = Vec::new();
    let mut piece_err = p.zero();
    let mut prev: Option<Real> = None;
    let mut best = (p.zero(), Float::with_val(p.bits(), f64::INFINITY));
    const MAX_PIECES: usize = 160;
    while terms.len() < MAX_PIECES {
        let next = Float::with_val(p.bits(), &cut + d);
        let (v, e, n) = adaptive(f, &cut, &next, &piece_tol, p);
        evals += n;
        terms.push(at(w, &v));
        piece_err += e;
        cut = next;
        let len = terms.len();
        if len >= 12 && len % 4 == 0 {
            let (est, _) = levin_u(&terms, len - 2, w);
            if let Some(pv) = &prev {
                let change = Float::with_val(p.bits(), &est - pv).abs();
                if change < best.1 {
                    best = (est.clone(), change.clone());
                }
                if change < Float::with_val(p.bits(), tol / 8u32) {
                    break;
                }
            }
            prev = Some(est);
        }
    }
    let err = Float::with_val(p.bits(), &best.1 + &piece_err) + head_err;
    (at(p, &(best.0 + head)), err, evals)
}

/// Non-oscillatory tail ∫_a^∞ on geometrically growing panels.
fn decaying_tail(prob: &QuadratureProblem<'_>, a: &Real, s: f64, tol: &Real) -> (Real, Real, u64) {
    let p = prob.precision;
    let f = &*prob.integrand;
    let panel_tol = Float::with_val(p.bits(), tol / 256u32);
    let mut lo = a.clone();
    let mut width = Float::with_val(p.bits(), a.abs_ref()).max(&p.real(1));
    let mut total = p.zero();
    let mut err = p.zero();
    let mut evals = 0;
    let ratio = 1.0 / (2f64.powf(s - 1.0) - 1.0).max(1e-3);
    for _ in 0..4000 {
        let hi = Float::with_val(p.bits(), &lo + &width);
        let (v, e, n) = adaptive(f, &lo, &hi, &panel_tol, p);
        evals += n;
        err += e;
        let remainder = Float::with_val(p.bits(), v.abs_ref()) * ratio;
        total += v;
        lo = hi;
        width *= 2u32;
        if remainder < Float::with_val(p.bits(), tol / 4u32) {
            err += remainder;
            return (total, err, evals);
        }
    }
    err += Float::with_val(p.bits(), f64::INFINITY);
    (total, err, evals)
}

pub fn integrate(prob: &QuadratureProblem<'_>, target_abs_err: &Real) -> Result<SeriesResult> {
    let p = prob.precision;
    if !(*target_abs_err > 0) {
        return Err(Error::InvalidParameters("quadrature target must be positive".into()));
    }
    let tol = at(p, target_abs_err);
    let (value, err, evals) = match &prob.upper {
        Upper::Finite(b) => {
            if *b < prob.lower {
                return Err(Error::InvalidParameters("quadrature bounds reversed".into()));
            }
            if *b == prob.lower {
                (p.zero(), p.zero(), 0)
            } else {
                finite_piece(prob, &prob.lower.clone(), b, prob.singular_lower, prob.singular_upper, &tol)
            }
        }
        Upper::Infinity => {
            let mut start = prob.lower.clone();
            let mut head = (p.zero(), p.zero(), 0);
            let half = Float::with_val(p.bits(), &tol / 2u32);
            if prob.singular_lower {
                let b = Float::with_val(p.bits(), &start + 1u32);
                head = finite_piece(prob, &start, &b, true, false, &half);
                start = b;
            }
            let tail = if let Some(d) = &prob.oscillation_period {
                oscillatory_tail(prob, &start, d, &half)
            } else if let Some(s) = prob.decay_exponent {
                if s <= 1.0 {
                    return Err(Error::InvalidParameters(format!("decay exponent {s} not integrable")));
                }
                decaying_tail(prob, &start, s, &half)
            } else {
                return Err(Error::InvalidParameters(
                    "infinite interval needs an oscillation spacing or a decay exponent".into(),
                ));
            };
            (head.0 + tail.0, head.1 + tail.1, head.2 + tail.2)
        }
    };
    if !value.is_finite() || !err.is_finite() || err > tol {
        return Err(Error::ToleranceNotMet {
            value: shortest_decimal(&value),
            target: tol.to_f64(),
            achieved: err.to_f64(),
        });
    }
    Ok(SeriesResult::new(value, err, evals, Method::Quadrature))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        let p = Precision::new(192).unwrap();
        let g = gauss_legendre(20, p);
        // ∫_{-1}^1 x^38 = 2/39
        let mut acc = p.zero();
        for (x, w) in g.nodes.iter().zip(&g.weights) {
            acc += Float::with_val(192, x.clone().square()).pow_u32(19) * w;
        }
        assert!((acc - p.real(2) / 39u32).abs() < 1e-50);
    }

    trait PowU32 {
        fn pow_u32(self, k: u32) -> Real;
    }
    impl PowU32 for Real {
        fn pow_u32(self, k: u32) -> Real {
            use rug::ops::Pow;
            self.pow(k)
        }
    }

    #[test]
    fn log_singularity_at_zero() {
        let p = Precision::new(128).unwrap();
        let prob = QuadratureProblem::finite(|x: &Real| x.clone().ln(), p.zero(), p.real(1)).singular_at_lower();
        let r = integrate(&prob, &p.real(1e-30)).unwrap();
        assert!((r.value + 1u32).abs() < 1e-30);
    }

    #[test]
    fn oscillatory_tail_against_cosine_integral() {
        // ∫_1^∞ sin(2πx)/x² dx = sin(2π) − 2π Ci(2π) = −2π Ci(2π)
        let p = Precision::new(128).unwrap();
        let k = p.pi() * 2u32;
        let kk = k.clone();
        let prob = QuadratureProblem::semi_infinite(
            move |x: &Real| Float::with_val(128, &kk * x).sin() / x.clone().square(),
            p.real(1),
        )
        .oscillating(p.real(0.5));
        let r = integrate(&prob, &p.real(1e-25)).unwrap();
        // Ci(2π) from its defining integral −∫_{2π}^∞ cos t/t dt
        let prob2 = QuadratureProblem::semi_infinite(|t: &Real| t.clone().cos() / t, k.clone()).oscillating(p.pi());
        let ci = -integrate(&prob2, &p.real(1e-28)).unwrap().value;
        let want = -(k * ci);
        assert!((r.value - want).abs() < 1e-24);
    }

    #[test]
    fn decaying_tail() {
        let p = Precision::new(128).unwrap();
        let prob = QuadratureProblem::semi_infinite(|x: &Real| x.clone().square().recip(), p.real(1)).decaying(2.0);
        let r = integrate(&prob, &p.real(1e-25)).unwrap();
        assert!((r.value - 1u32).abs() < 1e-25);
    }

    #[test]
    fn unattainable_target_reports_tolerance() {
        let p = Precision::new(64).unwrap();
        let prob = QuadratureProblem::finite(|x: &Real| x.clone().sqrt(), p.zero(), p.real(1));
        let r = integrate(&prob, &p.real(1e-300));
        assert!(matches!(r, Err(Error::ToleranceNotMet { .. })));
    }
}
