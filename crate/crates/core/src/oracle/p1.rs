//! The periodic Bernoulli function P₁(x) = x − ⌊x⌋ − ½ and integrals
//! ∫ P₁(x) w(x) dx against log-power weights.

use rug::Float;

use crate::logpoly::{bernoulli_2k, LogPoly};
use crate::oracle::quadrature::adaptive;
use crate::real::{at, Precision, Real};
use crate::result::{Method, SeriesResult};

/// Stateless evaluator for P₁ and its Fourier partial sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct P1Evaluator;

impl P1Evaluator {
    pub fn value(x: &Real) -> Real {
        let f = Float::with_val(x.prec(), x.floor_ref());
        Float::with_val(x.prec(), x - &f) - 0.5f64
    }

    /// −Σ_{j=1}^{terms} sin(2πjx)/(πj).
    pub fn fourier_partial(x: &Real, terms: u64) -> Real {
        let p = Precision::new(x.prec().max(64)).unwrap();
        let pi = p.pi();
        let two_pi_x = Float::with_val(p.bits(), &pi * x) * 2u32;
        let mut acc = p.zero();
        for j in 1..=terms {
            let s = Float::with_val(p.bits(), &two_pi_x * j).sin();
            acc += s / j;
        }
        -acc / pi
    }

    /// ∫_m^∞ P₁(x) w(x) dx for an integer m ≥ 1 and a weight whose exponents
    /// all exceed 1.
    ///
    /// Unit intervals up to a cutoff X are integrated by adaptive quadrature
    /// (P₁ is linear on each); beyond X the Euler-Maclaurin form
    /// ∫_X^∞ P₁ w = −Σ_k B_{2k}/(2k)! w^{(2k−2)}(X) is used.
    pub fn integrate_weighted(w: &LogPoly, m: u64, p: Precision) -> SeriesResult {
        let cutoff = m.max(Self::cutoff(p));
        let head = Self::integrate_finite(w, m, cutoff, p);
        let (tail, tail_err) = Self::em_tail(w, cutoff, p);
        let value = Float::with_val(p.bits(), &head.value + &tail);
        let err = Float::with_val(p.bits(), &head.error_estimate + &tail_err);
        SeriesResult::new(value, err, head.terms_used, Method::Quadrature)
    }

    /// ∫_a^b P₁(x) w(x) dx for integers a < b.
    pub fn integrate_finite(w: &LogPoly, a: u64, b: u64, p: Precision) -> SeriesResult {
        let q = p.boosted(32);
        let tol = Float::with_val(q.bits(), q.epsilon() * p.real(1)) >> 8u32;
        let mut parts = Vec::with_capacity((b - a) as usize);
        let mut err = q.zero();
        let mut evals = 0;
        for n in a..b {
            let shift = Float::with_val(q.bits(), n) + 0.5f64;
            let f = |x: &Real| {
                let lin = Float::with_val(q.bits(), x - &shift);
                lin * w.eval(x, q)
            };
            let (v, e, k) = adaptive(&f, &q.real(n), &q.real(n + 1), &tol, q);
            parts.push(v);
            err += e;
            evals += k;
        }
        let value = crate::real::pairwise_sum(q, &parts);
        SeriesResult::new(at(p, &value), at(p, &err), evals, Method::Quadrature)
    }

    /// −Σ_{n≤terms} (1/πn) ∫_a^b sin(2πnx) w(x) dx, the Fourier-series
    /// route to the same finite integral.
    pub fn integrate_fourier(w: &LogPoly, a: u64, b: u64, terms: u64, p: Precision) -> SeriesResult {
        let q = p.boosted(16);
        let pi = q.pi();
        let mut acc = q.zero();
        let mut err = q.zero();
        let mut evals = 0;
        let tol = Float::with_val(q.bits(), q.epsilon()) >> 4u32;
        for n in 1..=terms {
            let freq = Float::with_val(q.bits(), &pi * 2u32) * n;
            let f = |x: &Real| {
                let s = Float::with_val(q.bits(), &freq * x).sin();
                s * w.eval(x, q)
            };
            // one panel per half period keeps each piece non-oscillatory
            let mut inner = q.zero();
            for m in a..b {
                for half in 0..(2 * n) {
                    let lo = q.real(m) + q.ratio(half as i64, 2 * n as i64);
                    let hi = q.real(m) + q.ratio(half as i64 + 1, 2 * n as i64);
                    let (v, e, k) = adaptive(&f, &lo, &hi, &tol, q);
                    inner += v;
                    err += Float::with_val(q.bits(), &e / &pi) / n;
                    evals += k;
                }
            }
            acc += inner / Float::with_val(q.bits(), &pi * n);
        }
        SeriesResult::new(at(p, &(-acc)), at(p, &err), evals, Method::Quadrature)
    }

    fn cutoff(p: Precision) -> u64 {
        // the Euler-Maclaurin terms bottom out near e^{−2πX}
        ((p.bits() as f64) * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI)).ceil() as u64 + 12
    }

    fn em_tail(w: &LogPoly, x: u64, p: Precision) -> (Real, Real) {
        let q = p.boosted(32);
        let xr = q.real(x);
        let mut acc = q.zero();
        let mut deriv = w.clone();
        let mut prev = Float::with_val(q.bits(), f64::INFINITY);
        let mut last = q.zero();
        for k in 1..=400u32 {
            let mut term = deriv.eval(&xr, q);
            term *= bernoulli_2k(k as usize, q);
            term /= Float::with_val(q.bits(), Float::factorial(2 * k));
            let mag = Float::with_val(q.bits(), term.abs_ref());
            if mag > prev {
                break;
            }
            acc -= &term;
            last = mag.clone();
            if mag < Float::with_val(q.bits(), q.epsilon() >> 8u32) {
                break;
            }
            prev = mag;
            deriv = deriv.nth_derivative(2);
        }
        (at(p, &acc), at(p, &(last + p.epsilon())))
    }
}
