//! The a = ½ constants and the digamma series.

use rug::Float;

use super::series::accelerated_sum;
use super::tail::{TailModel, TailTerm};
use super::{Acceleration, Shift, StieltjesRequest, DEFAULT_TAIL_ORDER};
use crate::error::{Error, Result};
use crate::logpoly::LogPoly;
use crate::real::{at, factorial, rounding_bound, Precision, Real};
use crate::result::SeriesResult;
use crate::trigintegrals::logsine::{logsine_finite, logsine_tail_to};
use crate::trigintegrals::{ci, ci_si};

/// ψ(a) = ln a − 1/(2a) + Σ_j [2 cos(2πja) Ci(2πja) − sin(2πja)(π − 2 Si(2πja))],
/// closed with the large-j form of the summand, −2 Σ_k (−1)^k (2k+1)!/(2πja)^{2k+2}.
pub fn digamma_series(a: &Real, n_terms: u64) -> Result<SeriesResult> {
    digamma_series_with(a, n_terms, Acceleration::AsymptoticTail, DEFAULT_TAIL_ORDER)
}

pub fn digamma_series_with(a: &Real, n_terms: u64, acc: Acceleration, order: usize) -> Result<SeriesResult> {
    if !(*a > 0) {
        return Err(Error::DomainError(format!("digamma series needs a > 0, got {}", a.to_f64())));
    }
    if n_terms == 0 {
        return Err(Error::InvalidParameters("the term budget must be positive".into()));
    }
    let p = Precision::new(a.prec().max(64)).unwrap();
    let w = p.boosted(16);
    let two_pi_a = Float::with_val(w.bits(), w.pi() * a) * 2u32;
    let mut terms = Vec::new();
    let mut pow = Float::with_val(w.bits(), two_pi_a.square_ref());
    let step = pow.clone();
    for k in 0..=order as u32 {
        let mut c = factorial(w, 2 * k + 1) * 2u32 / &pow;
        if k % 2 == 0 {
            c = -c;
        }
        terms.push(TailTerm {
            inv_power: 2 * k + 2,
            log_power: 0,
            coef: c,
        });
        pow *= &step;
    }
    let model = TailModel::from_terms(terms, order, w);
    let s = accelerated_sum(n_terms, acc, &model, w, |j| {
        // the bracket is O(1/θ²) while each piece is O(1/θ)
        let theta = Float::with_val(w.bits(), &two_pi_a * j);
        let q = w.boosted_coarse(32 + (64 - j.leading_zeros()));
        let t = at(q, &theta);
        let (c, s) = ci_si(&t)?;
        let mut v = Float::with_val(q.bits(), t.cos_ref()) * c;
        v += Float::with_val(q.bits(), t.sin_ref()) * s;
        v *= 2u32;
        Ok((at(w, &v), w.epsilon() >> 4u32))
    })?;
    let a = at(w, a);
    let ln_a = Float::with_val(w.bits(), a.ln_ref());
    let half_inv = Float::with_val(w.bits(), a.recip_ref()) / 2u32;
    let v = Float::with_val(w.bits(), &ln_a - &half_inv) + &s.value;
    let err = rounding_bound(p, &[&ln_a, &half_inv, &s.value, &v]) + &s.error_estimate;
    Ok(SeriesResult::new(at(p, &v), at(p, &err), s.terms_used, s.method))
}

/// t(n) = −(1/π)(−1)ⁿ/n · ∫_{1/2}^∞ sin(2πnx)(ln x − 1)/x² dx, the summand
/// of −γ₁(½) = ln 2 + ½ ln²2 + Σ t(n). The integral is split at 1: the
/// finite log-sine piece on [½, 1], g₁(2πn) on [1, ∞), and
/// ∫_{1/2}^∞ sin(κx)/x² dx = −κ Ci(κ/2) + 2 sin(κ/2).
pub fn gamma1_half_summand(n: u64, p: Precision) -> Result<SeriesResult> {
    // κ carries guard bits: the pieces are O(κ⁻²) with O(κ⁻¹) slopes
    let w = p.boosted_coarse(64);
    let pi = w.pi();
    let kappa = Float::with_val(w.bits(), &pi * 2u32) * n;
    let target = p.epsilon() >> 8u32;
    let finite = logsine_finite(&kappa, &w.ratio(1, 2), &w.real(1))?;
    let tail = logsine_tail_to(&kappa, 1, Some(&target))?;
    let half = Float::with_val(w.bits(), &kappa / 2u32);
    let mut plain = -Float::with_val(w.bits(), &kappa * &ci(&half)?);
    plain += Float::with_val(w.bits(), half.sin_ref()) * 2u32;
    let integral = Float::with_val(w.bits(), &finite.value + &tail.value) - plain;
    let mut t = integral / Float::with_val(w.bits(), &pi * n);
    if n % 2 == 0 {
        t = -t;
    }
    let mut err = Float::with_val(w.bits(), &finite.error_estimate + &tail.error_estimate) / n;
    err += p.epsilon() * Float::with_val(w.bits(), t.abs_ref());
    Ok(SeriesResult::new(at(p, &t), at(p, &err), finite.terms_used + tail.terms_used, tail.method))
}

/// Large-n model of [`gamma1_half_summand`]: endpoint expansion at x = ½.
pub fn gamma1_half_model(order: usize, p: Precision) -> TailModel {
    let mut h = LogPoly::monomial(p.real(1), 1, p.real(2));
    h.push(p.real(-1), 0, p.real(2));
    let scale = -p.pi().recip();
    TailModel::from_endpoint(&h, &p.ratio(1, 2), &scale, order, p)
}

/// γ₁(½) with the default asymptotic tail.
pub fn gamma1_half(n_terms: u64, p: Precision) -> Result<SeriesResult> {
    let req = StieltjesRequest::new(1)
        .with_a(Shift::Half)
        .with_terms(n_terms)
        .with_precision(p);
    gamma1_half_with(&req)
}

pub fn gamma1_half_with(req: &StieltjesRequest) -> Result<SeriesResult> {
    req.validate()?;
    let p = req.precision;
    let model = gamma1_half_model(req.tail_order, p);
    let s = accelerated_sum(req.n_terms, req.acceleration, &model, p, |n| {
        let t = gamma1_half_summand(n, p)?;
        Ok((t.value, t.error_estimate))
    })?;
    let ln2 = p.ln2();
    let sq = Float::with_val(p.bits(), ln2.square_ref()) / 2u32;
    let mut v = Float::with_val(p.bits(), &sq + &ln2);
    v += &s.value;
    let err = rounding_bound(p, &[&sq, &ln2, &s.value, &v]) + &s.error_estimate;
    Ok(SeriesResult::new(-v, err, s.terms_used, s.method))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digamma_at_one_half_and_two() {
        let p = Precision::new(128).unwrap();
        let g = p.euler();
        let one = digamma_series(&p.real(1), 500).unwrap();
        assert!((one.value.clone() + &g).abs() < 1e-25);
        let half = digamma_series(&p.ratio(1, 2), 500).unwrap();
        let want = -g.clone() - p.ln2() * 2u32;
        assert!((half.value - want).abs() < 1e-25);
        let two = digamma_series(&p.real(2), 500).unwrap();
        assert!((two.value - (1u32 - g)).abs() < 1e-25);
    }

    #[test]
    fn half_summand_matches_model() {
        let p = Precision::new(192).unwrap();
        let m = gamma1_half_model(8, p);
        for n in [400u64, 401] {
            let s = gamma1_half_summand(n, p).unwrap().value;
            let e = m.eval(n, p);
            assert!(((s - &e) / e).abs() < 1e-25);
        }
    }

    #[test]
    fn plain_sine_integral_from_half() {
        // ∫_{1/2}^∞ sin(2πx)/x² dx = −2π Ci(π)
        use crate::oracle::{integrate, QuadratureProblem};
        let p = Precision::new(128).unwrap();
        let k = p.pi() * 2u32;
        let kk = k.clone();
        let f = move |x: &Real| Float::with_val(x.prec(), &kk * x).sin() / x.clone().square();
        let prob = QuadratureProblem::semi_infinite(f, p.ratio(1, 2)).oscillating(p.ratio(1, 2));
        let q = integrate(&prob, &p.real(1e-25)).unwrap();
        let want = -Float::with_val(128, &k * &ci(&p.pi()).unwrap());
        assert!((q.value - want).abs() < 1e-22);
    }
}
