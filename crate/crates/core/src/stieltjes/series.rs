use rayon::prelude::*;
use rug::Float;

use super::tail::{TailModel, TailTerm};
use super::{Acceleration, StieltjesRequest};
use crate::error::{Error, Result};
use crate::logpoly::LogPoly;
use crate::real::{at, pairwise_sum, rounding_bound, zeta_int, Precision, Real};
use crate::result::{Method, SeriesResult};
use crate::trigintegrals::logsine::logsine_tail_to;
use crate::trigintegrals::J_MAX;

/// Σ_{n=1}^N term(n), closed according to `acc` with `model` describing the
/// summand for large n. Terms are computed in parallel and reduced with a
/// fixed pairwise tree.
pub(crate) fn accelerated_sum<F>(
    n_terms: u64,
    acc: Acceleration,
    model: &TailModel,
    p: Precision,
    term: F,
) -> Result<SeriesResult>
where
    F: Fn(u64) -> Result<(Real, Real)> + Sync,
{
    let w = p.boosted(16);
    // the first term initialises memoised state on this thread
    let first = term(1)?;
    let mut computed = vec![Ok(first)];
    computed.par_extend((2..=n_terms).into_par_iter().map(&term));
    let mut values = Vec::with_capacity(n_terms as usize);
    let mut errors = Vec::with_capacity(n_terms as usize);
    for r in computed {
        let (v, e) = r?;
        values.push(at(w, &v));
        errors.push(at(w, &e));
    }
    let leading = model.leading().cloned();
    if acc == Acceleration::Paper14 {
        let lead = leading
            .as_ref()
            .ok_or_else(|| Error::InvalidParameters("no leading term to subtract".into()))?;
        let lp = LogPoly::monomial(at(w, &lead.coef), lead.log_power, w.real(lead.inv_power));
        values
            .par_iter_mut()
            .enumerate()
            .for_each(|(i, v)| *v -= lp.eval(&w.real(i as u64 + 1), w));
    }
    let sum = pairwise_sum(w, &values);
    let term_err = pairwise_sum(w, &errors);
    let rounding = Float::with_val(w.bits(), sum.abs_ref()) * p.epsilon() * (n_terms as f64).log2().max(1.0);
    let (value, trunc) = match acc {
        Acceleration::None => {
            let tail = model.tail_sum(n_terms, w);
            (sum, tail.abs())
        }
        Acceleration::Paper14 => {
            let lead = leading.unwrap();
            if lead.log_power != 0 || lead.inv_power < 2 {
                return Err(Error::InvalidParameters("leading term has no zeta closure".into()));
            }
            let z = zeta_int(lead.inv_power, w);
            let add = Float::with_val(w.bits(), &lead.coef * &z);
            let rest: Vec<TailTerm> = model
                .coefficients
                .iter()
                .filter(|t| (t.inv_power, t.log_power) != (lead.inv_power, lead.log_power))
                .cloned()
                .collect();
            let rest_model = TailModel::from_terms(rest, model.order, w);
            (sum + add, rest_model.tail_sum(n_terms, w).abs())
        }
        Acceleration::AsymptoticTail => {
            let tail = model.tail_sum(n_terms, w);
            (sum + tail, model.remainder(n_terms, w))
        }
    };
    let err = trunc + term_err + rounding;
    Ok(SeriesResult::new(at(p, &value), at(p, &err), n_terms, Method::Hybrid))
}

/// ln^j x / x².
fn log_weight(j: usize, p: Precision) -> LogPoly {
    LogPoly::monomial(p.real(1), j as u32, p.real(2))
}

/// Large-n model of s_j(n) = g_j(2πn)/(πn).
pub fn summand_model(j: usize, order: usize, p: Precision) -> TailModel {
    TailModel::from_endpoint(&log_weight(j, p), &p.real(1), &p.pi().recip(), order, p)
}

/// s_j(n) = g_j(2πn)/(πn), with its error estimate.
pub fn log_sine_summand(j: usize, n: u64, p: Precision) -> Result<SeriesResult> {
    // g_j is O(κ⁻³) at κ = 2πn but its slope is O(κ⁻²), so κ carries guard bits
    let w = p.boosted_coarse(64);
    let pi = w.pi();
    let kappa = Float::with_val(w.bits(), &pi * 2u32) * n;
    let target = p.epsilon() >> 8u32;
    let g = logsine_tail_to(&kappa, j, Some(&target))?;
    let scale = Float::with_val(w.bits(), &pi * n);
    let v = g.value / &scale;
    let err = g.error_estimate / scale + p.epsilon() * Float::with_val(w.bits(), v.abs_ref());
    Ok(SeriesResult::new(at(p, &v), at(p, &err), g.terms_used, g.method))
}

/// S_j = Σ_n g_j(2πn)/(πn) = −∫_1^∞ P₁(x) ln^j x / x² dx.
pub fn log_sine_sum(j: usize, req: &StieltjesRequest) -> Result<SeriesResult> {
    if j > J_MAX {
        return Err(Error::RecursionDepthExceeded { requested: j, max: J_MAX });
    }
    let p = req.precision;
    let model = summand_model(j, req.tail_order, p);
    accelerated_sum(req.n_terms, req.acceleration, &model, p, |n| {
        let s = log_sine_summand(j, n, p)?;
        Ok((s.value, s.error_estimate))
    })
}

/// γ = ½ + S_0, with S_0 = −2 Σ Ci(2πn).
pub(crate) fn gamma0(req: &StieltjesRequest) -> Result<SeriesResult> {
    let s = log_sine_sum(0, req)?;
    let p = req.precision;
    let v = Float::with_val(p.bits(), &s.value + 0.5f64);
    let err = rounding_bound(p, &[&s.value, &p.real(0.5), &v]) + &s.error_estimate;
    Ok(SeriesResult::new(v, err, s.terms_used, s.method))
}

/// γ₁ = S_1 + ½ − γ: the sum 2Σ_n[1 + ½(γ−2)γ − π²/24 − (π²n²/6) ₃F₄(1,1,1; 2,2,2, 5/2; −π²n²)
/// + ln(2πn)(γ − 1 + ½ ln 2πn)] + ½ − γ. With `Paper14` each bracket loses
/// its 5/(16π⁴n⁴) asymptote and the constant becomes 73/144 − γ.
pub fn gamma1(req: &StieltjesRequest) -> Result<SeriesResult> {
    let p = req.precision;
    let s = log_sine_sum(1, req)?;
    let g = p.euler();
    let v = Float::with_val(p.bits(), &s.value + 0.5f64) - &g;
    let err = rounding_bound(p, &[&s.value, &p.real(0.5), &g, &v]) + &s.error_estimate;
    Ok(SeriesResult::new(v, err, s.terms_used, s.method))
}

/// γ₂ = 1 − 2(γ + γ₁) + S_2, with γ₁ recomputed at the request's settings.
pub fn gamma2(req: &StieltjesRequest) -> Result<SeriesResult> {
    let p = req.precision;
    let g1 = gamma1(req)?;
    let s2 = log_sine_sum(2, req)?;
    let twice = Float::with_val(p.bits(), &g1.value + p.euler()) * 2u32;
    let mut v = Float::with_val(p.bits(), 1u32 - &twice);
    v += &s2.value;
    let mut err = Float::with_val(p.bits(), &g1.error_estimate * 2u32) + &s2.error_estimate;
    err += rounding_bound(p, &[&p.real(1), &twice, &twice, &s2.value, &v]);
    Ok(SeriesResult::new(v, err, s2.terms_used, s2.method))
}

/// γ_j for j ≥ 3.
pub fn gamma_j(req: &StieltjesRequest) -> Result<SeriesResult> {
    if req.k < 3 {
        return Err(Error::InvalidParameters(format!("gamma_j needs j ≥ 3, got {}", req.k)));
    }
    gamma_general(req.k, req)
}

/// γ_j = S_j − j S_{j−1} for any 0 ≤ j ≤ J_MAX (j = 0 gives ½ + S_0).
pub fn gamma_general(j: usize, req: &StieltjesRequest) -> Result<SeriesResult> {
    let p = req.precision;
    if j == 0 {
        return gamma0(req);
    }
    let sj = log_sine_sum(j, req)?;
    let (prev, prev_err) = if j == 1 {
        (p.euler() - p.real(0.5), p.zero())
    } else {
        let s = log_sine_sum(j - 1, req)?;
        (s.value, s.error_estimate)
    };
    let scaled = Float::with_val(p.bits(), &prev * j as u32);
    let v = Float::with_val(p.bits(), &sj.value - &scaled);
    let mut err = Float::with_val(p.bits(), &sj.error_estimate + Float::with_val(p.bits(), &prev_err * j as u32));
    err += rounding_bound(p, &[&sj.value, &scaled, &scaled, &v]);
    Ok(SeriesResult::new(v, err, sj.terms_used, sj.method))
}

/// ½ − Σ_{j=1}^N [ln((j+1)/j) − ½(1/(j+1) + 1/j)], no tail.
pub fn euler_gamma_partial(n_terms: u64, p: Precision) -> Real {
    let w = euler_precision(n_terms, p);
    let terms: Vec<Real> = (1..=n_terms).into_par_iter().map(|j| euler_summand(j, w)).collect();
    at(p, &(w.real(0.5) - pairwise_sum(w, &terms)))
}

/// γ from the summed integral ∫_1^∞ P₁(x)/x² dx = ½ − γ, with the summand's
/// expansion Σ_{m≥3} (−1)^{m+1}(1/m − ½) j^{−m} closing the tail.
pub fn euler_gamma(n_terms: u64, p: Precision) -> Result<SeriesResult> {
    if n_terms == 0 {
        return Err(Error::InvalidParameters("euler_gamma needs at least one term".into()));
    }
    let w = euler_precision(n_terms, p);
    let order = super::DEFAULT_TAIL_ORDER;
    let terms: Vec<TailTerm> = (3..=(order as u32 + 3))
        .map(|m| {
            let mut c = w.ratio(1, m as i64) - 0.5f64;
            if m % 2 == 0 {
                c = -c;
            }
            TailTerm {
                inv_power: m,
                log_power: 0,
                coef: c,
            }
        })
        .collect();
    let model = TailModel::from_terms(terms, order, w);
    let s = accelerated_sum(n_terms, Acceleration::AsymptoticTail, &model, w, |j| {
        Ok((euler_summand(j, w), w.zero()))
    })?;
    let v = w.real(0.5) - s.value;
    let err = rounding_bound(p, &[&v]) + s.error_estimate;
    Ok(SeriesResult::new(at(p, &v), err, n_terms, Method::Hybrid))
}

fn euler_precision(n: u64, p: Precision) -> Precision {
    p.boosted_coarse(2 * (64 - n.leading_zeros()) + 16)
}

fn euler_summand(j: u64, w: Precision) -> Real {
    let jr = w.real(j);
    let inv = Float::with_val(w.bits(), jr.recip_ref());
    let mut t = Float::with_val(w.bits(), inv.ln_1p_ref());
    let inv1 = Float::with_val(w.bits(), &jr + 1u32).recip();
    t -= Float::with_val(w.bits(), &inv + &inv1) / 2u32;
    t
}
