//! Asymptotic models of series summands, Σ c · ln^q(n) / n^p, and their
//! closed tail sums.

use rug::ops::Pow;
use rug::Float;

use crate::accel::least_squares;
use crate::error::{Error, Result};
use crate::logpoly::LogPoly;
use crate::real::{at, Precision, Real};

#[derive(Debug, Clone)]
pub struct TailTerm {
    /// p in n^(−p).
    pub inv_power: u32,
    /// q in ln^q n.
    pub log_power: u32,
    pub coef: Real,
}

/// Summand model. `next` is the first term left out, used for the
/// remainder estimate; `residual` is the relative fit residual (zero for
/// models derived analytically).
#[derive(Debug, Clone)]
pub struct TailModel {
    pub coefficients: Vec<TailTerm>,
    pub order: usize,
    pub next: Option<TailTerm>,
    pub residual: Real,
}

impl TailModel {
    pub fn from_terms(mut terms: Vec<TailTerm>, order: usize, p: Precision) -> Self {
        let next = if terms.len() > order { Some(terms.remove(order)) } else { None };
        terms.truncate(order);
        TailModel {
            order: terms.len(),
            coefficients: terms,
            next,
            residual: p.zero(),
        }
    }

    /// Model for s(n) = scale · σ(n)/n · ∫_c^∞ sin(2πn x) h(x) dx where
    /// σ(n) cos(2πnc) = 1 and sin(2πnc) = 0. Repeated integration by parts
    /// at x = c gives
    /// s(n) ~ scale · Σ_k (−1)^k h^{(2k)}(c) / ((2π)^{2k+1} n^{2k+2}).
    pub fn from_endpoint(h: &LogPoly, c: &Real, scale: &Real, order: usize, p: Precision) -> Self {
        let w = p.boosted(32);
        let two_pi = w.pi() * 2u32;
        let c = at(w, c);
        let mut terms = Vec::new();
        let mut d = h.clone();
        let mut k = 0u32;
        while terms.len() <= order && k < 64 {
            let dv = d.eval(&c, w);
            if !dv.is_zero() {
                let mut coef = Float::with_val(w.bits(), &dv * scale);
                coef /= Float::with_val(w.bits(), (&two_pi).pow(2 * k + 1));
                if k % 2 == 1 {
                    coef = -coef;
                }
                terms.push(TailTerm {
                    inv_power: 2 * k + 2,
                    log_power: 0,
                    coef: at(p, &coef),
                });
            }
            d = d.nth_derivative(2);
            k += 1;
        }
        TailModel::from_terms(terms, order, p)
    }

    /// Lowest-power term.
    pub fn leading(&self) -> Option<&TailTerm> {
        self.coefficients.iter().min_by_key(|t| (t.inv_power, t.log_power))
    }

    pub fn eval(&self, n: u64, p: Precision) -> Real {
        as_logpoly(&self.coefficients, p).eval(&p.real(n), p)
    }

    /// Σ_{m>n} of the model.
    pub fn tail_sum(&self, n: u64, p: Precision) -> Real {
        as_logpoly(&self.coefficients, p).tail_sum(n, p)
    }

    /// |Σ_{m>n}| of the first omitted term, or of the last kept term when
    /// nothing was omitted.
    pub fn remainder(&self, n: u64, p: Precision) -> Real {
        let t = match (&self.next, self.coefficients.last()) {
            (Some(t), _) => t,
            (None, Some(t)) => t,
            (None, None) => return p.zero(),
        };
        let r = as_logpoly(std::slice::from_ref(t), p).tail_sum(n, p);
        r.abs() * 2u32
    }
}

fn as_logpoly(terms: &[TailTerm], p: Precision) -> LogPoly {
    let mut lp = LogPoly::new();
    for t in terms {
        if t.inv_power < 2 {
            continue;
        }
        lp.push(at(p, &t.coef), t.log_power, p.real(t.inv_power));
    }
    lp
}

/// Relative residual above which a fit is rejected.
pub const FIT_RESIDUAL_LIMIT: f64 = 1e-6;

/// Least-squares fit of the summand to Σ_{p=2}^{order+2} c_p n^(−p).
pub fn fit_tail(samples: &[(u64, Real)], order: usize) -> Result<TailModel> {
    let basis: Vec<(u32, u32)> = (2..=order as u32 + 2).map(|p| (p, 0)).collect();
    fit_tail_with(samples, &basis)
}

/// Least-squares fit over an explicit basis of (power of 1/n, power of ln n).
pub fn fit_tail_with(samples: &[(u64, Real)], basis: &[(u32, u32)]) -> Result<TailModel> {
    if basis.is_empty() {
        return Err(Error::IllConditionedFit("empty basis".into()));
    }
    if samples.len() < basis.len() + 1 {
        return Err(Error::IllConditionedFit(format!(
            "{} samples for {} unknowns",
            samples.len(),
            basis.len()
        )));
    }
    let mut ns: Vec<u64> = samples.iter().map(|s| s.0).collect();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() != samples.len() || ns[0] == 0 {
        return Err(Error::IllConditionedFit("sample points must be distinct and positive".into()));
    }
    let bits = samples.iter().map(|s| s.1.prec()).max().unwrap().max(64);
    let p = Precision::new(bits).unwrap();
    // scale each column to unit size at the smallest n to tame the normal equations
    let n0 = p.real(ns[0]);
    let col = |n: &Real, (pw, q): (u32, u32)| -> Real {
        let ratio = Float::with_val(p.bits(), &n0 / n);
        let mut v = Float::with_val(p.bits(), ratio.pow(pw));
        if q > 0 {
            v *= Float::with_val(p.bits(), Float::with_val(p.bits(), n.ln_ref()).pow(q));
        }
        v
    };
    let rows: Vec<Vec<Real>> = samples
        .iter()
        .map(|(n, _)| {
            let nr = p.real(*n);
            basis.iter().map(|&b| col(&nr, b)).collect()
        })
        .collect();
    let y: Vec<Real> = samples.iter().map(|s| at(p, &s.1)).collect();
    let (x, res) = least_squares(&rows, &y, p)
        .ok_or_else(|| Error::IllConditionedFit("singular normal equations".into()))?;
    let mut norm = p.zero();
    for v in &y {
        norm += Float::with_val(p.bits(), v.square_ref());
    }
    let norm = norm.sqrt();
    if norm.is_zero() {
        return Err(Error::IllConditionedFit("all samples vanish".into()));
    }
    let rel = Float::with_val(p.bits(), &res / &norm);
    if !rel.is_finite() || rel > FIT_RESIDUAL_LIMIT {
        return Err(Error::IllConditionedFit(format!("relative residual {:e}", rel.to_f64())));
    }
    let terms = basis
        .iter()
        .zip(x)
        .map(|(&(pw, q), c)| TailTerm {
            inv_power: pw,
            log_power: q,
            coef: c * Float::with_val(p.bits(), (&n0).pow(pw)),
        })
        .collect();
    let mut model = TailModel::from_terms(terms, basis.len(), p);
    model.residual = rel;
    Ok(model)
}

/// Exponent s of a power law |summand| ≈ C n^(−s), by a log-log least
/// squares line through the samples.
pub fn power_law_exponent(samples: &[(u64, Real)]) -> Result<f64> {
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(n, v)| ((*n as f64).ln(), Float::with_val(v.prec(), v.abs_ref()).ln().to_f64()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::IllConditionedFit("need two nonzero samples".into()));
    }
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (mx, my) = (sx / m, sy / m);
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (x, y) in &pts {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return Err(Error::IllConditionedFit("samples share one abscissa".into()));
    }
    Ok(-sxy / sxx)
}
