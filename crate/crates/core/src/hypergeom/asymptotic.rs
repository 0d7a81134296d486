//! Large-argument expansion of pF(p+1)(1,…,1; 2,…,2, α; −z):
//!
//! F(−z) ~ H(−z) + E(−z) + E(z)
//!
//! The algebraic part H is the Mellin-Barnes residue at s = −1, a finite
//! polynomial in ln z over z. The exponential part is
//! `2 Γ(α) Re[(iu)^θ e^{iu} Σ_k A_k (iu)^{-k}]` with u = 2√z and
//! θ = 1/2 − p − α. The A_k are generated exactly from the formal
//! solution e^{iu} u^θ Σ d_k (iu)^{-k} of the hypergeometric differential
//! equation, A_k = A₀ d_k.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rug::ops::Pow;
use rug::Float;

use super::{Alpha, RepeatedFamily};
use crate::error::{Error, Result};
use crate::real::{at, zeta_int, Precision, Real};
use crate::result::{Method, SeriesResult};

/// Number of exponential coefficients generated per family.
pub const MAX_EXP_ORDER: usize = 320;

/// `coef · ln^ln_power(z) · z^z_power`.
#[derive(Debug, Clone)]
pub struct AlgebraicTerm {
    pub coef: Real,
    pub ln_power: u32,
    pub z_power: i32,
}

#[derive(Debug, Clone)]
pub struct AsymExpansion {
    pub family: RepeatedFamily,
    pub algebraic_terms: Vec<AlgebraicTerm>,
    /// Exponent θ of (2i√z) in the exponential part.
    pub theta: Real,
    /// A_0, A_1, … with A_0 = (2π)^{-1/2} 2^{-1/2-θ}.
    pub exp_coeffs: Vec<Real>,
    pub alpha: Real,
    /// Γ(α) = ΠΓ(b)/ΠΓ(a), the normalisation in front of E.
    pub normalization: Real,
    precision: Precision,
}

impl AsymExpansion {
    pub fn build(family: RepeatedFamily, p: Precision) -> Self {
        let w = p.boosted(64);
        let alpha = family.alpha.value(w);
        let ones = family.ones;
        let theta = Float::with_val(w.bits(), w.ratio(1, 2) - ones as u32 - &alpha);

        let algebraic_terms = residue_terms(family, w)
            .into_iter()
            .map(|t| AlgebraicTerm {
                coef: at(p, &t.coef),
                ..t
            })
            .collect();

        let d = exponential_ratios(family, w);
        // A_0 = (2π)^{-1/2} 2^{-1/2-θ}
        let mut a0 = Float::with_val(w.bits(), w.pi() * 2u32).sqrt().recip();
        let two_pow = Float::with_val(w.bits(), -(w.ratio(1, 2)) - &theta);
        a0 *= Float::with_val(w.bits(), Float::with_val(w.bits(), 2u32).pow(&two_pow));
        let exp_coeffs = d
            .iter()
            .map(|dk| at(p, &Float::with_val(w.bits(), dk * &a0)))
            .collect();
        let normalization = at(p, &alpha.clone().gamma());
        AsymExpansion {
            family,
            algebraic_terms,
            theta: at(p, &theta),
            exp_coeffs,
            alpha: at(p, &alpha),
            normalization,
            precision: p,
        }
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// θ as an integer (it always is one for this family).
    pub fn theta_int(&self) -> i64 {
        self.theta.to_f64().round() as i64
    }

    /// H(−z).
    pub fn algebraic(&self, z: &Real) -> Real {
        let p = Precision::new(z.prec().max(64)).unwrap();
        let lnz = Float::with_val(p.bits(), z.ln_ref());
        let mut acc = p.zero();
        for t in &self.algebraic_terms {
            let mut v = Float::with_val(p.bits(), (&lnz).pow(t.ln_power));
            v *= Float::with_val(p.bits(), z.pow(t.z_power));
            v *= &t.coef;
            acc += v;
        }
        acc
    }

    /// 2Γ(α)|A₀| u^θ, the size of the leading oscillatory term.
    pub fn envelope(&self, z: &Real) -> Real {
        let p = Precision::new(z.prec().max(64)).unwrap();
        let u = Float::with_val(p.bits(), z.sqrt_ref()) * 2u32;
        let mut v = Float::with_val(p.bits(), u.pow(self.theta_int() as i32));
        v *= Float::with_val(p.bits(), &self.exp_coeffs[0] * &self.normalization);
        v *= 2u32;
        v.abs()
    }

    /// Calls `visit(k, term, magnitude)` with the real terms
    /// `2Γ(α) A_k u^{θ-k} cos(u + π(θ-k)/2)` and their magnitudes (without
    /// the cosine) for k = 0, 1, … until `visit` returns false.
    fn for_each_exp_term(&self, z: &Real, mut visit: impl FnMut(usize, Real, Real) -> bool) {
        let p = Precision::new(z.prec().max(64)).unwrap().boosted(32);
        let u = Float::with_val(p.bits(), z.sqrt_ref()) * 2u32;
        let (s, c) = Float::with_val(p.bits(), &u).sin_cos(Float::new(p.bits()));
        let theta = self.theta_int();
        let mut upow = Float::with_val(p.bits(), (&u).pow(theta as i32));
        let pref = Float::with_val(p.bits(), &self.normalization * 2u32);
        for k in 0..self.exp_coeffs.len() {
            let mut mag = Float::with_val(p.bits(), &self.exp_coeffs[k] * &upow);
            mag *= &pref;
            // cos(u + π m/2), m = θ − k
            let m = (theta - k as i64).rem_euclid(4);
            let trig = match m {
                0 => &c,
                1 => &s,
                2 => &c,
                _ => &s,
            };
            let mut term = Float::with_val(p.bits(), &mag * trig);
            if m == 1 || m == 2 {
                term = -term;
            }
            if !visit(k, term, mag.abs()) {
                return;
            }
            upow /= &u;
        }
    }

    /// E(−z) + E(z) truncated to `order` terms; also returns the magnitude
    /// of the first omitted term.
    pub fn exponential(&self, z: &Real, order: usize) -> Result<(Real, Real)> {
        if order == 0 || order >= self.exp_coeffs.len() {
            return Err(Error::OrderUnavailable {
                requested: order,
                available: self.exp_coeffs.len() - 1,
            });
        }
        let p = Precision::new(z.prec().max(64)).unwrap();
        let mut acc = p.boosted(32).zero();
        let mut next = p.zero();
        self.for_each_exp_term(z, |k, t, mag| {
            if k == order {
                next = mag;
                return false;
            }
            acc += t;
            true
        });
        Ok((at(p, &acc), at(p, &next)))
    }

    /// E(−z) + E(z) summed to optimal truncation or until the terms drop
    /// below `target`. Returns (value, error estimate, terms used).
    pub fn exponential_optimal(&self, z: &Real, target: &Real) -> (Real, Real, usize) {
        let p = Precision::new(z.prec().max(64)).unwrap();
        let mut acc = p.boosted(32).zero();
        let mut prev_mag: Option<Real> = None;
        let mut result: Option<(Real, usize)> = None;
        self.for_each_exp_term(z, |k, t, mag| {
            if let Some(pm) = &prev_mag {
                if mag > *pm {
                    result = Some((pm.clone() * 2u32, k));
                    return false;
                }
            }
            if mag < *target && k > 0 {
                result = Some((mag * 2u32, k));
                return false;
            }
            acc += t;
            prev_mag = Some(mag);
            true
        });
        let (err, n) = result.unwrap_or_else(|| {
            let last = prev_mag.clone().unwrap_or_else(|| p.zero());
            (last * 2u32, self.exp_coeffs.len())
        });
        (at(p, &acc), at(p, &err), n)
    }
}

/// Shared expansion for a family at a precision.
pub fn expansion(family: RepeatedFamily, p: Precision) -> Arc<AsymExpansion> {
    static MEMO: OnceLock<RwLock<HashMap<(RepeatedFamily, u32), Arc<AsymExpansion>>>> =
        OnceLock::new();
    let memo = MEMO.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(e) = memo.read().unwrap().get(&(family, p.bits())) {
        return e.clone();
    }
    let e = Arc::new(AsymExpansion::build(family, p));
    memo.write()
        .unwrap()
        .entry((family, p.bits()))
        .or_insert(e)
        .clone()
}

fn check_z(z: &Real) -> Result<Precision> {
    if !(*z > 0) {
        return Err(Error::DomainError(format!(
            "asymptotic expansion needs z > 0, got {}",
            z.to_f64()
        )));
    }
    Ok(Precision::new(z.prec().max(64)).unwrap())
}

/// H(−z), with the exponential envelope as the error estimate.
pub fn asym_algebraic(family: RepeatedFamily, z: &Real) -> Result<SeriesResult> {
    let p = check_z(z)?;
    let e = expansion(family, p);
    Ok(SeriesResult::new(
        e.algebraic(z),
        e.envelope(z),
        e.algebraic_terms.len() as u64,
        Method::Asymptotic,
    ))
}

/// E(−z) + E(z) with the first `order` coefficients A_0 … A_{order−1}.
pub fn asym_exponential(family: RepeatedFamily, z: &Real, order: usize) -> Result<SeriesResult> {
    let p = check_z(z)?;
    let e = expansion(family, p);
    let (v, err) = e.exponential(z, order)?;
    Ok(SeriesResult::new(v, err, order as u64, Method::Asymptotic))
}

/// Residue of Γ(α)Γ(−s) z^s / ((s+1)^p Γ(s+α)) at s = −1, as terms in
/// ln^i(z)/z. The Taylor coefficients of φ(s) = Γ(α)Γ(−s)/Γ(s+α) at
/// s = −1 come from ψ^(k)(1) and ψ^(k)(α−1).
pub fn residue_terms(family: RepeatedFamily, p: Precision) -> Vec<AlgebraicTerm> {
    let n = family.ones;
    let phi = phi_coefficients(family.alpha, n, p);
    (0..n)
        .map(|i| {
            let mut coef = phi[n - 1 - i].clone();
            coef /= Float::with_val(p.bits(), Float::factorial(i as u32));
            AlgebraicTerm {
                coef,
                ln_power: i as u32,
                z_power: -1,
            }
        })
        .collect()
}

/// Coefficients φ_0..φ_{n−1} of Γ(α)Γ(1−t)/Γ(α−1+t) = Σ φ_j t^j.
pub fn phi_coefficients(alpha: Alpha, n: usize, p: Precision) -> Vec<Real> {
    let w = p.boosted(32);
    let gamma = w.euler();
    let ln2 = w.ln2();
    // log-series coefficients λ_k, k = 1..n−1
    let mut lambda = vec![w.zero(); n.max(1)];
    for k in 1..n {
        if k == 1 {
            // γ − ψ(α−1); ψ(1/2) = −γ − 2 ln 2, ψ(3/2) = ψ(1/2) + 2
            let mut v = Float::with_val(w.bits(), &gamma * 2u32);
            v += Float::with_val(w.bits(), &ln2 * 2u32);
            if alpha == Alpha::FiveHalves {
                v -= 2u32;
            }
            lambda[1] = v;
        } else {
            // ζ(k)/k − ψ^{(k−1)}(α−1)/k!
            // ψ^{(k−1)}(1/2)/k! = (−1)^k (2^k − 1) ζ(k)/k
            // ψ^{(k−1)}(3/2)/k! = ψ^{(k−1)}(1/2)/k! + (−1)^{k−1} 2^k / k
            let zk = zeta_int(k as u32, w);
            let sign = if k % 2 == 0 { 1i32 } else { -1i32 };
            let mut psi_term = Float::with_val(w.bits(), &zk * ((1u64 << k) - 1));
            psi_term *= sign;
            if alpha == Alpha::FiveHalves {
                psi_term -= Float::with_val(w.bits(), sign) * (1u64 << k);
            }
            let mut v = zk;
            v -= psi_term;
            v /= k as u32;
            lambda[k] = v;
        }
    }
    // exp of the power series
    let mut g = vec![w.zero(); n.max(1)];
    g[0] = w.real(1);
    for m in 1..n {
        let mut s = w.zero();
        for k in 1..=m {
            s += Float::with_val(w.bits(), &lambda[k] * &g[m - k]) * k as u32;
        }
        g[m] = s / m as u32;
    }
    // Γ(α)/Γ(α−1) = α − 1
    let lead = alpha.value(w) - 1u32;
    g.into_iter()
        .map(|v| at(p, &Float::with_val(w.bits(), &v * &lead)))
        .collect()
}

/// Coefficients π̂_m(r), m = 0..=p+2, of the conjugated operator
/// e^{-iu} L e^{iu} applied to u^r, normalised so that
/// L̃[u^r] = Σ_m i^m π̂_m(r) u^{r+m}.
///
/// L = D Π(D + 2b_i − 2) + u² Π(D + 2a_i), D = u d/du, is the
/// differential equation of pF(p+1)(a; b; −u²/4).
fn operator_coefficients(family: RepeatedFamily, r: &Real, w: Precision) -> Vec<Real> {
    let ones = family.ones;
    let apply = |consts: &[Real]| -> Vec<Real> {
        let mut arr = vec![w.real(1)];
        for c in consts {
            let mut next = vec![w.zero(); arr.len() + 1];
            for (m, a) in arr.iter().enumerate() {
                let mut f = Float::with_val(w.bits(), r + m as u32);
                f += c;
                next[m] += Float::with_val(w.bits(), &f * a);
                next[m + 1] += a;
            }
            arr = next;
        }
        arr
    };
    let mut p_consts = vec![w.zero()];
    p_consts.extend(std::iter::repeat(w.real(2)).take(ones));
    p_consts.push(Float::with_val(w.bits(), family.alpha.value(w) * 2u32) - 2u32);
    let q_consts = vec![w.real(2); ones];
    let mut pm = apply(&p_consts);
    let qm = apply(&q_consts);
    for (m, q) in qm.iter().enumerate() {
        pm[m + 2] -= q;
    }
    pm
}

/// Leading exponent ρ of the formal exponential solution; equals θ.
pub fn exponential_exponent(family: RepeatedFamily, p: Precision) -> Real {
    let w = p.boosted(64);
    let top = family.ones + 1;
    let v0 = operator_coefficients(family, &w.zero(), w)[top].clone();
    let v1 = operator_coefficients(family, &w.real(1), w)[top].clone();
    let slope = Float::with_val(w.bits(), &v1 - &v0);
    at(p, &(-v0 / slope))
}

/// d_0 = 1, d_1, … of the formal solution e^{iu} u^ρ Σ d_k (iu)^{-k}.
fn exponential_ratios(family: RepeatedFamily, w: Precision) -> Vec<Real> {
    let top = family.ones + 1;
    let rho = exponential_exponent(family, w);
    let mut d: Vec<Real> = vec![w.real(1)];
    for k in 1..=MAX_EXP_ORDER {
        let rk = Float::with_val(w.bits(), &rho - k as u32);
        let lead = operator_coefficients(family, &rk, w)[top].clone();
        let mut s = w.zero();
        for j in 1..=top.min(k) {
            let r = Float::with_val(w.bits(), &rho - (k - j) as u32);
            let coeffs = operator_coefficients(family, &r, w);
            s += Float::with_val(w.bits(), &d[k - j] * &coeffs[top - j]);
        }
        d.push(-s / lead);
    }
    d
}
