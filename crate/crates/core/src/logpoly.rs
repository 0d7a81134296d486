//! Sums of terms `c · ln^q(x) · x^(-s)`.
//!
//! This small algebra is closed under differentiation and has elementary
//! tail integrals, so it backs Euler-Maclaurin tail sums, endpoint
//! expansions of oscillatory integrals and the zeta values.

use std::sync::{OnceLock, RwLock};

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::real::{Precision, Real};

/// One term `coef · ln^log_power(x) · x^(-exponent)`.
#[derive(Debug, Clone)]
pub struct LogPowerTerm {
    pub coef: Real,
    pub log_power: u32,
    pub exponent: Real,
}

#[derive(Debug, Clone, Default)]
pub struct LogPoly {
    pub terms: Vec<LogPowerTerm>,
}

impl LogPoly {
    pub fn new() -> Self {
        LogPoly { terms: Vec::new() }
    }

    pub fn monomial(coef: Real, log_power: u32, exponent: Real) -> Self {
        LogPoly {
            terms: vec![LogPowerTerm {
                coef,
                log_power,
                exponent,
            }],
        }
    }

    pub fn push(&mut self, coef: Real, log_power: u32, exponent: Real) {
        for t in &mut self.terms {
            if t.log_power == log_power && t.exponent == exponent {
                t.coef += &coef;
                return;
            }
        }
        self.terms.push(LogPowerTerm {
            coef,
            log_power,
            exponent,
        });
    }

    pub fn scaled(&self, c: &Real) -> LogPoly {
        LogPoly {
            terms: self
                .terms
                .iter()
                .map(|t| LogPowerTerm {
                    coef: Float::with_val(t.coef.prec(), &t.coef * c),
                    log_power: t.log_power,
                    exponent: t.exponent.clone(),
                })
                .collect(),
        }
    }

    pub fn add(&mut self, other: &LogPoly) {
        for t in &other.terms {
            self.push(t.coef.clone(), t.log_power, t.exponent.clone());
        }
    }

    pub fn eval(&self, x: &Real, p: Precision) -> Real {
        let lnx = Float::with_val(p.bits(), x.ln_ref());
        let mut acc = p.zero();
        for t in &self.terms {
            let mut v = Float::with_val(p.bits(), -&t.exponent);
            v *= &lnx;
            v.exp_mut();
            if t.log_power > 0 {
                v *= Float::with_val(p.bits(), (&lnx).pow(t.log_power));
            }
            v *= &t.coef;
            acc += v;
        }
        acc
    }

    pub fn derivative(&self) -> LogPoly {
        let mut out = LogPoly::new();
        for t in &self.terms {
            let prec = t.coef.prec();
            let e1 = Float::with_val(prec, &t.exponent + 1u32);
            if t.log_power > 0 {
                out.push(
                    Float::with_val(prec, &t.coef * t.log_power),
                    t.log_power - 1,
                    e1.clone(),
                );
            }
            out.push(
                -Float::with_val(prec, &t.coef * &t.exponent),
                t.log_power,
                e1,
            );
        }
        out.terms.retain(|t| !t.coef.is_zero());
        out
    }

    pub fn nth_derivative(&self, n: u32) -> LogPoly {
        let mut d = self.clone();
        for _ in 0..n {
            d = d.derivative();
        }
        d
    }

    /// ∫_x^∞ of the sum; every exponent must exceed 1.
    pub fn integral_to_infinity(&self, x: &Real, p: Precision) -> Real {
        let lnx = Float::with_val(p.bits(), x.ln_ref());
        let mut acc = p.zero();
        for t in &self.terms {
            // ∫_L^∞ u^q e^{-(s-1)u} du = e^{-(s-1)L} Σ_i q!/(q-i)! L^{q-i} / (s-1)^{i+1}
            let sm1 = Float::with_val(p.bits(), &t.exponent - 1u32);
            let mut scale = -Float::with_val(p.bits(), &sm1 * &lnx);
            scale.exp_mut();
            let mut sum = p.zero();
            let mut falling = p.real(1);
            let mut denom = sm1.clone();
            for i in 0..=t.log_power {
                let lpow = Float::with_val(p.bits(), (&lnx).pow(t.log_power - i));
                let mut term = Float::with_val(p.bits(), &falling * &lpow);
                term /= &denom;
                sum += term;
                falling *= t.log_power - i;
                denom *= &sm1;
            }
            sum *= scale;
            sum *= &t.coef;
            acc += sum;
        }
        acc
    }

    /// Σ_{n > n0} f(n), by direct summation to a cutoff and Euler-Maclaurin
    /// beyond it. Exponents must exceed 1.
    pub fn tail_sum(&self, n0: u64, p: Precision) -> Real {
        let w = p.boosted(32);
        let cutoff = n0.max(em_cutoff(p));
        let mut acc = w.zero();
        for n in (n0 + 1)..=cutoff {
            acc += self.eval(&w.real(n), w);
        }
        acc += self.euler_maclaurin_tail(cutoff, w);
        Float::with_val(p.bits(), acc)
    }

    /// Σ_{n > m} f(n) from the Euler-Maclaurin formula at m, truncated once
    /// the correction terms stop decreasing or drop below the precision.
    pub fn euler_maclaurin_tail(&self, m: u64, p: Precision) -> Real {
        let x = p.real(m);
        let mut acc = self.integral_to_infinity(&x, p);
        let fm = self.eval(&x, p);
        acc -= Float::with_val(p.bits(), &fm / 2u32);
        let eps = Float::with_val(p.bits(), p.epsilon() * fm.clone().abs());
        let mut deriv = self.derivative();
        let mut prev = p.real(f64::INFINITY);
        let mut k = 1u32;
        loop {
            // B_{2k}/(2k)! f^{(2k-1)}(m)
            let b = bernoulli_2k(k as usize, p);
            let mut term = deriv.eval(&x, p);
            term *= b;
            term /= Float::with_val(p.bits(), Float::factorial(2 * k));
            let mag = term.clone().abs();
            if mag > prev {
                break;
            }
            acc -= &term;
            if mag <= eps || k > 400 {
                break;
            }
            prev = mag;
            deriv = deriv.nth_derivative(2);
            k += 1;
        }
        acc
    }
}

/// Smallest summation cutoff that lets Euler-Maclaurin reach precision `p`.
pub fn em_cutoff(p: Precision) -> u64 {
    (p.bits() as u64) / 8 + 10
}

/// Bernoulli number B_{2k} as a Real (B_2 = 1/6, B_4 = -1/30, ...).
pub fn bernoulli_2k(k: usize, p: Precision) -> Real {
    Float::with_val(p.bits(), &bernoulli_even_table(k)[k])
}

fn bernoulli_even_table(k: usize) -> Vec<Rational> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| RwLock::new(Vec::new()));
    {
        let t = table.read().unwrap();
        if t.len() > k {
            return t.clone();
        }
    }
    let mut t = table.write().unwrap();
    if t.len() <= k {
        *t = bernoulli_even_rationals(2 * (k + 8));
    }
    t.clone()
}

/// B_0, B_2, ..., B_{2⌊n/2⌋} by the Akiyama-Tanigawa algorithm.
fn bernoulli_even_rationals(n: usize) -> Vec<Rational> {
    let mut a: Vec<Rational> = Vec::with_capacity(n + 1);
    let mut all = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(Rational::from((Integer::from(1), Integer::from(m + 1))));
        for j in (1..=m).rev() {
            let diff = Rational::from(&a[j - 1] - &a[j]);
            a[j - 1] = diff * Integer::from(j);
        }
        all.push(a[0].clone());
    }
    // Akiyama-Tanigawa yields B_1 = +1/2; only even indices are used.
    all.into_iter().step_by(2).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        let p = Precision::new(128).unwrap();
        assert_eq!(bernoulli_2k(0, p), 1);
        let b2 = bernoulli_2k(1, p);
        assert!((b2 - p.ratio(1, 6)).abs() < 1e-30);
        let b4 = bernoulli_2k(2, p);
        assert!((b4 + p.ratio(1, 30)).abs() < 1e-30);
        let b12 = bernoulli_2k(6, p);
        assert!((b12 + p.ratio(691, 2730)).abs() < 1e-30);
    }

    #[test]
    fn tail_of_inverse_square() {
        // Σ_{n>10} 1/n² = π²/6 − H_10^(2)
        let p = Precision::new(192).unwrap();
        let f = LogPoly::monomial(p.real(1), 0, p.real(2));
        let got = f.tail_sum(10, p);
        let mut want = p.pi();
        want.square_mut();
        want /= 6;
        for n in 1..=10u32 {
            want -= Float::with_val(192, 1) / Float::with_val(192, n * n);
        }
        assert!((got - want).abs() < 1e-50);
    }

    #[test]
    fn tail_with_log_power_matches_direct_sum() {
        // Σ_{n>5} ln²n/n⁴ against a long direct sum plus crude integral tail.
        let p = Precision::new(128).unwrap();
        let f = LogPoly::monomial(p.real(1), 2, p.real(4));
        let got = f.tail_sum(5, p);
        let mut direct = p.zero();
        for n in 6..=200_000u64 {
            direct += f.eval(&p.real(n), p);
        }
        direct += f.integral_to_infinity(&p.real(200_000.5), p);
        assert!((got - direct).abs() < 1e-18);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = Precision::new(128).unwrap();
        let f = LogPoly::monomial(p.real(1), 1, p.real(2));
        let x = p.real(1.7);
        let h = p.real(1e-12);
        let fd = (f.eval(&(x.clone() + &h), p) - f.eval(&(x.clone() - &h), p)) / (h * 2u32);
        let d = f.derivative().eval(&x, p);
        assert!((fd - d).abs() < 1e-18);
    }
}
