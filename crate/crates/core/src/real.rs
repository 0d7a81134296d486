//! Arbitrary-precision reals and the shared constants.
//!
//! `Real` is an MPFR float; its precision travels with the value. Call sites
//! that create numbers take a [`Precision`] so every routine is parameterised
//! by working precision.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

pub type Real = Float;

/// Working precision in bits, at least 64.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_BITS: u32 = 64;

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::InvalidPrecision(bits));
        }
        Ok(Precision(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn boosted(self, extra: u32) -> Self {
        Precision(self.0 + extra)
    }

    /// `boosted(extra)` rounded up to a multiple of 64 bits, so callers with
    /// slowly varying boosts share memoised tables.
    pub fn boosted_coarse(self, extra: u32) -> Self {
        Precision((self.0 + extra).div_ceil(64) * 64)
    }

    /// 2^-bits, the unit roundoff scale at this precision.
    pub fn epsilon(self) -> Real {
        Float::with_val(self.0, Float::i_exp(1, -(self.0 as i32)))
    }

    pub fn real<T>(self, v: T) -> Real
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.0, v)
    }

    pub fn zero(self) -> Real {
        Float::new(self.0)
    }

    pub fn ratio(self, num: i64, den: i64) -> Real {
        let mut r = Float::with_val(self.0, num);
        r /= den;
        r
    }

    pub fn pi(self) -> Real {
        Float::with_val(self.0, Constant::Pi)
    }

    pub fn euler(self) -> Real {
        Float::with_val(self.0, Constant::Euler)
    }

    pub fn ln2(self) -> Real {
        Float::with_val(self.0, Constant::Log2)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(256)
    }
}

/// Copy of `x` rounded to precision `p`.
pub fn at(p: Precision, x: &Real) -> Real {
    Float::with_val(p.bits(), x)
}

pub fn abs(x: &Real) -> Real {
    x.clone().abs()
}

/// Value of `x` as `f64`, saturating.
pub fn f64_of(x: &Real) -> f64 {
    x.to_f64()
}

/// Base-2 exponent magnitude helper: returns an upper bound on log2|x|,
/// or `i32::MIN` for zero.
pub fn log2_bound(x: &Real) -> i32 {
    x.get_exp().unwrap_or(i32::MIN)
}

/// ε·Σ|x|: what rounding the pieces of a short combination, and its result,
/// to `p` can cost.
pub fn rounding_bound(p: Precision, parts: &[&Real]) -> Real {
    let mut acc = p.zero();
    for x in parts {
        acc += Float::with_val(p.bits(), x.abs_ref());
    }
    acc * p.epsilon()
}

/// Sum with a fixed pairwise tree so the result depends only on the order of
/// the input, never on how the terms were produced.
pub fn pairwise_sum(p: Precision, terms: &[Real]) -> Real {
    match terms.len() {
        0 => p.zero(),
        1 => at(p, &terms[0]),
        n => {
            let (lo, hi) = terms.split_at(n / 2);
            let mut s = pairwise_sum(p, lo);
            s += pairwise_sum(p, hi);
            s
        }
    }
}

/// Shortest decimal string that parses back to exactly `x` at its own
/// precision.
pub fn shortest_decimal(x: &Real) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let prec = x.prec();
    let max_digits = (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2;
    for digits in 1..=max_digits {
        let s = x.to_string_radix(10, Some(digits));
        if let Ok(parsed) = Float::parse(&s) {
            let back = Float::with_val_round(prec, parsed, Round::Nearest).0;
            if back == *x {
                return s;
            }
        }
    }
    x.to_string_radix(10, None)
}

/// Parse a decimal string at precision `p`.
pub fn parse_real(p: Precision, s: &str) -> Result<Real> {
    Float::parse(s)
        .map(|v| Float::with_val(p.bits(), v))
        .map_err(|e| Error::InvalidParameters(format!("cannot parse {s:?}: {e}")))
}

/// Riemann zeta at an integer argument k ≥ 2, memoised per precision.
///
/// Computed by Euler-Maclaurin summation (see [`crate::zeta`]).
pub fn zeta_int(k: u32, p: Precision) -> Real {
    static MEMO: OnceLock<RwLock<HashMap<(u32, u32), Real>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = memo.read().unwrap().get(&(k, p.bits())) {
        return v.clone();
    }
    let v = crate::zeta::zeta(&p.real(k), p);
    memo.write().unwrap().insert((k, p.bits()), v.clone());
    v
}

/// n! as a Real.
pub fn factorial(p: Precision, n: u32) -> Real {
    Float::with_val(p.bits(), Float::factorial(n))
}

/// x^k for small integer k.
pub fn powi(x: &Real, k: i32) -> Real {
    Float::with_val(x.prec(), x.pow(k))
}
