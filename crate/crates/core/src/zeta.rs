//! Riemann zeta for real s > 1 by Euler-Maclaurin summation.

use crate::logpoly::LogPoly;
use crate::real::{at, Precision, Real};

pub fn zeta(s: &Real, p: Precision) -> Real {
    let w = p.boosted(32);
    let f = LogPoly::monomial(w.real(1), 0, at(w, s));
    let mut acc = w.real(1);
    acc += f.tail_sum(1, w);
    at(p, &acc)
}

/// Σ_{n>n0} ln^q(n) / n^s.
pub fn log_power_tail(q: u32, s: &Real, n0: u64, p: Precision) -> Real {
    LogPoly::monomial(p.real(1), q, at(p, s)).tail_sum(n0, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    #[test]
    fn against_mpfr_zeta() {
        for bits in [64u32, 256, 512] {
            let p = Precision::new(bits).unwrap();
            for s in [1.1f64, 2.0, 3.0, 4.0, 7.5] {
                let got = zeta(&p.real(s), p);
                let want = Float::with_val(bits, p.real(s).zeta_ref());
                let rel = ((got - &want) / want).abs();
                assert!(rel < p.epsilon() * 16u32, "s={s} bits={bits}");
            }
        }
    }

    #[test]
    fn zeta4_is_pi4_over_90() {
        let p = Precision::new(256).unwrap();
        let z4 = zeta(&p.real(4), p);
        let mut pi4 = p.pi();
        pi4.square_mut();
        pi4.square_mut();
        assert!((z4 - pi4 / 90u32).abs() < 1e-70);
    }
}
