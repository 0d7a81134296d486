//! Stieltjes constants from the defining limit
//! γ_k(a) = lim_N [Σ_{m=0}^N ln^k(m+a)/(m+a) − ln^{k+1}(N+a)/(k+1)],
//! extrapolated over a geometric ladder of N.

use rug::ops::Pow;
use rug::Float;

use crate::accel::richardson_general;
use crate::error::{Error, Result};
use crate::real::{at, Precision, Real};
use crate::result::{Method, SeriesResult};
use crate::trigintegrals::J_MAX;

/// Ladder ratio between consecutive truncation points.
pub const LADDER_RATIO: f64 = 1.5;

/// Powers of 1/x present in the Euler-Maclaurin remainder: f/2 gives 1,
/// the odd derivatives give 2, 4, 6, ...
const POWERS: [u32; 5] = [1, 2, 4, 6, 8];

/// Extrapolated limit with N as the top of the ladder.
///
/// The remainder after N terms is a combination of ln^q(N+a)/(N+a)^s with
/// q ≤ k, so the ladder solves for those coefficients. The error estimate is
/// the change when the highest power is dropped.
pub fn stieltjes_limit(k: usize, a: &Real, n: u64, p: Precision) -> Result<SeriesResult> {
    if k > J_MAX {
        return Err(Error::RecursionDepthExceeded { requested: k, max: J_MAX });
    }
    if !(*a > 0) {
        return Err(Error::DomainError(format!("limit oracle needs a > 0, got {}", a.to_f64())));
    }
    let w = p.boosted(64);
    let a = at(w, a);
    let unknowns = POWERS.len() * (k + 1);
    let rungs = unknowns + 1;
    let ladder: Vec<u64> = (0..rungs)
        .map(|i| (n as f64 / LADDER_RATIO.powi((rungs - 1 - i) as i32)).round() as u64)
        .collect();
    if ladder[0] < 16 || ladder.windows(2).any(|s| s[0] >= s[1]) {
        return Err(Error::InvalidParameters(format!("ladder top N = {n} too small for k = {k}")));
    }

    let values = partial_limits(k, &a, &ladder, w);
    let basis_for = |powers: &[u32]| -> Vec<Vec<Real>> {
        ladder
            .iter()
            .map(|&m| {
                let x = Float::with_val(w.bits(), &a + m);
                let lx = Float::with_val(w.bits(), x.ln_ref());
                let mut row = Vec::new();
                for &s in powers {
                    let xs = Float::with_val(w.bits(), (&x).pow(s));
                    for q in 0..=k as u32 {
                        let lq = Float::with_val(w.bits(), (&lx).pow(q));
                        row.push(lq / &xs);
                    }
                }
                row
            })
            .collect()
    };
    let full = richardson_general(&values, &basis_for(&POWERS), w)
        .ok_or_else(|| Error::NonConvergence("singular Richardson system".into()))?;
    let lower = &POWERS[..POWERS.len() - 1];
    let drop = rungs - (k + 1);
    let reduced = richardson_general(&values[rungs - drop..], &basis_for(lower)[rungs - drop..], w)
        .ok_or_else(|| Error::NonConvergence("singular Richardson system".into()))?;
    let err = Float::with_val(w.bits(), &full - &reduced).abs() + p.epsilon();
    Ok(SeriesResult::new(at(p, &full), at(p, &err), n + 1, Method::Quadrature))
}

/// The bracketed expression at each ladder point, one running sum.
fn partial_limits(k: usize, a: &Real, ladder: &[u64], w: Precision) -> Vec<Real> {
    let mut out = Vec::with_capacity(ladder.len());
    let mut acc = w.zero();
    let mut next = 0u64;
    for &top in ladder {
        while next <= top {
            let x = Float::with_val(w.bits(), a + next);
            let lx = Float::with_val(w.bits(), x.ln_ref());
            acc += Float::with_val(w.bits(), (&lx).pow(k as u32)) / &x;
            next += 1;
        }
        let x = Float::with_val(w.bits(), a + top);
        let lx = Float::with_val(w.bits(), x.ln_ref());
        let corr = Float::with_val(w.bits(), (&lx).pow(k as u32 + 1)) / (k as u32 + 1);
        out.push(Float::with_val(w.bits(), &acc - &corr));
    }
    out
}
