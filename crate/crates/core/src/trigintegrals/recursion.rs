//! Closed forms for g_j(b) = ∫_1^∞ sin(bx) ln^j x / x² dx.
//!
//! Each level is stored as
//!
//! ```text
//! g_j(b) = T_j (sin b − b Ci b) + b P_j(ln b) + Σ β b³ F(1,…,1; 2,…,2, α; −b²/4)
//! ```
//!
//! and the next level follows from g_j(b) = −j b ∫ g_{j−1}(b)/b² db + c_j b.
//! The term-wise integrals are
//!
//! * ∫ (sin b − b Ci b)/b² db = Ci b − sin b/b − γL − L²/2 + (b²/8) F(1,1,1; 2,2,2, 3/2),
//! * ∫ P(L)/b db = ∫ P(L) dL,
//! * ∫ b F_m(−b²/4) db = (b²/2) F_{m+1}(−b²/4),
//!
//! with L = ln b. The constant c_j is fixed by g_j(∞) = 0: the algebraic
//! parts of the hypergeometric terms turn b·F into polynomials in L, and the
//! whole polynomial must vanish.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rug::ops::Pow;
use rug::Float;

use super::{ci, precision_of, J_MAX};
use crate::accel::richardson_powers;
use crate::error::{Error, Result};
use crate::hypergeom::asymptotic::residue_terms;
use crate::hypergeom::{eval_auto, Alpha, RepeatedFamily};
use crate::real::{at, Precision, Real};
use crate::result::{Method, SeriesResult};

/// Starting representation of g_0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Seed {
    /// g_0 = sin b − b Ci b; the hypergeometric terms carry α = 3/2.
    SineCosine,
    /// g_0 = b(c_0 − ln b) + (b³/12) ₂F₃(1,1; 2,2, 5/2; −b²/4); a single
    /// hypergeometric term with α = 5/2 at every level.
    FiveHalves,
}

/// `coef · b³ · F(family; −b²/4)`.
#[derive(Debug, Clone)]
pub struct HypTerm {
    pub coef: Real,
    pub family: RepeatedFamily,
}

#[derive(Debug, Clone)]
pub struct Level {
    pub j: usize,
    /// Coefficient of sin b − b Ci b.
    pub trig: Real,
    /// P_j(L) = Σ poly[k] L^k, multiplied by b.
    pub poly: Vec<Real>,
    pub hyp: Vec<HypTerm>,
    /// Integration constant fixed by g_j(∞) = 0 (the constant of P_j).
    pub c: Real,
    /// |g_j(b)/b| extrapolated to b → ∞ from b = 2π·{10³, 3·10³, 10⁴}.
    pub limit_residual: f64,
}

#[derive(Debug, Clone)]
pub struct RecursionState {
    pub seed: Seed,
    pub levels: Vec<Level>,
    precision: Precision,
}

impl RecursionState {
    pub fn j_max(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    /// c_1, …, c_j.
    pub fn c_constants(&self) -> Vec<Real> {
        self.levels[1..].iter().map(|l| l.c.clone()).collect()
    }

    pub fn level(&self, j: usize) -> Result<&Level> {
        self.levels.get(j).ok_or(Error::RecursionDepthExceeded {
            requested: j,
            max: self.j_max(),
        })
    }

    /// g_j(b) for b > 0.
    pub fn eval(&self, j: usize, b: &Real, target_abs_err: &Real) -> Result<SeriesResult> {
        let level = self.level(j)?;
        if !(*b > 0) {
            return Err(Error::DomainError(format!("g_j needs b > 0, got {}", b.to_f64())));
        }
        let out = precision_of(&[b]).max_with(self.precision);
        // cancellation between the pieces grows like b⁴ ln^{j+1} b
        let lb = b.to_f64().max(1.0).log2();
        let boost = (4.0 * lb + (j as f64 + 1.0) * (lb + 1.0).log2()) as u32 + 40;
        let w = precision_of(&[b]).boosted_coarse(boost).max_with(self.precision);
        let b = at(w, b);
        let l = Float::with_val(w.bits(), b.ln_ref());
        let mut acc = w.zero();
        let mut err = w.zero();
        let mut terms = 0u64;
        if !level.trig.is_zero() {
            let g0 = Float::with_val(w.bits(), b.sin_ref()) - Float::with_val(w.bits(), &b * &ci(&b)?);
            acc += Float::with_val(w.bits(), &level.trig * &g0);
        }
        let mut poly = w.zero();
        for c in level.poly.iter().rev() {
            poly *= &l;
            poly += c;
        }
        acc += Float::with_val(w.bits(), &poly * &b);
        let b3 = Float::with_val(w.bits(), (&b).pow(3u32));
        let z = -Float::with_val(w.bits(), b.square_ref()) / 4u32;
        let n_hyp = level.hyp.len().max(1) as u32;
        for h in &level.hyp {
            let scale = Float::with_val(w.bits(), &h.coef * &b3).abs();
            let t = Float::with_val(w.bits(), target_abs_err / &scale) / (2 * n_hyp);
            let f = eval_auto(&h.family.spec(z.clone()), &t)?;
            terms += f.terms_used;
            acc += Float::with_val(w.bits(), &h.coef * &b3) * &f.value;
            err += f.error_estimate * scale;
        }
        err += out.epsilon() * Float::with_val(w.bits(), acc.abs_ref());
        Ok(SeriesResult::new(at(out, &acc), at(out, &err), terms, Method::ClosedForm))
    }
}

trait MaxWith {
    fn max_with(self, other: Precision) -> Precision;
}

impl MaxWith for Precision {
    fn max_with(self, other: Precision) -> Precision {
        if self.bits() >= other.bits() {
            self
        } else {
            other
        }
    }
}

pub fn build_recursion(j_max: usize, p: Precision) -> Result<RecursionState> {
    build_recursion_with(Seed::SineCosine, j_max, p)
}

pub fn build_recursion_with(seed: Seed, j_max: usize, p: Precision) -> Result<RecursionState> {
    if j_max > J_MAX {
        return Err(Error::RecursionDepthExceeded {
            requested: j_max,
            max: J_MAX,
        });
    }
    let w = p.boosted(64);
    let gamma = w.euler();
    let mut levels = Vec::with_capacity(j_max + 1);
    let mut level0 = match seed {
        Seed::SineCosine => Level {
            j: 0,
            trig: w.real(1),
            poly: vec![],
            hyp: vec![],
            c: w.zero(),
            limit_residual: 0.0,
        },
        Seed::FiveHalves => Level {
            j: 0,
            trig: w.zero(),
            poly: vec![w.zero(), w.real(-1)],
            hyp: vec![HypTerm {
                coef: w.ratio(1, 12),
                family: RepeatedFamily::new(2, Alpha::FiveHalves)?,
            }],
            c: w.zero(),
            limit_residual: 0.0,
        },
    };
    if seed == Seed::FiveHalves {
        fix_constant(&mut level0, w)?;
    }
    levels.push(level0);
    for j in 1..=j_max {
        let prev = &levels[j - 1];
        let jr = j as u32;
        let mut poly = vec![w.zero(); prev.poly.len() + 1];
        for (k, c) in prev.poly.iter().enumerate() {
            poly[k + 1] -= Float::with_val(w.bits(), c * jr) / (k as u32 + 1);
        }
        let mut hyp: Vec<HypTerm> = prev
            .hyp
            .iter()
            .map(|h| HypTerm {
                coef: -(Float::with_val(w.bits(), &h.coef * jr) / 2u32),
                family: RepeatedFamily {
                    ones: h.family.ones + 1,
                    alpha: h.family.alpha,
                },
            })
            .collect();
        if !prev.trig.is_zero() {
            let jt = Float::with_val(w.bits(), &prev.trig * jr);
            while poly.len() < 3 {
                poly.push(w.zero());
            }
            poly[1] += Float::with_val(w.bits(), &jt * &gamma);
            poly[2] += Float::with_val(w.bits(), &jt / 2u32);
            push_hyp(
                &mut hyp,
                HypTerm {
                    coef: -(jt / 8u32),
                    family: RepeatedFamily::new(3, Alpha::ThreeHalves)?,
                },
            );
        }
        let mut level = Level {
            j,
            trig: Float::with_val(w.bits(), &prev.trig * jr),
            poly,
            hyp,
            c: w.zero(),
            limit_residual: 0.0,
        };
        fix_constant(&mut level, w)?;
        levels.push(level);
    }
    let mut state = RecursionState {
        seed,
        levels,
        precision: p,
    };
    for lv in state.levels.iter_mut() {
        lv.trig = at(p, &lv.trig);
        lv.c = at(p, &lv.c);
        lv.poly = lv.poly.iter().map(|c| at(p, c)).collect();
        for h in lv.hyp.iter_mut() {
            h.coef = at(p, &h.coef);
        }
    }
    let check = state.clone_at(p.boosted(128));
    for j in 0..=j_max {
        let r = limit_check(&check, j)?;
        state.levels[j].limit_residual = r;
        if r > 1e-15 {
            return Err(Error::ConstantDeterminationFailure(format!(
                "g_{j}(b)/b extrapolates to {r:e} instead of 0"
            )));
        }
    }
    Ok(state)
}

impl RecursionState {
    fn clone_at(&self, p: Precision) -> RecursionState {
        let mut s = self.clone();
        s.precision = p;
        s
    }
}

fn push_hyp(hyp: &mut Vec<HypTerm>, t: HypTerm) {
    for h in hyp.iter_mut() {
        if h.family == t.family {
            h.coef += &t.coef;
            return;
        }
    }
    hyp.push(t);
}

/// Sets the constant of P_j so that g_j(b)/b → 0, after checking that the
/// growing powers of ln b cancel.
fn fix_constant(level: &mut Level, w: Precision) -> Result<()> {
    let limit = limit_polynomial(level, w);
    let scale = limit
        .iter()
        .chain(level.poly.iter())
        .map(|c| c.to_f64().abs())
        .fold(1.0, f64::max);
    for (k, c) in limit.iter().enumerate().skip(1) {
        if c.to_f64().abs() > scale * 1e-30 {
            return Err(Error::ConstantDeterminationFailure(format!(
                "level {}: ln^{k} b coefficient {} does not cancel",
                level.j,
                c.to_f64()
            )));
        }
    }
    let c = -limit[0].clone();
    level.poly[0] += &c;
    level.c = level.poly[0].clone();
    Ok(())
}

/// Polynomial in L = ln b that g_j(b)/b tends to: P_j(L) plus the algebraic
/// parts of the hypergeometric terms.
fn limit_polynomial(level: &Level, w: Precision) -> Vec<Real> {
    let mut out: Vec<Real> = level.poly.iter().map(|c| at(w, c)).collect();
    let ln2 = w.ln2();
    for h in &level.hyp {
        // b² H(−b²/4) = 4 Σ_i coef_i (2L − 2 ln 2)^i
        for t in residue_terms(h.family, w) {
            let i = t.ln_power;
            while out.len() <= i as usize {
                out.push(w.zero());
            }
            for k in 0..=i {
                let mut c = Float::with_val(w.bits(), &t.coef * &h.coef) * 4u32;
                c *= rug::Integer::from(rug::Integer::binomial_u(i, k));
                c *= Float::with_val(w.bits(), 2u32).pow(i);
                c *= Float::with_val(w.bits(), (-ln2.clone()).pow(i - k));
                out[k as usize] += c;
            }
        }
    }
    out
}

/// Extrapolated g_j(b)/b from samples at b = 2πk, where the remainder
/// runs in even powers of 1/b.
fn limit_check(state: &RecursionState, j: usize) -> Result<f64> {
    let p = state.precision;
    let target = p.epsilon();
    let mut vals = Vec::new();
    let mut hs = Vec::new();
    for k in [1000u32, 3000, 10000] {
        let b = p.pi() * (2 * k);
        let g = state.eval(j, &b, &Float::with_val(p.bits(), &target * &b))?;
        vals.push(g.value / &b);
        hs.push(b.recip());
    }
    let est = richardson_powers(&vals, &hs, &[2.0, 4.0], p)
        .ok_or_else(|| Error::ConstantDeterminationFailure("singular extrapolation".into()))?;
    Ok(est.to_f64().abs())
}

/// Shared recursion at a precision, built once to J_MAX.
pub fn recursion_state(seed: Seed, p: Precision) -> Result<Arc<RecursionState>> {
    static MEMO: OnceLock<RwLock<HashMap<(Seed, u32), Arc<RecursionState>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(s) = memo.read().unwrap().get(&(seed, p.bits())) {
        return Ok(s.clone());
    }
    let s = Arc::new(build_recursion_with(seed, J_MAX, p)?);
    Ok(memo.write().unwrap().entry((seed, p.bits())).or_insert(s).clone())
}
