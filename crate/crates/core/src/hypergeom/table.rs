//! Versioned text table of exponential-expansion coefficients.
//!
//! ```text
//! # stieltjes-hyp exponential coefficients
//! version 1
//! <ones> <alpha> <k> <A_k, 40 significant digits> <residual>
//! ```
//!
//! The residual of record k is |F − H − Σ_{i≤k} E_i| at the reference
//! argument z = [`REFERENCE_Z`], with F from boosted Taylor summation.

use std::fmt::Write as _;

use super::{eval_taylor, expansion, Alpha, RepeatedFamily};
use crate::error::{Error, Result};
use crate::real::{parse_real, Precision, Real};

pub const TABLE_VERSION: u32 = 1;
pub const REFERENCE_Z: f64 = 2500.0;

#[derive(Debug, Clone)]
pub struct CoefficientRecord {
    pub family: RepeatedFamily,
    pub k: usize,
    pub value: Real,
    pub residual: f64,
}

/// Records for k < `count` of each family.
pub fn coefficient_records(
    families: &[RepeatedFamily],
    count: usize,
    p: Precision,
) -> Result<Vec<CoefficientRecord>> {
    let mut out = Vec::new();
    for &fam in families {
        let e = expansion(fam, p);
        let z = p.real(REFERENCE_Z);
        let taylor = eval_taylor(&fam.spec(-z.clone()), &p.real(1e-60))?;
        let mut resid = taylor.value - e.algebraic(&z);
        for k in 0..count {
            let (cur, _) = e.exponential(&z, k + 1)?;
            let r = resid.clone() - cur;
            out.push(CoefficientRecord {
                family: fam,
                k,
                value: e.exp_coeffs[k].clone(),
                residual: r.to_f64().abs(),
            });
        }
        resid = p.zero();
        let _ = resid;
    }
    Ok(out)
}

pub fn write_table(records: &[CoefficientRecord]) -> String {
    let mut s = String::new();
    s.push_str("# stieltjes-hyp exponential coefficients\n");
    let _ = writeln!(s, "version {TABLE_VERSION}");
    s.push_str("# ones alpha k A_k residual\n");
    for r in records {
        let _ = writeln!(
            s,
            "{} {} {} {} {:.3e}",
            r.family.ones,
            r.family.alpha.as_str(),
            r.k,
            r.value.to_string_radix(10, Some(40)),
            r.residual
        );
    }
    s
}

pub fn read_table(text: &str, p: Precision) -> Result<Vec<CoefficientRecord>> {
    let bad = |msg: String| Error::InvalidParameters(format!("coefficient table: {msg}"));
    let mut version = None;
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(v) = line.strip_prefix("version ") {
            let v: u32 = v.trim().parse().map_err(|_| bad(format!("bad version {v:?}")))?;
            if v != TABLE_VERSION {
                return Err(bad(format!("unsupported version {v}")));
            }
            version = Some(v);
            continue;
        }
        if version.is_none() {
            return Err(bad("missing version line".into()));
        }
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 5 {
            return Err(bad(format!("expected 5 fields: {line:?}")));
        }
        let ones: usize = f[0].parse().map_err(|_| bad(format!("ones {:?}", f[0])))?;
        let alpha = Alpha::parse(f[1]).ok_or_else(|| bad(format!("alpha {:?}", f[1])))?;
        let k: usize = f[2].parse().map_err(|_| bad(format!("k {:?}", f[2])))?;
        let value = parse_real(p, f[3])?;
        let residual: f64 = f[4].parse().map_err(|_| bad(format!("residual {:?}", f[4])))?;
        out.push(CoefficientRecord {
            family: RepeatedFamily::new(ones, alpha)?,
            k,
            value,
            residual,
        });
    }
    Ok(out)
}
