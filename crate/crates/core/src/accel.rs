//! Sequence acceleration and small dense linear algebra.

use rug::ops::Pow;
use rug::Float;

use crate::real::{at, Precision, Real};

/// Solve `a x = b` by Gaussian elimination with partial pivoting.
/// Returns `None` for a numerically singular matrix.
pub fn solve_linear(mut a: Vec<Vec<Real>>, mut b: Vec<Real>, p: Precision) -> Option<Vec<Real>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col]
                .clone()
                .abs()
                .partial_cmp(&a[j][col].clone().abs())
                .unwrap()
        })?;
        if a[pivot][col].is_zero() {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            let factor = Float::with_val(p.bits(), &a[row][col] / &a[col][col]);
            for k in col..n {
                let t = Float::with_val(p.bits(), &factor * &a[col][k]);
                a[row][k] -= t;
            }
            let t = Float::with_val(p.bits(), &factor * &b[col]);
            b[row] -= t;
        }
    }
    let mut x = vec![p.zero(); n];
    for row in (0..n).rev() {
        let mut s = b[row].clone();
        for k in (row + 1)..n {
            s -= Float::with_val(p.bits(), &a[row][k] * &x[k]);
        }
        x[row] = s / &a[row][row];
    }
    Some(x)
}

/// Least squares `min |A x − y|` via normal equations at doubled precision.
/// Returns the solution and the residual 2-norm.
pub fn least_squares(rows: &[Vec<Real>], y: &[Real], p: Precision) -> Option<(Vec<Real>, Real)> {
    let w = p.boosted(p.bits());
    let m = rows.first()?.len();
    let mut ata = vec![vec![w.zero(); m]; m];
    let mut aty = vec![w.zero(); m];
    for (row, yi) in rows.iter().zip(y) {
        for i in 0..m {
            aty[i] += Float::with_val(w.bits(), &row[i] * yi);
            for j in 0..m {
                ata[i][j] += Float::with_val(w.bits(), &row[i] * &row[j]);
            }
        }
    }
    let x = solve_linear(ata, aty, w)?;
    let mut res = w.zero();
    for (row, yi) in rows.iter().zip(y) {
        let mut r = at(w, yi);
        for i in 0..m {
            r -= Float::with_val(w.bits(), &row[i] * &x[i]);
        }
        res += r.square();
    }
    Some((x.iter().map(|v| at(p, v)).collect(), at(p, &res.sqrt())))
}

/// Generalised Richardson extrapolation: given samples `values[i]` taken at
/// abscissae with error basis `basis[i][j]`, solve
/// `values[i] = L + Σ_j c_j basis[i][j]` for `L` (square system).
pub fn richardson_general(values: &[Real], basis: &[Vec<Real>], p: Precision) -> Option<Real> {
    let n = values.len();
    if basis.len() != n || basis.iter().any(|r| r.len() + 1 != n) {
        return None;
    }
    let w = p.boosted(p.bits());
    let a: Vec<Vec<Real>> = basis
        .iter()
        .map(|r| {
            let mut row = vec![w.real(1)];
            row.extend(r.iter().map(|v| at(w, v)));
            row
        })
        .collect();
    let b = values.iter().map(|v| at(w, v)).collect();
    solve_linear(a, b, w).map(|x| at(p, &x[0]))
}

/// Richardson extrapolation for samples `values[i]` at `h[i]` with an error
/// expansion in powers `h^e` for the listed exponents.
pub fn richardson_powers(values: &[Real], h: &[Real], exponents: &[f64], p: Precision) -> Option<Real> {
    let basis: Vec<Vec<Real>> = h
        .iter()
        .map(|hi| {
            exponents
                .iter()
                .map(|&e| {
                    let mut v = Float::with_val(p.bits(), hi.ln_ref());
                    v *= e;
                    v.exp()
                })
                .collect()
        })
        .collect();
    richardson_general(values, &basis, p)
}

/// Levin u-transform of the partial sums built from `terms`, using the last
/// `order + 1` of them. Returns the estimate and the change from order − 1.
pub fn levin_u(terms: &[Real], order: usize, p: Precision) -> (Real, Real) {
    let w = p.boosted(64);
    let n = terms.len();
    let mut partial = Vec::with_capacity(n);
    let mut s = w.zero();
    for t in terms {
        s += t;
        partial.push(s.clone());
    }
    if n < 3 {
        let last = partial.last().cloned().unwrap_or_else(|| w.zero());
        let err = terms.last().map(|t| t.clone().abs()).unwrap_or_else(|| w.zero());
        return (at(p, &last), at(p, &err));
    }
    let k = order.min(n - 2);
    let est = |k: usize| -> Real {
        let start = n - 1 - k;
        let beta = w.real(1);
        let mut num = w.zero();
        let mut den = w.zero();
        for j in 0..=k {
            let idx = start + j;
            if terms[idx].is_zero() {
                continue;
            }
            // ω = (β + idx) a_idx
            let mut omega = Float::with_val(w.bits(), &beta + idx as u32);
            omega *= &terms[idx];
            let mut ratio = Float::with_val(w.bits(), &beta + (start + j) as u32);
            ratio /= Float::with_val(w.bits(), &beta + (start + k) as u32);
            let mut c = Float::with_val(w.bits(), (&ratio).pow((k as u32).saturating_sub(1)));
            c *= rug::Integer::from(rug::Integer::binomial_u(k as u32, j as u32));
            if j % 2 == 1 {
                c = -c;
            }
            c /= omega;
            num += Float::with_val(w.bits(), &c * &partial[idx]);
            den += c;
        }
        num / den
    };
    let hi = est(k);
    let lo = est(k.saturating_sub(1).max(1));
    let err = Float::with_val(w.bits(), &hi - &lo).abs();
    (at(p, &hi), at(p, &err))
}

/// Wynn's epsilon algorithm on a sequence of partial sums. Returns the
/// deepest even-column estimate and its change from the previous one.
pub fn wynn_epsilon(partial: &[Real], p: Precision) -> (Real, Real) {
    let w = p.boosted(64);
    let n = partial.len();
    if n == 0 {
        return (p.zero(), p.zero());
    }
    let mut prev: Vec<Real> = vec![w.zero(); n + 1];
    let mut cur: Vec<Real> = partial.iter().map(|v| at(w, v)).collect();
    let mut best = cur[n - 1].clone();
    let mut best_err = if n > 1 {
        Float::with_val(w.bits(), &cur[n - 1] - &cur[n - 2]).abs()
    } else {
        w.zero()
    };
    let mut col = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = Float::with_val(w.bits(), &cur[i + 1] - &cur[i]);
            if d.is_zero() {
                return (at(p, &cur[i]), p.zero());
            }
            next.push(Float::with_val(w.bits(), &prev[i + 1] + d.recip()));
        }
        col += 1;
        prev = cur;
        cur = next;
        if col % 2 == 0 {
            let last = cur.last().unwrap().clone();
            best_err = Float::with_val(w.bits(), &last - &best).abs();
            best = last;
        }
    }
    (at(p, &best), at(p, &best_err))
}
