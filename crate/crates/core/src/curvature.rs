//! Curvature vectors: solutions of `Dw = n·1`, their ℓ¹ norm and the
//! bound `K = n / ‖w‖₁`.
//!
//! The exact solver decides rank and consistency over the rationals. The
//! floating-point solver exists for graphs too large for exact elimination
//! and never classifies a system, it only reports how well it solved it.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{row_sums, DistanceMatrix};
use crate::rational::{int_dot, Rational};
use crate::simplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolveStatus {
    Unique,
    Underdetermined { nullity: usize },
    Inconsistent,
}

/// How `w` was picked from the solution set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// The system has exactly one solution.
    Determined,
    /// Particular solution with every free variable set to zero.
    FreeVariablesZeroed,
    /// The zeroed particular solution had a negative entry, so a
    /// non-negative basic solution was found by phase-one simplex instead.
    NonNegativeBasic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureSolution {
    pub n: usize,
    pub status: SolveStatus,
    pub selection: Option<Selection>,
    pub w: Option<Vec<Rational>>,
    pub l1_norm: Option<Rational>,
    pub bound_k: Option<Rational>,
    pub min_entry: Option<Rational>,
    pub nonneg: bool,
}

impl CurvatureSolution {
    fn from_w(n: usize, status: SolveStatus, selection: Selection, w: Vec<Rational>) -> Self {
        let l1: Rational = w.iter().map(Rational::abs).sum();
        let min_entry = w.iter().min().cloned().unwrap_or_else(Rational::zero);
        let bound_k = l1.recip().map(|inv| inv.mul_int(n as i64));
        CurvatureSolution {
            n,
            status,
            selection: Some(selection),
            nonneg: !min_entry.is_negative(),
            w: Some(w),
            l1_norm: Some(l1),
            bound_k,
            min_entry: Some(min_entry),
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.status != SolveStatus::Inconsistent
    }

    /// Caveats every consumer of this solution has to pass on.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        match self.status {
            SolveStatus::Underdetermined { nullity } => {
                out.push(format!(
                    "D is singular (nullity {nullity}); w is one of infinitely many solutions \
                     and K is not canonical"
                ));
                if self.nonneg {
                    out.push(
                        "w is non-negative; every non-negative solution has the same l1 norm, \
                         so K agrees with any other non-negative choice"
                            .into(),
                    );
                }
            }
            SolveStatus::Inconsistent => out.push("Dw = n1 has no solution; K is undefined".into()),
            SolveStatus::Unique => {}
        }
        if self.selection == Some(Selection::NonNegativeBasic) {
            out.push(
                "the particular solution with free variables zeroed was signed; \
                 a non-negative solution was selected instead"
                    .into(),
            );
        }
        if !self.nonneg && self.is_consistent() {
            out.push("w has negative entries; only the upper bound K <= B is guaranteed".into());
        }
        out
    }
}

/// Exact `Dw - n·1`.
pub fn residual(d: &DistanceMatrix, w: &[Rational]) -> Vec<Rational> {
    let target = Rational::from_integer(d.n() as i64);
    d.rows().map(|row| int_dot(row, w) - &target).collect()
}

/// Solves `Dw = n·1` exactly by Gaussian elimination with partial pivoting
/// (largest magnitude, ties to the lowest row).
pub fn solve_curvature(d: &DistanceMatrix) -> CurvatureSolution {
    let n = d.n();
    let rhs = Rational::from_integer(n as i64);
    let mut a: Vec<Vec<Rational>> = d
        .rows()
        .map(|row| {
            row.iter()
                .map(|&x| Rational::from_integer(x as i64))
                .chain(std::iter::once(rhs.clone()))
                .collect()
        })
        .collect();

    let mut pivot_cols = Vec::with_capacity(n);
    let mut r = 0;
    for c in 0..n {
        if r == n {
            break;
        }
        let mut best: Option<(usize, Rational)> = None;
        for (i, row) in a.iter().enumerate().skip(r) {
            if row[c].is_zero() {
                continue;
            }
            let mag = row[c].abs();
            if best.as_ref().is_none_or(|(_, b)| mag > *b) {
                best = Some((i, mag));
            }
        }
        let Some((p, _)) = best else { continue };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let inv = pivot_row[c].recip().expect("nonzero pivot");
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for k in c..=n {
                if !pivot_row[k].is_zero() {
                    row[k] -= &(&f * &pivot_row[k]);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }

    let rank = r;
    if a[rank..].iter().any(|row| !row[n].is_zero()) {
        return CurvatureSolution {
            n,
            status: SolveStatus::Inconsistent,
            selection: None,
            w: None,
            l1_norm: None,
            bound_k: None,
            min_entry: None,
            nonneg: false,
        };
    }

    let mut w = vec![Rational::zero(); n];
    for (k, &c) in pivot_cols.iter().enumerate().rev() {
        let row = &a[k];
        let mut s = row[n].clone();
        for j in c + 1..n {
            if !row[j].is_zero() && !w[j].is_zero() {
                s -= &(&row[j] * &w[j]);
            }
        }
        w[c] = s / &row[c];
    }

    if rank == n {
        return CurvatureSolution::from_w(n, SolveStatus::Unique, Selection::Determined, w);
    }
    let status = SolveStatus::Underdetermined { nullity: n - rank };
    if w.iter().any(Rational::is_negative) {
        if let Some(x) = nonnegative_solution(d) {
            return CurvatureSolution::from_w(n, status, Selection::NonNegativeBasic, x);
        }
    }
    CurvatureSolution::from_w(n, status, Selection::FreeVariablesZeroed, w)
}

/// Some `w ≥ 0` with `Dw = n·1`, if one exists.
pub fn nonnegative_solution(d: &DistanceMatrix) -> Option<Vec<Rational>> {
    let a: Vec<Vec<Rational>> = d
        .rows()
        .map(|row| row.iter().map(|&x| Rational::from_integer(x as i64)).collect())
        .collect();
    let b = vec![Rational::from_integer(d.n() as i64); d.n()];
    simplex::nonnegative_solution(&a, &b)
}

/// `K = n / ‖w‖₁`.
pub fn curvature_bound(sol: &CurvatureSolution, n: usize) -> Result<Rational> {
    let l1 = sol.l1_norm.as_ref().ok_or(Error::Inconsistent)?;
    let inv = l1.recip().ok_or(Error::ZeroNorm)?;
    Ok(inv.mul_int(n as i64))
}

/// For graphs whose distance rows all sum to the same `S`, `w = (n/S)·1`
/// solves the system, giving `K = S/n` without any elimination.
pub fn transitive_oracle(d: &DistanceMatrix) -> Option<Rational> {
    let sums = row_sums(d);
    let first = *sums.first()?;
    if first == 0 || sums.iter().any(|&s| s != first) {
        return None;
    }
    Some(Rational::new(first as i64, d.n() as i64).expect("n >= 1"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FloatSolution {
    pub w: Vec<f64>,
    /// `‖Dw − n·1‖∞`, recomputed from the returned `w`.
    pub residual_inf: f64,
    /// Reciprocal pivot growth `max|D| / max|U|`; small values mean the
    /// factorisation amplified entries and `w` deserves less trust.
    pub condition_hint: f64,
}

/// Solves `Dw = n·1` in `f64` by LU with partial pivoting. Pivots smaller
/// than `1e-12·n` abort with [`Error::NumericallySingular`].
pub fn solve_curvature_float(d: &DistanceMatrix) -> Result<FloatSolution> {
    let n = d.n();
    let threshold = 1e-12 * n as f64;
    let mut lu: Vec<f64> = d.rows().flatten().map(|&x| x as f64).collect();
    let mut rhs = vec![n as f64; n];
    let max_a = lu.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut max_u = max_a;

    for c in 0..n {
        let mut p = c;
        for i in c + 1..n {
            if lu[i * n + c].abs() > lu[p * n + c].abs() {
                p = i;
            }
        }
        let pivot = lu[p * n + c];
        if pivot.abs() < threshold {
            return Err(Error::NumericallySingular { step: c, pivot: pivot.abs(), threshold });
        }
        if p != c {
            for k in 0..n {
                lu.swap(c * n + k, p * n + k);
            }
            rhs.swap(c, p);
        }
        let (head, tail) = lu.split_at_mut((c + 1) * n);
        let pivot_row = &head[c * n..];
        let (rhs_head, rhs_tail) = rhs.split_at_mut(c + 1);
        let pivot_rhs = rhs_head[c];
        let update = |(row, b): (&mut [f64], &mut f64)| {
            let f = row[c] / pivot;
            if f != 0.0 {
                row[c] = 0.0;
                for (x, &pv) in row[c + 1..].iter_mut().zip(&pivot_row[c + 1..]) {
                    *x -= f * pv;
                }
                *b -= f * pivot_rhs;
            }
        };
        if n >= 128 {
            tail.par_chunks_mut(n).zip(rhs_tail.par_iter_mut()).for_each(update);
        } else {
            tail.chunks_mut(n).zip(rhs_tail.iter_mut()).for_each(update);
        }
        max_u = pivot_row[c..n].iter().fold(max_u, |m, x| m.max(x.abs()));
    }

    let mut w = vec![0.0; n];
    for c in (0..n).rev() {
        let row = &lu[c * n..(c + 1) * n];
        let s: f64 = row[c + 1..].iter().zip(&w[c + 1..]).map(|(a, x)| a * x).sum();
        w[c] = (rhs[c] - s) / row[c];
    }

    let residual_inf = d
        .rows()
        .map(|row| {
            let dw: f64 = row.iter().zip(&w).map(|(&a, x)| a as f64 * x).sum();
            (dw - n as f64).abs()
        })
        .fold(0.0, f64::max);
    let condition_hint = if max_u > 0.0 { max_a / max_u } else { 1.0 };
    Ok(FloatSolution { w, residual_inf, condition_hint })
}
