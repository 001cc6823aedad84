//! Dense exact-rational tableau simplex with Bland's anti-cycling rule.
//!
//! Only the two reductions this crate needs are exposed: a packing LP
//! `max cᵀy, Ay ≤ b, y ≥ 0` with `b ≥ 0`, and a phase-one feasibility search
//! for `Ax = b, x ≥ 0` with `b ≥ 0`.

use crate::rational::Rational;

/// Tableau in "z-row" form: the cost row holds reduced costs `-c̄` for a
/// maximisation, and its last entry the current objective value.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    cost: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) struct Unbounded;

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip().expect("pivot element is nonzero");
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<Rational>| {
            let factor = row[c].clone();
            if factor.is_zero() {
                return;
            }
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &(&factor * p);
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.cost);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Runs Bland's rule to optimality. Returns the number of pivots.
    fn run(&mut self) -> Result<usize, Unbounded> {
        let mut pivots = 0;
        loop {
            // Entering: lowest-index column with negative reduced cost.
            let Some(c) = (0..self.cols).find(|&j| self.cost[j].is_negative()) else {
                return Ok(pivots);
            };
            // Leaving: minimum ratio, ties to the lowest basic variable index.
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let (r, _) = best.ok_or(Unbounded)?;
            self.pivot(r, c);
            pivots += 1;
        }
    }

    fn primal(&self, k: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); k];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < k {
                x[b] = row[self.cols].clone();
            }
        }
        x
    }

    fn objective(&self) -> &Rational {
        &self.cost[self.cols]
    }
}

#[derive(Debug, Clone)]
pub(crate) struct PackingSolution {
    pub value: Rational,
    /// Optimal `y`.
    pub primal: Vec<Rational>,
    /// Optimal multipliers `x ≥ 0` of the dual `min bᵀx, Aᵀx ≥ c`.
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

/// Solves `max cᵀy` subject to `Ay ≤ b`, `y ≥ 0`, for `b ≥ 0`.
pub(crate) fn maximize_packing(
    a: &[Vec<Rational>],
    b: &[Rational],
    c: &[Rational],
) -> Result<PackingSolution, Unbounded> {
    let m = a.len();
    let k = c.len();
    debug_assert!(b.iter().all(|x| !x.is_negative()));
    let cols = k + m;
    let rows = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (ai, bi))| {
            let mut row = Vec::with_capacity(cols + 1);
            row.extend(ai.iter().cloned());
            row.extend((0..m).map(|s| if s == i { Rational::one() } else { Rational::zero() }));
            row.push(bi.clone());
            row
        })
        .collect();
    let mut cost: Vec<Rational> = c.iter().map(|x| -x).collect();
    cost.extend((0..=m).map(|_| Rational::zero()));
    let mut t = Tableau { rows, cost, basis: (k..k + m).collect(), cols };
    let pivots = t.run()?;
    Ok(PackingSolution {
        value: t.objective().clone(),
        primal: t.primal(k),
        dual: t.cost[k..k + m].to_vec(),
        pivots,
    })
}

/// Finds a basic `x ≥ 0` with `Ax = b` (for `b ≥ 0`), or `None` if the
/// system has no non-negative solution.
pub(crate) fn nonnegative_solution(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let k = a.first().map_or(0, Vec::len);
    debug_assert!(b.iter().all(|x| !x.is_negative()));
    let cols = k + m;
    let rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (ai, bi))| {
            let mut row = Vec::with_capacity(cols + 1);
            row.extend(ai.iter().cloned());
            row.extend((0..m).map(|s| if s == i { Rational::one() } else { Rational::zero() }));
            row.push(bi.clone());
            row
        })
        .collect();
    // Maximise -Σ artificials; price out the artificial basis.
    let mut cost = vec![Rational::zero(); cols + 1];
    for row in &rows {
        for j in 0..k {
            cost[j] -= &row[j];
        }
        cost[cols] -= &row[cols];
    }
    let mut t = Tableau { rows, cost, basis: (k..k + m).collect(), cols };
    t.run().expect("phase one is bounded by zero");
    if t.objective().is_zero() {
        Some(t.primal(k))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn small_packing_lp() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3  ->  (3, 1), value 11.
        let a = vec![vec![r(1), r(1)], vec![r(1), r(3)], vec![r(1), r(0)]];
        let b = vec![r(4), r(6), r(3)];
        let c = vec![r(3), r(2)];
        let s = maximize_packing(&a, &b, &c).unwrap();
        assert_eq!(s.value, r(11));
        assert_eq!(s.primal, vec![r(3), r(1)]);
        // Dual feasibility and strong duality.
        let dual_obj: Rational = s.dual.iter().zip(&b).map(|(x, y)| x * y).sum();
        assert_eq!(dual_obj, s.value);
        for j in 0..2 {
            let lhs: Rational = (0..3).map(|i| &a[i][j] * &s.dual[i]).sum();
            assert!(lhs >= c[j]);
        }
    }

    #[test]
    fn unbounded_is_reported() {
        let a = vec![vec![r(1), r(-1)]];
        let s = maximize_packing(&a, &[r(1)], &[r(0), r(1)]);
        assert_eq!(s.unwrap_err(), Unbounded);
    }

    #[test]
    fn degenerate_lp_terminates() {
        // Beale's classic cycling example (Dantzig's rule cycles; Bland does not).
        let a = vec![
            vec![q(1, 4), r(-8), r(-1), r(9)],
            vec![q(1, 2), r(-12), q(-1, 2), r(3)],
            vec![r(0), r(0), r(1), r(0)],
        ];
        let b = vec![r(0), r(0), r(1)];
        let c = vec![q(3, 4), r(-20), q(1, 2), r(-6)];
        let s = maximize_packing(&a, &b, &c).unwrap();
        assert_eq!(s.value, q(5, 4));
    }

    #[test]
    fn phase_one() {
        let a = vec![vec![r(1), r(1), r(0)], vec![r(0), r(1), r(1)]];
        let x = nonnegative_solution(&a, &[r(2), r(3)]).unwrap();
        assert!(x.iter().all(|v| !v.is_negative()));
        assert_eq!(&x[0] + &x[1], r(2));
        assert_eq!(&x[1] + &x[2], r(3));

        // x0 - x1 = 1 and x1 - x0 = 1 has no solution at all.
        let a = vec![vec![r(1), r(-1)], vec![r(-1), r(1)]];
        assert!(nonnegative_solution(&a, &[r(1), r(1)]).is_none());

        // x0 - x1 = 0 and 0 = 0 (a redundant row) is fine.
        let a = vec![vec![r(1), r(-1)], vec![r(0), r(0)]];
        assert!(nonnegative_solution(&a, &[r(0), r(0)]).is_some());
    }
}
