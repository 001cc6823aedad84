//! Exact solution of zero-sum matrix games, and the comparison between the
//! game value of `D` and the curvature bound `K`.
//!
//! For a payoff matrix `M` the column player picks a mixed strategy `P`
//! and the row player answers with a pure row `u`, paying `(MP)_u`. The
//! value is `max_P min_u (MP)_u`, which by duality equals
//! `min_Q max_v (MᵀQ)_v`.
//!
//! If some `w ≥ 0` solves `Dw = n·1`, then `A(P) ≤ K` for every `P` caps the
//! value at `K`, and `P = w/‖w‖₁` gives `DP = K·1`, so value and `K` agree.

use serde::Serialize;

use crate::curvature::{solve_curvature, CurvatureSolution};
use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;
use crate::minimax::Measure;
use crate::rational::Rational;
use crate::simplex::maximize_packing;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GameSolution {
    pub value: Rational,
    /// Column strategy attaining `max_P min_u (MP)_u`.
    pub maximin_strategy: Measure,
    /// Row strategy attaining `min_Q max_v (MᵀQ)_v`.
    pub minimax_strategy: Measure,
    /// `min_u (MP)_u − value`; exactly zero on a certified solution.
    pub maximin_residue: Rational,
    /// `max_v (MᵀQ)_v − value`; exactly zero on a certified solution.
    pub minimax_residue: Rational,
    pub pivots: usize,
}

/// Solves the game with integer payoff matrix `payoff` (rows × columns).
///
/// Payoffs are shifted by `1 − min(M)` so that every entry is at least one,
/// which makes the LP `max Σy, (M+s)ᵀy ≤ 1, y ≥ 0` bounded with a positive
/// value. For a distance matrix the shift is exactly `+1`. The LP is solved
/// with exact Bland-rule simplex; its primal gives the row strategy and its
/// dual the column strategy. Both certificates are checked before returning.
pub fn solve_matrix_game(payoff: &[Vec<i64>]) -> Result<GameSolution> {
    let rows = payoff.len();
    let cols = payoff.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParams("empty payoff matrix".into()));
    }
    if let Some(r) = payoff.iter().find(|r| r.len() != cols) {
        return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
    }
    let min = payoff.iter().flatten().copied().min().expect("nonempty");
    let shift = 1 - min;

    // One constraint per column v: Σ_u (M_uv + s) y_u ≤ 1.
    let a: Vec<Vec<Rational>> = (0..cols)
        .map(|v| (0..rows).map(|u| Rational::from_integer(payoff[u][v] + shift)).collect())
        .collect();
    let b = vec![Rational::one(); cols];
    let c = vec![Rational::one(); rows];
    let lp = maximize_packing(&a, &b, &c)
        .map_err(|_| Error::Falsified("game LP reported unbounded".into()))?;

    // lp.value = 1 / shifted value.
    let shifted = lp
        .value
        .recip()
        .ok_or_else(|| Error::Falsified("game LP has zero optimum".into()))?;
    let scale = |x: &Rational| x * &shifted;
    let minimax_strategy = Measure::new(lp.primal.iter().map(scale).collect())?;
    let maximin_strategy = Measure::new(lp.dual.iter().map(scale).collect())?;
    let value = shifted - Rational::from_integer(shift);

    let mp = (0..rows).map(|u| {
        (0..cols)
            .map(|v| maximin_strategy.as_slice()[v].mul_int(payoff[u][v]))
            .sum::<Rational>()
    });
    let guaranteed = mp.min().expect("rows >= 1");
    let mtq = (0..cols).map(|v| {
        (0..rows)
            .map(|u| minimax_strategy.as_slice()[u].mul_int(payoff[u][v]))
            .sum::<Rational>()
    });
    let conceded = mtq.max().expect("cols >= 1");

    let maximin_residue = &guaranteed - &value;
    let minimax_residue = &conceded - &value;
    if !maximin_residue.is_zero() || !minimax_residue.is_zero() {
        return Err(Error::Falsified(format!(
            "game certificate mismatch: min MP = {guaranteed}, max MᵀQ = {conceded}, value = {value}"
        )));
    }
    Ok(GameSolution {
        value,
        maximin_strategy,
        minimax_strategy,
        maximin_residue,
        minimax_residue,
        pivots: lp.pivots,
    })
}

/// Value and optimal strategies of the game with payoff `D`.
pub fn game_value(d: &DistanceMatrix) -> Result<GameSolution> {
    if d.n() == 0 {
        return Err(Error::InvalidParams("n = 0".into()));
    }
    let payoff: Vec<Vec<i64>> = d
        .rows()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    solve_matrix_game(&payoff)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    ValueGreater,
    ValueLess,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GameComparison {
    pub value: Rational,
    pub k: Rational,
    pub equal: bool,
    pub relation: Relation,
    pub nonneg: bool,
}

/// Compares a solved game with a curvature solution for the same `D`.
/// Non-negative `w` with `value ≠ K` is a hard error.
pub fn compare_game(game: &GameSolution, sol: &CurvatureSolution) -> Result<GameComparison> {
    if !sol.is_consistent() {
        return Err(Error::Inconsistent);
    }
    let k = sol.bound_k.clone().ok_or(Error::ZeroNorm)?;
    let relation = match game.value.cmp(&k) {
        std::cmp::Ordering::Equal => Relation::Equal,
        std::cmp::Ordering::Greater => Relation::ValueGreater,
        std::cmp::Ordering::Less => Relation::ValueLess,
    };
    if sol.nonneg && relation != Relation::Equal {
        return Err(Error::Falsified(format!(
            "w is non-negative but game value {} differs from K = {k}",
            game.value
        )));
    }
    Ok(GameComparison {
        value: game.value.clone(),
        k,
        equal: relation == Relation::Equal,
        relation,
        nonneg: sol.nonneg,
    })
}

pub fn game_vs_curvature(d: &DistanceMatrix) -> Result<GameComparison> {
    let sol = solve_curvature(d);
    if !sol.is_consistent() {
        return Err(Error::Inconsistent);
    }
    compare_game(&game_value(d)?, &sol)
}
