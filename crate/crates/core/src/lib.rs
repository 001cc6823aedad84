//! Curvature of finite graphs from the distance matrix.
//!
//! Given a connected graph with distance matrix `D`, a curvature vector is
//! any `w` with `Dw = n·1`, and `K = n / ‖w‖₁`. For every probability
//! measure `P` on the vertices, `A(P) ≤ K ≤ B(P)` where `A` and `B` are the
//! smallest and largest entries of `DP`; the upper bound holds for any `w`,
//! the lower one needs `w ≥ 0`.
//!
//! The crate computes all of this exactly:
//!
//! - [`graph`]: graphs, edge-list I/O, generators, validation
//! - [`metric`]: BFS all-pairs distances
//! - [`rational`]: the exact scalar type
//! - [`curvature`]: exact and floating solvers for `Dw = n·1`
//! - [`minimax`]: measures, transport bounds and the sandwich check
//! - [`game`]: exact zero-sum game value of `D`

pub mod curvature;
pub mod error;
pub mod game;
pub mod graph;
pub mod metric;
pub mod minimax;
pub mod rational;
mod simplex;

pub use curvature::{
    curvature_bound, solve_curvature, solve_curvature_float, transitive_oracle,
    CurvatureSolution, FloatSolution, Selection, SolveStatus,
};
pub use error::{Error, Result};
pub use game::{compare_game, game_value, game_vs_curvature, GameComparison, GameSolution};
pub use graph::{generate, parse_edge_list, validate, Family, Graph, ValidationReport};
pub use metric::{apsp, eccentricities, row_sums, DistanceMatrix};
pub use minimax::{
    identity_check, measure_delta, measure_uniform, measure_uniform_on, sample_measures,
    search_lower_violation, standard_battery, transport_vector, verify_minimax, Measure,
    NamedMeasure, TransportBounds, VerificationReport,
};
pub use rational::Rational;
