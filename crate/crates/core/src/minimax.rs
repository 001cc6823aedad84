//! Probability measures on the vertex set, the transport bounds
//! `A(P) = min_u (DP)_u` and `B(P) = max_u (DP)_u`, and exact verification
//! of `A(P) ≤ K ≤ B(P)`.
//!
//! Everything here is exact. For any solution `w` of `Dw = n·1` and any
//! probability vector `P`,
//!
//! ```text
//! n = ⟨n·1, P⟩ = ⟨Dw, P⟩ = ⟨w, DP⟩
//! ```
//!
//! and `⟨w, DP⟩` lies in `[A‖w‖₁, B‖w‖₁]` when `w ≥ 0`. Only the upper end
//! survives for signed `w`, because `⟨w, DP⟩ ≤ ⟨|w|, DP⟩ ≤ B‖w‖₁` still
//! holds. [`identity_check`] computes the inner product;
//! [`verify_minimax`] checks the two inequalities on a battery of measures.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curvature::{CurvatureSolution, SolveStatus};
use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;
use crate::rational::{dot, int_dot, Rational};

/// Largest support size used when probing subset-uniform measures.
pub const MAX_SUBSET_SIZE: usize = 12;
/// Cap on the number of subsets the violation search examines.
pub const SUBSET_LIMIT: usize = 4096;
/// Random weights are drawn uniformly from `1..=SAMPLE_WEIGHT_MAX`.
pub const SAMPLE_WEIGHT_MAX: u32 = 1 << 16;

/// A probability vector on `0..n`: non-negative, summing to exactly one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Measure {
    p: Vec<Rational>,
}

impl Measure {
    pub fn new(p: Vec<Rational>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidMeasure("empty vector".into()));
        }
        if let Some(i) = p.iter().position(Rational::is_negative) {
            return Err(Error::InvalidMeasure(format!("negative mass at vertex {i}")));
        }
        let total: Rational = p.iter().sum();
        if total != Rational::one() {
            return Err(Error::InvalidMeasure(format!("total mass {total}, expected 1")));
        }
        Ok(Measure { p })
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.p
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.p.len()).filter(|&i| !self.p[i].is_zero()).collect()
    }
}

/// A measure with a short human-readable descriptor such as `delta:3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedMeasure {
    pub label: String,
    pub measure: Measure,
}

pub fn measure_delta(n: usize, v: usize) -> Result<Measure> {
    if v >= n {
        return Err(Error::IndexOutOfRange { index: v, n });
    }
    let mut p = vec![Rational::zero(); n];
    p[v] = Rational::one();
    Ok(Measure { p })
}

pub fn measure_uniform(n: usize) -> Result<Measure> {
    measure_uniform_on(n, &(0..n).collect::<Vec<_>>())
}

/// Equal mass on each distinct vertex of `subset`.
pub fn measure_uniform_on(n: usize, subset: &[usize]) -> Result<Measure> {
    let mut members = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.is_empty() {
        return Err(Error::InvalidMeasure("empty support".into()));
    }
    if let Some(&v) = members.iter().find(|&&v| v >= n) {
        return Err(Error::IndexOutOfRange { index: v, n });
    }
    let mass = Rational::new(1, members.len() as i64)?;
    let mut p = vec![Rational::zero(); n];
    for v in members {
        p[v] = mass.clone();
    }
    Ok(Measure { p })
}

/// `count` random interior measures. Sample `i` uses ChaCha8 stream `i`
/// under `seed`: `n` weights uniform in `1..=2^16`, normalised exactly.
pub fn sample_measures(n: usize, count: usize, seed: u64) -> Vec<Measure> {
    (0..count)
        .into_par_iter()
        .map(|i| sample_one(n, seed, i as u64))
        .collect()
}

fn sample_one(n: usize, seed: u64, index: u64) -> Measure {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let weights: Vec<i64> = (0..n)
        .map(|_| rng.gen_range(1..=SAMPLE_WEIGHT_MAX) as i64)
        .collect();
    let total: i64 = weights.iter().sum();
    let p = weights
        .into_iter()
        .map(|x| Rational::new(x, total).expect("positive total"))
        .collect();
    Measure { p }
}

/// The fixed verification battery, in order: every delta, the uniform
/// measure, uniform on each vertex complement (`n ≥ 3`), then `samples`
/// seeded random measures.
pub fn standard_battery(n: usize, samples: usize, seed: u64) -> Vec<NamedMeasure> {
    let mut out = Vec::with_capacity(2 * n + 1 + samples);
    for v in 0..n {
        out.push(NamedMeasure {
            label: format!("delta:{v}"),
            measure: measure_delta(n, v).expect("in range"),
        });
    }
    out.push(NamedMeasure { label: "uniform".into(), measure: measure_uniform(n).expect("n >= 1") });
    if n >= 3 {
        for v in 0..n {
            let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
            out.push(NamedMeasure {
                label: format!("uniform-except:{v}"),
                measure: measure_uniform_on(n, &rest).expect("nonempty"),
            });
        }
    }
    for (i, measure) in sample_measures(n, samples, seed).into_iter().enumerate() {
        out.push(NamedMeasure { label: format!("sample:{i}"), measure });
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransportBounds {
    /// `D·P`: expected distance from each vertex to a `P`-random vertex.
    pub dp: Vec<Rational>,
    pub a: Rational,
    pub b: Rational,
    pub argmin: usize,
    pub argmax: usize,
}

pub fn transport_vector(d: &DistanceMatrix, p: &Measure) -> Result<TransportBounds> {
    if p.len() != d.n() {
        return Err(Error::DimensionMismatch { expected: d.n(), got: p.len() });
    }
    let dp: Vec<Rational> = d.rows().map(|row| int_dot(row, p.as_slice())).collect();
    let mut argmin = 0;
    let mut argmax = 0;
    for (i, x) in dp.iter().enumerate() {
        if *x < dp[argmin] {
            argmin = i;
        }
        if *x > dp[argmax] {
            argmax = i;
        }
    }
    Ok(TransportBounds {
        a: dp[argmin].clone(),
        b: dp[argmax].clone(),
        dp,
        argmin,
        argmax,
    })
}

/// `⟨w, D·P⟩`, which equals `n` exactly for any solution `w` of `Dw = n·1`.
pub fn identity_check(w: &[Rational], d: &DistanceMatrix, p: &Measure) -> Result<Rational> {
    if w.len() != d.n() {
        return Err(Error::DimensionMismatch { expected: d.n(), got: w.len() });
    }
    let bounds = transport_vector(d, p)?;
    Ok(dot(w, &bounds.dp))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureRecord {
    pub label: String,
    pub a: Rational,
    pub b: Rational,
    pub k: Rational,
    pub argmin: usize,
    pub argmax: usize,
    /// `⟨w, DP⟩ = n`.
    pub identity_holds: bool,
    pub lower_holds: bool,
    pub upper_holds: bool,
    /// `A = K`.
    pub lower_tight: bool,
    /// `K = B`.
    pub upper_tight: bool,
    /// The measure itself, attached whenever the lower bound fails.
    pub witness: Option<Measure>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationSummary {
    pub measures_checked: usize,
    pub identity_failures: usize,
    pub lower_failures: usize,
    pub upper_failures: usize,
    pub nonneg: bool,
    pub k: Rational,
    pub status: SolveStatus,
    pub warnings: Vec<String>,
    /// Lower-bound failures on signed `w` are expected, not errors.
    pub findings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub records: Vec<MeasureRecord>,
    pub summary: VerificationSummary,
}

/// Checks `A ≤ K ≤ B` and `⟨w, DP⟩ = n` for every measure, exactly.
///
/// Any identity or upper-bound failure, or a lower-bound failure for
/// non-negative `w`, is returned as [`Error::Falsified`]. Lower-bound
/// failures for signed `w` are reported in the summary findings.
pub fn verify_minimax(
    d: &DistanceMatrix,
    sol: &CurvatureSolution,
    measures: &[NamedMeasure],
) -> Result<VerificationReport> {
    let w = sol.w.as_deref().ok_or(Error::Inconsistent)?;
    let k = sol.bound_k.clone().ok_or(Error::ZeroNorm)?;
    if w.len() != d.n() {
        return Err(Error::DimensionMismatch { expected: d.n(), got: w.len() });
    }
    let n = Rational::from_integer(d.n() as i64);

    let records = measures
        .par_iter()
        .map(|nm| {
            let t = transport_vector(d, &nm.measure)?;
            let identity_holds = dot(w, &t.dp) == n;
            let lower_holds = t.a <= k;
            Ok(MeasureRecord {
                label: nm.label.clone(),
                lower_tight: t.a == k,
                upper_tight: t.b == k,
                upper_holds: k <= t.b,
                lower_holds,
                identity_holds,
                witness: (!lower_holds).then(|| nm.measure.clone()),
                k: k.clone(),
                argmin: t.argmin,
                argmax: t.argmax,
                a: t.a,
                b: t.b,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let identity_failures = records.iter().filter(|r| !r.identity_holds).count();
    let lower_failures = records.iter().filter(|r| !r.lower_holds).count();
    let upper_failures = records.iter().filter(|r| !r.upper_holds).count();

    let mut hard = Vec::new();
    if identity_failures > 0 {
        hard.push(format!("{identity_failures} measures break <w, DP> = n"));
    }
    if upper_failures > 0 {
        let first = records.iter().find(|r| !r.upper_holds).expect("counted");
        hard.push(format!(
            "{upper_failures} measures break K <= B (first: {}, B = {}, K = {k})",
            first.label, first.b
        ));
    }
    if lower_failures > 0 && sol.nonneg {
        let first = records.iter().find(|r| !r.lower_holds).expect("counted");
        hard.push(format!(
            "{lower_failures} measures break A <= K for non-negative w (first: {}, A = {}, K = {k})",
            first.label, first.a
        ));
    }
    if !hard.is_empty() {
        return Err(Error::Falsified(hard.join("; ")));
    }

    let findings = records
        .iter()
        .filter(|r| !r.lower_holds)
        .map(|r| format!("{}: A = {} > K = {k} (allowed: w is signed)", r.label, r.a))
        .collect();

    Ok(VerificationReport {
        summary: VerificationSummary {
            measures_checked: records.len(),
            identity_failures,
            lower_failures,
            upper_failures,
            nonneg: sol.nonneg,
            k,
            status: sol.status,
            warnings: sol.warnings(),
            findings,
        },
        records,
    })
}

/// Looks for a measure with `A(P) > K`, which can only exist when `w` has a
/// negative entry.
///
/// Search order: deltas by vertex; then uniform measures on subsets of
/// size `min(n, 12)` down to 2, lexicographic within each size, at most
/// [`SUBSET_LIMIT`] subsets; then `budget` random samples under `seed`.
/// The first witness found is returned.
pub fn search_lower_violation(
    d: &DistanceMatrix,
    sol: &CurvatureSolution,
    budget: usize,
    seed: u64,
) -> Result<Option<NamedMeasure>> {
    if sol.status == SolveStatus::Inconsistent {
        return Err(Error::Inconsistent);
    }
    let k = sol.bound_k.clone().ok_or(Error::ZeroNorm)?;
    let n = d.n();

    let found = search_deltas(d, &k)
        .or_else(|| search_subsets(d, &k))
        .or_else(|| search_samples(d, &k, budget, seed));

    match found {
        Some(witness) if sol.nonneg => Err(Error::Falsified(format!(
            "{} has A > K = {k} although w is non-negative",
            witness.label
        ))),
        Some(witness) => {
            debug_assert_eq!(witness.measure.len(), n);
            Ok(Some(witness))
        }
        None => Ok(None),
    }
}

fn search_deltas(d: &DistanceMatrix, k: &Rational) -> Option<NamedMeasure> {
    // A(delta_v) = d(v, v) = 0, so this phase only fires for K < 0.
    (0..d.n()).find_map(|v| {
        let a = (0..d.n()).map(|u| d.get(u, v)).min()?;
        (Rational::from_integer(a as i64) > *k).then(|| NamedMeasure {
            label: format!("delta:{v}"),
            measure: measure_delta(d.n(), v).expect("in range"),
        })
    })
}

fn search_subsets(d: &DistanceMatrix, k: &Rational) -> Option<NamedMeasure> {
    let n = d.n();
    let max_size = n.min(MAX_SUBSET_SIZE);
    (2..=max_size)
        .rev()
        .flat_map(|size| (0..n).combinations(size))
        .take(SUBSET_LIMIT)
        .find_map(|subset| {
            // A(uniform on S) = min_u Σ_{v∈S} d(u, v) / |S|.
            let min_sum = d
                .rows()
                .map(|row| subset.iter().map(|&v| row[v] as i64).sum::<i64>())
                .min()?;
            let a = Rational::new(min_sum, subset.len() as i64).expect("nonempty");
            (a > *k).then(|| NamedMeasure {
                label: format!("uniform-on:{}", subset.iter().join(",")),
                measure: measure_uniform_on(n, &subset).expect("valid subset"),
            })
        })
}

fn search_samples(d: &DistanceMatrix, k: &Rational, budget: usize, seed: u64) -> Option<NamedMeasure> {
    (0..budget).find_map(|i| {
        let measure = sample_one(d.n(), seed, i as u64);
        let t = transport_vector(d, &measure).expect("dimensions agree");
        (t.a > *k).then(|| NamedMeasure { label: format!("sample:{i}"), measure })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::solve_curvature;
    use crate::graph::{generate, Family};
    use crate::metric::apsp;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn dist(f: Family) -> DistanceMatrix {
        apsp(&generate(&f, 0).unwrap()).unwrap()
    }

    fn named(label: &str, measure: Measure) -> NamedMeasure {
        NamedMeasure { label: label.into(), measure }
    }

    #[test]
    fn measure_constructors() {
        assert_eq!(measure_delta(3, 0).unwrap().as_slice(), &[q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(measure_delta(3, 2).unwrap().as_slice(), &[q(0, 1), q(0, 1), q(1, 1)]);
        assert_eq!(measure_delta(1, 0).unwrap().as_slice(), &[q(1, 1)]);
        assert!(matches!(measure_delta(3, 3), Err(Error::IndexOutOfRange { .. })));

        assert_eq!(measure_uniform(4).unwrap().as_slice(), vec![q(1, 4); 4].as_slice());
        assert_eq!(
            measure_uniform_on(4, &[1, 2, 3]).unwrap().as_slice(),
            &[q(0, 1), q(1, 3), q(1, 3), q(1, 3)]
        );
        assert_eq!(measure_uniform_on(4, &[2]).unwrap(), measure_delta(4, 2).unwrap());
        assert!(measure_uniform_on(4, &[]).is_err());
        assert!(measure_uniform_on(4, &[4]).is_err());
    }

    #[test]
    fn measure_validation() {
        assert!(Measure::new(vec![q(1, 2), q(1, 2)]).is_ok());
        assert!(Measure::new(vec![q(1, 2), q(1, 3)]).is_err());
        assert!(Measure::new(vec![q(3, 2), q(-1, 2)]).is_err());
        assert!(Measure::new(vec![]).is_err());
    }

    #[test]
    fn samples_are_deterministic_and_exact() {
        let a = sample_measures(3, 2, 42);
        assert_eq!(a, sample_measures(3, 2, 42));
        assert_ne!(a, sample_measures(3, 2, 43));
        let floor = q(1, 3 * 65536);
        for m in &a {
            assert_eq!(m.as_slice().iter().sum::<Rational>(), Rational::one());
            assert!(m.as_slice().iter().all(|x| *x >= floor));
        }
        // Sample i does not depend on how many samples were requested.
        assert_eq!(sample_measures(5, 10, 9)[3], sample_measures(5, 4, 9)[3]);
    }

    #[test]
    fn transport_examples() {
        let p3 = dist(Family::Path(3));
        let t = transport_vector(&p3, &measure_delta(3, 0).unwrap()).unwrap();
        assert_eq!(t.dp, vec![q(0, 1), q(1, 1), q(2, 1)]);
        assert_eq!((t.a.clone(), t.b.clone(), t.argmin, t.argmax), (q(0, 1), q(2, 1), 0, 2));

        let t = transport_vector(&p3, &measure_uniform(3).unwrap()).unwrap();
        assert_eq!(t.dp, vec![q(1, 1), q(2, 3), q(1, 1)]);
        assert_eq!((t.a, t.b, t.argmin, t.argmax), (q(2, 3), q(1, 1), 1, 0));

        let s4 = dist(Family::Star(4));
        let t = transport_vector(&s4, &measure_uniform_on(4, &[1, 2, 3]).unwrap()).unwrap();
        assert_eq!(t.dp, vec![q(1, 1), q(4, 3), q(4, 3), q(4, 3)]);
        assert_eq!((t.a, t.b), (q(1, 1), q(4, 3)));

        assert!(matches!(
            transport_vector(&s4, &measure_uniform(3).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn identity_examples() {
        let p3 = dist(Family::Path(3));
        let w = [q(3, 2), q(0, 1), q(3, 2)];
        assert_eq!(identity_check(&w, &p3, &measure_uniform(3).unwrap()).unwrap(), q(3, 1));

        let s4 = dist(Family::Star(4));
        let w = [q(-4, 3), q(4, 3), q(4, 3), q(4, 3)];
        let leaves = measure_uniform_on(4, &[1, 2, 3]).unwrap();
        assert_eq!(identity_check(&w, &s4, &leaves).unwrap(), q(4, 1));

        assert!(identity_check(&w[..3], &s4, &leaves).is_err());
    }

    #[test]
    fn verify_path3_uniform() {
        let d = dist(Family::Path(3));
        let sol = solve_curvature(&d);
        let rep = verify_minimax(&d, &sol, &[named("uniform", measure_uniform(3).unwrap())]).unwrap();
        let r = &rep.records[0];
        assert_eq!((r.a.clone(), r.k.clone(), r.b.clone()), (q(2, 3), q(1, 1), q(1, 1)));
        assert!(r.lower_holds && r.upper_holds && r.upper_tight && !r.lower_tight);
        assert!(r.witness.is_none());
    }

    #[test]
    fn verify_star4_leaf_uniform() {
        let d = dist(Family::Star(4));
        let sol = solve_curvature(&d);
        let leaves = measure_uniform_on(4, &[1, 2, 3]).unwrap();
        let rep = verify_minimax(&d, &sol, &[named("leaves", leaves.clone())]).unwrap();
        let r = &rep.records[0];
        assert_eq!((r.a.clone(), r.k.clone(), r.b.clone()), (q(1, 1), q(3, 4), q(4, 3)));
        assert!(!r.lower_holds && r.upper_holds);
        assert_eq!(r.witness.as_ref(), Some(&leaves));
        assert_eq!(rep.summary.lower_failures, 1);
        assert_eq!(rep.summary.findings.len(), 1);
        assert!(!rep.summary.nonneg);
    }

    #[test]
    fn verify_complete4_is_tight() {
        let d = dist(Family::Complete(4));
        let sol = solve_curvature(&d);
        let rep = verify_minimax(&d, &sol, &[named("uniform", measure_uniform(4).unwrap())]).unwrap();
        let r = &rep.records[0];
        assert_eq!((r.a.clone(), r.b.clone(), r.k.clone()), (q(3, 4), q(3, 4), q(3, 4)));
        assert!(r.lower_tight && r.upper_tight);
    }

    #[test]
    fn corrupted_solution_is_a_hard_error() {
        let d = dist(Family::Path(3));
        let mut sol = solve_curvature(&d);
        // Pretend K is far too large: upper bound must then fail.
        sol.bound_k = Some(q(10, 1));
        let err = verify_minimax(&d, &sol, &standard_battery(3, 5, 1)).unwrap_err();
        assert!(matches!(err, Error::Falsified(_)));
        // Pretend K is too small for a non-negative w: lower bound fails.
        sol.bound_k = Some(q(1, 10));
        assert!(matches!(
            verify_minimax(&d, &sol, &standard_battery(3, 5, 1)),
            Err(Error::Falsified(_))
        ));
    }

    #[test]
    fn verify_refuses_inconsistent() {
        let d = dist(Family::Complete(1));
        let sol = solve_curvature(&d);
        assert_eq!(verify_minimax(&d, &sol, &[]), Err(Error::Inconsistent));
        assert_eq!(search_lower_violation(&d, &sol, 1, 0), Err(Error::Inconsistent));
    }

    #[test]
    fn battery_composition() {
        let b = standard_battery(4, 3, 0);
        let labels: Vec<&str> = b.iter().map(|m| m.label.as_str()).collect();
        assert_eq!(labels.len(), 4 + 1 + 4 + 3);
        assert_eq!(labels[0], "delta:0");
        assert_eq!(labels[4], "uniform");
        assert_eq!(labels[5], "uniform-except:0");
        assert_eq!(labels[11], "sample:2");
        assert_eq!(standard_battery(2, 0, 0).len(), 3);
    }

    #[test]
    fn search_examples() {
        let d = dist(Family::Star(4));
        let sol = solve_curvature(&d);
        let w = search_lower_violation(&d, &sol, 10, 0).unwrap().unwrap();
        assert_eq!(w.measure, measure_uniform_on(4, &[1, 2, 3]).unwrap());
        assert_eq!(w.label, "uniform-on:1,2,3");

        let d = dist(Family::Path(3));
        assert_eq!(search_lower_violation(&d, &solve_curvature(&d), 50, 0).unwrap(), None);

        for n in 2..=8 {
            let d = dist(Family::Complete(n));
            assert_eq!(search_lower_violation(&d, &solve_curvature(&d), 50, 0).unwrap(), None);
        }
    }

    #[test]
    fn search_with_forged_nonneg_flag_is_a_hard_error() {
        let d = dist(Family::Star(5));
        let mut sol = solve_curvature(&d);
        sol.nonneg = true;
        assert!(matches!(search_lower_violation(&d, &sol, 0, 0), Err(Error::Falsified(_))));
    }
}
