//! Serializable report documents. Field order here is output order, and the
//! JSON shapes are described by `schema/report.schema.json`.

use std::fmt::Write as _;

use graphcurv::curvature::{CurvatureSolution, FloatSolution, Selection, SolveStatus};
use graphcurv::minimax::{NamedMeasure, VerificationReport, VerificationSummary};
use graphcurv::{GameComparison, GameSolution, Rational, ValidationReport};
use serde::Serialize;

#[derive(Serialize)]
pub struct GenReport {
    pub kind: &'static str,
    pub input: String,
    pub n: usize,
    pub m: usize,
    pub retries: u32,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Serialize)]
pub struct CurvatureReport {
    pub kind: &'static str,
    pub input: String,
    pub mode: &'static str,
    pub n: usize,
    pub status: SolveStatus,
    pub selection: Option<Selection>,
    pub w: Option<Vec<Rational>>,
    pub l1_norm: Option<Rational>,
    pub bound_k: Option<Rational>,
    pub min_entry: Option<Rational>,
    pub nonneg: bool,
    /// `S/n` when every row of `D` sums to `S`.
    pub transitive_k: Option<Rational>,
    pub warnings: Vec<String>,
}

impl CurvatureReport {
    pub fn new(input: &str, sol: &CurvatureSolution, transitive_k: Option<Rational>) -> Self {
        CurvatureReport {
            kind: "curvature",
            input: input.to_string(),
            mode: "exact",
            n: sol.n,
            status: sol.status,
            selection: sol.selection,
            w: sol.w.clone(),
            l1_norm: sol.l1_norm.clone(),
            bound_k: sol.bound_k.clone(),
            min_entry: sol.min_entry.clone(),
            nonneg: sol.nonneg,
            transitive_k,
            warnings: sol.warnings(),
        }
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let opt = |x: &Option<Rational>| x.as_ref().map_or("-".to_string(), ToString::to_string);
        let _ = writeln!(out, "input      {}", self.input);
        let _ = writeln!(out, "n          {}", self.n);
        let _ = writeln!(out, "status     {}", status_text(&self.status));
        let _ = writeln!(out, "l1 norm    {}", opt(&self.l1_norm));
        let _ = writeln!(out, "K          {}", opt(&self.bound_k));
        let _ = writeln!(out, "min w      {}", opt(&self.min_entry));
        let _ = writeln!(out, "nonneg     {}", self.nonneg);
        if let Some(w) = &self.w {
            for (i, x) in w.iter().enumerate() {
                let _ = writeln!(out, "w[{i}] = {x}  ({})", x.to_f64());
            }
        }
        for warning in &self.warnings {
            let _ = writeln!(out, "warning: {warning}");
        }
        out
    }
}

fn status_text(s: &SolveStatus) -> String {
    match s {
        SolveStatus::Unique => "unique".into(),
        SolveStatus::Underdetermined { nullity } => format!("underdetermined (nullity {nullity})"),
        SolveStatus::Inconsistent => "inconsistent".into(),
    }
}

#[derive(Serialize)]
pub struct FloatCurvatureReport {
    pub kind: &'static str,
    pub input: String,
    pub mode: &'static str,
    pub n: usize,
    pub w: Vec<f64>,
    pub residual_inf: f64,
    pub condition_hint: f64,
    pub warnings: Vec<String>,
}

impl FloatCurvatureReport {
    pub fn new(input: &str, f: &FloatSolution) -> Self {
        FloatCurvatureReport {
            kind: "curvature",
            input: input.to_string(),
            mode: "float",
            n: f.w.len(),
            w: f.w.clone(),
            residual_inf: f.residual_inf,
            condition_hint: f.condition_hint,
            warnings: vec!["floating-point solve: rank and sign are not certified".into()],
        }
    }
}

#[derive(Serialize)]
pub struct VerifyReport {
    pub kind: &'static str,
    pub input: String,
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub verification: VerificationReport,
    pub lower_violation: Option<NamedMeasure>,
}

impl VerifyReport {
    /// One row per measure, columns as in the header line.
    pub fn csv(&self) -> String {
        let mut out = String::from(
            "label,a_exact,a_float,k_exact,k_float,b_exact,b_float,argmin,argmax,\
             identity_holds,lower_holds,upper_holds,lower_tight,upper_tight\n",
        );
        for r in &self.verification.records {
            let _ = writeln!(
                out,
                "{},{},{:?},{},{:?},{},{:?},{},{},{},{},{},{},{}",
                r.label,
                r.a,
                r.a.to_f64(),
                r.k,
                r.k.to_f64(),
                r.b,
                r.b.to_f64(),
                r.argmin,
                r.argmax,
                r.identity_holds,
                r.lower_holds,
                r.upper_holds,
                r.lower_tight,
                r.upper_tight
            );
        }
        out
    }

    pub fn table(&self) -> String {
        let mut out = summary_table(&self.input, &self.verification.summary);
        let _ = writeln!(out, "{:<24} {:>14} {:>14} {:>14}  lower upper", "measure", "A", "K", "B");
        for r in &self.verification.records {
            let _ = writeln!(
                out,
                "{:<24} {:>14} {:>14} {:>14}  {:<5} {:<5}",
                r.label,
                r.a.to_string(),
                r.k.to_string(),
                r.b.to_string(),
                r.lower_holds,
                r.upper_holds
            );
        }
        if let Some(w) = &self.lower_violation {
            let _ = writeln!(out, "lower-bound witness: {}", w.label);
        }
        out
    }
}

fn summary_table(input: &str, s: &VerificationSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input            {input}");
    let _ = writeln!(out, "K                {}", s.k);
    let _ = writeln!(out, "nonneg w         {}", s.nonneg);
    let _ = writeln!(out, "measures         {}", s.measures_checked);
    let _ = writeln!(out, "lower failures   {}", s.lower_failures);
    let _ = writeln!(out, "upper failures   {}", s.upper_failures);
    for w in &s.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

#[derive(Serialize)]
pub struct GameReport {
    pub kind: &'static str,
    pub input: String,
    pub n: usize,
    pub game: GameSolution,
    pub comparison: Option<GameComparison>,
}

impl GameReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "input      {}", self.input);
        let _ = writeln!(out, "value      {}  ({})", self.game.value, self.game.value.to_f64());
        let strat = |m: &graphcurv::Measure| {
            m.as_slice().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        };
        let _ = writeln!(out, "maximin    {}", strat(&self.game.maximin_strategy));
        let _ = writeln!(out, "minimax    {}", strat(&self.game.minimax_strategy));
        if let Some(c) = &self.comparison {
            let _ = writeln!(out, "K          {}", c.k);
            let _ = writeln!(out, "value = K  {}", c.equal);
        }
        out
    }
}

#[derive(Serialize)]
pub struct MetricSummary {
    pub radius: u32,
    pub diameter: u32,
    pub eccentricities: Vec<u32>,
    pub row_sums: Vec<u64>,
}

#[derive(Serialize)]
pub struct FullReport {
    pub kind: &'static str,
    pub input: String,
    pub seed: u64,
    pub samples: usize,
    pub gnp_retries: u32,
    pub validation: ValidationReport,
    pub metric: MetricSummary,
    pub curvature: CurvatureReport,
    pub verification: VerificationSummary,
    pub lower_violation: Option<NamedMeasure>,
    pub game: GameSolution,
    pub comparison: GameComparison,
    pub all_checks_passed: bool,
}

impl FullReport {
    pub fn table(&self) -> String {
        let mut out = format!(
            "n = {}, m = {}, radius = {}, diameter = {}\n",
            self.validation.n, self.validation.m, self.metric.radius, self.metric.diameter
        );
        out.push_str(&self.curvature.table());
        out.push_str(&summary_table(&self.input, &self.verification));
        if let Some(w) = &self.lower_violation {
            let _ = writeln!(out, "lower-bound witness: {}", w.label);
        }
        let _ = writeln!(out, "game value       {}", self.game.value);
        let _ = writeln!(out, "value = K        {}", self.comparison.equal);
        let _ = writeln!(out, "all checks       {}", if self.all_checks_passed { "pass" } else { "FAIL" });
        out
    }
}
