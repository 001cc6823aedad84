//! Library side of the `graphcurv` binary: argument types, the pipeline
//! runner and report rendering. Kept out of `main.rs` so the integration
//! tests can drive it in-process.

pub mod args;
pub mod report;

use std::fmt::Write as _;
use std::path::Path;

use graphcurv::{
    apsp, compare_game, eccentricities, game_value, graph::generate_with_info,
    parse_edge_list, row_sums, search_lower_violation, solve_curvature, solve_curvature_float,
    standard_battery, transitive_oracle, validate, verify_minimax, DistanceMatrix, Family, Graph,
};
use thiserror::Error;

pub use args::{Cli, Command, Format, Mode, RunConfig};
use report::*;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] graphcurv::Error),
    #[error("format {format} is not supported by `{command}`")]
    UnsupportedFormat { command: &'static str, format: Format },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 0 ok, 2 input error, 3 disconnected graph, 4 unsolvable system,
    /// 5 a verification check that must hold did not.
    pub fn exit_code(&self) -> i32 {
        use graphcurv::Error as E;
        match self {
            CliError::Input(_) | CliError::UnsupportedFormat { .. } | CliError::Json(_) => 2,
            CliError::Core(e) => match e {
                E::Disconnected { .. } => 3,
                E::Inconsistent | E::ZeroNorm | E::NumericallySingular { .. } => 4,
                E::Falsified(_) => 5,
                _ => 2,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Exit code 4 when the document was written but the system has no solution.
pub const EXIT_INCONSISTENT: i32 = 4;

/// What a successful run writes to stdout, and the code to exit with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub exit_code: i32,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output { text, exit_code: 0 }
    }
}

/// A loaded graph plus where it came from.
pub struct Loaded {
    pub graph: Graph,
    pub source: String,
    pub retries: u32,
}

/// An existing file path is read as an edge list; anything else must be a
/// generator spec such as `path:5` or `gnp:20,1/4`.
pub fn load_input(input: &str, seed: u64) -> CliResult<Loaded> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{input}: {e}")))?;
        let graph = parse_edge_list(&text)?;
        return Ok(Loaded { graph, source: input.to_string(), retries: 0 });
    }
    if !input.contains(':') {
        return Err(CliError::Input(format!("{input}: no such file")));
    }
    let family: Family = input.parse()?;
    let generated = generate_with_info(&family, seed)?;
    Ok(Loaded { graph: generated.graph, source: family.to_string(), retries: generated.retries })
}

fn distances(g: &Graph) -> CliResult<DistanceMatrix> {
    Ok(apsp(g)?)
}

pub fn run(cfg: &RunConfig) -> CliResult<Output> {
    let loaded = load_input(&cfg.input, cfg.seed)?;
    match cfg.command {
        Command::Gen => gen(cfg, &loaded).map(Output::from),
        Command::Dist => dist(cfg, &loaded).map(Output::from),
        Command::Curvature => curvature(cfg, &loaded),
        Command::Verify => verify(cfg, &loaded).map(Output::from),
        Command::Game => game(cfg, &loaded).map(Output::from),
        Command::Report => full_report(cfg, &loaded).map(Output::from),
    }
}

fn json<T: serde::Serialize>(value: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn gen(cfg: &RunConfig, l: &Loaded) -> CliResult<String> {
    match cfg.format {
        Format::Json => json(&GenReport {
            kind: "gen",
            input: l.source.clone(),
            n: l.graph.n(),
            m: l.graph.edge_count(),
            retries: l.retries,
            edges: l.graph.edges().map(|(u, v)| [u, v]).collect(),
        }),
        Format::Csv | Format::Table => Ok(l.graph.to_edge_list()),
    }
}

fn dist(cfg: &RunConfig, l: &Loaded) -> CliResult<String> {
    let d = distances(&l.graph)?;
    Ok(match cfg.format {
        Format::Json => json(&d.to_rows())?,
        Format::Csv => d.rows().map(|r| join(r.iter(), ",") + "\n").collect(),
        Format::Table => {
            let width = d.rows().flatten().max().map_or(1, |m| m.to_string().len());
            d.rows()
                .map(|r| join(r.iter().map(|x| format!("{x:>width$}")), " ") + "\n")
                .collect()
        }
    })
}

fn curvature(cfg: &RunConfig, l: &Loaded) -> CliResult<Output> {
    let d = distances(&l.graph)?;
    if cfg.mode == Mode::Float {
        let f = solve_curvature_float(&d)?;
        let text = match cfg.format {
            Format::Json => json(&FloatCurvatureReport::new(&l.source, &f))?,
            Format::Csv => {
                let mut out = String::from("vertex,w_float\n");
                for (i, x) in f.w.iter().enumerate() {
                    let _ = writeln!(out, "{i},{x:?}");
                }
                out
            }
            Format::Table => {
                let mut out = format!("input      {}\nmode       float\n", l.source);
                let _ = writeln!(out, "residual   {:e}", f.residual_inf);
                let _ = writeln!(out, "cond hint  {:e}", f.condition_hint);
                for (i, x) in f.w.iter().enumerate() {
                    let _ = writeln!(out, "w[{i}] = {x}");
                }
                out
            }
        };
        return Ok(text.into());
    }
    let sol = solve_curvature(&d);
    let rep = CurvatureReport::new(&l.source, &sol, transitive_oracle(&d));
    let text = match cfg.format {
        Format::Json => json(&rep)?,
        Format::Csv => {
            let mut out = String::from("vertex,w_exact,w_float\n");
            for (i, x) in sol.w.iter().flatten().enumerate() {
                let _ = writeln!(out, "{i},{x},{:?}", x.to_f64());
            }
            out
        }
        Format::Table => rep.table(),
    };
    let exit_code = if sol.is_consistent() { 0 } else { EXIT_INCONSISTENT };
    Ok(Output { text, exit_code })
}

fn verify(cfg: &RunConfig, l: &Loaded) -> CliResult<String> {
    let d = distances(&l.graph)?;
    let sol = solve_curvature(&d);
    if !sol.is_consistent() {
        return Err(graphcurv::Error::Inconsistent.into());
    }
    let battery = standard_battery(d.n(), cfg.samples, cfg.seed);
    let verification = verify_minimax(&d, &sol, &battery)?;
    let witness = search_lower_violation(&d, &sol, cfg.samples, cfg.seed)?;
    let rep = VerifyReport {
        kind: "verify",
        input: l.source.clone(),
        n: d.n(),
        seed: cfg.seed,
        samples: cfg.samples,
        verification,
        lower_violation: witness,
    };
    match cfg.format {
        Format::Json => json(&rep),
        Format::Csv => Ok(rep.csv()),
        Format::Table => Ok(rep.table()),
    }
}

fn game(cfg: &RunConfig, l: &Loaded) -> CliResult<String> {
    let d = distances(&l.graph)?;
    let g = game_value(&d)?;
    let sol = solve_curvature(&d);
    let comparison = if sol.is_consistent() { Some(compare_game(&g, &sol)?) } else { None };
    let rep = GameReport { kind: "game", input: l.source.clone(), n: d.n(), game: g, comparison };
    match cfg.format {
        Format::Json => json(&rep),
        Format::Table => Ok(rep.table()),
        Format::Csv => Err(CliError::UnsupportedFormat { command: "game", format: cfg.format }),
    }
}

fn full_report(cfg: &RunConfig, l: &Loaded) -> CliResult<String> {
    let validation = validate(&l.graph);
    let d = distances(&l.graph)?;
    let ecc = eccentricities(&d);
    let sol = solve_curvature(&d);
    if !sol.is_consistent() {
        return Err(graphcurv::Error::Inconsistent.into());
    }
    let curvature = CurvatureReport::new(&l.source, &sol, transitive_oracle(&d));
    let battery = standard_battery(d.n(), cfg.samples, cfg.seed);
    let verification = verify_minimax(&d, &sol, &battery)?;
    let witness = search_lower_violation(&d, &sol, cfg.samples, cfg.seed)?;
    let g = game_value(&d)?;
    let comparison = compare_game(&g, &sol)?;
    let rep = FullReport {
        kind: "report",
        input: l.source.clone(),
        seed: cfg.seed,
        samples: cfg.samples,
        gnp_retries: l.retries,
        validation,
        metric: MetricSummary {
            radius: ecc.radius,
            diameter: ecc.diameter,
            eccentricities: ecc.ecc,
            row_sums: row_sums(&d),
        },
        curvature,
        verification: verification.summary,
        lower_violation: witness,
        game: g,
        comparison,
        all_checks_passed: true,
    };
    match cfg.format {
        Format::Json => json(&rep),
        Format::Table => Ok(rep.table()),
        Format::Csv => Err(CliError::UnsupportedFormat { command: "report", format: cfg.format }),
    }
}

fn join<T: ToString>(items: impl Iterator<Item = T>, sep: &str) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}
