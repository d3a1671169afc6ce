use std::fmt;

use anyhow::Context;
use fracwave::analysis::{
    classify_region, default_times, find_nodes, sample_profile, track_peaks, AnalysisError, PeakTrack, RegionClass,
    DEFAULT_PEAK_X0,
};
use fracwave::solutions::{
    u_delta, Branch, DeltaSolver, FracParams, GaussianIC, GaussianSolver, Method, SolutionError, SolutionValue,
    Vertex, DEFAULT_K_MAX,
};
use fracwave::validation::{run_identities, ValidationReport};
use serde::{Deserialize, Serialize};

use crate::{Command, Grid, Model, Suite};

/// Bad input rather than a numerical failure; exits with status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Both renderings of a command's result. `ok` is false when the command
/// ran but reports a failed check.
pub struct Emitted {
    pub csv: Vec<u8>,
    pub json: String,
    pub ok: bool,
}

/// One sample in the `t,x,u,branch` schema.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub t: f64,
    pub x: f64,
    pub u: f64,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub alpha: f64,
    pub beta: f64,
    pub v: f64,
    pub mu: f64,
    pub x0: Option<f64>,
    pub x: f64,
    pub t: f64,
    /// Pointwise value, or the weight of each impulse when distributional.
    pub u: f64,
    pub branch: Branch,
    pub method: Method,
    pub distributional: bool,
    pub impulses: Option<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub alpha: f64,
    pub beta: f64,
    pub region: RegionClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeSet {
    pub t: f64,
    pub nodes: Vec<f64>,
}

#[derive(Serialize)]
struct PeakRow {
    t: f64,
    x_max: f64,
}

#[derive(Serialize)]
struct NodeRow {
    t: f64,
    x: f64,
}

#[derive(Serialize)]
struct EntryRow<'a> {
    name: &'a str,
    max_error: f64,
    tolerance: f64,
    passed: bool,
}

fn config_solution(e: &SolutionError) -> bool {
    matches!(
        e,
        SolutionError::InvalidParams(_) | SolutionError::NonPositiveTime { .. } | SolutionError::NonFiniteX { .. }
    )
}

/// Input errors become [`ConfigError`], everything else stays numerical.
fn classify(e: AnalysisError) -> anyhow::Error {
    match &e {
        AnalysisError::InvalidGrid(_) | AnalysisError::OutsideSquare { .. } | AnalysisError::TooFewPoints(_) => {
            ConfigError(e.to_string()).into()
        }
        AnalysisError::Solution(s) if config_solution(s) => ConfigError(e.to_string()).into(),
        _ => e.into(),
    }
}

fn classify_solution(e: SolutionError) -> anyhow::Error {
    if config_solution(&e) {
        ConfigError(e.to_string()).into()
    } else {
        e.into()
    }
}

fn params(m: &Model) -> Result<FracParams, ConfigError> {
    FracParams::new(m.alpha, m.beta, m.v, m.mu).map_err(|e| ConfigError(e.to_string()))
}

fn gaussian(x0: Option<f64>) -> Result<Option<GaussianIC>, ConfigError> {
    x0.map(|w| GaussianIC::new(w).map_err(|e| ConfigError(e.to_string()))).transpose()
}

fn csv_bytes<T: Serialize>(rows: impl IntoIterator<Item = T>) -> anyhow::Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(w.into_inner().context("flushing CSV")?)
}

fn json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn evaluate(p: &FracParams, ic: Option<&GaussianIC>, x: f64, t: f64) -> Result<SolutionValue, SolutionError> {
    match ic {
        None => u_delta(p, x, t),
        Some(ic) => GaussianSolver::new(*p, *ic).eval(x, t, DEFAULT_K_MAX),
    }
}

/// The wave vertex with a Dirac pulse is two impulses; rendered as
/// markers at ±vt carrying their weights.
fn impulse_rows(p: &FracParams, t: f64) -> [Row; 2] {
    let d = p.v() * t;
    let w = 0.5 * p.mu();
    [-d, d].map(|x| Row {
        t,
        x,
        u: w,
        branch: Branch::VertexB,
    })
}

fn is_pulse_pair(p: &FracParams, ic: Option<&GaussianIC>) -> bool {
    ic.is_none() && p.vertex() == Some(Vertex::B)
}

fn eval(model: &Model, x: f64, t: f64) -> anyhow::Result<Emitted> {
    let p = params(model)?;
    let ic = gaussian(model.x0)?;
    let v = evaluate(&p, ic.as_ref(), x, t).map_err(classify_solution)?;
    let record = EvalRecord {
        alpha: p.alpha(),
        beta: p.beta(),
        v: p.v(),
        mu: p.mu(),
        x0: model.x0,
        x,
        t,
        u: v.value,
        branch: v.branch,
        method: v.method,
        distributional: v.distributional,
        impulses: v.impulses,
    };
    let csv = if v.distributional {
        csv_bytes(impulse_rows(&p, t))?
    } else {
        csv_bytes([Row {
            t,
            x,
            u: v.value,
            branch: v.branch,
        }])?
    };
    Ok(Emitted {
        csv,
        json: json(&record)?,
        ok: true,
    })
}

fn profile(model: &Model, times: &[f64], grid: &Grid) -> anyhow::Result<Emitted> {
    let p = params(model)?;
    let ic = gaussian(model.x0)?;
    let mut rows = Vec::new();
    for &t in times {
        if is_pulse_pair(&p, ic.as_ref()) {
            if !(t > 0.0 && t.is_finite()) {
                return Err(ConfigError(format!("time must be positive and finite, got t = {t}")).into());
            }
            rows.extend(impulse_rows(&p, t));
            continue;
        }
        let prof = sample_profile(&p, t, grid.x_lo, grid.x_hi, grid.n, ic.as_ref()).map_err(classify)?;
        let branch = prof.branch().expect("sampled profile has a branch");
        rows.extend(prof.xs().iter().zip(prof.us()).map(|(&x, &u)| Row { t, x, u, branch }));
    }
    Ok(Emitted {
        csv: csv_bytes(&rows)?,
        json: json(&rows)?,
        ok: true,
    })
}

fn peaks(model: &Model, delta: bool, times: Option<&[f64]>, x_hi: f64, n: usize) -> anyhow::Result<Emitted> {
    let p = params(model)?;
    let ic = if delta {
        None
    } else {
        gaussian(Some(model.x0.unwrap_or(DEFAULT_PEAK_X0)))?
    };
    let times = times.map_or_else(default_times, <[f64]>::to_vec);
    let track: PeakTrack = track_peaks(&p, ic.as_ref(), &times, x_hi, n).map_err(classify)?;
    let mut csv = csv_bytes(track.times.iter().zip(&track.x_max).map(|(&t, &x_max)| PeakRow { t, x_max }))?;
    csv.extend_from_slice(serde_json::to_string(&track.fit)?.as_bytes());
    csv.push(b'\n');
    Ok(Emitted {
        csv,
        json: json(&track)?,
        ok: true,
    })
}

fn nodes(model: &Model, times: &[f64], grid: &Grid) -> anyhow::Result<Emitted> {
    let p = params(model)?;
    if is_pulse_pair(&p, None) && model.x0.is_none() {
        return Err(AnalysisError::Distributional.into());
    }
    let ic = gaussian(model.x0)?;
    let mut sets = Vec::new();
    for &t in times {
        let prof = sample_profile(&p, t, grid.x_lo, grid.x_hi, grid.n, ic.as_ref()).map_err(classify)?;
        let found = match &ic {
            None => {
                let solver = DeltaSolver::new(p);
                find_nodes(&prof, |x| Ok(solver.eval(x, t)?.value))
            }
            Some(ic) => {
                let solver = GaussianSolver::new(p, *ic);
                find_nodes(&prof, |x| Ok(solver.eval(x, t, DEFAULT_K_MAX)?.value))
            }
        }
        .map_err(classify)?;
        sets.push(NodeSet { t, nodes: found });
    }
    let rows = sets
        .iter()
        .flat_map(|s| s.nodes.iter().map(move |&x| NodeRow { t: s.t, x }));
    Ok(Emitted {
        csv: csv_bytes(rows)?,
        json: json(&sets)?,
        ok: true,
    })
}

fn region(alpha: f64, beta: f64) -> anyhow::Result<Emitted> {
    let region = classify_region(alpha, beta).map_err(classify)?;
    let record = RegionRecord { alpha, beta, region };
    Ok(Emitted {
        csv: csv_bytes([record])?,
        json: json(&record)?,
        ok: true,
    })
}

fn validate(suite: Suite, only: &[String]) -> anyhow::Result<Emitted> {
    let report: ValidationReport = match suite {
        Suite::Identities => run_identities(&only.iter().map(String::as_str).collect::<Vec<_>>()),
    };
    let rows = report.entries.iter().map(|e| EntryRow {
        name: &e.name,
        max_error: e.max_error,
        tolerance: e.tolerance,
        passed: e.passed,
    });
    Ok(Emitted {
        csv: csv_bytes(rows)?,
        json: json(&report)?,
        ok: report.passed(),
    })
}

pub fn run(cmd: &Command) -> anyhow::Result<Emitted> {
    match cmd {
        Command::Eval { model, x, t, .. } => eval(model, *x, *t),
        Command::Profile { model, t, grid, .. } => profile(model, t, grid),
        Command::Peaks {
            model,
            delta,
            times,
            x_hi,
            n,
            ..
        } => peaks(model, *delta, times.as_deref(), *x_hi, *n),
        Command::Nodes { model, t, grid, .. } => nodes(model, t, grid),
        Command::Region { alpha, beta, .. } => region(*alpha, *beta),
        Command::Validate { suite, only, .. } => validate(*suite, only),
    }
}
