#![allow(dead_code)]

use fracwave::fox_h::{FoxHError, series_neg_sum, series_pos_sum, validate, DeltaSign, HParams, MellinBarnesPlan};
use fracwave::solutions::hforms::*;
use fracwave::quadrature::integrate;
use fracwave::solutions::{u_delta, DeltaSolver, FracParams, Method, Vertex, LOSS_LIMIT};

pub mod alpha_two;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

/// `n` reproducible draws from U(lo, hi).
pub fn draws(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut runner = TestRunner::deterministic();
    (0..n).map(|_| (lo..hi).new_tree(&mut runner).unwrap().current()).collect()
}

/// How the residue series is obtained for a parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesRoute {
    /// The generic left or right residue sum.
    Residues,
    /// The delta solution's own two-family sum (α < β), read back as
    /// H = β·u at t = v = μ = 1.
    SolverSum { alpha: f64, beta: f64 },
}

/// Every H-function parameter family the solutions evaluate, instantiated
/// at representative (α, β) points, in the reduced form the solver uses.
/// Points with short-denominator β put coincident poles inside the check
/// horizon; the irrational-looking ones do not.
pub fn solution_h_sets() -> Vec<(String, HParams, SeriesRoute)> {
    let mut out = Vec::new();
    let generic = [(1.3, 3f64.sqrt()), (1.4, 0.5 + 5f64.sqrt() / 2.0)];
    for (a, b) in [(1.8, 1.2), (1.5, 1.3), (1.6, 1.4), (1.9, 1.05)] {
        out.push((format!("delta({a},{b})"), delta_params(a, b).reduced(), SeriesRoute::Residues));
    }
    for (a, b) in [(1.3, 1.7), (1.4, 1.6), (1.1, 1.95), (1.2, 1.9)] {
        let route = SeriesRoute::SolverSum { alpha: a, beta: b };
        out.push((format!("delta({a},{b})"), delta_params(a, b).reduced(), route));
    }
    for (a, b) in generic {
        out.push((format!("delta({a},{b:.4})"), delta_params(a, b).reduced(), SeriesRoute::Residues));
    }
    for a in [1.3, 1.5, 1.9] {
        out.push((format!("segment I({a})"), segment_i_params(a), SeriesRoute::Residues));
    }
    for b in [1.2, 1.5, 1.7] {
        out.push((format!("segment II({b})"), segment_ii_params(b).reduced(), SeriesRoute::Residues));
    }
    for a in [1.3, 1.5, 1.7] {
        out.push((format!("segment III({a})"), segment_iii_params(a).reduced(), SeriesRoute::Residues));
    }
    for b in [1.3, 1.5, 1.7] {
        out.push((format!("segment IV({b})"), segment_iv_params(b).reduced(), SeriesRoute::Residues));
    }
    out.push(("vertex A".into(), vertex_params(Vertex::A), SeriesRoute::Residues));
    out.push(("vertex C".into(), vertex_params(Vertex::C).reduced(), SeriesRoute::Residues));
    for (a, b) in [(1.5, 1.3), (1.3, 1.7), generic[0]] {
        for k in 1..=3 {
            let p = gaussian_theta_params(a, b, k).reduced();
            out.push((format!("theta{k}({a},{b:.4})"), p, SeriesRoute::Residues));
        }
    }
    out
}

/// Outcome of one series-vs-quadrature comparison.
#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Agree,
    /// No comparison possible, and the library said so: an error, or a
    /// cancellation loss above the solver's limit.
    Flagged(String),
    /// Both sides returned values that differ, with nothing flagged.
    Miss(String),
}

pub struct SetSurvey {
    pub name: String,
    /// Poles of one family coincide within the check horizon.
    pub coincident: bool,
    pub verdicts: Vec<(f64, Verdict)>,
}

impl SetSurvey {
    pub fn count(&self, pick: fn(&Verdict) -> bool) -> usize {
        self.verdicts.iter().filter(|(_, v)| pick(v)).count()
    }
}

pub const SERIES_RTOL: f64 = 1e-6;

fn series_value(p: &HParams, route: SeriesRoute, z: f64) -> Result<(f64, f64), String> {
    match route {
        SeriesRoute::Residues => {
            let sum = match validate(p).map_err(|e| e.to_string())?.class {
                DeltaSign::PositiveDelta => series_pos_sum(p, z),
                DeltaSign::NegativeDelta => series_neg_sum(p, z),
                DeltaSign::ZeroDelta => unreachable!("zero-delta sets have no residue series"),
            }
            .map_err(|e| e.to_string())?;
            Ok((sum.value, sum.loss()))
        }
        SeriesRoute::SolverSum { alpha, beta } => {
            let fp = FracParams::new(alpha, beta, 1.0, 1.0).unwrap();
            let u = u_delta(&fp, z, 1.0).map_err(|e| e.to_string())?;
            if u.method != Method::Series {
                return Err(format!("solver left the series ({:?})", u.method));
            }
            Ok((beta * u.value, 1.0))
        }
    }
}

pub fn compare(p: &HParams, route: SeriesRoute, plan: &MellinBarnesPlan, z: f64) -> Verdict {
    let q = match plan.value(z) {
        Ok(q) => q,
        Err(e) => return Verdict::Flagged(format!("quadrature: {e}")),
    };
    match series_value(p, route, z) {
        Err(e) => Verdict::Flagged(format!("series: {e}")),
        Ok((s, _)) if (s - q).abs() <= SERIES_RTOL * q.abs() => Verdict::Agree,
        Ok((_, loss)) if loss > LOSS_LIMIT => Verdict::Flagged(format!("series loss {loss:.1e}")),
        Ok((s, loss)) => Verdict::Miss(format!("series {s}, quadrature {q}, loss {loss:.1e}")),
    }
}

/// The 20 shared arguments for every set.
pub fn oracle_arguments() -> Vec<f64> {
    draws(0.1, 5.0, 20)
}

pub fn oracle_survey() -> Vec<SetSurvey> {
    let zs = oracle_arguments();
    solution_h_sets()
        .into_iter()
        .map(|(name, p, route)| {
            let plan = MellinBarnesPlan::new(&p).unwrap_or_else(|e| panic!("{name}: {e}"));
            let verdicts = zs.iter().map(|&z| (z, compare(&p, route, &plan, z))).collect();
            let coincident = matches!(validate(&p), Err(FoxHError::CoincidentPoles { .. }));
            SetSurvey { name, coincident, verdicts }
        })
        .collect()
}

/// Δ = 0 families, checked against closed forms instead of a residue series.
pub fn zero_delta_sets() -> Vec<(String, HParams)> {
    let mut out: Vec<(String, HParams)> = [1.2, 1.5, 1.8]
        .iter()
        .map(|&b| (format!("segment V({b})"), segment_v_params(b).reduced()))
        .collect();
    out.push(("vertex D".into(), vertex_params(Vertex::D)));
    out
}

/// ∫_ℝ u(x, t) dx, split at X with the outer part mapped onto (0, 1].
pub fn mass(solver: &DeltaSolver, t: f64, x_split: f64) -> Result<f64, String> {
    let err = std::cell::RefCell::new(None);
    let u = |x: f64| {
        solver.eval(x, t).map(|v| v.value).unwrap_or_else(|e| {
            err.borrow_mut().get_or_insert(format!("u({x}, {t}): {e}"));
            0.0
        })
    };
    let inner = integrate(u, 0.0, x_split, 1e-10, 1e-9, 4000);
    let outer = integrate(|s: f64| u(x_split / s) * x_split / (s * s), 0.0, 1.0, 1e-10, 1e-9, 4000);
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    if !(inner.converged && outer.converged) {
        return Err(format!("mass quadrature did not converge at t = {t}"));
    }
    Ok(2.0 * (inner.value + outer.value))
}

/// Prints one acceptance line and reports whether it passed.
pub fn report(n: usize, name: &str, outcome: Result<String, String>) -> bool {
    match outcome {
        Ok(detail) => {
            println!("criterion {n:>2} PASS  {name}: {detail}");
            true
        }
        Err(detail) => {
            println!("criterion {n:>2} FAIL  {name}: {detail}");
            false
        }
    }
}
