//! Solutions for the Gaussian initial disturbance μ e^{−(x/x0)²} / (x0 √π).
//!
//! The H-function series in powers of x0²/(4T²) is tried first. It is only
//! asymptotic away from the heat vertex, so when its terms stop shrinking the
//! value is taken from the convolution of the disturbance with the delta
//! solution instead.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hforms::gaussian_theta_params;
use super::{check_t, check_x, Branch, DeltaSolver, FracParams, HEvaluator, Method, SolutionError, SolutionValue, Vertex};
use crate::quadrature::gauss_legendre;
use crate::special_functions::ln_abs_gamma;
use crate::summation::CompensatedSum;

pub const DEFAULT_K_MAX: usize = 64;
/// A series term below this fraction of the partial sum ends the series.
const STOP_REL: f64 = 1e-12;
/// The disturbance is negligible (e^{−49}) beyond this many widths.
const REACH: f64 = 7.0;
const PANEL_NODES: usize = 16;
/// Levels of geometric grading inside the first convolution panel.
const GRADING: i32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianIC {
    x0: f64,
}

impl GaussianIC {
    pub fn new(x0: f64) -> Result<Self, SolutionError> {
        if x0 > 0.0 && x0.is_finite() {
            Ok(Self { x0 })
        } else {
            Err(SolutionError::InvalidParams(format!("Gaussian width x0 = {x0} must be positive")))
        }
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// The initial profile μ e^{−(x/x0)²} / (x0 √π).
    pub fn density(&self, mu: f64, x: f64) -> f64 {
        let r = x / self.x0;
        mu * (-r * r).exp() / (self.x0 * PI.sqrt())
    }
}

/// Delta solution tabulated on Gauss–Legendre panels over u ≥ 0 at one time.
struct Table {
    edges: Vec<f64>,
    /// PANEL_NODES (node, weight·G) pairs per panel.
    samples: Vec<(f64, f64)>,
}

/// Evaluator for one (parameters, disturbance) pair. Term evaluators and
/// convolution tables are cached internally; cached entries depend only on
/// their keys, so results do not depend on call order or threading.
pub struct GaussianSolver {
    p: FracParams,
    ic: GaussianIC,
    delta: DeltaSolver,
    thetas: Mutex<Vec<Arc<HEvaluator>>>,
    tables: Mutex<HashMap<u64, Arc<Table>>>,
    rule: (Vec<f64>, Vec<f64>),
}

impl GaussianSolver {
    pub fn new(p: FracParams, ic: GaussianIC) -> Self {
        Self {
            p,
            ic,
            delta: DeltaSolver::new(p),
            thetas: Mutex::new(Vec::new()),
            tables: Mutex::new(HashMap::new()),
            rule: gauss_legendre(PANEL_NODES),
        }
    }

    pub fn params(&self) -> &FracParams {
        &self.p
    }

    pub fn ic(&self) -> &GaussianIC {
        &self.ic
    }

    pub fn eval(&self, x: f64, t: f64, k_max: usize) -> Result<SolutionValue, SolutionError> {
        check_x(x)?;
        check_t(t)?;
        if k_max == 0 {
            return Err(SolutionError::InvalidParams("k_max must be at least 1".into()));
        }
        let ax = x.abs();
        let (mu, x0, k) = (self.p.mu(), self.ic.x0, self.p.v2());
        match self.p.vertex() {
            Some(Vertex::A) => {
                let w2 = x0 * x0 + 4.0 * k * t;
                let v = mu / (PI * w2).sqrt() * (-ax * ax / w2).exp();
                return Ok(SolutionValue::new(v, Branch::VertexA, Method::ClosedForm));
            }
            Some(Vertex::B) => {
                let d = self.p.v() * t;
                let v = 0.5 * (self.ic.density(mu, ax - d) + self.ic.density(mu, ax + d));
                return Ok(SolutionValue::new(v, Branch::VertexB, Method::ClosedForm));
            }
            _ => {}
        }
        let (outcome, terms) = self.series(ax, t, k_max);
        match outcome {
            SeriesOutcome::Converged(v) => {
                let mut out = SolutionValue::new(v, Branch::GaussianSeries, Method::Series);
                out.series_terms = terms;
                Ok(out)
            }
            SeriesOutcome::Stopped => {
                let mut out = SolutionValue::new(self.convolution(ax, t)?, Branch::GaussianSeries, Method::Convolution);
                out.series_terms = terms;
                out.truncated = true;
                Ok(out)
            }
            SeriesOutcome::Failed(k, e) => match self.convolution(ax, t) {
                Ok(v) => {
                    let mut out = SolutionValue::new(v, Branch::GaussianSeries, Method::Convolution);
                    out.series_terms = terms;
                    out.truncated = true;
                    Ok(out)
                }
                Err(_) => Err(SolutionError::GaussianTerm { k, source: Box::new(e) }),
            },
        }
    }

    fn theta(&self, k: usize) -> Arc<HEvaluator> {
        let mut v = self.thetas.lock().expect("theta cache");
        while v.len() <= k {
            let j = v.len();
            v.push(Arc::new(HEvaluator::new(
                gaussian_theta_params(self.p.alpha(), self.p.beta(), j).reduced(),
            )));
        }
        v[k].clone()
    }

    fn series(&self, ax: f64, t: f64, k_max: usize) -> (SeriesOutcome, usize) {
        let tt = self.p.length_scale(t);
        let z = ax / tt;
        let ln_q = 2.0 * self.ic.x0.ln() - 4f64.ln() - 2.0 * tt.ln();
        let pref = self.p.mu() / (self.p.beta() * tt);
        let mut acc = CompensatedSum::new();
        let mut prev = f64::INFINITY;
        for k in 0..k_max {
            let theta = match self.theta(k).eval(z) {
                Ok((h, _)) => h,
                Err(e) => return (SeriesOutcome::Failed(k, e), k),
            };
            let kf = k as f64;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let term = sign * (kf * ln_q - ln_abs_gamma(kf + 1.0).0).exp() * theta;
            acc.add(term);
            let partial = acc.value();
            if term.abs() <= STOP_REL * partial.abs() {
                return (SeriesOutcome::Converged(pref * partial), k + 1);
            }
            if k >= 2 && term.abs() > prev {
                return (SeriesOutcome::Stopped, k + 1);
            }
            prev = term.abs();
        }
        (SeriesOutcome::Stopped, k_max)
    }

    /// ∫ φ(x − u) u_δ(u, t) du by panel quadrature.
    pub fn convolution(&self, x: f64, t: f64) -> Result<f64, SolutionError> {
        check_x(x)?;
        check_t(t)?;
        let ax = x.abs();
        let x0 = self.ic.x0;
        let table = self.table(t, ax + REACH * x0)?;
        let (lo, hi) = (ax - REACH * x0, ax + REACH * x0);
        let mu = self.p.mu();
        let mut acc = CompensatedSum::new();
        for (i, w) in table.edges.windows(2).enumerate() {
            if w[0] >= hi {
                break;
            }
            let near = w[1] > lo;
            let mirror = w[0] < REACH * x0 - ax;
            if !near && !mirror {
                continue;
            }
            for &(u, wg) in &table.samples[i * PANEL_NODES..(i + 1) * PANEL_NODES] {
                acc.add(wg * (self.ic.density(mu, ax - u) + self.ic.density(mu, ax + u)));
            }
        }
        Ok(acc.value() / mu)
    }

    /// Tabulates the delta solution at time t for convolutions up to |x| = reach
    /// minus the disturbance width. Profile sampling calls this once up front;
    /// later evaluations then only read the table.
    pub fn prepare(&self, t: f64, x_extent: f64) -> Result<(), SolutionError> {
        check_t(t)?;
        self.table(t, x_extent.abs() + REACH * self.ic.x0).map(|_| ())
    }

    fn table(&self, t: f64, reach: f64) -> Result<Arc<Table>, SolutionError> {
        let key = t.to_bits();
        let existing = self.tables.lock().expect("table cache").get(&key).cloned();
        if let Some(tab) = &existing {
            if *tab.edges.last().expect("edges") >= reach {
                return Ok(tab.clone());
            }
        }
        let tt = self.p.length_scale(t);
        let edges = panel_edges(self.ic.x0, tt, reach);
        let done = existing.as_ref().map_or(0, |tab| tab.edges.len() - 1);
        let (xg, wg) = &self.rule;
        let fresh: Vec<Vec<(f64, f64)>> = edges
            .windows(2)
            .skip(done)
            .collect::<Vec<_>>()
            .par_iter()
            .map(|w| {
                let (c, h) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
                xg.iter()
                    .zip(wg)
                    .map(|(&xi, &wi)| {
                        let u = c + h * xi;
                        self.delta.eval(u, t).map(|v| (u, h * wi * v.value))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        let mut samples = existing.map_or_else(Vec::new, |tab| tab.samples.clone());
        samples.extend(fresh.into_iter().flatten());
        let tab = Arc::new(Table { edges, samples });
        let mut cache = self.tables.lock().expect("table cache");
        let keep = cache.get(&key).is_some_and(|old| old.edges.len() >= tab.edges.len());
        if keep {
            return Ok(cache[&key].clone());
        }
        cache.insert(key, tab.clone());
        Ok(tab)
    }
}

enum SeriesOutcome {
    Converged(f64),
    /// Terms grew or k_max was reached.
    Stopped,
    Failed(usize, SolutionError),
}

/// Panel edges over [0, reach]: a geometrically graded first panel for the
/// behaviour at u = 0, then widths growing with u (the delta solution varies
/// on the scale T near the origin and on the scale u in its tail), never
/// wider than a quarter of the disturbance width.
fn panel_edges(x0: f64, tt: f64, reach: f64) -> Vec<f64> {
    let width = |u: f64| (x0 / 4.0).min((tt + u) / 24.0);
    let first = width(0.0);
    let mut edges = vec![0.0];
    edges.extend((0..=GRADING).rev().map(|j| first * 2f64.powi(-j)));
    while *edges.last().expect("edges") < reach {
        let e = *edges.last().expect("edges");
        edges.push(e + width(e));
    }
    edges
}

/// u(x, t) for the Gaussian disturbance of width x0; `k_max` caps the
/// H-function series.
pub fn u_gaussian(p: &FracParams, ic: &GaussianIC, x: f64, t: f64, k_max: usize) -> Result<SolutionValue, SolutionError> {
    GaussianSolver::new(*p, *ic).eval(x, t, k_max)
}
