//! Profiles, maxima tracking with power-law fits, node finding and the
//! classification of the (α, β) square.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::solutions::{
    Branch, DeltaSolver, FracParams, GaussianIC, GaussianSolver, SolutionError, Vertex, DEFAULT_K_MAX, PARAM_TOL,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("vertex B delta solution is a pair of impulses and cannot be sampled")]
    Distributional,
    #[error("no interior maximum at x >= 0")]
    NoInteriorMaximum,
    #[error("power-law fit needs at least 4 points, got {0}")]
    TooFewPoints(usize),
    #[error("power-law fit needs positive data, got ({t}, {x})")]
    NonPositive { t: f64, x: f64 },
    #[error("(alpha, beta) = ({alpha}, {beta}) outside [1, 2]^2")]
    OutsideSquare { alpha: f64, beta: f64 },
    #[error("non-finite value {value} at x = {x}")]
    NonFinite { x: f64, value: f64 },
    #[error(transparent)]
    Solution(#[from] SolutionError),
}

/// u(·, t) sampled on an increasing grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Profile {
    t: f64,
    xs: Vec<f64>,
    us: Vec<f64>,
    /// Nodes where the solution is singular and the value is the average of
    /// the neighbours.
    filled: Vec<usize>,
    branch: Option<Branch>,
}

impl Profile {
    pub fn new(t: f64, xs: Vec<f64>, us: Vec<f64>) -> Result<Self, AnalysisError> {
        if xs.len() != us.len() || xs.len() < 3 {
            return Err(AnalysisError::InvalidGrid(format!(
                "need at least 3 points with matching lengths, got {} and {}",
                xs.len(),
                us.len()
            )));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(AnalysisError::InvalidGrid("grid is not strictly increasing".into()));
        }
        Ok(Self {
            t,
            xs,
            us,
            filled: Vec::new(),
            branch: None,
        })
    }

    pub fn t(&self) -> f64 {
        self.t
    }
    pub fn xs(&self) -> &[f64] {
        &self.xs
    }
    pub fn us(&self) -> &[f64] {
        &self.us
    }
    pub fn filled(&self) -> &[usize] {
        &self.filled
    }
    pub fn branch(&self) -> Option<Branch> {
        self.branch
    }

    /// Same profile with every value multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.us.iter_mut().for_each(|u| *u *= s);
        out
    }
}

/// Evaluates u on a uniform grid of `n` points, in parallel.
pub fn sample_profile(
    p: &FracParams,
    t: f64,
    x_lo: f64,
    x_hi: f64,
    n: usize,
    ic: Option<&GaussianIC>,
) -> Result<Profile, AnalysisError> {
    if !(x_lo < x_hi) || n < 3 || !x_lo.is_finite() || !x_hi.is_finite() {
        return Err(AnalysisError::InvalidGrid(format!("[{x_lo}, {x_hi}] with {n} points")));
    }
    let xs: Vec<f64> = (0..n)
        .map(|i| {
            if i == n - 1 {
                x_hi
            } else {
                x_lo + (x_hi - x_lo) * i as f64 / (n - 1) as f64
            }
        })
        .collect();
    let raw: Vec<Result<(f64, Branch), SolutionError>> = match ic {
        None => {
            if p.vertex() == Some(Vertex::B) {
                return Err(AnalysisError::Distributional);
            }
            let solver = DeltaSolver::new(*p);
            xs.par_iter().map(|&x| solver.eval(x, t).map(|v| (v.value, v.branch))).collect()
        }
        Some(ic) => {
            let solver = GaussianSolver::new(*p, *ic);
            solver.prepare(t, x_lo.abs().max(x_hi.abs()))?;
            xs.par_iter()
                .map(|&x| solver.eval(x, t, DEFAULT_K_MAX).map(|v| (v.value, v.branch)))
                .collect()
        }
    };
    let mut us = Vec::with_capacity(n);
    let mut filled = Vec::new();
    let mut branch = None;
    for (i, r) in raw.into_iter().enumerate() {
        match r {
            Ok((u, b)) => {
                branch.get_or_insert(b);
                us.push(u);
            }
            Err(SolutionError::SingularPoint { .. }) if i > 0 && i + 1 < n => {
                filled.push(i);
                us.push(f64::NAN);
            }
            Err(e) => return Err(e.into()),
        }
    }
    for &i in &filled {
        us[i] = 0.5 * (us[i - 1] + us[i + 1]);
    }
    if let Some(i) = us.iter().position(|u| !u.is_finite()) {
        return Err(AnalysisError::NonFinite { x: xs[i], value: us[i] });
    }
    Ok(Profile {
        t,
        xs,
        us,
        filled,
        branch,
    })
}

/// Position of the largest local maximum with x ≥ 0, refined by a parabola
/// through the grid maximum and its neighbours. A grid node at x = 0 is
/// treated as a maximum of the even extension when its right neighbour is
/// lower.
pub fn find_right_max(profile: &Profile) -> Result<f64, AnalysisError> {
    let (xs, us) = (&profile.xs, &profile.us);
    let n = xs.len();
    let mut best: Option<usize> = None;
    for i in 0..n - 1 {
        if xs[i] < 0.0 {
            continue;
        }
        let left = if i > 0 {
            Some(us[i - 1])
        } else if xs[0] == 0.0 {
            Some(us[1])
        } else {
            None
        };
        let Some(left) = left else { continue };
        let is_max = us[i] > us[i + 1] && us[i] >= left;
        if is_max && best.is_none_or(|b| us[i] > us[b]) {
            best = Some(i);
        }
    }
    let i = best.ok_or(AnalysisError::NoInteriorMaximum)?;
    if xs[i] == 0.0 {
        return Ok(0.0);
    }
    let (x0, x1, x2) = (xs[i - 1], xs[i], xs[i + 1]);
    let (y0, y1, y2) = (us[i - 1], us[i], us[i + 1]);
    let d1 = (y1 - y0) / (x1 - x0);
    let d2 = (y2 - y1) / (x2 - x1);
    let curv = (d2 - d1) / (x2 - x0);
    if curv >= 0.0 {
        return Ok(x1);
    }
    // vertex of the interpolating parabola
    let xv = 0.5 * (x0 + x1) - d1 / (2.0 * curv);
    Ok(xv.clamp(x0, x2))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub c: f64,
    pub exponent: f64,
    /// Root-mean-square residual of the log-log fit.
    pub rms_residual: f64,
}

/// Least-squares fit of x = c t^exponent in log-log coordinates.
pub fn fit_power_law(times: &[f64], x_max: &[f64]) -> Result<PowerLawFit, AnalysisError> {
    let n = times.len().min(x_max.len());
    if n < 4 || times.len() != x_max.len() {
        return Err(AnalysisError::TooFewPoints(n));
    }
    if let Some((&t, &x)) = times.iter().zip(x_max).find(|(&t, &x)| !(t > 0.0) || !(x > 0.0)) {
        return Err(AnalysisError::NonPositive { t, x });
    }
    let lt: Vec<f64> = times.iter().map(|t| t.ln()).collect();
    let lx: Vec<f64> = x_max.iter().map(|x| x.ln()).collect();
    let nf = n as f64;
    let mt = lt.iter().sum::<f64>() / nf;
    let mx = lx.iter().sum::<f64>() / nf;
    let sxy: f64 = lt.iter().zip(&lx).map(|(a, b)| (a - mt) * (b - mx)).sum();
    let sxx: f64 = lt.iter().map(|a| (a - mt) * (a - mt)).sum();
    if sxx == 0.0 {
        return Err(AnalysisError::InvalidGrid("all times are equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = mx - slope * mt;
    let ss: f64 = lt
        .iter()
        .zip(&lx)
        .map(|(a, b)| {
            let r = b - (intercept + slope * a);
            r * r
        })
        .sum();
    Ok(PowerLawFit {
        c: intercept.exp(),
        exponent: slope,
        rms_residual: (ss / nf).sqrt(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakTrack {
    pub times: Vec<f64>,
    pub x_max: Vec<f64>,
    pub fit: PowerLawFit,
}

/// Eight logarithmically spaced times in [0.5, 4].
pub fn default_times() -> Vec<f64> {
    (0..8).map(|i| 0.5 * 8f64.powf(i as f64 / 7.0)).collect()
}

/// Disturbance width used for peak tracking when none is given.
pub const DEFAULT_PEAK_X0: f64 = 0.4;

/// Right-hand maximum of the profile on [0, x_hi] at each time, and the
/// power-law fit of its trajectory.
pub fn track_peaks(
    p: &FracParams,
    ic: Option<&GaussianIC>,
    times: &[f64],
    x_hi: f64,
    n: usize,
) -> Result<PeakTrack, AnalysisError> {
    let mut x_max = Vec::with_capacity(times.len());
    for &t in times {
        let prof = sample_profile(p, t, 0.0, x_hi, n, ic)?;
        x_max.push(find_right_max(&prof)?);
    }
    let fit = fit_power_law(times, &x_max)?;
    Ok(PeakTrack {
        times: times.to_vec(),
        x_max,
        fit,
    })
}

/// Bisection tolerance in x for node positions.
pub const NODE_TOL: f64 = 1e-10;

/// Zeros of the profile: sign changes between grid nodes refined by
/// bisection on `f`, plus grid nodes where the value is exactly zero.
pub fn find_nodes<F>(profile: &Profile, f: F) -> Result<Vec<f64>, AnalysisError>
where
    F: Fn(f64) -> Result<f64, AnalysisError>,
{
    let (xs, us) = (&profile.xs, &profile.us);
    let mut out = Vec::new();
    for i in 0..xs.len() {
        if us[i] == 0.0 {
            out.push(xs[i]);
            continue;
        }
        if i + 1 < xs.len() && us[i] * us[i + 1] < 0.0 {
            let (mut a, mut b) = (xs[i], xs[i + 1]);
            let mut fa = us[i];
            while b - a > NODE_TOL {
                let m = 0.5 * (a + b);
                let fm = f(m)?;
                if fm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if (fm < 0.0) == (fa < 0.0) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        }
    }
    Ok(out)
}

/// Regions of the square: four open triangles around E = (1.5, 1.5), the six
/// lines (I β = 2, II α = 2, III β = 1, IV α = 1, V α = β, VI α + β = 3) and
/// five points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionClass {
    ABE,
    BCE,
    CDE,
    DAE,
    SegmentI,
    SegmentII,
    SegmentIII,
    SegmentIV,
    SegmentV,
    SegmentVI,
    VertexA,
    VertexB,
    VertexC,
    VertexD,
    VertexE,
}

pub fn classify_region(alpha: f64, beta: f64) -> Result<RegionClass, AnalysisError> {
    let inside = |v: f64| (1.0 - PARAM_TOL..=2.0 + PARAM_TOL).contains(&v);
    if !inside(alpha) || !inside(beta) {
        return Err(AnalysisError::OutsideSquare { alpha, beta });
    }
    let close = |a: f64, b: f64| (a - b).abs() <= PARAM_TOL;
    if let Some(v) = Vertex::at(alpha, beta) {
        return Ok(match v {
            Vertex::A => RegionClass::VertexA,
            Vertex::B => RegionClass::VertexB,
            Vertex::C => RegionClass::VertexC,
            Vertex::D => RegionClass::VertexD,
        });
    }
    if close(alpha, 1.5) && close(beta, 1.5) {
        return Ok(RegionClass::VertexE);
    }
    let on = [
        (close(beta, 2.0), RegionClass::SegmentI),
        (close(alpha, 2.0), RegionClass::SegmentII),
        (close(beta, 1.0), RegionClass::SegmentIII),
        (close(alpha, 1.0), RegionClass::SegmentIV),
        (close(alpha, beta), RegionClass::SegmentV),
        (close(alpha + beta, 3.0), RegionClass::SegmentVI),
    ];
    if let Some((_, r)) = on.iter().find(|(hit, _)| *hit) {
        return Ok(*r);
    }
    let above_main = beta > alpha;
    let above_anti = alpha + beta > 3.0;
    Ok(match (above_main, above_anti) {
        (true, true) => RegionClass::ABE,
        (false, true) => RegionClass::BCE,
        (false, false) => RegionClass::CDE,
        (true, false) => RegionClass::DAE,
    })
}
