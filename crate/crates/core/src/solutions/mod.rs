//! Solutions u(x, t; α, β) of D_t^α u = v² 𝔻_x^β u for a Dirac-delta or a
//! Gaussian initial disturbance (zero initial velocity).

mod delta;
mod gaussian;
pub mod hforms;

pub use delta::{
    u_complementary, u_delta, u_gen_wright_form, u_segment, u_vertex_closed, DeltaSolver, LOSS_LIMIT,
};
pub use gaussian::{u_gaussian, GaussianIC, GaussianSolver, DEFAULT_K_MAX};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use std::sync::OnceLock;

use crate::fox_h::{
    eval_at_origin, series_neg_sum, series_pos_sum, validate, DeltaSign, FoxHError, HParams, MellinBarnesPlan,
};
use crate::special_functions::SpecialError;

/// Tolerance for recognising vertices and segment lines of the square.
pub const PARAM_TOL: f64 = 1e-12;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= PARAM_TOL
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolutionError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("time must be positive and finite, got t = {t}")]
    NonPositiveTime { t: f64 },
    #[error("position must be finite, got x = {x}")]
    NonFiniteX { x: f64 },
    #[error("singular point x = 0 on branch {branch:?}")]
    SingularPoint { branch: Branch },
    #[error("parameters ({alpha}, {beta}) do not match {what}")]
    Mismatch { what: String, alpha: f64, beta: f64 },
    #[error("representation not convergent here: {0}")]
    NotConvergent(String),
    #[error("series stalled after {terms} terms (partial sum {partial:e})")]
    SeriesStall { partial: f64, terms: usize },
    #[error("precision loss: largest term exceeds the result by {loss:.3e} ({detail})")]
    PrecisionLoss { loss: f64, detail: String },
    #[error("Gaussian series term k = {k}: {source}")]
    GaussianTerm {
        k: usize,
        #[source]
        source: Box<SolutionError>,
    },
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    FoxH(#[from] FoxHError),
}

/// A point (α, β) of the square with coupling v and strength μ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracParams {
    alpha: f64,
    beta: f64,
    v: f64,
    mu: f64,
}

impl FracParams {
    pub fn new(alpha: f64, beta: f64, v: f64, mu: f64) -> Result<Self, SolutionError> {
        let ok = |x: f64| x.is_finite();
        if !(ok(alpha) && ok(beta) && ok(v) && ok(mu)) {
            return Err(SolutionError::InvalidParams("non-finite value".into()));
        }
        if !(1.0..=2.0).contains(&alpha) || !(1.0..=2.0).contains(&beta) {
            return Err(SolutionError::InvalidParams(format!(
                "(alpha, beta) = ({alpha}, {beta}) outside [1, 2]^2"
            )));
        }
        if v <= 0.0 || mu <= 0.0 {
            return Err(SolutionError::InvalidParams(format!("v = {v} and mu = {mu} must be positive")));
        }
        Ok(Self { alpha, beta, v, mu })
    }

    /// Parameters given through the diffusivity-like constant v² (k, κ, k_β).
    pub fn with_v2(alpha: f64, beta: f64, v2: f64, mu: f64) -> Result<Self, SolutionError> {
        Self::new(alpha, beta, v2.sqrt(), mu)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn v(&self) -> f64 {
        self.v
    }
    pub fn v2(&self) -> f64 {
        self.v * self.v
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Similarity length T = t^{α/β} v^{2/β}; the delta solution is F(|x|/T)/T.
    pub fn length_scale(&self, t: f64) -> f64 {
        t.powf(self.alpha / self.beta) * self.v.powf(2.0 / self.beta)
    }

    pub fn vertex(&self) -> Option<Vertex> {
        Vertex::at(self.alpha, self.beta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Vertex {
    /// Heat equation, (1, 2).
    A,
    /// Wave equation, (2, 2).
    B,
    /// Complementary equation, (2, 1).
    C,
    /// Transport equation, (1, 1).
    D,
}

impl Vertex {
    pub fn coords(self) -> (f64, f64) {
        match self {
            Vertex::A => (1.0, 2.0),
            Vertex::B => (2.0, 2.0),
            Vertex::C => (2.0, 1.0),
            Vertex::D => (1.0, 1.0),
        }
    }

    pub fn at(alpha: f64, beta: f64) -> Option<Self> {
        [Vertex::A, Vertex::B, Vertex::C, Vertex::D]
            .into_iter()
            .find(|v| {
                let (a, b) = v.coords();
                close(alpha, a) && close(beta, b)
            })
    }
}

/// Segment lines of the square: I β=2, II α=2, III β=1, IV α=1, V α=β.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Segment {
    I,
    II,
    III,
    IV,
    V,
}

impl Segment {
    pub fn contains(self, alpha: f64, beta: f64) -> bool {
        match self {
            Segment::I => close(beta, 2.0),
            Segment::II => close(alpha, 2.0),
            Segment::III => close(beta, 1.0),
            Segment::IV => close(alpha, 1.0),
            Segment::V => close(alpha, beta),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Serie1,
    Serie2,
    Serie3,
    Serie4,
    VertexA,
    VertexB,
    VertexC,
    VertexD,
    GaussianSeries,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Serie1 => "Serie1",
            Branch::Serie2 => "Serie2",
            Branch::Serie3 => "Serie3",
            Branch::Serie4 => "Serie4",
            Branch::VertexA => "VertexA",
            Branch::VertexB => "VertexB",
            Branch::VertexC => "VertexC",
            Branch::VertexD => "VertexD",
            Branch::GaussianSeries => "GaussianSeries",
        }
    }
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    ClosedForm,
    Series,
    MellinBarnes,
    Convolution,
    Distributional,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolutionValue {
    /// Pointwise value, or the weight of each impulse when `distributional`.
    pub value: f64,
    pub branch: Branch,
    pub distributional: bool,
    /// Impulse positions ±vt for the wave vertex.
    pub impulses: Option<[f64; 2]>,
    pub method: Method,
    /// Terms of the Gaussian-disturbance series used (0 elsewhere).
    pub series_terms: usize,
    /// The Gaussian-disturbance series hit k_max or diverged before meeting
    /// its stopping rule; the value then comes from direct convolution.
    pub truncated: bool,
}

impl SolutionValue {
    fn new(value: f64, branch: Branch, method: Method) -> Self {
        Self {
            value,
            branch,
            distributional: false,
            impulses: None,
            method,
            series_terms: 0,
            truncated: false,
        }
    }
}

/// H(z) by the residue series matching the sign of Δ, falling back to the
/// Mellin–Barnes integral when the series cancels or cannot be used. The
/// parameter checks and the integration plan are done once per instance.
pub(crate) struct HEvaluator {
    params: HParams,
    class: Option<DeltaSign>,
    plan: OnceLock<Result<MellinBarnesPlan, FoxHError>>,
}

impl HEvaluator {
    pub(crate) fn new(params: HParams) -> Self {
        let class = validate(&params).ok().map(|d| d.class);
        Self {
            params,
            class,
            plan: OnceLock::new(),
        }
    }

    pub(crate) fn eval(&self, z: f64) -> Result<(f64, Method), SolutionError> {
        let params = &self.params;
        if z == 0.0 {
            return Ok((eval_at_origin(params)?, Method::Series));
        }
        let series = match self.class {
            Some(DeltaSign::PositiveDelta) => Some(series_pos_sum(params, z)),
            Some(DeltaSign::NegativeDelta) => Some(series_neg_sum(params, z)),
            _ => None,
        };
        if let Some(Ok(s)) = &series {
            if s.loss() <= delta::LOSS_LIMIT {
                return Ok((s.value, Method::Series));
            }
        }
        let plan = self.plan.get_or_init(|| MellinBarnesPlan::new(params));
        let integral_err = match plan.as_ref().map(|plan| plan.evaluate(z)) {
            Ok(Ok(o)) => return Ok((o.value, Method::MellinBarnes)),
            Ok(Err(e)) => SolutionError::FoxH(e),
            Err(e) => SolutionError::FoxH(e.clone()),
        };
        match series {
            Some(Ok(s)) if s.loss() <= delta::LOSS_LIMIT_ALONE => Ok((s.value, Method::Series)),
            Some(Ok(s)) => Err(SolutionError::PrecisionLoss {
                loss: s.loss(),
                detail: format!("residue series at z = {z} ({integral_err})"),
            }),
            Some(Err(_)) | None => Err(integral_err),
        }
    }
}

fn check_t(t: f64) -> Result<(), SolutionError> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(SolutionError::NonPositiveTime { t })
    }
}

fn check_x(x: f64) -> Result<(), SolutionError> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(SolutionError::NonFiniteX { x })
    }
}
