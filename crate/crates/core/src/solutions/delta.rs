//! Delta-pulse solutions: branch dispatch, the four series, the vertex closed
//! forms and the segment-line H-function forms.

use std::cell::Cell;
use std::f64::consts::PI;
use std::sync::OnceLock;

use super::hforms::{delta_params, vertex_params, segment_i_params, segment_ii_params, segment_iii_params, segment_iv_params, segment_v_params};
use super::{check_t, check_x, close, Branch, FracParams, HEvaluator, Method, Segment, SolutionError, SolutionValue, Vertex};
use crate::fox_h::{eval_at_origin, FoxHError, HParams, MellinBarnesPlan};
use crate::special_functions::{gen_wright_sum, ln_abs_gamma, sin_pi, wright_phi, wright_phi_sum, SpecialError, MAX_SERIES_TERMS};
use crate::summation::{sum_series, SeriesSum};

/// Largest term-to-result ratio accepted from a series before switching to
/// the Mellin–Barnes integral.
pub const LOSS_LIMIT: f64 = 1e5;
/// Same, when the contour integral could not be evaluated either.
pub(crate) const LOSS_LIMIT_ALONE: f64 = 1e8;
const SQRT_PI: f64 = 1.772_453_850_905_516;
/// Below this ξ = t²/|x| the complementary solution is its leading term.
const PEAK_XI: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Route {
    Vertex(Vertex),
    Serie1,
    Serie2,
    Serie3,
    Serie4,
}

fn route(p: &FracParams) -> Route {
    let (a, b) = (p.alpha(), p.beta());
    if let Some(v) = p.vertex() {
        Route::Vertex(v)
    } else if close(a, b) {
        Route::Serie4
    } else if close(a, 1.0) {
        Route::Serie3
    } else if a > b {
        Route::Serie1
    } else {
        Route::Serie2
    }
}

/// Branch that [`u_delta`] reports for these parameters.
pub(crate) fn branch_of(p: &FracParams) -> Branch {
    match route(p) {
        Route::Vertex(Vertex::A) => Branch::VertexA,
        Route::Vertex(Vertex::B) => Branch::VertexB,
        Route::Vertex(Vertex::C) => Branch::VertexC,
        Route::Vertex(Vertex::D) => Branch::VertexD,
        Route::Serie1 => Branch::Serie1,
        Route::Serie2 => Branch::Serie2,
        Route::Serie3 => Branch::Serie3,
        Route::Serie4 => Branch::Serie4,
    }
}

/// A series result with its cancellation diagnostics.
#[derive(Debug, Clone, Copy)]
struct Partial {
    value: f64,
    loss: f64,
    converged: bool,
    terms: usize,
}

impl Partial {
    fn scaled(s: &SeriesSum, factor: f64) -> Self {
        Self {
            value: factor * s.value,
            loss: s.loss(),
            converged: s.converged,
            terms: s.terms,
        }
    }
}

fn alternating(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Delta solution at fixed (α, β, v, μ) with its Mellin–Barnes fallback
/// prepared once and shared by every (x, t).
pub struct DeltaSolver {
    p: FracParams,
    route: Route,
    fallback: Option<HParams>,
    plan: OnceLock<Result<MellinBarnesPlan, FoxHError>>,
}

impl DeltaSolver {
    pub fn new(p: FracParams) -> Self {
        let route = route(&p);
        let (a, b) = (p.alpha(), p.beta());
        let fallback = match route {
            Route::Vertex(Vertex::C) => Some(vertex_params(Vertex::C).reduced()),
            Route::Vertex(_) | Route::Serie4 => None,
            _ if close(a, 2.0) => Some(segment_ii_params(b).reduced()),
            _ if close(b, 2.0) => Some(segment_i_params(a)),
            _ if close(a, 1.0) => Some(segment_iv_params(b)),
            _ => Some(delta_params(a, b).reduced()),
        };
        Self {
            p,
            route,
            fallback,
            plan: OnceLock::new(),
        }
    }

    pub fn params(&self) -> &FracParams {
        &self.p
    }

    pub fn branch(&self) -> Branch {
        branch_of(&self.p)
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<SolutionValue, SolutionError> {
        check_x(x)?;
        check_t(t)?;
        let ax = x.abs();
        let p = &self.p;
        match self.route {
            Route::Vertex(Vertex::C) if ax > 0.0 => match complementary(p, ax, t) {
                Ok(u) => Ok(SolutionValue::new(u, Branch::VertexC, Method::Series)),
                Err(e) => {
                    let tt = p.length_scale(t);
                    match self.integral(ax / tt) {
                        Ok(h) => Ok(SolutionValue::new(p.mu() / tt * h, Branch::VertexC, Method::MellinBarnes)),
                        Err(_) => Err(e),
                    }
                }
            },
            Route::Vertex(v) => vertex_value(v, p, ax, t),
            Route::Serie4 => Ok(SolutionValue::new(serie4(p, ax, t), Branch::Serie4, Method::ClosedForm)),
            Route::Serie3 => {
                let s = serie3(p, ax, t);
                self.settle(Some(s), ax, t, Branch::Serie3)
            }
            Route::Serie1 => {
                if ax == 0.0 {
                    return Err(SolutionError::SingularPoint { branch: Branch::Serie1 });
                }
                let s = serie1(p, ax, t);
                self.settle(Some(s), ax, t, Branch::Serie1)
            }
            Route::Serie2 => {
                let s = if close(p.beta(), 2.0) {
                    let tt = p.length_scale(t);
                    match wright_phi_sum(-p.alpha() / 2.0, 1.0 - p.alpha() / 2.0, -ax / tt) {
                        Ok(s) => Some(Partial::scaled(&s, p.mu() / (2.0 * tt))),
                        Err(SpecialError::SeriesStall { .. }) => None,
                        Err(e) => return Err(e.into()),
                    }
                } else {
                    serie2(p, ax, t)
                };
                self.settle(s, ax, t, Branch::Serie2)
            }
        }
    }

    /// The fallback H-function at z > 0 by contour integration.
    fn integral(&self, z: f64) -> Result<f64, SolutionError> {
        let params = self.fallback.as_ref().expect("integral needs a fallback");
        let plan = self
            .plan
            .get_or_init(|| MellinBarnesPlan::new(params))
            .as_ref()
            .map_err(|e| SolutionError::FoxH(e.clone()))?;
        Ok(plan.evaluate(z)?.value)
    }

    /// Accepts a series value or replaces it by the contour integral.
    /// `None` means the series has coinciding poles and cannot be used.
    fn settle(&self, s: Option<Partial>, ax: f64, t: f64, branch: Branch) -> Result<SolutionValue, SolutionError> {
        if let Some(s) = s {
            if s.converged && s.loss <= LOSS_LIMIT {
                return Ok(SolutionValue::new(s.value, branch, Method::Series));
            }
        }
        let mut integral_err = None;
        if let Some(params) = &self.fallback {
            let tt = self.p.length_scale(t);
            let pref = self.p.mu() / (self.p.beta() * tt);
            if ax == 0.0 {
                return Ok(SolutionValue::new(pref * eval_at_origin(params)?, branch, Method::Series));
            }
            match self.integral(ax / tt) {
                Ok(h) => return Ok(SolutionValue::new(pref * h, branch, Method::MellinBarnes)),
                Err(e) => integral_err = Some(e),
            }
        }
        match s {
            Some(s) if s.converged && s.loss <= LOSS_LIMIT_ALONE => Ok(SolutionValue::new(s.value, branch, Method::Series)),
            _ if integral_err.is_some() => Err(integral_err.expect("checked")),
            Some(s) if s.converged => Err(SolutionError::PrecisionLoss {
                loss: s.loss,
                detail: format!("{} series at |x| = {ax}, t = {t}", branch.name()),
            }),
            Some(s) => Err(SolutionError::SeriesStall {
                partial: s.value,
                terms: s.terms,
            }),
            None => Err(SolutionError::NotConvergent(format!(
                "{} series has coinciding poles and no integral fallback",
                branch.name()
            ))),
        }
    }
}

/// u(x, t) for a Dirac-delta initial disturbance.
pub fn u_delta(p: &FracParams, x: f64, t: f64) -> Result<SolutionValue, SolutionError> {
    DeltaSolver::new(*p).eval(x, t)
}

/// α = β: rational closed form with a single bump that sharpens toward vertex B.
fn serie4(p: &FracParams, ax: f64, t: f64) -> f64 {
    let a = p.alpha();
    let s = p.v2() * t.powf(a);
    let xa = ax.powf(a);
    let num = ax.powf(a - 1.0) * s * sin_pi(a / 2.0);
    let den = s * s + 2.0 * xa * s * crate::special_functions::cos_pi(a / 2.0) + xa * xa;
    p.mu() / PI * num / den
}

/// α = 1: even power series in |x|/T.
fn serie3(p: &FracParams, ax: f64, t: f64) -> Partial {
    let b = p.beta();
    let tt = p.length_scale(t);
    let pref = p.mu() / (PI * b * tt);
    if ax == 0.0 {
        return Partial {
            value: pref * ln_abs_gamma(1.0 / b).0.exp(),
            loss: 1.0,
            converged: true,
            terms: 1,
        };
    }
    let ln_y2 = 2.0 * (ax / tt).ln();
    let s = sum_series(MAX_SERIES_TERMS, |m| {
        let mf = m as f64;
        let lg = ln_abs_gamma((1.0 + 2.0 * mf) / b).0;
        let lf = ln_abs_gamma(2.0 * mf + 1.0).0;
        alternating(m) * (lg - lf + mf * ln_y2).exp()
    });
    Partial::scaled(&s, pref)
}

/// α > β: series in 2^β v² t^α / |x|^β, x ≠ 0.
fn serie1(p: &FracParams, ax: f64, t: f64) -> Partial {
    let (a, b) = (p.alpha(), p.beta());
    let ln_w = b * 2f64.ln() + p.v2().ln() + a * t.ln() - b * ax.ln();
    let s = sum_series(MAX_SERIES_TERMS, |k| {
        if k == 0 {
            return 0.0;
        }
        let kf = k as f64;
        let (g3, s3) = ln_abs_gamma(-b * kf / 2.0);
        if s3 == 0.0 {
            return 0.0;
        }
        let (g1, s1) = ln_abs_gamma((1.0 + b * kf) / 2.0);
        let g2 = ln_abs_gamma(1.0 + a * kf).0;
        s1 * s3 * alternating(k) * (g1 - g2 - g3 + kf * ln_w).exp()
    });
    Partial::scaled(&s, p.mu() / (SQRT_PI * ax))
}

/// β > α, β < 2: a series in |x|^{β−1+βk} plus one in |x|^{2m}. Returns
/// `None` when a Gamma in the numerator hits a pole (two pole families of
/// the kernel coincide).
fn serie2(p: &FracParams, ax: f64, t: f64) -> Option<Partial> {
    let (a, b) = (p.alpha(), p.beta());
    let tt = p.length_scale(t);
    let collided = Cell::new(false);

    let pref2 = p.mu() / (SQRT_PI * b * tt);
    let ln_y2 = 2.0 * ax.ln() - 4f64.ln() - 2.0 * tt.ln();
    let second_term = |m: usize| {
        let mf = m as f64;
        let r = (1.0 + 2.0 * mf) / b;
        let sn = sin_pi(r);
        if sn == 0.0 {
            collided.set(true);
            return f64::NAN;
        }
        let (g6, s6) = ln_abs_gamma(1.0 - a * r);
        if s6 == 0.0 {
            return 0.0;
        }
        let ln_mag = PI.ln() - sn.abs().ln() - ln_abs_gamma(mf + 1.0).0 - ln_abs_gamma(0.5 + mf).0 - g6;
        let pow = if m == 0 { 0.0 } else { mf * ln_y2 };
        sn.signum() * s6 * alternating(m) * (ln_mag + pow).exp()
    };
    if ax == 0.0 {
        let v = second_term(0);
        return (!collided.get()).then_some(Partial {
            value: pref2 * v,
            loss: 1.0,
            converged: true,
            terms: 1,
        });
    }
    let s2 = sum_series(MAX_SERIES_TERMS, second_term);
    if collided.get() {
        return None;
    }

    let pref1 = p.mu() * ax.powf(b - 1.0) / (SQRT_PI * 2f64.powf(b) * t.powf(a) * p.v2());
    let ln_y1 = b * ax.ln() - b * 2f64.ln() - a * t.ln() - p.v2().ln();
    let s1 = sum_series(MAX_SERIES_TERMS, |k| {
        let kf = k as f64;
        let top = 0.5 - b / 2.0 - b * kf / 2.0;
        let (g1, s1) = ln_abs_gamma(top);
        if s1 == 0.0 {
            collided.set(true);
            return f64::NAN;
        }
        let (g2, s2) = ln_abs_gamma(1.0 - a - a * kf);
        if s2 == 0.0 {
            return 0.0;
        }
        let g3 = ln_abs_gamma(b / 2.0 + b * kf / 2.0).0;
        s1 * s2 * alternating(k) * (g1 - g2 - g3 + kf * ln_y1).exp()
    });
    if collided.get() {
        return None;
    }
    let value = pref1 * s1.value + pref2 * s2.value;
    let biggest = (pref1 * s1.max_term).max(pref2 * s2.max_term);
    Some(Partial {
        value,
        loss: if value == 0.0 { f64::INFINITY } else { (biggest / value.abs()).max(1.0) },
        converged: s1.converged && s2.converged,
        terms: s1.terms + s2.terms,
    })
}

fn vertex_value(v: Vertex, p: &FracParams, ax: f64, t: f64) -> Result<SolutionValue, SolutionError> {
    let k = p.v2();
    let mu = p.mu();
    Ok(match v {
        Vertex::A => {
            let val = mu / (4.0 * PI * k * t).sqrt() * (-ax * ax / (4.0 * k * t)).exp();
            SolutionValue::new(val, Branch::VertexA, Method::ClosedForm)
        }
        Vertex::B => wave_pair(p, t),
        Vertex::C => {
            if ax == 0.0 {
                return Err(SolutionError::SingularPoint { branch: Branch::VertexC });
            }
            SolutionValue::new(complementary(p, ax, t)?, Branch::VertexC, Method::Series)
        }
        Vertex::D => {
            let kt = k * t;
            SolutionValue::new(mu / PI * kt / (ax * ax + kt * kt), Branch::VertexD, Method::ClosedForm)
        }
    })
}

/// Two impulses of weight μ/2 travelling at ±v.
fn wave_pair(p: &FracParams, t: f64) -> SolutionValue {
    let d = p.v() * t;
    SolutionValue {
        value: p.mu() / 2.0,
        branch: Branch::VertexB,
        distributional: true,
        impulses: Some([-d, d]),
        method: Method::Distributional,
        series_terms: 0,
        truncated: false,
    }
}

/// Closed form at a vertex of the square.
pub fn u_vertex_closed(vertex: Vertex, p: &FracParams, x: f64, t: f64) -> Result<SolutionValue, SolutionError> {
    if p.vertex() != Some(vertex) {
        return Err(SolutionError::Mismatch {
            what: format!("vertex {vertex:?}"),
            alpha: p.alpha(),
            beta: p.beta(),
        });
    }
    check_x(x)?;
    check_t(t)?;
    vertex_value(vertex, p, x.abs(), t)
}

/// Solution of the complementary equation (α, β) = (2, 1), x ≠ 0.
pub fn u_complementary(p: &FracParams, x: f64, t: f64) -> Result<f64, SolutionError> {
    if p.vertex() != Some(Vertex::C) {
        return Err(SolutionError::Mismatch {
            what: "vertex C".into(),
            alpha: p.alpha(),
            beta: p.beta(),
        });
    }
    check_x(x)?;
    check_t(t)?;
    if x == 0.0 {
        return Err(SolutionError::SingularPoint { branch: Branch::VertexC });
    }
    DeltaSolver::new(*p).eval(x, t).map(|v| v.value)
}

fn complementary(p: &FracParams, ax: f64, t: f64) -> Result<f64, SolutionError> {
    let kappa = p.v2();
    let ratio2 = (t / ax).powi(2);
    if t * t / ax < PEAK_XI {
        return Ok(p.mu() * kappa * ratio2 / (2.0 * PI));
    }
    let pref = -2.0 * p.mu() * kappa / SQRT_PI * ratio2;
    let ln_q2 = 2.0 * (2.0 * kappa * t * t / ax).ln();
    // Γ(−n − 1/2) has sign (−1)^{n+1}
    let s = sum_series(MAX_SERIES_TERMS, |n| {
        let nf = n as f64;
        let ln_mag = ln_abs_gamma(nf + 1.0).0 - ln_abs_gamma(4.0 * nf + 3.0).0 - ln_abs_gamma(-nf - 0.5).0;
        -alternating(n) * (ln_mag + nf * ln_q2).exp()
    });
    if !s.converged {
        return Err(SolutionError::SeriesStall {
            partial: pref * s.value,
            terms: s.terms,
        });
    }
    if s.loss() > LOSS_LIMIT_ALONE {
        return Err(SolutionError::PrecisionLoss {
            loss: s.loss(),
            detail: format!("complementary series at |x| = {ax}, t = {t}"),
        });
    }
    Ok(pref * s.value)
}

/// The delta solution as μ/(√π|x|)·₂Ψ₂(−2^β v² t^α/|x|^β), x ≠ 0.
pub fn u_gen_wright_form(p: &FracParams, x: f64, t: f64) -> Result<f64, SolutionError> {
    check_x(x)?;
    check_t(t)?;
    if x == 0.0 {
        return Err(SolutionError::SingularPoint { branch: branch_of(p) });
    }
    let (a, b) = (p.alpha(), p.beta());
    let ax = x.abs();
    let w = 2f64.powf(b) * p.v2() * t.powf(a) / ax.powf(b);
    let s = gen_wright_sum(&[(1.0, 1.0), (0.5, b / 2.0)], &[(1.0, a), (0.0, -b / 2.0)], -w).map_err(|e| match e {
        SpecialError::DivergentGenWright { reason } => SolutionError::NotConvergent(reason),
        e => e.into(),
    })?;
    if !s.converged {
        return Err(SolutionError::SeriesStall {
            partial: s.value,
            terms: s.terms,
        });
    }
    if s.loss() > LOSS_LIMIT_ALONE {
        return Err(SolutionError::PrecisionLoss {
            loss: s.loss(),
            detail: format!("generalized Wright form at |x| = {ax}, t = {t}"),
        });
    }
    Ok(p.mu() / (SQRT_PI * ax) * s.value)
}

/// Segment-line form of the solution (I: β = 2, II: α = 2, III: β = 1,
/// IV: α = 1, V: α = β).
pub fn u_segment(segment: Segment, p: &FracParams, x: f64, t: f64) -> Result<SolutionValue, SolutionError> {
    let (a, b) = (p.alpha(), p.beta());
    if !segment.contains(a, b) {
        return Err(SolutionError::Mismatch {
            what: format!("segment {segment:?}"),
            alpha: a,
            beta: b,
        });
    }
    check_x(x)?;
    check_t(t)?;
    if p.vertex() == Some(Vertex::B) {
        return Ok(wave_pair(p, t));
    }
    let branch = branch_of(p);
    let ax = x.abs();
    if ax == 0.0 && matches!(branch, Branch::Serie1 | Branch::VertexC) {
        return Err(SolutionError::SingularPoint { branch });
    }
    let tt = p.length_scale(t);
    if segment == Segment::I {
        let phi = wright_phi(-a / 2.0, 1.0 - a / 2.0, -ax / tt)?;
        return Ok(SolutionValue::new(p.mu() / (2.0 * tt) * phi, branch, Method::Series));
    }
    let params = match segment {
        Segment::II => segment_ii_params(b),
        Segment::III => segment_iii_params(a),
        Segment::IV => segment_iv_params(b),
        _ => segment_v_params(b),
    }
    .reduced();
    let (h, method) = HEvaluator::new(params).eval(ax / tt).map_err(|e| match e {
        SolutionError::FoxH(FoxHError::SingularAtOrigin { .. }) => SolutionError::SingularPoint { branch },
        e => e,
    })?;
    let pref = if segment == Segment::III { p.mu() / tt } else { p.mu() / (b * tt) };
    Ok(SolutionValue::new(pref * h, branch, method))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn fp(a: f64, b: f64) -> FracParams {
        FracParams::new(a, b, 1.0, 1.0).unwrap()
    }

    #[test]
    fn vertex_examples() {
        let v = u_delta(&fp(1.0, 1.0), 0.0, 1.0).unwrap();
        assert_eq!(v.branch, Branch::VertexD);
        assert_relative_eq!(v.value, 1.0 / PI, max_relative = 1e-15);
        let v = u_delta(&fp(1.0, 2.0), 0.0, 1.0).unwrap();
        assert_eq!(v.branch, Branch::VertexA);
        assert_relative_eq!(v.value, 0.282_094_791_773_878_14, max_relative = 1e-15);
        let v = u_delta(&fp(2.0, 2.0), 0.7, 1.0).unwrap();
        assert!(v.distributional);
        assert_eq!(v.value, 0.5);
        assert_eq!(v.impulses, Some([-1.0, 1.0]));

        let d = FracParams::with_v2(1.0, 1.0, 2.0, 1.0).unwrap();
        let v = u_vertex_closed(Vertex::D, &d, 2.0, 1.0).unwrap();
        assert_relative_eq!(v.value, 1.0 / (4.0 * PI), max_relative = 1e-15);
        let a = FracParams::new(1.0, 2.0, 1.0, 3.0).unwrap();
        assert_relative_eq!(
            u_vertex_closed(Vertex::A, &a, 0.0, 1.0).unwrap().value,
            3.0 / (4.0 * PI).sqrt(),
            max_relative = 1e-15
        );
        let b = FracParams::new(2.0, 2.0, 3.0, 1.0).unwrap();
        let v = u_vertex_closed(Vertex::B, &b, 0.0, 2.0).unwrap();
        assert_eq!((v.value, v.impulses), (0.5, Some([-6.0, 6.0])));
        assert!(matches!(
            u_vertex_closed(Vertex::A, &b, 0.0, 1.0),
            Err(SolutionError::Mismatch { .. })
        ));
    }

    #[test]
    fn serie4_example() {
        let v = u_delta(&fp(1.5, 1.5), 1.0, 1.0).unwrap();
        assert_eq!(v.branch, Branch::Serie4);
        let s = 0.5f64.sqrt();
        assert_relative_eq!(v.value, s / (PI * (2.0 - 2.0 * s)), max_relative = 1e-14);
    }

    #[test]
    fn preconditions() {
        let p = fp(1.8, 1.2);
        assert!(matches!(u_delta(&p, 0.0, 1.0), Err(SolutionError::SingularPoint { branch: Branch::Serie1 })));
        assert!(matches!(u_delta(&p, 1.0, 0.0), Err(SolutionError::NonPositiveTime { .. })));
        assert!(matches!(u_delta(&p, 1.0, -1.0), Err(SolutionError::NonPositiveTime { .. })));
        assert!(matches!(u_delta(&fp(2.0, 1.0), 0.0, 1.0), Err(SolutionError::SingularPoint { branch: Branch::VertexC })));
        assert!(u_gen_wright_form(&p, 0.0, 1.0).is_err());
        assert!(matches!(u_gen_wright_form(&fp(1.5, 2.0), 1.0, 1.0), Err(SolutionError::NotConvergent(_))));
        assert!(matches!(u_segment(Segment::I, &p, 1.0, 1.0), Err(SolutionError::Mismatch { .. })));
    }

    #[test]
    fn branches() {
        assert_eq!(branch_of(&fp(1.8, 1.2)), Branch::Serie1);
        assert_eq!(branch_of(&fp(1.2, 1.8)), Branch::Serie2);
        assert_eq!(branch_of(&fp(1.0, 1.5)), Branch::Serie3);
        assert_eq!(branch_of(&fp(1.3, 1.3 + 1e-13)), Branch::Serie4);
        assert_eq!(branch_of(&fp(2.0, 1.0)), Branch::VertexC);
    }

    #[test]
    fn complementary_peak_and_evenness() {
        let p = fp(2.0, 1.0);
        let v = u_complementary(&p, 1.0, 0.01).unwrap();
        assert_relative_eq!(v, 1e-4 / (2.0 * PI), max_relative = 1e-12);
        for x in [0.3, 1.0, 4.0] {
            assert_eq!(u_complementary(&p, x, 1.0).unwrap(), u_complementary(&p, -x, 1.0).unwrap());
        }
        // the full series agrees with its leading term deep in the peaked regime
        let full = complementary(&p, 1.0, 0.04).unwrap();
        assert_relative_eq!(full, 0.0016 / (2.0 * PI), max_relative = 1e-5);
    }

    #[test]
    fn complementary_is_serie1_at_the_vertex() {
        let p = fp(2.0, 1.0);
        for x in [0.5, 1.0, 3.0] {
            let s = serie1(&p, x, 1.0);
            assert_relative_eq!(u_complementary(&p, x, 1.0).unwrap(), s.value, max_relative = 1e-10);
        }
    }

    // Mellin–Barnes integrals evaluated at 30 digits
    const ORACLE: [(f64, f64, f64, f64, f64); 12] = [
        (1.8, 1.2, 2.0, 1.0, 0.046_759_426_238_730_329),
        (1.5, 1.3, 1.0, 1.0, 0.307_454_419_287_892_28),
        (1.3, 1.7, 0.5, 1.0, 0.251_720_821_197_665_27),
        (1.3, 1.7, 1.0, 1.0, 0.267_184_989_516_043_88),
        (1.3, 1.7, 3.0, 1.0, 0.019_544_095_460_519_263),
        (1.2, 1.8, 1.0, 1.0, 0.242_312_409_080_578_92),
        (1.0, 1.5, 1.0, 1.0, 0.202_038_159_607_840_13),
        (1.5, 2.0, 1.0, 1.0, 0.303_299_271_795_137_99),
        (1.5, 1.0, 1.0, 1.0, 0.205_553_672_473_375_26),
        (1.6, 1.4, 0.5, 1.0, 0.308_633_240_271_933_31),
        (1.2, 1.8, 0.3, 2.0, 0.148_234_738_728_148_42),
        (1.4, 1.6, 0.0, 1.0, 0.089_792_987_682_664_311),
    ];

    #[test]
    fn generic_points_match_oracle() {
        for (a, b, x, t, want) in ORACLE {
            let v = u_delta(&fp(a, b), x, t).unwrap();
            assert!(
                (v.value - want).abs() <= 1e-10 * want,
                "({a}, {b}) x = {x} t = {t}: {} vs {want} via {:?}",
                v.value,
                v.method
            );
        }
    }

    #[test]
    fn alpha_two_series() {
        // summed at 30 digits
        let v = u_delta(&fp(2.0, 1.5), 2.0, 1.0).unwrap();
        assert_relative_eq!(v.value, 0.031_778_899_907_446_546, max_relative = 1e-11);
        let v = u_delta(&fp(2.0, 1.2), 1.0, 0.5).unwrap();
        assert_relative_eq!(v.value, 0.043_089_382_051_576_671, max_relative = 1e-11);
    }

    #[test]
    fn segment_forms_agree_with_dispatch() {
        let cases = [
            (Segment::I, 1.5, 2.0, 1.0, 1.0),
            (Segment::II, 2.0, 1.5, 2.0, 1.0),
            (Segment::III, 1.5, 1.0, 1.0, 1.0),
            (Segment::IV, 1.0, 1.5, 1.0, 1.0),
            (Segment::IV, 1.0, 1.5, 0.0, 1.0),
            (Segment::V, 1.5, 1.5, 1.0, 1.0),
            (Segment::V, 1.5, 1.5, 0.0, 1.0),
            (Segment::V, 1.2, 1.2, 3.0, 0.5),
            (Segment::III, 2.0, 1.0, 3.0, 1.0),
            (Segment::I, 1.3, 2.0, 0.0, 1.0),
        ];
        for (seg, a, b, x, t) in cases {
            let p = fp(a, b);
            let s = u_segment(seg, &p, x, t).unwrap();
            let d = u_delta(&p, x, t).unwrap();
            assert_eq!(s.branch, d.branch);
            assert!(
                (s.value - d.value).abs() <= 1e-10 * d.value.abs().max(1e-3),
                "{seg:?} ({a}, {b}) x = {x}: {} vs {}",
                s.value,
                d.value
            );
        }
    }

    #[test]
    fn segments_reduce_to_vertices() {
        let heat = fp(1.0, 2.0);
        let lorentz = fp(1.0, 1.0);
        for x in [0.0, 0.4, 1.0, 2.5] {
            let src = u_delta(&heat, x, 1.0).unwrap().value;
            assert_relative_eq!(u_segment(Segment::I, &heat, x, 1.0).unwrap().value, src, max_relative = 1e-12);
            assert_relative_eq!(u_segment(Segment::IV, &heat, x, 1.0).unwrap().value, src, max_relative = 1e-10);
            let ld = u_delta(&lorentz, x, 1.0).unwrap().value;
            assert_relative_eq!(u_segment(Segment::V, &lorentz, x, 1.0).unwrap().value, ld, max_relative = 1e-10);
            assert_relative_eq!(u_segment(Segment::III, &lorentz, x, 1.0).unwrap().value, ld, max_relative = 1e-10);
        }
        let wave = fp(2.0, 2.0);
        assert!(u_segment(Segment::II, &wave, 0.3, 1.0).unwrap().distributional);
        assert!(matches!(
            u_segment(Segment::II, &fp(2.0, 1.5), 0.0, 1.0),
            Err(SolutionError::SingularPoint { .. })
        ));
    }

    #[test]
    fn generalized_wright_form() {
        let p = fp(1.8, 1.2);
        assert_relative_eq!(
            u_gen_wright_form(&p, 2.0, 1.0).unwrap(),
            u_delta(&p, 2.0, 1.0).unwrap().value,
            max_relative = 1e-10
        );
        let c = fp(2.0, 1.0);
        assert_relative_eq!(
            u_gen_wright_form(&c, 5.0, 0.1).unwrap(),
            u_complementary(&c, 5.0, 0.1).unwrap(),
            max_relative = 1e-12
        );
    }
}
