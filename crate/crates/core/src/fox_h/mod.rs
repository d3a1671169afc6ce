//! Fox H-function H^{m,n}_{p,q}: parameter checks, Δ classification, the two
//! residue expansions and Mellin–Barnes quadrature.
//!
//! Convention: H(z) = (1/2πi) ∫ Λ(s) z^{-s} ds with
//!
//! ```text
//! Λ(s) = Π_{j<m} Γ(b_j + B_j s) Π_{i<n} Γ(1 − a_i − A_i s)
//!      / (Π_{j≥m} Γ(1 − b_j − B_j s) Π_{i≥n} Γ(a_i + A_i s))
//! ```

mod mellin;
mod rays;
mod series;

pub use mellin::{
    eval_mellin_barnes, eval_mellin_barnes_default, MbOutcome, MellinBarnesPlan, DEFAULT_HALF_HEIGHT,
    DEFAULT_NODES,
};
pub use series::{
    eval_at_origin, eval_series_neg, eval_series_pos, neg_series_exponents, pos_series_exponents, series_neg_sum,
    series_pos_sum,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::special_functions::{complex::ln_gamma, is_gamma_pole};

/// Highest pole index examined by the coincidence checks.
pub const POLE_HORIZON: usize = 200;
const COINCIDE_TOL: f64 = 1e-12;
/// |Δ| at or below this is treated as zero.
pub const DELTA_ZERO_TOL: f64 = 1e-12;

/// Which poles of Λ collide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PoleFamily {
    /// Two left (b_j, B_j) poles with j < m.
    Left,
    /// Two right (a_i, A_i) poles with i < n.
    Right,
    /// A left pole on top of a right pole.
    LeftRight,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FoxHError {
    #[error("m out of range: m = {m}, q = {q} (need 1 <= m <= q)")]
    MOutOfRange { m: usize, q: usize },
    #[error("n out of range: n = {n}, p = {p} (need n <= p)")]
    NOutOfRange { n: usize, p: usize },
    #[error("nonpositive scale {value} in {side} pair {index}")]
    NonPositiveScale {
        side: &'static str,
        index: usize,
        value: f64,
    },
    #[error("non-finite H-function parameter")]
    NonFinite,
    #[error("coincident poles ({family:?}) near s = {s}")]
    CoincidentPoles { family: PoleFamily, s: f64 },
    #[error("series needs delta {expected}, got {delta}")]
    WrongDeltaSign { expected: &'static str, delta: f64 },
    #[error("argument must be positive, got z = {z}")]
    NonPositiveArgument { z: f64 },
    #[error("series stall after {terms} terms (partial sum {partial}, last term {last_term})")]
    SeriesStall {
        partial: f64,
        last_term: f64,
        terms: usize,
    },
    #[error("invalid contour Re(s) = {contour_re}: poles must satisfy left {left} < c < right {right}")]
    InvalidContour {
        contour_re: f64,
        left: f64,
        right: f64,
    },
    #[error("H-function unbounded at the origin (leading power z^{exponent})")]
    SingularAtOrigin { exponent: f64 },
    #[error("quadrature not converged: {reason}")]
    QuadratureNotConverged { reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeltaSign {
    PositiveDelta,
    NegativeDelta,
    ZeroDelta,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaClass {
    pub delta: f64,
    pub class: DeltaSign,
}

/// Parameters of H^{m,n}_{p,q}; `upper` holds (a_i, A_i), `lower` (b_j, B_j).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HParams {
    m: usize,
    n: usize,
    upper: Vec<(f64, f64)>,
    lower: Vec<(f64, f64)>,
}

impl HParams {
    /// Stores the parameters as given; see [`validate`] for the checks.
    pub fn new(m: usize, n: usize, upper: Vec<(f64, f64)>, lower: Vec<(f64, f64)>) -> Self {
        Self { m, n, upper, lower }
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> usize {
        self.upper.len()
    }
    pub fn q(&self) -> usize {
        self.lower.len()
    }
    pub fn upper(&self) -> &[(f64, f64)] {
        &self.upper
    }
    pub fn lower(&self) -> &[(f64, f64)] {
        &self.lower
    }

    /// Δ = Σ B_j − Σ A_i.
    pub fn delta(&self) -> f64 {
        self.lower.iter().map(|p| p.1).sum::<f64>() - self.upper.iter().map(|p| p.1).sum::<f64>()
    }

    /// Exponential decay rate a* of |Λ(c + iy)| ~ exp(−π a* |y| / 2).
    pub fn decay_rate(&self) -> f64 {
        let (m, n) = (self.m, self.n);
        self.lower[..m].iter().map(|p| p.1).sum::<f64>() - self.lower[m..].iter().map(|p| p.1).sum::<f64>()
            + self.upper[..n].iter().map(|p| p.1).sum::<f64>()
            - self.upper[n..].iter().map(|p| p.1).sum::<f64>()
    }

    /// Rightmost pole of the left family, max_j −b_j / B_j.
    pub fn left_edge(&self) -> f64 {
        self.lower[..self.m]
            .iter()
            .map(|&(b, bb)| -b / bb)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Leftmost pole of the right family, min_i (1 − a_i) / A_i, or +inf.
    pub fn right_edge(&self) -> f64 {
        self.upper[..self.n]
            .iter()
            .map(|&(a, aa)| (1.0 - a) / aa)
            .fold(f64::INFINITY, f64::min)
    }

    /// Same Λ with identical numerator/denominator Gamma factors cancelled.
    ///
    /// Γ(b + Bs) with j < m cancels against Γ(a + As) with i ≥ n, and
    /// Γ(1 − a − As) with i < n against Γ(1 − b − Bs) with j ≥ m. At least one
    /// left factor is always kept.
    pub fn reduced(&self) -> HParams {
        let same = |x: (f64, f64), y: (f64, f64)| (x.0 - y.0).abs() <= COINCIDE_TOL && (x.1 - y.1).abs() <= COINCIDE_TOL;
        let mut left: Vec<(f64, f64)> = self.lower[..self.m].to_vec();
        let mut bottom: Vec<(f64, f64)> = self.lower[self.m..].to_vec();
        let mut right: Vec<(f64, f64)> = self.upper[..self.n].to_vec();
        let mut top: Vec<(f64, f64)> = self.upper[self.n..].to_vec();
        let mut j = 0;
        while j < left.len() {
            match top.iter().position(|&a| same(a, left[j])) {
                Some(i) if left.len() > 1 => {
                    left.remove(j);
                    top.remove(i);
                }
                _ => j += 1,
            }
        }
        let mut i = 0;
        while i < right.len() {
            match bottom.iter().position(|&b| same(b, right[i])) {
                Some(k) => {
                    right.remove(i);
                    bottom.remove(k);
                }
                None => i += 1,
            }
        }
        let (m, n) = (left.len(), right.len());
        left.extend(bottom);
        right.extend(top);
        HParams::new(m, n, right, left)
    }

    /// ln Λ(s); `None` where a denominator Gamma has a pole (Λ = 0).
    pub(crate) fn ln_kernel(&self, s: Complex64) -> Option<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for &(b, bb) in &self.lower[..self.m] {
            acc += ln_gamma(s * bb + b);
        }
        for &(a, aa) in &self.upper[..self.n] {
            acc += ln_gamma(one - a - s * aa);
        }
        for &(b, bb) in &self.lower[self.m..] {
            let w = one - b - s * bb;
            if w.im == 0.0 && is_gamma_pole(w.re) {
                return None;
            }
            acc -= ln_gamma(w);
        }
        for &(a, aa) in &self.upper[self.n..] {
            let w = s * aa + a;
            if w.im == 0.0 && is_gamma_pole(w.re) {
                return None;
            }
            acc -= ln_gamma(w);
        }
        Some(acc)
    }
}

/// Order and scale checks shared by every evaluator.
pub fn validate_structure(params: &HParams) -> Result<(), FoxHError> {
    let (p, q) = (params.p(), params.q());
    if params.m < 1 || params.m > q {
        return Err(FoxHError::MOutOfRange { m: params.m, q });
    }
    if params.n > p {
        return Err(FoxHError::NOutOfRange { n: params.n, p });
    }
    for (side, list) in [("upper", &params.upper), ("lower", &params.lower)] {
        for (index, &(a, aa)) in list.iter().enumerate() {
            if !a.is_finite() || !aa.is_finite() {
                return Err(FoxHError::NonFinite);
            }
            if aa <= 0.0 {
                return Err(FoxHError::NonPositiveScale { side, index, value: aa });
            }
        }
    }
    Ok(())
}

fn near_index(x: f64) -> Option<usize> {
    let r = x.round();
    if r >= 0.0 && r <= POLE_HORIZON as f64 && (x - r).abs() <= COINCIDE_TOL * (1.0 + x.abs()) {
        Some(r as usize)
    } else {
        None
    }
}

/// Left family self-coincidence: −(b_i+k)/B_i = −(b_j+ℓ)/B_j.
fn check_left(params: &HParams) -> Result<(), FoxHError> {
    let left = &params.lower[..params.m];
    for (i, &(bi, bbi)) in left.iter().enumerate() {
        for &(bj, bbj) in &left[i + 1..] {
            for k in 0..=POLE_HORIZON {
                let s = -(bi + k as f64) / bbi;
                if near_index(-s * bbj - bj).is_some() {
                    return Err(FoxHError::CoincidentPoles {
                        family: PoleFamily::Left,
                        s,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Right family self-coincidence: (1−a_i+k)/A_i = (1−a_r+k')/A_r.
fn check_right(params: &HParams) -> Result<(), FoxHError> {
    let right = &params.upper[..params.n];
    for (i, &(ai, aai)) in right.iter().enumerate() {
        for &(ar, aar) in &right[i + 1..] {
            for k in 0..=POLE_HORIZON {
                let s = (1.0 - ai + k as f64) / aai;
                if near_index(s * aar - 1.0 + ar).is_some() {
                    return Err(FoxHError::CoincidentPoles {
                        family: PoleFamily::Right,
                        s,
                    });
                }
            }
        }
    }
    Ok(())
}

fn check_left_right(params: &HParams) -> Result<(), FoxHError> {
    for &(b, bb) in &params.lower[..params.m] {
        for &(a, aa) in &params.upper[..params.n] {
            for l in 0..=POLE_HORIZON {
                let s = -(b + l as f64) / bb;
                if near_index(s * aa - 1.0 + a).is_some() {
                    return Err(FoxHError::CoincidentPoles {
                        family: PoleFamily::LeftRight,
                        s,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Classifies Δ and checks the pole structure the matching residue theorem
/// needs: left poles simple for Δ > 0, right poles simple for Δ < 0, and the
/// two families disjoint in every case.
pub fn validate(params: &HParams) -> Result<DeltaClass, FoxHError> {
    validate_structure(params)?;
    check_left_right(params)?;
    let delta = params.delta();
    let class = if delta.abs() <= DELTA_ZERO_TOL {
        DeltaSign::ZeroDelta
    } else if delta > 0.0 {
        check_left(params)?;
        DeltaSign::PositiveDelta
    } else {
        check_right(params)?;
        DeltaSign::NegativeDelta
    };
    Ok(DeltaClass { delta, class })
}
