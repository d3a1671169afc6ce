//! Real Gamma machinery and Wright-type series.
//!
//! `gamma` uses a 14-term Lanczos approximation on a short base interval,
//! the product recurrence above it and the reflection formula below 1/2.
//! Every series with a Gamma in the denominator goes through [`rgamma`] so
//! that pole terms vanish instead of producing NaN.

pub(crate) mod complex;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fox_h::{HParams, MellinBarnesPlan};
use crate::summation::{sum_series, SeriesSum};

/// Arguments within this distance of a non-positive integer are poles.
pub const POLE_TOL: f64 = 1e-12;

/// Largest argument with a finite Gamma value.
pub const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// Term budget shared by all series in the crate.
pub const MAX_SERIES_TERMS: usize = 10_000;

pub(crate) const LANCZOS_G: f64 = 5.242_187_5;
pub(crate) const LANCZOS_SER0: f64 = 0.999_999_999_999_997_092;
pub(crate) const LANCZOS_COF: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
pub(crate) const SQRT_2PI: f64 = 2.506_628_274_631_000_5;
pub(crate) const LN_PI: f64 = 1.144_729_885_849_400_2;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("gamma overflow at x = {x} (limit sign {sign})")]
    GammaOverflow { x: f64, sign: f64 },
    #[error("argument is not finite")]
    NonFinite,
    #[error("divergent Wright series (a = {a} <= -1)")]
    DivergentWright { a: f64 },
    #[error("divergent generalized Wright series: {reason}")]
    DivergentGenWright { reason: String },
    #[error("pole of a numerator Gamma at term {k}")]
    NumeratorPole { k: usize },
    #[error("series stall after {terms} terms (partial sum {partial}, last term {last_term})")]
    SeriesStall {
        partial: f64,
        last_term: f64,
        terms: usize,
    },
}

/// Value of Γ(x), flagged at poles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaValue {
    pub value: f64,
    pub is_pole: bool,
}

impl GammaValue {
    /// 1/Γ(x), exactly 0 at a pole.
    pub fn recip(&self) -> f64 {
        if self.is_pole {
            0.0
        } else {
            1.0 / self.value
        }
    }
}

/// True when x is a non-positive integer within [`POLE_TOL`].
pub fn is_gamma_pole(x: f64) -> bool {
    x <= POLE_TOL && (x - x.round()).abs() <= POLE_TOL
}

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    let (sign, a) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    let a = if a > 0.5 { 1.0 - a } else { a };
    let s = if a <= 0.25 {
        (PI * a).sin()
    } else {
        (PI * (0.5 - a)).cos()
    };
    sign * s
}

/// cos(πx) with exact zeros at the half-integers.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(0.5 - x.abs())
}

fn lanczos_series(x: f64) -> f64 {
    let mut ser = LANCZOS_SER0;
    let mut y = x;
    for c in LANCZOS_COF {
        y += 1.0;
        ser += c / y;
    }
    ser
}

/// ln Γ(x) for x > 0 straight from the Lanczos sum.
fn lanczos_ln_gamma(x: f64) -> f64 {
    let tmp = x + LANCZOS_G;
    (x + 0.5) * tmp.ln() - tmp + (SQRT_2PI * lanczos_series(x) / x).ln()
}

fn lanczos_gamma(x: f64) -> f64 {
    let tmp = x + LANCZOS_G;
    tmp.powf(x + 0.5) * (-tmp).exp() * SQRT_2PI * lanczos_series(x) / x
}

fn factorial_table() -> &'static [f64; 171] {
    use std::sync::OnceLock;
    static TABLE: OnceLock<[f64; 171]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [1.0; 171];
        for i in 1..171 {
            t[i] = t[i - 1] * i as f64;
        }
        t
    })
}

/// n! as a float, +inf above 170.
pub fn factorial(n: usize) -> f64 {
    if n < 171 {
        factorial_table()[n]
    } else {
        f64::INFINITY
    }
}

/// Γ(x) for 0.5 <= x < GAMMA_MAX_ARG.
fn gamma_positive(x: f64) -> f64 {
    if x == x.floor() && x <= 171.0 {
        return factorial(x as usize - 1);
    }
    if x <= 2.5 {
        return lanczos_gamma(x);
    }
    let n = (x - 1.5).floor();
    let y = x - n;
    let mut g = lanczos_gamma(y);
    let mut f = y;
    for _ in 0..n as usize {
        g *= f;
        f += 1.0;
    }
    g
}

/// Γ(x) with Lanczos-grade accuracy and pole flagging.
///
/// # Examples
///
/// ```
/// use fracwave::special_functions::gamma;
/// let g = gamma(0.5).unwrap();
/// assert!((g.value - std::f64::consts::PI.sqrt()).abs() < 1e-15);
/// assert!(gamma(-2.0).unwrap().is_pole);
/// ```
pub fn gamma(x: f64) -> Result<GammaValue, SpecialError> {
    if !x.is_finite() {
        return Err(SpecialError::NonFinite);
    }
    if is_gamma_pole(x) {
        return Ok(GammaValue {
            value: f64::INFINITY,
            is_pole: true,
        });
    }
    if x >= 0.5 {
        if x >= GAMMA_MAX_ARG {
            return Err(SpecialError::GammaOverflow { x, sign: 1.0 });
        }
        return Ok(GammaValue {
            value: gamma_positive(x),
            is_pole: false,
        });
    }
    let s = sin_pi(x);
    let value = if 1.0 - x < GAMMA_MAX_ARG {
        PI / (s * gamma_positive(1.0 - x))
    } else {
        s.signum() * (LN_PI - s.abs().ln() - lanczos_ln_gamma(1.0 - x)).exp()
    };
    Ok(GammaValue {
        value,
        is_pole: false,
    })
}

/// 1/Γ(x); exactly 0 at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    if is_gamma_pole(x) {
        return 0.0;
    }
    if x >= GAMMA_MAX_ARG {
        return (-lanczos_ln_gamma(x)).exp();
    }
    match gamma(x) {
        Ok(g) => 1.0 / g.value,
        Err(_) => 0.0,
    }
}

/// (ln|Γ(x)|, sign Γ(x)); at a pole returns (+inf, 0).
pub fn ln_abs_gamma(x: f64) -> (f64, f64) {
    if is_gamma_pole(x) {
        return (f64::INFINITY, 0.0);
    }
    if x >= 0.5 {
        if x < 170.0 {
            return (gamma_positive(x).ln(), 1.0);
        }
        return (lanczos_ln_gamma(x), 1.0);
    }
    let s = sin_pi(x);
    let (lg, _) = ln_abs_gamma(1.0 - x);
    (LN_PI - s.abs().ln() - lg, s.signum())
}

/// Γ(1/2 − m) from the closed form (−4)^m m! √π / (2m)!, evaluated as the
/// running product √π Π_{j≤m} (−2/(2j−1)) so no factorial overflows.
pub fn gamma_half_minus(m: u32) -> f64 {
    let mut g = PI.sqrt();
    for j in 1..=m {
        g *= -2.0 / (2.0 * j as f64 - 1.0);
    }
    g
}

/// Cancellation ratio above which φ(a, b; −y), −1 < a < 0, is taken from
/// its Mellin–Barnes integral instead of the power series.
const WRIGHT_LOSS_LIMIT: f64 = 1e4;

/// Wright function φ(a, b; z) = Σ z^k / (k! Γ(ak + b)).
///
/// For −1 < a < 0 and z < 0 the alternating series cancels badly once |z|
/// grows; there φ(−ν, b; −y) = H^{1,0}_{1,1}[y | (b, ν); (0, 1)] is
/// integrated along a vertical contour instead.
pub fn wright_phi(a: f64, b: f64, z: f64) -> Result<f64, SpecialError> {
    let series = wright_phi_sum(a, b, z);
    let cancelling = match &series {
        Ok(s) => s.loss() > WRIGHT_LOSS_LIMIT,
        Err(SpecialError::SeriesStall { .. }) => true,
        Err(_) => false,
    };
    if a < 0.0 && z < 0.0 && cancelling {
        let params = HParams::new(1, 0, vec![(b, -a)], vec![(0.0, 1.0)]);
        if let Ok(v) = MellinBarnesPlan::new(&params).and_then(|plan| plan.value(-z)) {
            return Ok(v);
        }
    }
    series.map(|s| s.value)
}

/// As [`wright_phi`], keeping the series diagnostics.
pub fn wright_phi_sum(a: f64, b: f64, z: f64) -> Result<SeriesSum, SpecialError> {
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(SpecialError::NonFinite);
    }
    if a <= -1.0 {
        return Err(SpecialError::DivergentWright { a });
    }
    gen_wright_sum(&[], &[(b, a)], z)
}

/// Generalized Wright function ₚΨ_q.
///
/// `upper` holds (a_i, A_i) and `lower` (b_j, B_j); the sum is
/// Σ_k Π Γ(a_i + A_i k) / Π Γ(b_j + B_j k) · z^k / k!.
pub fn gen_wright(upper: &[(f64, f64)], lower: &[(f64, f64)], z: f64) -> Result<f64, SpecialError> {
    gen_wright_sum(upper, lower, z).map(|s| s.value)
}

/// As [`gen_wright`], keeping the series diagnostics.
pub fn gen_wright_sum(
    upper: &[(f64, f64)],
    lower: &[(f64, f64)],
    z: f64,
) -> Result<SeriesSum, SpecialError> {
    if !z.is_finite() || upper.iter().chain(lower).any(|&(a, b)| !a.is_finite() || !b.is_finite()) {
        return Err(SpecialError::NonFinite);
    }
    let kappa = 1.0 + lower.iter().map(|p| p.1).sum::<f64>() - upper.iter().map(|p| p.1).sum::<f64>();
    if kappa < -POLE_TOL {
        return Err(SpecialError::DivergentGenWright {
            reason: format!("convergence exponent {kappa} < 0"),
        });
    }
    if kappa.abs() <= POLE_TOL && z != 0.0 {
        let ln_rho = -upper
            .iter()
            .filter(|p| p.1 != 0.0)
            .map(|p| p.1 * p.1.abs().ln())
            .sum::<f64>()
            + lower
                .iter()
                .filter(|p| p.1 != 0.0)
                .map(|p| p.1 * p.1.abs().ln())
                .sum::<f64>();
        if z.abs().ln() >= ln_rho {
            return Err(SpecialError::DivergentGenWright {
                reason: format!("|z| = {} outside the radius {}", z.abs(), ln_rho.exp()),
            });
        }
    }

    let ln_z = z.abs().ln();
    let mut pole_at = None;
    let budget = if z == 0.0 { 1 } else { MAX_SERIES_TERMS };
    let mut sum = sum_series(budget, |k| {
        if pole_at.is_some() {
            return f64::NAN;
        }
        let kf = k as f64;
        let mut ln_t = 0.0;
        let mut sign = 1.0;
        for &(a, aa) in upper {
            let (lg, s) = ln_abs_gamma(a + aa * kf);
            if s == 0.0 {
                pole_at = Some(k);
                return f64::NAN;
            }
            ln_t += lg;
            sign *= s;
        }
        for &(b, bb) in lower {
            let (lg, s) = ln_abs_gamma(b + bb * kf);
            if s == 0.0 {
                return 0.0;
            }
            ln_t -= lg;
            sign *= s;
        }
        if k > 0 {
            if z == 0.0 {
                return 0.0;
            }
            ln_t += kf * ln_z - ln_abs_gamma(kf + 1.0).0;
            if z < 0.0 && k % 2 == 1 {
                sign = -sign;
            }
        }
        sign * ln_t.exp()
    });
    if let Some(k) = pole_at {
        return Err(SpecialError::NumeratorPole { k });
    }
    if z == 0.0 {
        sum.converged = true;
    }
    if !sum.converged {
        return Err(SpecialError::SeriesStall {
            partial: sum.value,
            last_term: sum.last_term,
            terms: sum.terms,
        });
    }
    Ok(sum)
}
