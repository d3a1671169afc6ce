//! Identity corpus: Gamma identities, closed-form H-functions and their
//! delta limits, and agreement between alternative solution forms.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::fox_h::{eval_at_origin, eval_mellin_barnes, HParams, MellinBarnesPlan};
use crate::quadrature::integrate;
use crate::solutions::{
    u_delta, u_gen_wright_form, u_segment, DeltaSolver, FracParams, GaussianIC, GaussianSolver, Segment,
    DEFAULT_K_MAX,
};
use crate::special_functions::{gamma, gamma_half_minus};

const SQRT_PI: f64 = 1.772_453_850_905_516;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationEntry {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Why the check could not be completed, or how it was carried out.
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub entries: Vec<ValidationEntry>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }

    pub fn entry(&self, name: &str) -> Option<&ValidationEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

type Check = fn() -> Result<f64, String>;

/// Names, tolerances and checks, in report order.
pub const IDENTITIES: &[(&str, f64, Check)] = &[
    ("gamma duplication", 1e-11, duplication),
    ("gamma half minus m", 1e-12, half_minus),
    ("cahen-mellin", 1e-6, cahen_mellin),
    ("wave vertex delta pair", 1e-3, wave_pair),
    ("gaussian h-function", 1e-8, gauss_h),
    ("gaussian h-function delta limit", 1e-3, gauss_h_limit),
    ("lorentzian h-function", 1e-8, lorentz_h),
    ("lorentzian h-function delta limit", 1e-4, lorentz_h_limit),
    ("diagonal series vs h-function", 1e-8, diagonal),
    ("wright form vs series", 1e-8, wright_form),
    ("gaussian to delta limit", 0.0, gaussian_limit),
];

fn note_for(name: &str) -> Option<String> {
    match name {
        "wave vertex delta pair" => Some("distributional: checked via limits".into()),
        "gaussian to delta limit" => Some("error is the largest increase of the sup gap as x0 shrinks".into()),
        _ => None,
    }
}

/// Runs the named checks, or all of them for an empty list. Unknown names
/// are reported as failed entries.
pub fn run_identities(names: &[&str]) -> ValidationReport {
    let picked: Vec<&str> = if names.is_empty() {
        IDENTITIES.iter().map(|(n, _, _)| *n).collect()
    } else {
        names.to_vec()
    };
    let entries = picked
        .into_iter()
        .map(|name| match IDENTITIES.iter().find(|(n, _, _)| *n == name) {
            None => ValidationEntry {
                name: name.into(),
                max_error: f64::INFINITY,
                tolerance: 0.0,
                passed: false,
                note: Some("unknown identity".into()),
            },
            Some(&(_, tolerance, check)) => match check() {
                Ok(max_error) => ValidationEntry {
                    name: name.into(),
                    max_error,
                    tolerance,
                    passed: max_error <= tolerance,
                    note: note_for(name),
                },
                Err(why) => ValidationEntry {
                    name: name.into(),
                    max_error: f64::INFINITY,
                    tolerance,
                    passed: false,
                    note: Some(why),
                },
            },
        })
        .collect();
    ValidationReport { entries }
}

/// Equidistributed points in (lo, hi), golden-ratio stride.
fn spread(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let g = 0.618_033_988_749_894_9;
    (1..=n).map(move |k| lo + (hi - lo) * (k as f64 * g).fract())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn gamma_value(x: f64) -> Result<f64, String> {
    gamma(x).map(|g| g.value).map_err(|e| e.to_string())
}

fn duplication() -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for z in spread(0.0, 20.0, 200) {
        let lhs = gamma_value(z)? * gamma_value(z + 0.5)?;
        let g2 = gamma_value(2.0 * z)?;
        let rhs = 2f64.powf(1.0 - 2.0 * z) * SQRT_PI * g2;
        worst = worst.max((lhs - rhs).abs() / g2);
    }
    Ok(worst)
}

fn half_minus() -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for m in 0..=30u32 {
        worst = worst.max(rel(gamma_half_minus(m), gamma_value(0.5 - m as f64)?));
    }
    Ok(worst)
}

fn cahen_mellin() -> Result<f64, String> {
    let p = HParams::new(1, 0, vec![], vec![(0.0, 1.0)]);
    let mut worst: f64 = 0.0;
    for y in [0.5, 1.0, 2.0] {
        let v = eval_mellin_barnes(&p, y, 1.0, 60.0, 4001).map_err(|e| e.to_string())?;
        worst = worst.max(rel(v, (-y).exp()));
    }
    Ok(worst)
}

/// Half the mass sits within 1/2 of x = vt as α → 2 along β = 2.
fn wave_pair() -> Result<f64, String> {
    let mut last = 0.0;
    for a in [1.99, 1.999] {
        let solver = DeltaSolver::new(FracParams::new(a, 2.0, 1.0, 1.0).map_err(|e| e.to_string())?);
        let w = mass(|x| solver.eval(x, 1.0).map(|v| v.value).map_err(|e| e.to_string()), 0.5, 1.5)?;
        if w < last {
            return Err(format!("weight near x = vt fell from {last} to {w}"));
        }
        last = w;
    }
    Ok((last - 0.5).abs())
}

fn gauss_params() -> HParams {
    HParams::new(1, 0, vec![(0.5, 0.5)], vec![(0.0, 1.0)])
}

fn lorentz_params() -> HParams {
    HParams::new(1, 1, vec![(0.0, 1.0), (0.5, 0.5)], vec![(0.0, 1.0), (0.5, 0.5)])
}

/// Largest deviation on z ∈ [0, 10] relative to the peak 1/√π; the tail
/// falls to e^{-25} and carries no relative digits.
fn gauss_h() -> Result<f64, String> {
    let p = gauss_params();
    let plan = MellinBarnesPlan::new(&p).map_err(|e| e.to_string())?;
    let mut worst = (eval_at_origin(&p).map_err(|e| e.to_string())? * SQRT_PI - 1.0).abs();
    for k in 1..=100 {
        let z = 0.1 * k as f64;
        let exact = (-z * z / 4.0).exp() / SQRT_PI;
        let h = plan.value(z).map_err(|e| e.to_string())?;
        worst = worst.max((h - exact).abs() * SQRT_PI);
    }
    Ok(worst)
}

/// ∫ f over [lo, hi], failing on the first evaluation error.
fn mass<F: Fn(f64) -> Result<f64, String>>(f: F, lo: f64, hi: f64) -> Result<f64, String> {
    let mut err = None;
    let q = integrate(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                0.0
            }
        },
        lo,
        hi,
        1e-12,
        1e-10,
        4000,
    );
    if let Some(e) = err {
        return Err(e);
    }
    if !q.converged {
        return Err(format!("quadrature over [{lo}, {hi}] did not converge"));
    }
    Ok(q.value)
}

/// (1/2γ) H[|x|/γ] carries unit weight on [−0.1, 0.1] as γ → 0.
fn gauss_h_limit() -> Result<f64, String> {
    let plan = MellinBarnesPlan::new(&gauss_params()).map_err(|e| e.to_string())?;
    let mut last = 0.0;
    for g in [1e-1, 1e-2] {
        let f = |x: f64| {
            if x == 0.0 {
                return Ok(1.0 / (2.0 * g * SQRT_PI));
            }
            plan.value(x / g).map(|h| h / (2.0 * g)).map_err(|e| e.to_string())
        };
        let w = 2.0 * mass(f, 0.0, 0.1)?;
        if w < last {
            return Err(format!("weight fell from {last} to {w} at gamma = {g}"));
        }
        last = w;
    }
    Ok((last - 1.0).abs())
}

fn lorentz_h() -> Result<f64, String> {
    let p = lorentz_params();
    let plan = MellinBarnesPlan::new(&p).map_err(|e| e.to_string())?;
    let mut worst = rel(eval_at_origin(&p).map_err(|e| e.to_string())?, 1.0 / PI);
    for k in 1..=100 {
        let z = 0.1 * k as f64;
        let h = plan.value(z).map_err(|e| e.to_string())?;
        worst = worst.max(rel(h, 1.0 / (PI * (1.0 + z * z))));
    }
    Ok(worst)
}

/// γ⁻¹ H[|z|/γ] has unit mass over ℝ for every γ.
fn lorentz_h_limit() -> Result<f64, String> {
    let p = lorentz_params();
    let plan = MellinBarnesPlan::new(&p).map_err(|e| e.to_string())?;
    let origin = eval_at_origin(&p).map_err(|e| e.to_string())?;
    let h = |w: f64| {
        if w == 0.0 {
            Ok(origin)
        } else {
            plan.value(w).map_err(|e| e.to_string())
        }
    };
    let mut worst: f64 = 0.0;
    for g in [1.0, 0.1, 0.01] {
        // [0, 10γ] directly, the tail through z = 10γ/s; H[w] is dropped
        // past w = 1e12 where what remains is below 1e-12
        let inner = mass(|z| h(z / g).map(|v| v / g), 0.0, 10.0 * g)?;
        let outer = mass(
            |s| {
                if s < 1e-11 {
                    return Ok(0.0);
                }
                let z = 10.0 * g / s;
                h(z / g).map(|v| v / g * 10.0 * g / (s * s))
            },
            0.0,
            1.0,
        )?;
        worst = worst.max((2.0 * (inner + outer) - 1.0).abs());
    }
    Ok(worst)
}

fn unit(a: f64, b: f64) -> Result<FracParams, String> {
    FracParams::new(a, b, 1.0, 1.0).map_err(|e| e.to_string())
}

fn diagonal() -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for b in [1.2, 1.5, 1.8] {
        let p = unit(b, b)?;
        for x in [0.5, 1.0, 2.0] {
            let s = u_delta(&p, x, 1.0).map_err(|e| e.to_string())?.value;
            let h = u_segment(Segment::V, &p, x, 1.0).map_err(|e| e.to_string())?.value;
            worst = worst.max(rel(h, s));
        }
    }
    Ok(worst)
}

fn wright_form() -> Result<f64, String> {
    let mut worst: f64 = 0.0;
    for (a, b) in [(1.8, 1.2), (1.6, 1.1), (2.0, 1.0)] {
        let p = unit(a, b)?;
        for x in [1.0, 2.0, 3.0, 5.0, 8.0] {
            for t in [0.2, 0.4, 0.6, 0.8, 1.0] {
                let s = u_delta(&p, x, t).map_err(|e| e.to_string())?.value;
                let w = u_gen_wright_form(&p, x, t).map_err(|e| e.to_string())?;
                worst = worst.max(rel(w, s));
            }
        }
    }
    Ok(worst)
}

/// Widths of the Gaussian disturbance for the limit check.
pub const GAUSSIAN_WIDTHS: [f64; 4] = [1.0, 0.3, 0.1, 0.03];

/// sup over x ∈ [−3, 3] of |u_gaussian − u_delta| at (1.5, 1.8), t = 1, for
/// each width in [`GAUSSIAN_WIDTHS`].
pub fn gaussian_gaps() -> Result<Vec<f64>, String> {
    let p = unit(1.5, 1.8)?;
    let delta = DeltaSolver::new(p);
    // 0.025 spacing, the origin included
    let xs: Vec<f64> = (0..=240).map(|i| -3.0 + 0.025 * i as f64).collect();
    let reference: Vec<f64> = xs
        .iter()
        .map(|&x| delta.eval(x, 1.0).map(|v| v.value))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    GAUSSIAN_WIDTHS
        .iter()
        .map(|&x0| {
            let g = GaussianSolver::new(p, GaussianIC::new(x0).map_err(|e| e.to_string())?);
            xs.iter().zip(&reference).try_fold(0.0f64, |m, (&x, &d)| {
                let u = g.eval(x, 1.0, DEFAULT_K_MAX).map_err(|e| e.to_string())?.value;
                Ok(m.max((u - d).abs()))
            })
        })
        .collect()
}

fn gaussian_limit() -> Result<f64, String> {
    let gaps = gaussian_gaps()?;
    Ok(gaps.windows(2).map(|w| (w[1] - w[0]).max(0.0)).fold(0.0, f64::max))
}
