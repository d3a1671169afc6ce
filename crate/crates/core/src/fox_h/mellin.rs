//! Mellin–Barnes quadrature along vertical lines Re(s) = c.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::rays::Rays;
use super::{validate_structure, FoxHError, HParams};

pub const DEFAULT_HALF_HEIGHT: f64 = 60.0;
pub const DEFAULT_NODES: usize = 4001;
const IMAG_TOL: f64 = 1e-8;
const TAIL_TOL: f64 = 1e-10;

fn separation(params: &HParams) -> Result<(f64, f64), FoxHError> {
    validate_structure(params)?;
    let (l, r) = (params.left_edge(), params.right_edge());
    if !(l < r) {
        return Err(FoxHError::InvalidContour {
            contour_re: f64::NAN,
            left: l,
            right: r,
        });
    }
    Ok((l, r))
}

fn kernel(params: &HParams, s: Complex64) -> Complex64 {
    params.ln_kernel(s).map_or(Complex64::new(0.0, 0.0), |l| l.exp())
}

/// Plain trapezoid rule on y ∈ [−half_height, half_height] at Re(s) = contour_re.
pub fn eval_mellin_barnes(
    params: &HParams,
    z: f64,
    contour_re: f64,
    half_height: f64,
    n_nodes: usize,
) -> Result<f64, FoxHError> {
    let (left, right) = separation(params)?;
    if !(contour_re > left && contour_re < right) {
        return Err(FoxHError::InvalidContour {
            contour_re,
            left,
            right,
        });
    }
    if !(z > 0.0) || !z.is_finite() {
        return Err(FoxHError::NonPositiveArgument { z });
    }
    if n_nodes < 3 || !(half_height > 0.0) {
        return Err(FoxHError::QuadratureNotConverged {
            reason: format!("degenerate grid ({n_nodes} nodes, half height {half_height})"),
        });
    }
    let ln_z = z.ln();
    let h = 2.0 * half_height / (n_nodes - 1) as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut peak: f64 = 0.0;
    let mut edge: f64 = 0.0;
    for k in 0..n_nodes {
        let y = -half_height + k as f64 * h;
        let s = Complex64::new(contour_re, y);
        let f = kernel(params, s) * (-s * ln_z).exp();
        let w = if k == 0 || k == n_nodes - 1 { 0.5 } else { 1.0 };
        sum += f * w;
        peak = peak.max(f.norm());
        if k == 0 || k == n_nodes - 1 {
            edge = edge.max(f.norm());
        }
    }
    let v = sum * (h / (2.0 * PI));
    if edge > TAIL_TOL * peak {
        return Err(FoxHError::QuadratureNotConverged {
            reason: format!("integrand at |Im s| = {half_height} is {:.3e} of its peak", edge / peak),
        });
    }
    if v.im.abs() > IMAG_TOL * v.re.abs().max(1.0) {
        return Err(FoxHError::QuadratureNotConverged {
            reason: format!("imaginary residue {:.3e}", v.im),
        });
    }
    Ok(v.re)
}

/// Trapezoid rule with the default contour (gap midpoint, or half a unit
/// right of the left poles when there are no right poles), height and nodes.
pub fn eval_mellin_barnes_default(params: &HParams, z: f64) -> Result<f64, FoxHError> {
    let (l, r) = separation(params)?;
    let c = if r.is_finite() { 0.5 * (l + r) } else { l + 0.5 };
    eval_mellin_barnes(params, z, c, DEFAULT_HALF_HEIGHT, DEFAULT_NODES)
}

/// Result of an adaptive Mellin–Barnes evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MbOutcome {
    pub value: f64,
    /// Conservative absolute error bound (discretization plus rounding).
    pub error: f64,
    pub contour_re: f64,
    pub nodes: usize,
}

/// Samples of Λ on one contour, reused for every argument z.
struct Kernel {
    c: f64,
    h: f64,
    /// Λ(c + i k h) for k = 0..len.
    values: Vec<Complex64>,
    abs_mass: f64,
}

const KERNEL_REL_FLOOR: f64 = 1e-17;
const KERNEL_QUIET: usize = 64;
const KERNEL_MAX_NODES: usize = 2_000_000;
const RESYNC: usize = 64;

impl Kernel {
    fn build(params: &HParams, c: f64, d: f64) -> Result<Self, FoxHError> {
        let h = (0.1 * d).min(0.1);
        let mut values = Vec::with_capacity(1024);
        let mut peak: f64 = 0.0;
        let mut quiet = 0;
        let mut abs_mass = 0.0;
        for k in 0..KERNEL_MAX_NODES {
            let v = kernel(params, Complex64::new(c, k as f64 * h));
            let a = v.norm();
            if !a.is_finite() {
                return Err(FoxHError::QuadratureNotConverged {
                    reason: format!("kernel overflow at Im s = {}", k as f64 * h),
                });
            }
            peak = peak.max(a);
            abs_mass += if k == 0 { a } else { 2.0 * a };
            values.push(v);
            if a < KERNEL_REL_FLOOR * peak {
                quiet += 1;
                if quiet >= KERNEL_QUIET && k as f64 * h > 1.0 {
                    return Ok(Self {
                        c,
                        h,
                        values,
                        abs_mass: abs_mass * h / (2.0 * PI),
                    });
                }
            } else {
                quiet = 0;
            }
        }
        Err(FoxHError::QuadratureNotConverged {
            reason: format!("kernel not decayed after {KERNEL_MAX_NODES} nodes at Re s = {c}"),
        })
    }

    /// Returns (sum with step h, sum with step 2h), both without z^{-c}.
    fn sums(&self, ln_z: f64) -> (f64, f64) {
        let step = Complex64::from_polar(1.0, -self.h * ln_z);
        let mut rot = Complex64::new(1.0, 0.0);
        let (mut even, mut odd) = (0.0, 0.0);
        for (k, v) in self.values.iter().enumerate().skip(1) {
            if k % RESYNC == 0 {
                rot = Complex64::from_polar(1.0, -(k as f64) * self.h * ln_z);
            } else {
                rot *= step;
            }
            let t = (v * rot).re;
            if k % 2 == 0 {
                even += t;
            } else {
                odd += t;
            }
        }
        let v0 = self.values[0].re;
        let fine = (v0 + 2.0 * (even + odd)) * self.h / (2.0 * PI);
        let coarse = (v0 + 2.0 * even) * 2.0 * self.h / (2.0 * PI);
        (fine, coarse)
    }
}

struct Candidate {
    c: f64,
    d: f64,
    /// ln |Λ(c + i/2)|, a cheap stand-in for the kernel mass.
    proxy: f64,
    kernel: OnceLock<Result<Kernel, FoxHError>>,
}

/// Below this a* a Δ < 0 kernel is integrated along the loop contour.
const LOOP_A_STAR: f64 = 0.02;

/// Adaptive Mellin–Barnes evaluator for one parameter set.
///
/// A handful of contours across the separation gap are prepared lazily. For
/// each z the contour with the smallest z^{-c}·|Λ| scale is used; its kernel
/// is tabulated once with a step small against the distance to the nearest
/// pole and a height at which |Λ| has decayed by 17 orders of magnitude.
///
/// When Δ < 0 and |Λ| decays slowly or not at all on vertical lines, the
/// integral is taken along rays c + (κ ± i)τ first, falling back to the
/// vertical contours when those rays do not decay in time. For faster
/// vertical decay the rays are the fallback instead.
pub struct MellinBarnesPlan {
    params: HParams,
    candidates: Vec<Candidate>,
    rays: Option<Rays>,
    rays_first: bool,
}

impl MellinBarnesPlan {
    pub fn new(params: &HParams) -> Result<Self, FoxHError> {
        let (l, r) = separation(params)?;
        let a_star = params.decay_rate();
        let rays = if params.delta() < -1e-12 && r.is_finite() {
            Some(Rays::new(params, l, r)?)
        } else {
            None
        };
        if a_star <= 1e-12 {
            return match rays {
                Some(rays) => Ok(Self {
                    params: params.clone(),
                    candidates: Vec::new(),
                    rays: Some(rays),
                    rays_first: true,
                }),
                None => Err(FoxHError::QuadratureNotConverged {
                    reason: format!("kernel does not decay on vertical lines (a* = {a_star})"),
                }),
            };
        }
        let spots: Vec<(f64, f64)> = if r.is_finite() {
            let w = r - l;
            [0.15, 0.5, 0.85]
                .iter()
                .map(|f| {
                    let c = l + f * w;
                    (c, (c - l).min(r - c))
                })
                .collect()
        } else {
            [0.15, 0.5, 1.0, 2.0, 4.0, 8.0].iter().map(|&o| (l + o, o)).collect()
        };
        let candidates = spots
            .into_iter()
            .map(|(c, d)| {
                let v = kernel(params, Complex64::new(c, 0.5)).norm();
                Candidate {
                    c,
                    d,
                    proxy: v.max(f64::MIN_POSITIVE).ln(),
                    kernel: OnceLock::new(),
                }
            })
            .collect();
        let rays_first = a_star < LOOP_A_STAR && rays.is_some();
        Ok(Self {
            params: params.clone(),
            candidates,
            rays,
            rays_first,
        })
    }

    pub fn params(&self) -> &HParams {
        &self.params
    }

    fn pick(&self, ln_z: f64) -> &Candidate {
        self.candidates
            .iter()
            .min_by(|a, b| (a.proxy - a.c * ln_z).total_cmp(&(b.proxy - b.c * ln_z)))
            .expect("at least one contour")
    }

    /// H(z) for z > 0.
    pub fn evaluate(&self, z: f64) -> Result<MbOutcome, FoxHError> {
        if !(z > 0.0) || !z.is_finite() {
            return Err(FoxHError::NonPositiveArgument { z });
        }
        match (&self.rays, self.rays_first) {
            (Some(rays), true) => match self.on_rays(rays, z) {
                Ok(o) => Ok(o),
                Err(e) if self.candidates.is_empty() => Err(e),
                Err(_) => self.vertical(z),
            },
            (Some(rays), false) => self.vertical(z).or_else(|e| self.on_rays(rays, z).map_err(|_| e)),
            (None, _) => self.vertical(z),
        }
    }

    fn on_rays(&self, rays: &Rays, z: f64) -> Result<MbOutcome, FoxHError> {
        rays.evaluate(z).map(|o| MbOutcome {
            value: o.value,
            error: o.error,
            contour_re: rays.contour_re(),
            nodes: o.nodes,
        })
    }

    fn vertical(&self, z: f64) -> Result<MbOutcome, FoxHError> {
        let ln_z = z.ln();
        let cand = self.pick(ln_z);
        let k = cand
            .kernel
            .get_or_init(|| Kernel::build(&self.params, cand.c, cand.d))
            .as_ref()
            .map_err(Clone::clone)?;
        let (fine, coarse) = k.sums(ln_z);
        let scale = (-k.c * ln_z).exp();
        let value = fine * scale;
        let rounding = 1e-15 * k.abs_mass * scale * (k.values.len() as f64).sqrt();
        let error = (fine - coarse).abs() * scale + rounding;
        if !value.is_finite() {
            return Err(FoxHError::QuadratureNotConverged {
                reason: format!("non-finite result at z = {z}"),
            });
        }
        Ok(MbOutcome {
            value,
            error,
            contour_re: k.c,
            nodes: 2 * k.values.len() - 1,
        })
    }

    pub fn value(&self, z: f64) -> Result<f64, FoxHError> {
        self.evaluate(z).map(|o| o.value)
    }
}
