//! Mellin–Barnes integral on the loop s = c + (κ ± i)τ, τ ≥ 0, that opens
//! to the right around the right poles. For Δ < 0 the kernel decays along
//! these rays like τ^{Δκτ} even when it does not decay on vertical lines.

use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

use num_complex::Complex64;

use super::{FoxHError, HParams};
use crate::quadrature::gauss_legendre;

const GL_ORDER: usize = 16;
/// Panel width times local angular frequency.
const PHASE_PER_PANEL: f64 = 3.0;
/// Frequency allowance for the z^{-s} factor; covers |ln z| up to this.
const LN_Z_ALLOWANCE: f64 = 8.0;
/// The integrand is dropped once it falls this far (in ln) below its peak.
const LN_DROP: f64 = 40.0;
const QUIET_PANELS: usize = 4;
const MAX_NODES: usize = 4_000_000;
/// Ray slopes tried, κ = 4^{-j}.
const SLOPES: usize = 8;
/// Cancellation (∫|F| / |H|) accepted without trying a flatter ray.
const ACCEPT_LOSS: f64 = 1e3;

struct Table {
    tau: Vec<f64>,
    weight: Vec<f64>,
    /// ln Λ at the nodes; real part −inf where Λ vanishes.
    ln_lam: Vec<Complex64>,
    /// First node index of each panel.
    panel_start: Vec<usize>,
    end: f64,
}

struct Ray {
    kappa: f64,
    table: RwLock<Table>,
}

pub(super) struct Rays {
    params: HParams,
    c: f64,
    /// Distance from c to the nearest pole.
    d: f64,
    rule: (Vec<f64>, Vec<f64>),
    rays: Vec<OnceLock<Ray>>,
}

pub(super) struct RayOutcome {
    pub value: f64,
    pub error: f64,
    pub nodes: usize,
}

impl Rays {
    pub(super) fn new(params: &HParams, left: f64, right: f64) -> Result<Self, FoxHError> {
        if params.delta() >= 0.0 || !right.is_finite() {
            return Err(FoxHError::QuadratureNotConverged {
                reason: format!("loop contour needs delta < 0 and right poles (delta = {})", params.delta()),
            });
        }
        let c = 0.5 * (left + right);
        Ok(Self {
            params: params.clone(),
            c,
            d: 0.5 * (right - left),
            rule: gauss_legendre(GL_ORDER),
            rays: (0..SLOPES).map(|_| OnceLock::new()).collect(),
        })
    }

    pub(super) fn contour_re(&self) -> f64 {
        self.c
    }

    fn s(&self, kappa: f64, tau: f64) -> Complex64 {
        Complex64::new(self.c + kappa * tau, tau)
    }

    fn ln_lam(&self, s: Complex64) -> Complex64 {
        self.params
            .ln_kernel(s)
            .unwrap_or(Complex64::new(f64::NEG_INFINITY, 0.0))
    }

    fn extend(&self, kappa: f64, t: &mut Table, until: f64) -> Result<(), FoxHError> {
        let (x, w) = &self.rule;
        while t.end < until {
            if t.tau.len() >= MAX_NODES {
                return Err(FoxHError::QuadratureNotConverged {
                    reason: format!("loop contour not decayed after {MAX_NODES} nodes (kappa = {kappa})"),
                });
            }
            let a = t.end;
            let eps = 1e-4;
            let l0 = self.ln_lam(self.s(kappa, a));
            let l1 = self.ln_lam(self.s(kappa, a + eps));
            let dphi = (l1.im - l0.im + PI).rem_euclid(2.0 * PI) - PI;
            let omega = if l0.re.is_finite() && l1.re.is_finite() {
                dphi.abs() / eps
            } else {
                0.0
            };
            let width = (PHASE_PER_PANEL / (omega + LN_Z_ALLOWANCE)).min(0.5 * self.d).min(1.0);
            let half = 0.5 * width;
            t.panel_start.push(t.tau.len());
            for (xi, wi) in x.iter().zip(w) {
                let tau = a + half * (xi + 1.0);
                t.tau.push(tau);
                t.weight.push(half * wi);
                t.ln_lam.push(self.ln_lam(self.s(kappa, tau)));
            }
            t.end = a + width;
        }
        Ok(())
    }

    fn ray(&self, j: usize) -> &Ray {
        self.rays[j].get_or_init(|| Ray {
            kappa: 0.25f64.powi(j as i32),
            table: RwLock::new(Table {
                tau: Vec::new(),
                weight: Vec::new(),
                ln_lam: Vec::new(),
                panel_start: Vec::new(),
                end: 0.0,
            }),
        })
    }

    /// Integral along ray j: (value, ∫|F|, nodes used).
    fn along(&self, j: usize, ln_z: f64) -> Result<(f64, f64, usize), FoxHError> {
        let ray = self.ray(j);
        let kappa = ray.kappa;
        let dir = Complex64::new(kappa, 1.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut mass = 0.0;
        let mut peak = f64::NEG_INFINITY;
        let mut quiet = 0;
        let mut panel = 0;
        loop {
            {
                let t = ray.table.read().expect("ray table lock");
                while panel < t.panel_start.len() {
                    let lo = t.panel_start[panel];
                    let hi = t.panel_start.get(panel + 1).copied().unwrap_or(t.tau.len());
                    let mut top = f64::NEG_INFINITY;
                    for k in lo..hi {
                        let s = self.s(kappa, t.tau[k]);
                        let l = t.ln_lam[k] - s * ln_z;
                        top = top.max(l.re);
                        if l.re.is_finite() {
                            let f = l.exp() * dir * t.weight[k];
                            acc += f;
                            mass += f.norm();
                        }
                    }
                    peak = peak.max(top);
                    panel += 1;
                    if top < peak - LN_DROP && t.tau[hi - 1] > 1.0 {
                        quiet += 1;
                        if quiet >= QUIET_PANELS {
                            return Ok((acc.im / PI, mass / PI, hi));
                        }
                    } else {
                        quiet = 0;
                    }
                }
            }
            let mut t = ray.table.write().expect("ray table lock");
            let until = (2.0 * t.end).max(4.0);
            self.extend(kappa, &mut t, until)?;
        }
    }

    pub(super) fn evaluate(&self, z: f64) -> Result<RayOutcome, FoxHError> {
        let ln_z = z.ln();
        if ln_z.abs() > LN_Z_ALLOWANCE {
            return Err(FoxHError::QuadratureNotConverged {
                reason: format!("loop contour panels do not resolve z = {z}"),
            });
        }
        let mut best: Option<RayOutcome> = None;
        let mut last_err = None;
        let mut last_mass = f64::INFINITY;
        for j in 0..SLOPES {
            match self.along(j, ln_z) {
                Ok((value, mass, nodes)) => {
                    let error = 1e-15 * mass * (nodes as f64).sqrt();
                    let better = best.as_ref().map_or(true, |b| error < b.error);
                    if better {
                        best = Some(RayOutcome { value, error, nodes });
                    }
                    // a flatter ray only pays off while it sheds mass; near a
                    // zero of H the ratio to the value says nothing
                    if mass <= ACCEPT_LOSS * value.abs() || mass > 0.5 * last_mass {
                        break;
                    }
                    last_mass = mass;
                }
                Err(e) => {
                    last_err = Some(e);
                    break;
                }
            }
        }
        best.ok_or_else(|| last_err.expect("at least one ray tried"))
    }
}
