//! H-function parameter sets behind the solutions. Each builder returns the
//! H^{m,n}_{p,q} whose argument is |x|/T and whose prefactor is documented
//! alongside.

use crate::fox_h::HParams;

use super::Vertex;

/// General delta solution: u = μ/(βT) H^{2,1}_{3,3}[|x|/T], T = t^{α/β} v^{2/β}.
pub fn delta_params(alpha: f64, beta: f64) -> HParams {
    HParams::new(
        2,
        1,
        vec![((beta - 1.0) / beta, 1.0 / beta), (0.5, 0.5), ((beta - alpha) / beta, alpha / beta)],
        vec![(0.0, 1.0), ((beta - 1.0) / beta, 1.0 / beta), (0.5, 0.5)],
    )
}

/// β = 2: u = μ/(2T) H^{1,0}_{1,1}, the Wright function φ(−α/2, 1−α/2; −|x|/T).
pub fn segment_i_params(alpha: f64) -> HParams {
    HParams::new(1, 0, vec![((2.0 - alpha) / 2.0, alpha / 2.0)], vec![(0.0, 1.0)])
}

/// α = 2: u = μ/(βT) H^{2,1}_{3,3}, T = t^{2/β} v^{2/β}.
pub fn segment_ii_params(beta: f64) -> HParams {
    delta_params(2.0, beta)
}

/// β = 1: u = μ/T H^{2,1}_{3,3}, T = t^α v².
pub fn segment_iii_params(alpha: f64) -> HParams {
    HParams::new(
        2,
        1,
        vec![(0.0, 1.0), (0.5, 0.5), (1.0 - alpha, alpha)],
        vec![(0.0, 1.0), (0.0, 1.0), (0.5, 0.5)],
    )
}

/// α = 1: u = μ/(βT) H^{1,1}_{2,2}, T = t^{1/β} v^{2/β}.
pub fn segment_iv_params(beta: f64) -> HParams {
    HParams::new(
        1,
        1,
        vec![((beta - 1.0) / beta, 1.0 / beta), (0.5, 0.5)],
        vec![(0.0, 1.0), (0.5, 0.5)],
    )
}

/// α = β: u = μ/(βT) H^{1,1}_{2,2}, T = t v^{2/β}.
pub fn segment_v_params(beta: f64) -> HParams {
    HParams::new(
        1,
        1,
        vec![((beta - 1.0) / beta, 1.0 / beta), (0.5, 0.5)],
        vec![((beta - 1.0) / beta, 1.0 / beta), (0.5, 0.5)],
    )
}

/// Vertex forms: A μ/(2T) with T = √(kt); B μ/(2vt) (distributional);
/// C μ/(κt²) with T = κt²; D μ/(k₁t) with T = k₁t.
pub fn vertex_params(vertex: Vertex) -> HParams {
    match vertex {
        Vertex::A => HParams::new(1, 0, vec![(0.5, 0.5)], vec![(0.0, 1.0)]),
        Vertex::B => HParams::new(1, 0, vec![(0.0, 1.0)], vec![(0.0, 1.0)]),
        Vertex::C => HParams::new(
            2,
            1,
            vec![(0.0, 1.0), (0.5, 0.5), (-1.0, 2.0)],
            vec![(0.0, 1.0), (0.0, 1.0), (0.5, 0.5)],
        ),
        Vertex::D => HParams::new(1, 1, vec![(0.0, 1.0), (0.5, 0.5)], vec![(0.0, 1.0), (0.5, 0.5)]),
    }
}

/// k-th H-function of the Gaussian-disturbance series, argument |x|/T.
pub fn gaussian_theta_params(alpha: f64, beta: f64, k: usize) -> HParams {
    let r = 1.0 + 2.0 * k as f64;
    HParams::new(
        2,
        1,
        vec![
            ((beta - r) / beta, 1.0 / beta),
            (0.5, 0.5),
            ((beta - alpha * r) / beta, alpha / beta),
        ],
        vec![(0.0, 1.0), ((beta - r) / beta, 1.0 / beta), (0.5, 0.5)],
    )
}
