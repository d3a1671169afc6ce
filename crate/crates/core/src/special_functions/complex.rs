//! Complex log-Gamma for vertical Mellin–Barnes contours.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{LANCZOS_COF, LANCZOS_G, LANCZOS_SER0, LN_PI, SQRT_2PI};

/// ln Γ(z) on some branch; only `exp` of the result is meaningful.
pub(crate) fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let w = Complex64::new(1.0, 0.0) - z;
        return Complex64::new(LN_PI, 0.0) - ln_sin_pi(z) - ln_gamma(w);
    }
    let mut ser = Complex64::new(LANCZOS_SER0, 0.0);
    let mut y = z;
    for c in LANCZOS_COF {
        y += 1.0;
        ser += c / y;
    }
    let tmp = z + LANCZOS_G;
    (z + 0.5) * tmp.ln() - tmp + (ser * SQRT_2PI / z).ln()
}

/// ln sin(πz), stable for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let re = z.re - 2.0 * (0.5 * z.re).round();
    let z = Complex64::new(re, z.im);
    let i = Complex64::i();
    if z.im > 1.0 {
        // sin πz = e^{-iπz} (1 − e^{2iπz}) · i/2
        let w = (2.0 * PI * i * z).exp();
        -i * PI * z + (i * 0.5).ln() + (Complex64::new(1.0, 0.0) - w).ln()
    } else if z.im < -1.0 {
        let w = (-2.0 * PI * i * z).exp();
        i * PI * z + (-i * 0.5).ln() + (Complex64::new(1.0, 0.0) - w).ln()
    } else {
        (z * PI).sin().ln()
    }
}
