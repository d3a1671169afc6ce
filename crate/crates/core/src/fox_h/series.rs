//! Residue expansions: left poles for Δ > 0, right poles for Δ < 0.

use super::{validate, validate_structure, DeltaSign, FoxHError, HParams};
use crate::special_functions::{ln_abs_gamma, MAX_SERIES_TERMS};
use crate::summation::{sum_series, CompensatedSum, SeriesSum};

/// A residue coefficient in log form, multiplying z^exponent.
#[derive(Debug, Clone, Copy)]
struct Residue {
    exponent: f64,
    ln_abs: f64,
    sign: f64,
}

impl Residue {
    fn at(&self, ln_z: f64) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * (self.ln_abs + self.exponent * ln_z).exp()
        }
    }
}

struct Factors {
    ln_abs: f64,
    sign: f64,
}

impl Factors {
    fn new(ln_abs: f64, sign: f64) -> Self {
        Self { ln_abs, sign }
    }

    fn mul_gamma(&mut self, x: f64) {
        let (lg, s) = ln_abs_gamma(x);
        self.ln_abs += lg;
        self.sign *= s;
    }

    fn div_gamma(&mut self, x: f64) {
        let (lg, s) = ln_abs_gamma(x);
        if s == 0.0 {
            self.sign = 0.0;
        } else {
            self.ln_abs -= lg;
            self.sign *= s;
        }
    }
}

/// Residue of Λ(s) z^{-s} at the ℓ-th pole of Γ(b_j + B_j s).
fn left_residue(p: &HParams, j: usize, l: usize) -> Residue {
    let (bj, bbj) = p.lower[j];
    let s0 = -(bj + l as f64) / bbj;
    let lf = ln_abs_gamma(l as f64 + 1.0).0;
    let mut f = Factors::new(-lf - bbj.ln(), if l % 2 == 0 { 1.0 } else { -1.0 });
    for (i, &(b, bb)) in p.lower[..p.m].iter().enumerate() {
        if i != j {
            f.mul_gamma(b + bb * s0);
        }
    }
    for &(a, aa) in &p.upper[..p.n] {
        f.mul_gamma(1.0 - a - aa * s0);
    }
    for &(b, bb) in &p.lower[p.m..] {
        f.div_gamma(1.0 - b - bb * s0);
    }
    for &(a, aa) in &p.upper[p.n..] {
        f.div_gamma(a + aa * s0);
    }
    Residue {
        exponent: -s0,
        ln_abs: f.ln_abs,
        sign: f.sign,
    }
}

/// Minus the residue of Λ(s) z^{-s} at the k-th pole of Γ(1 − a_i − A_i s).
fn right_residue(p: &HParams, i: usize, k: usize) -> Residue {
    let (ai, aai) = p.upper[i];
    let s0 = (1.0 - ai + k as f64) / aai;
    let kf = ln_abs_gamma(k as f64 + 1.0).0;
    let mut f = Factors::new(-kf - aai.ln(), if k % 2 == 0 { 1.0 } else { -1.0 });
    for &(b, bb) in &p.lower[..p.m] {
        f.mul_gamma(b + bb * s0);
    }
    for (r, &(a, aa)) in p.upper[..p.n].iter().enumerate() {
        if r != i {
            f.mul_gamma(1.0 - a - aa * s0);
        }
    }
    for &(b, bb) in &p.lower[p.m..] {
        f.div_gamma(1.0 - b - bb * s0);
    }
    for &(a, aa) in &p.upper[p.n..] {
        f.div_gamma(a + aa * s0);
    }
    Residue {
        exponent: -s0,
        ln_abs: f.ln_abs,
        sign: f.sign,
    }
}

fn check_z(z: f64) -> Result<f64, FoxHError> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(FoxHError::NonPositiveArgument { z });
    }
    Ok(z.ln())
}

fn sum_families<F>(families: usize, ln_z: f64, residue: F) -> Result<SeriesSum, FoxHError>
where
    F: Fn(usize, usize) -> Residue,
{
    let mut total = CompensatedSum::new();
    let mut out = SeriesSum {
        value: 0.0,
        terms: 0,
        max_term: 0.0,
        abs_sum: 0.0,
        last_term: 0.0,
        converged: true,
    };
    for fam in 0..families {
        let s = sum_series(MAX_SERIES_TERMS, |l| residue(fam, l).at(ln_z));
        if !s.converged {
            return Err(FoxHError::SeriesStall {
                partial: s.value,
                last_term: s.last_term,
                terms: s.terms,
            });
        }
        total.add(s.value);
        out.terms += s.terms;
        out.max_term = out.max_term.max(s.max_term);
        out.abs_sum += s.abs_sum;
        out.last_term = s.last_term;
    }
    out.value = total.value();
    Ok(out)
}

/// Left-pole residue series (Δ > 0) with diagnostics.
pub fn series_pos_sum(params: &HParams, z: f64) -> Result<SeriesSum, FoxHError> {
    let d = validate(params)?;
    if d.class != DeltaSign::PositiveDelta {
        return Err(FoxHError::WrongDeltaSign {
            expected: "> 0",
            delta: d.delta,
        });
    }
    let ln_z = check_z(z)?;
    sum_families(params.m, ln_z, |j, l| left_residue(params, j, l))
}

/// Right-pole residue series (Δ < 0) with diagnostics.
pub fn series_neg_sum(params: &HParams, z: f64) -> Result<SeriesSum, FoxHError> {
    let d = validate(params)?;
    if d.class != DeltaSign::NegativeDelta {
        return Err(FoxHError::WrongDeltaSign {
            expected: "< 0",
            delta: d.delta,
        });
    }
    let ln_z = check_z(z)?;
    sum_families(params.n, ln_z, |i, k| right_residue(params, i, k))
}

/// H(z) from the left-pole residues, valid for Δ > 0.
pub fn eval_series_pos(params: &HParams, z: f64) -> Result<f64, FoxHError> {
    series_pos_sum(params, z).map(|s| s.value)
}

/// H(z) from the right-pole residues, valid for Δ < 0.
pub fn eval_series_neg(params: &HParams, z: f64) -> Result<f64, FoxHError> {
    series_neg_sum(params, z).map(|s| s.value)
}

/// lim_{z→0⁺} H(z), read off the leading left residues.
///
/// Families whose first pole sits at s = 0 contribute their residue, those
/// starting to the left of it vanish in the limit; a first pole with
/// Re s > 0 makes H unbounded at the origin.
pub fn eval_at_origin(params: &HParams) -> Result<f64, FoxHError> {
    validate_structure(params)?;
    let mut total = 0.0;
    let mut hits = 0;
    for (j, &(b, bb)) in params.lower[..params.m].iter().enumerate() {
        let e = b / bb;
        if e.abs() <= 1e-12 {
            total += left_residue(params, j, 0).at(0.0);
            hits += 1;
        } else if e < 0.0 {
            return Err(FoxHError::SingularAtOrigin { exponent: e });
        }
    }
    if hits > 1 {
        return Err(FoxHError::CoincidentPoles {
            family: super::PoleFamily::Left,
            s: 0.0,
        });
    }
    Ok(total)
}

/// Powers of z carried by the first `count` left residues of family `j`.
pub fn pos_series_exponents(params: &HParams, j: usize, count: usize) -> Vec<f64> {
    (0..count).map(|l| left_residue(params, j, l).exponent).collect()
}

/// Powers of z carried by the first `count` right residues of family `i`.
pub fn neg_series_exponents(params: &HParams, i: usize, count: usize) -> Vec<f64> {
    (0..count).map(|k| right_residue(params, i, k).exponent).collect()
}
