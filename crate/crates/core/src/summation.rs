//! Compensated accumulation and the shared truncation rule for power series.

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Terms below this fraction of the running absolute sum count as negligible.
pub const NEGLIGIBLE: f64 = 1e-16;
/// Number of consecutive negligible terms that ends a series.
pub const QUIET_RUN: usize = 3;

/// Result of summing a series with [`sum_series`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub terms: usize,
    /// Largest absolute term seen; `max_term / |value|` measures cancellation.
    pub max_term: f64,
    pub abs_sum: f64,
    pub last_term: f64,
    pub converged: bool,
}

impl SeriesSum {
    /// Ratio of the largest term to the result, at least 1.
    pub fn loss(&self) -> f64 {
        if self.value == 0.0 {
            if self.max_term == 0.0 {
                1.0
            } else {
                f64::INFINITY
            }
        } else {
            (self.max_term / self.value.abs()).max(1.0)
        }
    }
}

/// Sums `term(k)` for k = 0, 1, ... until three consecutive nonzero terms fall
/// below `NEGLIGIBLE` times the running absolute sum, or `max_terms` is hit.
///
/// Exactly-zero terms (reciprocal Gamma poles) neither reset nor advance the
/// quiet run. A non-finite term or an overflowing sum stops with `converged = false`.
pub fn sum_series<F>(max_terms: usize, mut term: F) -> SeriesSum
where
    F: FnMut(usize) -> f64,
{
    let mut acc = CompensatedSum::new();
    let mut abs_sum = 0.0;
    let mut max_term: f64 = 0.0;
    let mut quiet = 0;
    let mut last = 0.0;
    for k in 0..max_terms {
        let t = term(k);
        if !t.is_finite() || !(abs_sum + t.abs()).is_finite() {
            return SeriesSum {
                value: acc.value(),
                terms: k,
                max_term,
                abs_sum,
                last_term: t,
                converged: false,
            };
        }
        if t == 0.0 {
            continue;
        }
        acc.add(t);
        abs_sum += t.abs();
        max_term = max_term.max(t.abs());
        last = t;
        if t.abs() < NEGLIGIBLE * abs_sum {
            quiet += 1;
            if quiet >= QUIET_RUN {
                return SeriesSum {
                    value: acc.value(),
                    terms: k + 1,
                    max_term,
                    abs_sum,
                    last_term: t,
                    converged: true,
                };
            }
        } else {
            quiet = 0;
        }
    }
    SeriesSum {
        value: acc.value(),
        terms: max_terms,
        max_term,
        abs_sum,
        last_term: last,
        converged: false,
    }
}
