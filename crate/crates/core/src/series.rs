//! Summation helpers shared by the special functions and the lattice sums.

use crate::error::{Error, Result};

/// Kahan–Babuška–Neumaier running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Sums terms until one falls below `abs_tol` in magnitude.
///
/// The term that triggers the stop is included. Fails if `max_terms` is
/// reached first.
pub fn sum_until_small<F>(mut term: F, abs_tol: f64, max_terms: usize) -> Result<f64>
where
    F: FnMut(usize) -> f64,
{
    let mut acc = CompensatedSum::new();
    for n in 0..max_terms {
        let t = term(n);
        acc.add(t);
        if t.abs() < abs_tol {
            return Ok(acc.value());
        }
    }
    Err(Error::NoConvergence {
        what: "series",
        limit: max_terms,
    })
}

/// Number of terms summed directly before the Euler transform takes over.
const EULER_DIRECT_TERMS: usize = 256;
const EULER_MAX_ORDER: usize = 40;

/// Value and error estimate of an accelerated alternating sum.
#[derive(Debug, Clone, Copy)]
pub struct AlternatingSum {
    pub value: f64,
    pub abs_error: f64,
}

/// Evaluates `Σ_{m≥0} (-1)^m a(m)` for a smooth, slowly decaying sequence.
///
/// The head is summed directly; the tail `Σ_j (-1)^j a(N+j)` is replaced
/// by its Euler transform `Σ_k (-1)^k Δ^k a(N) / 2^{k+1}`, truncated once a
/// transformed term drops below `abs_tol`.
pub fn alternating_sum<F>(term: F, abs_tol: f64) -> Result<AlternatingSum>
where
    F: Fn(usize) -> f64,
{
    let n = EULER_DIRECT_TERMS;
    let mut head = CompensatedSum::new();
    for m in 0..n {
        let t = term(m);
        head.add(if m % 2 == 0 { t } else { -t });
    }

    let mut diffs: Vec<f64> = (0..=EULER_MAX_ORDER).map(|j| term(n + j)).collect();
    let mut tail = CompensatedSum::new();
    let mut scale = 0.5;
    for k in 0..EULER_MAX_ORDER {
        let contribution = if k % 2 == 0 { diffs[0] } else { -diffs[0] } * scale;
        tail.add(contribution);
        if contribution.abs() < abs_tol {
            let tail = if n.is_multiple_of(2) {
                tail.value()
            } else {
                -tail.value()
            };
            return Ok(AlternatingSum {
                value: head.value() + tail,
                abs_error: contribution.abs(),
            });
        }
        for j in 0..diffs.len() - k - 1 {
            diffs[j] = diffs[j + 1] - diffs[j];
        }
        scale *= 0.5;
    }
    Err(Error::NoConvergence {
        what: "Euler transform",
        limit: EULER_MAX_ORDER,
    })
}
