//! Minimum eigenvalue enclosures for symmetric banded Toeplitz matrices.
//!
//! Sylvester's law of inertia lets an `LDL^T` factorization of `T - sigma I`
//! count eigenvalues below `sigma`, and bisection on `sigma` then brackets
//! `lambda_min(T)`. The factorization is unpivoted and keeps the band, so a
//! probe costs `O(m b^2)` time and `O(m b)` workspace.

use crate::error::{Error, Result};
use crate::toeplitz::SymmetricBandedToeplitz;

/// Absolute width of eigenvalue enclosures unless a caller asks otherwise.
pub const DEFAULT_EIG_TOL: f64 = 1e-10;

/// Maximum number of bisection steps.
pub const MAX_BISECTION_STEPS: usize = 200;

/// Relative pivot magnitude that counts as a breakdown.
const BREAKDOWN_RATIO: f64 = 1e-14;
const MAX_SHIFT_RETRIES: usize = 3;
// 2^-40
const SHIFT_NUDGE: f64 = 9.094_947_017_729_282e-13;

/// Eigenvalue sign counts of `T - shift I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inertia {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
    /// Shift the counts refer to. Differs from the requested shift when a
    /// pivot breakdown forced a perturbation.
    pub shift: f64,
    /// Set when the requested shift was perturbed.
    pub perturbed: bool,
}

impl Inertia {
    pub fn order(&self) -> usize {
        self.negative + self.zero + self.positive
    }
}

/// Two-sided enclosure `[lo, hi]` of the minimum eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenInterval {
    pub lo: f64,
    pub hi: f64,
    pub iterations: usize,
    /// False when the bisection cap was hit before `hi - lo <= tol`.
    pub converged: bool,
    /// Number of probes whose shift had to be perturbed.
    pub perturbed_probes: usize,
}

impl EigenInterval {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

enum Factorization {
    Done {
        negative: usize,
        zero: usize,
        positive: usize,
    },
    Breakdown,
}

/// Banded LDL^T of `T - shift I`, counting pivot signs. Returns `Breakdown`
/// as soon as a pivot falls below `threshold` in magnitude, unless `force`
/// is set, in which case such pivots are counted as zero and replaced by
/// `-threshold` so elimination can proceed.
fn factor(t: &SymmetricBandedToeplitz, shift: f64, threshold: f64, force: bool) -> Factorization {
    let m = t.order();
    let b = t.bandwidth();
    let diag = t.diagonal(0) - shift;
    // l[i * b + (b - (i - j))] = L(i, j) for i - b <= j < i.
    let mut l = vec![0.0; m * b];
    let mut d = vec![0.0; m];
    let (mut negative, mut zero, mut positive) = (0, 0, 0);

    for i in 0..m {
        let start = i.saturating_sub(b);
        for j in start..i {
            let mut s = t.diagonal(i - j);
            for k in start..j {
                s -= l[i * b + b - (i - k)] * l[j * b + b - (j - k)] * d[k];
            }
            l[i * b + b - (i - j)] = s / d[j];
        }
        let mut pivot = diag;
        for k in start..i {
            let lik = l[i * b + b - (i - k)];
            pivot -= lik * lik * d[k];
        }

        if pivot.is_nan() || pivot.abs() < threshold {
            if !force {
                return Factorization::Breakdown;
            }
            zero += 1;
            pivot = -threshold;
        } else if pivot < 0.0 {
            negative += 1;
        } else {
            positive += 1;
        }
        d[i] = pivot;
    }
    Factorization::Done {
        negative,
        zero,
        positive,
    }
}

/// Inertia of `T - shift I`.
///
/// A pivot of magnitude below `1e-14 (1 + ||T||_inf)` triggers a retry at
/// `shift (1 + 2^-40) + 2^-40`, up to three times; the returned inertia then
/// refers to the perturbed shift. If every retry breaks down, the small
/// pivots are counted in `zero`.
pub fn ldlt_inertia(t: &SymmetricBandedToeplitz, shift: f64) -> Inertia {
    let threshold = BREAKDOWN_RATIO * (1.0 + t.norm_inf());
    let mut sigma = shift;
    for attempt in 0..=MAX_SHIFT_RETRIES {
        let force = attempt == MAX_SHIFT_RETRIES;
        match factor(t, sigma, threshold, force) {
            Factorization::Done {
                negative,
                zero,
                positive,
            } => {
                return Inertia {
                    negative,
                    zero,
                    positive,
                    shift: sigma,
                    perturbed: attempt > 0,
                }
            }
            Factorization::Breakdown => {
                sigma = sigma * (1.0 + SHIFT_NUDGE) + SHIFT_NUDGE;
            }
        }
    }
    unreachable!("forced factorization always completes")
}

/// Encloses `lambda_min(T)` in an interval of width at most `tol`.
///
/// Starts from the Gershgorin bracket and bisects: `lambda_min <= sigma`
/// exactly when `T - sigma I` has a nonpositive pivot.
pub fn min_eigenvalue(t: &SymmetricBandedToeplitz, tol: f64) -> Result<EigenInterval> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let (mut lo, mut hi) = t.gershgorin_bounds();
    let mut iterations = 0;
    let mut perturbed_probes = 0;
    let mut fraction = 0.5;

    while hi - lo > tol && iterations < MAX_BISECTION_STEPS {
        iterations += 1;
        let probe = lo + fraction * (hi - lo);
        let inertia = ldlt_inertia(t, probe);
        if inertia.perturbed {
            perturbed_probes += 1;
        }
        let sigma = inertia.shift;
        let before = (lo, hi);
        if inertia.negative + inertia.zero > 0 {
            hi = hi.min(sigma);
        } else {
            lo = lo.max(sigma);
        }
        // A perturbed probe can land outside the bracket; move the next probe
        // away from the midpoint so it does not repeat.
        fraction = if (lo, hi) == before {
            if fraction == 0.5 {
                0.25
            } else {
                1.0 - fraction
            }
        } else {
            0.5
        };
    }

    Ok(EigenInterval {
        lo,
        hi,
        iterations,
        converged: hi - lo <= tol,
        perturbed_probes,
    })
}

/// Positive definiteness with eigenvalue margin: true iff the lower end of
/// the `lambda_min` enclosure exceeds `margin`.
pub fn is_positive_definite(t: &SymmetricBandedToeplitz, margin: f64) -> bool {
    is_positive_definite_with_tol(t, margin, DEFAULT_EIG_TOL)
}

pub fn is_positive_definite_with_tol(t: &SymmetricBandedToeplitz, margin: f64, tol: f64) -> bool {
    // A single factorization already rules out most indefinite matrices.
    let at_margin = ldlt_inertia(t, margin);
    if at_margin.shift <= margin && at_margin.negative + at_margin.zero > 0 {
        return false;
    }
    min_eigenvalue(t, tol)
        .map(|e| e.lo > margin)
        .unwrap_or(false)
}
