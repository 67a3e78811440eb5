//! Monic and trigonometric polynomials.
//!
//! Coefficients are stored in ascending powers. A [`MonicPolynomial`] of
//! degree `n` stores `d_0, ..., d_{n-1}`; the leading coefficient of `z^n` is
//! an implicit 1. A [`TrigPolynomial`] of degree `n` stores `p_0, ..., p_n`
//! and represents the even cosine series
//!
//! ```text
//! p(theta) = p_0 + 2 p_1 cos(theta) + ... + 2 p_n cos(n theta)
//! ```
//!
//! so that `p_k` is also the `k`-th Fourier coefficient of `p`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

fn check_finite(coeffs: &[f64]) -> Result<()> {
    match coeffs.iter().position(|c| !c.is_finite()) {
        Some(index) => Err(Error::NonFiniteCoefficient {
            index,
            value: coeffs[index],
        }),
        None => Ok(()),
    }
}

/// Real monic polynomial `d(z) = d_0 + d_1 z + ... + d_{n-1} z^{n-1} + z^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial {
    coeffs: Vec<f64>,
}

impl MonicPolynomial {
    /// Builds a monic polynomial from its non-leading coefficients in
    /// ascending order. The degree is `coeffs.len()` and must be at least 1.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DegreeTooSmall { min: 1, got: 0 });
        }
        check_finite(&coeffs)?;
        Ok(Self { coeffs })
    }

    /// The monomial `z^n`.
    pub fn monomial(degree: usize) -> Result<Self> {
        Self::new(vec![0.0; degree])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Non-leading coefficients `d_0, ..., d_{n-1}`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, with `coeff(n) == 1` and zero above the degree.
    pub fn coeff(&self, k: usize) -> f64 {
        match k.cmp(&self.degree()) {
            Ordering::Less => self.coeffs[k],
            Ordering::Equal => 1.0,
            Ordering::Greater => 0.0,
        }
    }

    /// Full coefficient vector `d_0, ..., d_{n-1}, 1`.
    pub fn full_coeffs(&self) -> Vec<f64> {
        let mut full = self.coeffs.clone();
        full.push(1.0);
        full
    }

    /// Horner evaluation at a complex point.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(1.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Schur stability: every root lies strictly inside the unit disk.
    ///
    /// Runs the Schur-Cohn step-down recursion. At each stage the reflection
    /// coefficient is the ratio of the constant to the leading coefficient;
    /// the polynomial is stable iff every reflection coefficient has modulus
    /// strictly below one. A reflection coefficient of modulus one (a root on
    /// the circle or a degenerate recursion) is reported as unstable.
    pub fn is_schur_stable(&self) -> bool {
        // a[0..=deg] with a[deg] == 1 throughout.
        let mut a = self.full_coeffs();
        while a.len() > 1 {
            let deg = a.len() - 1;
            let k = a[0];
            if k.is_nan() || k.abs() >= 1.0 {
                return false;
            }
            let scale = 1.0 - k * k;
            let next: Vec<f64> = (0..deg)
                .map(|j| (a[j + 1] - k * a[deg - 1 - j]) / scale)
                .collect();
            if next.iter().any(|c| !c.is_finite()) {
                return false;
            }
            a = next;
            // Renormalize the leading coefficient to exactly 1.
            let last = a.len() - 1;
            a[last] = 1.0;
        }
        true
    }
}

/// Even real trigonometric polynomial `p_0 + 2 sum_k p_k cos(k theta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    coeffs: Vec<f64>,
}

impl TrigPolynomial {
    /// Builds `p` from `p_0, ..., p_n`; the degree is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DegreeTooSmall { min: 0, got: 0 });
        }
        check_finite(&coeffs)?;
        Ok(Self { coeffs })
    }

    pub fn constant(value: f64) -> Result<Self> {
        Self::new(vec![value])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `p_k`, zero above the degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    /// Evaluates `p(theta)`.
    pub fn eval(&self, theta: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .fold(self.coeffs[0], |acc, (k, &pk)| {
                acc + 2.0 * pk * (k as f64 * theta).cos()
            })
    }

    /// Lipschitz constant of `p` on the real line: `2 sum_k k |p_k|`.
    pub fn lipschitz_bound(&self) -> f64 {
        self.weighted_abs_sum(1)
    }

    /// Bound on `|p''|`: `2 sum_k k^2 |p_k|`.
    pub fn curvature_bound(&self) -> f64 {
        self.weighted_abs_sum(2)
    }

    fn weighted_abs_sum(&self, power: i32) -> f64 {
        2.0 * self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, pk)| (k as f64).powi(power) * pk.abs())
            .sum::<f64>()
    }

    /// Certified global minimum of `p` over the circle; see [`trig_min`].
    pub fn global_min(&self, tol: f64) -> Result<TrigMinResult> {
        trig_min(self, tol)
    }
}

/// Free-function form of [`TrigPolynomial::eval`].
pub fn eval_trig(p: &TrigPolynomial, theta: f64) -> f64 {
    p.eval(theta)
}

/// Symmetrized product `c(1/z) d(z) + c(z) d(1/z)` restricted to the unit
/// circle, returned as a trigonometric polynomial of degree `n`.
///
/// `p_0 = 2 sum_j c_j d_j` and `p_l = sum_{|j-k| = l} c_j d_k` for `l >= 1`,
/// with `c_n = d_n = 1`.
pub fn symmetrized_product(c: &MonicPolynomial, d: &MonicPolynomial) -> Result<TrigPolynomial> {
    if c.degree() != d.degree() {
        return Err(Error::DegreeMismatch {
            central: c.degree(),
            design: d.degree(),
        });
    }
    let n = c.degree();
    let cf = c.full_coeffs();
    let df = d.full_coeffs();
    let mut p = vec![0.0; n + 1];
    p[0] = 2.0 * cf.iter().zip(&df).map(|(a, b)| a * b).sum::<f64>();
    for (l, pl) in p.iter_mut().enumerate().skip(1) {
        *pl = (l..=n).map(|j| cf[j] * df[j - l] + cf[j - l] * df[j]).sum();
    }
    TrigPolynomial::new(p)
}

/// Free-function form of [`MonicPolynomial::is_schur_stable`].
pub fn schur_stable(d: &MonicPolynomial) -> bool {
    d.is_schur_stable()
}

/// Certified global minimum of a trigonometric polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigMinResult {
    /// `p(argmin)`, an upper bound on the true minimum.
    pub value: f64,
    /// Minimizer in `[0, pi]`.
    pub argmin: f64,
    /// `value` minus a proven lower bound on the true minimum.
    pub certified_error: f64,
}

impl TrigMinResult {
    /// Proven lower bound on the global minimum.
    pub fn lower_bound(&self) -> f64 {
        self.value - self.certified_error
    }
}

#[derive(Debug, Clone, Copy)]
struct Bracket {
    lower: f64,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
}

impl PartialEq for Bracket {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Bracket {}

impl PartialOrd for Bracket {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bracket {
    // Reversed so that `BinaryHeap` pops the smallest lower bound first.
    fn cmp(&self, other: &Self) -> Ordering {
        other.lower.total_cmp(&self.lower)
    }
}

/// Lower bound of `p` on `[a, b]` from the Lipschitz constant and from the
/// curvature bound, whichever is tighter.
fn bracket_lower_bound(a: f64, b: f64, fa: f64, fb: f64, lip: f64, curv: f64) -> f64 {
    let w = b - a;
    let by_slope = 0.5 * (fa + fb) - 0.5 * lip * w;
    // p >= chord - curv/2 (x - a)(b - x); minimize that convex quadratic.
    let by_curvature = if curv > 0.0 {
        let t = (0.5 - (fb - fa) / (curv * w * w)).clamp(0.0, 1.0);
        fa + (fb - fa) * t - 0.5 * curv * w * w * t * (1.0 - t)
    } else {
        fa.min(fb)
    };
    by_slope.max(by_curvature).min(fa.min(fb))
}

/// Certified global minimum of `p` over `[0, 2 pi]`.
///
/// Branch and bound over `[0, pi]` (`p` is even and `2 pi`-periodic) using the
/// Lipschitz bound `L = 2 sum k |p_k|` and the curvature bound
/// `2 sum k^2 |p_k|`, followed by golden-section refinement in the bracket of
/// the best sample. Terminates once the best sample is within `tol` of the
/// smallest outstanding lower bound, so `certified_error <= tol`.
pub fn trig_min(p: &TrigPolynomial, tol: f64) -> Result<TrigMinResult> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let lip = p.lipschitz_bound();
    if p.degree() == 0 || lip == 0.0 {
        return Ok(TrigMinResult {
            value: p.coeff(0),
            argmin: 0.0,
            certified_error: 0.0,
        });
    }
    let curv = p.curvature_bound();

    let pieces = (8 * p.degree()).max(16);
    let h = PI / pieces as f64;
    let samples: Vec<(f64, f64)> = (0..=pieces)
        .map(|i| {
            let x = if i == pieces { PI } else { i as f64 * h };
            (x, p.eval(x))
        })
        .collect();

    let (mut best_x, mut best_f) = samples[0];
    let mut best_width = h;
    let mut heap = BinaryHeap::with_capacity(4 * pieces);
    for w in samples.windows(2) {
        let ((a, fa), (b, fb)) = (w[0], w[1]);
        if fb < best_f {
            best_x = b;
            best_f = fb;
        }
        heap.push(Bracket {
            lower: bracket_lower_bound(a, b, fa, fb, lip, curv),
            a,
            b,
            fa,
            fb,
        });
    }

    let min_width = 8.0 * f64::EPSILON * PI;
    let global_lower = loop {
        let top = heap.pop().expect("bracket heap never empties");
        if best_f - top.lower <= tol || top.b - top.a <= min_width {
            let lower = top.lower;
            heap.push(top);
            break lower;
        }
        let mid = 0.5 * (top.a + top.b);
        let fm = p.eval(mid);
        if fm < best_f {
            best_f = fm;
            best_x = mid;
            best_width = 0.5 * (top.b - top.a);
        }
        for (a, b, fa, fb) in [(top.a, mid, top.fa, fm), (mid, top.b, fm, top.fb)] {
            heap.push(Bracket {
                lower: bracket_lower_bound(a, b, fa, fb, lip, curv),
                a,
                b,
                fa,
                fb,
            });
        }
    };

    let lo = (best_x - best_width).max(0.0);
    let hi = (best_x + best_width).min(PI);
    let (gx, gf) = golden_section(|x| p.eval(x), lo, hi, 200);
    if gf < best_f {
        best_x = gx;
        best_f = gf;
    }

    Ok(TrigMinResult {
        value: best_f,
        argmin: best_x,
        certified_error: (best_f - global_lower).max(0.0),
    })
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, max_evals: usize) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 2..max_evals {
        if (b - a).abs() <= 4.0 * f64::EPSILON * b.abs().max(1.0) {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}
