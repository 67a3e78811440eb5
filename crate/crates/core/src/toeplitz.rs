//! Symmetric banded Toeplitz matrices.
//!
//! Only the `b + 1` distinct diagonal values are stored, so memory is
//! independent of the order `m`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polynomial::TrigPolynomial;

/// Order-`m` symmetric Toeplitz matrix whose `k`-th super- and sub-diagonal
/// holds `t_k` for `k <= bandwidth` and zero beyond.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricBandedToeplitz {
    order: usize,
    diagonals: Vec<f64>,
}

impl SymmetricBandedToeplitz {
    /// `diagonals` holds `t_0, ..., t_b`; requires `1 <= order` and `b < order`.
    pub fn new(order: usize, diagonals: Vec<f64>) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyMatrix);
        }
        if diagonals.is_empty() {
            return Err(Error::DegreeTooSmall { min: 0, got: 0 });
        }
        if diagonals.len() > order {
            return Err(Error::OrderTooSmall {
                order,
                degree: diagonals.len() - 1,
            });
        }
        if let Some(index) = diagonals.iter().position(|t| !t.is_finite()) {
            return Err(Error::NonFiniteCoefficient {
                index,
                value: diagonals[index],
            });
        }
        Ok(Self { order, diagonals })
    }

    /// `value * I` of the given order.
    pub fn scaled_identity(order: usize, value: f64) -> Result<Self> {
        Self::new(order, vec![value])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bandwidth(&self) -> usize {
        self.diagonals.len() - 1
    }

    pub fn diagonals(&self) -> &[f64] {
        &self.diagonals
    }

    /// Value on the `k`-th off-diagonal, zero outside the band.
    pub fn diagonal(&self, k: usize) -> f64 {
        self.diagonals.get(k).copied().unwrap_or(0.0)
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.diagonal(i.abs_diff(j))
    }

    /// Upper bound on the maximum absolute row sum, exact when `m > 2b`.
    pub fn norm_inf(&self) -> f64 {
        let (t0, rest) = self.diagonals.split_first().expect("non-empty");
        t0.abs() + 2.0 * rest.iter().map(|t| t.abs()).sum::<f64>()
    }

    /// Gershgorin enclosure `[t_0 - 2 sum |t_k|, t_0 + 2 sum |t_k|]` of the
    /// spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let radius: f64 = 2.0 * self.diagonals[1..].iter().map(|t| t.abs()).sum::<f64>();
        (self.diagonals[0] - radius, self.diagonals[0] + radius)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.order, self.order, |i, j| self.entry(i, j))
    }

    /// Banded product `T x`.
    pub fn mul_vec<T>(&self, x: &[T]) -> Vec<T>
    where
        T: Copy + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T> + Default,
    {
        assert_eq!(x.len(), self.order, "vector length must equal matrix order");
        let b = self.bandwidth();
        (0..self.order)
            .map(|i| {
                let lo = i.saturating_sub(b);
                let hi = (i + b).min(self.order - 1);
                (lo..=hi).fold(T::default(), |acc, j| acc + x[j] * self.entry(i, j))
            })
            .collect()
    }

    /// `(1/m) v(e^{-i theta})^T T v(e^{i theta})` with
    /// `v(z) = (1, z, ..., z^{m-1})`.
    ///
    /// For `T = build_weighted(p, m)` this reproduces `p(theta)` exactly.
    pub fn quadratic_form(&self, theta: f64) -> f64 {
        let v: Vec<Complex64> = (0..self.order)
            .map(|k| Complex64::from_polar(1.0, k as f64 * theta))
            .collect();
        let tv = self.mul_vec(&v);
        let acc: Complex64 = v.iter().zip(&tv).map(|(vi, wi)| vi.conj() * wi).sum();
        acc.re / self.order as f64
    }
}

/// Weighted Toeplitz matrix `P_m` with diagonals `t_0 = p_0` and
/// `t_k = m / (m - k) * p_k`.
///
/// Requires `m > deg p`; the weight degenerates at `k = m`.
pub fn build_weighted(p: &TrigPolynomial, m: usize) -> Result<SymmetricBandedToeplitz> {
    let n = p.degree();
    if m <= n {
        return Err(Error::OrderTooSmall {
            order: m,
            degree: n,
        });
    }
    let mf = m as f64;
    let diagonals = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &pk)| {
            if k == 0 {
                pk
            } else {
                mf / (mf - k as f64) * pk
            }
        })
        .collect();
    SymmetricBandedToeplitz::new(m, diagonals)
}

/// Moment matrix `R_m` with `t_k = p_k`. Orders `m <= deg p` truncate the band
/// to `m - 1`.
pub fn build_moment(p: &TrigPolynomial, m: usize) -> Result<SymmetricBandedToeplitz> {
    if m == 0 {
        return Err(Error::EmptyMatrix);
    }
    let band = p.degree().min(m - 1);
    SymmetricBandedToeplitz::new(m, p.coeffs()[..=band].to_vec())
}

/// Frobenius norm of `P_m - R_m`.
///
/// The `k`-th off-diagonals of the difference hold `k / (m - k) * p_k` and
/// each occurs `2 (m - k)` times, so the norm is
/// `sqrt(2 sum_k k^2 p_k^2 / (m - k))`, which decays like `m^{-1/2}`.
pub fn frobenius_gap(p: &TrigPolynomial, m: usize) -> Result<f64> {
    let n = p.degree();
    if m <= n {
        return Err(Error::OrderTooSmall {
            order: m,
            degree: n,
        });
    }
    Ok(p.coeffs()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, pk)| 2.0 * (k * k) as f64 * pk * pk / (m - k) as f64)
        .sum::<f64>()
        .sqrt())
}

/// Free-function form of [`SymmetricBandedToeplitz::quadratic_form`].
pub fn quadratic_form(t: &SymmetricBandedToeplitz, theta: f64) -> f64 {
    t.quadratic_form(theta)
}
