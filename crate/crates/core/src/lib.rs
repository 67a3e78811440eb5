//! Positivity certificates for even trigonometric polynomials through
//! positive definiteness of weighted banded Toeplitz matrices, and the convex
//! LMI inner approximations of the Schur stability region they induce.
//!
//! * [`polynomial`]: monic and trigonometric polynomials, the symmetrized
//!   product, Schur stability, certified trigonometric minima.
//! * [`toeplitz`]: the weighted matrix `P_m` and the moment matrix `R_m`.
//! * [`spectra`]: inertia counting and minimum eigenvalue enclosures.
//! * [`approx`]: membership in `S`, `P^c` and `P^c_m`, the minimal order
//!   `m0`, convergence tables.
//! * [`region`]: rasterized 2D slices with CSV/SVG output.

pub mod approx;
pub mod error;
pub mod polynomial;
pub mod region;
pub mod spectra;
pub mod toeplitz;

pub use error::{Error, Result};
pub use polynomial::{MonicPolynomial, TrigMinResult, TrigPolynomial};
pub use spectra::{EigenInterval, Inertia};
pub use toeplitz::SymmetricBandedToeplitz;
