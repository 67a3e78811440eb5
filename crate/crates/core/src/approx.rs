//! Membership in the stability set, the SPR set around a central polynomial,
//! and its order-`m` LMI inner approximations.
//!
//! For a stable central polynomial `c` of degree `n`:
//!
//! * `S` is the set of Schur stable monic `d` of degree `n`;
//! * `P^c` is the set of `d` whose symmetrized product with `c` is strictly
//!   positive on the circle (equivalently `d / c` is strictly positive real);
//! * `P^c_m` is the set of `d` for which the weighted Toeplitz matrix of that
//!   product, of order `m > n`, is positive definite.
//!
//! `P^c_m` and `P^c` are both contained in `S`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::polynomial::{symmetrized_product, trig_min, MonicPolynomial, TrigPolynomial};
use crate::spectra::{is_positive_definite, min_eigenvalue, DEFAULT_EIG_TOL};
use crate::toeplitz::{build_moment, build_weighted, frobenius_gap};

/// Strictness margin for membership in `P^c`.
pub const DEFAULT_SPR_TOL: f64 = 1e-9;

/// Which set a verdict refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetKind {
    Stable,
    Spr,
    Lmi,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipVerdict {
    pub set: SetKind,
    pub member: bool,
    /// Minimum eigenvalue (midpoint of its enclosure) for `P^c_m`, certified
    /// trigonometric minimum for `P^c`, absent for `S`.
    pub certificate: Option<f64>,
    pub matrix_order: Option<usize>,
}

fn require_stable_central(c: &MonicPolynomial, d: &MonicPolynomial) -> Result<()> {
    if c.degree() != d.degree() {
        return Err(Error::DegreeMismatch {
            central: c.degree(),
            design: d.degree(),
        });
    }
    if !c.is_schur_stable() {
        return Err(Error::UnstableCentral);
    }
    Ok(())
}

/// Membership of `d` in the Schur stability set.
pub fn member_s(d: &MonicPolynomial) -> MembershipVerdict {
    MembershipVerdict {
        set: SetKind::Stable,
        member: d.is_schur_stable(),
        certificate: None,
        matrix_order: None,
    }
}

/// Membership of `d` in `P^c`: the certified minimum of the symmetrized
/// product must exceed `tol`. The minimum is computed to within `tol`, so a
/// positive verdict proves strict positivity.
pub fn member_pc(c: &MonicPolynomial, d: &MonicPolynomial, tol: f64) -> Result<MembershipVerdict> {
    require_stable_central(c, d)?;
    let p = symmetrized_product(c, d)?;
    let min = trig_min(&p, tol)?;
    Ok(MembershipVerdict {
        set: SetKind::Spr,
        member: min.value > tol,
        certificate: Some(min.value),
        matrix_order: None,
    })
}

/// Membership of `d` in the LMI set `P^c_m`. The eigenvalue enclosure must
/// clear `DEFAULT_EIG_TOL`, so any `lambda_min` in `[-tol, tol]` is a
/// non-member.
pub fn member_pcm(c: &MonicPolynomial, d: &MonicPolynomial, m: usize) -> Result<MembershipVerdict> {
    require_stable_central(c, d)?;
    let p = symmetrized_product(c, d)?;
    let pm = build_weighted(&p, m)?;
    let lambda = min_eigenvalue(&pm, DEFAULT_EIG_TOL)?;
    Ok(MembershipVerdict {
        set: SetKind::Lmi,
        member: lambda.lo > DEFAULT_EIG_TOL,
        certificate: Some(lambda.midpoint()),
        matrix_order: Some(m),
    })
}

/// Smallest `m* in (n, m_max]` such that `P_m` is positive definite for every
/// `m` in `[m*, m_max]`, or `None` if `P_{m_max}` itself is not. Uses the same
/// eigenvalue margin as [`member_pcm`].
///
/// Checks the whole suffix rather than stopping at the first positive
/// definite order, since definiteness need not be monotone in `m`.
pub fn find_m0_for(p: &TrigPolynomial, m_max: usize) -> Result<Option<usize>> {
    let n = p.degree();
    if m_max <= n {
        return Err(Error::OrderTooSmall {
            order: m_max,
            degree: n,
        });
    }
    let pd: Vec<bool> = (n + 1..=m_max)
        .into_par_iter()
        .map(|m| build_weighted(p, m).map(|t| is_positive_definite(&t, DEFAULT_EIG_TOL)))
        .collect::<Result<_>>()?;
    let suffix = pd.iter().rev().take_while(|&&ok| ok).count();
    Ok((suffix > 0).then(|| m_max + 1 - suffix))
}

/// [`find_m0_for`] applied to the symmetrized product of `c` and `d`, after
/// checking that `d` lies in `P^c` (otherwise no finite `m0` exists).
pub fn find_m0(c: &MonicPolynomial, d: &MonicPolynomial, m_max: usize) -> Result<Option<usize>> {
    let verdict = member_pc(c, d, DEFAULT_SPR_TOL)?;
    if !verdict.member {
        return Err(Error::NotStrictlyPositive {
            minimum: verdict.certificate.unwrap_or(f64::NAN),
        });
    }
    find_m0_for(&symmetrized_product(c, d)?, m_max)
}

/// One order of a convergence study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub m: usize,
    pub lambda_min_pm: f64,
    pub lambda_min_rm: f64,
    pub frobenius_gap: f64,
    pub trig_min: f64,
}

pub const CONVERGENCE_CSV_HEADER: &str = "m,lambda_min_Pm,lambda_min_Rm,frobenius_gap,trig_min";

/// Minimum eigenvalues of `P_m` and `R_m`, their Frobenius gap bound, and the
/// certified minimum of `p`, for each requested order.
pub fn convergence_table(p: &TrigPolynomial, orders: &[usize]) -> Result<Vec<ConvergenceRow>> {
    if let Some(&m) = orders.iter().find(|&&m| m <= p.degree()) {
        return Err(Error::OrderTooSmall {
            order: m,
            degree: p.degree(),
        });
    }
    let minimum = trig_min(p, DEFAULT_EIG_TOL)?.value;
    orders
        .par_iter()
        .map(|&m| {
            let pm = min_eigenvalue(&build_weighted(p, m)?, DEFAULT_EIG_TOL)?;
            let rm = min_eigenvalue(&build_moment(p, m)?, DEFAULT_EIG_TOL)?;
            Ok(ConvergenceRow {
                m,
                lambda_min_pm: pm.midpoint(),
                lambda_min_rm: rm.midpoint(),
                frobenius_gap: frobenius_gap(p, m)?,
                trig_min: minimum,
            })
        })
        .collect()
}

/// Renders rows as CSV with a header line; floats use the shortest
/// representation that round-trips.
pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from(CONVERGENCE_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{:?},{:?},{:?},{:?}\n",
            r.m, r.lambda_min_pm, r.lambda_min_rm, r.frobenius_gap, r.trig_min
        ));
    }
    out
}
