//! Test-only oracles, independent of the library's algorithms.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use toeplitz_lmi::{MonicPolynomial, SymmetricBandedToeplitz, TrigPolynomial};

/// All eigenvalues of a dense symmetric matrix, ascending, by cyclic Jacobi
/// rotations.
#[allow(clippy::needless_range_loop)]
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    let frob: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * frob.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

pub fn dense_rows(t: &SymmetricBandedToeplitz) -> Vec<Vec<f64>> {
    let m = t.order();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let k = i.abs_diff(j);
                    if k <= t.bandwidth() {
                        t.diagonals()[k]
                    } else {
                        0.0
                    }
                })
                .collect()
        })
        .collect()
}

pub fn jacobi_min_eigenvalue(t: &SymmetricBandedToeplitz) -> f64 {
    jacobi_eigenvalues(dense_rows(t))[0]
}

/// Weighted Toeplitz matrix built entry by entry from its definition.
pub fn weighted_dense(p: &[f64], m: usize) -> Vec<Vec<f64>> {
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let k = i.abs_diff(j);
                    match k {
                        0 => p[0],
                        k if k < p.len() => m as f64 / (m - k) as f64 * p[k],
                        _ => 0.0,
                    }
                })
                .collect()
        })
        .collect()
}

/// Monic real polynomial with the given roots; complex roots must come with
/// their conjugates.
pub fn poly_from_roots(roots: &[Complex64]) -> MonicPolynomial {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        coeffs = next;
    }
    let n = roots.len();
    MonicPolynomial::new(coeffs[..n].iter().map(|c| c.re).collect()).unwrap()
}

/// Random real or conjugate-pair roots with moduli drawn from `radius`.
pub fn random_roots<R: Rng>(
    rng: &mut R,
    degree: usize,
    radius: std::ops::Range<f64>,
) -> Vec<Complex64> {
    let mut roots = Vec::with_capacity(degree);
    while roots.len() < degree {
        let r = rng.gen_range(radius.clone());
        if degree - roots.len() >= 2 && rng.gen_bool(0.5) {
            let phi = rng.gen_range(0.0..std::f64::consts::PI);
            let z = Complex64::from_polar(r, phi);
            roots.push(z);
            roots.push(z.conj());
        } else {
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            roots.push(Complex64::new(sign * r, 0.0));
        }
    }
    roots
}

pub fn random_trig<R: Rng>(rng: &mut R, max_degree: usize, scale: f64) -> TrigPolynomial {
    let n = rng.gen_range(0..=max_degree);
    TrigPolynomial::new((0..=n).map(|_| rng.gen_range(-scale..scale)).collect()).unwrap()
}

/// Positive trigonometric polynomial: a random one shifted above its sampled
/// minimum.
pub fn random_positive_trig<R: Rng>(rng: &mut R, max_degree: usize) -> TrigPolynomial {
    let p = random_trig(rng, max_degree, 1.0);
    let floor = dense_min(&p, 20_000);
    let mut c = p.coeffs().to_vec();
    c[0] += -floor + rng.gen_range(0.05..1.0) + 0.01 * c.iter().map(|x| x.abs()).sum::<f64>();
    TrigPolynomial::new(c).unwrap()
}

/// Minimum of `p` over a uniform grid of `[0, pi]`.
pub fn dense_min(p: &TrigPolynomial, samples: usize) -> f64 {
    (0..=samples)
        .map(|i| p.eval(std::f64::consts::PI * i as f64 / samples as f64))
        .fold(f64::INFINITY, f64::min)
}

/// `2 Re(c(e^{-i theta}) d(e^{i theta}))` by direct complex evaluation.
pub fn symmetrized_direct(c: &MonicPolynomial, d: &MonicPolynomial, theta: f64) -> f64 {
    let z = Complex64::from_polar(1.0, theta);
    let zc = z.conj();
    let horner = |p: &MonicPolynomial, z: Complex64| {
        p.full_coeffs()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &k| acc * z + k)
    };
    2.0 * (horner(c, zc) * horner(d, z)).re
}
