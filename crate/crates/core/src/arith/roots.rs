//! Simultaneous root finding (Aberth–Ehrlich iteration) on complex floats.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::poly::Polynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-12,
            max_iterations: 1000,
        }
    }
}

/// All complex roots of `p`, with multiplicity.
///
/// Converged roots satisfy the backward-error bound
/// `|p(r)| <= tol * (1 + Σ |a_i| |r|^i)`, which reduces to
/// `tol * (1 + ‖a‖₁)` on the unit disk.
pub fn poly_roots<F: Scalar>(p: &Polynomial<F>, tol: f64) -> Result<Vec<Complex64>> {
    poly_roots_with(
        p,
        RootOptions {
            tol,
            ..RootOptions::default()
        },
    )
}

pub fn poly_roots_with<F: Scalar>(p: &Polynomial<F>, opts: RootOptions) -> Result<Vec<Complex64>> {
    let coeffs: Vec<Complex64> = p.coeffs().iter().map(Scalar::to_complex).collect();
    let n = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::Degree("root finding needs degree >= 1".into())),
    };
    let lead = coeffs[n];
    if lead.norm() == 0.0 {
        return Err(Error::Degree(
            "leading coefficient vanishes in floating point".into(),
        ));
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let deriv: Vec<Complex64> = (1..=n).map(|i| monic[i] * i as f64).collect();

    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + 0.4))
        .collect();

    let converged = |z: &[Complex64]| residuals(&monic, z).iter().all(|&r| r <= opts.tol);

    // Iterate past the residual test until the corrections stall, so that
    // well-conditioned roots reach full double precision.
    let mut polish = 0;
    for _ in 0..opts.max_iterations {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let pz = horner(&monic, z[k]);
            if pz.norm() == 0.0 {
                continue;
            }
            let ratio = pz / horner(&deriv, z[k]);
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if converged(&z) {
            polish += 1;
            if max_step <= 4.0 * f64::EPSILON || polish > 20 {
                return Ok(z);
            }
        }
    }
    let res = residuals(&monic, &z);
    if res.iter().all(|&r| r <= opts.tol) {
        return Ok(z);
    }
    let max_residual = res.iter().cloned().fold(0.0, f64::max);
    Err(Error::Convergence {
        iterations: opts.max_iterations,
        max_residual,
        residuals: res,
    })
}

fn horner(c: &[Complex64], z: Complex64) -> Complex64 {
    c.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, a| acc * z + a)
}

/// Relative residuals `|p(r)| / (1 + Σ |a_i| |r|^i)`.
fn residuals(c: &[Complex64], z: &[Complex64]) -> Vec<f64> {
    z.iter()
        .map(|&r| {
            let scale: f64 = c.iter().rev().fold(0.0, |acc, a| acc * r.norm() + a.norm());
            horner(c, r).norm() / (1.0 + scale)
        })
        .collect()
}
