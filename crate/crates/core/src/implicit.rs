//! Determinantal implicitization of rational plane curves.
//!
//! The image of `t ↦ (p1(t)/p0(t), p2(t)/p0(t))` is the zero set of
//! `Δ(x1, x2) = det(B(p1,p2) + x1 B(p2,p0) + x2 B(p0,p1))`.

use rayon::prelude::*;

use crate::arith::{BivariatePolynomial, ExactField, GaussianRational, Matrix, Polynomial, Scalar};
use crate::bezout::bezout_matrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RationalTriple<F: ExactField> {
    pub p0: Polynomial<F>,
    pub p1: Polynomial<F>,
    pub p2: Polynomial<F>,
    n: usize,
}

impl<F: ExactField> RationalTriple<F> {
    /// Triple sized at the maximum degree of its members.
    pub fn new(p0: Polynomial<F>, p1: Polynomial<F>, p2: Polynomial<F>) -> Result<Self> {
        let n = [&p0, &p1, &p2]
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0);
        Self::with_size(p0, p1, p2, n)
    }

    pub fn with_size(
        p0: Polynomial<F>,
        p1: Polynomial<F>,
        p2: Polynomial<F>,
        n: usize,
    ) -> Result<Self> {
        if p0.is_zero() && p1.is_zero() && p2.is_zero() {
            return Err(Error::Degenerate("all three polynomials vanish".into()));
        }
        let required = [&p0, &p1, &p2]
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0);
        if n < required {
            return Err(Error::Size {
                requested: n,
                required,
            });
        }
        if n == 0 {
            return Err(Error::Degree(
                "constant triple maps the line to a point".into(),
            ));
        }
        Ok(RationalTriple { p0, p1, p2, n })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `(p1(t)/p0(t), p2(t)/p0(t))`, or `None` where `p0(t) = 0`.
    pub fn point(&self, t: &F) -> Option<(F, F)> {
        let d = self.p0.eval(t);
        if d.is_zero() {
            return None;
        }
        Some((self.p1.eval(t) / d.clone(), self.p2.eval(t) / d))
    }

    /// The three pencil coefficients `(B(p1,p2), B(p2,p0), B(p0,p1))`.
    pub fn pencil(&self) -> Result<[Matrix<F>; 3]> {
        let b = |a: &Polynomial<F>, c: &Polynomial<F>| {
            bezout_matrix(a, c, Some(self.n)).map(|m| m.into_matrix())
        };
        Ok([
            b(&self.p1, &self.p2)?,
            b(&self.p2, &self.p0)?,
            b(&self.p0, &self.p1)?,
        ])
    }
}

/// `det(b_const + x1 b_x1 + x2 b_x2)` as an exact bivariate polynomial.
///
/// The determinant is sampled on the grid `x1, x2 ∈ {0, …, n}` and recovered
/// by tensor-product Newton interpolation. Grid points are independent and
/// evaluated in parallel; exact arithmetic makes the result independent of
/// evaluation order.
pub fn pencil_det<F: ExactField>(
    b_const: &Matrix<F>,
    b_x1: &Matrix<F>,
    b_x2: &Matrix<F>,
) -> Result<BivariatePolynomial<F>> {
    let n = b_const.rows();
    for m in [b_const, b_x1, b_x2] {
        if m.rows() != n || m.cols() != n {
            return Err(Error::Shape(
                "pencil matrices must share one square shape".into(),
            ));
        }
    }
    let nodes: Vec<F> = (0..=n).map(|k| F::from_i64(k as i64)).collect();
    let values: Vec<F> = (0..(n + 1) * (n + 1))
        .into_par_iter()
        .map(|k| {
            let (a, b) = (&nodes[k / (n + 1)], &nodes[k % (n + 1)]);
            let m = &(b_const + &b_x1.scale(a)) + &b_x2.scale(b);
            m.det()
        })
        .collect::<Result<_>>()?;
    // interpolate along x1 for each fixed x2, then along x2 per x1-coefficient
    let mut by_x2: Vec<Vec<F>> = Vec::with_capacity(n + 1);
    for b in 0..=n {
        let column: Vec<F> = (0..=n).map(|a| values[a * (n + 1) + b].clone()).collect();
        by_x2.push(Polynomial::interpolate(&nodes, &column)?.padded(n + 1));
    }
    let grid = (0..=n)
        .map(|i| {
            let ys: Vec<F> = by_x2.iter().map(|c| c[i].clone()).collect();
            Polynomial::interpolate(&nodes, &ys).map(Polynomial::into_coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    let delta = BivariatePolynomial::new(grid);
    if delta.total_degree().is_some_and(|d| d > n) {
        return Err(Error::InvariantViolation(
            "pencil determinant exceeds total degree n".into(),
        ));
    }
    Ok(delta)
}

/// Raw (unnormalized) pencil determinant of a triple.
pub fn implicit_determinant<F: ExactField>(
    t: &RationalTriple<F>,
) -> Result<BivariatePolynomial<F>> {
    let [b12, b20, b01] = t.pencil()?;
    pencil_det(&b12, &b20, &b01)
}

/// Canonical implicit equation of the image curve.
///
/// The result is scaled to integer components with unit content and a
/// positive lexicographically first coefficient (ordered by `x1` exponent,
/// then `x2` exponent). For `(1, t, t²)` this is `x2 - x1²`.
pub fn implicitize<F: ExactField>(t: &RationalTriple<F>) -> Result<BivariatePolynomial<F>> {
    let delta = implicit_determinant(t)?;
    if delta.is_zero() {
        return Err(Error::DegenerateTriple);
    }
    Ok(delta.canonical())
}

/// `(z^m, z^m q(z), Σ conj(a_k) z^{m-k})` for `q = Σ a_k z^k` of degree `m`,
/// sized at `n = 2m`. Then `p1/p0 = q(z)` and `p2/p0 = conj(q(1/z̄))`.
pub fn reciprocal_conjugate_triple(
    q: &Polynomial<GaussianRational>,
) -> Result<RationalTriple<GaussianRational>> {
    let m = match q.degree() {
        Some(m) if m >= 1 => m,
        _ => return Err(Error::Degree("quadrature map must have degree >= 1".into())),
    };
    let zm = Polynomial::monomial(GaussianRational::from_i64(1), m);
    let p1 = &zm * q;
    let p2 = q.conj().reversed(m);
    RationalTriple::with_size(zm, p1, p2, 2 * m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureBoundary {
    /// Canonical `Δ(z, z̄)`, with `x1` read as `z` and `x2` as `z̄`.
    pub delta: BivariatePolynomial<GaussianRational>,
    /// Exponents `(a, b)` of the monomial factor `z^a z̄^b` removed from
    /// the raw determinant.
    pub removed_monomial: (usize, usize),
}

/// Boundary of the image of the unit disk under `q`.
pub fn quadrature_boundary(q: &Polynomial<GaussianRational>) -> Result<QuadratureBoundary> {
    let triple = reciprocal_conjugate_triple(q)?;
    let raw = implicit_determinant(&triple)?;
    if raw.is_zero() {
        return Err(Error::DegenerateTriple);
    }
    let (stripped, removed_monomial) = raw.strip_monomial_factor();
    Ok(QuadratureBoundary {
        delta: stripped.canonical(),
        removed_monomial,
    })
}

/// Float samples `(θ, Re q(e^{iθ}), Im q(e^{iθ}))` of the boundary curve.
pub fn boundary_samples(
    q: &Polynomial<GaussianRational>,
    samples: usize,
    interval: (f64, f64),
) -> Vec<(f64, f64, f64)> {
    let qc = q.map(Scalar::to_complex);
    let (lo, hi) = interval;
    (0..samples)
        .map(|k| {
            let theta = if samples <= 1 {
                lo
            } else {
                lo + (hi - lo) * k as f64 / (samples - 1) as f64
            };
            let v = qc.eval(&num_complex::Complex64::from_polar(1.0, theta));
            (theta, v.re, v.im)
        })
        .collect()
}
