//! Finite-dimensional operator nodes and commutative vessels.
//!
//! All matrices here are complex floats. A node `(A, Φ, σ)` satisfies
//! `Φ*σΦ = (A - A*)/i`; a vessel additionally carries `A1, A2, σ1, σ2, γ_in,
//! γ_out` subject to the colligation, gamma and linkage identities checked by
//! [`vessel_residuals`].
//!
//! Sign convention: with `B(p, q)` the matrix of `(p(x)q(y) - q(x)p(y))/(x-y)`,
//! the vessel built from a node uses `σ1 = B(p1, p0) ⊗ σ`, `σ2 = B(p2, p0) ⊗ σ`
//! and `γ_in = B(p1, p2) ⊗ σ`. These are the choices under which every
//! identity holds for the inner map `Φ'` of [`kronecker_phi_prime`], and the
//! discriminant `det(γ_in + x1 σ2 - x2 σ1)` factors as `Δ(x1, x2)^e det(σ)^n`
//! with `Δ` the implicitization determinant and `e = dim E`.

use num_complex::Complex64;

use crate::arith::{BivariatePolynomial, Matrix, Polynomial, Rational, Scalar};
use crate::bezout::bezout_matrix;
use crate::error::{Error, Result};
use crate::implicit::{implicitize, RationalTriple};

pub type CMatrix = Matrix<Complex64>;

/// Default residual tolerance for vessel checks.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Condition estimate above which `p0(A)` counts as singular.
pub const MAX_CONDITION: f64 = 1e12;

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorNode {
    pub a: CMatrix,
    pub phi: CMatrix,
    pub sigma: CMatrix,
}

impl OperatorNode {
    pub fn new(a: CMatrix, phi: CMatrix, sigma: CMatrix) -> Result<Self> {
        let node = OperatorNode { a, phi, sigma };
        node.check_shapes()?;
        hermitian_defect(&node.sigma, "sigma")?;
        Ok(node)
    }

    /// Keeps the Hermitian part of `a0` and replaces its skew part by
    /// `(i/2) Φ*σΦ`, which makes the node identity hold by construction.
    pub fn symmetrized(a0: &CMatrix, phi: CMatrix, sigma: CMatrix) -> Result<Self> {
        let half = Complex64::new(0.5, 0.0);
        let hermitian = (a0 + &a0.conj_transpose()).scale(&half);
        let skew = phi.conj_transpose().try_mul(&sigma)?.try_mul(&phi)?;
        let a = hermitian.try_add(&skew.scale(&(I * half)))?;
        Self::new(a, phi, sigma)
    }

    pub fn inner_dim(&self) -> usize {
        self.a.rows()
    }

    pub fn outer_dim(&self) -> usize {
        self.sigma.rows()
    }

    fn check_shapes(&self) -> Result<()> {
        let h = self.a.rows();
        let e = self.sigma.rows();
        if !self.a.is_square()
            || !self.sigma.is_square()
            || self.phi.rows() != e
            || self.phi.cols() != h
        {
            return Err(Error::Shape(format!(
                "node shapes: A {}x{}, Phi {}x{}, sigma {}x{}",
                self.a.rows(),
                self.a.cols(),
                self.phi.rows(),
                self.phi.cols(),
                self.sigma.rows(),
                self.sigma.cols()
            )));
        }
        Ok(())
    }
}

fn hermitian_defect(m: &CMatrix, name: &str) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Shape(format!("{name} must be square")));
    }
    let defect = (m - &m.conj_transpose()).max_abs();
    if defect > 1e-12 * (1.0 + m.max_abs()) {
        return Err(Error::Domain(format!(
            "{name} is not Hermitian (defect {defect:e})"
        )));
    }
    Ok(())
}

/// `max |Φ*σΦ - (A - A*)/i|`.
pub fn node_residual(c: &OperatorNode) -> Result<f64> {
    c.check_shapes()?;
    let lhs = c.phi.conj_transpose().try_mul(&c.sigma)?.try_mul(&c.phi)?;
    let rhs = c.a.try_sub(&c.a.conj_transpose())?.scale(&(-I));
    Ok(lhs.try_sub(&rhs)?.max_abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommutativeVessel {
    pub a1: CMatrix,
    pub a2: CMatrix,
    pub phi: CMatrix,
    pub sigma1: CMatrix,
    pub sigma2: CMatrix,
    pub gamma_in: CMatrix,
    pub gamma_out: CMatrix,
}

impl CommutativeVessel {
    fn check_shapes(&self) -> Result<()> {
        let h = self.a1.rows();
        let e = self.phi.rows();
        let inner_ok = [&self.a1, &self.a2]
            .iter()
            .all(|m| m.rows() == h && m.cols() == h);
        let outer_ok = [&self.sigma1, &self.sigma2, &self.gamma_in, &self.gamma_out]
            .iter()
            .all(|m| m.rows() == e && m.cols() == e);
        if !inner_ok || !outer_ok || self.phi.cols() != h {
            return Err(Error::Shape("vessel shapes are inconsistent".into()));
        }
        Ok(())
    }

    /// `det(γ_in + x1 σ2 - x2 σ1)`, the vessel's discriminant polynomial at a point.
    pub fn discriminant_at(&self, x1: Complex64, x2: Complex64) -> Result<Complex64> {
        let m = self
            .gamma_in
            .try_add(&self.sigma2.scale(&x1))?
            .try_sub(&self.sigma1.scale(&x2))?;
        Ok(det_lu(&m))
    }
}

/// Residuals of the vessel identities, each a max-entry magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VesselResiduals {
    /// `Φ*σ1Φ - (A1 - A1*)/i`
    pub colligation1: f64,
    /// `Φ*σ2Φ - (A2 - A2*)/i`
    pub colligation2: f64,
    /// `γ_in Φ - (σ1 Φ A2* - σ2 Φ A1*)`
    pub gamma_in: f64,
    /// `γ_out Φ - (σ1 Φ A2 - σ2 Φ A1)`
    pub gamma_out: f64,
    /// `γ_out - γ_in - i(σ1ΦΦ*σ2 - σ2ΦΦ*σ1)`
    pub linkage: f64,
    /// `A1 A2 - A2 A1`
    pub commutativity: f64,
}

impl VesselResiduals {
    pub fn as_array(&self) -> [f64; 6] {
        [
            self.colligation1,
            self.colligation2,
            self.gamma_in,
            self.gamma_out,
            self.linkage,
            self.commutativity,
        ]
    }

    pub fn max(&self) -> f64 {
        self.as_array().into_iter().fold(0.0, f64::max)
    }

    pub fn within(&self, tol: f64) -> bool {
        self.max() <= tol
    }
}

pub fn vessel_residuals(v: &CommutativeVessel) -> Result<VesselResiduals> {
    v.check_shapes()?;
    let phi_h = v.phi.conj_transpose();
    let colligation = |sigma: &CMatrix, a: &CMatrix| -> Result<f64> {
        let lhs = phi_h.try_mul(sigma)?.try_mul(&v.phi)?;
        let rhs = a.try_sub(&a.conj_transpose())?.scale(&(-I));
        Ok(lhs.try_sub(&rhs)?.max_abs())
    };
    let gamma = |g: &CMatrix, a1: &CMatrix, a2: &CMatrix| -> Result<f64> {
        let lhs = g.try_mul(&v.phi)?;
        let rhs = v
            .sigma1
            .try_mul(&v.phi)?
            .try_mul(a2)?
            .try_sub(&v.sigma2.try_mul(&v.phi)?.try_mul(a1)?)?;
        Ok(lhs.try_sub(&rhs)?.max_abs())
    };
    let ppt = v.phi.try_mul(&phi_h)?;
    let cross = v
        .sigma1
        .try_mul(&ppt)?
        .try_mul(&v.sigma2)?
        .try_sub(&v.sigma2.try_mul(&ppt)?.try_mul(&v.sigma1)?)?;
    let linkage = v
        .gamma_out
        .try_sub(&v.gamma_in)?
        .try_sub(&cross.scale(&I))?
        .max_abs();
    Ok(VesselResiduals {
        colligation1: colligation(&v.sigma1, &v.a1)?,
        colligation2: colligation(&v.sigma2, &v.a2)?,
        gamma_in: gamma(&v.gamma_in, &v.a1.conj_transpose(), &v.a2.conj_transpose())?,
        gamma_out: gamma(&v.gamma_out, &v.a1, &v.a2)?,
        linkage,
        commutativity: v
            .a1
            .try_mul(&v.a2)?
            .try_sub(&v.a2.try_mul(&v.a1)?)?
            .max_abs(),
    })
}

/// `p(M)` by Horner's rule.
pub fn poly_of_matrix(p: &Polynomial<Rational>, m: &CMatrix) -> CMatrix {
    let n = m.rows();
    p.coeffs()
        .iter()
        .rev()
        .fold(CMatrix::zeros(n, n), |acc, c| {
            &(&acc * m) + &CMatrix::identity(n).scale(&c.to_complex())
        })
}

fn invert_checked(m: &CMatrix) -> Result<CMatrix> {
    let (inv, condition) = m.inverse_with_condition()?;
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(Error::Invertibility { condition });
    }
    Ok(inv)
}

/// The inner map `Φ'` stacking blocks `Φ (A*)^j p0(A*)^{-1}` for
/// `j = 0, …, n-1`, an `(e·n) × h` matrix.
pub fn kronecker_phi_prime(
    c: &OperatorNode,
    p0: &Polynomial<Rational>,
    n: usize,
) -> Result<CMatrix> {
    c.check_shapes()?;
    let a_star = c.a.conj_transpose();
    let p0_inv = invert_checked(&poly_of_matrix(p0, &a_star))?;
    let mut blocks = Vec::with_capacity(n);
    let mut power = CMatrix::identity(c.inner_dim());
    for _ in 0..n {
        blocks.push(c.phi.try_mul(&power)?.try_mul(&p0_inv)?);
        power = &power * &a_star;
    }
    CMatrix::vstack(&blocks)
}

/// Assembles the vessel of the rational image `(p1/p0, p2/p0)` of a node.
///
/// `A1 = p1(A) p0(A)^{-1}`, `A2 = p2(A) p0(A)^{-1}`, Bezout-tensor `σ1, σ2,
/// γ_in` (see the module docs for the sign convention) and `γ_out` from the
/// linkage identity with the supplied `phi_prime`. The result is not
/// validated; pass it to [`vessel_residuals`] for that.
pub fn vessel_from_node(
    c: &OperatorNode,
    p0: &Polynomial<Rational>,
    p1: &Polynomial<Rational>,
    p2: &Polynomial<Rational>,
    n: usize,
    phi_prime: &CMatrix,
) -> Result<CommutativeVessel> {
    c.check_shapes()?;
    let (h, e) = (c.inner_dim(), c.outer_dim());
    if phi_prime.rows() != e * n || phi_prime.cols() != h {
        return Err(Error::Shape(format!(
            "Phi' must be {}x{h}, got {}x{}",
            e * n,
            phi_prime.rows(),
            phi_prime.cols()
        )));
    }
    let p0_inv = invert_checked(&poly_of_matrix(p0, &c.a))?;
    let a1 = poly_of_matrix(p1, &c.a).try_mul(&p0_inv)?;
    let a2 = poly_of_matrix(p2, &c.a).try_mul(&p0_inv)?;
    let tensor = |a: &Polynomial<Rational>, b: &Polynomial<Rational>| -> Result<CMatrix> {
        Ok(bezout_matrix(a, b, Some(n))?
            .matrix()
            .to_complex()
            .kron(&c.sigma))
    };
    let sigma1 = tensor(p1, p0)?;
    let sigma2 = tensor(p2, p0)?;
    let gamma_in = tensor(p1, p2)?;
    let ppt = phi_prime.try_mul(&phi_prime.conj_transpose())?;
    let cross = sigma1
        .try_mul(&ppt)?
        .try_mul(&sigma2)?
        .try_sub(&sigma2.try_mul(&ppt)?.try_mul(&sigma1)?)?;
    let gamma_out = gamma_in.try_add(&cross.scale(&I))?;
    Ok(CommutativeVessel {
        a1,
        a2,
        phi: phi_prime.clone(),
        sigma1,
        sigma2,
        gamma_in,
        gamma_out,
    })
}

/// Base determinant `Δ` of the discriminant curve. The vessel's own
/// discriminant polynomial is `Δ^e · det(σ)^n` with `e = dim E`.
pub fn vessel_discriminant(
    p0: &Polynomial<Rational>,
    p1: &Polynomial<Rational>,
    p2: &Polynomial<Rational>,
    n: usize,
) -> Result<BivariatePolynomial<Rational>> {
    let t = RationalTriple::with_size(p0.clone(), p1.clone(), p2.clone(), n)?;
    implicitize(&t)
}

/// Determinant by partially pivoted LU.
pub fn det_lu(m: &CMatrix) -> Complex64 {
    let n = m.rows();
    let mut a = m.to_rows();
    let mut det = Complex64::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].norm().total_cmp(&a[j][c].norm()))
            .expect("nonempty");
        if a[p][c].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        let (top, bottom) = a.split_at_mut(c + 1);
        let pivot_row = &top[c];
        for row in bottom {
            let f = row[c] / pivot_row[c];
            for (x, v) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= f * v;
            }
        }
    }
    det
}
