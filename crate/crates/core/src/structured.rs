//! Hankel inverses of Bezout matrices and the Hermite upper-half-plane test.

use num_complex::Complex64;
use num_traits::Zero;

use crate::arith::{
    poly_roots, ExactField, GaussianRational, Matrix, Polynomial, Rational, Scalar,
};
use crate::bezout::bezout_matrix;
use crate::error::{Error, Result};

/// Matrix with entry `(i, j) = generator[i + j]` (0-based), so the generator
/// has `2n - 1` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelMatrix<T> {
    n: usize,
    generator: Vec<T>,
}

impl<T: Scalar> HankelMatrix<T> {
    pub fn new(n: usize, generator: Vec<T>) -> Result<Self> {
        if n == 0 || generator.len() != 2 * n - 1 {
            return Err(Error::Shape(format!(
                "Hankel generator of length {} for size {n}",
                generator.len()
            )));
        }
        Ok(HankelMatrix { n, generator })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn generator(&self) -> &[T] {
        &self.generator
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.generator[i + j]
    }

    pub fn to_matrix(&self) -> Matrix<T> {
        Matrix::from_fn(self.n, self.n, |i, j| self.generator[i + j].clone())
    }
}

impl<F: ExactField> HankelMatrix<F> {
    /// Reads the generator off a square matrix, returning `None` unless every
    /// anti-diagonal is exactly constant.
    pub fn from_matrix(m: &Matrix<F>) -> Option<Self> {
        if !m.is_square() || m.rows() == 0 {
            return None;
        }
        let n = m.rows();
        let generator: Vec<F> = (0..2 * n - 1)
            .map(|s| {
                let i = s.saturating_sub(n - 1);
                m[(i, s - i)].clone()
            })
            .collect();
        let consistent = (0..n).all(|i| (0..n).all(|j| m[(i, j)] == generator[i + j]));
        consistent.then_some(HankelMatrix { n, generator })
    }
}

/// Exact inverse of `B(p, q)` in Hankel generator form.
pub fn bezout_inverse<F: ExactField>(
    p: &Polynomial<F>,
    q: &Polynomial<F>,
) -> Result<HankelMatrix<F>> {
    let b = bezout_matrix(p, q, None)?;
    let inv = b.matrix().inverse()?;
    HankelMatrix::from_matrix(&inv)
        .ok_or_else(|| Error::InvariantViolation("inverse of a Bezout matrix is not Hankel".into()))
}

/// The same inverse from the root-sum formula
/// `h_s = Σ_k x_k^s / (q(x_k) p'(x_k))` over the zeros `x_k` of `p`.
///
/// Requires `deg p = deg q`, `p` squarefree and `gcd(p, q) = 1`, all checked
/// exactly before any floating-point work.
pub fn hankel_from_roots<F: ExactField>(
    p: &Polynomial<F>,
    q: &Polynomial<F>,
    tol: f64,
) -> Result<HankelMatrix<Complex64>> {
    let n = match (p.degree(), q.degree()) {
        (Some(dp), Some(dq)) if dp == dq && dp >= 1 => dp,
        (dp, dq) => {
            return Err(Error::Degree(format!(
                "root formula needs deg p = deg q >= 1, got {dp:?} and {dq:?}"
            )))
        }
    };
    if !p.is_squarefree()? {
        return Err(Error::MultipleZero);
    }
    if p.gcd(q)?.degree() != Some(0) {
        return Err(Error::CommonZero);
    }
    let roots = poly_roots(p, tol)?;
    let pc = p.map(Scalar::to_complex);
    let qc = q.map(Scalar::to_complex);
    let dpc = pc.derivative(1);
    let weights: Vec<Complex64> = roots
        .iter()
        .map(|x| (qc.eval(x) * dpc.eval(x)).inv())
        .collect();
    let generator = (0..2 * n - 1)
        .map(|s| {
            roots
                .iter()
                .zip(&weights)
                .map(|(x, w)| x.powu(s as u32) * w)
                .sum()
        })
        .collect();
    HankelMatrix::new(n, generator)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HermiteVerdict {
    /// Every zero lies in the open upper half-plane.
    AllUpper,
    /// The form is nondegenerate but not positive definite.
    NotAllUpper,
    /// The form is singular: `p` and `p̄` share a zero (a real zero or a
    /// conjugate pair of zeros).
    Boundary,
}

impl HermiteVerdict {
    pub fn label(self) -> &'static str {
        match self {
            HermiteVerdict::AllUpper => "ALL_UPPER",
            HermiteVerdict::NotAllUpper => "NOT_ALL_UPPER",
            HermiteVerdict::Boundary => "BOUNDARY",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HermiteReport {
    pub verdict: HermiteVerdict,
    /// `(1/2i) B(p, p̄)`, Hermitian.
    pub form: Matrix<GaussianRational>,
    /// Its leading principal minors, all exactly real.
    pub minors: Vec<Rational>,
}

/// Decides whether all zeros of `p` lie in the open upper half-plane by
/// Sylvester's criterion on `(1/2i) B(p, p̄)`, exactly.
pub fn hermite_upper_halfplane(p: &Polynomial<GaussianRational>) -> Result<HermiteReport> {
    match p.degree() {
        Some(d) if d >= 1 => {}
        _ => return Err(Error::Degree("Hermite test needs degree >= 1".into())),
    }
    let b = bezout_matrix(p, &p.conj(), None)?;
    // 1 / (2i) = -i/2
    let factor = GaussianRational::new(Rational::zero(), crate::arith::rat(-1, 2));
    let form = b.matrix().scale(&factor);
    if let Err(e) = form.check_hermitian() {
        return Err(Error::InvariantViolation(format!(
            "(1/2i) B(p, conj p) is not Hermitian: {e}"
        )));
    }
    let minors: Vec<Rational> = form
        .leading_principal_minors(true)?
        .into_iter()
        .map(|m| m.re)
        .collect();
    let verdict = if minors.iter().all(|m| m > &Rational::zero()) {
        HermiteVerdict::AllUpper
    } else if minors.last().is_some_and(Zero::is_zero) {
        HermiteVerdict::Boundary
    } else {
        HermiteVerdict::NotAllUpper
    };
    Ok(HermiteReport {
        verdict,
        form,
        minors,
    })
}
