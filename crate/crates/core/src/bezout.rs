//! Bezout matrices, Vandermonde vectors and common-zero counting.
//!
//! Index convention: matrix row/column `i` (0-based) pairs with the exponent
//! `x^i`, so `B[(i, j)]` is the coefficient of `x^i y^j` in the Cayley
//! quotient `(p(x)q(y) - q(x)p(y)) / (x - y)`.

use num_traits::Zero;

use crate::arith::{BivariatePolynomial, ExactField, Matrix, Polynomial};
use crate::error::{Error, Result};

/// The symmetric matrix of the Cayley quotient of `(p, q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BezoutMatrix<F: ExactField> {
    matrix: Matrix<F>,
    p: Polynomial<F>,
    q: Polynomial<F>,
}

impl<F: ExactField> BezoutMatrix<F> {
    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix<F> {
        self.matrix
    }

    /// The pair `(p, q)` the matrix was built from.
    pub fn source(&self) -> (&Polynomial<F>, &Polynomial<F>) {
        (&self.p, &self.q)
    }
}

fn max_degree<F: ExactField>(polys: &[&Polynomial<F>]) -> usize {
    polys.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
}

/// `(p(x)q(y) - q(x)p(y)) / (x - y)`, by exact division in `F[y][x]`.
pub fn cayley_quotient<F: ExactField>(
    p: &Polynomial<F>,
    q: &Polynomial<F>,
    n: usize,
) -> Result<BivariatePolynomial<F>> {
    let required = max_degree(&[p, q]);
    if n < required {
        return Err(Error::Size {
            requested: n,
            required,
        });
    }
    // numerator rows: c_i(y) = p_i q(y) - q_i p(y)
    let rows: Vec<Polynomial<F>> = (0..=required)
        .map(|i| &q.scale(&p.coeff(i)) - &p.scale(&q.coeff(i)))
        .collect();
    let m = rows.len() - 1;
    if m == 0 {
        if !rows[0].is_zero() {
            return Err(Error::InvariantViolation(
                "constant numerator is nonzero".into(),
            ));
        }
        return Ok(BivariatePolynomial::zero());
    }
    // (x - y) sum d_k x^k = sum c_i x^i  =>  d_{i-1} = c_i + y d_i, remainder c_0 + y d_0
    let y = Polynomial::x();
    let mut d = vec![Polynomial::zero(); m];
    d[m - 1] = rows[m].clone();
    for i in (1..m).rev() {
        d[i - 1] = &rows[i] + &(&y * &d[i]);
    }
    let remainder = &rows[0] + &(&y * &d[0]);
    if !remainder.is_zero() {
        return Err(Error::InvariantViolation(
            "division of the Cayley numerator by (x - y) left a remainder".into(),
        ));
    }
    let quotient = BivariatePolynomial::new(d.into_iter().map(Polynomial::into_coeffs).collect());
    if quotient.degree_x().is_some_and(|k| k >= n) || quotient.degree_y().is_some_and(|k| k >= n) {
        return Err(Error::InvariantViolation(
            "Cayley quotient exceeds degree n - 1".into(),
        ));
    }
    Ok(quotient)
}

/// Bezout matrix of size `n`, defaulting to `max(deg p, deg q)`.
///
/// Padding beyond the default size appends zero rows and columns, inflating
/// the kernel by `n - max(deg p, deg q)`.
pub fn bezout_matrix<F: ExactField>(
    p: &Polynomial<F>,
    q: &Polynomial<F>,
    n: Option<usize>,
) -> Result<BezoutMatrix<F>> {
    let required = max_degree(&[p, q]);
    let n = n.unwrap_or(required);
    if n < required {
        return Err(Error::Size {
            requested: n,
            required,
        });
    }
    if n == 0 {
        return Err(Error::Size {
            requested: 0,
            required: 1,
        });
    }
    let quotient = cayley_quotient(p, q, n)?;
    let matrix = Matrix::from_fn(n, n, |i, j| quotient.coeff(i, j));
    Ok(BezoutMatrix {
        matrix,
        p: p.clone(),
        q: q.clone(),
    })
}

/// `V^k_n(x)`: the k-th derivative of `(1, x, ..., x^{n-1})` at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeVector<F> {
    pub point: F,
    pub order: usize,
    pub entries: Vec<F>,
}

pub fn vandermonde<F: ExactField>(point: &F, n: usize, k: usize) -> VandermondeVector<F> {
    let entries = (0..n)
        .map(|i| {
            if i < k {
                return F::zero();
            }
            let falling = (i - k + 1..=i).fold(F::one(), |a, f| a * F::from_i64(f as i64));
            let mut pow = F::one();
            for _ in 0..i - k {
                pow = pow * point.clone();
            }
            falling * pow
        })
        .collect();
    VandermondeVector {
        point: point.clone(),
        order: k,
        entries,
    }
}

/// Rank of the matrix whose columns are `V^j_n(x_k)` for `j = 0..=max_order_k`.
pub fn confluent_vandermonde_rank<F: ExactField>(points: &[(F, usize)], n: usize) -> usize {
    let columns: Vec<Vec<F>> = points
        .iter()
        .flat_map(|(x, top)| (0..=*top).map(move |k| vandermonde(x, n, k).entries))
        .collect();
    if columns.is_empty() || n == 0 {
        return 0;
    }
    Matrix::from_fn(n, columns.len(), |i, j| columns[j][i].clone()).rank()
}

/// Number of common zeros of `p` and `q`, counted with multiplicity: the
/// kernel dimension of `B(p, q)` at size `max(deg p, deg q)`, which equals
/// `deg gcd(p, q)`.
pub fn common_zero_count<F: ExactField>(p: &Polynomial<F>, q: &Polynomial<F>) -> Result<usize> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    if max_degree(&[p, q]) == 0 {
        return Ok(0);
    }
    let b = bezout_matrix(p, q, None)?;
    Ok(b.matrix().rank_kernel().1.len())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `V(x)ᵀ B(p,q) V(y) = (p(x)q(y) - q(x)p(y)) / (x - y)`
    CayleyForm,
    /// `V(x)ᵀ B(p,q) V(y) = V(x)ᵀ (B(p,1)q(y) - B(q,1)p(y)) V(y)`
    Decomposition,
    /// `V(x)ᵀ B(p,q) V(x) = q(x)p'(x) - p(x)q'(x)`
    Diagonal,
    /// `wᵀ B(p,q) V(y) = wᵀ (B(p,1)q(y) - B(q,1)p(y)) V(y)`
    Corollary,
}

impl Identity {
    pub const ALL: [Identity; 4] = [
        Identity::CayleyForm,
        Identity::Decomposition,
        Identity::Diagonal,
        Identity::Corollary,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Identity::CayleyForm => "cayley-form",
            Identity::Decomposition => "decomposition",
            Identity::Diagonal => "diagonal",
            Identity::Corollary => "corollary",
        }
    }
}

/// Evaluation point for the identity suite. `w` must have the matrix size.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentitySample<F> {
    pub x: F,
    pub y: F,
    pub w: Vec<F>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck<F> {
    pub identity: Identity,
    pub sample: usize,
    pub lhs: F,
    pub rhs: F,
}

impl<F: PartialEq> IdentityCheck<F> {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport<F> {
    pub checks: Vec<IdentityCheck<F>>,
}

impl<F: PartialEq> IdentityReport<F> {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    /// `(passed, total)` for one identity.
    pub fn tally(&self, identity: Identity) -> (usize, usize) {
        let of_kind = self.checks.iter().filter(|c| c.identity == identity);
        let total = of_kind.clone().count();
        (of_kind.filter(|c| c.passed()).count(), total)
    }
}

/// Evaluates the four Bezout identities exactly at each sample.
pub fn identity_suite<F: ExactField>(
    p: &Polynomial<F>,
    q: &Polynomial<F>,
    samples: &[IdentitySample<F>],
) -> Result<IdentityReport<F>> {
    let b = bezout_matrix(p, q, None)?;
    let n = b.size();
    let one = Polynomial::one();
    let bp1 = bezout_matrix(p, &one, Some(n))?.into_matrix();
    let bq1 = bezout_matrix(q, &one, Some(n))?.into_matrix();
    let b = b.into_matrix();
    let (dp, dq) = (p.derivative(1), q.derivative(1));

    let mut checks = Vec::with_capacity(samples.len() * 4);
    for (k, s) in samples.iter().enumerate() {
        if s.x == s.y {
            return Err(Error::Domain(format!(
                "sample {k} has x = y; the quotient form needs distinct points (use the diagonal identity)"
            )));
        }
        if s.w.len() != n {
            return Err(Error::Shape(format!(
                "sample {k}: w has length {}, expected {n}",
                s.w.len()
            )));
        }
        let vx = vandermonde(&s.x, n, 0).entries;
        let vy = vandermonde(&s.y, n, 0).entries;
        let (px, py, qx, qy) = (p.eval(&s.x), p.eval(&s.y), q.eval(&s.x), q.eval(&s.y));
        let split = &bp1.scale(&qy) - &bq1.scale(&py);

        let form = b.bilinear(&vx, &vy)?;
        let quotient = (px.clone() * qy - qx.clone() * py) / (s.x.clone() - s.y.clone());
        checks.push(IdentityCheck {
            identity: Identity::CayleyForm,
            sample: k,
            lhs: form.clone(),
            rhs: quotient,
        });
        checks.push(IdentityCheck {
            identity: Identity::Decomposition,
            sample: k,
            lhs: form,
            rhs: split.bilinear(&vx, &vy)?,
        });
        checks.push(IdentityCheck {
            identity: Identity::Diagonal,
            sample: k,
            lhs: b.bilinear(&vx, &vx)?,
            rhs: qx * dp.eval(&s.x) - px * dq.eval(&s.x),
        });
        checks.push(IdentityCheck {
            identity: Identity::Corollary,
            sample: k,
            lhs: b.bilinear(&s.w, &vy)?,
            rhs: split.bilinear(&s.w, &vy)?,
        });
    }
    Ok(IdentityReport { checks })
}

/// True when `B(p, q) V(r) = 0`, as happens at every common root `r`.
pub fn annihilates_vandermonde<F: ExactField>(b: &BezoutMatrix<F>, r: &F) -> Result<bool> {
    let v = vandermonde(r, b.size(), 0).entries;
    Ok(b.matrix().mul_vec(&v)?.iter().all(Zero::is_zero))
}
