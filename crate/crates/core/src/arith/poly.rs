//! Dense univariate polynomials, coefficients stored in ascending degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::scalar::{ExactField, Scalar};
use crate::error::{Error, Result};

/// `coeffs[i]` is the coefficient of `x^i`. Trailing zeros are always
/// stripped, so the zero polynomial has no coefficients at all.
#[derive(Clone, PartialEq)]
pub struct Polynomial<F> {
    coeffs: Vec<F>,
}

impl<F: Scalar> Polynomial<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// Monic linear factor `x - r`.
    pub fn linear_root(r: F) -> Self {
        Self::new(vec![-r, F::one()])
    }

    pub fn from_roots(roots: &[F]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear_root(r.clone()))
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    /// Coefficients padded with zeros to exactly `len` entries.
    ///
    /// Panics if the polynomial has more than `len` coefficients.
    pub fn padded(&self, len: usize) -> Vec<F> {
        assert!(self.coeffs.len() <= len, "padding below polynomial length");
        let mut c = self.coeffs.clone();
        c.resize(len, F::zero());
        c
    }

    /// `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * inner) + &Self::constant(c.clone())
        })
    }

    /// k-th formal derivative.
    pub fn derivative(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(k)
            .map(|(i, c)| {
                let falling = (i - k + 1..=i).fold(F::one(), |acc, f| acc * F::from_i64(f as i64));
                c.clone() * falling
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Coefficient-wise complex conjugate (p̄).
    pub fn conj(&self) -> Self {
        Self::new(self.coeffs.iter().map(Scalar::conj).collect())
    }

    /// `x^k · p(1/x)`: coefficients reversed within length `k + 1`.
    pub fn reversed(&self, k: usize) -> Self {
        let mut c = self.padded(k + 1);
        c.reverse();
        Self::new(c)
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Taylor shift: `p(x + a)`.
    pub fn shift(&self, a: &F) -> Self {
        self.compose(&Self::new(vec![a.clone(), F::one()]))
    }
}

impl<F: ExactField> Polynomial<F> {
    /// Euclidean division over the field.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?.clone();
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = rem[k + j].clone() - c.clone() * d.clone();
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => {
                let inv = F::one() / l.clone();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Monic gcd via the Euclidean remainder sequence.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        Ok(self.gcd(&self.derivative(1))?.degree() == Some(0))
    }

    /// `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> Result<Self> {
        let g = self.gcd(&self.derivative(1))?;
        Ok(self.div_rem(&g)?.0.monic())
    }

    /// Newton interpolation through `(xs[k], ys[k])`; abscissae must be distinct.
    pub fn interpolate(xs: &[F], ys: &[F]) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::Shape(format!(
                "{} abscissae for {} values",
                xs.len(),
                ys.len()
            )));
        }
        let n = xs.len();
        let mut dd = ys.to_vec();
        for level in 1..n {
            for k in (level..n).rev() {
                let den = xs[k].clone() - xs[k - level].clone();
                if den.is_zero() {
                    return Err(Error::InvariantViolation(
                        "interpolation abscissae are not distinct".into(),
                    ));
                }
                dd[k] = (dd[k].clone() - dd[k - 1].clone()) / den;
            }
        }
        let mut p = Self::zero();
        for k in (0..n).rev() {
            p = &(&p * &Self::linear_root(xs[k].clone())) + &Self::constant(dd[k].clone());
        }
        Ok(p)
    }
}

impl<F: Scalar> Default for Polynomial<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Scalar> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Polynomial").field(&self.coeffs).finish()
    }
}

impl<F: Scalar + fmt::Display> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

impl<F: Scalar> Add for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn add(self, rhs: Self) -> Polynomial<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<F: Scalar> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn sub(self, rhs: Self) -> Polynomial<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<F: Scalar> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn mul(self, rhs: Self) -> Polynomial<F> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<F: Scalar> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;

    fn neg(self) -> Polynomial<F> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<F: Scalar> $tr for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: Self) -> Polynomial<F> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<F: Scalar> Zero for Polynomial<F> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Scalar> One for Polynomial<F> {
    fn one() -> Self {
        Polynomial::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::{gauss, int, Rational};
    use crate::arith::GaussianRational;
    use proptest::prelude::*;

    type Q = Polynomial<Rational>;

    fn q(c: &[i64]) -> Q {
        Q::from_i64(c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&q(&[1, 1]) * &q(&[-1, 1]), q(&[-1, 0, 1]));
        let p = q(&[2, -3, 1]);
        assert_eq!(&p + &Q::zero(), p);
        assert_eq!(&q(&[2, -3, 1]) - &q(&[3, -4, 1]), q(&[-1, 1]));
    }

    #[test]
    fn zero_polynomial_has_no_degree() {
        assert_eq!(Q::zero().degree(), None);
        assert_eq!(q(&[0, 0, 0]).degree(), None);
        assert_eq!(q(&[5]).degree(), Some(0));
    }

    #[test]
    fn derivatives() {
        assert_eq!(q(&[0, 0, 0, 1]).derivative(1), q(&[0, 0, 3]));
        assert_eq!(q(&[0, 0, 1]).derivative(2), q(&[2]));
        assert_eq!(q(&[2, -3, 1]).derivative(1), q(&[-3, 2]));
        assert!(q(&[1, 1]).derivative(5).is_zero());
    }

    #[test]
    fn gcd_examples() {
        let a = &q(&[-1, 1]) * &q(&[-2, 1]);
        let b = &q(&[-1, 1]) * &q(&[-3, 1]);
        assert_eq!(a.gcd(&b).unwrap(), q(&[-1, 1]));
        assert_eq!(a.gcd(&Q::one()).unwrap(), Q::one());
        let p = q(&[4, 0, 2]);
        assert_eq!(p.gcd(&p).unwrap(), q(&[2, 0, 1]));
        assert_eq!(Q::zero().gcd(&Q::zero()), Err(Error::UndefinedGcd));
        assert_eq!(Q::zero().gcd(&q(&[0, 3])).unwrap(), q(&[0, 1]));
    }

    #[test]
    fn conjugation() {
        let i = gauss(int(0), int(1));
        let p: Polynomial<GaussianRational> =
            Polynomial::new(vec![-i.clone(), GaussianRational::one()]);
        let expected = Polynomial::new(vec![i.clone(), GaussianRational::one()]);
        assert_eq!(p.conj(), expected);

        let real = Polynomial::<GaussianRational>::from_i64(&[1, 2, 3]);
        assert_eq!(real.conj(), real);

        let p = Polynomial::new(vec![
            gauss(int(0), int(2)),
            GaussianRational::zero(),
            gauss(int(1), int(1)),
        ]);
        let expected = Polynomial::new(vec![
            gauss(int(0), int(-2)),
            GaussianRational::zero(),
            gauss(int(1), int(-1)),
        ]);
        assert_eq!(p.conj(), expected);
    }

    #[test]
    fn compose_and_shift() {
        // (x^2 + 1)(x + 1) = x^2 + 2x + 2
        assert_eq!(q(&[1, 0, 1]).compose(&q(&[1, 1])), q(&[2, 2, 1]));
        assert_eq!(q(&[1, 0, 1]).shift(&int(1)), q(&[2, 2, 1]));
    }

    #[test]
    fn interpolation_reproduces_polynomial() {
        let p = q(&[3, -1, 0, 2]);
        let xs: Vec<Rational> = (0..4).map(int).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(Q::interpolate(&xs, &ys).unwrap(), p);
        let dup = vec![int(1), int(1)];
        assert!(matches!(
            Q::interpolate(&dup, &dup),
            Err(Error::InvariantViolation(_))
        ));
    }

    fn arb_poly() -> impl Strategy<Value = Q> {
        prop::collection::vec(-9i64..=9, 0..=7).prop_map(|c| q(&c))
    }

    proptest! {
        #[test]
        fn product_degree_and_leibniz(a in arb_poly(), b in arb_poly()) {
            let prod = &a * &b;
            match (a.degree(), b.degree()) {
                (Some(da), Some(db)) => prop_assert_eq!(prod.degree(), Some(da + db)),
                _ => prop_assert!(prod.is_zero()),
            }
            let lhs = prod.derivative(1);
            let rhs = &(&a.derivative(1) * &b) + &(&a * &b.derivative(1));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn canonical_form_is_idempotent(c in prop::collection::vec(-3i64..=3, 0..=8)) {
            let p = q(&c);
            prop_assert_eq!(Q::new(p.coeffs().to_vec()), p.clone());
            prop_assert!(p.coeffs().last().is_none_or(|c| !c.is_zero()));
        }

        #[test]
        fn division_identity(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (quot, rem) = a.div_rem(&b).unwrap();
            prop_assert_eq!(&(&quot * &b) + &rem, a);
            prop_assert!(rem.degree() < b.degree());
        }
    }
}
