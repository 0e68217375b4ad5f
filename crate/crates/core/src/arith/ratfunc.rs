//! Univariate rational functions over an exact field, kept in lowest terms.

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::poly::Polynomial;
use super::scalar::{ExactField, Scalar};
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction<F: ExactField> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

impl<F: ExactField> RationalFunction<F> {
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::from_polynomial(Polynomial::zero()));
        }
        let g = num.gcd(&den)?;
        let (mut num, _) = num.div_rem(&g)?;
        let (den, _) = den.div_rem(&g)?;
        let lead = den.leading().cloned().expect("nonzero denominator");
        let inv = F::one() / lead;
        num = num.scale(&inv);
        Ok(RationalFunction {
            num,
            den: den.scale(&inv),
        })
    }

    pub fn from_polynomial(p: Polynomial<F>) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn numerator(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Builds from a pair already known to be coprime, normalizing `den` monic.
    fn from_coprime(num: Polynomial<F>, den: Polynomial<F>) -> Self {
        let inv = F::one() / den.leading().cloned().expect("nonzero denominator");
        RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    /// With `g = gcd(D, D')`, `(N/D)' = (N' D/g - N D'/g) / (D · D/g)` is
    /// already in lowest terms.
    pub fn derivative(&self) -> Self {
        let dd = self.den.derivative(1);
        if dd.is_zero() {
            return Self::from_coprime(self.num.derivative(1), self.den.clone());
        }
        let g = self.den.gcd(&dd).expect("nonzero denominator");
        let (d1, _) = self.den.div_rem(&g).expect("nonzero gcd");
        let (dd1, _) = dd.div_rem(&g).expect("nonzero gcd");
        let num = &(&self.num.derivative(1) * &d1) - &(&self.num * &dd1);
        if num.is_zero() {
            return Self::zero();
        }
        Self::from_coprime(num, &self.den * &d1)
    }

    /// Cancels only across the two factors, since each is already reduced.
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let g1 = self.num.gcd(&rhs.den).expect("nonzero");
        let g2 = rhs.num.gcd(&self.den).expect("nonzero");
        let q = |a: &Polynomial<F>, g: &Polynomial<F>| a.div_rem(g).expect("nonzero gcd").0;
        Self::from_coprime(
            &q(&self.num, &g1) * &q(&rhs.num, &g2),
            &q(&self.den, &g2) * &q(&rhs.den, &g1),
        )
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.recip()?))
    }

    pub fn eval(&self, x: &F) -> Result<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Evaluation at a complex-float point; `None` at (numerical) poles.
    pub fn eval_complex(&self, z: Complex64) -> Option<Complex64> {
        let cn = self.num.map(Scalar::to_complex);
        let cd = self.den.map(Scalar::to_complex);
        let d = cd.eval(&z);
        if d.norm() == 0.0 {
            return None;
        }
        let v = cn.eval(&z) / d;
        v.is_finite().then_some(v)
    }
}

impl<F: ExactField> One for RationalFunction<F> {
    fn one() -> Self {
        Self::from_polynomial(Polynomial::one())
    }
}

impl<F: ExactField> std::ops::Mul for RationalFunction<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        RationalFunction::mul(&self, &rhs)
    }
}

impl<F: ExactField> Zero for RationalFunction<F> {
    fn zero() -> Self {
        Self::from_polynomial(Polynomial::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: ExactField> std::ops::Add for RationalFunction<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}
