//! Coefficient fields.
//!
//! Exact work happens over [`Rational`] (ℚ) and [`GaussianRational`] (ℚ(i)).
//! [`Complex64`] is the approximate field used by root finding and the
//! operator-theoretic checks; it implements [`Scalar`] but not [`ExactField`].

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;
pub type GaussianRational = Complex<Rational>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// ℚ, wire tag `"Q"`.
    Rational,
    /// ℚ(i), wire tag `"Q[i]"`.
    Gaussian,
}

impl FieldKind {
    pub fn tag(self) -> &'static str {
        match self {
            FieldKind::Rational => "Q",
            FieldKind::Gaussian => "Q[i]",
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Common interface of every coefficient field.
pub trait Scalar:
    Clone + fmt::Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn conj(&self) -> Self;
    fn to_complex(&self) -> Complex64;
}

/// Fields with exact equality, where zero tests are decisions rather than
/// tolerance checks.
pub trait ExactField: Scalar {
    const FIELD: FieldKind;

    /// Rational components (one for ℚ, real and imaginary for ℚ(i)).
    fn rational_parts(&self) -> Vec<&Rational>;
    fn scale_rational(&self, r: &Rational) -> Self;
    fn is_real(&self) -> bool;
    fn real_part(&self) -> Rational;
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

/// The imaginary unit in ℚ(i).
pub fn imag_unit() -> GaussianRational {
    Complex::new(Rational::zero(), Rational::one())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator or denominator overflow f64 on its own; scale by bit length
        let shift = r.numer().bits().max(r.denom().bits()) as i64 - 900;
        let shift = shift.max(0);
        let n = (r.numer() >> shift as usize).to_f64().unwrap_or(f64::NAN);
        let d = (r.denom() >> shift as usize).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Scalar for Rational {
    fn from_i64(v: i64) -> Self {
        int(v)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
}

impl ExactField for Rational {
    const FIELD: FieldKind = FieldKind::Rational;

    fn rational_parts(&self) -> Vec<&Rational> {
        vec![self]
    }

    fn scale_rational(&self, r: &Rational) -> Self {
        self * r
    }

    fn is_real(&self) -> bool {
        true
    }

    fn real_part(&self) -> Rational {
        self.clone()
    }
}

impl Scalar for GaussianRational {
    fn from_i64(v: i64) -> Self {
        Complex::new(int(v), Rational::zero())
    }

    fn from_rational(r: &Rational) -> Self {
        Complex::new(r.clone(), Rational::zero())
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

impl ExactField for GaussianRational {
    const FIELD: FieldKind = FieldKind::Gaussian;

    fn rational_parts(&self) -> Vec<&Rational> {
        vec![&self.re, &self.im]
    }

    fn scale_rational(&self, r: &Rational) -> Self {
        Complex::new(&self.re * r, &self.im * r)
    }

    fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn real_part(&self) -> Rational {
        self.re.clone()
    }
}

impl Scalar for Complex64 {
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn from_rational(r: &Rational) -> Self {
        Complex64::new(rational_to_f64(r), 0.0)
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Sign of a rational: -1, 0 or 1.
pub fn signum(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued-fraction convergents).
pub fn rational_approximation(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = r - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(Rational::new(BigInt::from(h1), BigInt::from(k1)))
}
