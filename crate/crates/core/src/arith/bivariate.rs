//! Dense bivariate polynomials: entry `(i, j)` is the coefficient of `x^i y^j`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Polynomial;
use super::scalar::{ExactField, Rational, Scalar};

/// Rectangular coefficient grid, trimmed so that the last row and the last
/// column each hold a nonzero entry. The zero polynomial is the empty grid.
#[derive(Clone, PartialEq)]
pub struct BivariatePolynomial<F> {
    coeffs: Vec<Vec<F>>,
}

impl<F: Scalar> BivariatePolynomial<F> {
    /// Builds from a (possibly ragged) grid; short rows are zero-padded.
    pub fn new(grid: Vec<Vec<F>>) -> Self {
        let cols = grid.iter().map(Vec::len).max().unwrap_or(0);
        let mut coeffs: Vec<Vec<F>> = grid
            .into_iter()
            .map(|mut row| {
                row.resize(cols, F::zero());
                row
            })
            .collect();
        while coeffs.last().is_some_and(|r| r.iter().all(Zero::is_zero)) {
            coeffs.pop();
        }
        let used_cols = coeffs
            .iter()
            .map(|r| r.iter().rposition(|c| !c.is_zero()).map_or(0, |k| k + 1))
            .max()
            .unwrap_or(0);
        for row in &mut coeffs {
            row.truncate(used_cols);
        }
        BivariatePolynomial { coeffs }
    }

    pub fn from_i64(grid: &[&[i64]]) -> Self {
        Self::new(
            grid.iter()
                .map(|r| r.iter().map(|&c| F::from_i64(c)).collect())
                .collect(),
        )
    }

    pub fn zero() -> Self {
        BivariatePolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![vec![c]])
    }

    pub fn monomial(c: F, i: usize, j: usize) -> Self {
        let mut grid = vec![vec![F::zero(); j + 1]; i + 1];
        grid[i][j] = c;
        Self::new(grid)
    }

    /// `p(x)` viewed as a polynomial in `x` only.
    pub fn from_x(p: &Polynomial<F>) -> Self {
        Self::new(p.coeffs().iter().map(|c| vec![c.clone()]).collect())
    }

    /// `p(y)` viewed as a polynomial in `y` only.
    pub fn from_y(p: &Polynomial<F>) -> Self {
        Self::new(vec![p.coeffs().to_vec()])
    }

    pub fn grid(&self) -> &[Vec<F>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> F {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.coeffs.first().and_then(|r| r.len().checked_sub(1))
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms().map(|(i, j, _)| i + j).max()
    }

    /// Nonzero terms `(i, j, c)` in lexicographic order of `(i, j)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.coeffs.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, c)| (i, j, c))
        })
    }

    /// Horner evaluation, nested in `x` then `y`.
    pub fn eval(&self, x: &F, y: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, row| {
            let inner = row
                .iter()
                .rev()
                .fold(F::zero(), |a, c| a * y.clone() + c.clone());
            acc * x.clone() + inner
        })
    }

    /// Polynomial in `x` obtained by setting `y = 0`.
    pub fn restrict_y_zero(&self) -> Polynomial<F> {
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|r| r.first().cloned().unwrap_or_else(F::zero))
                .collect(),
        )
    }

    /// Polynomial in `y` obtained by setting `x = 0`.
    pub fn restrict_x_zero(&self) -> Polynomial<F> {
        Polynomial::new(self.coeffs.first().cloned().unwrap_or_default())
    }

    pub fn swap_variables(&self) -> Self {
        let rows = self.coeffs.len();
        let cols = self.coeffs.first().map_or(0, Vec::len);
        Self::new(
            (0..cols)
                .map(|j| (0..rows).map(|i| self.coeffs[i][j].clone()).collect())
                .collect(),
        )
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|r| r.iter().map(|a| a.clone() * c.clone()).collect())
                .collect(),
        )
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(F::one()), |acc, _| &acc * self)
    }

    /// `self(a(x, y), b(x, y))`.
    pub fn substitute(&self, a: &Self, b: &Self) -> Self {
        let mut out = Self::zero();
        let b_pows: Vec<Self> = {
            let mut v = vec![Self::constant(F::one())];
            for j in 1..self.coeffs.first().map_or(0, Vec::len) {
                let next = &v[j - 1] * b;
                v.push(next);
            }
            v
        };
        let mut a_pow = Self::constant(F::one());
        for row in &self.coeffs {
            let mut inner = Self::zero();
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    inner = &inner + &b_pows[j].scale(c);
                }
            }
            out = &out + &(&inner * &a_pow);
            a_pow = &a_pow * a;
        }
        out
    }

    /// Substitutes a univariate parametrization `(x(t), y(t))`.
    pub fn substitute_univariate(&self, x: &Polynomial<F>, y: &Polynomial<F>) -> Polynomial<F> {
        let mut out = Polynomial::zero();
        let mut x_pow = Polynomial::one();
        for row in &self.coeffs {
            let inner = Polynomial::new(row.clone()).compose(y);
            out = &out + &(&inner * &x_pow);
            x_pow = &x_pow * x;
        }
        out
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> BivariatePolynomial<G> {
        BivariatePolynomial::new(
            self.coeffs
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        )
    }

    /// Partial derivative in `x`.
    pub fn derivative_x(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, r)| {
                    r.iter()
                        .map(|c| c.clone() * F::from_i64(i as i64))
                        .collect()
                })
                .collect(),
        )
    }

    /// Partial derivative in `y`.
    pub fn derivative_y(&self) -> Self {
        self.swap_variables().derivative_x().swap_variables()
    }

    /// Divides out the largest monomial `x^a y^b` dividing `self`, returning
    /// the quotient and `(a, b)`.
    pub fn strip_monomial_factor(&self) -> (Self, (usize, usize)) {
        if self.is_zero() {
            return (Self::zero(), (0, 0));
        }
        let a = self.terms().map(|(i, _, _)| i).min().unwrap_or(0);
        let b = self.terms().map(|(_, j, _)| j).min().unwrap_or(0);
        let grid = self.coeffs[a..]
            .iter()
            .map(|r| r.get(b..).map(<[F]>::to_vec).unwrap_or_default())
            .collect();
        (Self::new(grid), (a, b))
    }
}

impl<F: ExactField> BivariatePolynomial<F> {
    /// Canonical scalar representative.
    ///
    /// Divides by the lexicographically first nonzero coefficient, clears all
    /// denominators and removes the integer content, so that every rational
    /// component is an integer, their gcd is 1, and the first coefficient is a
    /// positive integer.
    pub fn canonical(&self) -> Self {
        let Some((_, _, first)) = self.terms().next() else {
            return Self::zero();
        };
        let inv = F::one() / first.clone();
        let unit = self.scale(&inv);
        let mut lcm = BigInt::one();
        for (_, _, c) in unit.terms() {
            for part in c.rational_parts() {
                lcm = lcm.lcm(part.denom());
            }
        }
        let cleared = unit.scale(&F::from_rational(&Rational::from_integer(lcm)));
        let mut g = BigInt::zero();
        for (_, _, c) in cleared.terms() {
            for part in c.rational_parts() {
                g = g.gcd(part.numer());
            }
        }
        let g = g.abs();
        if g.is_zero() || g.is_one() {
            return cleared;
        }
        cleared.scale(&F::from_rational(&Rational::new(BigInt::one(), g)))
    }
}

impl<F: Scalar> fmt::Debug for BivariatePolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("BivariatePolynomial")
            .field(&self.coeffs)
            .finish()
    }
}

impl<F: Scalar> Add for &BivariatePolynomial<F> {
    type Output = BivariatePolynomial<F>;

    fn add(self, rhs: Self) -> BivariatePolynomial<F> {
        let rows = self.coeffs.len().max(rhs.coeffs.len());
        let cols = self.degree_y().max(rhs.degree_y()).map_or(0, |d| d + 1);
        BivariatePolynomial::new(
            (0..rows)
                .map(|i| {
                    (0..cols)
                        .map(|j| self.coeff(i, j) + rhs.coeff(i, j))
                        .collect()
                })
                .collect(),
        )
    }
}

impl<F: Scalar> Sub for &BivariatePolynomial<F> {
    type Output = BivariatePolynomial<F>;

    fn sub(self, rhs: Self) -> BivariatePolynomial<F> {
        let rows = self.coeffs.len().max(rhs.coeffs.len());
        let cols = self.degree_y().max(rhs.degree_y()).map_or(0, |d| d + 1);
        BivariatePolynomial::new(
            (0..rows)
                .map(|i| {
                    (0..cols)
                        .map(|j| self.coeff(i, j) - rhs.coeff(i, j))
                        .collect()
                })
                .collect(),
        )
    }
}

impl<F: Scalar> Mul for &BivariatePolynomial<F> {
    type Output = BivariatePolynomial<F>;

    fn mul(self, rhs: Self) -> BivariatePolynomial<F> {
        if self.is_zero() || rhs.is_zero() {
            return BivariatePolynomial::zero();
        }
        let rows = self.coeffs.len() + rhs.coeffs.len() - 1;
        let cols = self.coeffs[0].len() + rhs.coeffs[0].len() - 1;
        let mut out = vec![vec![F::zero(); cols]; rows];
        for (i1, j1, a) in self.terms() {
            for (i2, j2, b) in rhs.terms() {
                let slot = &mut out[i1 + i2][j1 + j2];
                *slot = slot.clone() + a.clone() * b.clone();
            }
        }
        BivariatePolynomial::new(out)
    }
}
