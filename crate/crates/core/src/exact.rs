//! Exact rational arithmetic and dense univariate polynomials over the rationals.
//!
//! Rationals are `num_rational::BigRational`, which keeps every value in lowest terms with a
//! positive denominator. [`RationalPoly`] stores coefficients by ascending degree with
//! trailing zeros trimmed, so structural equality is polynomial equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n / d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` (decimal digits, optional leading sign). Decimal points are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::RationalParse(s.to_string());
    let t = s.trim();
    let parse_int = |x: &str| -> Result<BigInt> {
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        x.parse::<BigInt>().map_err(|_| err())
    };
    match t.split_once('/') {
        Some((n, d)) => {
            if d.starts_with(['-', '+']) {
                return Err(err());
            }
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(parse_int(t)?)),
    }
}

/// Canonical string form: `"p/q"`, or `"p"` when the denominator is one.
pub fn rational_to_string(x: &Rational) -> String {
    x.to_string()
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // numerator or denominator overflowed f64 range on its own; scale by bit length
        let nb = x.numer().bits() as i64;
        let db = x.denom().bits() as i64;
        let shift = nb - db;
        let scaled = if shift > 0 {
            Rational::new(x.numer().clone(), x.denom().clone() << (shift as usize))
        } else {
            Rational::new(x.numer().clone() << ((-shift) as usize), x.denom().clone())
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Values admitting a rising factorial `x (x+1) ... (x+j-1)`.
pub trait Rising: Clone {
    fn unit() -> Self;
    fn plus_int(&self, i: u64) -> Self;
    fn times(&self, other: &Self) -> Self;
}

impl Rising for Rational {
    fn unit() -> Self {
        Rational::one()
    }
    fn plus_int(&self, i: u64) -> Self {
        self + Rational::from_integer(BigInt::from(i))
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl Rising for RationalPoly {
    fn unit() -> Self {
        RationalPoly::one()
    }
    fn plus_int(&self, i: u64) -> Self {
        self + &RationalPoly::constant(Rational::from_integer(BigInt::from(i)))
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

/// Rising factorial `(x)_j = x (x+1) ... (x+j-1)`; `(x)_0 = 1`.
pub fn pochhammer<T: Rising>(x: &T, j: u64) -> T {
    (0..j).fold(T::unit(), |acc, i| acc.times(&x.plus_int(i)))
}

/// Dense univariate polynomial with exact rational coefficients, ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `s`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `c s^deg`.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    /// `s + c`.
    pub fn linear(c: Rational) -> Self {
        Self::new(vec![c, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `s^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `q(s) = p(mu s)`.
    pub fn scale_argument(&self, mu: &Rational) -> Self {
        let mut factor = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &factor);
            factor *= mu;
        }
        Self::new(out)
    }

    /// `q(s) = p(s + c)`, by Horner's scheme in the shifted variable.
    pub fn shift(&self, c: &Rational) -> Self {
        let lin = Self::linear(c.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| &(&acc * &lin) + &Self::constant(a.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Antiderivative vanishing at zero.
    pub fn antiderivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c / int(i as i64 + 1));
        }
        Self::new(out)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let dd = divisor.degree() as usize;
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if self.degree() < divisor.degree() {
            return Ok((Self::zero(), self.clone()));
        }
        let qlen = self.coeffs.len() - dd;
        let mut quot = vec![Rational::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "polynomial division left remainder {r:?}"
            )));
        }
        Ok(q)
    }

    /// `u^deg p(1/u)`: the coefficient list reversed after padding to length `deg + 1`.
    pub fn reversed(&self, deg: usize) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[deg - i] = c.clone();
        }
        Self::new(v)
    }

    pub fn to_float(&self) -> FloatPoly {
        FloatPoly(self.coeffs.iter().map(to_f64).collect())
    }
}

impl fmt::Debug for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})s"),
                _ => format!("({c})s^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: Self) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: Self) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: Self) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Coefficients `(c_0, ..., c_d)` with `p(k) = sum_j c_j binom(k+j, j)` identically in `k`.
///
/// Uses the inverse binomial transform at the nodes `k = -1, -2, ..., -(d+1)`, where the basis
/// is triangular: `c_m = sum_{i<=m} (-1)^i binom(m, i) p(-i-1)`.
pub fn expand_binomial_basis(p: &RationalPoly) -> Vec<Rational> {
    if p.is_zero() {
        return Vec::new();
    }
    let d = p.degree() as u64;
    let values: Vec<Rational> = (0..=d).map(|i| p.eval(&int(-(i as i64) - 1))).collect();
    (0..=d)
        .map(|m| {
            let mut acc = Rational::zero();
            for (i, v) in values.iter().enumerate().take(m as usize + 1) {
                let term = Rational::from_integer(binomial(m, i as u64)) * v;
                if i.is_odd() {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            acc
        })
        .collect()
}

/// Binomial basis element `binom(k + j, j)` as a polynomial in `k`.
pub fn binomial_basis_poly(j: u64) -> RationalPoly {
    pochhammer(&RationalPoly::linear(Rational::one()), j)
        .scale(&Rational::new(BigInt::one(), factorial(j)))
}

/// Float evaluation copy of a polynomial (ascending coefficients).
#[derive(Clone, Debug, PartialEq)]
pub struct FloatPoly(pub Vec<f64>);

impl FloatPoly {
    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}
