//! Exact integer and rational arithmetic.
//!
//! Everything on a verification path goes through [`Natural`] and [`Rational`];
//! both are immutable values backed by arbitrary-precision integers.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Natural(BigUint);

impl Natural {
    pub fn zero() -> Self {
        Natural(BigUint::zero())
    }

    pub fn one() -> Self {
        Natural(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_odd(&self) -> bool {
        self.0.is_odd()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn gcd(&self, other: &Natural) -> Natural {
        Natural(self.0.gcd(&other.0))
    }

    pub fn lcm(&self, other: &Natural) -> Natural {
        Natural(self.0.lcm(&other.0))
    }

    pub fn divides(&self, other: &Natural) -> bool {
        !self.0.is_zero() && (&other.0 % &self.0).is_zero()
    }

    pub fn pow(&self, exp: u32) -> Natural {
        Natural(self.0.pow(exp))
    }
}

impl From<u64> for Natural {
    fn from(v: u64) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<u32> for Natural {
    fn from(v: u32) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<usize> for Natural {
    fn from(v: usize) -> Self {
        Natural(BigUint::from(v))
    }
}

impl From<BigUint> for Natural {
    fn from(v: BigUint) -> Self {
        Natural(v)
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for Natural {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BigUint::from_str(s.trim())
            .map(Natural)
            .map_err(|_| Error::invalid(format!("not a natural number: {s:?}")))
    }
}

impl Add for &Natural {
    type Output = Natural;
    fn add(self, rhs: &Natural) -> Natural {
        Natural(&self.0 + &rhs.0)
    }
}

impl Add for Natural {
    type Output = Natural;
    fn add(self, rhs: Natural) -> Natural {
        Natural(self.0 + rhs.0)
    }
}

impl Mul for &Natural {
    type Output = Natural;
    fn mul(self, rhs: &Natural) -> Natural {
        Natural(&self.0 * &rhs.0)
    }
}

impl Mul for Natural {
    type Output = Natural;
    fn mul(self, rhs: Natural) -> Natural {
        Natural(self.0 * rhs.0)
    }
}

impl std::iter::Sum for Natural {
    fn sum<I: Iterator<Item = Natural>>(iter: I) -> Natural {
        iter.fold(Natural::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Natural {
    fn product<I: Iterator<Item = Natural>>(iter: I) -> Natural {
        iter.fold(Natural::one(), |a, b| a * b)
    }
}

/// Exact fraction, always held in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds the canonical form of `numer / denom`.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// Shorthand for constants known to have a nonzero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Rational::new(numer, denom).expect("nonzero denominator")
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("reciprocal of zero"));
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::invalid("division by zero"));
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Approximate value for display only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<&Natural> for Rational {
    fn from(n: &Natural) -> Self {
        Rational::integer(BigInt::from(n.0.clone()))
    }
}

impl From<Natural> for Rational {
    fn from(n: Natural) -> Self {
        Rational::integer(BigInt::from(n.0))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::integer(v)
    }
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        Rational::integer(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p` or `p/q`, with optional whitespace around the slash.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("not a rational number: {s:?}"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p = BigInt::from_str(p).map_err(|_| bad())?;
        let q = BigInt::from_str(q).map_err(|_| bad())?;
        Rational::new(p, q)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }

        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }

        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);
// Panics on a zero divisor, like integer division; use `checked_div` for untrusted input.
rational_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::iter::Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::one(), |a, b| a * b)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

/// Canonical rational `p / q`.
pub fn normalize(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Rational> {
    Rational::new(p, q)
}

fn nonzero(n: &Natural, what: &str) -> Result<u64> {
    let v = n
        .to_u64()
        .ok_or_else(|| Error::invalid(format!("{what}: argument {n} too large for trial division")))?;
    if v == 0 {
        return Err(Error::invalid(format!("{what}: argument must be positive")));
    }
    Ok(v)
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let root = n.sqrt();
    (3..=root).step_by(2).all(|d| n % d != 0)
}

/// Prime factorisation as ascending `(prime, exponent)` pairs; `n = 1` gives an empty list.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn euler_phi(n: &Natural) -> Result<Natural> {
    let v = nonzero(n, "euler_phi")?;
    Ok(Natural::from(euler_phi_u64(v)))
}

pub(crate) fn euler_phi_u64(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Largest `e` with `p^e | n`.
pub fn p_adic_valuation(n: &Natural, p: u64) -> Result<u32> {
    let v = nonzero(n, "p_adic_valuation")?;
    if !is_prime(p) {
        return Err(Error::invalid(format!("p_adic_valuation: {p} is not prime")));
    }
    Ok(valuation_u64(v, p))
}

pub(crate) fn valuation_u64(mut n: u64, p: u64) -> u32 {
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: &Natural) -> Result<Vec<Natural>> {
    let v = nonzero(n, "divisors")?;
    Ok(divisors_u64(v).into_iter().map(Natural::from).collect())
}

pub(crate) fn divisors_u64(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}
