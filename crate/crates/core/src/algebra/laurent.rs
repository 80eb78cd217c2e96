//! Integer Laurent polynomials in the Lefschetz symbol `L`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{serde_bigint, Rational};
use crate::error::{MotiveError, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// The Lefschetz class `L`.
    pub fn lefschetz() -> Self {
        Self::monomial(1, 1)
    }

    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    pub fn from_coefficients(iter: impl IntoIterator<Item = (i64, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    /// `1 + L + ... + L^n`.
    pub fn geometric(n: u32) -> Self {
        Self::from_coefficients((0..=n as i64).map(|e| (e, BigInt::one())))
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Multiplication by `L^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn evaluate(&self, at: &Rational) -> Result<Rational> {
        if at.is_zero() && self.coeffs.keys().any(|&e| e < 0) {
            return Err(MotiveError::NotInvertible("L = 0 with negative powers".into()));
        }
        let mut acc = Rational::zero();
        for (&e, c) in &self.coeffs {
            let p = if e >= 0 { num_traits::pow(at.clone(), e as usize) } else { num_traits::pow(at.recip(), (-e) as usize) };
            acc += Rational::from_integer(c.clone()) * p;
        }
        Ok(acc)
    }

    /// Value at an integer, which must be integral (e.g. `L -> q` on a polynomial).
    pub fn evaluate_integer(&self, at: &BigInt) -> Result<BigInt> {
        let v = self.evaluate(&Rational::from_integer(at.clone()))?;
        if !v.is_integer() {
            return Err(MotiveError::InvalidArgument(format!("{self} at L={at} is not an integer")));
        }
        Ok(v.to_integer())
    }

    /// Units are exactly `±L^k`.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (&e, c) = self.coeffs.iter().next()?;
        if c.abs().is_one() {
            Some(Self::monomial(-e, c.clone()))
        } else {
            None
        }
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.coeffs.iter().enumerate() {
            let (neg, mag) = (c.is_negative(), c.abs());
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = if mag.is_one() && *e != 0 { String::new() } else { mag.to_string() };
            match *e {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coeff}L")?,
                _ => write!(f, "{coeff}L^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.coeffs.iter().map(|(e, c)| (e.to_string(), serde_bigint::to_value(c))))
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        #[derive(Deserialize)]
        struct Coeff(#[serde(with = "serde_bigint")] BigInt);
        let raw = BTreeMap::<String, Coeff>::deserialize(d)?;
        let mut p = LaurentPolynomial::zero();
        for (k, Coeff(c)) in raw {
            let e: i64 = k.trim().parse().map_err(|_| D::Error::custom(format!("bad exponent `{k}`")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}
