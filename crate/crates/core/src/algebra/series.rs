//! Power series in `t` truncated at a fixed order, over a coefficient ring.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::laurent::LaurentPolynomial;
use super::rational::{serde_bigint, to_canonical, Rational};
use crate::error::{MotiveError, Result};

pub const DEFAULT_ORDER: usize = 8;

/// Commutative ring operations needed by [`TruncatedSeries`].
pub trait SeriesCoefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn is_ring_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn unit_inverse(&self) -> Option<Self>;
    fn to_json(&self) -> serde_json::Value;
}

impl SeriesCoefficient for Rational {
    fn ring_zero() -> Self {
        Rational::zero()
    }
    fn ring_one() -> Self {
        Rational::one()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(to_canonical(self))
    }
}

impl SeriesCoefficient for BigInt {
    fn ring_zero() -> Self {
        BigInt::zero()
    }
    fn ring_one() -> Self {
        BigInt::one()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.abs().is_one().then(|| self.clone())
    }
    fn to_json(&self) -> serde_json::Value {
        serde_bigint::to_value(self)
    }
}

impl SeriesCoefficient for LaurentPolynomial {
    fn ring_zero() -> Self {
        LaurentPolynomial::zero()
    }
    fn ring_one() -> Self {
        LaurentPolynomial::one()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn unit_inverse(&self) -> Option<Self> {
        LaurentPolynomial::unit_inverse(self)
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("laurent polynomials serialize")
    }
}

/// `c_0 + c_1 t + ... + c_T t^T + O(t^{T+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R> {
    coeffs: Vec<R>,
}

impl<R: SeriesCoefficient> TruncatedSeries<R> {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients are kept.
    pub fn new(order: usize, mut coeffs: Vec<R>) -> Self {
        coeffs.resize(order + 1, R::ring_zero());
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, vec![R::ring_one()])
    }

    /// `1 - a t`.
    pub fn one_minus(order: usize, a: R) -> Self {
        Self::new(order, vec![R::ring_one(), a.negated()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coefficient(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(MotiveError::SizeMismatch(format!(
                "series orders {} and {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.plus(b)).collect() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let t = self.order();
        let mut out = vec![R::ring_zero(); t + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_ring_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(t + 1 - i) {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let inv0 = self.coeffs[0]
            .unit_inverse()
            .ok_or_else(|| MotiveError::NotInvertible(format!("constant term {} is not a unit", self.coeffs[0])))?;
        let t = self.order();
        let mut b: Vec<R> = Vec::with_capacity(t + 1);
        b.push(inv0.clone());
        for n in 1..=t {
            let mut acc = R::ring_zero();
            for k in 1..=n {
                acc = acc.plus(&self.coeffs[k].times(&b[n - k]));
            }
            b.push(acc.times(&inv0).negated());
        }
        Ok(TruncatedSeries { coeffs: b })
    }

    /// Integer power; negative exponents go through [`Self::reciprocal`].
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.reciprocal()? } else { self.clone() };
        let mut acc = Self::one(self.order());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    pub fn map<S: SeriesCoefficient>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

/// Reciprocal of a series whose constant term is a unit.
pub fn series_reciprocal<R: SeriesCoefficient>(s: &TruncatedSeries<R>) -> Result<TruncatedSeries<R>> {
    s.reciprocal()
}

impl<R: SeriesCoefficient> Serialize for TruncatedSeries<R> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("TruncatedSeries", 2)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coefficients", &self.coeffs.iter().map(R::to_json).collect::<Vec<_>>())?;
        st.end()
    }
}

impl<R: SeriesCoefficient> fmt::Display for TruncatedSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_ring_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})t")?,
                _ => write!(f, "({c})t^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_series(order: usize, cs: &[i64]) -> TruncatedSeries<BigInt> {
        TruncatedSeries::new(order, cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn geometric_series() {
        let s = int_series(3, &[1, -1]);
        assert_eq!(series_reciprocal(&s).unwrap(), int_series(3, &[1, 1, 1, 1]));
    }

    #[test]
    fn square_of_one_minus_t() {
        // (1 + 2t + 3t^2 + 4t^3)(1 - 2t + t^2) = 1 + 0 t + 0 t^2 + 0 t^3 by hand.
        let s = int_series(3, &[1, -2, 1]);
        let r = series_reciprocal(&s).unwrap();
        assert_eq!(r, int_series(3, &[1, 2, 3, 4]));
        assert_eq!(r.mul(&s).unwrap(), TruncatedSeries::one(3));
    }

    #[test]
    fn constant_one_and_non_units() {
        let one: TruncatedSeries<BigInt> = TruncatedSeries::one(5);
        assert_eq!(series_reciprocal(&one).unwrap(), one);
        assert!(matches!(series_reciprocal(&int_series(2, &[2, 1])), Err(MotiveError::NotInvertible(_))));
    }

    #[test]
    fn laurent_coefficients() {
        // 1/((1-t)(1-Lt)) has t^n coefficient 1 + L + ... + L^n.
        let a = TruncatedSeries::one_minus(4, LaurentPolynomial::one());
        let b = TruncatedSeries::one_minus(4, LaurentPolynomial::lefschetz());
        let z = a.mul(&b).unwrap().reciprocal().unwrap();
        for n in 0..=4 {
            assert_eq!(z.coefficient(n), &LaurentPolynomial::geometric(n as u32));
        }
    }

    #[test]
    fn json_shape() {
        let s = int_series(2, &[1, 2, 3]);
        assert_eq!(serde_json::to_string(&s).unwrap(), r#"{"order":2,"coefficients":[1,2,3]}"#);
    }

    fn arb(order: usize) -> impl Strategy<Value = TruncatedSeries<BigInt>> {
        proptest::collection::vec(-5i64..=5, order + 1).prop_map(move |v| int_series(order, &v))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb(5), b in arb(5), c in arb(5)) {
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        }

        #[test]
        fn reciprocal_is_involutive(mut a in arb(6), sign in prop::bool::ANY) {
            a.coeffs[0] = if sign { BigInt::one() } else { -BigInt::one() };
            let r = a.reciprocal().unwrap();
            prop_assert_eq!(r.mul(&a).unwrap(), TruncatedSeries::one(6));
            prop_assert_eq!(r.reciprocal().unwrap(), a);
        }
    }
}
