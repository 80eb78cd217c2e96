//! Truncated multivariate polynomial rings `Q[x_1..x_k]/(x_1^{n_1+1}, .., x_k^{n_k+1})`.
//!
//! Chow rings of products of projective spaces are of exactly this form, and
//! so are rational K_0 rings once written in the nilpotent generators
//! `u_i - 1`. Elements are stored sparsely: only nonzero coefficients of
//! monomials below the nilpotency bounds are kept.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{parse_rational, rat, to_canonical, Rational};
use crate::error::{MotiveError, Result};

pub type Exponents = Vec<u32>;

/// The largest allowed exponent of each variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingDescriptor {
    max_exponents: Vec<u32>,
}

impl RingDescriptor {
    pub fn new(max_exponents: Vec<u32>) -> Self {
        RingDescriptor { max_exponents }
    }

    pub fn max_exponents(&self) -> &[u32] {
        &self.max_exponents
    }

    pub fn num_vars(&self) -> usize {
        self.max_exponents.len()
    }

    /// Exponent vector of the top monomial `prod x_i^{n_i}`.
    pub fn top(&self) -> Exponents {
        self.max_exponents.clone()
    }

    pub fn admits(&self, exps: &[u32]) -> bool {
        exps.len() == self.num_vars() && exps.iter().zip(&self.max_exponents).all(|(e, n)| e <= n)
    }

    /// Dimension over Q: `prod (n_i + 1)`.
    pub fn dimension(&self) -> usize {
        self.max_exponents.iter().map(|&n| n as usize + 1).product()
    }

    /// All admissible exponent vectors in lexicographic order.
    pub fn monomials(&self) -> Vec<Exponents> {
        let mut out = vec![Vec::with_capacity(self.num_vars())];
        for &n in &self.max_exponents {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=n).map(move |e| {
                        let mut v = prefix.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        out
    }

    pub fn concat(&self, other: &RingDescriptor) -> RingDescriptor {
        let mut v = self.max_exponents.clone();
        v.extend_from_slice(&other.max_exponents);
        RingDescriptor::new(v)
    }
}

/// Where a variable of the source ring goes under a substitution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarImage {
    Var(usize),
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRingElement {
    ring: RingDescriptor,
    terms: BTreeMap<Exponents, Rational>,
}

impl QuotientRingElement {
    pub fn zero(ring: RingDescriptor) -> Self {
        QuotientRingElement { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: RingDescriptor) -> Self {
        Self::constant(ring, rat(1))
    }

    pub fn constant(ring: RingDescriptor, c: Rational) -> Self {
        let zero = vec![0; ring.num_vars()];
        Self::monomial(ring, zero, c)
    }

    /// `c * x^exps`; zero if any exponent is past its bound.
    pub fn monomial(ring: RingDescriptor, exps: Exponents, c: Rational) -> Self {
        let mut out = Self::zero(ring);
        out.add_term(exps, c);
        out
    }

    pub fn variable(ring: RingDescriptor, i: usize) -> Self {
        let mut e = vec![0; ring.num_vars()];
        e[i] = 1;
        Self::monomial(ring, e, rat(1))
    }

    pub fn from_terms(ring: RingDescriptor, terms: impl IntoIterator<Item = (Exponents, Rational)>) -> Self {
        let mut out = Self::zero(ring);
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Exponents, Rational> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.ring.num_vars()])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c * x^exps` in place, dropping it if truncated or cancelling.
    pub fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() || !self.ring.admits(&exps) {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(MotiveError::IncompatibleRings(format!(
                "{:?} vs {:?}",
                self.ring.max_exponents, other.ring.max_exponents
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_ring(other)?;
        let mut out = Self::zero(self.ring.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring.clone());
        }
        QuotientRingElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.ring.clone());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(exps: &[u32]) -> u32 {
        exps.iter().sum()
    }

    pub fn homogeneous_part(&self, degree: u32) -> Self {
        QuotientRingElement {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| Self::total_degree(e) == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// The degrees carrying nonzero terms.
    pub fn degrees(&self) -> std::collections::BTreeSet<u32> {
        self.terms.keys().map(|e| Self::total_degree(e)).collect()
    }

    /// Ring homomorphism induced by sending source variable `i` to
    /// `images[i]` (another variable of `target`, or zero).
    pub fn substitute(&self, target: &RingDescriptor, images: &[VarImage]) -> Result<Self> {
        if images.len() != self.ring.num_vars() {
            return Err(MotiveError::IncompatibleRings(format!(
                "substitution has {} images for {} variables",
                images.len(),
                self.ring.num_vars()
            )));
        }
        let mut out = Self::zero(target.clone());
        'terms: for (e, c) in &self.terms {
            let mut ne = vec![0; target.num_vars()];
            for (i, &ei) in e.iter().enumerate() {
                if ei == 0 {
                    continue;
                }
                match images[i] {
                    VarImage::Zero => continue 'terms,
                    VarImage::Var(j) => {
                        if j >= target.num_vars() {
                            return Err(MotiveError::IncompatibleRings(format!(
                                "variable image {j} out of range"
                            )));
                        }
                        ne[j] += ei;
                    }
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Evaluates the element as a polynomial with `x_i := images[i]`.
    /// The caller must ensure the images respect the nilpotency relations.
    pub fn map_generators(&self, target: &RingDescriptor, images: &[QuotientRingElement]) -> Result<Self> {
        if images.len() != self.ring.num_vars() || images.iter().any(|im| im.ring != *target) {
            return Err(MotiveError::IncompatibleRings("generator images do not match".into()));
        }
        let powers: Vec<Vec<QuotientRingElement>> = images
            .iter()
            .zip(self.ring.max_exponents())
            .map(|(im, &n)| {
                let mut v = vec![Self::one(target.clone())];
                for k in 1..=n as usize {
                    let next = &v[k - 1] * im;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Self::zero(target.clone());
        for (e, c) in &self.terms {
            let mut term = Self::constant(target.clone(), c.clone());
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    term = &term * &powers[i][ei as usize];
                }
            }
            for (te, tc) in term.terms {
                out.add_term(te, tc);
            }
        }
        Ok(out)
    }

    /// Product in the concatenated ring, `a(x) * b(y)`.
    pub fn external_product(&self, other: &Self) -> Self {
        let ring = self.ring.concat(&other.ring);
        let mut out = Self::zero(ring);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = ea.clone();
                e.extend_from_slice(eb);
                out.terms.insert(e, ca * cb);
            }
        }
        out
    }

    /// Reorders variables: new variable `k` is old variable `order[k]`.
    pub fn reorder(&self, order: &[usize]) -> Self {
        let ring = RingDescriptor::new(order.iter().map(|&i| self.ring.max_exponents[i]).collect());
        QuotientRingElement {
            ring,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (order.iter().map(|&i| e[i]).collect(), c.clone()))
                .collect(),
        }
    }
}

impl Add for &QuotientRingElement {
    type Output = QuotientRingElement;
    fn add(self, rhs: Self) -> QuotientRingElement {
        self.try_add(rhs).expect("adding elements of different rings")
    }
}

impl Sub for &QuotientRingElement {
    type Output = QuotientRingElement;
    fn sub(self, rhs: Self) -> QuotientRingElement {
        self.try_add(&-rhs).expect("subtracting elements of different rings")
    }
}

impl Neg for &QuotientRingElement {
    type Output = QuotientRingElement;
    fn neg(self) -> QuotientRingElement {
        self.scale(&-Rational::one())
    }
}

impl Mul for &QuotientRingElement {
    type Output = QuotientRingElement;
    fn mul(self, rhs: Self) -> QuotientRingElement {
        self.try_mul(rhs).expect("multiplying elements of different rings")
    }
}

/// Product with truncation at the nilpotency bounds.
pub fn qring_multiply(a: &QuotientRingElement, b: &QuotientRingElement) -> Result<QuotientRingElement> {
    a.try_mul(b)
}

pub fn exponent_key(e: &[u32]) -> String {
    e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_exponent_key(s: &str) -> Result<Exponents> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| MotiveError::Parse(format!("bad exponent key `{s}`"))))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct QreRepr {
    bounds: Vec<u32>,
    terms: BTreeMap<String, String>,
}

impl Serialize for QuotientRingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        struct Terms<'a>(&'a BTreeMap<Exponents, Rational>);
        impl Serialize for Terms<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.collect_map(self.0.iter().map(|(e, c)| (exponent_key(e), to_canonical(c))))
            }
        }
        let mut st = s.serialize_struct("QuotientRingElement", 2)?;
        st.serialize_field("bounds", &self.ring.max_exponents)?;
        st.serialize_field("terms", &Terms(&self.terms))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for QuotientRingElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let repr = QreRepr::deserialize(d)?;
        let ring = RingDescriptor::new(repr.bounds);
        let mut out = QuotientRingElement::zero(ring.clone());
        for (k, v) in repr.terms {
            let e = parse_exponent_key(&k).map_err(D::Error::custom)?;
            if !ring.admits(&e) {
                return Err(D::Error::custom(format!("monomial `{k}` exceeds the ring bounds")));
            }
            out.add_term(e, parse_rational(&v).map_err(D::Error::custom)?);
        }
        Ok(out)
    }
}

impl fmt::Display for QuotientRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("x{}", i + 1) } else { format!("x{}^{x}", i + 1) })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use proptest::prelude::*;

    fn ring(b: &[u32]) -> RingDescriptor {
        RingDescriptor::new(b.to_vec())
    }

    #[test]
    fn square_of_hyperplane_vanishes_on_p1() {
        let h = QuotientRingElement::variable(ring(&[1]), 0);
        assert!((&h * &h).is_zero());
    }

    #[test]
    fn binomial_below_bound() {
        let r = ring(&[2]);
        let one_plus_h = &QuotientRingElement::one(r.clone()) + &QuotientRingElement::variable(r.clone(), 0);
        let sq = &one_plus_h * &one_plus_h;
        let expect = QuotientRingElement::from_terms(r, [(vec![0], rat(1)), (vec![1], rat(2)), (vec![2], rat(1))]);
        assert_eq!(sq, expect);
    }

    #[test]
    fn sum_of_two_hyperplanes_squared() {
        // (h1+h2)^2 = h1^2 + 2 h1 h2 + h2^2, truncated to 2 h1 h2.
        let r = ring(&[1, 1]);
        let s = &QuotientRingElement::variable(r.clone(), 0) + &QuotientRingElement::variable(r.clone(), 1);
        let expect = QuotientRingElement::monomial(r, vec![1, 1], rat(2));
        assert_eq!(&s * &s, expect);
    }

    #[test]
    fn mismatched_rings_error() {
        let a = QuotientRingElement::one(ring(&[1]));
        let b = QuotientRingElement::one(ring(&[2]));
        assert!(matches!(qring_multiply(&a, &b), Err(MotiveError::IncompatibleRings(_))));
    }

    #[test]
    fn serialization_is_canonical() {
        let r = ring(&[1, 2]);
        let a = QuotientRingElement::from_terms(r, [(vec![1, 2], crate::algebra::rational::ratio(1, 2)), (vec![0, 0], rat(3))]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"bounds":[1,2],"terms":{"0,0":"3/1","1,2":"1/2"}}"#);
        let back: QuotientRingElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }

    fn arb_element(bounds: Vec<u32>) -> impl Strategy<Value = QuotientRingElement> {
        let r = RingDescriptor::new(bounds);
        let monos = r.monomials();
        proptest::collection::vec(-3i64..=3, monos.len()).prop_map(move |cs| {
            QuotientRingElement::from_terms(r.clone(), monos.iter().cloned().zip(cs.into_iter().map(rat)))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_element(vec![2, 1]), b in arb_element(vec![2, 1]), c in arb_element(vec![2, 1])) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            let one = QuotientRingElement::one(a.ring().clone());
            prop_assert_eq!(&a * &one, a.clone());
        }

        #[test]
        fn augmentation_ideal_is_nilpotent(a in arb_element(vec![2, 1])) {
            let mut a = a;
            let c = a.constant_term();
            a.add_term(vec![0, 0], -c);
            // 1 + sum n_i = 4 on a single component.
            prop_assert!(a.pow(4).is_zero());
        }
    }
}
