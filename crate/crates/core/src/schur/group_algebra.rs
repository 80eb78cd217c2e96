use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::partition::{Partition, Permutation};
use crate::algebra::rational::factorial;
use crate::algebra::to_canonical;
use crate::algebra::Rational;
use crate::error::{MotiveError, Result};

/// An element of `Q[S_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: BTreeMap<Permutation, Rational>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::basis(Permutation::identity(n))
    }

    pub fn basis(s: Permutation) -> Self {
        let n = s.degree();
        GroupAlgebraElement { n, terms: BTreeMap::from([(s, Rational::one())]) }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, s: &Permutation) -> Rational {
        self.terms.get(s).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, s: Permutation, c: Rational) {
        assert_eq!(s.degree(), self.n, "permutation of the wrong degree");
        let v = self.terms.entry(s.clone()).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&s);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        GroupAlgebraElement { n: self.n, terms: self.terms.iter().map(|(s, v)| (s.clone(), v * c)).collect() }
    }

    pub fn is_idempotent(&self) -> bool {
        &(self * self) == self
    }

    pub fn is_central(&self) -> bool {
        (0..self.n.saturating_sub(1)).all(|i| {
            let t = Self::basis(Permutation::transposition(self.n, i, i + 1));
            (&t * self) == (self * &t)
        })
    }
}

impl Add for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn add(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        assert_eq!(self.n, rhs.n, "group algebras of different degrees");
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }
}

/// Convolution: `(sum a_s s)(sum b_t t) = sum a_s b_t (s . t)`.
impl Mul for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn mul(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        assert_eq!(self.n, rhs.n, "group algebras of different degrees");
        let mut acc: BTreeMap<Permutation, Rational> = BTreeMap::new();
        for (s, a) in &self.terms {
            for (t, b) in &rhs.terms {
                *acc.entry(s.compose(t)).or_insert_with(Rational::zero) += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        GroupAlgebraElement { n: self.n, terms: acc }
    }
}

impl Serialize for GroupAlgebraElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (s, c) in &self.terms {
            map.serialize_entry(&s.to_string(), &to_canonical(c))?;
        }
        map.end()
    }
}

type CharacterCache = RwLock<HashMap<(Vec<u32>, Vec<u32>), BigInt>>;

/// The irreducible character `χ_λ` on the class of cycle type `μ`, by the
/// Murnaghan-Nakayama rule on beta-sets: removing a rim hook of length `k`
/// moves one bead from `b` to `b - k`, with sign `(-1)^{beads strictly
/// between}`.
pub fn character(lambda: &Partition, mu: &Partition) -> Result<Rational> {
    if lambda.size() != mu.size() {
        return Err(MotiveError::SizeMismatch(format!("χ_{lambda} evaluated on a class of S_{}", mu.size())));
    }
    Ok(Rational::from_integer(mn(lambda.parts(), mu.parts())))
}

fn mn(lambda: &[u32], mu: &[u32]) -> BigInt {
    static CACHE: OnceLock<CharacterCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(v) = cache.read().expect("character cache poisoned").get(&key) {
        return v.clone();
    }
    let value = if mu.is_empty() {
        if lambda.is_empty() {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    } else {
        let k = mu[0];
        let rest = &mu[1..];
        let len = lambda.len() as u32;
        let beads: Vec<u32> = lambda.iter().enumerate().map(|(i, &l)| l + len - 1 - i as u32).collect();
        let mut total = BigInt::zero();
        for (idx, &b) in beads.iter().enumerate() {
            if b < k || beads.contains(&(b - k)) {
                continue;
            }
            let target = b - k;
            let between = beads.iter().filter(|&&c| c > target && c < b).count();
            let mut moved = beads.clone();
            moved[idx] = target;
            let smaller = from_beads(&moved);
            let v = mn(&smaller, rest);
            if between % 2 == 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        total
    };
    cache.write().expect("character cache poisoned").insert(key, value.clone());
    value
}

fn from_beads(beads: &[u32]) -> Vec<u32> {
    let mut b = beads.to_vec();
    b.sort_unstable_by(|x, y| y.cmp(x));
    let len = b.len() as u32;
    b.iter().enumerate().map(|(i, &x)| x - (len - 1 - i as u32)).filter(|&p| p > 0).collect()
}

/// `dim λ = χ_λ(1^n)`.
pub fn dimension(lambda: &Partition) -> BigInt {
    mn(lambda.parts(), Partition::column(lambda.size()).parts())
}

/// `z_λ = (dim λ / n!) sum_s χ_λ(s^{-1}) s`.
pub fn central_idempotent(lambda: &Partition) -> GroupAlgebraElement {
    let n = lambda.size() as usize;
    let scale = Rational::new(dimension(lambda), factorial(n as u64));
    let mut by_type: HashMap<Partition, Rational> = HashMap::new();
    let mut out = GroupAlgebraElement::zero(n);
    for s in Permutation::all(n) {
        let ct = s.inverse().cycle_type();
        let c = by_type
            .entry(ct.clone())
            .or_insert_with(|| &scale * character(lambda, &ct).expect("same size"))
            .clone();
        if !c.is_zero() {
            out.terms.insert(s, c);
        }
    }
    out
}
