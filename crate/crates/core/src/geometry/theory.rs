//! The two cohomology theories on cellular varieties.
//!
//! Both rings are presented with one nilpotent generator per projective
//! factor: the hyperplane class `h` for Chow groups and `x = u - 1` for
//! rational K_0, where `u = [O(1)]`. The two theories then differ only in
//! the integration pairing on a single `P^n`:
//!
//! * Chow: the integral of `h^e` is 1 when `e = n` and 0 otherwise;
//! * K_0: the Euler characteristic of `x^e` is `C(n, e)`, the `e`-th forward
//!   difference of `a -> C(a + n, n) = chi(P^n, O(a))` at `a = 0`.
//!
//! Everything else (composition of correspondences, diagonals, action on
//! classes) is written once against [`Theory`].

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::rational::binomial;
use crate::algebra::{Exponents, Rational, RationalMatrix, RingDescriptor};

pub trait Theory: Copy + Clone + fmt::Debug + Default + PartialEq + Eq + Hash + Send + Sync + 'static {
    const NAME: &'static str;

    /// Pushforward of `x^e` from `P^n` to the point.
    fn factor_integral(n: u32, e: u32) -> Rational;

    /// Row `a` of the inverse of the Gram matrix `(integral of x^{a+b})` on
    /// `P^n`, as its nonzero entries.
    fn dual_row(n: u32, a: u32) -> Vec<(u32, Rational)>;

    /// Nonzero pairing partners of `x^a` on `P^n`: every `b` with a nonzero
    /// integral of `x^{a+b}`, with that integral.
    fn factor_partners(n: u32, a: u32) -> Vec<(u32, Rational)> {
        (0..=n.saturating_sub(a))
            .filter(|_| a <= n)
            .map(|b| (b, Self::factor_integral(n, a + b)))
            .filter(|(_, w)| !w.is_zero())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Chow;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct KTheory;

impl Theory for Chow {
    const NAME: &'static str = "chow";

    fn factor_integral(n: u32, e: u32) -> Rational {
        if e == n {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    fn dual_row(n: u32, a: u32) -> Vec<(u32, Rational)> {
        if a <= n {
            vec![(n - a, Rational::one())]
        } else {
            Vec::new()
        }
    }

    fn factor_partners(n: u32, a: u32) -> Vec<(u32, Rational)> {
        Self::dual_row(n, a)
    }
}

impl Theory for KTheory {
    const NAME: &'static str = "k";

    fn factor_integral(n: u32, e: u32) -> Rational {
        if e <= n {
            Rational::from_integer(binomial(&BigInt::from(n), e))
        } else {
            Rational::zero()
        }
    }

    fn dual_row(n: u32, a: u32) -> Vec<(u32, Rational)> {
        let inv = k_gram_inverse(n);
        if a > n {
            return Vec::new();
        }
        (0..=n)
            .map(|b| (b, inv[(a as usize, b as usize)].clone()))
            .filter(|(_, w)| !w.is_zero())
            .collect()
    }
}

fn k_gram_inverse(n: u32) -> Arc<RationalMatrix> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<RationalMatrix>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.read().expect("gram cache poisoned").get(&n) {
        return m.clone();
    }
    let size = n as usize + 1;
    let mut g = RationalMatrix::zeros(size, size);
    for a in 0..size {
        for b in 0..size {
            g[(a, b)] = KTheory::factor_integral(n, (a + b) as u32);
        }
    }
    // The Gram matrix is anti-triangular with ones on the anti-diagonal.
    let inv = Arc::new(g.inverse().expect("Euler pairing on P^n is perfect"));
    cache.write().expect("gram cache poisoned").entry(n).or_insert(inv).clone()
}

/// Integral over a product of projective spaces of the monomial `x^e`.
pub fn monomial_integral<T: Theory>(ring: &RingDescriptor, e: &[u32]) -> Rational {
    let mut acc = Rational::one();
    for (&n, &ei) in ring.max_exponents().iter().zip(e) {
        let w = T::factor_integral(n, ei);
        if w.is_zero() {
            return w;
        }
        acc *= w;
    }
    acc
}

/// Cartesian product of per-factor `(exponent, weight)` lists.
pub(crate) fn product_rows(rows: Vec<Vec<(u32, Rational)>>) -> Vec<(Exponents, Rational)> {
    let mut out: Vec<(Exponents, Rational)> = vec![(Vec::with_capacity(rows.len()), Rational::one())];
    for row in rows {
        if row.is_empty() {
            return Vec::new();
        }
        out = out
            .into_iter()
            .flat_map(|(prefix, w)| {
                row.iter().map(move |(b, wb)| {
                    let mut e = prefix.clone();
                    e.push(*b);
                    (e, &w * wb)
                })
            })
            .collect();
    }
    out
}

/// Pairing partners of `x^a` on a product of projective spaces.
pub fn partners<T: Theory>(ring: &RingDescriptor, a: &[u32]) -> Vec<(Exponents, Rational)> {
    product_rows(ring.max_exponents().iter().zip(a).map(|(&n, &ai)| T::factor_partners(n, ai)).collect())
}

/// Row `a` of the inverse Gram matrix on a product of projective spaces.
pub fn dual_row<T: Theory>(ring: &RingDescriptor, a: &[u32]) -> Vec<(Exponents, Rational)> {
    product_rows(ring.max_exponents().iter().zip(a).map(|(&n, &ai)| T::dual_row(n, ai)).collect())
}

/// Position of `e` in the lexicographic monomial basis of `ring`.
pub fn monomial_index(ring: &RingDescriptor, e: &[u32]) -> usize {
    ring.max_exponents().iter().zip(e).fold(0, |acc, (&n, &ei)| acc * (n as usize + 1) + ei as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn euler_characteristics_of_nilpotent_powers() {
        // chi(P^2, (u-1)^k) for k = 0, 1, 2: 1, 3 - 1 = 2, 6 - 2*3 + 1 = 1.
        assert_eq!(KTheory::factor_integral(2, 0), rat(1));
        assert_eq!(KTheory::factor_integral(2, 1), rat(2));
        assert_eq!(KTheory::factor_integral(2, 2), rat(1));
        assert_eq!(KTheory::factor_integral(2, 3), rat(0));
    }

    #[test]
    fn k_dual_rows_invert_gram() {
        for n in 0..4u32 {
            for a in 0..=n {
                for c in 0..=n {
                    let s: Rational = KTheory::dual_row(n, a)
                        .into_iter()
                        .map(|(b, w)| w * KTheory::factor_integral(n, b + c))
                        .sum();
                    assert_eq!(s, rat(i64::from(a == c)), "n={n} a={a} c={c}");
                }
            }
        }
        // On P^1 the diagonal is x1 + x2 - x1 x2.
        assert_eq!(KTheory::dual_row(1, 0), vec![(1, rat(1))]);
        assert_eq!(KTheory::dual_row(1, 1), vec![(0, rat(1)), (1, rat(-1))]);
    }

    #[test]
    fn indices_follow_basis_order() {
        let ring = RingDescriptor::new(vec![1, 2, 1]);
        for (k, e) in ring.monomials().iter().enumerate() {
            assert_eq!(monomial_index(&ring, e), k);
        }
    }

    #[test]
    fn chow_partners_are_complements() {
        let ring = RingDescriptor::new(vec![1, 2]);
        assert_eq!(partners::<Chow>(&ring, &[0, 1]), vec![(vec![1, 1], rat(1))]);
        assert_eq!(partners::<KTheory>(&ring, &[1, 2]), vec![(vec![0, 0], rat(1))]);
        assert_eq!(partners::<KTheory>(&ring, &[0, 1]).len(), 4);
    }
}
