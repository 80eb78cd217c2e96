//! Rational K_0 of cellular varieties, the Chern character, Todd classes
//! and the Riemann-Roch transform of K-correspondences.
//!
//! K_0(P^n)_Q is `Q[u]/((u - 1)^{n+1})` with `u = [O(1)]`; it is stored in
//! the nilpotent generator `x = u - 1`, so `[O(a)] = (1 + x)^a` for every
//! integer `a`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::rational::{binomial, factorial};
use crate::algebra::{QuotientRingElement, Rational, RationalMatrix, RingDescriptor, TruncatedSeries};
use crate::error::{MotiveError, Result};
use crate::geometry::{CellularMap, CellularVariety, ChowClass, Class, Corr, GradedCorrespondence, KTheory};

pub type KClass = Class<KTheory>;
pub type KCorrespondence = Corr<KTheory>;

/// `[O(a_1, ..., a_k)]` on component `component`, zero elsewhere.
pub fn line_bundle(x: &CellularVariety, component: usize, twists: &[i64]) -> Result<KClass> {
    let ring = x.ring(component);
    if twists.len() != ring.num_vars() {
        return Err(MotiveError::InvalidArgument(format!(
            "{} twists for a component with {} factors",
            twists.len(),
            ring.num_vars()
        )));
    }
    let mut elt = QuotientRingElement::one(ring.clone());
    for (i, (&a, &n)) in twists.iter().zip(ring.max_exponents()).enumerate() {
        // (1 + x)^a = sum_k C(a, k) x^k, truncated at x^{n+1}.
        let factor = QuotientRingElement::from_terms(
            ring.clone(),
            (0..=n).map(|k| {
                let mut e = vec![0; ring.num_vars()];
                e[i] = k;
                (e, Rational::from_integer(binomial(&BigInt::from(a), k)))
            }),
        );
        elt = &elt * &factor;
    }
    let mut parts: Vec<QuotientRingElement> =
        (0..x.num_components()).map(|i| QuotientRingElement::zero(x.ring(i))).collect();
    parts[component] = elt;
    Class::from_parts(x, parts)
}

pub fn k_multiply(a: &KClass, b: &KClass) -> Result<KClass> {
    a.try_mul(b)
}

/// Pushforward along a projection; on a dropped factor `P^n` this is the
/// Euler characteristic.
pub fn k_pushforward(f: &CellularMap, a: &KClass) -> Result<KClass> {
    a.pushforward(f)
}

/// Composition `g . f` of K-correspondences: pushforward to `X x Z` of the
/// product of the pullbacks (the K_0 shadow of the derived tensor product).
pub fn compose_k(f: &KCorrespondence, g: &KCorrespondence) -> Result<KCorrespondence> {
    f.then(g)
}

/// The unit for [`compose_k`], obtained by inverting the Euler pairing on
/// each factor.
pub fn k_diagonal(x: &CellularVariety) -> KCorrespondence {
    Corr::identity(x)
}

/// `exp(h) - 1` truncated at `h^{n+1}`, in variable `var` of `ring`.
fn exp_minus_one(ring: &RingDescriptor, var: usize) -> QuotientRingElement {
    let n = ring.max_exponents()[var];
    QuotientRingElement::from_terms(
        ring.clone(),
        (1..=n).map(|k| {
            let mut e = vec![0; ring.num_vars()];
            e[var] = k;
            (e, Rational::new(BigInt::one(), factorial(u64::from(k))))
        }),
    )
}

/// `log(1 + x)` truncated at `x^{n+1}`.
fn log_one_plus(ring: &RingDescriptor, var: usize) -> QuotientRingElement {
    let n = ring.max_exponents()[var];
    QuotientRingElement::from_terms(
        ring.clone(),
        (1..=n).map(|k| {
            let mut e = vec![0; ring.num_vars()];
            e[var] = k;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            (e, Rational::new(BigInt::from(sign), BigInt::from(k)))
        }),
    )
}

fn map_parts<T: crate::geometry::Theory, U: crate::geometry::Theory>(
    a: &Class<T>,
    image: impl Fn(&RingDescriptor, usize) -> QuotientRingElement,
) -> Result<Class<U>> {
    let parts = a
        .parts()
        .iter()
        .map(|p| {
            let ring = p.ring();
            let images: Vec<_> = (0..ring.num_vars()).map(|v| image(ring, v)).collect();
            p.map_generators(ring, &images)
        })
        .collect::<Result<Vec<_>>>()?;
    Class::from_parts(a.variety(), parts)
}

/// The ring isomorphism `u_i -> exp(h_i)`.
pub fn chern_character(a: &KClass) -> ChowClass {
    map_parts(a, exp_minus_one).expect("generator images live in the same ring")
}

/// Inverse of [`chern_character`]: `h_i -> log(u_i)`.
pub fn inverse_chern_character(c: &ChowClass) -> KClass {
    map_parts(c, log_one_plus).expect("generator images live in the same ring")
}

/// Coefficients of `(h / (1 - e^{-h}))^{n+1}` up to `h^n`.
pub fn todd_series(n: u32) -> Vec<Rational> {
    let order = n as usize;
    // (1 - e^{-h}) / h = sum_k (-1)^k h^k / (k+1)!
    let coeffs = (0..=order)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            Rational::new(BigInt::from(sign), factorial(k as u64 + 1))
        })
        .collect();
    let s = TruncatedSeries::new(order, coeffs);
    let td = s.reciprocal().and_then(|r| r.pow(i64::from(n) + 1)).expect("unit constant term");
    td.coefficients().to_vec()
}

/// Todd class of the tangent bundle: the product over factors `P^n` of
/// `(h / (1 - e^{-h}))^{n+1}`.
pub fn todd_class(x: &CellularVariety) -> ChowClass {
    let parts = (0..x.num_components())
        .map(|i| {
            let ring = x.ring(i);
            let mut acc = QuotientRingElement::one(ring.clone());
            for (v, &n) in ring.max_exponents().iter().enumerate() {
                let series = todd_series(n);
                let factor = QuotientRingElement::from_terms(
                    ring.clone(),
                    series.into_iter().enumerate().map(|(k, c)| {
                        let mut e = vec![0; ring.num_vars()];
                        e[v] = k as u32;
                        (e, c)
                    }),
                );
                acc = &acc * &factor;
            }
            acc
        })
        .collect();
    Class::from_parts(x, parts).expect("component rings")
}

/// `integral over X of ch(a) Td(X)`; equals the Euler characteristic by
/// Hirzebruch-Riemann-Roch.
pub fn hrr_integral(a: &KClass) -> Rational {
    chern_character(a).try_mul(&todd_class(a.variety())).expect("same variety").integrate()
}

/// `alpha -> ch(alpha) . pr_Y^* Td(Y)` on `K_0(X x Y)_Q`; split it into
/// degrees with [`Corr::degree_parts`].
pub fn grr_transform(f: &KCorrespondence) -> GradedCorrespondence {
    let (x, y) = (f.source(), f.target());
    let td = todd_class(y).pullback(&CellularMap::projection_second(x, y)).expect("projection onto Y");
    let class = chern_character(f.class()).try_mul(&td).expect("same variety");
    Corr::new(x, y, class).expect("same endpoints")
}

/// Matrix of [`grr_transform`] on the monomial bases of `Hom(X, Y)`, and
/// its inverse; cached per pair.
pub fn grr_matrices(x: &CellularVariety, y: &CellularVariety) -> Arc<(RationalMatrix, RationalMatrix)> {
    type Cache = RwLock<HashMap<(CellularVariety, CellularVariety), Arc<(RationalMatrix, RationalMatrix)>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (x.clone(), y.clone());
    if let Some(m) = cache.read().expect("grr cache poisoned").get(&key) {
        return m.clone();
    }
    let basis = Corr::<KTheory>::basis(x, y);
    let n = basis.len();
    let mut m = RationalMatrix::zeros(n, n);
    for (col, b) in basis.iter().enumerate() {
        for (row, v) in grr_transform(b).class().coordinates().into_iter().enumerate() {
            m[(row, col)] = v;
        }
    }
    let inv = m.inverse().expect("the Riemann-Roch transform is bijective");
    let entry = Arc::new((m, inv));
    cache.write().expect("grr cache poisoned").entry(key).or_insert(entry).clone()
}

/// Inverse of [`grr_transform`], by an exact linear solve on the Hom space.
pub fn grr_inverse(g: &GradedCorrespondence) -> KCorrespondence {
    let (x, y) = (g.source(), g.target());
    let mats = grr_matrices(x, y);
    let coords = mats.1.mul_vec(&g.class().coordinates()).expect("square matrix of Hom dimension");
    let class = Class::from_coordinates(&x.product(y), &coords).expect("Hom dimension");
    Corr::new(x, y, class).expect("same endpoints")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use crate::geometry::{diagonal_class, Chow};

    fn p(n: u32) -> CellularVariety {
        CellularVariety::projective(n)
    }

    #[test]
    fn products_and_euler_characteristics() {
        let p1 = p(1);
        let o1 = line_bundle(&p1, 0, &[1]).unwrap();
        let u = o1.clone();
        let two_u_minus_one = &u.scale(&rat(2)) - &KClass::one(&p1);
        assert_eq!(k_multiply(&o1, &o1).unwrap(), two_u_minus_one);
        let to_pt = CellularMap::structure(&p1);
        assert_eq!(k_pushforward(&to_pt, &o1).unwrap().integrate(), rat(2));
        assert_eq!(line_bundle(&p1, 0, &[-2]).unwrap().integrate(), rat(-1));
        for n in 0..4 {
            assert_eq!(KClass::one(&p(n)).integrate(), rat(1));
        }
        // (u - 1)^{n+1} = 0 on P^n
        let x = &o1 - &KClass::one(&p1);
        assert!(x.try_mul(&x).unwrap().is_zero());
    }

    #[test]
    fn binomial_euler_characteristic() {
        for n in 1..4u32 {
            for a in -4i64..=4 {
                let chi = line_bundle(&p(n), 0, &[a]).unwrap().integrate();
                let expected = binomial(&BigInt::from(a + i64::from(n)), n);
                assert_eq!(chi, Rational::from_integer(expected), "chi(P^{n}, O({a}))");
            }
        }
    }

    #[test]
    fn chern_characters() {
        let p1 = p(1);
        assert_eq!(chern_character(&KClass::one(&p1)), ChowClass::one(&p1));
        let h = ChowClass::generator(&p1, 0, 0);
        assert_eq!(chern_character(&line_bundle(&p1, 0, &[1]).unwrap()), &ChowClass::one(&p1) + &h);
        let p11 = p1.power(2);
        for (a, b) in [(2, -1), (0, 3), (-2, -2)] {
            let ch = chern_character(&line_bundle(&p11, 0, &[a, b]).unwrap());
            let h1 = ChowClass::generator(&p11, 0, 0);
            let h2 = ChowClass::generator(&p11, 0, 1);
            let one = ChowClass::one(&p11);
            let expected = (&one + &h1.scale(&rat(a))).try_mul(&(&one + &h2.scale(&rat(b)))).unwrap();
            assert_eq!(ch, expected);
        }
        let k = line_bundle(&p(3), 0, &[-3]).unwrap();
        assert_eq!(inverse_chern_character(&chern_character(&k)), k);
    }

    #[test]
    fn todd_classes() {
        assert_eq!(todd_class(&CellularVariety::point()), ChowClass::one(&CellularVariety::point()));
        let p1 = p(1);
        assert_eq!(todd_class(&p1), &ChowClass::one(&p1) + &ChowClass::generator(&p1, 0, 0));
        let p2 = p(2);
        let h = ChowClass::generator(&p2, 0, 0);
        let expected = &(&ChowClass::one(&p2) + &h.scale(&ratio(3, 2))) + &h.try_mul(&h).unwrap();
        assert_eq!(todd_class(&p2), expected);
    }

    #[test]
    fn grr_of_the_diagonal_is_the_diagonal() {
        for x in [CellularVariety::point(), p(1), p(2), p(1).power(2)] {
            assert_eq!(&grr_transform(&k_diagonal(&x)), diagonal_class(&x).corr());
        }
    }

    #[test]
    fn grr_inverse_matches_closed_form() {
        let (x, y) = (p(1), p(2));
        for g in Corr::<Chow>::basis(&x, &y) {
            let k = grr_inverse(&g);
            assert_eq!(grr_transform(&k), g);
            // Closed form: ch^{-1}(g . pr^* Td(Y)^{-1}).
            let td = todd_class(&y).pullback(&CellularMap::projection_second(&x, &y)).unwrap();
            let td_inv = {
                let parts = td.parts().iter().map(|p| {
                    let n = p.ring().max_exponents().iter().sum::<u32>();
                    let one = QuotientRingElement::one(p.ring().clone());
                    let nil = p - &one;
                    let mut acc = one.clone();
                    let mut pow = one.clone();
                    for _ in 0..n {
                        pow = &pow * &(-&nil);
                        acc = &acc + &pow;
                    }
                    acc
                });
                Class::<Chow>::from_parts(td.variety(), parts.collect()).unwrap()
            };
            let closed = inverse_chern_character(&g.class().try_mul(&td_inv).unwrap());
            assert_eq!(k.class(), &closed);
        }
    }
}
