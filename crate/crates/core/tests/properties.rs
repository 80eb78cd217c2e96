use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use motivecalc_core::algebra::LaurentPolynomial;
use motivecalc_core::geometry::{CellularVariety, Chow, Class, Corr, KTheory, Theory};
use motivecalc_core::ktheory::{grr_inverse, grr_transform};
use motivecalc_core::measure::{class_of_chow, SymbolPolynomial};
use motivecalc_core::motive::{nc_of, ChowMotive};
use motivecalc_core::zeta::{rank_zeta, zeta_intrinsic};

fn varieties() -> Vec<CellularVariety> {
    vec![
        CellularVariety::point(),
        CellularVariety::projective(1),
        CellularVariety::projective(2),
        CellularVariety::product_of_projective(&[1, 1]),
        CellularVariety::projective(1).disjoint_union(&CellularVariety::point()),
    ]
}

fn corr<T: Theory>(x: &CellularVariety, y: &CellularVariety, coeffs: &[i64]) -> Corr<T> {
    let xy = x.product(y);
    let coords: Vec<BigRational> =
        (0..xy.rank()).map(|i| BigRational::from_integer(BigInt::from(coeffs[i % coeffs.len()]))).collect();
    Corr::new(x, y, Class::from_coordinates(&xy, &coords).unwrap()).unwrap()
}

fn triple() -> impl Strategy<Value = (usize, usize, usize, Vec<i64>, Vec<i64>, Vec<i64>)> {
    let n = varieties().len();
    let coeffs = || prop::collection::vec(-3i64..=3, 1..7);
    (0..n, 0..n, 0..n, coeffs(), coeffs(), coeffs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative((i, j, k, a, b, c) in triple()) {
        let v = varieties();
        let (x, y, z) = (&v[i], &v[j], &v[k]);
        let f = corr::<Chow>(x, y, &a);
        let g = corr::<Chow>(y, z, &b);
        let h = corr::<Chow>(z, x, &c);
        prop_assert_eq!(f.then(&g).unwrap().then(&h).unwrap(), f.then(&g.then(&h).unwrap()).unwrap());
        let f = corr::<KTheory>(x, y, &a);
        let g = corr::<KTheory>(y, z, &b);
        let h = corr::<KTheory>(z, x, &c);
        prop_assert_eq!(f.then(&g).unwrap().then(&h).unwrap(), f.then(&g.then(&h).unwrap()).unwrap());
    }

    #[test]
    fn riemann_roch_transform_is_a_functor((i, j, k, a, b, _c) in triple()) {
        let v = varieties();
        let (x, y, z) = (&v[i], &v[j], &v[k]);
        let f = corr::<KTheory>(x, y, &a);
        let g = corr::<KTheory>(y, z, &b);
        let lhs = grr_transform(&f.then(&g).unwrap());
        let rhs = grr_transform(&f).then(&grr_transform(&g)).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(grr_inverse(&lhs), f.then(&g).unwrap());
    }

    #[test]
    fn composition_is_matrix_product((i, j, _k, a, b, _c) in triple()) {
        let v = varieties();
        let (x, y) = (&v[i], &v[j]);
        let f = corr::<Chow>(x, y, &a);
        let g = corr::<Chow>(y, x, &b);
        let composed = f.then(&g).unwrap().action_matrix();
        let product = g.action_matrix().mul(&f.action_matrix()).unwrap();
        prop_assert_eq!(composed, product);
    }

    #[test]
    fn chow_class_is_multiplicative(i in 0usize..5, j in 0usize..5, m in -2i64..=2, n in -2i64..=2) {
        let v = varieties();
        let a = ChowMotive::of(&v[i]).twisted(m);
        let b = ChowMotive::of(&v[j]).twisted(n);
        prop_assert_eq!(class_of_chow(&a.tensor(&b)), &class_of_chow(&a) * &class_of_chow(&b));
        prop_assert_eq!(
            class_of_chow(&a),
            LaurentPolynomial::from_coefficients(
                class_of_chow(&ChowMotive::of(&v[i])).terms().map(|(e, c)| (e - m, c.clone()))
            )
        );
    }

    #[test]
    fn intrinsic_zeta_is_multiplicative(i in 0usize..5, j in 0usize..4) {
        let v = varieties();
        let (a, b) = (nc_of(&v[i]), nc_of(&v[j]));
        let za = zeta_intrinsic(&a, 6).unwrap().series;
        let zb = zeta_intrinsic(&b, 6).unwrap().series;
        let sum = rank_zeta(&BigInt::from(a.direct_sum(&b).rank()), 6).unwrap();
        prop_assert_eq!(za.mul(&zb).unwrap(), sum);
        let z = zeta_intrinsic(&a, 6).unwrap();
        prop_assert_eq!(z.coefficient(0), &BigInt::from(1));
    }

    #[test]
    fn symbol_polynomials_round_trip(terms in prop::collection::vec((-4i64..=4, prop::collection::vec(0usize..4, 0..3)), 0..5)) {
        let names = ["pt", "P1", "S^2(P1)", "A3"];
        let parts = terms.iter().map(|(c, syms)| {
            SymbolPolynomial::monomial(syms.iter().map(|&s| names[s].to_string()).collect(), BigInt::from(*c))
        });
        let p = SymbolPolynomial::sum(parts);
        let text = p.to_string();
        prop_assert_eq!(text.parse::<SymbolPolynomial>().unwrap(), p);
    }
}
