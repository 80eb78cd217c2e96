//! Classes in the Grothendieck rings of the Tate-generated motive
//! categories: Laurent polynomials in `L = [(pt, id, -1)]` on the Chow side,
//! integers on the noncommutative side, where all twists collapse.

use num_bigint::BigInt;

use crate::algebra::LaurentPolynomial;
use crate::geometry::Chow;
use crate::motive::{graded_ranks_of_action, ChowMotive, NCMotive, OrbitMotive};
use crate::schur::SchurCut;

pub type K0ChowClass = LaurentPolynomial;
pub type K0NCClass = BigInt;

/// `sum_k rank(p on A^k) L^{k - m}`.
pub fn class_of_chow(n: &ChowMotive) -> K0ChowClass {
    graded_class(n.graded_ranks(), n.twist())
}

/// The class of a Schur cut of a Chow motive. The cut is
/// `S_λ(N)^{⊕ dim λ}`; this is the class of that whole summand.
pub fn class_of_schur_cut(c: &SchurCut<Chow>) -> K0ChowClass {
    graded_class(graded_ranks_of_action(c.variety(), c.action_matrix()), c.twist())
}

/// Defined for orbit objects whose projector has degree 0; the twist is
/// kept, so this is the class of a chosen Chow lift.
pub fn class_of_orbit(n: &OrbitMotive) -> Option<K0ChowClass> {
    n.chow_motive().as_ref().map(class_of_chow)
}

/// Total rank of the projector's action on `K_0(X)_Q`.
pub fn class_of_nc(n: &NCMotive) -> K0NCClass {
    BigInt::from(n.rank())
}

/// The ring map `K_0(Chow) -> K_0(NC)`, `L -> 1`.
pub fn collapse(c: &K0ChowClass) -> K0NCClass {
    c.evaluate_integer(&BigInt::from(1)).expect("evaluation at a unit")
}

fn graded_class(ranks: std::collections::BTreeMap<u32, usize>, twist: i64) -> K0ChowClass {
    LaurentPolynomial::from_coefficients(ranks.into_iter().map(|(k, r)| (i64::from(k) - twist, BigInt::from(r))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{CellularVariety, Corr, Correspondence};
    use crate::motive::{nc_of, realize, split_idempotent};
    use crate::schur::sym;

    fn p(n: u32) -> CellularVariety {
        CellularVariety::projective(n)
    }

    fn universe() -> Vec<ChowMotive> {
        let x = p(2);
        let piece = split_idempotent(&Corr::<Chow>::identity(&x)).unwrap().remove(1).idempotent;
        vec![
            ChowMotive::unit(),
            ChowMotive::of(&p(1)),
            ChowMotive::of(&p(2)),
            ChowMotive::of(&p(1).power(2)),
            ChowMotive::tate(1),
            ChowMotive::of(&p(1)).twisted(-2),
            ChowMotive::new(&x, Correspondence::new(piece, 0).unwrap(), 0).unwrap(),
        ]
    }

    #[test]
    fn classes_of_basic_motives() {
        assert_eq!(class_of_chow(&ChowMotive::unit()), LaurentPolynomial::one());
        for n in 0..6 {
            assert_eq!(class_of_chow(&ChowMotive::of(&p(n))), LaurentPolynomial::geometric(n));
            assert_eq!(class_of_nc(&nc_of(&p(n))), BigInt::from(n + 1));
        }
        assert_eq!(class_of_chow(&ChowMotive::tate(1)), LaurentPolynomial::monomial(-1, 1));
        assert_eq!(class_of_nc(&nc_of(&p(1))), BigInt::from(2));
        assert_eq!(class_of_chow(&universe()[6]), LaurentPolynomial::lefschetz());
    }

    #[test]
    fn ring_homomorphism_on_the_universe() {
        let u = universe();
        for a in &u {
            for b in &u {
                assert_eq!(class_of_chow(&a.tensor(b)), &class_of_chow(a) * &class_of_chow(b));
                if a.twist() == b.twist() {
                    assert_eq!(class_of_chow(&a.direct_sum(b).unwrap()), &class_of_chow(a) + &class_of_chow(b));
                }
            }
            let r = realize(&OrbitMotive::from_chow(a));
            assert_eq!(class_of_nc(&r), collapse(&class_of_chow(a)));
            assert_eq!(class_of_orbit(&OrbitMotive::from_chow(a)), Some(class_of_chow(a)));
        }
    }

    #[test]
    fn schur_cut_classes() {
        let m = ChowMotive::of(&p(1));
        for n in 1..=4u32 {
            let s = sym(n, &m).unwrap();
            assert_eq!(class_of_schur_cut(&s), LaurentPolynomial::geometric(n));
            assert_eq!(class_of_schur_cut(&s), class_of_chow(&s.to_chow_motive().unwrap()));
        }
    }
}
