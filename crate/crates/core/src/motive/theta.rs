//! The comparison functors between Chow-side and noncommutative motives:
//!
//! ```text
//! Chow --π--> Chow/Q(1) <--θ1-- CHM <--θ2-- KM --θ3--> NC
//! ```
//!
//! `θ1` and `θ3` are the identity on classes, `θ2` is the Riemann-Roch
//! transform `α -> ch(α) . pr_Y^* Td(Y)`, and `R = θ3 . θ2^{-1} . θ1^{-1}`.
//! The noncommutative side is modeled at the level of `K_0(X x Y)_Q`, so
//! `θ3` is an identity of data.

use super::generic::{Motive, MotiveMorphism};
use super::orbit::{OrbitMorphism, OrbitMotive};
use crate::geometry::{CellularVariety, Chow, KTheory};
use crate::ktheory::{grr_inverse, grr_transform};

/// Manin's category: pairs `(X, p)` with `Hom = q . ⊕_r Corr^r(X, Y) . p`.
pub type ManinMotive = Motive<Chow>;
pub type ManinMorphism = MotiveMorphism<Chow>;
/// Pseudo-abelianized K-motives, standing in for noncommutative mixed
/// motives of cellular varieties.
pub type NCMotive = Motive<KTheory>;
pub type NCMorphism = MotiveMorphism<KTheory>;

/// `NC(X) = (X, [O_Δ])`.
pub fn nc_of(x: &CellularVariety) -> NCMotive {
    Motive::of(x)
}

pub fn theta1(a: &ManinMotive) -> OrbitMotive {
    OrbitMotive::new_unchecked(a.variety(), a.projector().clone(), 0)
}

pub fn theta1_morphism(f: &ManinMorphism) -> OrbitMorphism {
    OrbitMorphism::new_unchecked(&theta1(f.source()), &theta1(f.target()), f.class().clone())
}

/// Forgets the twist, which the orbit category identifies away.
pub fn theta1_inverse(a: &OrbitMotive) -> ManinMotive {
    Motive::new_unchecked(a.variety(), a.projector().clone())
}

pub fn theta1_inverse_morphism(f: &OrbitMorphism) -> ManinMorphism {
    MotiveMorphism::new_unchecked(&theta1_inverse(f.source()), &theta1_inverse(f.target()), f.class().clone())
}

pub fn theta2(n: &NCMotive) -> ManinMotive {
    Motive::new_unchecked(n.variety(), grr_transform(n.projector()))
}

pub fn theta2_morphism(f: &NCMorphism) -> ManinMorphism {
    MotiveMorphism::new_unchecked(&theta2(f.source()), &theta2(f.target()), grr_transform(f.class()))
}

pub fn theta2_inverse(a: &ManinMotive) -> NCMotive {
    Motive::new_unchecked(a.variety(), grr_inverse(a.projector()))
}

pub fn theta2_inverse_morphism(f: &ManinMorphism) -> NCMorphism {
    MotiveMorphism::new_unchecked(&theta2_inverse(f.source()), &theta2_inverse(f.target()), grr_inverse(f.class()))
}

pub fn theta3(n: &NCMotive) -> NCMotive {
    n.clone()
}

pub fn theta3_morphism(f: &NCMorphism) -> NCMorphism {
    f.clone()
}

/// `R = θ3 . θ2^{-1} . θ1^{-1}`.
pub fn realize(a: &OrbitMotive) -> NCMotive {
    theta3(&theta2_inverse(&theta1_inverse(a)))
}

pub fn realize_morphism(f: &OrbitMorphism) -> NCMorphism {
    theta3_morphism(&theta2_inverse_morphism(&theta1_inverse_morphism(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, RationalMatrix};
    use crate::geometry::Corr;
    use crate::ktheory::{grr_matrices, k_diagonal};
    use crate::motive::{split_idempotent, ChowMotive};

    fn p(n: u32) -> CellularVariety {
        CellularVariety::projective(n)
    }

    fn universe() -> Vec<CellularVariety> {
        vec![CellularVariety::point(), p(1), p(2), p(1).power(2)]
    }

    #[test]
    fn theta2_sends_diagonal_to_identity() {
        for x in universe() {
            assert_eq!(theta2(&nc_of(&x)), ManinMotive::of(&x));
            assert_eq!(theta2_morphism(&nc_of(&x).identity()), ManinMotive::of(&x).identity());
        }
        let pt = CellularVariety::point();
        let f = NCMorphism::new(&nc_of(&pt), &nc_of(&pt), k_diagonal(&pt).scale(&rat(5))).unwrap();
        assert_eq!(theta2_morphism(&f).class(), &Corr::identity(&pt).scale(&rat(5)));
    }

    #[test]
    fn theta2_is_bijective_on_homs() {
        let m = &grr_matrices(&p(1), &p(2)).0;
        assert_eq!(m.rows(), 6);
        assert_eq!(m.rank(), 6);
        for x in universe() {
            for y in universe() {
                let m: &RationalMatrix = &grr_matrices(&x, &y).0;
                assert_eq!(m.rank(), x.rank() * y.rank());
            }
        }
    }

    #[test]
    fn theta1_is_fully_faithful() {
        for x in universe() {
            for y in universe() {
                let (a, b) = (ManinMotive::of(&x), ManinMotive::of(&y));
                let manin = a.hom_basis(&b).unwrap().len();
                let orbit = theta1(&a).hom(&theta1(&b)).unwrap().dimension();
                assert_eq!(manin, orbit);
            }
        }
        assert_eq!(ManinMotive::of(&p(1)).hom_basis(&ManinMotive::of(&p(1))).unwrap().len(), 4);
    }

    #[test]
    fn chain_preserves_composition_and_realizes_nc() {
        for x in universe() {
            assert_eq!(realize(&OrbitMotive::of(&x)), nc_of(&x));
            assert_eq!(realize(&OrbitMotive::of(&x).twisted(3)), nc_of(&x));
        }
        let vs = [p(1), p(2), p(1).power(2)];
        for (i, x) in vs.iter().enumerate() {
            let y = &vs[(i + 1) % 3];
            let z = &vs[(i + 2) % 3];
            let (a, b, c) = (OrbitMotive::of(x), OrbitMotive::of(y).twisted(1), OrbitMotive::of(z));
            let fs = a.hom(&b).unwrap().basis;
            let gs = b.hom(&c).unwrap().basis;
            for f in fs.iter().step_by(2) {
                for g in gs.iter().step_by(3) {
                    let lhs = realize_morphism(&f.then(g).unwrap());
                    let rhs = realize_morphism(f).then(&realize_morphism(g)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn realization_is_monoidal() {
        let (a, b) = (OrbitMotive::of(&p(1)), OrbitMotive::of(&p(2)));
        assert_eq!(realize(&a.tensor(&b)), realize(&a).tensor(&realize(&b)));
        let x = p(1);
        let piece = split_idempotent(&Corr::<Chow>::identity(&x)).unwrap().remove(1);
        let c = OrbitMotive::new(&x, piece.idempotent, 0).unwrap();
        assert_eq!(realize(&c.tensor(&a)), realize(&c).tensor(&realize(&a)));
        let f = &a.hom(&a).unwrap().basis[0];
        let g = &b.hom(&b).unwrap().basis[2];
        assert_eq!(realize_morphism(&f.tensor(g)), realize_morphism(f).tensor(&realize_morphism(g)));
    }

    #[test]
    fn end_of_nc_projective_line_matches_orbit_end() {
        let x = p(1);
        let orbit = OrbitMotive::of(&x);
        let basis = orbit.hom(&orbit).unwrap().basis;
        let images: Vec<NCMorphism> = basis.iter().map(realize_morphism).collect();
        let nc_dim = nc_of(&x).hom_dimension(&nc_of(&x));
        assert_eq!(nc_dim, 4);
        // structure constants: R(f . g) = R(f) . R(g) on every pair of basis elements
        for (f, rf) in basis.iter().zip(&images) {
            for (g, rg) in basis.iter().zip(&images) {
                assert_eq!(realize_morphism(&f.then(g).unwrap()), rf.then(rg).unwrap());
            }
        }
        let a = ChowMotive::of(&x);
        assert_eq!(OrbitMotive::from_chow(&a), orbit);
    }

    #[test]
    fn theta2_of_split_nc_pieces() {
        let x = p(1);
        for piece in split_idempotent(&k_diagonal(&x)).unwrap() {
            let n = NCMotive::new(&x, piece.idempotent).unwrap();
            let m = theta2(&n);
            assert!(m.projector().is_idempotent());
            assert_eq!(theta2_inverse(&m), n);
            assert_eq!(m.rank(), 1);
        }
    }
}
