//! The orbit category of Chow motives under `- ⊗ Q(1)`:
//! `Hom((X, p, m), (Y, q, n)) = q . ⊕_j Corr^{(n+j)-m}(X, Y) . p`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::chow::{cut, graded_ranks, ChowMorphism, ChowMotive};
use super::generic::cut_basis;
use crate::algebra::Rational;
use crate::error::{MotiveError, Result};
use crate::geometry::{graph_transpose, CellularMap, CellularVariety, Chow, Corr, Correspondence, GradedCorrespondence};

/// An object of the orbit category. The projector is allowed to be a graded
/// idempotent; objects coming from Chow motives have it in degree 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitMotive {
    variety: CellularVariety,
    projector: GradedCorrespondence,
    twist: i64,
}

impl OrbitMotive {
    pub fn new(variety: &CellularVariety, projector: GradedCorrespondence, twist: i64) -> Result<Self> {
        if projector.source() != variety || projector.target() != variety {
            return Err(MotiveError::VarietyMismatch(format!("projector is not an endomorphism of {variety}")));
        }
        if !projector.is_idempotent() {
            return Err(MotiveError::NotIdempotent(format!("projector on {variety}")));
        }
        Ok(OrbitMotive { variety: variety.clone(), projector, twist })
    }

    pub(crate) fn new_unchecked(variety: &CellularVariety, projector: GradedCorrespondence, twist: i64) -> Self {
        OrbitMotive { variety: variety.clone(), projector, twist }
    }

    /// The projection `π` from Chow motives.
    pub fn from_chow(a: &ChowMotive) -> Self {
        Self::new_unchecked(a.variety(), a.projector().corr().clone(), a.twist())
    }

    pub fn of(x: &CellularVariety) -> Self {
        Self::from_chow(&ChowMotive::of(x))
    }

    pub fn unit() -> Self {
        Self::from_chow(&ChowMotive::unit())
    }

    pub fn variety(&self) -> &CellularVariety {
        &self.variety
    }

    pub fn projector(&self) -> &GradedCorrespondence {
        &self.projector
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn twisted(&self, k: i64) -> Self {
        Self { twist: self.twist + k, ..self.clone() }
    }

    pub fn rank(&self) -> usize {
        self.projector.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.projector.is_zero()
    }

    /// The underlying Chow motive, when the projector is homogeneous of
    /// degree 0.
    pub fn chow_motive(&self) -> Option<ChowMotive> {
        let corr = Correspondence::new(self.projector.clone(), 0).ok()?;
        Some(ChowMotive::new_unchecked(&self.variety, corr, self.twist))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self::new_unchecked(
            &self.variety.product(&other.variety),
            self.projector.tensor(&other.projector),
            self.twist + other.twist,
        )
    }

    /// Unrestricted direct sums: twists are identified here, so the sum is
    /// taken after moving `other` to the twist of `self`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new_unchecked(
            &self.variety.disjoint_union(&other.variety),
            self.projector.direct_sum(&other.projector),
            self.twist,
        )
    }

    pub fn identity(&self) -> OrbitMorphism {
        OrbitMorphism { source: self.clone(), target: self.clone(), class: self.projector.clone() }
    }

    /// The commutativity constraint `A ⊗ B -> B ⊗ A`, cut by the projectors.
    /// Cycle classes are even, so no signs appear.
    pub fn commutativity(&self, other: &Self) -> Result<OrbitMorphism> {
        let tau: Corr<Chow> = graph_transpose(&CellularMap::swap(&other.variety, &self.variety))?;
        let (ab, ba) = (self.tensor(other), other.tensor(self));
        let class = cut(&ab.projector, &tau, &ba.projector)?;
        Ok(OrbitMorphism { source: ab, target: ba, class })
    }

    /// The isomorphism `(X, p, m) -> (X, p, m + k)`: the projector itself,
    /// read as a morphism concentrated in orbit degree `-k`.
    pub fn tate_isomorphism(&self, k: i64) -> (OrbitMorphism, OrbitMorphism) {
        let shifted = self.twisted(k);
        let there = OrbitMorphism { source: self.clone(), target: shifted.clone(), class: self.projector.clone() };
        let back = OrbitMorphism { source: shifted, target: self.clone(), class: self.projector.clone() };
        (there, back)
    }

    /// Total dimension of the Hom space; see [`super::Motive::hom_dimension`].
    pub fn hom_dimension(&self, target: &Self) -> usize {
        self.rank() * target.rank()
    }

    pub fn hom(&self, target: &Self) -> Result<OrbitHom> {
        let homogeneous = self.chow_motive().zip(target.chow_motive());
        let Some((a, b)) = homogeneous else {
            let candidates = Corr::<Chow>::basis(&self.variety, &target.variety);
            let basis = cut_basis(candidates, |c| cut(&self.projector, c, &target.projector))?
                .into_iter()
                .map(|class| OrbitMorphism { source: self.clone(), target: target.clone(), class })
                .collect();
            return Ok(OrbitHom { graded: None, basis });
        };
        let mut graded = BTreeMap::new();
        let mut basis = Vec::new();
        for j in self.graded_range(target) {
            let piece = a.hom_basis(&b.twisted(j))?;
            if piece.is_empty() {
                continue;
            }
            graded.insert(j, piece.len());
            basis.extend(piece.into_iter().map(|f| OrbitMorphism {
                source: self.clone(),
                target: target.clone(),
                class: f.class().corr().clone(),
            }));
        }
        Ok(OrbitHom { graded: Some(graded), basis })
    }

    /// Orbit degrees that can carry nonzero morphisms.
    fn graded_range(&self, target: &Self) -> std::ops::RangeInclusive<i64> {
        let (dx, dy) = (i64::from(self.variety.dimension()), i64::from(target.variety.dimension()));
        let base = target.twist - self.twist;
        (-dx - base)..=(dy - base)
    }

    /// Ranks of the degree-0 projector on each `A^k`; `None` for a graded
    /// projector.
    pub fn graded_ranks(&self) -> Option<BTreeMap<u32, usize>> {
        self.chow_motive().map(|_| graded_ranks(&self.projector))
    }
}

impl fmt::Display for OrbitMotive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = if self.projector == Corr::identity(&self.variety) { "id" } else { "p" };
        write!(f, "π({}, {}, {})", self.variety, p, self.twist)
    }
}

/// A Hom space of the orbit category: a basis and, when both projectors are
/// of degree 0, the dimensions of the graded pieces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitHom {
    pub graded: Option<BTreeMap<i64, usize>>,
    pub basis: Vec<OrbitMorphism>,
}

impl OrbitHom {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitMorphism {
    source: OrbitMotive,
    target: OrbitMotive,
    class: GradedCorrespondence,
}

impl OrbitMorphism {
    pub fn new(source: &OrbitMotive, target: &OrbitMotive, class: GradedCorrespondence) -> Result<Self> {
        if class.source() != source.variety() || class.target() != target.variety() {
            return Err(MotiveError::VarietyMismatch(format!(
                "class {} -> {} between motives on {} and {}",
                class.source(),
                class.target(),
                source.variety(),
                target.variety()
            )));
        }
        if cut(&source.projector, &class, &target.projector)? != class {
            return Err(MotiveError::NotInHomSpace("q . f . p differs from f".into()));
        }
        Ok(OrbitMorphism { source: source.clone(), target: target.clone(), class })
    }

    pub(crate) fn new_unchecked(source: &OrbitMotive, target: &OrbitMotive, class: GradedCorrespondence) -> Self {
        OrbitMorphism { source: source.clone(), target: target.clone(), class }
    }

    /// `π(f)`: a Chow morphism, concentrated in orbit degree 0.
    pub fn from_chow(f: &ChowMorphism) -> Self {
        OrbitMorphism {
            source: OrbitMotive::from_chow(f.source()),
            target: OrbitMotive::from_chow(f.target()),
            class: f.class().corr().clone(),
        }
    }

    /// Builds a morphism from its graded pieces: piece `j` must be a
    /// correspondence of degree `(n + j) - m`.
    pub fn from_pieces(source: &OrbitMotive, target: &OrbitMotive, pieces: &BTreeMap<i64, Correspondence>) -> Result<Self> {
        let mut class = Corr::zero(source.variety(), target.variety());
        for (&j, c) in pieces {
            let want = target.twist + j - source.twist;
            if c.degree() != want && !c.is_zero() {
                return Err(MotiveError::NotHomogeneous(format!("orbit piece {j} has degree {} instead of {want}", c.degree())));
            }
            class = class.try_add(c.corr())?;
        }
        Self::new(source, target, class)
    }

    pub fn source(&self) -> &OrbitMotive {
        &self.source
    }

    pub fn target(&self) -> &OrbitMotive {
        &self.target
    }

    pub fn class(&self) -> &GradedCorrespondence {
        &self.class
    }

    pub fn is_zero(&self) -> bool {
        self.class.is_zero()
    }

    /// The orbit grading: the degree-`r` part of the class sits in
    /// `Hom(A, B ⊗ Q(1)^j)` with `j = r - (n - m)`.
    pub fn pieces(&self) -> BTreeMap<i64, Correspondence> {
        let shift = self.target.twist - self.source.twist;
        self.class.degree_parts().into_iter().map(|(r, c)| (r - shift, c)).collect()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.pieces().into_keys().collect()
    }

    /// `g . self`; orbit degrees add.
    pub fn then(&self, g: &Self) -> Result<Self> {
        if self.target != g.source {
            return Err(MotiveError::VarietyMismatch("composing morphisms with different middle objects".into()));
        }
        Ok(OrbitMorphism { source: self.source.clone(), target: g.target.clone(), class: self.class.then(&g.class)? })
    }

    /// The tensor product of the orbit category. On homogeneous pieces of
    /// degrees `r` and `s` it is the Chow tensor routed through the
    /// commutativity constraint, which lands in degree `r + s`.
    pub fn tensor(&self, g: &Self) -> Self {
        OrbitMorphism {
            source: self.source.tensor(&g.source),
            target: self.target.tensor(&g.target),
            class: self.class.tensor(&g.class),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(MotiveError::VarietyMismatch("adding morphisms between different objects".into()));
        }
        Ok(OrbitMorphism { source: self.source.clone(), target: self.target.clone(), class: self.class.try_add(&other.class)? })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        OrbitMorphism { source: self.source.clone(), target: self.target.clone(), class: self.class.scale(c) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    fn p(n: u32) -> CellularVariety {
        CellularVariety::projective(n)
    }

    #[test]
    fn graded_hom_dimensions() {
        let u = OrbitMotive::unit();
        let hom = u.hom(&u).unwrap();
        assert_eq!(hom.graded, Some(BTreeMap::from([(0, 1)])));
        let a = OrbitMotive::of(&p(1));
        let end = a.hom(&a).unwrap();
        assert_eq!(end.graded, Some(BTreeMap::from([(-1, 1), (0, 2), (1, 1)])));
        assert_eq!(end.dimension(), 4);
        assert_eq!(a.hom(&u).unwrap().dimension(), 2);
        let universe = [CellularVariety::point(), p(1), p(2), p(1).power(2)];
        for x in &universe {
            for y in &universe {
                for m in [-1, 0, 2] {
                    let (a, b) = (OrbitMotive::of(x), OrbitMotive::of(y).twisted(m));
                    let hom = a.hom(&b).unwrap();
                    assert_eq!(hom.dimension(), x.rank() * y.rank());
                    assert_eq!(hom.graded.unwrap().values().sum::<usize>(), a.hom_dimension(&b));
                }
            }
        }
    }

    #[test]
    fn pieces_follow_twists() {
        let x = p(1);
        let a = OrbitMotive::of(&x);
        let b = a.twisted(2);
        let f = OrbitMorphism::new(&a, &b, Corr::monomial(&x, &x, (0, 0), &[1], &[1], rat(1))).unwrap();
        // a degree-1 correspondence from twist 0 to twist 2 sits in j = -1
        assert_eq!(f.degrees(), vec![-1]);
        assert_eq!(OrbitMorphism::from_pieces(&a, &b, &f.pieces()).unwrap(), f);
        let wrong = BTreeMap::from([(0, f.pieces()[&-1].clone())]);
        assert!(matches!(OrbitMorphism::from_pieces(&a, &b, &wrong), Err(MotiveError::NotHomogeneous(_))));
    }

    #[test]
    fn tate_collapse() {
        for x in [CellularVariety::point(), p(1), p(1).power(2)] {
            let a = OrbitMotive::of(&x);
            for k in [-2, 1, 3] {
                let (there, back) = a.tate_isomorphism(k);
                assert_eq!(there.degrees(), vec![-k]);
                assert_eq!(there.then(&back).unwrap(), a.identity());
                assert_eq!(back.then(&there).unwrap(), a.twisted(k).identity());
            }
        }
    }

    #[test]
    fn tensor_is_grade_additive() {
        let x = p(1);
        let a = OrbitMotive::of(&x);
        let u = OrbitMotive::unit();
        let f = OrbitMorphism::new(&a, &a, Corr::monomial(&x, &x, (0, 0), &[1], &[1], rat(1))).unwrap();
        let pt = CellularVariety::point();
        let (g, _) = u.tate_isomorphism(-2);
        assert_eq!(f.degrees(), vec![1]);
        assert_eq!(g.degrees(), vec![2]);
        assert_eq!(f.tensor(&g).degrees(), vec![3]);
        let h = OrbitMorphism::from_chow(&ChowMotive::of(&x).identity());
        let chow = ChowMotive::of(&x).identity().tensor(&ChowMotive::of(&pt).identity());
        assert_eq!(h.tensor(&u.identity()), OrbitMorphism::from_chow(&chow));
    }

    #[test]
    fn commutativity_constraint() {
        let (a, b) = (OrbitMotive::of(&p(1)), OrbitMotive::of(&p(2)));
        let ab = a.commutativity(&b).unwrap();
        let ba = b.commutativity(&a).unwrap();
        assert_eq!(ab.then(&ba).unwrap(), a.tensor(&b).identity());
        let f = &a.hom(&a).unwrap().basis[1];
        let g = &b.hom(&b).unwrap().basis[4];
        assert_eq!(f.tensor(g).then(&ab).unwrap(), ab.then(&g.tensor(f)).unwrap());
    }

    fn small() -> impl Strategy<Value = CellularVariety> {
        prop_oneof![Just(CellularVariety::point()), Just(p(1))]
    }

    fn morphism(a: &OrbitMotive, b: &OrbitMotive, seed: &[i64]) -> OrbitMorphism {
        let hom = a.hom(b).unwrap();
        hom.basis
            .iter()
            .zip(seed.iter().cycle())
            .fold(OrbitMorphism::new_unchecked(a, b, Corr::zero(a.variety(), b.variety())), |acc, (f, &c)| {
                acc.try_add(&f.scale(&rat(c))).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn interchange_law(xs in prop::collection::vec(small(), 6), seed in prop::collection::vec(-3i64..=3, 4), twists in prop::collection::vec(-1i64..=1, 6)) {
            let m: Vec<OrbitMotive> = xs.iter().zip(&twists).map(|(x, &t)| OrbitMotive::of(x).twisted(t)).collect();
            let f1 = morphism(&m[0], &m[1], &seed);
            let f2 = morphism(&m[1], &m[2], &seed[1..]);
            let g1 = morphism(&m[3], &m[4], &seed[2..]);
            let g2 = morphism(&m[4], &m[5], &seed[3..]);
            let lhs = f1.tensor(&g1).then(&f2.tensor(&g2)).unwrap();
            let rhs = f1.then(&f2).unwrap().tensor(&g1.then(&g2).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
