//! Pseudo-abelian completions of the categories whose morphisms are all
//! classes on `X x Y`: pairs `(X, p)` with `p` idempotent and
//! `Hom((X, p), (Y, q)) = q . Hom(X, Y) . p`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{RationalMatrix, SparseMatrix};
use crate::error::{MotiveError, Result};
use crate::geometry::{CellularVariety, Corr, Theory};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct Motive<T: Theory> {
    variety: CellularVariety,
    projector: Corr<T>,
}

impl<T: Theory> Motive<T> {
    pub fn new(variety: &CellularVariety, projector: Corr<T>) -> Result<Self> {
        if projector.source() != variety || projector.target() != variety {
            return Err(MotiveError::VarietyMismatch(format!("projector is not an endomorphism of {variety}")));
        }
        if !projector.is_idempotent() {
            return Err(MotiveError::NotIdempotent(format!("projector on {variety}")));
        }
        Ok(Motive { variety: variety.clone(), projector })
    }

    pub(crate) fn new_unchecked(variety: &CellularVariety, projector: Corr<T>) -> Self {
        Motive { variety: variety.clone(), projector }
    }

    /// `(X, id)`.
    pub fn of(x: &CellularVariety) -> Self {
        Motive { variety: x.clone(), projector: Corr::identity(x) }
    }

    pub fn unit() -> Self {
        Self::of(&CellularVariety::point())
    }

    pub fn zero() -> Self {
        let pt = CellularVariety::point();
        Motive { projector: Corr::zero(&pt, &pt), variety: pt }
    }

    pub fn variety(&self) -> &CellularVariety {
        &self.variety
    }

    pub fn projector(&self) -> &Corr<T> {
        &self.projector
    }

    /// A motive is zero exactly when its projector is the zero class.
    pub fn is_zero(&self) -> bool {
        self.projector.is_zero()
    }

    /// Rank of the projector's action: the total dimension of the motive.
    pub fn rank(&self) -> usize {
        self.projector.rank()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Motive { variety: self.variety.product(&other.variety), projector: self.projector.tensor(&other.projector) }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Motive {
            variety: self.variety.disjoint_union(&other.variety),
            projector: self.projector.direct_sum(&other.projector),
        }
    }

    pub fn identity(&self) -> MotiveMorphism<T> {
        MotiveMorphism { source: self.clone(), target: self.clone(), class: self.projector.clone() }
    }

    /// `q . f . p`.
    pub fn cut(&self, target: &Self, f: &Corr<T>) -> Result<Corr<T>> {
        self.projector.then(f)?.then(&target.projector)
    }

    /// `dim q . Hom(X, Y) . p`. Under the action map, Homs are matrices and
    /// the cut is `M -> Q M P`, whose rank is `rank Q * rank P`.
    pub fn hom_dimension(&self, target: &Self) -> usize {
        self.rank() * target.rank()
    }

    /// A basis of `q . Hom(X, Y) . p` drawn from the cuts of monomial classes.
    pub fn hom_basis(&self, target: &Self) -> Result<Vec<MotiveMorphism<T>>> {
        let candidates = Corr::<T>::basis(&self.variety, &target.variety);
        let images = cut_basis(candidates, |c| self.cut(target, c))?;
        Ok(images
            .into_iter()
            .map(|class| MotiveMorphism { source: self.clone(), target: target.clone(), class })
            .collect())
    }

    /// The summand cut out by an idempotent endomorphism.
    pub fn image_of_idempotent(&self, e: &MotiveMorphism<T>) -> Result<Self> {
        if e.source != *self || e.target != *self {
            return Err(MotiveError::VarietyMismatch("idempotent is not an endomorphism of this motive".into()));
        }
        Motive::new(&self.variety, e.class.clone())
    }
}

impl<T: Theory> fmt::Display for Motive<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.projector == Corr::identity(&self.variety) {
            write!(f, "({}, id)", self.variety)
        } else {
            write!(f, "({}, p)", self.variety)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(bound = "")]
pub struct MotiveMorphism<T: Theory> {
    source: Motive<T>,
    target: Motive<T>,
    class: Corr<T>,
}

impl<T: Theory> MotiveMorphism<T> {
    /// Checks that `class` lies in `q . Hom(X, Y) . p`.
    pub fn new(source: &Motive<T>, target: &Motive<T>, class: Corr<T>) -> Result<Self> {
        if class.source() != source.variety() || class.target() != target.variety() {
            return Err(MotiveError::VarietyMismatch(format!(
                "class {} -> {} between motives on {} and {}",
                class.source(),
                class.target(),
                source.variety(),
                target.variety()
            )));
        }
        if source.cut(target, &class)? != class {
            return Err(MotiveError::NotInHomSpace("q . f . p differs from f".into()));
        }
        Ok(MotiveMorphism { source: source.clone(), target: target.clone(), class })
    }

    pub(crate) fn new_unchecked(source: &Motive<T>, target: &Motive<T>, class: Corr<T>) -> Self {
        MotiveMorphism { source: source.clone(), target: target.clone(), class }
    }

    pub fn source(&self) -> &Motive<T> {
        &self.source
    }

    pub fn target(&self) -> &Motive<T> {
        &self.target
    }

    pub fn class(&self) -> &Corr<T> {
        &self.class
    }

    /// `g . self`.
    pub fn then(&self, g: &Self) -> Result<Self> {
        if self.target != g.source {
            return Err(MotiveError::VarietyMismatch("composing morphisms with different middle objects".into()));
        }
        Ok(MotiveMorphism { source: self.source.clone(), target: g.target.clone(), class: self.class.then(&g.class)? })
    }

    pub fn tensor(&self, g: &Self) -> Self {
        MotiveMorphism {
            source: self.source.tensor(&g.source),
            target: self.target.tensor(&g.target),
            class: self.class.tensor(&g.class),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(MotiveError::VarietyMismatch("adding morphisms between different objects".into()));
        }
        Ok(MotiveMorphism { source: self.source.clone(), target: self.target.clone(), class: self.class.try_add(&other.class)? })
    }

    pub fn scale(&self, c: &crate::algebra::Rational) -> Self {
        MotiveMorphism { source: self.source.clone(), target: self.target.clone(), class: self.class.scale(c) }
    }
}

/// Maps each candidate through `f` and keeps a maximal linearly
/// independent subset of the images.
pub(crate) fn cut_basis<T: Theory>(
    candidates: Vec<Corr<T>>,
    f: impl Fn(&Corr<T>) -> Result<Corr<T>>,
) -> Result<Vec<Corr<T>>> {
    let images = candidates.iter().map(f).collect::<Result<Vec<_>>>()?;
    let Some(first) = images.first() else { return Ok(Vec::new()) };
    let dim = first.class().variety().rank();
    let mut m = RationalMatrix::zeros(dim, images.len());
    for (col, img) in images.iter().enumerate() {
        for (row, v) in img.class().coordinates().into_iter().enumerate() {
            m[(row, col)] = v;
        }
    }
    let pivots = m.column_basis();
    Ok(pivots.into_iter().map(|k| images[k].clone()).collect())
}

/// One rank-one piece of an idempotent `p` on `X`: `e = i . r` with
/// `r . i = id` on the point, so the image of `e` is isomorphic to the
/// unit (in the Chow case, to a Tate twist of it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOnePiece<T: Theory> {
    pub idempotent: Corr<T>,
    /// `pt -> X`.
    pub inclusion: Corr<T>,
    /// `X -> pt`.
    pub retraction: Corr<T>,
}

/// Splits an idempotent into pairwise orthogonal rank-one idempotents
/// summing to it. With `P` the action matrix, the pivot columns `W` of `P`
/// span its image and the nonzero rows `Phi` of its reduced echelon form
/// satisfy `P = W Phi`, `Phi W = 1`; the pieces are `w_i phi_i`.
pub fn split_idempotent<T: Theory>(p: &Corr<T>) -> Result<Vec<RankOnePiece<T>>> {
    if !p.is_idempotent() {
        return Err(MotiveError::NotIdempotent("cannot split a non-idempotent class".into()));
    }
    let x = p.source();
    let pt = CellularVariety::point();
    let pm = p.action_matrix().to_dense();
    let (rref, pivots) = pm.rref();
    let n = pm.rows();
    pivots
        .iter()
        .enumerate()
        .map(|(k, &col)| {
            let mut w = SparseMatrix::zeros(n, 1);
            let mut phi = SparseMatrix::zeros(1, n);
            for r in 0..n {
                w.add_to(r, 0, &pm[(r, col)]);
                phi.add_to(0, r, &rref[(k, r)]);
            }
            let inclusion = Corr::from_action_matrix(&pt, x, &w)?;
            let retraction = Corr::from_action_matrix(x, &pt, &phi)?;
            let idempotent = Corr::from_action_matrix(x, x, &w.mul(&phi)?)?;
            Ok(RankOnePiece { idempotent, inclusion, retraction })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::geometry::{Chow, KTheory};

    fn p(n: u32) -> CellularVariety {
        CellularVariety::projective(n)
    }

    #[test]
    fn nc_projective_line_splits_into_two_units() {
        let x = p(1);
        let pieces = split_idempotent(&Corr::<KTheory>::identity(&x)).unwrap();
        assert_eq!(pieces.len(), 2);
        // [O_pt ⊠ O] = x1 and [O(-1) ⊠ O_pt] = (1 + x1)^{-1} x2 = x2 - x1 x2.
        let e1 = Corr::<KTheory>::monomial(&x, &x, (0, 0), &[1], &[0], rat(1));
        let e2 = &Corr::<KTheory>::monomial(&x, &x, (0, 0), &[0], &[1], rat(1))
            - &Corr::<KTheory>::monomial(&x, &x, (0, 0), &[1], &[1], rat(1));
        assert_eq!(pieces[0].idempotent, e1);
        assert_eq!(pieces[1].idempotent, e2);
        let sum = &pieces[0].idempotent + &pieces[1].idempotent;
        assert_eq!(sum, Corr::identity(&x));
        for (i, a) in pieces.iter().enumerate() {
            assert_eq!(a.inclusion.then(&a.retraction).unwrap(), Corr::identity(&CellularVariety::point()));
            assert_eq!(a.retraction.then(&a.inclusion).unwrap(), a.idempotent);
            for (j, b) in pieces.iter().enumerate() {
                let prod = a.idempotent.then(&b.idempotent).unwrap();
                if i == j {
                    assert_eq!(prod, a.idempotent);
                } else {
                    assert!(prod.is_zero());
                }
            }
            let m = Motive::new(&x, a.idempotent.clone()).unwrap();
            assert_eq!(m.hom_basis(&m).unwrap().len(), 1);
        }
    }

    #[test]
    fn chow_projective_line_pieces() {
        let x = p(1);
        let pieces = split_idempotent(&Corr::<Chow>::identity(&x)).unwrap();
        let h_1 = Corr::<Chow>::monomial(&x, &x, (0, 0), &[1], &[0], rat(1));
        let one_h = Corr::<Chow>::monomial(&x, &x, (0, 0), &[0], &[1], rat(1));
        assert_eq!(pieces[0].idempotent, h_1);
        assert_eq!(pieces[1].idempotent, one_h);
    }

    #[test]
    fn hom_bases_have_product_rank() {
        let vs = [CellularVariety::point(), p(1), p(2), p(1).power(2)];
        for x in &vs {
            for y in &vs {
                let (a, b) = (Motive::<KTheory>::of(x), Motive::<KTheory>::of(y));
                assert_eq!(a.hom_basis(&b).unwrap().len(), a.hom_dimension(&b));
                assert_eq!(a.hom_dimension(&b), x.rank() * y.rank());
            }
        }
        let x = p(2);
        let pieces = split_idempotent(&Corr::<KTheory>::identity(&x)).unwrap();
        let e = &pieces[0].idempotent + &pieces[2].idempotent;
        let a = Motive::new(&x, e.clone()).unwrap();
        let b = Motive::<KTheory>::of(&p(1));
        assert_eq!(a.hom_basis(&b).unwrap().len(), 4);
        assert_eq!(a.hom_dimension(&b), 4);
        let complement = Motive::new(&x, &Corr::identity(&x) - &e).unwrap();
        assert_eq!(a.rank() + complement.rank(), 3);
        assert_eq!(a.direct_sum(&complement).hom_dimension(&b), Motive::<KTheory>::of(&x).hom_dimension(&b));
    }

    #[test]
    fn morphisms_must_be_cut() {
        let x = p(1);
        let pieces = split_idempotent(&Corr::<KTheory>::identity(&x)).unwrap();
        let a = Motive::new(&x, pieces[0].idempotent.clone()).unwrap();
        let whole = Motive::<KTheory>::of(&x);
        assert!(matches!(
            MotiveMorphism::new(&a, &whole, Corr::identity(&x)),
            Err(MotiveError::NotInHomSpace(_))
        ));
        assert!(MotiveMorphism::new(&a, &whole, pieces[0].idempotent.clone()).is_ok());
        assert!(matches!(Motive::new(&x, Corr::<KTheory>::identity(&x).scale(&rat(2))), Err(MotiveError::NotIdempotent(_))));
    }
}
