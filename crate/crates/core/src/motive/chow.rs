//! Chow motives `(X, p, m)` over Q.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::generic::cut_basis;
use crate::algebra::{Rational, SparseMatrix};
use crate::error::{MotiveError, Result};
use crate::geometry::{graph_transpose_class, CellularMap, CellularVariety, Chow, Corr, Correspondence};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChowMotive {
    variety: CellularVariety,
    projector: Correspondence,
    twist: i64,
}

impl ChowMotive {
    pub fn new(variety: &CellularVariety, projector: Correspondence, twist: i64) -> Result<Self> {
        if projector.source() != variety || projector.target() != variety {
            return Err(MotiveError::VarietyMismatch(format!("projector is not an endomorphism of {variety}")));
        }
        if projector.degree() != 0 {
            return Err(MotiveError::NotHomogeneous(format!("projector of degree {}", projector.degree())));
        }
        if !projector.corr().is_idempotent() {
            return Err(MotiveError::NotIdempotent(format!("projector on {variety}")));
        }
        Ok(ChowMotive { variety: variety.clone(), projector, twist })
    }

    pub(crate) fn new_unchecked(variety: &CellularVariety, projector: Correspondence, twist: i64) -> Self {
        ChowMotive { variety: variety.clone(), projector, twist }
    }

    /// `M(X) = (X, Δ, 0)`.
    pub fn of(x: &CellularVariety) -> Self {
        Self::new_unchecked(x, identity(x), 0)
    }

    pub fn unit() -> Self {
        Self::of(&CellularVariety::point())
    }

    /// `Q(m) = (pt, id, m)`; `Q(1)` is the Tate motive.
    pub fn tate(m: i64) -> Self {
        let pt = CellularVariety::point();
        Self::new_unchecked(&pt, identity(&pt), m)
    }

    pub fn zero() -> Self {
        let pt = CellularVariety::point();
        Self::new_unchecked(&pt, Correspondence::zero(&pt, &pt, 0), 0)
    }

    pub fn variety(&self) -> &CellularVariety {
        &self.variety
    }

    pub fn projector(&self) -> &Correspondence {
        &self.projector
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn is_zero(&self) -> bool {
        self.projector.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.projector.corr().rank()
    }

    /// `(X, p, m) ⊗ Q(k) = (X, p, m + k)`.
    pub fn twisted(&self, k: i64) -> Self {
        Self { twist: self.twist + k, ..self.clone() }
    }

    /// Rank of `p_*` on each `A^k(X)`.
    pub fn graded_ranks(&self) -> BTreeMap<u32, usize> {
        graded_ranks(self.projector.corr())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let corr = self.projector.corr().tensor(other.projector.corr());
        Self::new_unchecked(
            &self.variety.product(&other.variety),
            Correspondence::new(corr, 0).expect("tensor of degree-0 projectors"),
            self.twist + other.twist,
        )
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.twist != other.twist {
            return Err(MotiveError::UnsupportedDirectSum(self.twist, other.twist));
        }
        let corr = self.projector.corr().direct_sum(other.projector.corr());
        Ok(Self::new_unchecked(
            &self.variety.disjoint_union(&other.variety),
            Correspondence::new(corr, 0).expect("sum of degree-0 projectors"),
            self.twist,
        ))
    }

    pub fn identity(&self) -> ChowMorphism {
        ChowMorphism { source: self.clone(), target: self.clone(), class: self.projector.clone() }
    }

    /// Degree of the correspondences in `Hom(self, target)`.
    pub fn hom_degree(&self, target: &Self) -> i64 {
        target.twist - self.twist
    }

    /// `sum_k rank p_k * rank q_{k+n-m}`, since a degree-`r` correspondence
    /// is a family of maps `A^k(X) -> A^{k+r}(Y)`.
    pub fn hom_dimension(&self, target: &Self) -> usize {
        let r = self.hom_degree(target);
        let qs = target.graded_ranks();
        self.graded_ranks()
            .into_iter()
            .filter_map(|(k, a)| {
                let k2 = i64::from(k) + r;
                u32::try_from(k2).ok().and_then(|k2| qs.get(&k2)).map(|b| a * b)
            })
            .sum()
    }

    pub fn hom_basis(&self, target: &Self) -> Result<Vec<ChowMorphism>> {
        let r = self.hom_degree(target);
        let candidates = Correspondence::basis(&self.variety, &target.variety, r).into_iter().map(Correspondence::into_corr).collect();
        let images = cut_basis(candidates, |c| cut(self.projector.corr(), c, target.projector.corr()))?;
        Ok(images
            .into_iter()
            .map(|c| ChowMorphism {
                source: self.clone(),
                target: target.clone(),
                class: Correspondence::new(c, r).expect("cut of a homogeneous class by degree-0 projectors"),
            })
            .collect())
    }

    pub fn image_of_idempotent(&self, e: &ChowMorphism) -> Result<Self> {
        if e.source != *self || e.target != *self {
            return Err(MotiveError::VarietyMismatch("idempotent is not an endomorphism of this motive".into()));
        }
        Self::new(&self.variety, e.class.clone(), self.twist)
    }

    /// `M(f) = [Γ_f^t] : M(Y) -> M(X)` for `f : X -> Y`.
    pub fn of_map(f: &CellularMap) -> Result<ChowMorphism> {
        let class = graph_transpose_class(f)?;
        let (x, y) = (Self::of(f.source()), Self::of(f.target()));
        if class.degree() != 0 && !class.is_zero() {
            return Err(MotiveError::UnsupportedMorphism(format!("graph of {} -> {} has degree {}", x.variety, y.variety, class.degree())));
        }
        let class = Correspondence::new(class.into_corr(), 0)?;
        Ok(ChowMorphism { source: y, target: x, class })
    }
}

impl fmt::Display for ChowMotive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = if self.projector.corr() == &Corr::identity(&self.variety) { "id" } else { "p" };
        write!(f, "({}, {}, {})", self.variety, p, self.twist)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChowMorphism {
    source: ChowMotive,
    target: ChowMotive,
    class: Correspondence,
}

impl ChowMorphism {
    pub fn new(source: &ChowMotive, target: &ChowMotive, class: Correspondence) -> Result<Self> {
        if class.source() != source.variety() || class.target() != target.variety() {
            return Err(MotiveError::VarietyMismatch(format!(
                "correspondence {} -> {} between motives on {} and {}",
                class.source(),
                class.target(),
                source.variety(),
                target.variety()
            )));
        }
        let r = source.hom_degree(target);
        if class.degree() != r && !class.is_zero() {
            return Err(MotiveError::NotHomogeneous(format!("morphism of degree {} where {r} is required", class.degree())));
        }
        let class = Correspondence::new(class.into_corr(), r)?;
        if cut(source.projector.corr(), class.corr(), target.projector.corr())? != *class.corr() {
            return Err(MotiveError::NotInHomSpace("q . f . p differs from f".into()));
        }
        Ok(ChowMorphism { source: source.clone(), target: target.clone(), class })
    }

    pub fn source(&self) -> &ChowMotive {
        &self.source
    }

    pub fn target(&self) -> &ChowMotive {
        &self.target
    }

    pub fn class(&self) -> &Correspondence {
        &self.class
    }

    pub fn is_zero(&self) -> bool {
        self.class.is_zero()
    }

    /// `g . self`.
    pub fn then(&self, g: &Self) -> Result<Self> {
        if self.target != g.source {
            return Err(MotiveError::VarietyMismatch("composing morphisms with different middle objects".into()));
        }
        Ok(ChowMorphism { source: self.source.clone(), target: g.target.clone(), class: self.class.then(&g.class)? })
    }

    pub fn tensor(&self, g: &Self) -> Self {
        let corr = self.class.corr().tensor(g.class.corr());
        let degree = self.class.degree() + g.class.degree();
        ChowMorphism {
            source: self.source.tensor(&g.source),
            target: self.target.tensor(&g.target),
            class: Correspondence::new(corr, degree).expect("degrees add under tensor"),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(MotiveError::VarietyMismatch("adding morphisms between different objects".into()));
        }
        Ok(ChowMorphism { source: self.source.clone(), target: self.target.clone(), class: self.class.try_add(&other.class)? })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ChowMorphism { source: self.source.clone(), target: self.target.clone(), class: self.class.scale(c) }
    }
}

fn identity(x: &CellularVariety) -> Correspondence {
    Correspondence::new(Corr::identity(x), 0).expect("the diagonal has degree 0")
}

pub(crate) fn cut(p: &Corr<Chow>, f: &Corr<Chow>, q: &Corr<Chow>) -> Result<Corr<Chow>> {
    p.then(f)?.then(q)
}

/// Ranks of the diagonal blocks of `p_*` in the grading of the monomial
/// basis by total degree.
pub(crate) fn graded_ranks(p: &Corr<Chow>) -> BTreeMap<u32, usize> {
    graded_ranks_of_action(p.source(), &p.action_matrix())
}

/// Same, for an action matrix on the monomial basis of `x` that preserves
/// the grading.
pub fn graded_ranks_of_action(x: &CellularVariety, m: &SparseMatrix) -> BTreeMap<u32, usize> {
    let mut degree_of = Vec::new();
    let mut local = Vec::new();
    let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
    for (_, e) in x.basis() {
        let k: u32 = e.iter().sum();
        let slot = sizes.entry(k).or_insert(0);
        degree_of.push(k);
        local.push(*slot);
        *slot += 1;
    }
    let mut blocks: BTreeMap<u32, SparseMatrix> =
        sizes.iter().map(|(&k, &n)| (k, SparseMatrix::zeros(n, n))).collect();
    for i in 0..m.rows() {
        for (&j, v) in m.row(i) {
            if degree_of[i] == degree_of[j] {
                blocks.get_mut(&degree_of[i]).expect("degree present").add_to(local[i], local[j], v);
            }
        }
    }
    blocks.into_iter().map(|(k, b)| (k, b.rank())).filter(|&(_, r)| r > 0).collect()
}
