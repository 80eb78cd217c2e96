//! Chow-theoretic operations: graded correspondences, the diagonal, graphs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::class::{Class, Corr};
use super::maps::CellularMap;
use super::theory::{Chow, Theory};
use super::variety::CellularVariety;
use crate::error::{MotiveError, Result};

pub type ChowClass = Class<Chow>;

/// A correspondence with no homogeneity requirement; an element of
/// `⊕_r Corr^r(X, Y)`.
pub type GradedCorrespondence = Corr<Chow>;

impl Corr<Chow> {
    /// Splits the class into homogeneous correspondences, keyed by degree.
    /// A term `x^a ⊗ y^b` on `X_i x Y_j` has degree `|a| + |b| - dim X_i`.
    pub fn degree_parts(&self) -> BTreeMap<i64, Correspondence> {
        let mut parts: BTreeMap<i64, Corr<Chow>> = BTreeMap::new();
        for t in self.terms() {
            let r = term_degree(self.source(), t.source_component, t.source_exps, t.target_exps);
            let entry = parts.entry(r).or_insert_with(|| Corr::zero(self.source(), self.target()));
            *entry = &*entry + &Corr::monomial(
                self.source(),
                self.target(),
                (t.source_component, t.target_component),
                t.source_exps,
                t.target_exps,
                t.coefficient.clone(),
            );
        }
        parts.into_iter().map(|(r, corr)| (r, Correspondence { degree: r, corr })).collect()
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut ds: Vec<i64> = self
            .terms()
            .map(|t| term_degree(self.source(), t.source_component, t.source_exps, t.target_exps))
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

fn term_degree(source: &CellularVariety, i: usize, a: &[u32], b: &[u32]) -> i64 {
    let total: u32 = a.iter().chain(b).sum();
    i64::from(total) - i64::from(source.component_dimension(i))
}

/// A correspondence of a fixed degree `r`: on each `X_i x Y` it is
/// homogeneous of codimension `dim X_i + r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCorrespondence", into = "RawCorrespondence")]
pub struct Correspondence {
    degree: i64,
    corr: Corr<Chow>,
}

#[derive(Serialize, Deserialize)]
struct RawCorrespondence {
    degree: i64,
    #[serde(flatten)]
    corr: Corr<Chow>,
}

impl TryFrom<RawCorrespondence> for Correspondence {
    type Error = MotiveError;
    fn try_from(raw: RawCorrespondence) -> Result<Self> {
        Correspondence::new(raw.corr, raw.degree)
    }
}

impl From<Correspondence> for RawCorrespondence {
    fn from(c: Correspondence) -> Self {
        RawCorrespondence { degree: c.degree, corr: c.corr }
    }
}

impl Correspondence {
    pub fn new(corr: Corr<Chow>, degree: i64) -> Result<Self> {
        if let Some(bad) = corr.degrees().into_iter().find(|&r| r != degree) {
            return Err(MotiveError::NotHomogeneous(format!("a term of degree {bad} in a correspondence of degree {degree}")));
        }
        Ok(Correspondence { degree, corr })
    }

    pub fn zero(source: &CellularVariety, target: &CellularVariety, degree: i64) -> Self {
        Correspondence { degree, corr: Corr::zero(source, target) }
    }

    /// The degree-`r` part of a graded correspondence.
    pub fn homogeneous_part(graded: &GradedCorrespondence, degree: i64) -> Self {
        graded
            .degree_parts()
            .remove(&degree)
            .unwrap_or_else(|| Correspondence::zero(graded.source(), graded.target(), degree))
    }

    /// Monomial basis of `Corr^r(X, Y)`.
    pub fn basis(source: &CellularVariety, target: &CellularVariety, degree: i64) -> Vec<Self> {
        Corr::<Chow>::basis(source, target)
            .into_iter()
            .filter(|c| c.degrees() == [degree])
            .map(|corr| Correspondence { degree, corr })
            .collect()
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn corr(&self) -> &Corr<Chow> {
        &self.corr
    }

    pub fn into_corr(self) -> Corr<Chow> {
        self.corr
    }

    pub fn source(&self) -> &CellularVariety {
        self.corr.source()
    }

    pub fn target(&self) -> &CellularVariety {
        self.corr.target()
    }

    pub fn is_zero(&self) -> bool {
        self.corr.is_zero()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(MotiveError::NotHomogeneous(format!("adding degrees {} and {}", self.degree, other.degree)));
        }
        Ok(Correspondence { degree: self.degree, corr: self.corr.try_add(&other.corr)? })
    }

    pub fn scale(&self, c: &crate::algebra::Rational) -> Self {
        Correspondence { degree: self.degree, corr: self.corr.scale(c) }
    }

    /// `g . self`.
    pub fn then(&self, g: &Correspondence) -> Result<Self> {
        Ok(Correspondence { degree: self.degree + g.degree, corr: self.corr.then(&g.corr)? })
    }
}

pub fn chow_pullback(f: &CellularMap, c: &ChowClass) -> Result<ChowClass> {
    c.pullback(f)
}

pub fn chow_pushforward(f: &CellularMap, c: &ChowClass) -> Result<ChowClass> {
    c.pushforward(f)
}

/// `g . f` for `f: X -> Y` of degree `r` and `g: Y -> Z` of degree `s`.
pub fn compose_correspondences(f: &Correspondence, g: &Correspondence) -> Result<Correspondence> {
    f.then(g)
}

/// The class of the diagonal, `sum over monomials a of x^a ⊗ y^{top - a}`
/// on each component.
pub fn diagonal_class(x: &CellularVariety) -> Correspondence {
    Correspondence { degree: 0, corr: Corr::identity(x) }
}

/// Transpose of the graph of `f: X -> Y`, as a class in `Hom(Y, X)`. The
/// graph is `(f x id_Y)^*` of the diagonal of `Y`.
pub fn graph_transpose<T: Theory>(f: &CellularMap) -> Result<Corr<T>> {
    let y = f.target();
    let fy = CellularMap::product(f, &CellularMap::identity(y));
    let graph = Corr::identity(y).class().pullback(&fy)?;
    Ok(Corr::new(f.source(), y, graph)?.transpose())
}

pub fn graph_transpose_class(f: &CellularMap) -> Result<Correspondence> {
    Correspondence::new(graph_transpose::<Chow>(f)?, 0)
}

/// The transpose, with degree `r + dim X - dim Y` (read off from the
/// terms when the varieties are not equidimensional).
pub fn transpose(f: &Correspondence) -> Result<Correspondence> {
    let t = f.corr.transpose();
    let ds = t.degrees();
    let degree = match ds.as_slice() {
        [] => f.degree + i64::from(f.source().dimension()) - i64::from(f.target().dimension()),
        [d] => *d,
        _ => return Err(MotiveError::NotHomogeneous("transpose mixes degrees across components".into())),
    };
    Correspondence::new(t, degree)
}
