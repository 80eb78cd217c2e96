//! Classes on cellular varieties and correspondences between them, generic
//! over the cohomology theory.

use std::collections::HashMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::maps::{CellularMap, FactorImage};
use super::theory::{dual_row, monomial_index, partners, Theory};
use super::variety::CellularVariety;
use crate::algebra::{Exponents, QuotientRingElement, Rational, RationalMatrix, SparseMatrix};
use crate::error::{MotiveError, Result};

/// An element of `A*(X)_Q` or `K_0(X)_Q`: one ring element per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class<T: Theory> {
    variety: CellularVariety,
    parts: Vec<QuotientRingElement>,
    theory: PhantomData<T>,
}

impl<T: Theory> Class<T> {
    pub fn zero(variety: &CellularVariety) -> Self {
        let parts = (0..variety.num_components()).map(|i| QuotientRingElement::zero(variety.ring(i))).collect();
        Class { variety: variety.clone(), parts, theory: PhantomData }
    }

    pub fn one(variety: &CellularVariety) -> Self {
        let parts = (0..variety.num_components()).map(|i| QuotientRingElement::one(variety.ring(i))).collect();
        Class { variety: variety.clone(), parts, theory: PhantomData }
    }

    pub fn from_parts(variety: &CellularVariety, parts: Vec<QuotientRingElement>) -> Result<Self> {
        if parts.len() != variety.num_components()
            || parts.iter().enumerate().any(|(i, p)| *p.ring() != variety.ring(i))
        {
            return Err(MotiveError::IncompatibleRings(format!("component rings do not match {variety}")));
        }
        Ok(Class { variety: variety.clone(), parts, theory: PhantomData })
    }

    pub fn monomial(variety: &CellularVariety, component: usize, exps: Exponents, c: Rational) -> Self {
        let mut out = Self::zero(variety);
        out.parts[component].add_term(exps, c);
        out
    }

    /// The generator of factor `factor` on component `component`.
    pub fn generator(variety: &CellularVariety, component: usize, factor: usize) -> Self {
        let mut out = Self::zero(variety);
        out.parts[component] = QuotientRingElement::variable(variety.ring(component), factor);
        out
    }

    pub fn variety(&self) -> &CellularVariety {
        &self.variety
    }

    pub fn parts(&self) -> &[QuotientRingElement] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &QuotientRingElement {
        &self.parts[i]
    }

    pub fn into_parts(self) -> Vec<QuotientRingElement> {
        self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(QuotientRingElement::is_zero)
    }

    pub fn num_terms(&self) -> usize {
        self.parts.iter().map(QuotientRingElement::num_terms).sum()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.variety != other.variety {
            return Err(MotiveError::VarietyMismatch(format!("{} vs {}", self.variety, other.variety)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a + b).collect();
        Ok(Class { variety: self.variety.clone(), parts, theory: PhantomData })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a * b).collect();
        Ok(Class { variety: self.variety.clone(), parts, theory: PhantomData })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Class { variety: self.variety.clone(), parts: self.parts.iter().map(|p| p.scale(c)).collect(), theory: PhantomData }
    }

    /// Pushforward to the point, summed over components.
    pub fn integrate(&self) -> Rational {
        self.parts
            .iter()
            .flat_map(|p| p.terms().map(move |(e, c)| c * super::theory::monomial_integral::<T>(p.ring(), e)))
            .sum()
    }

    /// Coordinates in the monomial basis of [`CellularVariety::basis`].
    pub fn coordinates(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.variety.rank()];
        let offsets = self.variety.basis_offsets();
        for (i, p) in self.parts.iter().enumerate() {
            for (e, c) in p.terms() {
                out[offsets[i] + monomial_index(p.ring(), e)] = c.clone();
            }
        }
        out
    }

    pub fn from_coordinates(variety: &CellularVariety, coords: &[Rational]) -> Result<Self> {
        let basis = variety.basis();
        if coords.len() != basis.len() {
            return Err(MotiveError::SizeMismatch(format!("{} coordinates for rank {}", coords.len(), basis.len())));
        }
        let mut out = Self::zero(variety);
        for ((i, e), c) in basis.into_iter().zip(coords) {
            out.parts[i].add_term(e, c.clone());
        }
        Ok(out)
    }

    /// `f^*` for `f: X -> Y`, applied to a class on `Y`.
    pub fn pullback(&self, f: &CellularMap) -> Result<Self> {
        if *f.target() != self.variety {
            return Err(MotiveError::VarietyMismatch(format!("pullback along a map to {} of a class on {}", f.target(), self.variety)));
        }
        let parts = f
            .components()
            .iter()
            .enumerate()
            .map(|(s, cm)| f.pull_component(s, &self.parts[cm.target]))
            .collect::<Result<Vec<_>>>()?;
        Class::from_parts(f.source(), parts)
    }

    /// `f_*` for `f: X -> Y`, applied to a class on `X`. Factors of `X`
    /// that are not copied are integrated out; constant factors of `Y`
    /// receive the point class.
    pub fn pushforward(&self, f: &CellularMap) -> Result<Self> {
        if *f.source() != self.variety {
            return Err(MotiveError::VarietyMismatch(format!("pushforward along a map from {} of a class on {}", f.source(), self.variety)));
        }
        if !f.supports_pushforward() {
            return Err(MotiveError::UnsupportedMorphism("pushforward along a map that repeats a factor".into()));
        }
        let target = f.target();
        let mut out = Self::zero(target);
        for (s, cm) in f.components().iter().enumerate() {
            let sdims = self.variety.component(s);
            let tdims = target.component(cm.target);
            let kept: Vec<bool> = (0..sdims.len())
                .map(|i| cm.factors.contains(&FactorImage::Coord(i)))
                .collect();
            for (e, c) in self.parts[s].terms() {
                let mut w = c.clone();
                for (i, &ei) in e.iter().enumerate() {
                    if !kept[i] {
                        w *= T::factor_integral(sdims[i], ei);
                    }
                }
                if w.is_zero() {
                    continue;
                }
                let ne: Exponents = cm
                    .factors
                    .iter()
                    .zip(tdims)
                    .map(|(img, &n)| match *img {
                        FactorImage::Coord(i) => e[i],
                        FactorImage::Point => n,
                    })
                    .collect();
                out.parts[cm.target].add_term(ne, w);
            }
        }
        Ok(out)
    }

    /// `a ⊠ b` on `X x Y`.
    pub fn external_product(&self, other: &Self) -> Self {
        let variety = self.variety.product(&other.variety);
        let parts = self.parts.iter().flat_map(|a| other.parts.iter().map(move |b| a.external_product(b))).collect();
        Class { variety, parts, theory: PhantomData }
    }
}

impl<T: Theory> Add for &Class<T> {
    type Output = Class<T>;
    fn add(self, rhs: Self) -> Class<T> {
        self.try_add(rhs).expect("adding classes on different varieties")
    }
}

impl<T: Theory> Sub for &Class<T> {
    type Output = Class<T>;
    fn sub(self, rhs: Self) -> Class<T> {
        self + &(-rhs)
    }
}

impl<T: Theory> Neg for &Class<T> {
    type Output = Class<T>;
    fn neg(self) -> Class<T> {
        Class { variety: self.variety.clone(), parts: self.parts.iter().map(|p| -p).collect(), theory: PhantomData }
    }
}

impl<T: Theory> fmt::Display for Class<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.len() == 1 {
            return write!(f, "{}", self.parts[0]);
        }
        let shown: Vec<String> = self.parts.iter().map(|p| format!("[{p}]")).collect();
        write!(f, "{}", shown.join(" ⊔ "))
    }
}

impl<T: Theory> Serialize for Class<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Class", 3)?;
        st.serialize_field("theory", T::NAME)?;
        st.serialize_field("variety", &self.variety)?;
        st.serialize_field("components", &self.parts)?;
        st.end()
    }
}

/// One term of a correspondence: component pair, source and target
/// exponents, coefficient.
pub struct CorrTerm<'a> {
    pub source_component: usize,
    pub target_component: usize,
    pub source_exps: &'a [u32],
    pub target_exps: &'a [u32],
    pub coefficient: &'a Rational,
}

/// A class on `X x Y` read as a morphism `X -> Y`. The component of
/// `X_i x Y_j` is stored with the variables of `X_i` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corr<T: Theory> {
    source: CellularVariety,
    target: CellularVariety,
    class: Class<T>,
}

impl<T: Theory> Corr<T> {
    pub fn new(source: &CellularVariety, target: &CellularVariety, class: Class<T>) -> Result<Self> {
        if *class.variety() != source.product(target) {
            return Err(MotiveError::VarietyMismatch(format!(
                "class on {} is not a correspondence {} -> {}",
                class.variety(),
                source,
                target
            )));
        }
        Ok(Corr { source: source.clone(), target: target.clone(), class: Class { variety: source.product(target), ..class } })
    }

    pub fn zero(source: &CellularVariety, target: &CellularVariety) -> Self {
        Corr { source: source.clone(), target: target.clone(), class: Class::zero(&source.product(target)) }
    }

    /// The diagonal: `sum_{a,b} (G^{-1})_{a,b} x^a ⊗ y^b`, with `G` the
    /// integration pairing, which makes it a two-sided unit for composition.
    pub fn identity(x: &CellularVariety) -> Self {
        let mut out = Self::zero(x, x);
        let n = x.num_components();
        for i in 0..n {
            let ring = x.ring(i);
            let part = &mut out.class.parts[i * n + i];
            for a in ring.monomials() {
                for (b, w) in dual_row::<T>(&ring, &a) {
                    let mut e = a.clone();
                    e.extend_from_slice(&b);
                    part.add_term(e, w);
                }
            }
        }
        out
    }

    /// `c x^a ⊗ y^b` on `X_i x Y_j`.
    pub fn monomial(
        source: &CellularVariety,
        target: &CellularVariety,
        (i, j): (usize, usize),
        a: &[u32],
        b: &[u32],
        c: Rational,
    ) -> Self {
        let mut out = Self::zero(source, target);
        let mut e = a.to_vec();
        e.extend_from_slice(b);
        out.class.parts[i * target.num_components() + j].add_term(e, c);
        out
    }

    /// The monomial basis of `Hom(X, Y)`, in the order of the basis of
    /// `X x Y`.
    pub fn basis(source: &CellularVariety, target: &CellularVariety) -> Vec<Self> {
        let xy = source.product(target);
        xy.basis()
            .into_iter()
            .map(|(c, e)| Corr {
                source: source.clone(),
                target: target.clone(),
                class: Class::monomial(&xy, c, e, Rational::from_integer(1.into())),
            })
            .collect()
    }

    pub fn source(&self) -> &CellularVariety {
        &self.source
    }

    pub fn target(&self) -> &CellularVariety {
        &self.target
    }

    pub fn class(&self) -> &Class<T> {
        &self.class
    }

    pub fn into_class(self) -> Class<T> {
        self.class
    }

    pub fn component(&self, i: usize, j: usize) -> &QuotientRingElement {
        &self.class.parts[i * self.target.num_components() + j]
    }

    pub fn is_zero(&self) -> bool {
        self.class.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.class.num_terms()
    }

    pub fn terms(&self) -> impl Iterator<Item = CorrTerm<'_>> {
        let nt = self.target.num_components();
        self.class.parts.iter().enumerate().flat_map(move |(k, part)| {
            let (i, j) = (k / nt, k % nt);
            let split = self.source.component(i).len();
            part.terms().map(move |(e, c)| CorrTerm {
                source_component: i,
                target_component: j,
                source_exps: &e[..split],
                target_exps: &e[split..],
                coefficient: c,
            })
        })
    }

    fn check_parallel(&self, other: &Self) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(MotiveError::VarietyMismatch(format!(
                "{} -> {} vs {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_parallel(other)?;
        Ok(Corr { source: self.source.clone(), target: self.target.clone(), class: self.class.try_add(&other.class)? })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Corr { source: self.source.clone(), target: self.target.clone(), class: self.class.scale(c) }
    }

    /// `g . self`, computed as `(pr_XZ)_*(pr_XY^* self · pr_YZ^* g)` with
    /// the pullbacks and the pushforward fused: each pair of terms
    /// `x^a y^b` and `y^b' z^c` contributes the integral of `y^{b+b'}`.
    pub fn then(&self, g: &Corr<T>) -> Result<Corr<T>> {
        if self.target != g.source {
            return Err(MotiveError::VarietyMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, g.source, g.target
            )));
        }
        let (nx, ny, nz) = (self.source.num_components(), self.target.num_components(), g.target.num_components());
        // For each Y component, g's terms grouped by their Y exponents.
        type Targets<'a> = Vec<(usize, &'a [u32], &'a Rational)>;
        let mut index: Vec<HashMap<&[u32], Targets>> = vec![HashMap::new(); ny];
        for t in g.terms() {
            index[t.source_component].entry(t.source_exps).or_default().push((t.target_component, t.target_exps, t.coefficient));
        }
        let mut out = Corr::zero(&self.source, &g.target);
        let y_rings: Vec<_> = (0..ny).map(|j| self.target.ring(j)).collect();
        for t in self.terms() {
            let j = t.target_component;
            if index[j].is_empty() {
                continue;
            }
            for (bp, w) in partners::<T>(&y_rings[j], t.target_exps) {
                let Some(list) = index[j].get(bp.as_slice()) else { continue };
                let cw = t.coefficient * &w;
                for &(k, c, cg) in list {
                    let mut e = t.source_exps.to_vec();
                    e.extend_from_slice(c);
                    out.class.parts[t.source_component * nz + k].add_term(e, &cw * cg);
                }
            }
        }
        debug_assert_eq!(out.class.parts.len(), nx * nz);
        Ok(out)
    }

    /// `self . f`.
    pub fn after(&self, f: &Corr<T>) -> Result<Corr<T>> {
        f.then(self)
    }

    /// The same class read as a correspondence `Y -> X`.
    pub fn transpose(&self) -> Corr<T> {
        let (nx, ny) = (self.source.num_components(), self.target.num_components());
        let yx = self.target.product(&self.source);
        let mut parts = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let (kx, ky) = (self.source.component(i).len(), self.target.component(j).len());
                let order: Vec<usize> = (kx..kx + ky).chain(0..kx).collect();
                parts.push(self.class.parts[i * ny + j].reorder(&order));
            }
        }
        Corr {
            source: self.target.clone(),
            target: self.source.clone(),
            class: Class { variety: yx, parts, theory: PhantomData },
        }
    }

    /// `self ⊗ g : X x Z -> Y x W`, the external product with the factors
    /// regrouped as `(X, Z | Y, W)`.
    pub fn tensor(&self, g: &Corr<T>) -> Corr<T> {
        let source = self.source.product(&g.source);
        let target = self.target.product(&g.target);
        let mut out = Corr::zero(&source, &target);
        let (nz, nw) = (g.source.num_components(), g.target.num_components());
        let nt = target.num_components();
        let g_terms: Vec<CorrTerm<'_>> = g.terms().collect();
        for t in self.terms() {
            for u in &g_terms {
                let s = t.source_component * nz + u.source_component;
                let r = t.target_component * nw + u.target_component;
                let mut e = Vec::with_capacity(t.source_exps.len() + u.source_exps.len() + t.target_exps.len() + u.target_exps.len());
                e.extend_from_slice(t.source_exps);
                e.extend_from_slice(u.source_exps);
                e.extend_from_slice(t.target_exps);
                e.extend_from_slice(u.target_exps);
                out.class.parts[s * nt + r].add_term(e, t.coefficient * u.coefficient);
            }
        }
        out
    }

    /// Block sum `X ⊔ Z -> Y ⊔ W`.
    pub fn direct_sum(&self, g: &Corr<T>) -> Corr<T> {
        let source = self.source.disjoint_union(&g.source);
        let target = self.target.disjoint_union(&g.target);
        let mut out = Corr::zero(&source, &target);
        let (nx, ny, nt) = (self.source.num_components(), self.target.num_components(), target.num_components());
        for (k, part) in self.class.parts.iter().enumerate() {
            let (i, j) = (k / ny, k % ny);
            out.class.parts[i * nt + j] = part.clone();
        }
        let nw = g.target.num_components();
        for (k, part) in g.class.parts.iter().enumerate() {
            let (i, j) = (k / nw, k % nw);
            out.class.parts[(nx + i) * nt + ny + j] = part.clone();
        }
        out
    }

    /// `self_*(a) = (pr_Y)_*(self · pr_X^* a)`.
    pub fn apply(&self, a: &Class<T>) -> Result<Class<T>> {
        if *a.variety() != self.source {
            return Err(MotiveError::VarietyMismatch(format!("class on {} applied to a correspondence from {}", a.variety(), self.source)));
        }
        let mut out = Class::zero(&self.target);
        let x_rings: Vec<_> = (0..self.source.num_components()).map(|i| self.source.ring(i)).collect();
        for t in self.terms() {
            for (e, ca) in a.part(t.source_component).terms() {
                let sum: Exponents = t.source_exps.iter().zip(e).map(|(p, q)| p + q).collect();
                let w = super::theory::monomial_integral::<T>(&x_rings[t.source_component], &sum);
                if w.is_zero() {
                    continue;
                }
                out.parts[t.target_component].add_term(t.target_exps.to_vec(), t.coefficient * ca * w);
            }
        }
        Ok(out)
    }

    /// Matrix of `self_*` from the basis of `X` to the basis of `Y`.
    pub fn action_matrix(&self) -> SparseMatrix {
        let x_off = self.source.basis_offsets();
        let y_off = self.target.basis_offsets();
        let x_rings: Vec<_> = (0..self.source.num_components()).map(|i| self.source.ring(i)).collect();
        let y_rings: Vec<_> = (0..self.target.num_components()).map(|j| self.target.ring(j)).collect();
        let mut m = SparseMatrix::zeros(self.target.rank(), self.source.rank());
        for t in self.terms() {
            let (i, j) = (t.source_component, t.target_component);
            let row = y_off[j] + monomial_index(&y_rings[j], t.target_exps);
            for (e, w) in partners::<T>(&x_rings[i], t.source_exps) {
                let col = x_off[i] + monomial_index(&x_rings[i], &e);
                m.add_to(row, col, &(t.coefficient * w));
            }
        }
        m
    }

    /// The unique correspondence whose action has matrix `m`
    /// (`rank Y x rank X`): its coefficient matrix is `G_X^{-1} m^T`.
    pub fn from_action_matrix(source: &CellularVariety, target: &CellularVariety, m: &SparseMatrix) -> Result<Self> {
        if m.rows() != target.rank() || m.cols() != source.rank() {
            return Err(MotiveError::SizeMismatch(format!(
                "{}x{} action matrix for {} -> {}",
                m.rows(),
                m.cols(),
                source,
                target
            )));
        }
        let x_basis = source.basis();
        let y_basis = target.basis();
        let x_off = source.basis_offsets();
        let mut out = Corr::zero(source, target);
        let nt = target.num_components();
        // Transposed view: for each source basis index e, the rows b with m[b][e] != 0.
        let mut columns: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); source.rank()];
        for b in 0..m.rows() {
            for (&e, v) in m.row(b) {
                columns[e].push((b, v));
            }
        }
        for (i, a) in &x_basis {
            let ring = source.ring(*i);
            for (e, w) in dual_row::<T>(&ring, a) {
                let col = x_off[*i] + monomial_index(&ring, &e);
                for &(b, v) in &columns[col] {
                    let (j, be) = &y_basis[b];
                    let mut exps = a.clone();
                    exps.extend_from_slice(be);
                    out.class.parts[i * nt + j].add_term(exps, &w * v);
                }
            }
        }
        Ok(out)
    }

    pub fn from_dense_action(source: &CellularVariety, target: &CellularVariety, m: &RationalMatrix) -> Result<Self> {
        Self::from_action_matrix(source, target, &SparseMatrix::from_dense(m))
    }

    /// Exact test of `self . self = self`, via the action matrix.
    pub fn is_idempotent(&self) -> bool {
        self.source == self.target && self.action_matrix().is_idempotent()
    }

    /// Trace of the action, which is the rank when `self` is idempotent.
    pub fn trace(&self) -> Rational {
        self.action_matrix().trace()
    }

    /// Rank of the action; for an idempotent, the dimension of its image.
    pub fn rank(&self) -> usize {
        self.action_matrix().rank()
    }
}

impl<T: Theory> Add for &Corr<T> {
    type Output = Corr<T>;
    fn add(self, rhs: Self) -> Corr<T> {
        self.try_add(rhs).expect("adding correspondences with different endpoints")
    }
}

impl<T: Theory> Sub for &Corr<T> {
    type Output = Corr<T>;
    fn sub(self, rhs: Self) -> Corr<T> {
        self + &(-rhs)
    }
}

impl<T: Theory> Neg for &Corr<T> {
    type Output = Corr<T>;
    fn neg(self) -> Corr<T> {
        Corr { source: self.source.clone(), target: self.target.clone(), class: -&self.class }
    }
}

impl<T: Theory> fmt::Display for Corr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}: {}", self.source, self.target, self.class)
    }
}

impl<T: Theory> Serialize for Corr<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Corr", 4)?;
        st.serialize_field("theory", T::NAME)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("target", &self.target)?;
        st.serialize_field("components", &self.class.parts)?;
        st.end()
    }
}

impl<'de, T: Theory> Deserialize<'de> for Corr<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        #[derive(Deserialize)]
        struct Raw {
            theory: Option<String>,
            source: CellularVariety,
            target: CellularVariety,
            components: Vec<QuotientRingElement>,
        }
        let raw = Raw::deserialize(d)?;
        if let Some(t) = &raw.theory {
            if t != T::NAME {
                return Err(D::Error::custom(format!("expected a {} correspondence, found {t}", T::NAME)));
            }
        }
        let xy = raw.source.product(&raw.target);
        let class = Class::from_parts(&xy, raw.components).map_err(D::Error::custom)?;
        Corr::new(&raw.source, &raw.target, class).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::geometry::theory::{Chow, KTheory};

    fn p(n: u32) -> CellularVariety {
        CellularVariety::projective(n)
    }

    /// Composition by literal pullback to `X x Y x Z`, product, and
    /// pushforward along the projection to `X x Z`.
    fn compose_literal<T: Theory>(f: &Corr<T>, g: &Corr<T>) -> Corr<T> {
        let (x, y, z) = (f.source(), f.target(), g.target());
        let xyz = x.product(y).product(z);
        let pr_xy = CellularMap::projection_first(&x.product(y), z);
        let yz_map = {
            // (X x Y) x Z -> Y x Z
            let a = CellularMap::projection_second(x, y);
            CellularMap::product(&a, &CellularMap::identity(z))
        };
        let xz_map = {
            let a = CellularMap::projection_first(x, y);
            CellularMap::product(&a, &CellularMap::identity(z))
        };
        assert_eq!(*yz_map.source(), xyz);
        let fp = f.class().pullback(&pr_xy).unwrap();
        let gp = g.class().pullback(&yz_map).unwrap();
        let prod = fp.try_mul(&gp).unwrap();
        Corr::new(x, z, prod.pushforward(&xz_map).unwrap()).unwrap()
    }

    fn universe() -> Vec<CellularVariety> {
        vec![CellularVariety::point(), p(1), p(2), p(1).power(2), p(1).disjoint_union(&CellularVariety::point())]
    }

    fn fused_matches_literal<T: Theory>() {
        let vs = universe();
        for x in &vs {
            for y in &vs {
                for z in &vs[..3] {
                    let fs = Corr::<T>::basis(x, y);
                    let gs = Corr::<T>::basis(y, z);
                    let f = fs.iter().enumerate().fold(Corr::zero(x, y), |acc, (k, b)| &acc + &b.scale(&rat(k as i64 + 1)));
                    let g = gs.iter().enumerate().fold(Corr::zero(y, z), |acc, (k, b)| &acc + &b.scale(&rat(2 * k as i64 - 3)));
                    assert_eq!(f.then(&g).unwrap(), compose_literal(&f, &g), "{x} -> {y} -> {z}");
                }
            }
        }
    }

    #[test]
    fn fused_composition_matches_literal_chow() {
        fused_matches_literal::<Chow>();
    }

    #[test]
    fn fused_composition_matches_literal_k() {
        fused_matches_literal::<KTheory>();
    }

    fn identity_laws<T: Theory>() {
        for x in universe() {
            let id = Corr::<T>::identity(&x);
            for y in universe() {
                for f in Corr::<T>::basis(&x, &y) {
                    assert_eq!(id.then(&f).unwrap(), f);
                    assert_eq!(f.then(&Corr::identity(&y)).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn identity_laws_both_theories() {
        identity_laws::<Chow>();
        identity_laws::<KTheory>();
    }

    #[test]
    fn action_is_functorial_and_invertible() {
        let (x, y, z) = (p(1), p(2), p(1).power(2));
        let f = Corr::<KTheory>::basis(&x, &y).into_iter().fold(Corr::zero(&x, &y), |a, b| &a + &b);
        let g = Corr::<KTheory>::basis(&y, &z)[3].clone();
        let gf = f.then(&g).unwrap();
        assert_eq!(gf.action_matrix(), g.action_matrix().mul(&f.action_matrix()).unwrap());
        for c in Corr::<Chow>::basis(&x, &z) {
            assert_eq!(Corr::from_action_matrix(&x, &z, &c.action_matrix()).unwrap(), c);
        }
        assert_eq!(Corr::from_action_matrix(&y, &z, &g.action_matrix()).unwrap(), g);
        let a = Class::<KTheory>::generator(&x, 0, 0);
        assert_eq!(gf.apply(&a).unwrap(), g.apply(&f.apply(&a).unwrap()).unwrap());
    }

    #[test]
    fn transpose_and_tensor() {
        let x = p(1);
        let f = Corr::<Chow>::monomial(&x, &x, (0, 0), &[0], &[1], rat(1));
        assert_eq!(f.transpose(), Corr::monomial(&x, &x, (0, 0), &[1], &[0], rat(1)));
        assert_eq!(f.transpose().transpose(), f);
        let id = Corr::<Chow>::identity(&x);
        assert_eq!(id.tensor(&id), Corr::identity(&x.power(2)));
        let kid = Corr::<KTheory>::identity(&x);
        assert_eq!(kid.tensor(&kid), Corr::identity(&x.power(2)));
    }

    #[test]
    fn pushforward_projection_formula() {
        let (x, y) = (p(1), p(2));
        let pr = CellularMap::projection_first(&x, &y);
        for a in Corr::<Chow>::basis(&CellularVariety::point(), &x) {
            let a = Class::<Chow>::from_coordinates(&x, &a.class().coordinates()).unwrap();
            for b in Corr::<Chow>::basis(&x, &y) {
                let lhs = a.pullback(&pr).unwrap().try_mul(b.class()).unwrap().pushforward(&pr).unwrap();
                let rhs = a.try_mul(&b.class().pushforward(&pr).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let f = Corr::<KTheory>::identity(&p(1));
        let s = serde_json::to_string(&f).unwrap();
        let back: Corr<KTheory> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<Corr<Chow>>(&s).is_err());
    }
}
