//! Morphisms between cellular varieties that are built from coordinate
//! projections, diagonals and linear point inclusions.

use serde::Serialize;

use super::variety::CellularVariety;
use crate::algebra::{QuotientRingElement, VarImage};
use crate::error::{MotiveError, Result};

/// What a target factor `P^n` is pulled back from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FactorImage {
    /// The identity onto source factor `i` (which must have the same dimension).
    Coord(usize),
    /// A constant map to a fixed linear point.
    Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ComponentMap {
    pub target: usize,
    pub factors: Vec<FactorImage>,
}

/// A morphism given componentwise: each source component lands in one
/// target component, and each factor of that target component is either a
/// copy of a source factor or a fixed point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CellularMap {
    source: CellularVariety,
    target: CellularVariety,
    components: Vec<ComponentMap>,
}

impl CellularMap {
    pub fn new(source: CellularVariety, target: CellularVariety, components: Vec<ComponentMap>) -> Result<Self> {
        if components.len() != source.num_components() {
            return Err(MotiveError::UnsupportedMorphism(format!(
                "{} component maps for {} source components",
                components.len(),
                source.num_components()
            )));
        }
        for (s, cm) in components.iter().enumerate() {
            if cm.target >= target.num_components() {
                return Err(MotiveError::UnsupportedMorphism(format!("target component {} out of range", cm.target)));
            }
            let tdims = target.component(cm.target);
            let sdims = source.component(s);
            if cm.factors.len() != tdims.len() {
                return Err(MotiveError::UnsupportedMorphism(format!(
                    "component {s}: {} factor images for {} target factors",
                    cm.factors.len(),
                    tdims.len()
                )));
            }
            for (t, img) in cm.factors.iter().enumerate() {
                if let FactorImage::Coord(i) = *img {
                    if sdims.get(i) != Some(&tdims[t]) {
                        return Err(MotiveError::UnsupportedMorphism(format!(
                            "component {s}: target factor {t} (P^{}) is not a copy of source factor {i}",
                            tdims[t]
                        )));
                    }
                }
            }
        }
        Ok(CellularMap { source, target, components })
    }

    pub fn source(&self) -> &CellularVariety {
        &self.source
    }

    pub fn target(&self) -> &CellularVariety {
        &self.target
    }

    pub fn components(&self) -> &[ComponentMap] {
        &self.components
    }

    pub fn identity(x: &CellularVariety) -> Self {
        let comps = (0..x.num_components())
            .map(|i| ComponentMap { target: i, factors: coords(0, x.component(i).len()) })
            .collect();
        CellularMap { source: x.clone(), target: x.clone(), components: comps }
    }

    /// `X x Y -> X`.
    pub fn projection_first(x: &CellularVariety, y: &CellularVariety) -> Self {
        let mut comps = Vec::new();
        for i in 0..x.num_components() {
            for _ in 0..y.num_components() {
                comps.push(ComponentMap { target: i, factors: coords(0, x.component(i).len()) });
            }
        }
        CellularMap { source: x.product(y), target: x.clone(), components: comps }
    }

    /// `X x Y -> Y`.
    pub fn projection_second(x: &CellularVariety, y: &CellularVariety) -> Self {
        let mut comps = Vec::new();
        for i in 0..x.num_components() {
            let shift = x.component(i).len();
            for j in 0..y.num_components() {
                comps.push(ComponentMap { target: j, factors: coords(shift, y.component(j).len()) });
            }
        }
        CellularMap { source: x.product(y), target: y.clone(), components: comps }
    }

    /// `X x Y -> Y x X`.
    pub fn swap(x: &CellularVariety, y: &CellularVariety) -> Self {
        let ny = y.num_components();
        let nx = x.num_components();
        let mut comps = Vec::new();
        for i in 0..nx {
            let kx = x.component(i).len();
            for j in 0..ny {
                let mut factors = coords(kx, y.component(j).len());
                factors.extend(coords(0, kx));
                comps.push(ComponentMap { target: j * nx + i, factors });
            }
        }
        CellularMap { source: x.product(y), target: y.product(x), components: comps }
    }

    /// `X -> X x X`.
    pub fn diagonal(x: &CellularVariety) -> Self {
        let n = x.num_components();
        let comps = (0..n)
            .map(|i| {
                let k = x.component(i).len();
                let mut factors = coords(0, k);
                factors.extend(coords(0, k));
                ComponentMap { target: i * n + i, factors }
            })
            .collect();
        CellularMap { source: x.clone(), target: x.product(x), components: comps }
    }

    /// `X -> pt`.
    pub fn structure(x: &CellularVariety) -> Self {
        let comps = (0..x.num_components()).map(|_| ComponentMap { target: 0, factors: Vec::new() }).collect();
        CellularMap { source: x.clone(), target: CellularVariety::point(), components: comps }
    }

    /// The inclusion of a linear point into component `component` of `y`.
    pub fn point_inclusion(y: &CellularVariety, component: usize) -> Result<Self> {
        if component >= y.num_components() {
            return Err(MotiveError::UnsupportedMorphism(format!("no component {component} in {y}")));
        }
        let factors = vec![FactorImage::Point; y.component(component).len()];
        CellularMap::new(CellularVariety::point(), y.clone(), vec![ComponentMap { target: component, factors }])
    }

    /// `f x g : X x Z -> Y x W`.
    pub fn product(f: &CellularMap, g: &CellularMap) -> Self {
        let nw = g.target.num_components();
        let mut comps = Vec::new();
        for (i, fc) in f.components.iter().enumerate() {
            let shift = f.source.component(i).len();
            for gc in &g.components {
                let mut factors = fc.factors.clone();
                factors.extend(gc.factors.iter().map(|img| match *img {
                    FactorImage::Coord(k) => FactorImage::Coord(k + shift),
                    FactorImage::Point => FactorImage::Point,
                }));
                comps.push(ComponentMap { target: fc.target * nw + gc.target, factors });
            }
        }
        CellularMap { source: f.source.product(&g.source), target: f.target.product(&g.target), components: comps }
    }

    /// `g . self`.
    pub fn then(&self, g: &CellularMap) -> Result<Self> {
        if self.target != g.source {
            return Err(MotiveError::VarietyMismatch(format!("cannot compose {} -> {} with {} -> {}", self.source, self.target, g.source, g.target)));
        }
        let comps = self
            .components
            .iter()
            .map(|fc| {
                let gc = &g.components[fc.target];
                let factors = gc
                    .factors
                    .iter()
                    .map(|img| match *img {
                        FactorImage::Point => FactorImage::Point,
                        FactorImage::Coord(m) => fc.factors[m],
                    })
                    .collect();
                ComponentMap { target: gc.target, factors }
            })
            .collect();
        Ok(CellularMap { source: self.source.clone(), target: g.target.clone(), components: comps })
    }

    /// Pullback of a target-component element to source component `s`:
    /// the substitution `x_t -> x_i` for copied factors and `x_t -> 0` for
    /// constant ones. The same substitution serves both theories, since
    /// `O(1)` restricts to `O(1)` along a copy and to `O` at a point.
    pub fn pull_component(&self, s: usize, elt: &QuotientRingElement) -> Result<QuotientRingElement> {
        let images: Vec<VarImage> = self.components[s]
            .factors
            .iter()
            .map(|img| match *img {
                FactorImage::Coord(i) => VarImage::Var(i),
                FactorImage::Point => VarImage::Zero,
            })
            .collect();
        elt.substitute(&self.source.ring(s), &images)
    }

    /// Pushforward is supported when no two target factors copy the same
    /// source factor (projections, factor permutations, point inclusions).
    pub fn supports_pushforward(&self) -> bool {
        self.components.iter().all(|cm| {
            let mut seen = std::collections::HashSet::new();
            cm.factors.iter().all(|img| match img {
                FactorImage::Coord(i) => seen.insert(*i),
                FactorImage::Point => true,
            })
        })
    }
}

fn coords(start: usize, len: usize) -> Vec<FactorImage> {
    (start..start + len).map(FactorImage::Coord).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_of_descriptors() {
        let p1 = CellularVariety::projective(1);
        let d = CellularMap::diagonal(&p1);
        let pr = CellularMap::projection_first(&p1, &p1);
        assert_eq!(d.then(&pr).unwrap(), CellularMap::identity(&p1));
        let st = CellularMap::structure(&p1);
        let pt_in = CellularMap::point_inclusion(&p1, 0).unwrap();
        assert_eq!(pt_in.then(&st).unwrap(), CellularMap::identity(&CellularVariety::point()));
        assert!(d.then(&d).is_err());
        let x = p1.disjoint_union(&CellularVariety::point());
        let y = CellularVariety::projective(2);
        let there = CellularMap::swap(&x, &y);
        assert_eq!(there.then(&CellularMap::swap(&y, &x)).unwrap(), CellularMap::identity(&x.product(&y)));
    }

    #[test]
    fn validation_rejects_mismatched_factors() {
        let p1 = CellularVariety::projective(1);
        let p2 = CellularVariety::projective(2);
        let bad = CellularMap::new(p1, p2, vec![ComponentMap { target: 0, factors: vec![FactorImage::Coord(0)] }]);
        assert!(matches!(bad, Err(MotiveError::UnsupportedMorphism(_))));
    }

    #[test]
    fn pushforward_support() {
        let p1 = CellularVariety::projective(1);
        assert!(CellularMap::projection_second(&p1, &p1).supports_pushforward());
        assert!(!CellularMap::diagonal(&p1).supports_pushforward());
    }
}
