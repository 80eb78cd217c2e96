use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::algebra::{Exponents, RingDescriptor};

/// A finite disjoint union of products of projective spaces.
///
/// Each component is the list of factor dimensions; the empty list is the
/// point. Zero-dimensional factors are dropped on construction, so
/// `P^0 x P^2` and `P^2` are the same variety. The name is a label only and
/// does not take part in equality.
#[derive(Clone, Debug, Serialize)]
pub struct CellularVariety {
    name: String,
    components: Vec<Vec<u32>>,
}

impl CellularVariety {
    pub fn new(components: Vec<Vec<u32>>) -> Self {
        let components: Vec<Vec<u32>> =
            components.into_iter().map(|c| c.into_iter().filter(|&n| n > 0).collect()).collect();
        let name = canonical_name(&components);
        CellularVariety { name, components }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn point() -> Self {
        Self::new(vec![vec![]])
    }

    /// The variety with no components.
    pub fn empty() -> Self {
        Self::new(vec![])
    }

    pub fn projective(n: u32) -> Self {
        Self::new(vec![vec![n]])
    }

    pub fn product_of_projective(dims: &[u32]) -> Self {
        Self::new(vec![dims.to_vec()])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &[u32] {
        &self.components[i]
    }

    pub fn component_dimension(&self, i: usize) -> u32 {
        self.components[i].iter().sum()
    }

    /// Largest component dimension (0 for the empty variety).
    pub fn dimension(&self) -> u32 {
        (0..self.num_components()).map(|i| self.component_dimension(i)).max().unwrap_or(0)
    }

    pub fn is_equidimensional(&self) -> bool {
        let mut dims = (0..self.num_components()).map(|i| self.component_dimension(i));
        match dims.next() {
            None => true,
            Some(d) => dims.all(|e| e == d),
        }
    }

    pub fn ring(&self, i: usize) -> RingDescriptor {
        RingDescriptor::new(self.components[i].clone())
    }

    /// Total rank of the Chow ring (equivalently of rational K_0).
    pub fn rank(&self) -> usize {
        (0..self.num_components()).map(|i| self.ring(i).dimension()).sum()
    }

    /// Monomial basis as (component, exponents), components in order and
    /// monomials lexicographically within each.
    pub fn basis(&self) -> Vec<(usize, Exponents)> {
        (0..self.num_components())
            .flat_map(|i| self.ring(i).monomials().into_iter().map(move |e| (i, e)))
            .collect()
    }

    /// Offset of each component's block inside [`Self::basis`].
    pub fn basis_offsets(&self) -> Vec<usize> {
        let mut offsets = Vec::with_capacity(self.num_components());
        let mut acc = 0;
        for i in 0..self.num_components() {
            offsets.push(acc);
            acc += self.ring(i).dimension();
        }
        offsets
    }

    /// `X x Y`; component `(i, j)` sits at index `i * |Y| + j`.
    pub fn product(&self, other: &Self) -> Self {
        let mut comps = Vec::with_capacity(self.num_components() * other.num_components());
        for a in &self.components {
            for b in &other.components {
                let mut c = a.clone();
                c.extend_from_slice(b);
                comps.push(c);
            }
        }
        let name = format!("{}x{}", paren(&self.name), paren(&other.name));
        Self::new(comps).with_name(simplify_name(name, self, other))
    }

    pub fn disjoint_union(&self, other: &Self) -> Self {
        let mut comps = self.components.clone();
        comps.extend_from_slice(&other.components);
        Self::new(comps).with_name(format!("{}+{}", self.name, other.name))
    }

    pub fn power(&self, k: usize) -> Self {
        if k == 0 {
            return Self::point();
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self);
        }
        acc
    }
}

fn paren(name: &str) -> String {
    if name.contains('+') {
        format!("({name})")
    } else {
        name.to_string()
    }
}

fn simplify_name(joined: String, a: &CellularVariety, b: &CellularVariety) -> String {
    match (a.name.as_str(), b.name.as_str()) {
        ("pt", _) => b.name.clone(),
        (_, "pt") => a.name.clone(),
        _ => joined,
    }
}

fn canonical_name(components: &[Vec<u32>]) -> String {
    if components.is_empty() {
        return "empty".into();
    }
    components
        .iter()
        .map(|c| {
            if c.is_empty() {
                "pt".to_string()
            } else {
                c.iter().map(|n| format!("P{n}")).collect::<Vec<_>>().join("x")
            }
        })
        .collect::<Vec<_>>()
        .join("+")
}

impl PartialEq for CellularVariety {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

impl Eq for CellularVariety {}

impl Hash for CellularVariety {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.components.hash(state);
    }
}

impl fmt::Display for CellularVariety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl<'de> Deserialize<'de> for CellularVariety {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Bare(Vec<Vec<u32>>),
            Full { components: Vec<Vec<u32>>, name: Option<String> },
        }
        Ok(match Repr::deserialize(d)? {
            Repr::Bare(c) => CellularVariety::new(c),
            Repr::Full { components, name } => {
                let v = CellularVariety::new(components);
                match name {
                    Some(n) => v.with_name(n),
                    None => v,
                }
            }
        })
    }
}
