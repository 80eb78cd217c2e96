//! Symmetric-group actions on tensor powers and the Schur functors they
//! cut out.
//!
//! On `X^n` a factor permutation sends monomials to monomials in both
//! theories, so everything is computed on action matrices in the monomial
//! basis and only turned into correspondence classes on request.

use std::collections::HashMap;

use serde::Serialize;

use super::group_algebra::{central_idempotent, GroupAlgebraElement};
use super::partition::{Partition, Permutation};
use crate::algebra::{Rational, SparseMatrix};
use crate::error::{MotiveError, Result};
use crate::geometry::{CellularVariety, Chow, Corr, Correspondence, KTheory, Theory};
use crate::motive::{ChowMotive, Motive, OrbitMotive};

/// Objects given by a cellular variety and an idempotent on it, whose
/// tensor powers can be cut by symmetric-group idempotents.
pub trait TensorObject {
    type Theory: Theory;
    fn variety(&self) -> &CellularVariety;
    fn projector_corr(&self) -> &Corr<Self::Theory>;
    fn twist(&self) -> i64 {
        0
    }
}

impl TensorObject for ChowMotive {
    type Theory = Chow;
    fn variety(&self) -> &CellularVariety {
        ChowMotive::variety(self)
    }
    fn projector_corr(&self) -> &Corr<Chow> {
        self.projector().corr()
    }
    fn twist(&self) -> i64 {
        ChowMotive::twist(self)
    }
}

impl TensorObject for OrbitMotive {
    type Theory = Chow;
    fn variety(&self) -> &CellularVariety {
        OrbitMotive::variety(self)
    }
    fn projector_corr(&self) -> &Corr<Chow> {
        self.projector()
    }
    fn twist(&self) -> i64 {
        OrbitMotive::twist(self)
    }
}

impl<T: Theory> TensorObject for Motive<T> {
    type Theory = T;
    fn variety(&self) -> &CellularVariety {
        Motive::variety(self)
    }
    fn projector_corr(&self) -> &Corr<T> {
        self.projector()
    }
}

/// The monomial basis of `X^n` indexed by `n`-tuples of basis indices of
/// `X`, first factor most significant.
struct TensorPower {
    variety: CellularVariety,
    base_rank: usize,
    n: usize,
    position: Vec<usize>,
}

impl TensorPower {
    fn new(x: &CellularVariety, n: usize) -> Self {
        let variety = x.power(n);
        let lookup: HashMap<(usize, Vec<u32>), usize> =
            variety.basis().into_iter().enumerate().map(|(k, key)| (key, k)).collect();
        let xb = x.basis();
        let nc = x.num_components();
        let r = xb.len();
        let total = r.pow(n as u32);
        let mut position = Vec::with_capacity(total);
        for flat in 0..total {
            let digits = digits(flat, r, n);
            let mut comp = 0;
            let mut exps = Vec::new();
            for &d in &digits {
                comp = comp * nc + xb[d].0;
                exps.extend_from_slice(&xb[d].1);
            }
            position.push(lookup[&(comp, exps)]);
        }
        TensorPower { variety, base_rank: r, n, position }
    }

    fn len(&self) -> usize {
        self.position.len()
    }

    /// Flat tuple index of `σ` applied to tuple `flat`: factor `i` moves to
    /// position `σ(i)`.
    fn permuted(&self, s: &Permutation, flat: usize) -> usize {
        let t = digits(flat, self.base_rank, self.n);
        let mut w = vec![0; self.n];
        for (i, &d) in t.iter().enumerate() {
            w[s.apply(i)] = d;
        }
        undigits(&w, self.base_rank)
    }

    fn group_action(&self, g: &GroupAlgebraElement) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.len(), self.len());
        for flat in 0..self.len() {
            for (s, c) in g.terms() {
                m.add_to(self.position[self.permuted(s, flat)], self.position[flat], c);
            }
        }
        m
    }

    /// `P^{⊗n}`, or `None` when `P` is the identity.
    fn projector_power(&self, p: &SparseMatrix) -> Option<SparseMatrix> {
        let r = self.base_rank;
        let is_identity = (0..r).all(|i| p.row(i).len() == 1 && p.get(i, i) == Rational::from_integer(1.into()));
        if is_identity {
            return None;
        }
        let mut columns: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); r];
        for i in 0..r {
            for (&j, v) in p.row(i) {
                columns[j].push((i, v.clone()));
            }
        }
        let mut m = SparseMatrix::zeros(self.len(), self.len());
        for flat in 0..self.len() {
            let t = digits(flat, r, self.n);
            let mut partial: Vec<(usize, Rational)> = vec![(0, Rational::from_integer(1.into()))];
            for &d in &t {
                partial = partial
                    .iter()
                    .flat_map(|(row, c)| columns[d].iter().map(move |(i, v)| (row * r + i, c * v)))
                    .collect();
            }
            for (row, c) in partial {
                m.add_to(self.position[row], self.position[flat], &c);
            }
        }
        Some(m)
    }
}

fn digits(mut flat: usize, base: usize, n: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for slot in d.iter_mut().rev() {
        *slot = flat % base;
        flat /= base;
    }
    d
}

fn undigits(d: &[usize], base: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * base + x)
}

fn cut_matrix<O: TensorObject>(obj: &O, g: &GroupAlgebraElement) -> Result<(TensorPower, SparseMatrix)> {
    let tp = TensorPower::new(obj.variety(), g.degree());
    let z = tp.group_action(g);
    let m = match tp.projector_power(&obj.projector_corr().action_matrix()) {
        Some(p) => z.mul(&p)?,
        None => z,
    };
    Ok((tp, m))
}

/// The endomorphism of `N^{⊗n}` permuting tensor factors by `σ`, composed
/// with `p^{⊗n}`. Sign-free: all classes sit in even degree.
pub fn permutation_action<O: TensorObject>(obj: &O, s: &Permutation) -> Result<Corr<O::Theory>> {
    let (tp, m) = cut_matrix(obj, &GroupAlgebraElement::basis(s.clone()))?;
    Corr::from_action_matrix(&tp.variety, &tp.variety, &m)
}

/// `S_λ(N)`, realized as the image of `z_λ` acting on `N^{⊗n}`. That image
/// is `S_λ(N)^{⊕ dim λ}`, so it vanishes exactly when `S_λ(N)` does.
#[derive(Clone, Debug)]
pub struct SchurCut<T: Theory> {
    partition: Partition,
    variety: CellularVariety,
    twist: i64,
    action: SparseMatrix,
    rank: usize,
    theory: std::marker::PhantomData<T>,
}

impl<T: Theory> SchurCut<T> {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn variety(&self) -> &CellularVariety {
        &self.variety
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// The action matrix of the idempotent on the monomial basis of `X^n`.
    pub fn action_matrix(&self) -> &SparseMatrix {
        &self.action
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Zero exactly when the idempotent class is zero; the action map is a
    /// bijection onto matrices, so this reads the matrix.
    pub fn is_zero(&self) -> bool {
        self.action.is_zero()
    }

    pub fn projector(&self) -> Result<Corr<T>> {
        Corr::from_action_matrix(&self.variety, &self.variety, &self.action)
    }

    pub fn verdict(&self) -> SchurVerdict {
        SchurVerdict { partition: self.partition.clone(), vanishes: self.is_zero(), rank: self.rank }
    }

    pub fn to_motive(&self) -> Result<Motive<T>> {
        Ok(Motive::new_unchecked(&self.variety, self.projector()?))
    }
}

impl SchurCut<Chow> {
    /// Available when the original projector had degree 0.
    pub fn to_chow_motive(&self) -> Result<ChowMotive> {
        let p = Correspondence::new(self.projector()?, 0)?;
        Ok(ChowMotive::new_unchecked(&self.variety, p, self.twist))
    }
}

impl SchurCut<KTheory> {
    pub fn to_nc_motive(&self) -> Result<Motive<KTheory>> {
        self.to_motive()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurVerdict {
    pub partition: Partition,
    pub vanishes: bool,
    pub rank: usize,
}

pub fn schur_cut<O: TensorObject>(lambda: &Partition, obj: &O) -> Result<SchurCut<O::Theory>> {
    let z = central_idempotent(lambda);
    let (tp, action) = cut_matrix(obj, &z)?;
    let rank = action.rank();
    Ok(SchurCut {
        partition: lambda.clone(),
        variety: tp.variety,
        twist: obj.twist() * i64::from(lambda.size()),
        action,
        rank,
        theory: std::marker::PhantomData,
    })
}

/// `Sym^n = S_(n)`.
pub fn sym<O: TensorObject>(n: u32, obj: &O) -> Result<SchurCut<O::Theory>> {
    check_degree(n)?;
    schur_cut(&Partition::row(n), obj)
}

/// `Alt^n = S_(1^n)`.
pub fn alt<O: TensorObject>(n: u32, obj: &O) -> Result<SchurCut<O::Theory>> {
    check_degree(n)?;
    schur_cut(&Partition::column(n), obj)
}

fn check_degree(n: u32) -> Result<()> {
    if n == 0 {
        return Err(MotiveError::InvalidArgument("tensor degree must be at least 1".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SchurFiniteness {
    Finite { witness: Partition },
    UnknownUpToBound { bound: u32 },
}

/// Searches partitions by size, then lexicographically, for one whose
/// Schur functor kills `obj`.
pub fn is_schur_finite<O: TensorObject>(obj: &O, bound: u32) -> Result<SchurFiniteness> {
    check_degree(bound)?;
    for n in 1..=bound {
        for lambda in Partition::all(n) {
            if schur_cut(&lambda, obj)?.is_zero() {
                return Ok(SchurFiniteness::Finite { witness: lambda });
            }
        }
    }
    Ok(SchurFiniteness::UnknownUpToBound { bound })
}

/// Outcome of the search for an even decomposition `N = N_+` (with
/// `N_- = 0`); evenly finite-dimensional objects are in particular
/// Schur-finite, killed by `Alt^{d+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum KimuraVerdict {
    EvenlyFinite { dimension: u32, schur_witness: Partition },
    UnknownUpToBound { bound: u32 },
}

/// The smallest `d <= bound` with `Alt^{d+1}(N) = 0`.
pub fn kimura_witness<O: TensorObject>(obj: &O, bound: u32) -> Result<KimuraVerdict> {
    if obj.projector_corr().is_zero() {
        return Ok(KimuraVerdict::EvenlyFinite { dimension: 0, schur_witness: Partition::column(1) });
    }
    for d in 1..=bound {
        if alt(d + 1, obj)?.is_zero() {
            return Ok(KimuraVerdict::EvenlyFinite { dimension: d, schur_witness: Partition::column(d + 1) });
        }
    }
    Ok(KimuraVerdict::UnknownUpToBound { bound })
}
