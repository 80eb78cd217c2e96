//! Partitions, the rational group algebra of `S_n`, and Schur functors on
//! motives.

pub mod functor;
pub mod group_algebra;
pub mod partition;

pub use functor::{
    alt, is_schur_finite, kimura_witness, permutation_action, schur_cut, sym, KimuraVerdict, SchurCut, SchurFiniteness,
    SchurVerdict, TensorObject,
};
pub use group_algebra::{central_idempotent, character, dimension, GroupAlgebraElement};
pub use partition::{Partition, Permutation};
