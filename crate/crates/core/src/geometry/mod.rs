//! Cellular varieties, their Chow rings and rational K_0, and
//! correspondences between them.

pub mod chow;
pub mod class;
pub mod maps;
pub mod theory;
pub mod variety;

pub use chow::{
    chow_pullback, chow_pushforward, compose_correspondences, diagonal_class, graph_transpose, graph_transpose_class,
    transpose, ChowClass, Correspondence, GradedCorrespondence,
};
pub use class::{Class, Corr, CorrTerm};
pub use maps::{CellularMap, ComponentMap, FactorImage};
pub use theory::{Chow, KTheory, Theory};
pub use variety::CellularVariety;
