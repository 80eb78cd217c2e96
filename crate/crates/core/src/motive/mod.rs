//! Categories of motives over Q built from cellular varieties.

pub mod chow;
pub mod generic;
pub mod orbit;
pub mod theta;

pub use chow::{graded_ranks_of_action, ChowMorphism, ChowMotive};
pub use generic::{split_idempotent, Motive, MotiveMorphism, RankOnePiece};
pub use orbit::{OrbitHom, OrbitMorphism, OrbitMotive};
pub use theta::{
    nc_of, realize, realize_morphism, theta1, theta1_inverse, theta1_inverse_morphism, theta1_morphism, theta2,
    theta2_inverse, theta2_inverse_morphism, theta2_morphism, theta3, theta3_morphism, ManinMorphism, ManinMotive,
    NCMorphism, NCMotive,
};
