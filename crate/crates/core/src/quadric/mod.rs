//! Hyperquadrics, their sign patterns and the coordinate maps between them.

pub mod cayley;
pub mod hyperquadric;
pub mod maps;
pub mod segre;
pub mod signature;

pub use cayley::{cayley_pullback, cayley_transform, ProjectivePoint};
pub use hyperquadric::{Hyperquadric, PointClass};
pub use maps::{flip_map, interchange_map, interchange_permutation};
pub use segre::{polarized_rho, SegreVariety};
pub use signature::{signed_inner, signed_norm_sq, standard_signs, GeneralizedDelta, Signature};
