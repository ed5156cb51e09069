//! Target automorphisms, jets and normalization, and the linearized equation.

pub mod automorphism;
pub mod cm;
pub mod jet;
pub mod normalize;

pub use automorphism::{
    compose, make_automorphism, random_aut_params, random_indefinite_unitary, AutParams,
    Automorphism, Composition,
};
pub use cm::{
    cm_kernel_solve, cm_operator, random_stilde, stilde_membership, weighted_monomials,
    CmConsistency, CmSolution, StildeBlock, StildeReport,
};
pub use jet::{inverse_series, Jet};
pub use normalize::{
    check_sff, normalize, sign_placement, NormalForm, Normalization, NormalizedMap, PhiTerm,
};
