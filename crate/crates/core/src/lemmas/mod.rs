//! Divisibility by `⟨z,ξ̄⟩_ℓ`, the vanishing lemmas built on it, and
//! isometry recovery for equal sums of squares.

pub mod division;
pub mod isometry;
pub mod products;

pub use division::{divide_by_form, polarized_form, reduce_by_form, zero_set_witness, Division};
pub use isometry::{
    is_coisometry, isometry_decompose, random_isometric_pair, signature_gap_check,
    signed_gram_difference, IsometryResult, SignatureGapReport, SignatureGapVerdict,
};
pub use products::{
    divisibility_check, for_each_exhaustive_instance, random_divisibility_instance, random_germ,
    sharpness_instance, z_monomials, DivisibilityReport, DivisibilityVerdict, InstanceShape, Layer,
    LemmaInstance,
};
