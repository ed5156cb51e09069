//! Maps between hyperquadrics: certificates, transversality, recentering.

pub mod map;
pub mod multiplier;
pub mod recenter;
pub mod span;
pub mod transversal;

pub use map::{QuadricMap, RationalMap};
pub use multiplier::{divide_by_rho, multiplier, pullback, CertStatus, MultiplierCertificate};
pub use recenter::{recenter, source_translation, RecenteredMap};
pub use span::{segre_containment, span_dimension, SegreContainment};
pub use transversal::{
    locus_from, nontransversality_locus, signature_necessary_conditions, transversality,
    transversality_with, vanishing_check, ConditionCheck, Locus, SideSample, SignatureReport,
    TransversalityReport, VanishingOutcome, VanishingReport, Verdict,
};
