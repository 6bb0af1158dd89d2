//! Logarithmic derivations `D_0(C) = AR(f)` and their classification.

pub mod classify;
pub mod derivation;
pub mod graded;
pub mod module;

pub use classify::{classify, classify_module, default_bound, saito_check, Classification, Kind, PogRelation, SaitoOutcome};
pub use derivation::Derivation;
pub use module::{
    check_reduced, mdr, minimal_generators, relation_degrees, syzygy_space, JacobianData, Relation, SyzygyModule,
};
