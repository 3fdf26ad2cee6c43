//! Regular two-level fractional factorial designs over GF(2): columns,
//! wordlength patterns, alias structure, doubling and projection
//! constructions, maximality and isomorphism analysis, and exhaustive
//! searches at desk scale.
//!
//! A design is a set of distinct nonzero k-bit columns; its 2^k runs are
//! the points of GF(2)^k and each factor's level in a run is the parity of
//! the masked run index. Everything else — defining words, resolution,
//! aberration, alias sets — derives from the linear algebra of the column
//! set, and the crate keeps two independent routes to the key quantities
//! (direct enumeration vs. dual-code counting, alias profiles vs.
//! coverage) so they can check each other.

pub mod analyze;
pub mod cli;
pub mod construct;
pub mod corpus;
pub mod design;
pub mod error;
pub mod format;
pub mod gf2;
pub mod search;

pub use analyze::{
    are_isomorphic, canonical_form, fingerprint, is_maximal, CanonicalForm, DesignFingerprint,
    IsoVerdict, MaximalityReport,
};
pub use construct::{
    design_2_5_1, design_2_9_4, double, double_n, family_5n16, family_9n32, foldover,
    full_factorial, predicted_double_alias_multisets, predicted_double_wlp, project, project_drop,
    saturated_res3, saturated_res4,
};
pub use corpus::corpus;
pub use design::{
    alias_profile, b3_b4_from_profile, expand_runs, is_even, oa_strength, reembed, resolution,
    strength_oracle, wordlength_pattern, wordlength_pattern_direct, wordlength_pattern_fast,
    AliasProfile, RegularDesign, Resolution, RunMatrix, WordlengthPattern,
};
pub use error::{Error, Result};
pub use gf2::{binomial, BitVec};
pub use search::{
    deletion_objective, deletion_projection, enumerate_maximal, ma_compare, ma_projection_search,
    ma_projection_search_with_budget, verify_cor24, verify_thm21, verify_thm22, verify_thm23,
    verify_thm32, verify_thm33, verify_thm41_inequality, visit_budget, DeletionSpec,
    GroupedAliasIndex, InequalityWitness, SearchReport,
};
