//! Dessins d'enfants as transitive permutation pairs, the action of Belyi-extending maps
//! through their extending patterns, and Galois invariants built on top of both.

mod bigint_decimal;

pub mod data;
pub mod dessin;
pub mod format;
pub mod group;
pub mod invariants;
pub mod pattern;
pub mod perm;

pub use dessin::{Dessin, DessinError, Role, RolePermutation, ValencyList};
pub use group::{
    build_group, class_splits_in_alternating, conjugacy_in_group, Conjugacy, GroupError,
    GroupFingerprint, GroupHandle,
};
pub use invariants::{
    distinguish, m_beta, monodromy_fingerprint, nielsen_compare, nielsen_data, report,
    InvariantReport, NielsenData, NielsenVerdict, Verdict,
};
pub use pattern::{
    apply, apply_images, apply_sequence, builtin, canonicalize_pattern, eval_word, try_apply,
    validate_pattern, CrossingWord, ExtendingPattern, Letter, PatternError,
};
pub use perm::{parse_cycles, CycleParseError, CycleType, PermError, Permutation};
