//! Factorization semigroups over symmetric groups.
//!
//! Words of permutations modulo Hurwitz moves, their normal forms, and
//! component counts for Hurwitz spaces of branched coverings.

pub mod hurwitz;
pub mod npsemi;
pub mod oracle;
pub mod perm;
pub mod sigma3;
pub mod transpo;
pub mod verify;
pub mod word;

pub use oracle::{hurwitz_equivalent, hurwitz_orbit, OracleError, OrbitResult, SearchLimits};
pub use perm::{CycleType, PermError, Permutation};
pub use word::{Direction, SubgroupInfo, SubgroupTag, TranspositionGraph, TypeVector, Word, WordError};
