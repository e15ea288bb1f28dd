//! Permutations, stabilizer chains and subcosets.

mod group;
mod permutation;
mod subcoset;

pub use group::{Level, PermGroup, PermGroupFile};
pub use permutation::{PermFile, Permutation};
pub use subcoset::{subcoset_intersect_filter, Subcoset, FILTER_LIMIT};
