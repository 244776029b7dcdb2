//! Exact permutation-group arithmetic: groups, subgroups, conjugacy classes
//! and (double) cosets, with a factor-wise fast path for direct products.

mod cosets;
mod group;
mod matching;
mod perm;
mod subgroup;

pub use cosets::{double_cosets, simultaneous_coset_reps, DoubleCosetDecomposition, DoubleCosets, LeftCosets};
pub use group::{conjugacy_classes, generate_group, ConjugacyClass, GroupSpec, PermGroup, Structure, DEFAULT_ENUMERATION_BOUND};
pub(crate) use group::factorial;
pub use matching::max_matching;
pub use perm::{Permutation, MAX_DEGREE};
pub use subgroup::{cyclic_subgroup, cyclic_subgroup_of, orbit_count, order_divides_ambient, Subgroup, SubgroupSpec};
