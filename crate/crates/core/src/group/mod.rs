//! Finite group arithmetic, subgroup machinery, series, polycyclic sequences and
//! stabilizer chains.

mod chain;
mod finite;
mod perm;
mod polycyclic;
mod series;
mod slp;
mod subgroup;

pub use chain::PermutationGroup;
pub use finite::{
    build_group, FiniteGroup, GroupSpec, ASSOCIATIVITY_CHECK_LIMIT, DEFAULT_ELEMENT_CAP,
};
pub use perm::{Action, Permutation};
pub use polycyclic::{polycyclic_sequence, PolycyclicSequence};
pub use series::{
    derived_series, is_soluble, lower_central_series, structure_report, StructureReport,
};
pub use slp::{Arena, Instr, Slp, Tracked};
pub use subgroup::{closure, commutator_subgroup, derived_subgroup, normal_closure_in, Subgroup};
