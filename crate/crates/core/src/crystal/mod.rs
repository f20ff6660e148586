//! The crystallographic group layer: validation, structural data and the
//! closed-form theorem evaluators.

mod gamma;
pub mod oracle;
pub mod report;
pub mod theorems;

pub use gamma::{
    abelianization, canonical_gamma, euler_characteristic_quotient, finite_subgroup_data, validate_gamma,
    FiniteSubgroupData, GammaDescriptor,
};
pub use oracle::{
    brute_force_cohomology_bgamma, brute_force_cohomology_table, brute_force_homology_bgamma, brute_force_homology_table,
};
pub use report::{ReportOptions, TheoremReport};
pub use theorems::{ExactSequence, ExactSequences, Field, RestrictionData, Space, Theorems, Variant};
