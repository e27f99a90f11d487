//! Structure-level checks and the built-in examples.

mod checks;
mod data;
mod examples;
mod report;

pub use checks::{
    compatibility, concomitant, equivalence_probe, hierarchy, hierarchy_compatibility, hierarchy_identity_check,
    is_nijenhuis, is_poisson, kernel_star_basis, nondeg_reduction_probe, ppn_check, psn_check, qlb_check,
    twisted_poisson_check, ProbeSamples,
};
pub use checks::{
    AGREEMENT, NONDEG_PREMISES, NONDEG_THEOREM, PPN_I, PPN_II, PPN_III, PROBE_COMPATIBLE, PROBE_CONSISTENT,
    PROBE_DEFECT, PROBE_DUAL_DEFECT, PROBE_LEMMA, PSN_AGREEMENT, PSN_CLOSED, PSN_II, PSN_NONDEGENERATE, QLB_CLOSED,
    QLB_DEFECT, QLB_FIELDS, QLB_FUNCTIONS, TWISTED_CLOSED, TWISTED_IDENTITY,
};
pub use data::{product, StructureData};
pub use examples::{builtin_example, scalar_triple, Example, ExampleKind, EXAMPLES};
pub use report::{CheckReport, Condition, Residual, Status, CONVENTIONS};
pub(crate) use report::collect as report_collect;

#[cfg(test)]
mod tests;
