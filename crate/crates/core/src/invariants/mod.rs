//! Invariants of conjugacy and flow equivalence, and verdicts that combine them with search.

mod classical;
mod compare;
mod report;

pub use classical::{
    bowen_franks, dimension_module, finite_field_fixed_count, periodic_point_count, periodic_point_series, semimodule_presentation,
    spectrum_away_from_zero, zeta_poly, zeta_series, AbelianGroupClass, ModulePresentation, SemimodulePresentation, ZetaInvariant,
};
pub use compare::{
    budget_json, compare, equivalence_search, equivalence_searches, flow_invariants, invariant_table, sse_invariants,
    EquivVerdict, EquivalenceSearch, Invariant, InvariantRow,
};
pub use report::{invariant_report, render_report_text, ReportOptions};
