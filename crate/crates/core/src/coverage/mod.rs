//! Which targets are sums of rounded quadratic-family terms.
//!
//! Each term's value set becomes a bit array; sums are built by shifted-OR
//! convolution and the last layer is evaluated window by window in parallel.

mod engine;
mod families;
mod term;

pub use engine::{
    coverage_scan, coverage_scan_with, first_gap, CoverageProblem, CoverageResult, CrossConstraint, ScanOptions,
    WitnessMode,
};
pub use families::{
    exceptional_divisors_scan, shifted_three_squares_problem, shifted_three_squares_scan, variant_triple_check,
    DivisorFamily, DivisorTemplate, TableKind,
};
pub(crate) use families::combined_floor;
pub use term::{term_values, term_values_with_budget, Rounding, TermPart, TermSpec, TermValue, DEFAULT_NODE_BUDGET};
