//! Registry of theta and q-trigonometric identities, checked numerically by
//! seeded sampling and, where no division is involved, exactly as truncated
//! series.

mod formal;
mod numeric;
mod plan;
mod registry;
mod report;
mod suite;

pub use formal::{
    certify_pairs, formal_certificate, formal_certify, formal_pairs, thm2_pair, Certificate,
    SeriesPair,
};
pub use numeric::{
    f_ratio_probe, g_zero_distance, normalized, numeric_residual, Inputs, POLE_DISTANCE,
};
pub use plan::{ComplexBox, SamplePlan};
pub use registry::{Constraint, IdentityId};
pub use report::{
    reports_to_csv, reports_to_json, FailureRecord, IdentityReport, MismatchRecord, Mode,
    ReportParams, Status, TrendPoint, MAX_RECORDED_FAILURES,
};
pub use suite::{
    numeric_verify, run_suite, run_suite_for, run_suite_with_order, CLASSICAL_FINAL_TOLERANCE,
    CLASSICAL_NOMES,
};
