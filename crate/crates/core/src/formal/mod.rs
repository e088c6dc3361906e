//! Exact truncated series in the nome, used to certify identities
//! coefficient by coefficient.

pub mod build;
pub mod laurent;
pub mod series;

pub use build::{fs_pochhammer_product, fs_theta, fs_theta_product, pochhammer_factors, QFactor};
pub use laurent::{format_gaussian, gaussian, Gaussian, LaurentPoly, Monomial};
pub use series::{
    fs_arith, fs_equal, fs_shift, ArithOp, Comparison, GradedSeries, Mismatch, ShiftKind, Var,
    EXACT_ORDER,
};
