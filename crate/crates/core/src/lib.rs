//! Jacobi theta functions, Gosper's q-trigonometric functions, and tools for
//! checking theta-function identities.
//!
//! Two independent routes exist for every numeric quantity: the defining
//! q-series and the Jacobi infinite products for theta functions, and theta
//! quotients versus q-shifted factorial products for the q-trigonometric
//! functions. Identities are checked numerically by residual sampling
//! ([`identity::run_suite`]) and exactly by coefficient comparison of
//! truncated series in the nome ([`formal`]).

pub mod error;
pub mod formal;
pub mod identity;
pub mod lattice;
pub mod param;
pub mod qtrig;
pub mod theta;

pub use error::{Error, Result};
pub use param::{
    make_param, principal_power, tau_prime, ModularParam, ThetaKind, TruncationPolicy,
};
pub use qtrig::{qtrig_crosscheck, qtrig_product, qtrig_theta, QTrigKind};
pub use theta::{
    half_period_shift, qpochhammer, reduce_argument, theta_eval, theta_eval_reduced, theta_null,
    Method, ShiftResult,
};

pub use num_complex::Complex64;
