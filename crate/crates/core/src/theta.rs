//! Jacobi theta functions `theta_1..theta_4 (z | tau)`.
//!
//! Two evaluation routes are provided: the bilateral defining series and the
//! Jacobi triple products. Neither reduces its argument; large `|Im z|` must
//! be brought into the fundamental box with [`reduce_argument`] first (or use
//! [`theta_eval_reduced`], which composes the two).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::param::{ModularParam, ThetaKind, TruncationPolicy};

/// Largest term magnitude tolerated relative to `max(1, |sum|)` before the
/// series result is declared numerically meaningless.
const CANCELLATION_LIMIT: f64 = 1e13;

/// Log-magnitude above which a single term would overflow.
const LOG_OVERFLOW: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Series,
    Product,
}

/// Outcome of a shift law: `theta_old(...) = multiplier * theta_new(new_z)`.
///
/// For [`reduce_argument`] the left side is `theta_kind(z)`; for
/// [`half_period_shift`] it is `theta_kind(z + pi tau / 2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftResult {
    pub new_kind: ThetaKind,
    pub new_z: Complex64,
    pub multiplier: Complex64,
}

pub fn theta_eval(
    kind: ThetaKind,
    z: Complex64,
    p: &ModularParam,
    policy: &TruncationPolicy,
    method: Method,
) -> Result<Complex64> {
    match method {
        Method::Series => series(kind, z, p, policy),
        Method::Product => product(kind, z, p, policy),
    }
}

/// Reduce `z` into the fundamental box, then evaluate the series there.
pub fn theta_eval_reduced(
    kind: ThetaKind,
    z: Complex64,
    p: &ModularParam,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let r = reduce_argument(kind, z, p);
    Ok(r.multiplier * series(kind, r.new_z, p, policy)?)
}

/// Theta constant `theta_j(0 | tau)` for `j` in {2, 3, 4}.
pub fn theta_null(j: ThetaKind, p: &ModularParam, policy: &TruncationPolicy) -> Result<Complex64> {
    if j == ThetaKind::One {
        return Err(Error::Domain(
            "theta_1(0) vanishes identically; theta nulls are j = 2, 3, 4".into(),
        ));
    }
    series(j, Complex64::new(0.0, 0.0), p, policy)
}

/// The q-shifted factorial `(a; q)_inf = prod_{n >= 0} (1 - a q^n)`.
pub fn qpochhammer(a: Complex64, q: Complex64, policy: &TruncationPolicy) -> Result<Complex64> {
    qpochhammer_with_min_factor(a, q, policy).map(|(v, _)| v)
}

/// Same as [`qpochhammer`], also returning the smallest `|1 - a q^n|` seen.
pub(crate) fn qpochhammer_with_min_factor(
    a: Complex64,
    q: Complex64,
    policy: &TruncationPolicy,
) -> Result<(Complex64, f64)> {
    let qn = q.norm();
    if qn.is_nan() || qn >= 1.0 {
        return Err(Error::Domain(format!(
            "(a; q)_inf needs |q| < 1, got |q| = {qn}"
        )));
    }
    let mut prod = Complex64::new(1.0, 0.0);
    let mut term = a;
    let mut min_factor = f64::INFINITY;
    for _ in 0..policy.max_terms() {
        let factor = 1.0 - term;
        min_factor = min_factor.min(factor.norm());
        prod *= factor;
        term *= q;
        // |log prod_{m>n} (1 - a q^m)| is at most about sum |a q^m|.
        if term.norm() / (1.0 - qn) < policy.eps() {
            return Ok((prod, min_factor));
        }
    }
    Err(Error::Convergence(format!(
        "(a; q)_inf with |a| = {}, |q| = {qn} not converged after {} factors",
        a.norm(),
        policy.max_terms()
    )))
}

/// Bring `z` into `|Re z| <= pi/2`, `|Im z| <= pi Im(tau) / 2` using the
/// quasi-periods `pi` and `pi tau`.
pub fn reduce_argument(kind: ThetaKind, z: Complex64, p: &ModularParam) -> ShiftResult {
    let tau = p.tau();
    let b = (z.im / (PI * tau.im)).round();
    let shifted = z - PI * tau * b;
    let a = (shifted.re / PI).round();
    let new_z = shifted - PI * a;

    // theta(w + b pi tau) = s^b q^{-b^2} e^{-2 i b w} theta(w), and
    // theta(w + a pi) = s'^a theta(w).
    let mut sign = 1.0;
    if (a as i64).rem_euclid(2) == 1 {
        sign *= kind.pi_sign();
    }
    if (b as i64).rem_euclid(2) == 1 {
        sign *= kind.pi_tau_sign();
    }
    let exponent = -Complex64::i() * PI * tau * (b * b) - 2.0 * Complex64::i() * b * new_z;
    ShiftResult {
        new_kind: kind,
        new_z,
        multiplier: sign * exponent.exp(),
    }
}

/// Half-period law `theta_kind(z + pi tau / 2) = multiplier * theta_new(z)`
/// with `B = q^{-1/4} e^{-iz}`: 1 -> 4 (iB), 2 -> 3 (B), 3 -> 2 (B), 4 -> 1 (iB).
pub fn half_period_shift(kind: ThetaKind, z: Complex64, p: &ModularParam) -> ShiftResult {
    let i = Complex64::i();
    let b = (-i * PI * p.tau() / 4.0 - i * z).exp();
    let (new_kind, multiplier) = match kind {
        ThetaKind::One => (ThetaKind::Four, i * b),
        ThetaKind::Two => (ThetaKind::Three, b),
        ThetaKind::Three => (ThetaKind::Two, b),
        ThetaKind::Four => (ThetaKind::One, i * b),
    };
    ShiftResult {
        new_kind,
        new_z: z,
        multiplier,
    }
}

fn series(
    kind: ThetaKind,
    z: Complex64,
    p: &ModularParam,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let core = series_without_prefactor(kind, z, p, policy)?;
    Ok(if kind.is_odd_family() {
        p.q_quarter() * core
    } else {
        core
    })
}

/// The theta series with the `q^{1/4}` prefactor of theta 1 and theta 2
/// removed (theta 1 keeps its `-i`). Quotients of odd-family thetas are
/// formed from these so that an underflowing `q^{1/4}` cancels exactly.
pub(crate) fn series_without_prefactor(
    kind: ThetaKind,
    z: Complex64,
    p: &ModularParam,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let tau = p.tau();
    let odd = kind.is_odd_family();
    let alternating = kind.is_alternating();

    let exponent = |k: i64| -> f64 {
        if odd {
            (k * (k + 1)) as f64
        } else {
            (k * k) as f64
        }
    };
    let frequency = |k: i64| -> f64 {
        if odd {
            (2 * k + 1) as f64
        } else {
            (2 * k) as f64
        }
    };
    let log_mag = |k: i64| -PI * tau.im * exponent(k) - frequency(k) * z.im;
    let term = |k: i64| -> Complex64 {
        let w = Complex64::i() * (PI * tau * exponent(k) + frequency(k) * z);
        if alternating && k.rem_euclid(2) == 1 {
            -w.exp()
        } else {
            w.exp()
        }
    };
    // Terms are summed in pairs (k, partner(k)) so that symmetric
    // cancellations (e.g. theta_1(0)) are exact.
    let partner = |k: i64| if odd { -1 - k } else { -k };

    let mut sum = Complex64::new(0.0, 0.0);
    let mut max_log = f64::NEG_INFINITY;
    let mut j: i64 = 0;
    let mut pairs = 0usize;
    loop {
        if pairs >= policy.max_terms() {
            return Err(Error::Convergence(format!(
                "{kind} series at z = {z}, {p} not converged after {} terms",
                policy.max_terms()
            )));
        }
        let k_neg = partner(j);
        let mut pair_value = term(j);
        max_log = max_log.max(log_mag(j));
        if k_neg != j {
            pair_value += term(k_neg);
            max_log = max_log.max(log_mag(k_neg));
        }
        if max_log > LOG_OVERFLOW {
            return Err(Error::Convergence(format!(
                "{kind} series terms overflow at z = {z}; reduce the argument first"
            )));
        }
        sum += pair_value;
        pairs += 1;

        let pos_next = j + 1;
        let neg_next = partner(j + 1);
        let r_pos = (log_mag(pos_next + 1) - log_mag(pos_next)).exp();
        let r_neg = (log_mag(neg_next - 1) - log_mag(neg_next)).exp();
        if r_pos < 1.0 && r_neg < 1.0 {
            let tail =
                log_mag(pos_next).exp() / (1.0 - r_pos) + log_mag(neg_next).exp() / (1.0 - r_neg);
            if tail < policy.eps() {
                break;
            }
        }
        j += 1;
    }

    if max_log.exp() > CANCELLATION_LIMIT * sum.norm().max(1.0) {
        return Err(Error::Convergence(format!(
            "{kind} series at z = {z} lost all precision to cancellation; reduce the argument first"
        )));
    }

    Ok(if kind == ThetaKind::One {
        -Complex64::i() * sum
    } else {
        sum
    })
}

fn product(
    kind: ThetaKind,
    z: Complex64,
    p: &ModularParam,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let q = p.q();
    let q2 = q * q;
    let e2 = (2.0 * Complex64::i() * z).exp();
    let em2 = (-2.0 * Complex64::i() * z).exp();
    let euler = qpochhammer(q2, q2, policy)?;
    let pair = |a: Complex64| -> Result<Complex64> {
        Ok(qpochhammer(a * e2, q2, policy)? * qpochhammer(a * em2, q2, policy)?)
    };
    Ok(match kind {
        ThetaKind::One => 2.0 * p.q_quarter() * z.sin() * euler * pair(q2)?,
        ThetaKind::Two => 2.0 * p.q_quarter() * z.cos() * euler * pair(-q2)?,
        ThetaKind::Three => euler * pair(-q)?,
        ThetaKind::Four => euler * pair(q)?,
    })
}
