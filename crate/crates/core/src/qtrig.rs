//! Gosper's `sin_q`, `cos_q` and the derived `tan_q`, `cot_q`, `ssn_q`,
//! `ccs_q`.
//!
//! Each function has two routes. [`qtrig_theta`] evaluates theta quotients
//! at `tau' = -1/tau`; [`qtrig_product`] evaluates the q-shifted factorial
//! products in the nome `q = exp(i pi tau)` directly. The two agree when the
//! principal logarithm of `q` equals `i pi tau`, i.e. for `-1 < Re tau <= 1`
//! (and `-1/2 < Re tau <= 1/2` for `ssn_q`, `ccs_q`, whose products use `q^2`).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::param::{principal_power, ModularParam, ThetaKind, TruncationPolicy};
use crate::theta::{qpochhammer_with_min_factor, reduce_argument, series_without_prefactor};

/// Pole threshold relative to `|theta_2(0 | tau')|`.
const POLE_RELATIVE: f64 = 1e-10;

/// Pole threshold for a single `(1 - a q^n)` factor on the product route.
const POLE_FACTOR: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QTrigKind {
    SinQ,
    CosQ,
    TanQ,
    CotQ,
    SsnQ,
    CcsQ,
}

impl QTrigKind {
    pub const ALL: [QTrigKind; 6] = [
        QTrigKind::SinQ,
        QTrigKind::CosQ,
        QTrigKind::TanQ,
        QTrigKind::CotQ,
        QTrigKind::SsnQ,
        QTrigKind::CcsQ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QTrigKind::SinQ => "sin_q",
            QTrigKind::CosQ => "cos_q",
            QTrigKind::TanQ => "tan_q",
            QTrigKind::CotQ => "cot_q",
            QTrigKind::SsnQ => "ssn_q",
            QTrigKind::CcsQ => "ccs_q",
        }
    }
}

impl fmt::Display for QTrigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QTrigKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QTrigKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown q-trigonometric function {s:?}")))
    }
}

/// Theta-quotient route: `sin_q = theta_1/theta_2(0)`, `cos_q = theta_2/theta_2(0)`,
/// `tan_q = theta_1/theta_2`, `cot_q = theta_2/theta_1`, `ssn_q = theta_4/theta_3(0)`,
/// `ccs_q = theta_3/theta_3(0)`, all at `tau' = -1/tau`.
///
/// Functions with nome `q^2` are obtained by passing `p.scaled(2.0)`.
pub fn qtrig_theta(
    kind: QTrigKind,
    z: Complex64,
    p: &ModularParam,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let tp = p.tau_prime();
    let zero = Complex64::new(0.0, 0.0);
    // All quotients pair odd with odd or even with even thetas, so the common
    // q'^{1/4} prefactor is dropped from both sides.
    let th = |k: ThetaKind, w: Complex64| -> Result<Complex64> {
        let r = reduce_argument(k, w, &tp);
        Ok(r.multiplier * series_without_prefactor(k, r.new_z, &tp, policy)?)
    };
    match kind {
        QTrigKind::SinQ => Ok(th(ThetaKind::One, z)? / th(ThetaKind::Two, zero)?),
        QTrigKind::CosQ => Ok(th(ThetaKind::Two, z)? / th(ThetaKind::Two, zero)?),
        QTrigKind::SsnQ => Ok(th(ThetaKind::Four, z)? / th(ThetaKind::Three, zero)?),
        QTrigKind::CcsQ => Ok(th(ThetaKind::Three, z)? / th(ThetaKind::Three, zero)?),
        QTrigKind::TanQ | QTrigKind::CotQ => {
            let (num, den) = if kind == QTrigKind::TanQ {
                (ThetaKind::One, ThetaKind::Two)
            } else {
                (ThetaKind::Two, ThetaKind::One)
            };
            let threshold = POLE_RELATIVE * th(ThetaKind::Two, zero)?.norm();
            let r = reduce_argument(den, z, &tp);
            let den_reduced = series_without_prefactor(den, r.new_z, &tp, policy)?;
            if den_reduced.norm() < threshold {
                return Err(Error::Pole(format!("{kind} has a pole at z = {z}")));
            }
            Ok(th(num, z)? / (r.multiplier * den_reduced))
        }
    }
}

/// Product route in the nome `q`, evaluated at `z = pi * z_over_pi`:
///
/// `sin_q(pi w) = (q^{2-2w}; q^2)(q^{2w}; q^2) / (q; q^2)^2 * q^{(w-1/2)^2}`,
/// `cos_q(pi w) = (q^{1-2w}; q^2)(q^{1+2w}; q^2) / (q; q^2)^2 * q^{w^2}`,
/// `tan_q(pi w)` is their quotient with the prefactor `q^{1/4-w}`. `ssn_q` and
/// `ccs_q` are the quotients of the `q^2` and `q` products.
///
/// Non-integer powers of `q` use the principal logarithm.
pub fn qtrig_product(
    kind: QTrigKind,
    z_over_pi: Complex64,
    q: Complex64,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let qn = q.norm();
    if !(qn > 0.0 && qn < 1.0) {
        return Err(Error::Domain(format!(
            "product route needs 0 < |q| < 1, got |q| = {qn}"
        )));
    }
    let w = z_over_pi;
    let pole = |what: &str| {
        Error::Pole(format!(
            "{kind} has a pole at z = pi * {w} ({what} vanishes)"
        ))
    };
    match kind {
        QTrigKind::SinQ => sin_product(w, q, policy).map(|(v, _)| v),
        QTrigKind::CosQ => cos_product(w, q, policy).map(|(v, _)| v),
        QTrigKind::TanQ => {
            let (s, _) = sin_numerator(w, q, policy)?;
            let (c, c_min) = cos_numerator(w, q, policy)?;
            if c_min < POLE_FACTOR {
                return Err(pole("cos_q"));
            }
            Ok(s / c * principal_power(q, 0.25 - w)?)
        }
        QTrigKind::CotQ => {
            let (s, s_min) = sin_numerator(w, q, policy)?;
            let (c, _) = cos_numerator(w, q, policy)?;
            if s_min < POLE_FACTOR {
                return Err(pole("sin_q"));
            }
            Ok(c / s * principal_power(q, w - 0.25)?)
        }
        QTrigKind::SsnQ => {
            let (den, den_min) = sin_product(w, q, policy)?;
            if den_min < POLE_FACTOR {
                return Err(pole("sin_q"));
            }
            Ok(sin_product(w, q * q, policy)?.0 / den)
        }
        QTrigKind::CcsQ => {
            let (den, den_min) = cos_product(w, q, policy)?;
            if den_min < POLE_FACTOR {
                return Err(pole("cos_q"));
            }
            Ok(cos_product(w, q * q, policy)?.0 / den)
        }
    }
}

/// `|theta route - product route|` at the same point; the product route
/// receives `q = exp(i pi tau)` and `z / pi`.
pub fn qtrig_crosscheck(
    kind: QTrigKind,
    z: Complex64,
    p: &ModularParam,
    policy: &TruncationPolicy,
) -> Result<f64> {
    let a = qtrig_theta(kind, z, p, policy)?;
    let b = qtrig_product(kind, z / PI, p.q(), policy)?;
    Ok((a - b).norm())
}

/// Zeros of `sin_q` and `cos_q` together (the zeros and poles of `tan_q` and
/// `cot_q`): `(pi/2) Z + pi tau' Z`.
pub fn tan_singular_lattice(p: &ModularParam) -> Lattice {
    Lattice::new(Complex64::new(0.0, 0.0), PI / 2.0, PI * p.tau_prime().tau())
}

fn pair_product(
    w1: Complex64,
    w2: Complex64,
    q: Complex64,
    policy: &TruncationPolicy,
) -> Result<(Complex64, f64)> {
    let q2 = q * q;
    let (a, amin) = qpochhammer_with_min_factor(principal_power(q, w1)?, q2, policy)?;
    let (b, bmin) = qpochhammer_with_min_factor(principal_power(q, w2)?, q2, policy)?;
    Ok((a * b, amin.min(bmin)))
}

fn sin_numerator(
    w: Complex64,
    q: Complex64,
    policy: &TruncationPolicy,
) -> Result<(Complex64, f64)> {
    pair_product(2.0 - 2.0 * w, 2.0 * w, q, policy)
}

fn cos_numerator(
    w: Complex64,
    q: Complex64,
    policy: &TruncationPolicy,
) -> Result<(Complex64, f64)> {
    pair_product(1.0 - 2.0 * w, 1.0 + 2.0 * w, q, policy)
}

fn normalizer(q: Complex64, policy: &TruncationPolicy) -> Result<Complex64> {
    let (v, _) = qpochhammer_with_min_factor(q, q * q, policy)?;
    Ok(v * v)
}

fn sin_product(w: Complex64, q: Complex64, policy: &TruncationPolicy) -> Result<(Complex64, f64)> {
    let (num, min) = sin_numerator(w, q, policy)?;
    let half = w - 0.5;
    Ok((
        num / normalizer(q, policy)? * principal_power(q, half * half)?,
        min,
    ))
}

fn cos_product(w: Complex64, q: Complex64, policy: &TruncationPolicy) -> Result<(Complex64, f64)> {
    let (num, min) = cos_numerator(w, q, policy)?;
    Ok((
        num / normalizer(q, policy)? * principal_power(q, w * w)?,
        min,
    ))
}
