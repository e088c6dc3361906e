//! The modular parameter, its nome, and the truncation policy shared by every
//! numeric evaluator.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point `tau` of the upper half-plane together with its nome
/// `q = exp(i pi tau)` and quarter-nome `exp(i pi tau / 4)`.
///
/// The quarter-nome is always the exponential, never a root of `q`, so the
/// `q^{1/4}` prefactors of theta 1 and theta 2 carry no branch ambiguity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularParam {
    tau: Complex64,
    q: Complex64,
    q_quarter: Complex64,
}

impl ModularParam {
    pub fn new(tau: Complex64) -> Result<Self> {
        if !(tau.re.is_finite() && tau.im.is_finite()) {
            return Err(Error::Domain(format!("tau = {tau} is not finite")));
        }
        if tau.im <= 0.0 {
            return Err(Error::Domain(format!(
                "Im(tau) must be positive, got tau = {tau}"
            )));
        }
        let i_pi_tau = Complex64::i() * PI * tau;
        let q = i_pi_tau.exp();
        if q.norm() >= 1.0 {
            return Err(Error::Domain(format!("|q| rounds to 1 for tau = {tau}")));
        }
        Ok(Self {
            tau,
            q,
            q_quarter: (i_pi_tau / 4.0).exp(),
        })
    }

    /// Parameter attached to a real nome `q` in `(0, 1)`, i.e. `tau = -i ln(q) / pi`.
    pub fn from_real_nome(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Domain(format!(
                "real nome must lie in (0, 1), got {q}"
            )));
        }
        Self::new(Complex64::new(0.0, -q.ln() / PI))
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn q_quarter(&self) -> Complex64 {
        self.q_quarter
    }

    /// The parameter `-1/tau`.
    pub fn tau_prime(&self) -> Self {
        // Im(-1/tau) = Im(tau)/|tau|^2 > 0, so this cannot fail for a valid tau.
        Self::new(-self.tau.inv()).expect("-1/tau stays in the upper half-plane")
    }

    /// The parameter `factor * tau`; `factor = 2` gives the nome `q^2`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.tau * factor)
    }

    /// `q^w` taken as `exp(i pi tau w)`, consistent with this parameter.
    pub fn nome_power(&self, w: Complex64) -> Complex64 {
        (Complex64::i() * PI * self.tau * w).exp()
    }
}

impl fmt::Display for ModularParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau={},{}", self.tau.re, self.tau.im)
    }
}

pub fn make_param(tau: Complex64) -> Result<ModularParam> {
    ModularParam::new(tau)
}

pub fn tau_prime(p: &ModularParam) -> ModularParam {
    p.tau_prime()
}

/// `exp(w * Log q)` with the principal logarithm.
pub fn principal_power(q: Complex64, w: Complex64) -> Result<Complex64> {
    if q == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("principal power of q = 0".into()));
    }
    if w == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok((w * q.ln()).exp())
}

/// Stopping rule for every infinite sum and product: stop once the tail
/// bound drops below `eps`, fail once `max_terms` terms have been used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    eps: f64,
    max_terms: usize,
}

impl TruncationPolicy {
    pub fn new(eps: f64, max_terms: usize) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::Domain(format!("eps must be positive, got {eps}")));
        }
        if max_terms == 0 {
            return Err(Error::Domain("max_terms must be at least 1".into()));
        }
        Ok(Self { eps, max_terms })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            eps: 1e-16,
            max_terms: 256,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ThetaKind {
    One,
    Two,
    Three,
    Four,
}

impl ThetaKind {
    pub const ALL: [ThetaKind; 4] = [
        ThetaKind::One,
        ThetaKind::Two,
        ThetaKind::Three,
        ThetaKind::Four,
    ];

    pub fn from_index(index: u8) -> Result<Self> {
        match index {
            1 => Ok(ThetaKind::One),
            2 => Ok(ThetaKind::Two),
            3 => Ok(ThetaKind::Three),
            4 => Ok(ThetaKind::Four),
            _ => Err(Error::Domain(format!(
                "theta index must be 1..=4, got {index}"
            ))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            ThetaKind::One => 1,
            ThetaKind::Two => 2,
            ThetaKind::Three => 3,
            ThetaKind::Four => 4,
        }
    }

    /// Theta 1 and theta 2 sum over `e^{(2k+1) i z}`; theta 3 and 4 over `e^{2k i z}`.
    pub(crate) fn is_odd_family(self) -> bool {
        matches!(self, ThetaKind::One | ThetaKind::Two)
    }

    pub(crate) fn is_alternating(self) -> bool {
        matches!(self, ThetaKind::One | ThetaKind::Four)
    }

    /// Sign picked up under `z -> z + pi`.
    pub(crate) fn pi_sign(self) -> f64 {
        if self.is_odd_family() {
            -1.0
        } else {
            1.0
        }
    }

    /// Sign in front of `q^{-1} e^{-2iz}` under `z -> z + pi tau`.
    pub(crate) fn pi_tau_sign(self) -> f64 {
        if self.is_alternating() {
            -1.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for ThetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta{}", self.index())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn nome_at_tau_i() {
        let p = make_param(c(0.0, 1.0)).unwrap();
        let q = (-PI).exp();
        assert!((p.q() - q).norm() < 1e-16);
        assert!((p.q() - 0.0432139).norm() < 1e-7);
        let qq = (-PI / 4.0).exp();
        assert!((p.q_quarter() - qq).norm() < 1e-15);
        assert!((p.q_quarter() - 0.4559381).norm() < 1e-7);
    }

    #[test]
    fn lower_half_plane_rejected() {
        assert!(matches!(make_param(c(0.0, -1.0)), Err(Error::Domain(_))));
        assert!(matches!(make_param(c(0.3, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(
            make_param(c(f64::NAN, 1.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tau_prime_examples() {
        let p = make_param(c(0.0, 1.0)).unwrap();
        assert!((tau_prime(&p).tau() - c(0.0, 1.0)).norm() < 1e-16);

        let p = make_param(c(0.0, 2.0)).unwrap();
        assert!((tau_prime(&p).tau() - c(0.0, 0.5)).norm() < 1e-16);

        let p = make_param(c(0.3, 1.1)).unwrap();
        let d = 0.3 * 0.3 + 1.1 * 1.1;
        let expected = c(-0.3 / d, 1.1 / d);
        assert!((tau_prime(&p).tau() - expected).norm() < 1e-15);
    }

    #[test]
    fn principal_power_examples() {
        assert!((principal_power(c(0.25, 0.0), c(0.5, 0.0)).unwrap() - 0.5).norm() < 1e-16);
        assert_eq!(
            principal_power(c(0.3, -0.7), c(0.0, 0.0)).unwrap(),
            c(1.0, 0.0)
        );
        let q = c((-PI).exp(), 0.0);
        let got = principal_power(q, c(0.25, 0.0)).unwrap();
        assert!((got - (-PI / 4.0).exp()).norm() < 1e-15);
        assert!(matches!(
            principal_power(c(0.0, 0.0), c(1.0, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn policy_validation() {
        assert!(TruncationPolicy::new(0.0, 10).is_err());
        assert!(TruncationPolicy::new(1e-10, 0).is_err());
        let d = TruncationPolicy::default();
        assert_eq!((d.eps(), d.max_terms()), (1e-16, 256));
    }

    #[test]
    fn theta_kind_index_roundtrip() {
        for k in ThetaKind::ALL {
            assert_eq!(ThetaKind::from_index(k.index()).unwrap(), k);
        }
        assert!(ThetaKind::from_index(0).is_err());
        assert!(ThetaKind::from_index(5).is_err());
    }

    proptest! {
        #[test]
        fn quarter_nome_fourth_power(re in -2.0f64..2.0, im in 0.05f64..3.0) {
            let p = make_param(c(re, im)).unwrap();
            let q4 = p.q_quarter().powi(4);
            prop_assert!((q4 - p.q()).norm() <= 1e-14 * p.q().norm());
        }

        #[test]
        fn tau_prime_is_involution(re in -2.0f64..2.0, im in 0.05f64..3.0) {
            let p = make_param(c(re, im)).unwrap();
            let back = p.tau_prime().tau_prime();
            prop_assert!((back.tau() - p.tau()).norm() <= 1e-14 * p.tau().norm());
        }

        #[test]
        fn principal_power_adds_exponents(q in 0.001f64..0.999, a in -3.0f64..3.0, b in -3.0f64..3.0) {
            let q = c(q, 0.0);
            let lhs = principal_power(q, c(a + b, 0.0)).unwrap();
            let rhs = principal_power(q, c(a, 0.0)).unwrap() * principal_power(q, c(b, 0.0)).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-13 * lhs.norm());
        }
    }
}
