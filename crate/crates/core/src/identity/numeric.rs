//! Double-precision residuals of each registered identity.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::registry::{Constraint, IdentityId};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::param::{ModularParam, ThetaKind, TruncationPolicy};
use crate::qtrig::{qtrig_theta, tan_singular_lattice, QTrigKind};
use crate::theta::{theta_eval, theta_eval_reduced, theta_null, Method};

/// Samples closer than this to a zero or pole of a denominator are redrawn.
pub const POLE_DISTANCE: f64 = 1e-3;

/// Evaluation point. `z` is derived from the constraint when absent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inputs {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Option<Complex64>,
    pub tau: Complex64,
}

impl Inputs {
    pub fn new(x: Complex64, y: Complex64, tau: Complex64) -> Self {
        Self { x, y, z: None, tau }
    }

    pub(crate) fn z_for(&self, c: Constraint) -> Complex64 {
        self.z.unwrap_or_else(|| constrained_z(c, self.x, self.y))
    }
}

pub(crate) fn constrained_z(c: Constraint, x: Complex64, y: Complex64) -> Complex64 {
    match c {
        Constraint::None => Complex64::new(0.0, 0.0),
        Constraint::SumPi => Complex64::new(PI, 0.0) - x - y,
        Constraint::SumHalfPi => Complex64::new(PI / 2.0, 0.0) - x - y,
    }
}

/// `|a - b| / max(1, |a|, |b|)`.
pub fn normalized(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

struct Ctx<'a> {
    p: ModularParam,
    p2: ModularParam,
    policy: &'a TruncationPolicy,
}

impl Ctx<'_> {
    fn raw(&self, k: ThetaKind, z: Complex64) -> Result<Complex64> {
        theta_eval(k, z, &self.p, self.policy, Method::Series)
    }

    fn th(&self, k: ThetaKind, z: Complex64) -> Result<Complex64> {
        theta_eval_reduced(k, z, &self.p, self.policy)
    }

    fn th2(&self, k: ThetaKind, z: Complex64) -> Result<Complex64> {
        theta_eval_reduced(k, z, &self.p2, self.policy)
    }

    fn qt(&self, k: QTrigKind, z: Complex64) -> Result<Complex64> {
        qtrig_theta(k, z, &self.p, self.policy)
    }

    fn qt2(&self, k: QTrigKind, z: Complex64) -> Result<Complex64> {
        qtrig_theta(k, z, &self.p2, self.policy)
    }
}

/// Normalized residual of `id` at `inputs`.
///
/// Single-variable identities read their argument from `inputs.x`. For the
/// limit identities the classical statement is evaluated with `tan_q`/`cot_q`
/// at the given `tau`.
pub fn numeric_residual(id: IdentityId, inputs: &Inputs, policy: &TruncationPolicy) -> Result<f64> {
    use QTrigKind::*;
    use ThetaKind::*;
    let p = ModularParam::new(inputs.tau)?;
    let ctx = Ctx {
        p2: p.scaled(2.0)?,
        p,
        policy,
    };
    let (x, y) = (inputs.x, inputs.y);
    let z = inputs.z_for(id.constraint());
    let i = Complex64::i();
    let q = ctx.p.q();
    let pt = PI * ctx.p.tau();

    match id {
        IdentityId::QuasiPeriod(k) => {
            let (s_pi, s_tau) = match k {
                One => (-1.0, -1.0),
                Two => (-1.0, 1.0),
                Three => (1.0, 1.0),
                Four => (1.0, -1.0),
            };
            let base = ctx.raw(k, x)?;
            let r1 = normalized(ctx.raw(k, x + PI)?, s_pi * base);
            let m = s_tau / q * (-2.0 * i * x).exp();
            let r2 = normalized(ctx.raw(k, x + pt)?, m * base);
            Ok(r1.max(r2))
        }
        IdentityId::HalfPeriod(k) => {
            let b = (-i * pt / 4.0).exp() * (-i * x).exp();
            let (new, m) = match k {
                One => (Four, i * b),
                Two => (Three, b),
                Three => (Two, b),
                Four => (One, i * b),
            };
            Ok(normalized(ctx.raw(k, x + pt / 2.0)?, m * ctx.raw(new, x)?))
        }
        IdentityId::Duplication12 | IdentityId::Duplication23 => {
            let (a, b) = if id == IdentityId::Duplication12 {
                (One, Four)
            } else {
                (Two, Three)
            };
            let lhs = 2.0 * ctx.th2(a, x)? * ctx.th2(b, x)?;
            let rhs = theta_null(Two, &ctx.p, policy)? * ctx.th(a, x)?;
            Ok(normalized(lhs, rhs))
        }
        IdentityId::TripleProduct(k) => {
            let s = ctx.raw(k, x)?;
            let prod = theta_eval(k, x, &ctx.p, policy, Method::Product)?;
            Ok(normalized(s, prod))
        }
        IdentityId::Thm2 => {
            let (l, r) = thm2_sides(&ctx, x, y)?;
            Ok(normalized(l, r))
        }
        IdentityId::Thm1Tan | IdentityId::Thm1Cot | IdentityId::CorCot | IdentityId::CorTan => {
            let cc = ctx.qt(CcsQ, x - y)?;
            let ss = ctx.qt(SsnQ, x - y)?;
            let kind = if matches!(id, IdentityId::Thm1Tan | IdentityId::CorTan) {
                TanQ
            } else {
                CotQ
            };
            let (a, b, g) = (ctx.qt2(kind, x)?, ctx.qt2(kind, y)?, ctx.qt(kind, z)?);
            let (lhs, rhs) = if matches!(id, IdentityId::Thm1Tan | IdentityId::CorCot) {
                (cc * a + cc * b + ss * g, ss * a * b * g)
            } else {
                (ss * a * b + cc * b * g + cc * g * a, ss)
            };
            Ok(normalized(lhs, rhs))
        }
        IdentityId::CosqShift => {
            let cz = ctx.qt(CosQ, x)?;
            let r1 = normalized(cz, ctx.qt(SinQ, c(PI / 2.0) - x)?);
            let r2 = normalized(cz, ctx.qt(SinQ, c(PI / 2.0) + x)?);
            Ok(r1.max(r2))
        }
        IdentityId::FConstancy => Ok((f_ratio(&ctx, x, y)? - 1.0).norm()),
        IdentityId::ClassicalLimitTan => {
            let (a, b, g) = (ctx.qt(TanQ, x)?, ctx.qt(TanQ, y)?, ctx.qt(TanQ, z)?);
            Ok(normalized(a + b + g, a * b * g))
        }
        IdentityId::ClassicalLimitCot => {
            let (a, b, g) = (ctx.qt(CotQ, x)?, ctx.qt(CotQ, y)?, ctx.qt(CotQ, z)?);
            Ok(normalized(a * b + b * g + g * a, c(1.0)))
        }
    }
}

/// Both sides of the two-variable theta identity
/// `theta2(x+y|2t) theta3(x-y|2t) (theta1(x)theta2(y) + theta1(y)theta2(x))
///  = theta1(x+y|2t) theta4(x-y|2t) (theta2(x)theta2(y) - theta1(x)theta1(y))`.
fn thm2_sides(ctx: &Ctx<'_>, x: Complex64, y: Complex64) -> Result<(Complex64, Complex64)> {
    use ThetaKind::*;
    let (s, d) = (x + y, x - y);
    let (t1x, t2x, t1y, t2y) = (
        ctx.th(One, x)?,
        ctx.th(Two, x)?,
        ctx.th(One, y)?,
        ctx.th(Two, y)?,
    );
    let lhs = ctx.th2(Two, s)? * ctx.th2(Three, d)? * (t1x * t2y + t1y * t2x);
    let rhs = ctx.th2(One, s)? * ctx.th2(Four, d)? * (t2x * t2y - t1x * t1y);
    Ok((lhs, rhs))
}

fn f_ratio(ctx: &Ctx<'_>, x: Complex64, y: Complex64) -> Result<Complex64> {
    use ThetaKind::*;
    let tau = ctx.p.tau();
    if Lattice::new(c(0.0), PI, PI * tau).distance(y) < POLE_DISTANCE {
        return Err(Error::Pole(format!("theta1(y) vanishes at y = {y}")));
    }
    if g_zero_distance(x, y, tau) < POLE_DISTANCE {
        return Err(Error::Pole(format!("g vanishes near x = {x}")));
    }
    let (s, d) = (x + y, x - y);
    let a = ctx.th2(One, s)? * ctx.th2(Four, d)?;
    let (t1x, t2x, t1y, t2y) = (
        ctx.th(One, x)?,
        ctx.th(Two, x)?,
        ctx.th(One, y)?,
        ctx.th(Two, y)?,
    );
    let f = a * t2x * t2y - ctx.th2(Two, s)? * ctx.th2(Three, d)? * (t1x * t2y + t1y * t2x);
    let g = a * t1x * t1y;
    Ok(f / g)
}

/// Distance from `x` to the zeros `0, pi tau, pi - y, y + pi tau` of `g`
/// modulo the periods `pi` and `2 pi tau`.
pub fn g_zero_distance(x: Complex64, y: Complex64, tau: Complex64) -> f64 {
    let pt = PI * tau;
    [c(0.0), pt, c(PI) - y, y + pt]
        .into_iter()
        .map(|o| Lattice::new(o, PI, 2.0 * pt).distance(x))
        .fold(f64::INFINITY, f64::min)
}

/// `F(x) = f(x) / g(x)` from the elliptic-function argument for the
/// two-variable theta identity; identically 1.
pub fn f_ratio_probe(
    x: Complex64,
    y: Complex64,
    tau: Complex64,
    policy: &TruncationPolicy,
) -> Result<Complex64> {
    let p = ModularParam::new(tau)?;
    let ctx = Ctx {
        p2: p.scaled(2.0)?,
        p,
        policy,
    };
    f_ratio(&ctx, x, y)
}

/// Smallest distance from any evaluation point of `id` to a pole or zero of
/// a denominator it divides by. `f64::INFINITY` for entire identities.
pub(crate) fn pole_distance(id: IdentityId, inputs: &Inputs) -> Result<f64> {
    let p = ModularParam::new(inputs.tau)?;
    let z = inputs.z_for(id.constraint());
    let d = match id {
        IdentityId::Thm1Tan | IdentityId::Thm1Cot | IdentityId::CorCot | IdentityId::CorTan => {
            let l2 = tan_singular_lattice(&p.scaled(2.0)?);
            let l1 = tan_singular_lattice(&p);
            l2.distance(inputs.x)
                .min(l2.distance(inputs.y))
                .min(l1.distance(z))
        }
        IdentityId::ClassicalLimitTan | IdentityId::ClassicalLimitCot => {
            let l1 = tan_singular_lattice(&p);
            l1.distance(inputs.x)
                .min(l1.distance(inputs.y))
                .min(l1.distance(z))
        }
        IdentityId::FConstancy => {
            let ly = Lattice::new(c(0.0), PI, PI * p.tau()).distance(inputs.y);
            ly.min(g_zero_distance(inputs.x, inputs.y, p.tau()))
        }
        _ => f64::INFINITY,
    };
    Ok(d)
}
