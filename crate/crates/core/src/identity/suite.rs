use num_complex::Complex64;

use super::formal::formal_certify;
use super::numeric::{constrained_z, numeric_residual, pole_distance, Inputs, POLE_DISTANCE};
use super::plan::SamplePlan;
use super::registry::{Constraint, IdentityId};
use super::report::{FailureRecord, IdentityReport, Mode, ReportParams, Status, TrendPoint};
use crate::error::{Error, Result};
use crate::param::{ModularParam, TruncationPolicy};

/// Real nomes approaching 1 for the limit identities.
pub const CLASSICAL_NOMES: [f64; 3] = [0.9, 0.99, 0.999];

/// Largest residual allowed at the last nome of a limit identity.
pub const CLASSICAL_FINAL_TOLERANCE: f64 = 1e-2;

fn fmt_c(z: Complex64) -> String {
    format!("{},{}", z.re, z.im)
}

fn describe(inputs: &Inputs, with_y: bool, with_z: bool) -> String {
    let mut s = format!("x={}", fmt_c(inputs.x));
    if with_y {
        s += &format!(" y={}", fmt_c(inputs.y));
    }
    if let (true, Some(z)) = (with_z, inputs.z) {
        s += &format!(" z={}", fmt_c(z));
    }
    s + &format!(" tau={}", fmt_c(inputs.tau))
}

fn uses_y(id: IdentityId) -> bool {
    matches!(
        id,
        IdentityId::Thm2
            | IdentityId::Thm1Tan
            | IdentityId::Thm1Cot
            | IdentityId::CorCot
            | IdentityId::CorTan
            | IdentityId::FConstancy
            | IdentityId::ClassicalLimitTan
            | IdentityId::ClassicalLimitCot
    )
}

struct Collected {
    accepted: Vec<(Inputs, f64)>,
    failures: Vec<FailureRecord>,
    aborted: bool,
}

/// Draw `plan.count` accepted samples at one `tau` and evaluate each.
///
/// Samples near a pole, or whose evaluation reports one, are redrawn up to
/// `10 * count` times. Any other error ends sampling at this `tau`, since
/// the remaining samples would hit the same regime.
fn collect(
    id: IdentityId,
    plan: &SamplePlan,
    tau: Complex64,
    stream: u64,
    policy: &TruncationPolicy,
) -> Collected {
    let mut out = Collected {
        accepted: Vec::new(),
        failures: Vec::new(),
        aborted: false,
    };
    let constraint = plan.constraint.unwrap_or(id.constraint());
    let pinned = plan.is_pinned();
    let mut rng = plan.rng(stream);
    let budget = 10 * plan.count;
    let mut retries = 0;
    let (wy, wz) = (uses_y(id), has_z(id));
    let fail = |out: &mut Collected, inputs: String, e: Error| {
        out.failures.push(FailureRecord {
            inputs,
            residual: None,
            error: Some(e.to_string()),
        });
        out.aborted = true;
    };
    while out.accepted.len() < plan.count {
        if retries > budget {
            let msg = format!("gave up after {retries} samples rejected near poles");
            fail(&mut out, format!("tau={}", fmt_c(tau)), Error::Pole(msg));
            break;
        }
        let (x, y) = plan.draw(&mut rng);
        let mut inputs = Inputs::new(x, y, tau);
        if wz {
            inputs.z = Some(constrained_z(constraint, x, y));
        }
        if !pinned {
            match pole_distance(id, &inputs) {
                Ok(d) if d < POLE_DISTANCE => {
                    retries += 1;
                    continue;
                }
                Ok(_) => {}
                Err(e) => {
                    fail(&mut out, describe(&inputs, wy, wz), e);
                    break;
                }
            }
        }
        match numeric_residual(id, &inputs, policy) {
            Ok(r) => out.accepted.push((inputs, r)),
            Err(Error::Pole(_)) if !pinned => retries += 1,
            Err(e) => {
                fail(&mut out, describe(&inputs, wy, wz), e);
                break;
            }
        }
    }
    out
}

fn has_z(id: IdentityId) -> bool {
    id.constraint() != Constraint::None
}

/// Numeric verification of `id` over `plan` with normalized tolerance `tol`.
///
/// Limit identities ignore `plan.tau_set` and run at the real nomes in
/// [`CLASSICAL_NOMES`]; they pass when the residual strictly decreases and
/// ends at or below [`CLASSICAL_FINAL_TOLERANCE`].
pub fn numeric_verify(
    id: IdentityId,
    plan: &SamplePlan,
    tol: f64,
    policy: &TruncationPolicy,
) -> Result<IdentityReport> {
    plan.validate()?;
    if id.is_limit() {
        return classical_limit(id, plan, policy);
    }
    let mut report = IdentityReport::new(
        id,
        Mode::Numeric,
        ReportParams::numeric(&plan.tau_set, plan.seed, tol),
    );
    let mut max = 0f64;
    let mut ok = true;
    for (ti, tau) in plan.tau_set.iter().copied().enumerate() {
        let c = collect(id, plan, tau, id.stream_index() * 64 + ti as u64, policy);
        for (inputs, r) in &c.accepted {
            max = if r.is_finite() {
                max.max(*r)
            } else {
                f64::INFINITY
            };
            if r.is_nan() || *r > tol {
                ok = false;
                report.push_failure(FailureRecord {
                    inputs: describe(inputs, uses_y(id), has_z(id)),
                    residual: r.is_finite().then_some(*r),
                    error: None,
                });
            }
        }
        report.samples += c.accepted.len();
        ok &= !c.aborted;
        for f in c.failures {
            report.push_failure(f);
        }
    }
    report.max_abs_residual = Some(max);
    report.status = Status::from_bool(ok && report.samples > 0);
    Ok(report)
}

fn classical_limit(
    id: IdentityId,
    plan: &SamplePlan,
    policy: &TruncationPolicy,
) -> Result<IdentityReport> {
    let params: Vec<ModularParam> = CLASSICAL_NOMES
        .iter()
        .map(|q| ModularParam::from_real_nome(*q))
        .collect::<Result<_>>()?;
    let taus: Vec<Complex64> = params.iter().map(|p| p.tau()).collect();
    let mut report = IdentityReport::new(
        id,
        Mode::Numeric,
        ReportParams::numeric(&taus, plan.seed, CLASSICAL_FINAL_TOLERANCE),
    );
    let mut ok = true;
    for (q, tau) in CLASSICAL_NOMES.iter().zip(&taus) {
        // Same stream for every nome so the trend compares identical points.
        let c = collect(id, plan, *tau, id.stream_index() * 64, policy);
        let worst = c.accepted.iter().map(|(_, r)| *r).fold(0f64, |a, r| {
            if r.is_nan() {
                f64::INFINITY
            } else {
                a.max(r)
            }
        });
        report.samples += c.accepted.len();
        report.limit_trend.push(TrendPoint {
            q: *q,
            residual: worst,
        });
        if c.aborted || c.accepted.is_empty() {
            ok = false;
        }
        for f in c.failures {
            report.push_failure(f);
        }
    }
    let trend = &report.limit_trend;
    let decreasing = trend.windows(2).all(|w| w[1].residual < w[0].residual);
    let last = trend.last().map(|t| t.residual).unwrap_or(f64::INFINITY);
    if !decreasing {
        let seq: Vec<String> = trend
            .iter()
            .map(|t| format!("q={}: {:e}", t.q, t.residual))
            .collect();
        report.push_failure(FailureRecord {
            inputs: seq.join("; "),
            residual: Some(last),
            error: Some("residual is not strictly decreasing as q -> 1".into()),
        });
    }
    report.max_abs_residual = Some(last);
    report.status = Status::from_bool(ok && decreasing && last <= CLASSICAL_FINAL_TOLERANCE);
    Ok(report)
}

/// The given identities in each applicable mode: formal certification
/// first (at `order`, or each identity's default), then numeric sampling.
/// Per-identity errors become failed reports; the suite never aborts.
pub fn run_suite_for(
    ids: &[IdentityId],
    plan: &SamplePlan,
    tol: f64,
    order: Option<i64>,
) -> Result<Vec<IdentityReport>> {
    plan.validate()?;
    let policy = TruncationPolicy::default();
    let mut out = Vec::new();
    for id in ids.iter().copied() {
        if id.supports_formal() {
            let n = order.unwrap_or(id.default_order());
            out.push(formal_certify(id, n).unwrap_or_else(|e| {
                let mut r = IdentityReport::new(id, Mode::Formal, ReportParams::formal(n));
                r.push_failure(FailureRecord {
                    inputs: format!("order={n}"),
                    residual: None,
                    error: Some(e.to_string()),
                });
                r
            }));
        }
        out.push(numeric_verify(id, plan, tol, &policy)?);
    }
    Ok(out)
}

pub fn run_suite_with_order(
    plan: &SamplePlan,
    tol: f64,
    order: Option<i64>,
) -> Result<Vec<IdentityReport>> {
    run_suite_for(&IdentityId::all(), plan, tol, order)
}

/// Whole registry at default orders.
pub fn run_suite(plan: &SamplePlan, tol: f64) -> Result<Vec<IdentityReport>> {
    run_suite_with_order(plan, tol, None)
}
