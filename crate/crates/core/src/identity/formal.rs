//! Exact certification of the identities that need no division.

use std::fmt::Write as _;

use num_traits::One;

use super::registry::IdentityId;
use super::report::{IdentityReport, MismatchRecord, Mode, ReportParams, Status};
use crate::error::{Error, Result};
use crate::formal::{
    format_gaussian, fs_equal, fs_shift, fs_theta, fs_theta_product, gaussian, Comparison,
    Gaussian, GradedSeries, LaurentPoly, Monomial, ShiftKind, Var,
};
use crate::param::ThetaKind;

/// One exact equation `lhs = rhs`.
#[derive(Debug, Clone)]
pub struct SeriesPair {
    pub label: String,
    pub lhs: GradedSeries,
    pub rhs: GradedSeries,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub id: IdentityId,
    pub order: i64,
    pub pairs: Vec<(SeriesPair, Comparison)>,
}

impl Certificate {
    pub fn is_equal(&self) -> bool {
        self.pairs.iter().all(|(_, c)| c.is_equal())
    }

    /// Coefficient tables of both sides, one `grade monomial coefficient`
    /// row per term in lexicographic order, followed by the verdict.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "identity {}", self.id);
        let _ = writeln!(out, "order {}", self.order);
        for (pair, cmp) in &self.pairs {
            let _ = writeln!(out, "\npair {}", pair.label);
            for (side, s) in [("lhs", &pair.lhs), ("rhs", &pair.rhs)] {
                let order = s
                    .order()
                    .map(|o| o.to_string())
                    .unwrap_or_else(|| "exact".into());
                let _ = writeln!(
                    out,
                    "{side} quarter_prefactor={} order={order}",
                    s.quarter_prefactor()
                );
                for (g, poly) in s.absolute_terms() {
                    for (m, c) in poly.iter() {
                        let _ = writeln!(out, "{g}\t{m}\t{}", format_gaussian(c));
                    }
                }
            }
            match cmp {
                Comparison::Equal { order: Some(o) } => {
                    let _ = writeln!(out, "result equal through q^{o}");
                }
                Comparison::Equal { order: None } => {
                    let _ = writeln!(out, "result equal (exact)");
                }
                Comparison::Mismatch(m) => {
                    let _ = writeln!(
                        out,
                        "result mismatch at quarter_grade={} monomial={} lhs={} rhs={}",
                        m.quarter_grade,
                        m.monomial,
                        format_gaussian(&m.lhs),
                        format_gaussian(&m.rhs)
                    );
                }
            }
        }
        out
    }
}

fn constant(prefactor: i64, terms: &[(Monomial, Gaussian)]) -> GradedSeries {
    let mut p = LaurentPoly::zero();
    for (m, c) in terms {
        p.add_term(*m, c.clone());
    }
    GradedSeries::constant(prefactor, p)
}

/// Shift `theta_kind(u | tau)` and grow the input order until the result
/// is known through `q^order`.
fn shifted_theta(kind: ThetaKind, shift: ShiftKind, order: i64) -> Result<GradedSeries> {
    for n in order..=4 * order + 8 {
        match fs_shift(&fs_theta(kind, 1, Monomial::U, n)?, shift, Var::U) {
            Ok(s) if s.order().is_some_and(|o| o >= order) => return Ok(s.truncate(order)),
            Ok(_) | Err(Error::OrderUnderflow(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::OrderUnderflow(order))
}

fn theta(kind: ThetaKind, scale: i64, z: Monomial, order: i64) -> Result<GradedSeries> {
    fs_theta(kind, scale, z, order)
}

/// Both sides of the two-variable theta identity in `u = e^{ix}`,
/// `v = e^{iy}`. With `flip_rhs_sign` the minus inside the right-hand side
/// becomes a plus, which must break the equality.
pub fn thm2_pair(order: i64, flip_rhs_sign: bool) -> Result<SeriesPair> {
    use ThetaKind::*;
    let (u, v) = (Monomial::U, Monomial::V);
    let (s, d) = (Monomial::new(1, 1), Monomial::new(1, -1));
    let t1u = theta(One, 1, u, order)?;
    let t2u = theta(Two, 1, u, order)?;
    let t1v = theta(One, 1, v, order)?;
    let t2v = theta(Two, 1, v, order)?;
    let cross = t1u.mul(&t2v).add(&t1v.mul(&t2u))?;
    let lhs = theta(Two, 2, s, order)?
        .mul(&theta(Three, 2, d, order)?)
        .mul(&cross);
    let t22 = t2u.mul(&t2v);
    let t11 = t1u.mul(&t1v);
    let inner = if flip_rhs_sign {
        t22.add(&t11)?
    } else {
        t22.sub(&t11)?
    };
    let rhs = theta(One, 2, s, order)?
        .mul(&theta(Four, 2, d, order)?)
        .mul(&inner);
    let label = if flip_rhs_sign {
        "two-variable identity, right-hand sign flipped"
    } else {
        "two-variable identity"
    };
    Ok(SeriesPair {
        label: label.into(),
        lhs,
        rhs,
    })
}

/// The exact equations behind a formally certifiable identity.
pub fn formal_pairs(id: IdentityId, order: i64) -> Result<Vec<SeriesPair>> {
    use ThetaKind::*;
    if order < 0 {
        return Err(Error::OrderUnderflow(order));
    }
    let u = Monomial::U;
    let one = Gaussian::one();
    let pairs = match id {
        IdentityId::QuasiPeriod(k) => {
            let base = theta(k, 1, u, order)?;
            let s_pi = if matches!(k, One | Two) { -1 } else { 1 };
            let s_tau = if matches!(k, One | Four) { -1 } else { 1 };
            let by_pi = shifted_theta(k, ShiftKind::PlusPi, order)?;
            let by_tau = shifted_theta(k, ShiftKind::PlusPiTau, order)?;
            // q^{-1} e^{-2iz}
            let m = constant(-4, &[(u.pow(-2), gaussian(s_tau, 0))]);
            vec![
                SeriesPair {
                    label: format!("{k}(z+pi)"),
                    lhs: by_pi,
                    rhs: base.scale(&gaussian(s_pi, 0)),
                },
                SeriesPair {
                    label: format!("{k}(z+pi tau)"),
                    lhs: by_tau,
                    rhs: m.mul(&base),
                },
            ]
        }
        IdentityId::HalfPeriod(k) => {
            let (new, unit) = match k {
                One => (Four, gaussian(0, 1)),
                Two => (Three, one),
                Three => (Two, gaussian(1, 0)),
                Four => (One, gaussian(0, 1)),
            };
            // B = q^{-1/4} e^{-iz}
            let b = constant(-1, &[(u.inverse(), unit)]);
            let lhs = shifted_theta(k, ShiftKind::PlusHalfPiTau, order)?;
            vec![SeriesPair {
                label: format!("{k}(z+pi tau/2)"),
                lhs,
                rhs: b.mul(&theta(new, 1, u, order)?),
            }]
        }
        IdentityId::Duplication12 | IdentityId::Duplication23 => {
            let (a, b) = if id == IdentityId::Duplication12 {
                (One, Four)
            } else {
                (Two, Three)
            };
            let lhs = theta(a, 2, u, order)?
                .mul(&theta(b, 2, u, order)?)
                .scale(&gaussian(2, 0));
            let rhs = theta(Two, 1, Monomial::ONE, order)?.mul(&theta(a, 1, u, order)?);
            vec![SeriesPair {
                label: format!("2 {a}(z|2tau) {b}(z|2tau) = theta2(0) {a}(z)"),
                lhs,
                rhs,
            }]
        }
        IdentityId::TripleProduct(k) => {
            vec![SeriesPair {
                label: format!("{k} series = product"),
                lhs: theta(k, 1, u, order)?,
                rhs: fs_theta_product(k, 1, u, order)?,
            }]
        }
        IdentityId::Thm2 => vec![thm2_pair(order, false)?],
        other => return Err(Error::UnsupportedFormal(other.name())),
    };
    Ok(pairs)
}

/// Compare each pair and summarize as a report.
pub fn certify_pairs(
    id: IdentityId,
    order: i64,
    pairs: Vec<SeriesPair>,
) -> (IdentityReport, Certificate) {
    let mut report = IdentityReport::new(id, Mode::Formal, ReportParams::formal(order));
    let mut compared = Vec::new();
    let mut certified: Option<i64> = None;
    for pair in pairs {
        let cmp = fs_equal(&pair.lhs, &pair.rhs);
        match &cmp {
            Comparison::Equal { order: o } => {
                let o = o.unwrap_or(i64::MAX);
                certified = Some(certified.map_or(o, |c| c.min(o)));
            }
            Comparison::Mismatch(m) => {
                if report.mismatch.is_none() {
                    report.mismatch = Some(MismatchRecord::new(&pair.label, m));
                }
            }
        }
        compared.push((pair, cmp));
    }
    report.samples = compared.len();
    let ok = report.mismatch.is_none() && !compared.is_empty();
    report.status = Status::from_bool(ok);
    report.certified_order = if ok { certified } else { None };
    (
        report,
        Certificate {
            id,
            order,
            pairs: compared,
        },
    )
}

pub fn formal_certificate(id: IdentityId, order: i64) -> Result<(IdentityReport, Certificate)> {
    Ok(certify_pairs(id, order, formal_pairs(id, order)?))
}

/// Exact certification through `q^order`. Identities whose proof divides
/// by theta functions give [`Error::UnsupportedFormal`].
pub fn formal_certify(id: IdentityId, order: i64) -> Result<IdentityReport> {
    formal_certificate(id, order).map(|(r, _)| r)
}
