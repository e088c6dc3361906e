//! Truncated series in the nome with Laurent-polynomial coefficients.
//!
//! A [`GradedSeries`] stands for `q^{P/4} * sum_{0 <= n <= N} c_n q^n + O(q^{N+1})`
//! where `P` is the quarter-prefactor and `N` the order. Grades are compared
//! in quarter-powers of `q` throughout, so `q^{1/4}`, `q^{1/2}` and `q` never
//! need fractional bookkeeping.

use std::collections::{BTreeMap, BTreeSet};

use super::laurent::{Gaussian, LaurentPoly, Monomial};
use crate::error::{Error, Result};

/// Order of a series with no truncated tail.
pub const EXACT_ORDER: i64 = i64::MAX;

/// What is known about the terms a truncated series has dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tail {
    /// Nothing was dropped.
    Exact,
    /// Dropped terms can sit anywhere in the Laurent variables.
    Unknown,
    /// The full series is a bilateral sum over an integer `k` whose term has
    /// monomial `step^k * offset` at absolute quarter-grade `a k^2 + b k + c`,
    /// and exactly the `k` in `known` are stored. Theta series have this shape.
    Winding(WindingTail),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct WindingTail {
    pub step: Monomial,
    pub offset: Monomial,
    pub quad: [i64; 3],
    pub known: Option<(i64, i64)>,
}

impl WindingTail {
    fn grade(&self, k: i64) -> i128 {
        let [a, b, c] = self.quad.map(i128::from);
        let k = i128::from(k);
        a * k * k + b * k + c
    }

    /// Smallest grade among the dropped indices.
    fn tail_min(&self) -> i128 {
        let [a, b, _] = self.quad;
        let vertex = -(b as f64) / (2.0 * a as f64);
        let near_vertex = |lo: Option<i64>, hi: Option<i64>| -> i128 {
            let mut cands = vec![vertex.floor() as i64, vertex.ceil() as i64];
            if let Some(lo) = lo {
                cands.push(lo);
            }
            if let Some(hi) = hi {
                cands.push(hi);
            }
            cands
                .into_iter()
                .filter(|k| lo.is_none_or(|lo| *k >= lo) && hi.is_none_or(|hi| *k <= hi))
                .map(|k| self.grade(k))
                .min()
                .unwrap_or(i128::MAX)
        };
        match self.known {
            None => near_vertex(None, None),
            Some((lo, hi)) => near_vertex(None, Some(lo - 1)).min(near_vertex(Some(hi + 1), None)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftKind {
    /// `z -> z + pi`: `e^{iz} -> -e^{iz}`.
    PlusPi,
    /// `z -> z + pi tau`: `e^{iz} -> q e^{iz}`.
    PlusPiTau,
    /// `z -> z + pi tau / 2`: `e^{iz} -> q^{1/2} e^{iz}`.
    PlusHalfPiTau,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    U,
    V,
}

impl Var {
    fn degree(self, m: Monomial) -> i64 {
        match self {
            Var::U => m.u as i64,
            Var::V => m.v as i64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSeries {
    quarter_prefactor: i64,
    coeffs: BTreeMap<i64, LaurentPoly>,
    order: i64,
    tail: Tail,
}

impl GradedSeries {
    pub(crate) fn from_parts(
        quarter_prefactor: i64,
        coeffs: BTreeMap<i64, LaurentPoly>,
        order: i64,
        tail: Tail,
    ) -> Self {
        debug_assert!(order >= 0);
        let coeffs = coeffs
            .into_iter()
            .filter(|(n, p)| {
                debug_assert!(*n >= 0, "negative q-power {n} stored");
                *n <= order && !p.is_zero()
            })
            .collect();
        Self {
            quarter_prefactor,
            coeffs,
            order,
            tail,
        }
    }

    /// `q^{P/4} * sum c q^n m` known through `q^order`; terms past the order
    /// are dropped and nothing is assumed about the truncated tail.
    pub fn from_terms(
        quarter_prefactor: i64,
        order: i64,
        terms: impl IntoIterator<Item = (i64, Monomial, Gaussian)>,
    ) -> Result<Self> {
        if order < 0 {
            return Err(Error::OrderUnderflow(order));
        }
        let mut coeffs: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (n, m, c) in terms {
            if n < 0 {
                return Err(Error::Domain(format!("negative power of q: {n}")));
            }
            coeffs.entry(n).or_default().add_term(m, c);
        }
        Ok(Self::from_parts(
            quarter_prefactor,
            coeffs,
            order,
            Tail::Unknown,
        ))
    }

    /// The exact series `q^{P/4} * poly`.
    pub fn constant(quarter_prefactor: i64, poly: LaurentPoly) -> Self {
        Self::from_parts(
            quarter_prefactor,
            BTreeMap::from([(0, poly)]),
            EXACT_ORDER,
            Tail::Exact,
        )
    }

    /// The exact series `c * q^{P/4} * m`.
    pub fn monomial(quarter_prefactor: i64, c: Gaussian, m: Monomial) -> Self {
        Self::constant(quarter_prefactor, LaurentPoly::term(m, c))
    }

    pub fn one() -> Self {
        Self::constant(0, LaurentPoly::one())
    }

    pub fn quarter_prefactor(&self) -> i64 {
        self.quarter_prefactor
    }

    /// `None` for exact series.
    pub fn order(&self) -> Option<i64> {
        (self.order != EXACT_ORDER).then_some(self.order)
    }

    pub fn is_exact(&self) -> bool {
        self.order == EXACT_ORDER
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, n: i64) -> Option<&LaurentPoly> {
        self.coeffs.get(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> {
        self.coeffs.iter().map(|(n, p)| (*n, p))
    }

    /// Highest absolute quarter-grade known exactly, `4N + P`.
    pub fn absolute_order(&self) -> Option<i64> {
        self.order().map(|n| 4 * n + self.quarter_prefactor)
    }

    fn combine_tail(&self, other: &Self) -> Tail {
        if self.tail == Tail::Exact && other.tail == Tail::Exact {
            Tail::Exact
        } else {
            Tail::Unknown
        }
    }

    fn check_prefactor(&self, other: &Self) -> Result<()> {
        if self.quarter_prefactor != other.quarter_prefactor {
            return Err(Error::GradeMismatch {
                lhs: self.quarter_prefactor,
                rhs: other.quarter_prefactor,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_prefactor(other)?;
        let mut coeffs = self.coeffs.clone();
        for (n, p) in &other.coeffs {
            coeffs.entry(*n).or_default().add_assign_ref(p);
        }
        Ok(Self::from_parts(
            self.quarter_prefactor,
            coeffs,
            self.order.min(other.order),
            self.combine_tail(other),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            quarter_prefactor: self.quarter_prefactor,
            coeffs: self.coeffs.iter().map(|(n, p)| (*n, -p)).collect(),
            order: self.order,
            tail: self.tail.clone(),
        }
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        let coeffs = self.coeffs.iter().map(|(n, p)| (*n, p.scale(c))).collect();
        Self::from_parts(
            self.quarter_prefactor,
            coeffs,
            self.order,
            self.tail.clone(),
        )
    }

    /// Product truncated to the smaller operand order; prefactors add.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut coeffs: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (na, pa) in &self.coeffs {
            for (nb, pb) in &other.coeffs {
                let n = na + nb;
                if n > order {
                    break;
                }
                coeffs.entry(n).or_default().add_assign_ref(&(pa * pb));
            }
        }
        Self::from_parts(
            self.quarter_prefactor + other.quarter_prefactor,
            coeffs,
            order,
            self.combine_tail(other),
        )
    }

    /// Multiply in place by `(1 + c q^power m)`, truncating at the order.
    pub(crate) fn mul_binomial(&mut self, power: i64, c: &Gaussian, m: Monomial) {
        debug_assert!(power >= 1);
        let mut updates = Vec::new();
        for (n, p) in &self.coeffs {
            let target = n + power;
            if target <= self.order {
                updates.push((target, p.scale(c).map_monomials(|x| (x.times(m), false))));
            }
        }
        for (n, p) in updates {
            self.coeffs.entry(n).or_default().add_assign_ref(&p);
        }
        self.coeffs.retain(|_, p| !p.is_zero());
        self.tail = Tail::Unknown;
    }

    /// Re-express with a lower quarter-prefactor `new_prefactor = P - 4j`,
    /// `j >= 0`, shifting powers of `q` up by `j`.
    pub fn rebase(&self, new_prefactor: i64) -> Result<Self> {
        let diff = self.quarter_prefactor - new_prefactor;
        if diff < 0 || diff % 4 != 0 {
            return Err(Error::GradeMismatch {
                lhs: self.quarter_prefactor,
                rhs: new_prefactor,
            });
        }
        let j = diff / 4;
        let coeffs = self
            .coeffs
            .iter()
            .map(|(n, p)| (n + j, p.clone()))
            .collect();
        let order = if self.is_exact() {
            EXACT_ORDER
        } else {
            self.order + j
        };
        Ok(Self::from_parts(
            new_prefactor,
            coeffs,
            order,
            self.tail.clone(),
        ))
    }

    /// Keep only powers of `q` up to `order`.
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        let tail = if order == self.order {
            self.tail.clone()
        } else {
            Tail::Unknown
        };
        Self::from_parts(self.quarter_prefactor, self.coeffs.clone(), order, tail)
    }

    /// All stored terms as `(absolute quarter-grade, poly)`.
    pub fn absolute_terms(&self) -> impl Iterator<Item = (i64, &LaurentPoly)> {
        self.coeffs
            .iter()
            .map(move |(n, p)| (4 * n + self.quarter_prefactor, p))
    }

    /// Substitute a quasi-period or half-period shift into one variable.
    pub fn shift(&self, shift: ShiftKind, var: Var) -> Result<Self> {
        let quarter_step = match shift {
            ShiftKind::PlusPi => {
                let coeffs = self
                    .coeffs
                    .iter()
                    .map(|(n, p)| {
                        (
                            *n,
                            p.map_monomials(|m| (m, var.degree(m).rem_euclid(2) == 1)),
                        )
                    })
                    .collect();
                return Ok(Self::from_parts(
                    self.quarter_prefactor,
                    coeffs,
                    self.order,
                    self.tail.clone(),
                ));
            }
            ShiftKind::PlusPiTau => 4,
            ShiftKind::PlusHalfPiTau => 2,
        };

        let (new_abs_order, new_tail) = match &self.tail {
            Tail::Exact => (None, Tail::Exact),
            Tail::Unknown => return Err(Error::UnboundedTail),
            Tail::Winding(w) => {
                let mut w = w.clone();
                w.quad[1] += quarter_step * var.degree(w.step);
                w.quad[2] += quarter_step * var.degree(w.offset);
                let bound = w.tail_min() - 1;
                // Every stored index whose new grade stays within the bound is kept;
                // because the grade is convex in k these form an interval.
                let kept: Vec<i64> = match w.known {
                    Some((lo, hi)) => (lo..=hi).filter(|k| w.grade(*k) <= bound).collect(),
                    None => Vec::new(),
                };
                w.known = kept.first().copied().zip(kept.last().copied());
                let bound = i64::try_from(bound).map_err(|_| Error::OrderUnderflow(i64::MIN))?;
                (Some(bound), Tail::Winding(w))
            }
        };

        let mut by_grade: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (g0, poly) in self.absolute_terms() {
            for (m, c) in poly.iter() {
                let g = g0 + quarter_step * var.degree(*m);
                if new_abs_order.is_none_or(|b| g <= b) {
                    by_grade.entry(g).or_default().add_term(*m, c.clone());
                }
            }
        }
        by_grade.retain(|_, p| !p.is_zero());

        let residues: BTreeSet<i64> = by_grade.keys().map(|g| g.rem_euclid(4)).collect();
        if residues.len() > 1 {
            return Err(Error::NonIntegralGrade);
        }
        let new_prefactor = by_grade
            .keys()
            .next()
            .copied()
            .unwrap_or(self.quarter_prefactor);
        let order = match new_abs_order {
            None => EXACT_ORDER,
            Some(b) => (b - new_prefactor).div_euclid(4),
        };
        if order < 0 {
            return Err(Error::OrderUnderflow(order));
        }
        let coeffs = by_grade
            .into_iter()
            .map(|(g, p)| ((g - new_prefactor) / 4, p))
            .collect();
        Ok(Self::from_parts(new_prefactor, coeffs, order, new_tail))
    }
}

/// Operations accepted by [`fs_arith`].
#[derive(Debug, Clone, PartialEq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Negate,
    Scale(Gaussian),
}

pub fn fs_arith(
    op: ArithOp,
    lhs: &GradedSeries,
    rhs: Option<&GradedSeries>,
) -> Result<GradedSeries> {
    let need_rhs =
        || rhs.ok_or_else(|| Error::Domain(format!("{op:?} needs a right-hand operand")));
    match &op {
        ArithOp::Add => lhs.add(need_rhs()?),
        ArithOp::Sub => lhs.sub(need_rhs()?),
        ArithOp::Mul => Ok(lhs.mul(need_rhs()?)),
        ArithOp::Negate => Ok(lhs.neg()),
        ArithOp::Scale(c) => Ok(lhs.scale(c)),
    }
}

pub fn fs_shift(s: &GradedSeries, shift: ShiftKind, var: Var) -> Result<GradedSeries> {
    s.shift(shift, var)
}

/// First disagreement between two series, at the lowest grade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    /// Absolute grade in quarter-powers of `q` (prefactor included).
    pub quarter_grade: i64,
    pub monomial: Monomial,
    pub lhs: Gaussian,
    pub rhs: Gaussian,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    /// Equal through `q^order` relative to the smaller prefactor; `None`
    /// when both sides are exact.
    Equal {
        order: Option<i64>,
    },
    Mismatch(Mismatch),
}

impl Comparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, Comparison::Equal { .. })
    }
}

/// Exact comparison over the grades both sides know.
pub fn fs_equal(a: &GradedSeries, b: &GradedSeries) -> Comparison {
    let bound = match (a.absolute_order(), b.absolute_order()) {
        (None, None) => None,
        (Some(x), None) | (None, Some(x)) => Some(x),
        (Some(x), Some(y)) => Some(x.min(y)),
    };
    let ta: BTreeMap<i64, &LaurentPoly> = a.absolute_terms().collect();
    let tb: BTreeMap<i64, &LaurentPoly> = b.absolute_terms().collect();
    let grades: BTreeSet<i64> = ta.keys().chain(tb.keys()).copied().collect();
    let empty = LaurentPoly::zero();
    for g in grades {
        if bound.is_some_and(|b| g > b) {
            break;
        }
        let pa = ta.get(&g).copied().unwrap_or(&empty);
        let pb = tb.get(&g).copied().unwrap_or(&empty);
        if pa == pb {
            continue;
        }
        let monos: BTreeSet<Monomial> = pa.monomials().chain(pb.monomials()).copied().collect();
        for m in monos {
            let (ca, cb) = (pa.coeff(&m), pb.coeff(&m));
            if ca != cb {
                return Comparison::Mismatch(Mismatch {
                    quarter_grade: g,
                    monomial: m,
                    lhs: ca,
                    rhs: cb,
                });
            }
        }
    }
    let base = a.quarter_prefactor().min(b.quarter_prefactor());
    Comparison::Equal {
        order: bound.map(|b| (b - base).div_euclid(4)),
    }
}
