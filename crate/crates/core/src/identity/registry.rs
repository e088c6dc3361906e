use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::param::ThetaKind;

/// Argument constraint for three-variable identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    None,
    /// `z = pi - x - y`
    SumPi,
    /// `z = pi/2 - x - y`
    SumHalfPi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    QuasiPeriod(ThetaKind),
    HalfPeriod(ThetaKind),
    Duplication12,
    Duplication23,
    TripleProduct(ThetaKind),
    Thm2,
    Thm1Tan,
    Thm1Cot,
    CorCot,
    CorTan,
    CosqShift,
    FConstancy,
    ClassicalLimitTan,
    ClassicalLimitCot,
}

impl IdentityId {
    /// Registry in suite order.
    pub fn all() -> Vec<IdentityId> {
        let mut v = Vec::new();
        v.extend(ThetaKind::ALL.map(IdentityId::QuasiPeriod));
        v.extend(ThetaKind::ALL.map(IdentityId::HalfPeriod));
        v.extend([IdentityId::Duplication12, IdentityId::Duplication23]);
        v.extend(ThetaKind::ALL.map(IdentityId::TripleProduct));
        v.extend([
            IdentityId::Thm2,
            IdentityId::Thm1Tan,
            IdentityId::Thm1Cot,
            IdentityId::CorCot,
            IdentityId::CorTan,
            IdentityId::CosqShift,
            IdentityId::FConstancy,
            IdentityId::ClassicalLimitTan,
            IdentityId::ClassicalLimitCot,
        ]);
        v
    }

    pub fn name(self) -> String {
        match self {
            IdentityId::QuasiPeriod(k) => format!("quasi_period_{}", k.index()),
            IdentityId::HalfPeriod(k) => format!("half_period_{}", k.index()),
            IdentityId::Duplication12 => "duplication_12".into(),
            IdentityId::Duplication23 => "duplication_23".into(),
            IdentityId::TripleProduct(k) => format!("triple_product_{}", k.index()),
            IdentityId::Thm2 => "thm2".into(),
            IdentityId::Thm1Tan => "thm1_tan".into(),
            IdentityId::Thm1Cot => "thm1_cot".into(),
            IdentityId::CorCot => "cor_cot".into(),
            IdentityId::CorTan => "cor_tan".into(),
            IdentityId::CosqShift => "cosq_shift".into(),
            IdentityId::FConstancy => "f_constancy".into(),
            IdentityId::ClassicalLimitTan => "classical_limit_tan".into(),
            IdentityId::ClassicalLimitCot => "classical_limit_cot".into(),
        }
    }

    pub fn supports_formal(self) -> bool {
        matches!(
            self,
            IdentityId::QuasiPeriod(_)
                | IdentityId::HalfPeriod(_)
                | IdentityId::Duplication12
                | IdentityId::Duplication23
                | IdentityId::TripleProduct(_)
                | IdentityId::Thm2
        )
    }

    /// Default certification order.
    pub fn default_order(self) -> i64 {
        match self {
            IdentityId::Duplication12 | IdentityId::Duplication23 => 20,
            _ => 12,
        }
    }

    pub fn constraint(self) -> Constraint {
        match self {
            IdentityId::Thm1Tan
            | IdentityId::Thm1Cot
            | IdentityId::ClassicalLimitTan
            | IdentityId::ClassicalLimitCot => Constraint::SumPi,
            IdentityId::CorCot | IdentityId::CorTan => Constraint::SumHalfPi,
            _ => Constraint::None,
        }
    }

    /// Whether the identity is a statement about the `q -> 1` limit rather
    /// than a fixed `tau`.
    pub fn is_limit(self) -> bool {
        matches!(
            self,
            IdentityId::ClassicalLimitTan | IdentityId::ClassicalLimitCot
        )
    }

    /// Stable small integer used to derive independent random streams.
    pub(crate) fn stream_index(self) -> u64 {
        Self::all()
            .iter()
            .position(|i| *i == self)
            .expect("registered") as u64
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::all()
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown identity {s:?}")))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        let all = IdentityId::all();
        assert_eq!(all.len(), 23);
        for id in all {
            assert_eq!(id.name().parse::<IdentityId>().unwrap(), id);
        }
        assert!("thm3".parse::<IdentityId>().is_err());
    }
}
