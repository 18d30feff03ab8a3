//! Decision outcomes and approximation intervals shared by the engines.

use serde::{Serialize, Serializer};

use crate::weight::{scalar_to_f64, Scalar, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The distance is at most `gap_factor * rho`.
    AtMostScaled,
    /// The distance exceeds `rho`.
    GreaterThanRho,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct DecisionStats {
    pub oracle_queries: u64,
    pub iterations: u64,
    /// Length of the compressed path, for the ε engine.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compressed_len: Option<usize>,
    /// Number of lattice points in the union of windows, for the ε engine.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_size: Option<usize>,
}

pub(crate) fn ser_scalar<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(scalar_to_f64(*x))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictAtRho {
    pub verdict: Verdict,
    pub rho: Weight,
    #[serde(serialize_with = "ser_scalar")]
    pub gap_factor: Scalar,
    pub stats: DecisionStats,
}

impl VerdictAtRho {
    pub fn is_at_most(&self) -> bool {
        self.verdict == Verdict::AtMostScaled
    }

    /// Whether the verdict is consistent with a known exact distance.
    pub fn consistent_with(&self, exact: Weight) -> bool {
        match self.verdict {
            Verdict::AtMostScaled => exact.le_scaled(self.gap_factor, self.rho),
            Verdict::GreaterThanRho => exact > self.rho,
        }
    }
}

/// `lo <= D <= hi` with `hi <= factor * max(lo, 1 milli-unit)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApproxInterval {
    pub lo: Weight,
    pub hi: Weight,
    /// Gap factor of the decision times `1 + eta`.
    #[serde(serialize_with = "ser_scalar")]
    pub factor: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub gap_factor: Scalar,
    #[serde(serialize_with = "ser_scalar")]
    pub eta: Scalar,
    pub probes: Vec<VerdictAtRho>,
}

impl ApproxInterval {
    pub fn contains(&self, value: Weight) -> bool {
        self.lo <= value && value <= self.hi
    }

    pub fn ratio_ok(&self) -> bool {
        self.lo <= self.hi && self.hi.le_scaled(self.factor, self.lo.max(Weight::from_milli(1)))
    }

    pub fn oracle_queries(&self) -> u64 {
        self.probes.iter().map(|p| p.stats.oracle_queries).sum()
    }
}
