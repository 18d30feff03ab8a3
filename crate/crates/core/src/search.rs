//! Exponential-then-binary search over `rho` driven by a two-sided decision.

use crate::error::{FrechetError, Result};
use crate::verdict::{ApproxInterval, Verdict, VerdictAtRho};
use crate::weight::{Scalar, Weight};

/// Doublings allowed before giving up; weights stay below `2^60`.
const MAX_DOUBLINGS: usize = 64;

/// `lower_bound` must be a proven lower bound on the distance, `seed` a
/// positive starting probe used when the lower bound is zero.
pub(crate) fn value_search<F>(
    lower_bound: Weight,
    seed: Weight,
    gap: Scalar,
    eta: Scalar,
    mut decide: F,
) -> Result<ApproxInterval>
where
    F: FnMut(Weight) -> Result<VerdictAtRho>,
{
    if *eta.numer() == 0 {
        return Err(FrechetError::InvalidParameter("eta must be positive".into()));
    }
    if !lower_bound.is_finite() {
        return Err(FrechetError::Disconnected);
    }
    let factor = gap * (Scalar::from_integer(1) + eta);
    let mut probes = Vec::new();
    let mut lower = lower_bound;

    let mut rho = lower_bound;
    let mut lo_r: Option<Weight> = None;
    if rho == Weight::ZERO {
        let v = decide(Weight::ZERO)?;
        let at_most = v.is_at_most();
        probes.push(v);
        if at_most {
            return Ok(ApproxInterval {
                lo: Weight::ZERO,
                hi: Weight::ZERO,
                factor,
                gap_factor: gap,
                eta,
                probes,
            });
        }
        lower = Weight::from_milli(1);
        lo_r = Some(Weight::ZERO);
        rho = seed.max(Weight::from_milli(1));
    }

    // Exponential phase: find some rho with an AtMostScaled verdict.
    let mut doublings = 0;
    let hi_r = loop {
        let v = decide(rho)?;
        let verdict = v.verdict;
        probes.push(v);
        if verdict == Verdict::AtMostScaled {
            break rho;
        }
        lower = lower.max(Weight::from_milli(rho.milli() + 1));
        lo_r = Some(rho);
        doublings += 1;
        if doublings > MAX_DOUBLINGS || rho.milli() >= 1 << 61 {
            return Err(FrechetError::Disconnected);
        }
        rho = Weight::from_milli(rho.milli() * 2);
    };

    // Binary phase on (lo_r, hi_r].
    let mut hi_r = hi_r;
    if let Some(mut lo) = lo_r {
        let one_eta = Scalar::from_integer(1) + eta;
        while hi_r.milli() - lo.milli() > 1 && !hi_r.le_scaled(one_eta, lo) {
            let mid = Weight::from_milli(lo.milli() + (hi_r.milli() - lo.milli()) / 2);
            let v = decide(mid)?;
            let verdict = v.verdict;
            probes.push(v);
            if verdict == Verdict::AtMostScaled {
                hi_r = mid;
            } else {
                lo = mid;
                lower = lower.max(Weight::from_milli(mid.milli() + 1));
            }
        }
    }

    let hi = hi_r.scale_floor(gap);
    Ok(ApproxInterval {
        lo: lower,
        hi,
        factor,
        gap_factor: gap,
        eta,
        probes,
    })
}
