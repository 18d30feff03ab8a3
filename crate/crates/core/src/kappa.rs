//! One-pass `(κ+1)`-approximate decision for a κ-straight path `P` against
//! an arbitrary walk `Q`, using `O(n + m)` exact distance queries.

use crate::error::{FrechetError, Result};
use crate::exact::{check_walks, require_exact};
use crate::fsm::FreeSpaceValue;
use crate::graph::Walk;
use crate::oracle::DistanceOracle;
use crate::search::value_search;
use crate::verdict::{ApproxInterval, DecisionStats, Verdict, VerdictAtRho};
use crate::weight::{Scalar, Weight};

/// Near iff `d <= rho`, Far iff `d > (kappa+1) rho`, Mid otherwise.
pub fn classify_kappa(d: Weight, rho: Weight, kappa: Scalar) -> FreeSpaceValue {
    if d <= rho {
        FreeSpaceValue::Near
    } else if !d.le_scaled(kappa + Scalar::from_integer(1), rho) {
        FreeSpaceValue::Far
    } else {
        FreeSpaceValue::Mid
    }
}

fn check_kappa(kappa: Scalar) -> Result<()> {
    if kappa < Scalar::from_integer(1) {
        return Err(FrechetError::InvalidParameter(format!("kappa must be at least 1, got {kappa}")));
    }
    Ok(())
}

/// Decides `D(P,Q) > rho` or `D(P,Q) <= (kappa+1) rho`. The guarantee holds
/// only when `p` is κ-straight; that is not checked here.
pub fn decide_kappa<O: DistanceOracle + ?Sized>(
    o: &O,
    p: &Walk,
    q: &Walk,
    rho: Weight,
    kappa: Scalar,
) -> Result<VerdictAtRho> {
    Ok(decide_kappa_traced(o, p, q, rho, kappa)?.0)
}

/// As [`decide_kappa`], also returning the visited cells.
pub fn decide_kappa_traced<O: DistanceOracle + ?Sized>(
    o: &O,
    p: &Walk,
    q: &Walk,
    rho: Weight,
    kappa: Scalar,
) -> Result<(VerdictAtRho, Vec<(usize, usize)>)> {
    require_exact(o)?;
    check_walks(o, p, q)?;
    check_kappa(kappa)?;
    p.require_path()?;
    let (n, m) = (p.len(), q.len());
    let mut stats = DecisionStats::default();
    let cell = |i: usize, j: usize, stats: &mut DecisionStats| -> Result<FreeSpaceValue> {
        stats.oracle_queries += 1;
        let d = o.query(p.vertices()[i], q.vertices()[j])?;
        Ok(classify_kappa(d, rho, kappa))
    };
    let gap_factor = kappa + Scalar::from_integer(1);
    let finish = |verdict, stats| VerdictAtRho {
        verdict,
        rho,
        gap_factor,
        stats,
    };

    let mut trace = vec![(0, 0)];
    if cell(0, 0, &mut stats)? != FreeSpaceValue::Near {
        return Ok((finish(Verdict::GreaterThanRho, stats), trace));
    }
    let (mut i, mut j) = (0usize, 0usize);
    loop {
        stats.iterations += 1;
        if (i, j) == (n - 1, m - 1) {
            return Ok((finish(Verdict::AtMostScaled, stats), trace));
        }
        if j + 1 < m {
            if cell(i, j + 1, &mut stats)? == FreeSpaceValue::Near {
                j += 1;
                trace.push((i, j));
                continue;
            }
            if i + 1 < n && cell(i + 1, j + 1, &mut stats)? == FreeSpaceValue::Near {
                i += 1;
                j += 1;
                trace.push((i, j));
                continue;
            }
        }
        if i + 1 >= n || cell(i + 1, j, &mut stats)? == FreeSpaceValue::Far {
            return Ok((finish(Verdict::GreaterThanRho, stats), trace));
        }
        i += 1;
        trace.push((i, j));
    }
}

/// Materializes the three-valued matrix `M[i][j]` for small instances.
pub fn materialize_kappa<O: DistanceOracle + ?Sized>(
    o: &O,
    p: &Walk,
    q: &Walk,
    rho: Weight,
    kappa: Scalar,
) -> Result<Vec<Vec<FreeSpaceValue>>> {
    check_walks(o, p, q)?;
    p.vertices()
        .iter()
        .map(|&a| {
            q.vertices()
                .iter()
                .map(|&b| Ok(classify_kappa(o.query(a, b)?, rho, kappa)))
                .collect()
        })
        .collect()
}

/// Interval `[lo, hi]` around the strong distance with
/// `hi <= (kappa+1)(1+eta) lo`.
pub fn approx_value_kappa<O: DistanceOracle + ?Sized>(
    o: &O,
    p: &Walk,
    q: &Walk,
    kappa: Scalar,
    eta: Scalar,
) -> Result<ApproxInterval> {
    require_exact(o)?;
    check_walks(o, p, q)?;
    check_kappa(kappa)?;
    p.require_path()?;
    let lower = o
        .query(p.first(), q.first())?
        .max(o.query(p.last(), q.last())?);
    let seed = o.graph().min_positive_edge_weight().unwrap_or(Weight::from_milli(1));
    value_search(lower, seed, kappa + Scalar::from_integer(1), eta, |rho| {
        decide_kappa(o, p, q, rho, kappa)
    })
}
