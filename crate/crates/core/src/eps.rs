//! `(1+ε)`-approximate decisions for a κ-straight path `P` against a walk
//! `Q`. `P` is compressed to anchors roughly `βρ` apart, every `q_j` gets a
//! window of compressed indices around its Voronoi-nearest vertex on `P`,
//! and reachability is decided on the union of windows.

use serde::Serialize;

use crate::error::{FrechetError, Result};
use crate::exact::{check_walks, Mode};
use crate::fsm::FreeSpaceValue;
use crate::fsm::FreeSpaceValue::{Far, Near};
use crate::graph::{Graph, VertexId, VoronoiDiagram, Walk};
use crate::oracle::DistanceOracle;
use crate::search::value_search;
use crate::verdict::{ApproxInterval, DecisionStats, Verdict, VerdictAtRho};
use crate::weight::{scalar_ceil, Scalar, Weight};

/// Denominator used when deriving `alpha` from `epsilon`.
pub const ALPHA_DENOMINATOR: u64 = 1024;

/// Compressed subsequence of `P`: `pi[k]` is the index in `P` of the `k`-th
/// retained vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompressedPath {
    pub pi: Vec<usize>,
    /// For every index `x` of `P`, the largest `k` with `pi[k] <= x`.
    pub pred_index: Vec<usize>,
}

impl CompressedPath {
    pub fn len(&self) -> usize {
        self.pi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    fn identity(n: usize) -> Self {
        CompressedPath {
            pi: (0..n).collect(),
            pred_index: (0..n).collect(),
        }
    }
}

/// Greedy anchors restarting at each anchor: from the last anchor, skip
/// vertices whose path length from it is below `beta * rho`; the first one
/// at or beyond becomes the next anchor. Then add the predecessor of every
/// anchor and the last vertex.
pub fn compress_path(graph: &Graph, p: &Walk, beta: Scalar, rho: Weight) -> Result<CompressedPath> {
    if p.graph_id() != graph.id() {
        return Err(crate::graph::GraphError::GraphMismatch.into());
    }
    p.require_path()?;
    let n = p.len();
    if *beta.numer() == 0 || rho == Weight::ZERO {
        return Ok(CompressedPath::identity(n));
    }
    let mut anchors = vec![0];
    let mut anchor = 0;
    for x in 1..n {
        if !p.length_between(anchor, x)?.lt_scaled(beta, rho) {
            anchor = x;
            anchors.push(x);
        }
    }
    let mut pi = anchors.clone();
    pi.extend(anchors.iter().filter(|&&a| a > 0).map(|&a| a - 1));
    pi.push(n - 1);
    pi.sort_unstable();
    pi.dedup();
    let mut pred_index = Vec::with_capacity(n);
    let mut k = 0;
    for x in 0..n {
        while k + 1 < pi.len() && pi[k + 1] <= x {
            k += 1;
        }
        pred_index.push(k);
    }
    Ok(CompressedPath { pi, pred_index })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaWindow {
    pub j: usize,
    /// Index in `P` of the nearest vertex to `q_j`.
    pub nearest: Option<usize>,
    pub dist: Weight,
    /// Inclusive range of compressed indices, `None` when empty.
    pub range: Option<(usize, usize)>,
}

impl BetaWindow {
    pub fn width(&self) -> usize {
        self.range.map_or(0, |(a, b)| b - a + 1)
    }

    pub fn contains(&self, k: usize) -> bool {
        self.range.is_some_and(|(a, b)| a <= k && k <= b)
    }
}

/// `ceil(9 kappa / beta)`.
pub fn window_half_width(kappa: Scalar, beta: Scalar) -> Result<usize> {
    if *beta.numer() == 0 {
        return Err(FrechetError::InvalidParameter("beta must be positive".into()));
    }
    Ok(scalar_ceil(Scalar::from_integer(9) * kappa / beta) as usize)
}

fn path_positions(graph: &Graph, p: &Walk) -> Vec<Option<usize>> {
    let mut pos = vec![None; graph.vertex_count()];
    for (x, &v) in p.vertices().iter().enumerate() {
        pos[v] = Some(x);
    }
    pos
}

fn check_voronoi(vd: &VoronoiDiagram, p: &Walk) -> Result<()> {
    let mut sites: Vec<VertexId> = p.vertices().to_vec();
    sites.sort_unstable();
    sites.dedup();
    if vd.graph_id() != p.graph_id() || vd.sites != sites {
        return Err(FrechetError::VoronoiMismatch);
    }
    Ok(())
}

/// One window per vertex of `q`.
#[allow(clippy::too_many_arguments)]
pub fn build_windows(
    graph: &Graph,
    vd: &VoronoiDiagram,
    cp: &CompressedPath,
    p: &Walk,
    q: &Walk,
    rho: Weight,
    kappa: Scalar,
    beta: Scalar,
) -> Result<Vec<BetaWindow>> {
    check_voronoi(vd, p)?;
    if q.graph_id() != graph.id() || p.graph_id() != graph.id() {
        return Err(crate::graph::GraphError::GraphMismatch.into());
    }
    let h = window_half_width(kappa, beta)?;
    let pos = path_positions(graph, p);
    let last = cp.len() - 1;
    Ok(q.vertices()
        .iter()
        .enumerate()
        .map(|(j, &qj)| {
            let (nearest, dist) = match vd.nearest(qj) {
                Some((site, dist)) => (pos[site], dist),
                None => (None, Weight::INFINITY),
            };
            let range = nearest.filter(|_| dist <= rho).map(|x| {
                let i = cp.pred_index[x];
                (i.saturating_sub(h), (i + h).min(last))
            });
            BetaWindow { j, nearest, dist, range }
        })
        .collect())
}

/// Tuning of the ε engine. `alpha` bounds the oracle stretch, `beta` the
/// compression granularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EpsParams {
    pub kappa: Scalar,
    pub alpha: Scalar,
    pub beta: Scalar,
}

impl EpsParams {
    pub fn new(kappa: Scalar, alpha: Scalar, beta: Scalar) -> Result<Self> {
        if kappa < Scalar::from_integer(1) {
            return Err(FrechetError::InvalidParameter(format!("kappa must be at least 1, got {kappa}")));
        }
        if alpha > Scalar::new(1, 2) {
            return Err(FrechetError::InvalidParameter(format!("alpha must be at most 1/2, got {alpha}")));
        }
        if *beta.numer() == 0 {
            return Err(FrechetError::InvalidParameter("beta must be positive".into()));
        }
        Ok(EpsParams { kappa, alpha, beta })
    }

    /// `alpha = beta` chosen from `epsilon`, see [`alpha_beta_for_epsilon`].
    pub fn from_epsilon(kappa: Scalar, epsilon: Scalar) -> Result<Self> {
        let (alpha, beta) = alpha_beta_for_epsilon(epsilon)?;
        EpsParams::new(kappa, alpha, beta)
    }

    pub fn near_factor(&self) -> Scalar {
        Scalar::from_integer(1) + self.alpha
    }

    /// `(1 + alpha)(1 + alpha + beta)`.
    pub fn gap_factor(&self) -> Scalar {
        let one = Scalar::from_integer(1);
        (one + self.alpha) * (one + self.alpha + self.beta)
    }
}

/// The largest `alpha = k / 1024` with `k <= 512` such that
/// `(1 + alpha)(1 + 2 alpha) <= 1 + epsilon`, returned as `(alpha, alpha)`.
pub fn alpha_beta_for_epsilon(epsilon: Scalar) -> Result<(Scalar, Scalar)> {
    if *epsilon.numer() == 0 {
        return Err(FrechetError::InvalidParameter("epsilon must be positive".into()));
    }
    let den = ALPHA_DENOMINATOR as u128;
    let (en, ed) = (*epsilon.numer() as u128, *epsilon.denom() as u128);
    let k = (1..=ALPHA_DENOMINATOR / 2)
        .rev()
        .find(|&k| {
            let k = k as u128;
            (den + k) * (den + 2 * k) * ed <= (ed + en) * den * den
        })
        .ok_or_else(|| {
            FrechetError::InvalidParameter(format!(
                "epsilon {epsilon} is too small for alpha with denominator {ALPHA_DENOMINATOR}"
            ))
        })?;
    let alpha = Scalar::new(k, ALPHA_DENOMINATOR);
    Ok((alpha, alpha))
}

/// Near iff `est <= (1+alpha) rho`, Far iff `est > (1+alpha)(1+alpha+beta) rho`.
pub fn classify_beta(estimate: Weight, rho: Weight, params: &EpsParams) -> FreeSpaceValue {
    if estimate.le_scaled(params.near_factor(), rho) {
        FreeSpaceValue::Near
    } else if !estimate.le_scaled(params.gap_factor(), rho) {
        FreeSpaceValue::Far
    } else {
        FreeSpaceValue::Mid
    }
}

/// Materializes the uncompressed three-valued matrix `M[x][j]`.
pub fn materialize_beta<O: DistanceOracle + ?Sized>(
    o: &O,
    p: &Walk,
    q: &Walk,
    rho: Weight,
    params: &EpsParams,
) -> Result<Vec<Vec<FreeSpaceValue>>> {
    check_walks(o, p, q)?;
    p.vertices()
        .iter()
        .map(|&a| {
            q.vertices()
                .iter()
                .map(|&b| Ok(classify_beta(o.query(a, b)?, rho, params)))
                .collect()
        })
        .collect()
}

fn check_oracle<O: DistanceOracle + ?Sized>(o: &O, params: &EpsParams) -> Result<()> {
    let allowed = params.near_factor();
    match o.stretch() {
        Some(s) if s <= allowed => Ok(()),
        Some(stretch) => Err(FrechetError::StretchTooLarge { stretch, allowed }),
        None => Err(FrechetError::InexactOracle(
            "an oracle without a stretch bound; validate it first".into(),
        )),
    }
}

/// Evaluated cells of one window row.
struct Row {
    lo: usize,
    cells: Vec<FreeSpaceValue>,
}

impl Row {
    fn get(&self, a: usize) -> Option<FreeSpaceValue> {
        a.checked_sub(self.lo).and_then(|k| self.cells.get(k)).copied()
    }
}

/// Strong-mode decision: `D(P,Q) > rho` or `D(P,Q) <= (1+alpha)(1+alpha+beta) rho`.
pub fn decide_eps_strong<O: DistanceOracle + ?Sized>(
    o: &O,
    vd: &VoronoiDiagram,
    p: &Walk,
    q: &Walk,
    rho: Weight,
    params: &EpsParams,
) -> Result<VerdictAtRho> {
    decide_eps(o, vd, p, q, rho, params, Mode::Strong)
}

/// Weak-mode decision, the same windows with undirected grid edges.
pub fn decide_eps_weak<O: DistanceOracle + ?Sized>(
    o: &O,
    vd: &VoronoiDiagram,
    p: &Walk,
    q: &Walk,
    rho: Weight,
    params: &EpsParams,
) -> Result<VerdictAtRho> {
    decide_eps(o, vd, p, q, rho, params, Mode::Weak)
}

pub fn decide_eps<O: DistanceOracle + ?Sized>(
    o: &O,
    vd: &VoronoiDiagram,
    p: &Walk,
    q: &Walk,
    rho: Weight,
    params: &EpsParams,
    mode: Mode,
) -> Result<VerdictAtRho> {
    check_oracle(o, params)?;
    check_walks(o, p, q)?;
    let graph = o.graph();
    let cp = compress_path(graph, p, params.beta, rho)?;
    let windows = build_windows(graph, vd, &cp, p, q, rho, params.kappa, params.beta)?;
    let (np, m) = (cp.len(), q.len());
    let mut stats = DecisionStats {
        compressed_len: Some(np),
        grid_size: Some(windows.iter().map(BetaWindow::width).sum()),
        ..DecisionStats::default()
    };
    let finish = |verdict, stats| VerdictAtRho {
        verdict,
        rho,
        gap_factor: params.gap_factor(),
        stats,
    };
    if !windows[0].contains(0) || !windows[m - 1].contains(np - 1) {
        return Ok(finish(Verdict::GreaterThanRho, stats));
    }

    let mut rows = Vec::with_capacity(m);
    for (w, &qj) in windows.iter().zip(q.vertices()) {
        let (lo, cells) = match w.range {
            Some((a, b)) => {
                let cells = (a..=b)
                    .map(|k| {
                        stats.oracle_queries += 1;
                        Ok(classify_beta(o.query(p.vertices()[cp.pi[k]], qj)?, rho, params))
                    })
                    .collect::<Result<Vec<_>>>()?;
                (a, cells)
            }
            None => (0, Vec::new()),
        };
        rows.push(Row { lo, cells });
    }

    let reachable = match mode {
        Mode::Strong => reach_strong(&rows, np, &mut stats),
        Mode::Weak => reach_weak(&rows, np, &mut stats),
    };
    let verdict = if reachable {
        Verdict::AtMostScaled
    } else {
        Verdict::GreaterThanRho
    };
    Ok(finish(verdict, stats))
}


/// Directed grid: vertical edges between two non-Far cells, horizontal and
/// diagonal edges from a non-Far cell into a Near cell.
fn reach_strong(rows: &[Row], np: usize, stats: &mut DecisionStats) -> bool {
    let m = rows.len();
    let mut prev: Vec<bool> = Vec::new();
    for (j, row) in rows.iter().enumerate() {
        let mut cur = vec![false; row.cells.len()];
        for (k, &val) in row.cells.iter().enumerate() {
            stats.iterations += 1;
            let a = row.lo + k;
            if val == Far {
                continue;
            }
            let below = |b: usize| -> bool {
                j > 0
                    && rows[j - 1]
                        .get(b)
                        .is_some_and(|v| v != Far && prev[b - rows[j - 1].lo])
            };
            cur[k] = if j == 0 && a == 0 {
                true
            } else {
                below(a)
                    || (val == Near
                        && ((a > 0 && below(a - 1)) || (k > 0 && cur[k - 1] && row.cells[k - 1] != Far)))
            };
        }
        prev = cur;
    }
    rows[m - 1].get(np - 1).is_some() && prev[np - 1 - rows[m - 1].lo]
}

/// Undirected grid: vertical neighbours need both cells non-Far; horizontal
/// and diagonal neighbours additionally need one of the two to be Near.
fn reach_weak(rows: &[Row], np: usize, stats: &mut DecisionStats) -> bool {
    let m = rows.len();
    let Some(start) = rows[0].get(0) else { return false };
    if start == Far {
        return false;
    }
    let mut seen: Vec<Vec<bool>> = rows.iter().map(|r| vec![false; r.cells.len()]).collect();
    seen[0][0] = true;
    let mut queue = std::collections::VecDeque::from([(0usize, 0usize)]);
    while let Some((a, j)) = queue.pop_front() {
        stats.iterations += 1;
        if (a, j) == (np - 1, m - 1) {
            return true;
        }
        let here = rows[j].get(a).expect("queued cells lie in their window");
        for dj in [-1i64, 0, 1] {
            let jj = j as i64 + dj;
            if jj < 0 || jj as usize >= m {
                continue;
            }
            let jj = jj as usize;
            for da in [-1i64, 0, 1] {
                if (da, dj) == (0, 0) || a as i64 + da < 0 {
                    continue;
                }
                let b = (a as i64 + da) as usize;
                let Some(there) = rows[jj].get(b) else { continue };
                let ok = here != Far && there != Far && (da == 0 || here == Near || there == Near);
                let k = b - rows[jj].lo;
                if ok && !seen[jj][k] {
                    seen[jj][k] = true;
                    queue.push_back((b, jj));
                }
            }
        }
    }
    false
}

/// Interval around the strong or weak distance with
/// `hi <= (1+alpha)(1+alpha+beta)(1+eta) lo`, alpha and beta derived from
/// `epsilon`.
pub fn approx_value_eps<O: DistanceOracle + ?Sized>(
    o: &O,
    p: &Walk,
    q: &Walk,
    kappa: Scalar,
    epsilon: Scalar,
    mode: Mode,
    eta: Scalar,
) -> Result<ApproxInterval> {
    let params = EpsParams::from_epsilon(kappa, epsilon)?;
    approx_value_eps_with(o, p, q, &params, mode, eta)
}

/// As [`approx_value_eps`] with explicit parameters. The Voronoi diagram of
/// `P` is built once and shared by all probes.
pub fn approx_value_eps_with<O: DistanceOracle + ?Sized>(
    o: &O,
    p: &Walk,
    q: &Walk,
    params: &EpsParams,
    mode: Mode,
    eta: Scalar,
) -> Result<ApproxInterval> {
    check_oracle(o, params)?;
    check_walks(o, p, q)?;
    p.require_path()?;
    let graph = o.graph();
    let vd = graph.voronoi(p.vertices())?;
    let stretch = o.stretch().expect("checked by check_oracle");
    let endpoint = o
        .query(p.first(), q.first())?
        .max(o.query(p.last(), q.last())?);
    // The estimate overshoots by at most the stretch.
    let lower = if endpoint.is_finite() {
        let (sn, sd) = (*stretch.numer() as u128, *stretch.denom() as u128);
        Weight::from_milli((endpoint.milli() as u128 * sd).div_ceil(sn) as u64)
    } else {
        endpoint
    };
    let seed = graph.min_positive_edge_weight().unwrap_or(Weight::from_milli(1));
    value_search(lower, seed, params.gap_factor(), eta, |rho| {
        decide_eps(o, &vd, p, q, rho, params, mode)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{exact_strong, exact_weak};
    use crate::graph::verify_kappa_straight;
    use crate::instances::{random_instance, rho_sweep, InstanceConfig};
    use crate::oracle::{ExactOracle, LandmarkOracle};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit_chain(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1, Weight::from_units(1)))).unwrap()
    }

    fn quarter() -> EpsParams {
        EpsParams::new(Scalar::from_integer(1), Scalar::new(1, 4), Scalar::new(1, 4)).unwrap()
    }

    #[test]
    fn golden_compression() {
        let g = unit_chain(10);
        let p = Walk::new(&g, (0..10).collect()).unwrap();
        // beta * rho = 2.5
        let cp = compress_path(&g, &p, Scalar::new(1, 4), Weight::from_units(10)).unwrap();
        assert_eq!(cp.pi, vec![0, 2, 3, 5, 6, 8, 9]);
        assert_eq!(cp.pred_index, vec![0, 0, 1, 2, 2, 3, 4, 4, 5, 6]);
    }

    #[test]
    fn compression_is_identity_below_edge_weights() {
        let g = unit_chain(6);
        let p = Walk::new(&g, (0..6).collect()).unwrap();
        let cp = compress_path(&g, &p, Scalar::new(1, 4), Weight::from_milli(3999)).unwrap();
        assert_eq!(cp.pi, (0..6).collect::<Vec<_>>());
        let cp = compress_path(&g, &p, Scalar::new(1, 4), Weight::ZERO).unwrap();
        assert_eq!(cp.pi, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn compression_invariants_on_random_paths() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..100 {
            let inst = random_instance(&mut rng, &InstanceConfig::medium());
            let (g, p) = (&inst.graph, &inst.p);
            let beta = Scalar::new(1, 4);
            let rho = Weight::from_milli(rand::Rng::gen_range(&mut rng, 1..20_000));
            let cp = compress_path(g, p, beta, rho).unwrap();
            let n = p.len();
            assert_eq!(cp.pi[0], 0);
            assert_eq!(*cp.pi.last().unwrap(), n - 1);
            assert!(cp.pi.windows(2).all(|w| w[0] < w[1]));
            for i in 0..cp.len() {
                if i + 3 < cp.len() {
                    let len = p.length_between(cp.pi[i], cp.pi[i + 3]).unwrap();
                    // Positive weights make this strict.
                    assert!(!len.le_scaled(beta, rho), "{len} vs beta*rho");
                }
                if i + 1 < cp.len() {
                    let (a, b) = (cp.pi[i], cp.pi[i + 1]);
                    for x in a + 1..b {
                        assert!(p.length_between(a, x).unwrap().lt_scaled(beta, rho));
                        assert!(p.length_between(x, b).unwrap().lt_scaled(beta, rho));
                    }
                }
            }
            for x in 0..n {
                let k = cp.pred_index[x];
                assert!(cp.pi[k] <= x && (k + 1 == cp.len() || cp.pi[k + 1] > x));
            }
        }
    }

    #[test]
    fn alpha_from_epsilon() {
        let (a, b) = alpha_beta_for_epsilon(Scalar::new(7, 8)).unwrap();
        assert_eq!((a, b), (Scalar::new(1, 4), Scalar::new(1, 4)));
        let params = EpsParams::new(Scalar::from_integer(1), a, b).unwrap();
        assert_eq!(params.gap_factor(), Scalar::new(15, 8));
        for eps in [Scalar::new(1, 100), Scalar::new(1, 10), Scalar::from_integer(1), Scalar::from_integer(5)] {
            let (a, _) = alpha_beta_for_epsilon(eps).unwrap();
            let one = Scalar::from_integer(1);
            assert!((one + a) * (one + a + a) <= one + eps);
            assert!(a <= Scalar::new(1, 2));
        }
        assert!(alpha_beta_for_epsilon(Scalar::from_integer(0)).is_err());
        assert!(alpha_beta_for_epsilon(Scalar::new(1, 1000)).is_err());
    }

    #[test]
    fn parameter_and_oracle_checks() {
        let one = Scalar::from_integer(1);
        assert!(EpsParams::new(one, Scalar::new(3, 4), Scalar::new(1, 4)).is_err());
        assert!(EpsParams::new(one, Scalar::new(1, 4), Scalar::from_integer(0)).is_err());
        let g = unit_chain(5);
        let p = Walk::new(&g, (0..5).collect()).unwrap();
        let vd = g.voronoi(p.vertices()).unwrap();
        let lm = LandmarkOracle::new(&g, 1, 0).unwrap();
        assert!(matches!(
            decide_eps_strong(&lm, &vd, &p, &p, Weight::ZERO, &quarter()),
            Err(FrechetError::InexactOracle(_))
        ));
        let lm = lm.with_declared_stretch(Scalar::from_integer(2));
        assert!(matches!(
            decide_eps_strong(&lm, &vd, &p, &p, Weight::ZERO, &quarter()),
            Err(FrechetError::StretchTooLarge { .. })
        ));
        let o = ExactOracle::new(&g);
        let other = g.voronoi(&[0, 1]).unwrap();
        assert_eq!(
            decide_eps_strong(&o, &other, &p, &p, Weight::ZERO, &quarter()).unwrap_err(),
            FrechetError::VoronoiMismatch
        );
    }

    #[test]
    fn identical_walks_accept_at_every_rho() {
        let g = unit_chain(12);
        let p = Walk::new(&g, (0..12).collect()).unwrap();
        let o = ExactOracle::new(&g);
        let vd = g.voronoi(p.vertices()).unwrap();
        for rho in [0, 1, 500, 1000, 2500, 10_000] {
            let rho = Weight::from_milli(rho);
            assert!(decide_eps_strong(&o, &vd, &p, &p, rho, &quarter()).unwrap().is_at_most());
            assert!(decide_eps_weak(&o, &vd, &p, &p, rho, &quarter()).unwrap().is_at_most());
        }
        let iv = approx_value_eps(&o, &p, &p, Scalar::from_integer(1), Scalar::new(7, 8), Mode::Strong, Scalar::new(1, 64)).unwrap();
        assert_eq!((iv.lo, iv.hi), (Weight::ZERO, Weight::ZERO));
    }

    #[test]
    fn far_walk_has_empty_windows() {
        let g = unit_chain(10);
        let p = Walk::new(&g, vec![0, 1, 2]).unwrap();
        let q = Walk::new(&g, vec![7, 8, 9]).unwrap();
        let o = ExactOracle::new(&g);
        let vd = g.voronoi(p.vertices()).unwrap();
        let rho = Weight::from_units(4);
        let cp = compress_path(&g, &p, Scalar::new(1, 4), rho).unwrap();
        let ws = build_windows(&g, &vd, &cp, &p, &q, rho, Scalar::from_integer(1), Scalar::new(1, 4)).unwrap();
        assert!(ws.iter().all(|w| w.range.is_none()));
        let v = decide_eps_strong(&o, &vd, &p, &q, rho, &quarter()).unwrap();
        assert_eq!(v.verdict, Verdict::GreaterThanRho);
    }

    #[test]
    fn window_on_path_contains_predecessor() {
        let g = unit_chain(30);
        let p = Walk::new(&g, (0..30).collect()).unwrap();
        let q = Walk::new(&g, vec![17]).unwrap();
        let rho = Weight::from_units(8);
        let beta = Scalar::new(1, 4);
        let cp = compress_path(&g, &p, beta, rho).unwrap();
        let vd = g.voronoi(p.vertices()).unwrap();
        let ws = build_windows(&g, &vd, &cp, &p, &q, rho, Scalar::from_integer(1), beta).unwrap();
        assert_eq!(ws[0].nearest, Some(17));
        assert_eq!(ws[0].dist, Weight::ZERO);
        assert!(ws[0].contains(cp.pred_index[17]));
        assert!(ws[0].width() <= 2 * window_half_width(Scalar::from_integer(1), beta).unwrap() + 1);
    }

    #[test]
    fn weak_accepts_where_strong_must_reject() {
        // Q runs to the end of P, back to the start, and forward again.
        let g = unit_chain(3);
        let o = ExactOracle::new(&g);
        let p = Walk::new(&g, vec![0, 1, 2]).unwrap();
        let q = Walk::new(&g, vec![0, 1, 2, 1, 0, 1, 2]).unwrap();
        assert_eq!(exact_weak(&o, &p, &q).unwrap(), Weight::ZERO);
        assert_eq!(exact_strong(&o, &p, &q).unwrap(), Weight::from_units(1));
        let vd = g.voronoi(p.vertices()).unwrap();
        let strong = decide_eps_strong(&o, &vd, &p, &q, Weight::ZERO, &quarter()).unwrap();
        let weak = decide_eps_weak(&o, &vd, &p, &q, Weight::ZERO, &quarter()).unwrap();
        assert_eq!(strong.verdict, Verdict::GreaterThanRho);
        assert_eq!(weak.verdict, Verdict::AtMostScaled);
    }

    #[test]
    fn three_by_three_lattices_never_separate_weak_from_strong() {
        // For every set of allowed cells in a 3x3 lattice, an 8-connected
        // corner-to-corner walk implies a monotone one.
        let reach = |allowed: u16, monotone: bool| {
            let mut seen = 1u16;
            let mut stack = vec![(0usize, 0usize)];
            while let Some((i, j)) = stack.pop() {
                for (di, dj) in [(-1i32, -1i32), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)] {
                    if monotone && (di < 0 || dj < 0) {
                        continue;
                    }
                    let (a, b) = (i as i32 + di, j as i32 + dj);
                    if !(0..3).contains(&a) || !(0..3).contains(&b) {
                        continue;
                    }
                    let bit = 1u16 << (a * 3 + b);
                    if allowed & bit != 0 && seen & bit == 0 {
                        seen |= bit;
                        stack.push((a as usize, b as usize));
                    }
                }
            }
            seen & (1 << 8) != 0
        };
        for mask in 0u16..512 {
            let allowed = mask | 1 | (1 << 8);
            assert_eq!(reach(allowed, false), reach(allowed, true), "{allowed:09b}");
        }
    }

    #[test]
    fn random_sandwich_both_modes() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let params = quarter();
        for _ in 0..50 {
            let inst = random_instance(&mut rng, &InstanceConfig::medium());
            let o = ExactOracle::new(&inst.graph);
            let vd = inst.graph.voronoi(inst.p.vertices()).unwrap();
            let strong = exact_strong(&o, &inst.p, &inst.q).unwrap();
            let weak = exact_weak(&o, &inst.p, &inst.q).unwrap();
            for rho in rho_sweep(strong).into_iter().chain(rho_sweep(weak)) {
                let v = decide_eps_strong(&o, &vd, &inst.p, &inst.q, rho, &params).unwrap();
                assert!(v.consistent_with(strong), "strong {v:?} vs {strong}");
                let h = window_half_width(params.kappa, params.beta).unwrap();
                assert!(v.stats.grid_size.unwrap() <= inst.q.len() * (2 * h + 1));
                let v = decide_eps_weak(&o, &vd, &inst.p, &inst.q, rho, &params).unwrap();
                assert!(v.consistent_with(weak), "weak {v:?} vs {weak}");
            }
        }
    }

    #[test]
    fn free_space_properties_hold_on_small_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let params = quarter();
        let h = window_half_width(params.kappa, params.beta).unwrap();
        for _ in 0..60 {
            let inst = random_instance(&mut rng, &InstanceConfig::medium());
            let (g, p, q) = (&inst.graph, &inst.p, &inst.q);
            assert!(verify_kappa_straight(g, p, params.kappa).unwrap());
            let o = ExactOracle::new(g);
            let vd = g.voronoi(p.vertices()).unwrap();
            let rho = Weight::from_milli(rand::Rng::gen_range(&mut rng, 1..15_000));
            let mat = materialize_beta(&o, p, q, rho, &params).unwrap();
            let cp = compress_path(g, p, params.beta, rho).unwrap();
            let ws = build_windows(g, &vd, &cp, p, q, rho, params.kappa, params.beta).unwrap();
            let np = cp.len();
            for j in 0..q.len() {
                for i in 0..np {
                    let lo = if i == 0 { cp.pi[0] } else { cp.pi[i - 1] + 1 };
                    let hi = if i + 1 == np { cp.pi[i] } else { cp.pi[i + 1] - 1 };
                    if mat[cp.pi[i]][j] == Near {
                        for x in lo..=hi {
                            assert_ne!(mat[x][j], Far);
                        }
                    }
                    if i + 1 < np && (cp.pi[i] + 1..cp.pi[i + 1]).any(|x| mat[x][j] == Near) {
                        assert_ne!(mat[cp.pi[i]][j], Far);
                        assert_ne!(mat[cp.pi[i + 1]][j], Far);
                    }
                    let hit = (cp.pi[i]..=cp.pi[(i + 1).min(np - 1)]).any(|x| mat[x][j] == Near);
                    if hit {
                        let a = cp.pi[i.saturating_sub(h)];
                        let b = cp.pi[(i + h).min(np - 1)];
                        assert!((0..p.len()).filter(|&y| mat[y][j] == Near).all(|y| a <= y && y <= b));
                    }
                }
                if ws[j].range.is_some() {
                    for y in 0..p.len() {
                        if mat[y][j] == Near {
                            assert!(ws[j].contains(cp.pred_index[y]));
                        }
                    }
                }
            }
        }
    }
}
