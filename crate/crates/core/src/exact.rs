//! Exact engines: the quadratic dynamic program for the strong distance, a
//! union-find sweep for the weak distance, and an exhaustive enumerator used
//! as a test oracle.

use serde::Serialize;

use crate::error::{FrechetError, Result};
use crate::fsm::LatticeWalk;
use crate::graph::Walk;
use crate::oracle::DistanceOracle;
use crate::weight::{Scalar, Weight};

/// Cell limit for [`brute_force`].
pub const BRUTE_FORCE_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strong,
    Weak,
}

impl std::str::FromStr for Mode {
    type Err = FrechetError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strong" => Ok(Mode::Strong),
            "weak" => Ok(Mode::Weak),
            _ => Err(FrechetError::InvalidParameter(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub value: Weight,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<LatticeWalk>,
    pub cell_evaluations: u64,
}

pub(crate) fn check_walks<O: DistanceOracle + ?Sized>(o: &O, p: &Walk, q: &Walk) -> Result<()> {
    let id = o.graph().id();
    if p.graph_id() != id || q.graph_id() != id {
        return Err(crate::graph::GraphError::GraphMismatch.into());
    }
    Ok(())
}

pub(crate) fn require_exact<O: DistanceOracle + ?Sized>(o: &O) -> Result<()> {
    match o.stretch() {
        Some(s) if s == Scalar::from_integer(1) => Ok(()),
        Some(s) => Err(FrechetError::InexactOracle(format!("stretch {s}"))),
        None => Err(FrechetError::InexactOracle("an oracle without a stretch bound".into())),
    }
}

fn distance_matrix<O: DistanceOracle + ?Sized>(o: &O, p: &Walk, q: &Walk) -> Result<Vec<Vec<Weight>>> {
    p.vertices()
        .iter()
        .map(|&a| q.vertices().iter().map(|&b| Ok(o.query(a, b)?)).collect())
        .collect()
}

/// Strong (monotone) discrete Fréchet distance.
pub fn exact_strong<O: DistanceOracle + ?Sized>(o: &O, p: &Walk, q: &Walk) -> Result<Weight> {
    Ok(exact_strong_detailed(o, p, q, false)?.value)
}

/// Strong distance with an optional optimal monotone witness.
///
/// Without a witness only one row of the table is kept, over the shorter walk.
pub fn exact_strong_detailed<O: DistanceOracle + ?Sized>(
    o: &O,
    p: &Walk,
    q: &Walk,
    witness: bool,
) -> Result<ExactResult> {
    require_exact(o)?;
    check_walks(o, p, q)?;
    let (n, m) = (p.len(), q.len());
    if witness {
        let d = distance_matrix(o, p, q)?;
        let mut dp = vec![vec![Weight::ZERO; m]; n];
        for i in 0..n {
            for j in 0..m {
                let prev = match (i, j) {
                    (0, 0) => Weight::ZERO,
                    (0, _) => dp[0][j - 1],
                    (_, 0) => dp[i - 1][0],
                    _ => dp[i - 1][j].min(dp[i][j - 1]).min(dp[i - 1][j - 1]),
                };
                dp[i][j] = d[i][j].max(prev);
            }
        }
        let mut cells = vec![(n - 1, m - 1)];
        let (mut i, mut j) = (n - 1, m - 1);
        while (i, j) != (0, 0) {
            let candidates = [
                (i.checked_sub(1), j.checked_sub(1)),
                (i.checked_sub(1), Some(j)),
                (Some(i), j.checked_sub(1)),
            ];
            let (bi, bj) = candidates
                .into_iter()
                .filter_map(|(a, b)| Some((a?, b?)))
                .min_by_key(|&(a, b)| dp[a][b])
                .expect("some predecessor exists off the origin");
            i = bi;
            j = bj;
            cells.push((i, j));
        }
        cells.reverse();
        return Ok(ExactResult {
            value: dp[n - 1][m - 1],
            mode: Mode::Strong,
            witness: Some(LatticeWalk::new(cells)),
            cell_evaluations: (n * m) as u64,
        });
    }

    // Roll over the longer walk, keeping one row indexed by the shorter one.
    let (long, short) = if n >= m { (p, q) } else { (q, p) };
    let mut row = vec![Weight::ZERO; short.len()];
    for (i, &a) in long.vertices().iter().enumerate() {
        let mut diag = Weight::ZERO;
        for (j, &b) in short.vertices().iter().enumerate() {
            let d = o.query(a, b)?;
            let prev = match (i, j) {
                (0, 0) => Weight::ZERO,
                (0, _) => row[j - 1],
                (_, 0) => row[0],
                _ => row[j].min(row[j - 1]).min(diag),
            };
            diag = row[j];
            row[j] = d.max(prev);
        }
    }
    Ok(ExactResult {
        value: row[short.len() - 1],
        mode: Mode::Strong,
        witness: None,
        cell_evaluations: (n * m) as u64,
    })
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] += 1;
            }
        }
    }
}

fn neighbours8(i: usize, j: usize, n: usize, m: usize) -> impl Iterator<Item = (usize, usize)> {
    (-1i64..=1)
        .flat_map(|di| (-1i64..=1).map(move |dj| (di, dj)))
        .filter(|&d| d != (0, 0))
        .filter_map(move |(di, dj)| {
            let (a, b) = (i as i64 + di, j as i64 + dj);
            (a >= 0 && b >= 0 && (a as usize) < n && (b as usize) < m).then_some((a as usize, b as usize))
        })
}

/// Weak discrete Fréchet distance: the minimax over all 8-connected lattice
/// walks, by activating cells in ascending order until the corners connect.
pub fn exact_weak<O: DistanceOracle + ?Sized>(o: &O, p: &Walk, q: &Walk) -> Result<Weight> {
    Ok(exact_weak_detailed(o, p, q, false)?.value)
}

pub fn exact_weak_detailed<O: DistanceOracle + ?Sized>(
    o: &O,
    p: &Walk,
    q: &Walk,
    witness: bool,
) -> Result<ExactResult> {
    require_exact(o)?;
    check_walks(o, p, q)?;
    let (n, m) = (p.len(), q.len());
    let d = distance_matrix(o, p, q)?;
    let mut order: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).collect();
    order.sort_by_key(|&(i, j)| (d[i][j], i, j));
    let mut uf = UnionFind::new(n * m);
    let mut active = vec![false; n * m];
    let (start, end) = (0, n * m - 1);
    let mut value = d[0][0].max(d[n - 1][m - 1]);
    for (i, j) in order {
        let id = i * m + j;
        active[id] = true;
        for (a, b) in neighbours8(i, j, n, m) {
            if active[a * m + b] {
                uf.union(id, a * m + b);
            }
        }
        if active[start] && active[end] && uf.find(start) == uf.find(end) {
            value = d[i][j];
            break;
        }
    }
    let witness = witness.then(|| LatticeWalk::new(bfs_walk(&d, value)));
    Ok(ExactResult {
        value,
        mode: Mode::Weak,
        witness,
        cell_evaluations: (n * m) as u64,
    })
}

/// Shortest 8-connected walk through cells of value at most `limit`.
fn bfs_walk(d: &[Vec<Weight>], limit: Weight) -> Vec<(usize, usize)> {
    let (n, m) = (d.len(), d[0].len());
    let mut prev = vec![None; n * m];
    let mut seen = vec![false; n * m];
    let mut queue = std::collections::VecDeque::from([(0usize, 0usize)]);
    seen[0] = true;
    while let Some((i, j)) = queue.pop_front() {
        if (i, j) == (n - 1, m - 1) {
            break;
        }
        for (a, b) in neighbours8(i, j, n, m) {
            if !seen[a * m + b] && d[a][b] <= limit {
                seen[a * m + b] = true;
                prev[a * m + b] = Some((i, j));
                queue.push_back((a, b));
            }
        }
    }
    let mut cells = vec![(n - 1, m - 1)];
    while let Some(p) = prev[cells[cells.len() - 1].0 * m + cells[cells.len() - 1].1] {
        cells.push(p);
    }
    cells.reverse();
    cells
}

/// Exhaustive minimax over lattice walks from `(0,0)` to `(n-1,m-1)`.
///
/// With `monotone`, every monotone walk is enumerated explicitly. Otherwise
/// a label-correcting search relaxes the best known bottleneck per cell over
/// all 8 neighbours. Limited to [`BRUTE_FORCE_LIMIT`] cells.
pub fn brute_force<O: DistanceOracle + ?Sized>(o: &O, p: &Walk, q: &Walk, monotone: bool) -> Result<Weight> {
    check_walks(o, p, q)?;
    let (n, m) = (p.len(), q.len());
    if n * m > BRUTE_FORCE_LIMIT {
        return Err(FrechetError::TooLarge {
            cells: n * m,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let d = distance_matrix(o, p, q)?;
    if monotone {
        let mut best = Weight::INFINITY;
        enumerate_monotone(&d, 0, 0, d[0][0], &mut best);
        return Ok(best);
    }
    let mut best = vec![Weight::INFINITY; n * m];
    best[0] = d[0][0];
    let mut stack = vec![(0usize, 0usize)];
    while let Some((i, j)) = stack.pop() {
        let here = best[i * m + j];
        for (a, b) in neighbours8(i, j, n, m) {
            let cost = here.max(d[a][b]);
            if cost < best[a * m + b] {
                best[a * m + b] = cost;
                stack.push((a, b));
            }
        }
    }
    Ok(best[n * m - 1])
}

fn enumerate_monotone(d: &[Vec<Weight>], i: usize, j: usize, cost: Weight, best: &mut Weight) {
    let (n, m) = (d.len(), d[0].len());
    if (i, j) == (n - 1, m - 1) {
        *best = (*best).min(cost);
        return;
    }
    for (a, b) in [(i + 1, j), (i, j + 1), (i + 1, j + 1)] {
        if a < n && b < m {
            enumerate_monotone(d, a, b, cost.max(d[a][b]), best);
        }
    }
}
