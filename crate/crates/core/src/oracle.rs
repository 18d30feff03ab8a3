//! Distance oracles: the query contract consumed by every Fréchet engine.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{Graph, GraphError, VertexId};
use crate::weight::{Scalar, Weight};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct OracleStats {
    pub queries: u64,
    pub dijkstra_runs: u64,
}

/// Answers distance queries with estimates `d <= est <= stretch * d`.
pub trait DistanceOracle: Sync {
    fn graph(&self) -> &Graph;

    /// The guaranteed stretch, or `None` when no bound is known.
    fn stretch(&self) -> Option<Scalar>;

    fn query(&self, u: VertexId, v: VertexId) -> Result<Weight, GraphError>;

    fn stats(&self) -> OracleStats;
}

/// Exact distances from lazily computed, memoized single-source Dijkstra runs.
pub struct ExactOracle<'g> {
    graph: &'g Graph,
    cache: Vec<OnceLock<Vec<Weight>>>,
    queries: AtomicU64,
    runs: AtomicU64,
}

impl<'g> ExactOracle<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        ExactOracle {
            graph,
            cache: (0..graph.vertex_count()).map(|_| OnceLock::new()).collect(),
            queries: AtomicU64::new(0),
            runs: AtomicU64::new(0),
        }
    }

    /// Distances from `source` to every vertex.
    pub fn distances_from(&self, source: VertexId) -> Result<&[Weight], GraphError> {
        self.graph.check_vertex(source)?;
        Ok(self.cache[source].get_or_init(|| {
            self.runs.fetch_add(1, Ordering::Relaxed);
            self.graph
                .dijkstra(source)
                .expect("source was validated above")
        }))
    }
}

impl DistanceOracle for ExactOracle<'_> {
    fn graph(&self) -> &Graph {
        self.graph
    }

    fn stretch(&self) -> Option<Scalar> {
        Some(Scalar::from_integer(1))
    }

    fn query(&self, u: VertexId, v: VertexId) -> Result<Weight, GraphError> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        self.queries.fetch_add(1, Ordering::Relaxed);
        // Reuse whichever endpoint is already cached.
        if let Some(dist) = self.cache[v].get() {
            if self.cache[u].get().is_none() {
                return Ok(dist[u]);
            }
        }
        Ok(self.distances_from(u)?[v])
    }

    fn stats(&self) -> OracleStats {
        OracleStats {
            queries: self.queries.load(Ordering::Relaxed),
            dijkstra_runs: self.runs.load(Ordering::Relaxed),
        }
    }
}

/// Landmark-based estimates: `min_l d(u,l) + d(l,v)`, never below the true
/// distance. Carries no stretch bound unless one is declared after
/// validation.
pub struct LandmarkOracle<'g> {
    graph: &'g Graph,
    landmarks: Vec<VertexId>,
    tables: Vec<Vec<Weight>>,
    declared_stretch: Option<Scalar>,
    queries: AtomicU64,
}

impl<'g> LandmarkOracle<'g> {
    /// Picks `k` landmarks by farthest-point sampling, starting from a vertex
    /// drawn with `seed`.
    pub fn new(graph: &'g Graph, k: usize, seed: u64) -> Result<Self, GraphError> {
        let n = graph.vertex_count();
        if n == 0 || k == 0 {
            return Err(GraphError::EmptySites);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut landmarks = vec![rng.gen_range(0..n)];
        let mut tables = vec![graph.dijkstra(landmarks[0])?];
        let mut nearest = tables[0].clone();
        while landmarks.len() < k.min(n) {
            // Farthest vertex from the chosen set; unreachable vertices first.
            let next = (0..n)
                .filter(|v| !landmarks.contains(v))
                .max_by_key(|&v| (nearest[v], std::cmp::Reverse(v)));
            let Some(next) = next else { break };
            let dist = graph.dijkstra(next)?;
            for (near, &d) in nearest.iter_mut().zip(&dist) {
                *near = (*near).min(d);
            }
            landmarks.push(next);
            tables.push(dist);
        }
        Ok(LandmarkOracle {
            graph,
            landmarks,
            tables,
            declared_stretch: None,
            queries: AtomicU64::new(0),
        })
    }

    /// Declares a stretch bound. Callers should establish it with
    /// [`validate_stretch`] first.
    pub fn with_declared_stretch(mut self, stretch: Scalar) -> Self {
        self.declared_stretch = Some(stretch);
        self
    }

    pub fn landmarks(&self) -> &[VertexId] {
        &self.landmarks
    }

    /// `(lower, upper)` bounds on `d(u, v)` from the triangle inequality.
    pub fn bounds(&self, u: VertexId, v: VertexId) -> Result<(Weight, Weight), GraphError> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        if u == v {
            return Ok((Weight::ZERO, Weight::ZERO));
        }
        let mut lower = Weight::ZERO;
        let mut upper = Weight::INFINITY;
        for t in &self.tables {
            let (du, dv) = (t[u], t[v]);
            upper = upper.min(du + dv);
            if du.is_finite() && dv.is_finite() {
                lower = lower.max(Weight::from_milli(du.milli().abs_diff(dv.milli())));
            } else if du.is_finite() != dv.is_finite() {
                lower = Weight::INFINITY;
            }
        }
        Ok((lower, upper))
    }
}

impl DistanceOracle for LandmarkOracle<'_> {
    fn graph(&self) -> &Graph {
        self.graph
    }

    fn stretch(&self) -> Option<Scalar> {
        self.declared_stretch
    }

    fn query(&self, u: VertexId, v: VertexId) -> Result<Weight, GraphError> {
        let (lower, upper) = self.bounds(u, v)?;
        self.queries.fetch_add(1, Ordering::Relaxed);
        Ok(upper.max(lower))
    }

    fn stats(&self) -> OracleStats {
        OracleStats {
            queries: self.queries.load(Ordering::Relaxed),
            dijkstra_runs: self.landmarks.len() as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StretchViolation {
    pub u: VertexId,
    pub v: VertexId,
    pub exact: Weight,
    pub estimate: Weight,
}

/// Every sampled pair whose estimate falls outside `[d, stretch * d]`.
pub fn validate_stretch<O: DistanceOracle + ?Sized>(
    oracle: &O,
    graph: &Graph,
    stretch: Scalar,
    sample: &[(VertexId, VertexId)],
) -> Result<Vec<StretchViolation>, GraphError> {
    let mut by_source: Vec<(VertexId, VertexId)> = sample.to_vec();
    by_source.sort_unstable();
    let mut out = Vec::new();
    let mut current: Option<(VertexId, Vec<Weight>)> = None;
    for (u, v) in by_source {
        graph.check_vertex(v)?;
        if current.as_ref().map(|c| c.0) != Some(u) {
            current = Some((u, graph.dijkstra(u)?));
        }
        let exact = current.as_ref().expect("set above").1[v];
        let estimate = oracle.query(u, v)?;
        let ok = if exact.is_finite() {
            exact <= estimate && estimate.le_scaled(stretch, exact)
        } else {
            !estimate.is_finite()
        };
        if !ok {
            out.push(StretchViolation { u, v, exact, estimate });
        }
    }
    Ok(out)
}
