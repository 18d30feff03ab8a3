//! Undirected weighted graphs, validated walks, Dijkstra, and graph Voronoi
//! diagrams.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::weight::{Scalar, Weight};

pub type VertexId = usize;

static NEXT_GRAPH_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    InvalidVertex {
        vertex: VertexId,
        vertex_count: usize,
    },
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge {0}-{1} has infinite weight")]
    InfiniteWeight(VertexId, VertexId),
    #[error("walk is empty")]
    EmptyWalk,
    #[error("walk step {index}: {from} and {to} are not adjacent")]
    NotAdjacent {
        index: usize,
        from: VertexId,
        to: VertexId,
    },
    #[error("walk index range {from}..={to} invalid for walk of length {len}")]
    IndexOutOfRange { from: usize, to: usize, len: usize },
    #[error("walk is not a path: vertex {0} repeats")]
    NotAPath(VertexId),
    #[error("site set is empty")]
    EmptySites,
    #[error("objects belong to different graphs")]
    GraphMismatch,
}

/// An undirected graph with fixed-point edge weights and optional vertex
/// labels. Immutable once built.
#[derive(Debug, Clone)]
pub struct Graph {
    id: u64,
    adjacency: Vec<Vec<(VertexId, Weight)>>,
    labels: Vec<Option<String>>,
    edge_count: usize,
}

/// Accumulates edges and labels, rejecting self-loops and parallel edges.
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adjacency: Vec<Vec<(VertexId, Weight)>>,
    labels: Vec<Option<String>>,
    edge_count: usize,
}

impl GraphBuilder {
    pub fn new(vertex_count: usize) -> Self {
        GraphBuilder {
            adjacency: vec![Vec::new(); vertex_count],
            labels: vec![None; vertex_count],
            edge_count: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Appends a fresh vertex and returns its id.
    pub fn add_vertex(&mut self, label: Option<&str>) -> VertexId {
        self.adjacency.push(Vec::new());
        self.labels.push(label.map(str::to_owned));
        self.adjacency.len() - 1
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.adjacency.len() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex {
                vertex: v,
                vertex_count: self.adjacency.len(),
            })
        }
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|adj| adj.iter().any(|&(x, _)| x == v))
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, w: Weight) -> Result<&mut Self, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !w.is_finite() {
            return Err(GraphError::InfiniteWeight(u, v));
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adjacency[u].push((v, w));
        self.adjacency[v].push((u, w));
        self.edge_count += 1;
        Ok(self)
    }

    pub fn set_label(&mut self, v: VertexId, label: impl Into<String>) -> Result<&mut Self, GraphError> {
        self.check(v)?;
        self.labels[v] = Some(label.into());
        Ok(self)
    }

    pub fn build(self) -> Graph {
        Graph {
            id: NEXT_GRAPH_ID.fetch_add(1, Ordering::Relaxed),
            adjacency: self.adjacency,
            labels: self.labels,
            edge_count: self.edge_count,
        }
    }
}

impl Graph {
    /// Builds a graph from an edge list; labels can be added via [`GraphBuilder`].
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, Weight)>,
    ) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new(vertex_count);
        for (u, v, w) in edges {
            b.add_edge(u, v, w)?;
        }
        Ok(b.build())
    }

    /// Process-unique identity, shared by clones.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, Weight)] {
        &self.adjacency[v]
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.get(v).and_then(|l| l.as_deref())
    }

    pub fn edge_weight(&self, u: VertexId, v: VertexId) -> Option<Weight> {
        self.adjacency
            .get(u)?
            .iter()
            .find(|&&(x, _)| x == v)
            .map(|&(_, w)| w)
    }

    /// Each undirected edge once, as `(min, max, weight)`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId, Weight)> {
        let mut out: Vec<_> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().filter(move |&&(v, _)| u < v).map(move |&(v, w)| (u, v, w)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn min_positive_edge_weight(&self) -> Option<Weight> {
        self.adjacency
            .iter()
            .flatten()
            .map(|&(_, w)| w)
            .filter(|w| w.milli() > 0)
            .min()
    }

    pub fn total_edge_weight(&self) -> Weight {
        self.edges()
            .into_iter()
            .fold(Weight::ZERO, |acc, (_, _, w)| acc + w)
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    /// Single-source shortest path distances; unreachable vertices get
    /// [`Weight::INFINITY`].
    pub fn dijkstra(&self, source: VertexId) -> Result<Vec<Weight>, GraphError> {
        self.check_vertex(source)?;
        let mut dist = vec![Weight::INFINITY; self.vertex_count()];
        let mut heap = BinaryHeap::new();
        dist[source] = Weight::ZERO;
        heap.push(Reverse((Weight::ZERO, source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, w) in &self.adjacency[u] {
                let nd = d + w;
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        Ok(dist)
    }

    /// Dijkstra that also returns a shortest-path predecessor per vertex.
    pub fn dijkstra_with_parents(
        &self,
        source: VertexId,
    ) -> Result<(Vec<Weight>, Vec<Option<VertexId>>), GraphError> {
        self.check_vertex(source)?;
        let n = self.vertex_count();
        let mut dist = vec![Weight::INFINITY; n];
        let mut parent = vec![None; n];
        let mut heap = BinaryHeap::new();
        dist[source] = Weight::ZERO;
        heap.push(Reverse((Weight::ZERO, source)));
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, w) in &self.adjacency[u] {
                let nd = d + w;
                if nd < dist[v] {
                    dist[v] = nd;
                    parent[v] = Some(u);
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        Ok((dist, parent))
    }

    /// A shortest path from `from` to `to` as a vertex sequence, if reachable.
    pub fn shortest_path(&self, from: VertexId, to: VertexId) -> Result<Option<Vec<VertexId>>, GraphError> {
        self.check_vertex(to)?;
        let (dist, parent) = self.dijkstra_with_parents(from)?;
        if !dist[to].is_finite() {
            return Ok(None);
        }
        let mut path = vec![to];
        let mut cur = to;
        while let Some(p) = parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Ok(Some(path))
    }

    /// Multi-source Dijkstra: every vertex learns its nearest site and the
    /// distance to it. Ties go to the entry popped first under the heap order
    /// `(distance, vertex, site)`.
    pub fn voronoi(&self, sites: &[VertexId]) -> Result<VoronoiDiagram, GraphError> {
        if sites.is_empty() {
            return Err(GraphError::EmptySites);
        }
        for &s in sites {
            self.check_vertex(s)?;
        }
        let n = self.vertex_count();
        let mut dist_to_site = vec![Weight::INFINITY; n];
        let mut site_of = vec![None; n];
        let mut settled = vec![false; n];
        let mut heap = BinaryHeap::new();
        for &s in sites {
            heap.push(Reverse((Weight::ZERO, s, s)));
        }
        while let Some(Reverse((d, u, site))) = heap.pop() {
            if settled[u] {
                continue;
            }
            settled[u] = true;
            dist_to_site[u] = d;
            site_of[u] = Some(site);
            for &(v, w) in &self.adjacency[u] {
                if !settled[v] {
                    let nd = d + w;
                    if nd <= dist_to_site[v] {
                        dist_to_site[v] = nd;
                        heap.push(Reverse((nd, v, site)));
                    }
                }
            }
        }
        let mut site_list = sites.to_vec();
        site_list.sort_unstable();
        site_list.dedup();
        Ok(VoronoiDiagram {
            graph_id: self.id,
            sites: site_list,
            site_of,
            dist_to_site,
        })
    }
}

/// Nearest-site assignment for every vertex of a graph.
#[derive(Debug, Clone, Serialize)]
pub struct VoronoiDiagram {
    #[serde(skip)]
    graph_id: u64,
    pub sites: Vec<VertexId>,
    /// `None` for vertices that cannot reach any site.
    pub site_of: Vec<Option<VertexId>>,
    pub dist_to_site: Vec<Weight>,
}

impl VoronoiDiagram {
    pub fn graph_id(&self) -> u64 {
        self.graph_id
    }

    pub fn nearest(&self, v: VertexId) -> Option<(VertexId, Weight)> {
        self.site_of[v].map(|s| (s, self.dist_to_site[v]))
    }
}

/// A non-empty vertex sequence whose consecutive vertices are adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    graph_id: u64,
    vertices: Vec<VertexId>,
    /// `prefix[k]` is the length of the walk from index 0 to index `k`.
    prefix: Vec<Weight>,
    is_path: bool,
}

impl Walk {
    pub fn new(graph: &Graph, vertices: Vec<VertexId>) -> Result<Walk, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyWalk);
        }
        for &v in &vertices {
            graph.check_vertex(v)?;
        }
        let mut prefix = Vec::with_capacity(vertices.len());
        prefix.push(Weight::ZERO);
        for (index, pair) in vertices.windows(2).enumerate() {
            let w = graph.edge_weight(pair[0], pair[1]).ok_or(GraphError::NotAdjacent {
                index,
                from: pair[0],
                to: pair[1],
            })?;
            prefix.push(prefix[index] + w);
        }
        let mut seen = vertices.clone();
        seen.sort_unstable();
        let is_path = seen.windows(2).all(|w| w[0] != w[1]);
        Ok(Walk {
            graph_id: graph.id(),
            vertices,
            prefix,
            is_path,
        })
    }

    pub fn graph_id(&self) -> u64 {
        self.graph_id
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_path(&self) -> bool {
        self.is_path
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        self.vertices[self.vertices.len() - 1]
    }

    /// Errors with [`GraphError::NotAPath`] naming the first repeated vertex.
    pub fn require_path(&self) -> Result<(), GraphError> {
        if self.is_path {
            return Ok(());
        }
        let mut seen = std::collections::HashSet::new();
        let dup = self
            .vertices
            .iter()
            .find(|v| !seen.insert(**v))
            .copied()
            .unwrap_or_default();
        Err(GraphError::NotAPath(dup))
    }

    /// Sum of edge weights between two indices of the walk.
    pub fn length_between(&self, from_idx: usize, to_idx: usize) -> Result<Weight, GraphError> {
        if from_idx > to_idx || to_idx >= self.len() {
            return Err(GraphError::IndexOutOfRange {
                from: from_idx,
                to: to_idx,
                len: self.len(),
            });
        }
        Ok(Weight::from_milli(
            self.prefix[to_idx].milli() - self.prefix[from_idx].milli(),
        ))
    }

    pub fn total_length(&self) -> Weight {
        self.prefix[self.len() - 1]
    }
}

/// Length of the sub-walk `w[from_idx..=to_idx]`.
pub fn walk_length(graph: &Graph, w: &Walk, from_idx: usize, to_idx: usize) -> Result<Weight, GraphError> {
    if w.graph_id() != graph.id() {
        return Err(GraphError::GraphMismatch);
    }
    w.length_between(from_idx, to_idx)
}

/// Checks that every sub-path of `p` is at most `kappa` times the graph
/// distance between its endpoints. Runs one Dijkstra per path vertex.
pub fn verify_kappa_straight(graph: &Graph, p: &Walk, kappa: Scalar) -> Result<bool, GraphError> {
    if p.graph_id() != graph.id() {
        return Err(GraphError::GraphMismatch);
    }
    p.require_path()?;
    for s in 0..p.len() {
        let dist = graph.dijkstra(p.vertices()[s])?;
        for t in s + 1..p.len() {
            let len = p.length_between(s, t)?;
            if !len.le_scaled(kappa, dist[p.vertices()[t]]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(units: f64) -> Weight {
        Weight::from_milli((units * 1000.0).round() as u64)
    }

    fn chain(weights: &[f64]) -> Graph {
        Graph::from_edges(
            weights.len() + 1,
            weights.iter().enumerate().map(|(i, &x)| (i, i + 1, w(x))),
        )
        .unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n, Weight::from_units(1)))).unwrap()
    }

    #[test]
    fn dijkstra_single_vertex_and_chain() {
        let g = GraphBuilder::new(1).build();
        assert_eq!(g.dijkstra(0).unwrap(), vec![Weight::ZERO]);
        let g = chain(&[1.0, 2.0]);
        assert_eq!(g.dijkstra(0).unwrap(), vec![w(0.0), w(1.0), w(3.0)]);
        assert!(matches!(g.dijkstra(7), Err(GraphError::InvalidVertex { .. })));
    }

    #[test]
    fn dijkstra_marks_unreachable_as_infinite() {
        let g = Graph::from_edges(3, [(0, 1, w(1.0))]).unwrap();
        assert_eq!(g.dijkstra(0).unwrap()[2], Weight::INFINITY);
    }

    #[test]
    fn builder_rejects_loops_and_duplicates() {
        let mut b = GraphBuilder::new(3);
        assert_eq!(b.add_edge(1, 1, w(1.0)).unwrap_err(), GraphError::SelfLoop(1));
        b.add_edge(0, 1, w(1.0)).unwrap();
        assert_eq!(
            b.add_edge(1, 0, w(2.0)).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert!(b.add_edge(0, 5, w(1.0)).is_err());
    }

    #[test]
    fn walk_validation() {
        let g = chain(&[1.0, 2.0]);
        assert_eq!(Walk::new(&g, vec![]).unwrap_err(), GraphError::EmptyWalk);
        assert!(matches!(
            Walk::new(&g, vec![0, 2]),
            Err(GraphError::NotAdjacent { index: 0, .. })
        ));
        let walk = Walk::new(&g, vec![0, 1, 0]).unwrap();
        assert!(!walk.is_path());
        assert_eq!(walk.require_path().unwrap_err(), GraphError::NotAPath(0));
    }

    #[test]
    fn walk_length_examples() {
        let g = chain(&[1.0, 2.0]);
        let p = Walk::new(&g, vec![0, 1, 2]).unwrap();
        assert_eq!(walk_length(&g, &p, 1, 1).unwrap(), Weight::ZERO);
        assert_eq!(walk_length(&g, &p, 0, 2).unwrap(), w(3.0));
        assert!(walk_length(&g, &p, 2, 1).is_err());
        assert!(walk_length(&g, &p, 0, 3).is_err());
    }

    #[test]
    fn kappa_straightness_on_four_cycle() {
        let g = cycle(4);
        let p = Walk::new(&g, vec![0, 1, 2, 3]).unwrap();
        // Sub-path 0..3 has length 3 while d(0, 3) = 1.
        assert!(!verify_kappa_straight(&g, &p, Scalar::from_integer(1)).unwrap());
        assert!(!verify_kappa_straight(&g, &p, Scalar::new(5, 2)).unwrap());
        assert!(verify_kappa_straight(&g, &p, Scalar::from_integer(3)).unwrap());
        let short = Walk::new(&g, vec![0, 1, 2]).unwrap();
        assert!(verify_kappa_straight(&g, &short, Scalar::from_integer(1)).unwrap());
        let not_path = Walk::new(&g, vec![0, 1, 0]).unwrap();
        assert!(verify_kappa_straight(&g, &not_path, Scalar::from_integer(1)).is_err());
    }

    #[test]
    fn voronoi_examples() {
        let g = chain(&[1.0, 1.0, 1.0]);
        let vd = g.voronoi(&[0, 3]).unwrap();
        assert_eq!(vd.site_of, vec![Some(0), Some(0), Some(3), Some(3)]);
        assert_eq!(vd.dist_to_site, vec![w(0.0), w(1.0), w(1.0), w(0.0)]);

        let all: Vec<_> = (0..4).collect();
        let vd = g.voronoi(&all).unwrap();
        assert!(vd.dist_to_site.iter().all(|d| *d == Weight::ZERO));
        assert_eq!(vd.site_of, vec![Some(0), Some(1), Some(2), Some(3)]);

        assert_eq!(g.voronoi(&[]).unwrap_err(), GraphError::EmptySites);
    }

    #[test]
    fn voronoi_ties_prefer_smaller_site() {
        // 0 - 1 - 2, vertex 1 is equidistant from both sites.
        let g = chain(&[1.0, 1.0]);
        let vd = g.voronoi(&[2, 0]).unwrap();
        assert_eq!(vd.site_of[1], Some(0));
    }

    #[test]
    fn shortest_path_reconstruction() {
        let g = Graph::from_edges(4, [(0, 1, w(1.0)), (1, 3, w(1.0)), (0, 2, w(0.5)), (2, 3, w(3.0))]).unwrap();
        assert_eq!(g.shortest_path(0, 3).unwrap(), Some(vec![0, 1, 3]));
    }
}
