//! Seeded random instances for tests and benchmarks.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, GraphBuilder, VertexId, Walk};
use crate::weight::Weight;

/// A connected graph with `n` vertices: a random spanning tree plus up to
/// `extra_edges` further edges, weights drawn in milli-units from `weights`.
pub fn random_connected_graph<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    extra_edges: usize,
    weights: RangeInclusive<u64>,
) -> Graph {
    let mut b = GraphBuilder::new(n);
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(rng);
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        let w = Weight::from_milli(rng.gen_range(weights.clone()));
        b.add_edge(order[k], parent, w).expect("tree edges are fresh");
    }
    if n >= 2 {
        for _ in 0..extra_edges {
            let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if u != v && !b.has_edge(u, v) {
                let w = Weight::from_milli(rng.gen_range(weights.clone()));
                b.add_edge(u, v, w).expect("checked above");
            }
        }
    }
    b.build()
}

/// A random walk of exactly `len` vertices from `start`.
pub fn random_walk<R: Rng + ?Sized>(rng: &mut R, graph: &Graph, start: VertexId, len: usize) -> Walk {
    let mut vs = vec![start];
    while vs.len() < len {
        let nb = graph.neighbors(vs[vs.len() - 1]);
        if nb.is_empty() {
            break;
        }
        vs.push(nb[rng.gen_range(0..nb.len())].0);
    }
    Walk::new(graph, vs).expect("steps follow edges")
}

/// A sub-path of a random shortest path with at most `max_len` vertices.
/// Sub-paths of shortest paths are shortest paths, hence 1-straight.
pub fn random_shortest_path<R: Rng + ?Sized>(rng: &mut R, graph: &Graph, max_len: usize) -> Walk {
    let n = graph.vertex_count();
    let s = rng.gen_range(0..n);
    let t = rng.gen_range(0..n);
    let path = graph
        .shortest_path(s, t)
        .expect("valid ids")
        .unwrap_or_else(|| vec![s]);
    let len = rng.gen_range(1..=max_len.min(path.len()));
    let off = rng.gen_range(0..=path.len() - len);
    Walk::new(graph, path[off..off + len].to_vec()).expect("sub-path of a path")
}

#[derive(Debug, Clone)]
pub struct InstanceConfig {
    pub vertices: RangeInclusive<usize>,
    pub extra_edges: RangeInclusive<usize>,
    /// Weights are `step * k` milli-units with `k` drawn from `multiples`.
    pub weight_step: u64,
    pub multiples: RangeInclusive<u64>,
    pub max_p: usize,
    pub max_q: usize,
}

impl InstanceConfig {
    /// Graphs up to 12 vertices with walks up to 6 vertices.
    pub fn small() -> Self {
        InstanceConfig {
            vertices: 2..=12,
            extra_edges: 0..=8,
            weight_step: 250,
            multiples: 1..=12,
            max_p: 6,
            max_q: 6,
        }
    }

    /// Graphs up to 30 vertices with walks up to 12 vertices.
    pub fn medium() -> Self {
        InstanceConfig {
            vertices: 4..=30,
            extra_edges: 0..=25,
            weight_step: 1,
            multiples: 100..=5000,
            max_p: 12,
            max_q: 12,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub graph: Graph,
    /// A shortest path, hence 1-straight.
    pub p: Walk,
    pub q: Walk,
}

/// P is a shortest sub-path; Q is a random walk that starts on or next to P.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, cfg: &InstanceConfig) -> RandomInstance {
    let n = rng.gen_range(cfg.vertices.clone());
    let extra = rng.gen_range(cfg.extra_edges.clone());
    let lo = cfg.weight_step * cfg.multiples.start();
    let hi = cfg.weight_step * cfg.multiples.end();
    let graph = if cfg.weight_step == 1 {
        random_connected_graph(rng, n, extra, lo..=hi)
    } else {
        let mut g = random_connected_graph(rng, n, extra, *cfg.multiples.start()..=*cfg.multiples.end());
        g = scale_weights(&g, cfg.weight_step);
        g
    };
    let p = random_shortest_path(rng, &graph, cfg.max_p);
    let anchor = p.vertices()[rng.gen_range(0..p.len())];
    let start = match graph.neighbors(anchor) {
        nb if !nb.is_empty() && rng.gen_bool(0.5) => nb[rng.gen_range(0..nb.len())].0,
        _ => anchor,
    };
    let q_len = rng.gen_range(1..=cfg.max_q);
    let q = random_walk(rng, &graph, start, q_len);
    RandomInstance { graph, p, q }
}

/// Probe values around a known distance `d`: `d/3, d/2, d-1, d, d+1, 3d/2,
/// 2d, 3d` in milli-units, deduplicated.
pub fn rho_sweep(d: Weight) -> Vec<Weight> {
    let x = d.milli();
    let mut out: Vec<Weight> = [x / 3, x / 2, x.saturating_sub(1), x, x + 1, x * 3 / 2, x * 2, x * 3]
        .into_iter()
        .map(Weight::from_milli)
        .collect();
    out.dedup();
    out
}

fn scale_weights(g: &Graph, step: u64) -> Graph {
    let mut b = GraphBuilder::new(g.vertex_count());
    for (u, v, w) in g.edges() {
        b.add_edge(u, v, Weight::from_milli(w.milli() * step))
            .expect("edges copied from a valid graph");
    }
    b.build()
}
