//! Constant-size construction: one vertex per label, and `P`, `Q` are
//! walks that revisit them.

use super::tables::{BLUE_LABELS, RED_LABELS, TABLE2};
use super::{has_orthogonal_pair, OvInstance, OvVectors, Variant};
use crate::graph::{GraphBuilder, VertexId, Walk};
use crate::weight::Weight;

const INTRA: u64 = 1800;

// Red path edges, by label index: alpha-alpha*, alpha*-gamma, gamma-A0,
// gamma-A1, A0-A, A1-A, A-beta*, beta*-beta.
const RED_EDGES: [(usize, usize); 8] = [(0, 1), (1, 4), (4, 5), (4, 6), (5, 7), (6, 7), (7, 3), (3, 2)];
// Blue path edges: x-y, y-B0, y-B1, B0-B, B1-B, B-z.
const BLUE_EDGES: [(usize, usize); 6] = [(0, 1), (1, 3), (1, 4), (3, 5), (4, 5), (5, 2)];

/// `(|P|, |Q|)` for `n` vectors in `A`, `m` in `B`, of even dimension `d`.
pub fn walk_lengths(n: usize, m: usize, d: usize) -> (usize, usize) {
    (4 + n * (2 * d + 1) + (n - 1), m * (2 * d + 4) - 1)
}

/// Builds the walks instance on a constant number of vertices. Odd
/// dimensions are padded with a zero coordinate first.
pub fn gen_walks_instance(vectors: &OvVectors) -> OvInstance {
    let vectors = vectors.padded_to_even();
    let mut g = GraphBuilder::new(0);
    let blue: Vec<VertexId> = BLUE_LABELS.iter().map(|l| g.add_vertex(Some(l))).collect();
    let red: Vec<VertexId> = RED_LABELS.iter().map(|l| g.add_vertex(Some(l))).collect();
    let blue_sink = g.add_vertex(Some("sink"));
    let red_sink = g.add_vertex(Some("sink"));

    let mut edge = |u: VertexId, v: VertexId, milli: u64| {
        g.add_edge(u, v, Weight::from_milli(milli)).expect("edges are distinct");
    };
    for (b, &bv) in blue.iter().enumerate() {
        for (r, &rv) in red.iter().enumerate() {
            edge(bv, rv, TABLE2[b][r]);
        }
    }
    for (u, v) in RED_EDGES {
        edge(red[u], red[v], INTRA);
    }
    for (u, v) in BLUE_EDGES {
        edge(blue[u], blue[v], INTRA);
    }
    let [x, y, z, b0, b1, bsep] = blue[..] else { unreachable!() };
    let [alpha, alpha_star, beta, beta_star, gamma, a0, a1, asep] = red[..] else { unreachable!() };
    edge(blue_sink, x, 2000);
    edge(blue_sink, z, 2000);
    edge(blue_sink, alpha, 1900);
    edge(blue_sink, beta, 1900);
    edge(red_sink, x, 1900);
    edge(red_sink, z, 1900);

    let mut p = vec![alpha, alpha_star];
    for (k, a) in vectors.a.iter().enumerate() {
        if k > 0 {
            p.push(a0);
        }
        p.push(gamma);
        for &bit in a {
            p.extend([if bit { a1 } else { a0 }, asep]);
        }
    }
    p.extend([beta_star, beta]);

    let mut q = Vec::new();
    for (k, b) in vectors.b.iter().enumerate() {
        if k > 0 {
            q.push(blue_sink);
        }
        q.extend([x, y]);
        for &bit in b {
            q.extend([if bit { b1 } else { b0 }, bsep]);
        }
        q.push(z);
    }

    let graph = g.build();
    let p = Walk::new(&graph, p).expect("consecutive vertices are adjacent");
    let q = Walk::new(&graph, q).expect("consecutive vertices are adjacent");
    OvInstance {
        ground_truth_orthogonal: has_orthogonal_pair(&vectors),
        graph,
        p,
        q,
        variant: Variant::Walks,
        threshold: Weight::from_milli(1900),
        vectors,
    }
}
