//! Planar-style construction: `P` and `Q` are simple paths and label
//! distances are realized through one hub vertex per label.

use super::tables::{BLUE_LABELS, RED_LABELS, TABLE1};
use super::{has_orthogonal_pair, OvInstance, OvVectors, Variant};
use crate::graph::{GraphBuilder, VertexId, Walk};
use crate::weight::Weight;

const SPOKE: u64 = 1;
const SHORT_EDGE: u64 = 2000;
const PATH_EDGE: u64 = 3000;

struct Builder {
    g: GraphBuilder,
    blue_hubs: Vec<VertexId>,
    red_hubs: Vec<VertexId>,
}

impl Builder {
    fn new() -> Self {
        let mut g = GraphBuilder::new(0);
        let blue_hubs: Vec<_> = BLUE_LABELS
            .iter()
            .map(|l| g.add_vertex(Some(&format!("star:{l}"))))
            .collect();
        let red_hubs: Vec<_> = RED_LABELS
            .iter()
            .map(|l| g.add_vertex(Some(&format!("star:{l}"))))
            .collect();
        for (b, &hb) in blue_hubs.iter().enumerate() {
            for (r, &hr) in red_hubs.iter().enumerate() {
                let w = Weight::from_milli(TABLE1[b][r] - 2 * SPOKE);
                g.add_edge(hb, hr, w).expect("distinct hubs");
            }
        }
        Builder { g, blue_hubs, red_hubs }
    }

    fn blue(&mut self, label: usize) -> VertexId {
        let v = self.g.add_vertex(Some(BLUE_LABELS[label]));
        self.spoke(v, self.blue_hubs[label]);
        v
    }

    fn red(&mut self, label: usize) -> VertexId {
        let v = self.g.add_vertex(Some(RED_LABELS[label]));
        self.spoke(v, self.red_hubs[label]);
        v
    }

    fn spoke(&mut self, v: VertexId, hub: VertexId) {
        self.g.add_edge(v, hub, Weight::from_milli(SPOKE)).expect("fresh vertex");
    }

    fn edge(&mut self, u: VertexId, v: VertexId, milli: u64) {
        self.g.add_edge(u, v, Weight::from_milli(milli)).expect("fresh edge");
    }

    fn labeled(&mut self, side: Side, label: usize) -> VertexId {
        match side {
            Side::Blue => self.blue(label),
            Side::Red => self.red(label),
        }
    }

    /// Extends `seq` with one coordinate vertex and one separator per bit.
    /// Both coordinate variants are wired in so the unused one hangs off
    /// the path.
    fn vector_gadget(&mut self, seq: &mut Vec<VertexId>, bits: &[bool], side: Side) {
        let [zero, one, sep] = match side {
            Side::Blue => [BLUE_B0, BLUE_B1, BLUE_B],
            Side::Red => [RED_A0, RED_A1, RED_A],
        };
        let mut prev = *seq.last().expect("gadget follows a head vertex");
        for &bit in bits {
            let v0 = self.labeled(side, zero);
            let v1 = self.labeled(side, one);
            let s = self.labeled(side, sep);
            for v in [v0, v1] {
                self.edge(prev, v, PATH_EDGE);
                self.edge(v, s, PATH_EDGE);
            }
            seq.push(if bit { v1 } else { v0 });
            seq.push(s);
            prev = s;
        }
    }
}

#[derive(Clone, Copy)]
enum Side {
    Blue,
    Red,
}

const RED_ALPHA: usize = 0;
const RED_ALPHA_STAR: usize = 1;
const RED_BETA: usize = 2;
const RED_BETA_STAR: usize = 3;
const RED_GAMMA: usize = 4;
const BLUE_X: usize = 0;
const BLUE_Y: usize = 1;
const BLUE_Z: usize = 2;
const BLUE_B0: usize = 3;
const BLUE_B1: usize = 4;
const BLUE_B: usize = 5;
const RED_A0: usize = 5;
const RED_A1: usize = 6;
const RED_A: usize = 7;

/// Builds the paths instance: the strong distance is below 3 iff the sets
/// contain an orthogonal pair, and then it is at most 2.96.
pub fn gen_paths_instance(vectors: &OvVectors) -> OvInstance {
    let mut b = Builder::new();

    let mut p = Vec::new();
    let alpha = b.red(RED_ALPHA);
    let alpha_star = b.red(RED_ALPHA_STAR);
    b.edge(alpha, alpha_star, SHORT_EDGE);
    p.extend([alpha, alpha_star]);
    for a in &vectors.a {
        let gamma = b.red(RED_GAMMA);
        b.edge(*p.last().expect("nonempty"), gamma, PATH_EDGE);
        p.push(gamma);
        b.vector_gadget(&mut p, a, Side::Red);
    }
    let beta_star = b.red(RED_BETA_STAR);
    let beta = b.red(RED_BETA);
    b.edge(*p.last().expect("nonempty"), beta_star, PATH_EDGE);
    b.edge(beta_star, beta, SHORT_EDGE);
    p.extend([beta_star, beta]);

    let mut q: Vec<VertexId> = Vec::new();
    for v in &vectors.b {
        let x = b.blue(BLUE_X);
        if let Some(&last) = q.last() {
            b.edge(last, x, PATH_EDGE);
        }
        let y = b.blue(BLUE_Y);
        b.edge(x, y, PATH_EDGE);
        q.extend([x, y]);
        b.vector_gadget(&mut q, v, Side::Blue);
        let z = b.blue(BLUE_Z);
        b.edge(*q.last().expect("nonempty"), z, PATH_EDGE);
        q.push(z);
    }

    let graph = b.g.build();
    let p = Walk::new(&graph, p).expect("consecutive vertices are adjacent");
    let q = Walk::new(&graph, q).expect("consecutive vertices are adjacent");
    OvInstance {
        ground_truth_orthogonal: has_orthogonal_pair(vectors),
        graph,
        p,
        q,
        variant: Variant::Paths,
        threshold: Weight::from_units(3),
        vectors: vectors.clone(),
    }
}
