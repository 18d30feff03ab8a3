//! Orthogonal-Vectors hardness instances: vector sets, the planar paths
//! construction (threshold 3) and the constant-size walks construction
//! (threshold 1.9), with label-distance tables for checking the wiring.

mod paths;
pub mod tables;
mod walks;

use serde::Serialize;

use crate::graph::{Graph, Walk};
use crate::weight::Weight;

pub use paths::gen_paths_instance;
pub use tables::{BLUE_LABELS, RED_LABELS, TABLE1, TABLE2};
pub use walks::{gen_walks_instance, walk_lengths};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OvError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("vector set {0} is empty")]
    EmptySet(char),
    #[error("vectors have dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vectors must have dimension at least 1")]
    ZeroDimension,
    #[error("no vertex carries label `{0}`")]
    MissingLabel(String),
}

/// Two sets of Boolean vectors of a common dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OvVectors {
    pub a: Vec<Vec<bool>>,
    pub b: Vec<Vec<bool>>,
}

impl OvVectors {
    pub fn new(a: Vec<Vec<bool>>, b: Vec<Vec<bool>>) -> Result<Self, OvError> {
        if a.is_empty() {
            return Err(OvError::EmptySet('A'));
        }
        if b.is_empty() {
            return Err(OvError::EmptySet('B'));
        }
        let d = a[0].len();
        if d == 0 {
            return Err(OvError::ZeroDimension);
        }
        if let Some(v) = a.iter().chain(&b).find(|v| v.len() != d) {
            return Err(OvError::DimensionMismatch {
                expected: d,
                found: v.len(),
            });
        }
        Ok(OvVectors { a, b })
    }

    /// One `0/1` string per line; a blank line separates `A` from `B`.
    pub fn parse(text: &str) -> Result<Self, OvError> {
        let mut sets: Vec<Vec<Vec<bool>>> = vec![Vec::new()];
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.starts_with('#') {
                continue;
            }
            if line.is_empty() {
                if !sets.last().expect("never empty").is_empty() {
                    sets.push(Vec::new());
                }
                continue;
            }
            let v = line
                .chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(OvError::Parse {
                        line: i + 1,
                        reason: format!("unexpected character `{c}`"),
                    }),
                })
                .collect::<Result<Vec<_>, _>>()?;
            sets.last_mut().expect("never empty").push(v);
        }
        if sets.last().is_some_and(Vec::is_empty) {
            sets.pop();
        }
        match sets.len() {
            2 => {
                let b = sets.pop().expect("two sets");
                let a = sets.pop().expect("two sets");
                OvVectors::new(a, b)
            }
            0 => Err(OvError::EmptySet('A')),
            1 => Err(OvError::EmptySet('B')),
            n => Err(OvError::Parse {
                line: text.lines().count(),
                reason: format!("expected two blocks of vectors, found {n}"),
            }),
        }
    }

    pub fn to_text(&self) -> String {
        let row = |v: &Vec<bool>| v.iter().map(|&x| if x { '1' } else { '0' }).collect::<String>();
        let mut out = String::new();
        for v in &self.a {
            out.push_str(&row(v));
            out.push('\n');
        }
        out.push('\n');
        for v in &self.b {
            out.push_str(&row(v));
            out.push('\n');
        }
        out
    }

    pub fn dimension(&self) -> usize {
        self.a[0].len()
    }

    /// Appends a zero coordinate when the dimension is odd.
    pub fn padded_to_even(&self) -> OvVectors {
        if self.dimension().is_multiple_of(2) {
            return self.clone();
        }
        let pad = |s: &Vec<Vec<bool>>| {
            s.iter()
                .map(|v| v.iter().copied().chain([false]).collect())
                .collect()
        };
        OvVectors {
            a: pad(&self.a),
            b: pad(&self.b),
        }
    }
}

/// Whether some `a` in `A` and `b` in `B` share no coordinate set to 1.
pub fn has_orthogonal_pair(v: &OvVectors) -> bool {
    v.a.iter()
        .any(|a| v.b.iter().any(|b| a.iter().zip(b).all(|(&x, &y)| !(x && y))))
}

/// Every set of distinct `d`-dimensional vectors with size in `1..=max_size`,
/// each listed in ascending bit order.
pub fn all_vector_sets(d: usize, max_size: usize) -> Vec<Vec<Vec<bool>>> {
    let vectors: Vec<Vec<bool>> = (0..1u32 << d)
        .map(|bits| (0..d).map(|k| bits >> (d - 1 - k) & 1 == 1).collect())
        .collect();
    let mut out = Vec::new();
    for mask in 1u64..1 << vectors.len() {
        if mask.count_ones() as usize <= max_size {
            out.push(
                (0..vectors.len())
                    .filter(|&k| mask >> k & 1 == 1)
                    .map(|k| vectors[k].clone())
                    .collect(),
            );
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Paths,
    Walks,
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "paths" => Ok(Variant::Paths),
            "walks" => Ok(Variant::Walks),
            _ => Err(format!("unknown variant `{s}`")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OvInstance {
    pub graph: Graph,
    pub p: Walk,
    pub q: Walk,
    pub variant: Variant,
    pub threshold: Weight,
    pub ground_truth_orthogonal: bool,
    /// Vectors actually encoded, after any padding.
    pub vectors: OvVectors,
}

impl OvInstance {
    /// Orthogonality as read off the strong distance: `< 3` for paths,
    /// `<= 1.9` for walks.
    pub fn predicts_orthogonal(&self, distance: Weight) -> bool {
        match self.variant {
            Variant::Paths => distance < self.threshold,
            Variant::Walks => distance <= self.threshold,
        }
    }
}

/// Per (blue, red) label pair, the smallest and largest distance over all
/// vertex pairs carrying those labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelTable {
    pub min: [[Weight; 8]; 6],
    pub max: [[Weight; 8]; 6],
}

pub fn label_distance_table(inst: &OvInstance) -> Result<LabelTable, OvError> {
    let g = &inst.graph;
    let mut min = [[Weight::INFINITY; 8]; 6];
    let mut max = [[Weight::ZERO; 8]; 6];
    let mut blue_seen = [false; 6];
    let mut red_seen = [false; 8];
    let reds: Vec<(usize, usize)> = (0..g.vertex_count())
        .filter_map(|v| g.label(v).and_then(tables::red_index).map(|r| (v, r)))
        .collect();
    for &(_, r) in &reds {
        red_seen[r] = true;
    }
    for v in 0..g.vertex_count() {
        let Some(b) = g.label(v).and_then(tables::blue_index) else { continue };
        blue_seen[b] = true;
        let dist = g.dijkstra(v).expect("valid vertex");
        for &(u, r) in &reds {
            min[b][r] = min[b][r].min(dist[u]);
            max[b][r] = max[b][r].max(dist[u]);
        }
    }
    if let Some(k) = blue_seen.iter().position(|s| !s) {
        return Err(OvError::MissingLabel(BLUE_LABELS[k].into()));
    }
    if let Some(k) = red_seen.iter().position(|s| !s) {
        return Err(OvError::MissingLabel(RED_LABELS[k].into()));
    }
    Ok(LabelTable { min, max })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn orthogonality_examples() {
        let one = OvVectors::new(vec![v("1")], vec![v("1")]).unwrap();
        assert!(!has_orthogonal_pair(&one));
        let disjoint = OvVectors::new(vec![v("10")], vec![v("01")]).unwrap();
        assert!(has_orthogonal_pair(&disjoint));
    }

    #[test]
    fn orthogonality_matches_bitmask_count() {
        // Independent check: pack vectors into integers and test a & b == 0.
        for sets in [all_vector_sets(2, 3), all_vector_sets(3, 2)] {
            for a in &sets {
                for b in sets.iter().step_by(3) {
                    let pack = |x: &Vec<bool>| x.iter().fold(0u32, |acc, &bit| acc << 1 | bit as u32);
                    let expected = a.iter().any(|x| b.iter().any(|y| pack(x) & pack(y) == 0));
                    let vs = OvVectors::new(a.clone(), b.clone()).unwrap();
                    assert_eq!(has_orthogonal_pair(&vs), expected);
                }
            }
        }
    }

    #[test]
    fn vector_set_counts() {
        assert_eq!(all_vector_sets(2, 3).len(), 4 + 6 + 4);
        assert_eq!(all_vector_sets(3, 3).len(), 8 + 28 + 56);
    }

    #[test]
    fn parse_and_print() {
        let vs = OvVectors::parse("# sample\n101\n010\n\n\n110\n").unwrap();
        assert_eq!(vs.a, vec![v("101"), v("010")]);
        assert_eq!(vs.b, vec![v("110")]);
        assert_eq!(OvVectors::parse(&vs.to_text()).unwrap(), vs);
        assert!(matches!(OvVectors::parse("10\n\n1\n"), Err(OvError::DimensionMismatch { .. })));
        assert!(matches!(OvVectors::parse("12\n\n11\n"), Err(OvError::Parse { line: 1, .. })));
        assert_eq!(OvVectors::parse("10\n").unwrap_err(), OvError::EmptySet('B'));
        assert!(OvVectors::parse("1\n\n1\n\n1\n").is_err());
    }

    #[test]
    fn padding() {
        let vs = OvVectors::new(vec![v("101")], vec![v("011")]).unwrap();
        let p = vs.padded_to_even();
        assert_eq!(p.dimension(), 4);
        assert_eq!(p.a[0], v("1010"));
        assert_eq!(has_orthogonal_pair(&p), has_orthogonal_pair(&vs));
    }
}

#[cfg(test)]
mod construction_tests {
    use super::*;

    fn v(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    fn sample() -> OvVectors {
        OvVectors::new(vec![v("101"), v("011")], vec![v("110"), v("010"), v("111")]).unwrap()
    }

    fn expected(table: &[[u64; 8]; 6]) -> [[Weight; 8]; 6] {
        table.map(|row| row.map(Weight::from_milli))
    }

    #[test]
    fn paths_realize_table1() {
        let inst = gen_paths_instance(&sample());
        let t = label_distance_table(&inst).unwrap();
        assert_eq!(t.min, expected(&TABLE1));
        assert_eq!(t.max, expected(&TABLE1));
    }

    #[test]
    fn walks_realize_table2() {
        let inst = gen_walks_instance(&sample());
        let t = label_distance_table(&inst).unwrap();
        assert_eq!(t.min, expected(&TABLE2));
        assert_eq!(t.max, expected(&TABLE2));
    }

    #[test]
    fn paths_are_simple_and_alternate_colors() {
        let inst = gen_paths_instance(&sample());
        assert!(inst.p.is_path() && inst.q.is_path());
        let g = &inst.graph;
        assert!(inst.p.vertices().iter().all(|&u| g.label(u).and_then(tables::red_index).is_some()));
        assert!(inst.q.vertices().iter().all(|&u| g.label(u).and_then(tables::blue_index).is_some()));
        // 4 fixed vertices plus (1 + 2d) per vector of A; (3 + 2d) per vector of B.
        assert_eq!(inst.p.len(), 4 + 2 * 7);
        assert_eq!(inst.q.len(), 3 * 9);
    }

    #[test]
    fn walks_have_expected_lengths() {
        let inst = gen_walks_instance(&sample());
        assert_eq!(inst.vectors.dimension(), 4);
        assert_eq!((inst.p.len(), inst.q.len()), walk_lengths(2, 3, 4));
        assert_eq!(inst.graph.vertex_count(), 16);
        assert!(!inst.p.is_path());
    }

    #[test]
    fn prediction_uses_variant_comparison() {
        let paths = gen_paths_instance(&sample());
        assert!(!paths.predicts_orthogonal(Weight::from_units(3)));
        assert!(paths.predicts_orthogonal(Weight::from_milli(2999)));
        let walks = gen_walks_instance(&sample());
        assert!(walks.predicts_orthogonal(Weight::from_milli(1900)));
        assert!(!walks.predicts_orthogonal(Weight::from_milli(1901)));
    }
}
