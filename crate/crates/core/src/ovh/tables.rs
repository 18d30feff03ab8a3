//! Reference label-distance tables, in milli-units.
//!
//! Rows follow [`BLUE_LABELS`], columns follow [`RED_LABELS`].

pub const BLUE_LABELS: [&str; 6] = ["x", "y", "z", "B0", "B1", "B"];
pub const RED_LABELS: [&str; 8] = ["alpha", "alpha*", "beta", "beta*", "gamma", "A0", "A1", "A"];

/// Label distances of the planar paths construction. Close pairs are at
/// most 2.96 apart, far pairs at least 3.
pub const TABLE1: [[u64; 8]; 6] = [
    [650, 2650, 2300, 4300, 2702, 2301, 2951, 2952],
    [1600, 3600, 2601, 4601, 2952, 3251, 3302, 3202],
    [2300, 4300, 650, 2650, 1652, 652, 1302, 1652],
    [1950, 3950, 2300, 4300, 3301, 2301, 2951, 3301],
    [1700, 3700, 2701, 4701, 3051, 2951, 3402, 3302],
    [1350, 3350, 2351, 4351, 2702, 3001, 3051, 2951],
];

/// Label distances of the constant-size walks construction. Close pairs are
/// at most 1.9 apart.
pub const TABLE2: [[u64; 8]; 6] = [
    [1800, 1800, 1800, 3600, 1900, 1900, 1900, 1900],
    [1900, 3600, 1900, 3700, 1800, 2000, 2000, 2000],
    [1800, 3600, 1800, 1800, 1900, 1900, 1900, 1900],
    [1900, 3700, 1900, 3700, 2000, 800, 1600, 2000],
    [1900, 3700, 1900, 3700, 2000, 1600, 2000, 2000],
    [1900, 3700, 1900, 3600, 2000, 2000, 2000, 1800],
];

pub(crate) fn blue_index(label: &str) -> Option<usize> {
    BLUE_LABELS.iter().position(|l| *l == label)
}

pub(crate) fn red_index(label: &str) -> Option<usize> {
    RED_LABELS.iter().position(|l| *l == label)
}
