//! Free-space cell values and lattice walks over `[n] x [m]`.

use serde::Serialize;

/// Classification of a free-space cell, ordered `Near < Mid < Far`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FreeSpaceValue {
    Near,
    Mid,
    Far,
}

impl FreeSpaceValue {
    /// The `-1 / 0 / +1` encoding.
    pub fn signum(self) -> i8 {
        match self {
            FreeSpaceValue::Near => -1,
            FreeSpaceValue::Mid => 0,
            FreeSpaceValue::Far => 1,
        }
    }
}

/// A sequence of lattice cells `(i, j)`, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LatticeWalk {
    pub cells: Vec<(usize, usize)>,
}

impl LatticeWalk {
    pub fn new(cells: Vec<(usize, usize)>) -> Self {
        LatticeWalk { cells }
    }

    /// Every step moves each coordinate by at most one.
    pub fn is_connected(&self) -> bool {
        self.cells
            .windows(2)
            .all(|w| w[0].0.abs_diff(w[1].0) <= 1 && w[0].1.abs_diff(w[1].1) <= 1)
    }

    /// Every step keeps or increments each coordinate.
    pub fn is_monotone(&self) -> bool {
        self.cells.windows(2).all(|w| {
            let (di, dj) = (w[1].0.wrapping_sub(w[0].0), w[1].1.wrapping_sub(w[0].1));
            di <= 1 && dj <= 1
        })
    }

    /// Starts at `(0, 0)` and ends at `(n-1, m-1)`.
    pub fn is_complete(&self, n: usize, m: usize) -> bool {
        self.cells.first() == Some(&(0, 0)) && self.cells.last() == Some(&(n - 1, m - 1))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}
