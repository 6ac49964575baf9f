//! Generators for the benchmark game families.

mod adversarial;
mod bitgame;
mod blotto;
mod grid;
mod morra;
mod random;
mod spec;

pub use adversarial::{make_l, make_s, make_u, make_u_t};
pub use bitgame::{bitgame_build, bitgame_simulate, BitGameSpec, BitVariant, Terminal, MAX_BITS};
pub use blotto::{blotto_strategies, make_blotto};
pub use grid::{GridGame, Move, EXPLICIT_PATH_LIMIT};
pub use morra::make_morra;
pub use random::make_random_unit;
pub use spec::{BuiltGame, GameSpec};

use crate::error::{Error, Result};

/// Partition of the cells of a matrix game into clusters, one per terminal
/// state of the structured game that induced the matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterMap {
    rows: usize,
    cols: usize,
    assign: Vec<u8>,
    labels: Vec<String>,
}

impl ClusterMap {
    pub fn new(rows: usize, cols: usize, assign: Vec<u8>, labels: Vec<String>) -> Result<Self> {
        if assign.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: assign.len(),
            });
        }
        if let Some(&bad) = assign.iter().find(|&&c| c as usize >= labels.len()) {
            return Err(Error::IndexOutOfRange {
                index: bad as usize,
                size: labels.len(),
            });
        }
        Ok(ClusterMap {
            rows,
            cols,
            assign,
            labels,
        })
    }

    /// One cluster per cell.
    pub fn singletons(rows: usize, cols: usize) -> Result<Self> {
        if rows * cols > 256 {
            return Err(Error::TooLarge("singleton cluster map limited to 256 cells".into()));
        }
        let assign = (0..rows * cols).map(|c| c as u8).collect();
        let labels = (0..rows * cols).map(|c| format!("({},{})", c / cols, c % cols)).collect();
        ClusterMap::new(rows, cols, assign, labels)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of clusters `K`.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn cluster(&self, i: usize, j: usize) -> usize {
        self.assign[i * self.cols + j] as usize
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.assign[i * self.cols..(i + 1) * self.cols]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Number of distinct clusters actually used by some cell.
    pub fn used(&self) -> usize {
        let mut seen = vec![false; self.labels.len()];
        for &c in &self.assign {
            seen[c as usize] = true;
        }
        seen.into_iter().filter(|&s| s).count()
    }
}
