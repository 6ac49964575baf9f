//! Best-response oracles over different game representations, so that the
//! double oracle loop can run on dense matrices, clustered matrices and the
//! structured grid game alike.

use crate::error::{check_dim, Result};
use crate::game::{argmax_least, argmin_least, MatrixGame, Side, SupportSet};
use crate::games::{BuiltGame, ClusterMap, GridGame};
use crate::perturbation::{cluster_perturbed_best_response, perturbed_argmax, perturbed_argmin, PerturbationSpec};
use crate::rng::RandomSource;

/// Exact and perturbed best responses on raw (unnormalized) weight vectors.
/// Exact calls return the least optimal index and its value.
pub trait ResponseOracle {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn entry(&self, i: usize, j: usize) -> f64;
    fn best_row(&self, q: &[f64]) -> Result<(usize, f64)>;
    fn best_col(&self, p: &[f64]) -> Result<(usize, f64)>;
    fn perturbed_row(&self, q: &[f64], spec: &PerturbationSpec, rng: &mut RandomSource) -> Result<usize>;
    fn perturbed_col(&self, p: &[f64], spec: &PerturbationSpec, rng: &mut RandomSource) -> Result<usize>;

    /// The restricted game on `rows × cols`.
    fn restrict(&self, rows: &SupportSet, cols: &SupportSet) -> Result<MatrixGame> {
        MatrixGame::from_fn(rows.len(), cols.len(), |a, b| {
            self.entry(rows.as_slice()[a], cols.as_slice()[b])
        })
    }
}

impl ResponseOracle for MatrixGame {
    fn rows(&self) -> usize {
        MatrixGame::rows(self)
    }

    fn cols(&self) -> usize {
        MatrixGame::cols(self)
    }

    fn entry(&self, i: usize, j: usize) -> f64 {
        self.get(i, j)
    }

    fn best_row(&self, q: &[f64]) -> Result<(usize, f64)> {
        Ok(argmin_least(&self.row_values(q)?))
    }

    fn best_col(&self, p: &[f64]) -> Result<(usize, f64)> {
        Ok(argmax_least(&self.col_values(p)?))
    }

    fn perturbed_row(&self, q: &[f64], spec: &PerturbationSpec, rng: &mut RandomSource) -> Result<usize> {
        Ok(perturbed_argmin(&self.row_values(q)?, spec, rng))
    }

    fn perturbed_col(&self, p: &[f64], spec: &PerturbationSpec, rng: &mut RandomSource) -> Result<usize> {
        Ok(perturbed_argmax(&self.col_values(p)?, spec, rng))
    }

    fn restrict(&self, rows: &SupportSet, cols: &SupportSet) -> Result<MatrixGame> {
        self.submatrix(rows, cols)
    }
}

/// A matrix whose perturbations act per cluster of cells rather than per
/// pure strategy.
#[derive(Debug, Clone, Copy)]
pub struct ClusteredGame<'a> {
    pub game: &'a MatrixGame,
    pub clusters: &'a ClusterMap,
}

impl<'a> ClusteredGame<'a> {
    pub fn new(game: &'a MatrixGame, clusters: &'a ClusterMap) -> Result<Self> {
        check_dim(game.rows(), clusters.rows())?;
        check_dim(game.cols(), clusters.cols())?;
        Ok(ClusteredGame { game, clusters })
    }
}

impl ResponseOracle for ClusteredGame<'_> {
    fn rows(&self) -> usize {
        self.game.rows()
    }

    fn cols(&self) -> usize {
        self.game.cols()
    }

    fn entry(&self, i: usize, j: usize) -> f64 {
        self.game.get(i, j)
    }

    fn best_row(&self, q: &[f64]) -> Result<(usize, f64)> {
        self.game.best_row(q)
    }

    fn best_col(&self, p: &[f64]) -> Result<(usize, f64)> {
        self.game.best_col(p)
    }

    fn perturbed_row(&self, q: &[f64], spec: &PerturbationSpec, rng: &mut RandomSource) -> Result<usize> {
        if spec.is_none() {
            return Ok(self.best_row(q)?.0);
        }
        cluster_perturbed_best_response(self.game, self.clusters, Side::Row, q, spec, rng)
    }

    fn perturbed_col(&self, p: &[f64], spec: &PerturbationSpec, rng: &mut RandomSource) -> Result<usize> {
        if spec.is_none() {
            return Ok(self.best_col(p)?.0);
        }
        cluster_perturbed_best_response(self.game, self.clusters, Side::Col, p, spec, rng)
    }

    fn restrict(&self, rows: &SupportSet, cols: &SupportSet) -> Result<MatrixGame> {
        self.game.submatrix(rows, cols)
    }
}

/// Rows are paths, columns are edges. Values are on raw weights, matching
/// what the explicit matrix would report.
impl ResponseOracle for GridGame {
    fn rows(&self) -> usize {
        self.path_count()
    }

    fn cols(&self) -> usize {
        self.edge_count()
    }

    fn entry(&self, i: usize, j: usize) -> f64 {
        GridGame::entry(self, i, j)
    }

    fn best_row(&self, q: &[f64]) -> Result<(usize, f64)> {
        let mut unused = RandomSource::new(0);
        let (path, cost) = self.best_response_path(q, &PerturbationSpec::None, &mut unused)?;
        let total: f64 = q.iter().sum();
        Ok((path, cost * total))
    }

    fn best_col(&self, p: &[f64]) -> Result<(usize, f64)> {
        self.best_response_edge(p)
    }

    fn perturbed_row(&self, q: &[f64], spec: &PerturbationSpec, rng: &mut RandomSource) -> Result<usize> {
        Ok(self.best_response_path(q, spec, rng)?.0)
    }

    fn perturbed_col(&self, p: &[f64], spec: &PerturbationSpec, rng: &mut RandomSource) -> Result<usize> {
        if spec.is_none() {
            return Ok(self.best_response_edge(p)?.0);
        }
        self.perturbed_best_response_edge(p, spec, rng)
    }
}

/// Dispatches to the representation's own oracle; clustered games use
/// cluster perturbations.
impl ResponseOracle for BuiltGame {
    fn rows(&self) -> usize {
        BuiltGame::rows(self)
    }

    fn cols(&self) -> usize {
        BuiltGame::cols(self)
    }

    fn entry(&self, i: usize, j: usize) -> f64 {
        match self {
            BuiltGame::Matrix(g) | BuiltGame::Clustered(g, _) => g.get(i, j),
            BuiltGame::Grid(g) => g.entry(i, j),
        }
    }

    fn best_row(&self, q: &[f64]) -> Result<(usize, f64)> {
        match self {
            BuiltGame::Matrix(g) | BuiltGame::Clustered(g, _) => g.best_row(q),
            BuiltGame::Grid(g) => g.best_row(q),
        }
    }

    fn best_col(&self, p: &[f64]) -> Result<(usize, f64)> {
        match self {
            BuiltGame::Matrix(g) | BuiltGame::Clustered(g, _) => g.best_col(p),
            BuiltGame::Grid(g) => g.best_col(p),
        }
    }

    fn perturbed_row(&self, q: &[f64], spec: &PerturbationSpec, rng: &mut RandomSource) -> Result<usize> {
        match self {
            BuiltGame::Matrix(g) => g.perturbed_row(q, spec, rng),
            BuiltGame::Clustered(g, c) => ClusteredGame { game: g, clusters: c }.perturbed_row(q, spec, rng),
            BuiltGame::Grid(g) => g.perturbed_row(q, spec, rng),
        }
    }

    fn perturbed_col(&self, p: &[f64], spec: &PerturbationSpec, rng: &mut RandomSource) -> Result<usize> {
        match self {
            BuiltGame::Matrix(g) => g.perturbed_col(p, spec, rng),
            BuiltGame::Clustered(g, c) => ClusteredGame { game: g, clusters: c }.perturbed_col(p, spec, rng),
            BuiltGame::Grid(g) => g.perturbed_col(p, spec, rng),
        }
    }

    fn restrict(&self, rows: &SupportSet, cols: &SupportSet) -> Result<MatrixGame> {
        match self {
            BuiltGame::Matrix(g) | BuiltGame::Clustered(g, _) => g.submatrix(rows, cols),
            BuiltGame::Grid(g) => g.restrict(rows, cols),
        }
    }
}
