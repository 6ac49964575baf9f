//! Iterative equilibrium solvers: fictitious play and its anticipatory
//! variant, double oracle, the exponentially weighted forecaster and the
//! restart protocol built on stochastic fictitious play.

mod double_oracle;
mod fictitious;
mod restart;
mod rewf;

pub use double_oracle::run_double_oracle;
pub use fictitious::{run_anticipatory_fp, run_fictitious_play};
pub use restart::sfp_restart_protocol;
pub use rewf::{regret_bound, rewf_distribution, run_rewf_selfplay, sample_index, RegretTrace};

use crate::error::{Error, Result};
use crate::game::MixedStrategy;
use crate::perturbation::PerturbationSpec;
use crate::rng::RandomSource;

/// Which default iteration cap applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    FictitiousPlay,
    DoubleOracle,
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub eps: f64,
    /// Cap on loop bodies; `None` uses the family default.
    pub max_iterations: Option<usize>,
    /// Initial row strategy, 0-based.
    pub init_row: usize,
    /// Initial column strategy, 0-based.
    pub init_col: usize,
    pub row_perturbation: PerturbationSpec,
    pub col_perturbation: PerturbationSpec,
    pub rng: RandomSource,
    pub record_trace: bool,
    /// Anticipatory play only: leave the two anticipation calls exact.
    pub perturb_responses_only: bool,
}

impl SolverConfig {
    pub fn new(eps: f64) -> Self {
        SolverConfig {
            eps,
            max_iterations: None,
            init_row: 0,
            init_col: 0,
            row_perturbation: PerturbationSpec::None,
            col_perturbation: PerturbationSpec::None,
            rng: RandomSource::new(1),
            record_trace: false,
            perturb_responses_only: false,
        }
    }

    pub fn with_init(mut self, row: usize, col: usize) -> Self {
        self.init_row = row;
        self.init_col = col;
        self
    }

    /// Same perturbation for both players.
    pub fn with_perturbation(mut self, spec: PerturbationSpec) -> Self {
        self.row_perturbation = spec;
        self.col_perturbation = spec;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng = RandomSource::new(seed);
        self
    }

    pub fn with_max_iterations(mut self, cap: usize) -> Self {
        self.max_iterations = Some(cap);
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.record_trace = true;
        self
    }

    pub fn iteration_cap(&self, family: Family, rows: usize, cols: usize) -> usize {
        self.max_iterations.unwrap_or(match family {
            Family::FictitiousPlay => 50 * (rows + cols),
            Family::DoubleOracle => rows + cols + 2,
        })
    }

    pub fn validate(&self, rows: usize, cols: usize) -> Result<()> {
        if !(self.eps > 0.0) {
            return Err(Error::InvalidArgument(format!("eps must be positive, got {}", self.eps)));
        }
        if self.init_row >= rows {
            return Err(Error::IndexOutOfRange {
                index: self.init_row,
                size: rows,
            });
        }
        if self.init_col >= cols {
            return Err(Error::IndexOutOfRange {
                index: self.init_col,
                size: cols,
            });
        }
        if self.max_iterations == Some(0) {
            return Err(Error::InvalidArgument("max_iterations must be at least 1".into()));
        }
        self.row_perturbation.validate()?;
        self.col_perturbation.validate()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub row: MixedStrategy,
    pub col: MixedStrategy,
    /// Loop bodies executed (subgame solves for double oracle).
    pub iterations: usize,
    pub terminated: bool,
    /// `ub - lb` at exit, per play.
    pub final_gap: f64,
    /// `(lb, ub)` before the loop and after every body, in the algorithm's
    /// own scale (raw counts for fictitious play).
    pub trace: Option<Vec<(f64, f64)>>,
    /// Attempts made by the restart protocol; 1 elsewhere.
    pub attempts: usize,
}
