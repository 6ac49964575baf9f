//! Best-response oracle algorithms for two-player zero-sum matrix games.
//!
//! Payoff entries are losses of the row player and rewards of the column
//! player. All indices are 0-based.
//!
//! The crate provides:
//!
//! - exact and perturbed best-response oracles ([`game`], [`perturbation`]),
//! - an exact linear-programming equilibrium solver ([`lp`]),
//! - fictitious play, anticipatory fictitious play and double oracle together
//!   with their perturbed ("stochastic") variants ([`solvers`]),
//! - generators for the benchmark game families ([`games`]).

pub mod error;
pub mod game;
pub mod games;
pub mod lp;
pub mod oracle;
pub mod perturbation;
pub mod rng;
pub mod solvers;
pub mod support_enum;

pub use error::{Error, Result};
pub use game::{MatrixGame, MixedStrategy, Side, SupportSet, WeightedProfile};
pub use lp::{nash_lp, NashSolution};
pub use oracle::ResponseOracle;
pub use perturbation::PerturbationSpec;
pub use rng::RandomSource;
