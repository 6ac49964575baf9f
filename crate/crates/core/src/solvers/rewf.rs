use crate::error::{Error, Result};
use crate::game::{MatrixGame, MixedStrategy, Side};
use crate::perturbation::softmax;
use crate::rng::{RandomSource, STREAM_COL, STREAM_ROW};

/// Actions and realized regrets of a self-play run.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretTrace {
    pub horizon: usize,
    pub actions: Vec<(usize, usize)>,
    /// Row player's cumulative loss `Σ M(i_t, j_t)`.
    pub row_loss: f64,
    /// `min_i Σ_t M(i, j_t)`.
    pub row_best_fixed: f64,
    /// Column player's cumulative loss on `1 - Mᵀ`.
    pub col_loss: f64,
    /// `min_j Σ_t (1 - M(i_t, j))`.
    pub col_best_fixed: f64,
}

impl RegretTrace {
    pub fn row_regret(&self) -> f64 {
        self.row_loss - self.row_best_fixed
    }

    pub fn col_regret(&self) -> f64 {
        self.col_loss - self.col_best_fixed
    }
}

/// High-probability regret bound `ln k / η + T η / 8 + √(T/2 · ln(1/δ))` for
/// `k` actions.
pub fn regret_bound(actions: usize, horizon: usize, eta: f64, delta: f64) -> f64 {
    let t = horizon as f64;
    (actions as f64).ln() / eta + t * eta / 8.0 + (t / 2.0 * (1.0 / delta).ln()).sqrt()
}

/// Forecaster distribution against the opponent's action counts:
/// `softmax(-η M c)` for the row player, `softmax(η cᵀ M)` for the column.
pub fn rewf_distribution(game: &MatrixGame, opponent_counts: &[f64], eta: f64, side: Side) -> Result<MixedStrategy> {
    if !(eta > 0.0) {
        return Err(Error::InvalidArgument(format!("eta must be positive, got {eta}")));
    }
    let x: Vec<f64> = match side {
        Side::Row => game.row_values(opponent_counts)?.iter().map(|v| -eta * v).collect(),
        Side::Col => game.col_values(opponent_counts)?.iter().map(|v| eta * v).collect(),
    };
    Ok(softmax(&x))
}

/// Inverse-CDF draw: the least index whose cumulative weight exceeds `u`.
pub fn sample_index(weights: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            return i;
        }
    }
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(weights.len() - 1)
}

/// Both players run the forecaster against each other's realized history for
/// `horizon` rounds. The column player's regret is measured on `1 - Mᵀ`.
pub fn run_rewf_selfplay(game: &MatrixGame, horizon: usize, eta: f64, rng: &RandomSource) -> Result<RegretTrace> {
    if game.entries().iter().any(|&x| !(0.0..=1.0).contains(&x)) {
        return Err(Error::InvalidMatrix("forecaster self-play needs entries in [0, 1]".into()));
    }
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    if !(eta > 0.0) {
        return Err(Error::InvalidArgument(format!("eta must be positive, got {eta}")));
    }
    let (m, n) = (game.rows(), game.cols());
    // Running M·(column counts) and (row counts)ᵀ·M.
    let mut mq = vec![0.0; m];
    let mut pm = vec![0.0; n];
    let mut actions = Vec::with_capacity(horizon);
    let mut row_loss = 0.0;
    for t in 0..horizon {
        let dr = softmax(&mq.iter().map(|v| -eta * v).collect::<Vec<_>>());
        let dc = softmax(&pm.iter().map(|v| eta * v).collect::<Vec<_>>());
        let i = sample_index(dr.weights(), rng.derive(&[t as u64, STREAM_ROW]).uniform01());
        let j = sample_index(dc.weights(), rng.derive(&[t as u64, STREAM_COL]).uniform01());
        row_loss += game.get(i, j);
        for (r, acc) in mq.iter_mut().enumerate() {
            *acc += game.get(r, j);
        }
        for (acc, &x) in pm.iter_mut().zip(game.row(i)) {
            *acc += x;
        }
        actions.push((i, j));
    }
    let t = horizon as f64;
    let row_best_fixed = mq.iter().copied().fold(f64::INFINITY, f64::min);
    let col_best_fixed = t - pm.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(RegretTrace {
        horizon,
        actions,
        row_loss,
        row_best_fixed,
        col_loss: t - row_loss,
        col_best_fixed,
    })
}
