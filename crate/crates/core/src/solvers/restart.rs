use crate::error::{Error, Result};
use crate::game::MatrixGame;
use crate::perturbation::{perturbed_argmax, perturbed_argmin, sfp_theory_params, PerturbationSpec};
use crate::rng::{RandomSource, STREAM_COL, STREAM_ROW};
use crate::solvers::fictitious::Counts;
use crate::solvers::SolveResult;

/// Runs stochastic fictitious play with Gumbel noise for the horizon `T` of
/// the theory parameters, without early stopping, and restarts from scratch
/// until the averaged pair is an ε-equilibrium. Each attempt starts from
/// empty counts, so its first actions are uniform.
///
/// The parameters use the larger side. When there are more rows than columns
/// the game is solved as `lo + hi - Mᵀ` with the roles swapped.
pub fn sfp_restart_protocol(
    game: &MatrixGame,
    eps: f64,
    rng: &RandomSource,
    max_restarts: usize,
) -> Result<SolveResult> {
    if max_restarts == 0 {
        return Err(Error::InvalidArgument("need at least one attempt".into()));
    }
    if game.rows() > game.cols() {
        let (lo, hi) = (game.min_entry(), game.max_entry());
        let flipped = MatrixGame::from_fn(game.cols(), game.rows(), |j, i| lo + hi - game.get(i, j))?;
        let mut r = sfp_restart_protocol(&flipped, eps, rng, max_restarts)?;
        std::mem::swap(&mut r.row, &mut r.col);
        if let Some(tr) = r.trace.as_mut() {
            for b in tr.iter_mut() {
                *b = (lo + hi - b.1, lo + hi - b.0);
            }
        }
        return Ok(r);
    }
    let params = sfp_theory_params(game.cols().max(2) as f64, eps)?;
    let horizon = params.horizon as usize;
    let noise = PerturbationSpec::gumbel(0.0, params.beta)?;
    let mut trace = Vec::with_capacity(max_restarts);
    let mut total = 0;
    let mut last = None;
    for attempt in 0..max_restarts {
        let base = rng.derive(&[attempt as u64]);
        let mut c = Counts::empty(game);
        for t in 0..horizon {
            let i = perturbed_argmin(&c.mq, &noise, &mut base.derive(&[t as u64, STREAM_ROW]));
            let j = perturbed_argmax(&c.pm, &noise, &mut base.derive(&[t as u64, STREAM_COL]));
            c.play(i, j);
        }
        total += horizon;
        let (lb, ub) = (c.lb() / c.t, c.ub() / c.t);
        trace.push((lb, ub));
        let (row, col) = c.averages();
        let done = ub - lb <= eps;
        let result = SolveResult {
            row,
            col,
            iterations: total,
            terminated: done,
            final_gap: ub - lb,
            trace: None,
            attempts: attempt + 1,
        };
        last = Some(result);
        if done {
            break;
        }
    }
    let mut r = last.expect("at least one attempt ran");
    r.trace = Some(trace);
    Ok(r)
}
