use crate::error::Result;
use crate::game::{argmax_least, argmin_least, MatrixGame, MixedStrategy};
use crate::perturbation::{perturbed_argmax, perturbed_argmin, PerturbationSpec};
use crate::rng::{RandomSource, STREAM_COL, STREAM_ROW};
use crate::solvers::{Family, SolveResult, SolverConfig};

/// Play counts together with the running vectors `M q` and `pᵀ M`.
pub(crate) struct Counts<'a> {
    game: &'a MatrixGame,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub mq: Vec<f64>,
    pub pm: Vec<f64>,
    pub t: f64,
}

impl<'a> Counts<'a> {
    pub fn empty(game: &'a MatrixGame) -> Self {
        Counts {
            game,
            p: vec![0.0; game.rows()],
            q: vec![0.0; game.cols()],
            mq: vec![0.0; game.rows()],
            pm: vec![0.0; game.cols()],
            t: 0.0,
        }
    }

    pub fn play(&mut self, i: usize, j: usize) {
        self.p[i] += 1.0;
        self.q[j] += 1.0;
        add_column(self.game, j, &mut self.mq);
        for (acc, &x) in self.pm.iter_mut().zip(self.game.row(i)) {
            *acc += x;
        }
        self.t += 1.0;
    }

    pub fn lb(&self) -> f64 {
        argmin_least(&self.mq).1
    }

    pub fn ub(&self) -> f64 {
        argmax_least(&self.pm).1
    }

    pub fn averages(&self) -> (MixedStrategy, MixedStrategy) {
        let avg = |v: &[f64]| MixedStrategy::new(v.iter().map(|x| x / self.t).collect());
        (
            avg(&self.p).expect("counts normalize to a distribution"),
            avg(&self.q).expect("counts normalize to a distribution"),
        )
    }
}

fn add_column(game: &MatrixGame, j: usize, out: &mut [f64]) {
    let n = game.cols();
    for (acc, row) in out.iter_mut().zip(game.entries().chunks_exact(n)) {
        *acc += row[j];
    }
}

fn side_rng(base: &RandomSource, t: usize, side: u64, call: u64) -> RandomSource {
    base.derive(&[t as u64, side, call])
}

/// Shared driver for plain and anticipatory play. `step` picks the pair of
/// actions for body number `t` (1-based).
fn drive(
    game: &MatrixGame,
    cfg: &SolverConfig,
    mut step: impl FnMut(&Counts<'_>, usize) -> (usize, usize),
) -> Result<SolveResult> {
    cfg.validate(game.rows(), game.cols())?;
    let cap = cfg.iteration_cap(Family::FictitiousPlay, game.rows(), game.cols());
    let mut c = Counts::empty(game);
    c.play(cfg.init_row, cfg.init_col);
    let (mut lb, mut ub) = (c.lb(), c.ub());
    let mut trace = cfg.record_trace.then(|| vec![(lb, ub)]);
    let mut bodies = 0;
    while ub - lb > c.t * cfg.eps && bodies < cap {
        bodies += 1;
        let (i, j) = step(&c, bodies);
        c.play(i, j);
        lb = c.lb();
        ub = c.ub();
        if let Some(tr) = trace.as_mut() {
            tr.push((lb, ub));
        }
    }
    let (row, col) = c.averages();
    Ok(SolveResult {
        row,
        col,
        iterations: bodies,
        terminated: ub - lb <= c.t * cfg.eps,
        final_gap: (ub - lb) / c.t,
        trace,
        attempts: 1,
    })
}

/// Fictitious play; perturbed oracles turn it into stochastic fictitious
/// play. Bounds are exact and kept on raw counts, and the loop runs while
/// `ub - lb > t ε`.
pub fn run_fictitious_play(game: &MatrixGame, cfg: &SolverConfig) -> Result<SolveResult> {
    let rs = cfg.row_perturbation;
    let cs = cfg.col_perturbation;
    drive(game, cfg, |c, t| {
        let i = perturbed_argmin(&c.mq, &rs, &mut side_rng(&cfg.rng, t, STREAM_ROW, 0));
        let j = perturbed_argmax(&c.pm, &cs, &mut side_rng(&cfg.rng, t, STREAM_COL, 0));
        (i, j)
    })
}

/// Anticipatory fictitious play: each player first predicts the opponent's
/// next response, then answers the opponent's counts with that prediction
/// added. Only the answers are accumulated. Four oracle calls per body.
pub fn run_anticipatory_fp(game: &MatrixGame, cfg: &SolverConfig) -> Result<SolveResult> {
    let (ra, ca) = if cfg.perturb_responses_only {
        (PerturbationSpec::None, PerturbationSpec::None)
    } else {
        (cfg.row_perturbation, cfg.col_perturbation)
    };
    let rs = cfg.row_perturbation;
    let cs = cfg.col_perturbation;
    let mut buf_r = vec![0.0; game.rows()];
    let mut buf_c = vec![0.0; game.cols()];
    drive(game, cfg, |c, t| {
        let ip = perturbed_argmin(&c.mq, &ra, &mut side_rng(&cfg.rng, t, STREAM_ROW, 0));
        let jp = perturbed_argmax(&c.pm, &ca, &mut side_rng(&cfg.rng, t, STREAM_COL, 0));
        buf_r.copy_from_slice(&c.mq);
        add_column(game, jp, &mut buf_r);
        for ((acc, &x), &y) in buf_c.iter_mut().zip(&c.pm).zip(game.row(ip)) {
            *acc = x + y;
        }
        let i = perturbed_argmin(&buf_r, &rs, &mut side_rng(&cfg.rng, t, STREAM_ROW, 1));
        let j = perturbed_argmax(&buf_c, &cs, &mut side_rng(&cfg.rng, t, STREAM_COL, 1));
        (i, j)
    })
}
