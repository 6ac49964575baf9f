use crate::error::Result;
use crate::game::{MixedStrategy, SupportSet};
use crate::lp::nash_lp;
use crate::oracle::ResponseOracle;
use crate::rng::{STREAM_COL, STREAM_ROW};
use crate::solvers::{Family, SolveResult, SolverConfig};

/// Double oracle; perturbed oracles make it stochastic double oracle. Each
/// body solves the restricted game, embeds the equilibrium, and adds one
/// (possibly perturbed) best response per player. The bounds are always the
/// exact best-response values on the full game.
pub fn run_double_oracle<O: ResponseOracle + ?Sized>(oracle: &O, cfg: &SolverConfig) -> Result<SolveResult> {
    let (m, n) = (oracle.rows(), oracle.cols());
    cfg.validate(m, n)?;
    let cap = cfg.iteration_cap(Family::DoubleOracle, m, n);
    let mut rows = SupportSet::new(m);
    let mut cols = SupportSet::new(n);
    rows.insert(cfg.init_row);
    cols.insert(cfg.init_col);
    let mut p = MixedStrategy::pure(m, cfg.init_row).into_inner();
    let mut q = MixedStrategy::pure(n, cfg.init_col).into_inner();
    let mut lb = oracle.best_row(&q)?.1;
    let mut ub = oracle.best_col(&p)?.1;
    let mut trace = cfg.record_trace.then(|| vec![(lb, ub)]);
    let mut bodies = 0;
    while ub - lb > cfg.eps && bodies < cap {
        bodies += 1;
        let sol = nash_lp(&oracle.restrict(&rows, &cols)?)?;
        p = rows.embed(sol.row.weights());
        q = cols.embed(sol.col.weights());
        let t = bodies as u64;
        let i = oracle.perturbed_row(&q, &cfg.row_perturbation, &mut cfg.rng.derive(&[t, STREAM_ROW]))?;
        let j = oracle.perturbed_col(&p, &cfg.col_perturbation, &mut cfg.rng.derive(&[t, STREAM_COL]))?;
        rows.insert(i);
        cols.insert(j);
        lb = oracle.best_row(&q)?.1;
        ub = oracle.best_col(&p)?.1;
        if let Some(tr) = trace.as_mut() {
            tr.push((lb, ub));
        }
    }
    Ok(SolveResult {
        row: MixedStrategy::new(p)?,
        col: MixedStrategy::new(q)?,
        iterations: bodies,
        terminated: ub - lb <= cfg.eps,
        final_gap: ub - lb,
        trace,
        attempts: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{exploitability, MatrixGame};
    use crate::games::{make_l, make_s, make_u, GridGame};
    use crate::perturbation::PerturbationSpec;

    #[test]
    fn l5_takes_five_solves() {
        let r = run_double_oracle(&make_l(5), &SolverConfig::new(0.1)).unwrap();
        assert_eq!(r.iterations, 5);
        assert!(r.terminated);
        assert_eq!(r.row, MixedStrategy::pure(5, 4));
        assert_eq!(r.col, MixedStrategy::pure(5, 4));
    }

    #[test]
    fn u8_from_last_takes_eight_solves() {
        let r = run_double_oracle(&make_u(8), &SolverConfig::new(0.1).with_init(7, 7)).unwrap();
        assert_eq!(r.iterations, 8);
        assert!(r.terminated);
    }

    #[test]
    fn one_by_one_needs_no_body() {
        let g = MatrixGame::from_rows(&[vec![3.5]]).unwrap();
        let r = run_double_oracle(&g, &SolverConfig::new(0.1)).unwrap();
        assert_eq!(r.iterations, 0);
        assert!(r.terminated);
    }

    #[test]
    fn bounds_and_supports_behave() {
        let g = make_s(64);
        let cfg = SolverConfig::new(0.1)
            .with_init(63, 63)
            .with_trace()
            .with_perturbation(PerturbationSpec::uniform(-0.5, 0.5).unwrap())
            .with_seed(4);
        let r = run_double_oracle(&g, &cfg).unwrap();
        assert!(r.terminated);
        assert!(r.iterations <= 64 + 64 + 1);
        assert!(exploitability(&g, &r.row, &r.col).unwrap() <= 0.1 + 1e-9);
        let tr = r.trace.unwrap();
        let mut best_lb = f64::NEG_INFINITY;
        let mut best_ub = f64::INFINITY;
        for &(lb, ub) in &tr {
            assert!(lb <= ub + 1e-9);
            best_lb = best_lb.max(lb);
            best_ub = best_ub.min(ub);
        }
        assert!(best_lb <= best_ub + 1e-9);
    }

    #[test]
    fn grid_structured_matches_explicit() {
        let g = GridGame::new(4, 10.0).unwrap();
        let m = g.to_matrix().unwrap();
        let cfg = SolverConfig::new(0.1).with_trace();
        let a = run_double_oracle(&g, &cfg).unwrap();
        let b = run_double_oracle(&m, &cfg).unwrap();
        assert_eq!(a.iterations, b.iterations);
        assert!(a.terminated);
        assert!(exploitability(&m, &a.row, &a.col).unwrap() <= 0.1 + 1e-9);
    }
}
