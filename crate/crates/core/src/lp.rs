//! Exact equilibrium of a matrix game by linear programming.
//!
//! Entries are shifted to be at least one, and the row player's problem
//! `max Σx  s.t.  M'ᵀx ≤ 1, x ≥ 0` is solved with a dense primal simplex
//! (largest coefficient, Bland's rule once pivots stall). The optimal objective is `1 / value'`; the column strategy is
//! read off the slack reduced costs.
//!
//! Pure saddle points are detected before the simplex runs and returned
//! directly.

use crate::error::{Error, Result};
use crate::game::{exploitability_raw, MatrixGame, MixedStrategy};

const PIVOT_TOL: f64 = 1e-9;
/// Consecutive degenerate pivots tolerated before Bland's rule takes over.
const DEGENERATE_RUN: usize = 8;

/// Largest exploitability accepted for a returned equilibrium.
pub const NASH_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct NashSolution {
    pub row: MixedStrategy,
    pub col: MixedStrategy,
    pub value: f64,
}

/// Solves the game exactly. When several equilibria exist any one is returned;
/// a pure saddle point, if one exists, is preferred (least row, then least
/// column).
pub fn nash_lp(game: &MatrixGame) -> Result<NashSolution> {
    if game.entries().iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidMatrix("non-finite entry".into()));
    }
    if let Some(sol) = pure_saddle(game) {
        return Ok(sol);
    }
    simplex_solve(game)
}

/// Returns the pure equilibrium `(i*, j*)` when `min_i max_j = max_j min_i`.
pub fn pure_saddle(game: &MatrixGame) -> Option<NashSolution> {
    let (m, n) = (game.rows(), game.cols());
    let mut col_min = vec![f64::INFINITY; n];
    let mut best_row = (0, f64::INFINITY);
    for i in 0..m {
        let row = game.row(i);
        let mut rmax = f64::NEG_INFINITY;
        for (cm, &x) in col_min.iter_mut().zip(row) {
            rmax = rmax.max(x);
            if x < *cm {
                *cm = x;
            }
        }
        if rmax < best_row.1 {
            best_row = (i, rmax);
        }
    }
    let mut best_col = (0, f64::NEG_INFINITY);
    for (j, &c) in col_min.iter().enumerate() {
        if c > best_col.1 {
            best_col = (j, c);
        }
    }
    (best_row.1 == best_col.1).then(|| NashSolution {
        row: MixedStrategy::pure(m, best_row.0),
        col: MixedStrategy::pure(n, best_col.0),
        value: best_row.1,
    })
}

struct Tableau {
    /// Constraint rows followed by the objective row; each has `width` cells,
    /// the last being the right-hand side.
    cells: Vec<f64>,
    width: usize,
    rows: usize,
    basis: Vec<usize>,
}

impl Tableau {
    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.cells[r * self.width + c]
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let w = self.width;
        let piv = self.at(pr, pc);
        for c in 0..w {
            self.cells[pr * w + c] /= piv;
        }
        let pivot_row: Vec<f64> = self.cells[pr * w..(pr + 1) * w].to_vec();
        for r in 0..=self.rows {
            if r == pr {
                continue;
            }
            let f = self.at(r, pc);
            if f != 0.0 {
                let row = &mut self.cells[r * w..(r + 1) * w];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
                row[pc] = 0.0;
            }
        }
        self.basis[pr] = pc;
    }
}

fn simplex_solve(game: &MatrixGame) -> Result<NashSolution> {
    let (m, n) = (game.rows(), game.cols());
    let shift = 1.0 - game.min_entry();
    // Variables: x_0..x_{m-1}, then one slack per column constraint.
    let width = m + n + 1;
    let mut cells = vec![0.0; (n + 1) * width];
    for j in 0..n {
        for i in 0..m {
            cells[j * width + i] = game.get(i, j) + shift;
        }
        cells[j * width + m + j] = 1.0;
        cells[j * width + width - 1] = 1.0;
    }
    // Objective row holds reduced costs; the rhs cell holds -z.
    for i in 0..m {
        cells[n * width + i] = 1.0;
    }
    let mut t = Tableau {
        cells,
        width,
        rows: n,
        basis: (m..m + n).collect(),
    };

    let cap = 10 * (m + n + 1);
    let mut pivots = 0;
    // Largest reduced cost first; after a run of degenerate pivots switch to
    // Bland's rule for good, which cannot cycle.
    let mut bland = false;
    let mut stalled = 0;
    loop {
        let entering = if bland {
            (0..m + n).find(|&c| t.at(n, c) > PIVOT_TOL)
        } else {
            (0..m + n)
                .filter(|&c| t.at(n, c) > PIVOT_TOL)
                .fold(None, |best: Option<usize>, c| match best {
                    Some(b) if t.at(n, b) >= t.at(n, c) => Some(b),
                    _ => Some(c),
                })
        };
        let Some(pc) = entering else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for r in 0..n {
            let a = t.at(r, pc);
            if a > PIVOT_TOL {
                let ratio = t.at(r, width - 1) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((lr, lratio)) => {
                        if ratio < lratio - PIVOT_TOL
                            || (ratio <= lratio + PIVOT_TOL && t.basis[r] < t.basis[lr])
                        {
                            Some((r, ratio))
                        } else {
                            Some((lr, lratio))
                        }
                    }
                };
            }
        }
        // Bounded: every column of M' is positive, so a leaving row exists.
        let (pr, step) = leave.ok_or_else(|| Error::Numerical("unbounded program".into()))?;
        if step <= PIVOT_TOL {
            stalled += 1;
            bland |= stalled > DEGENERATE_RUN;
        } else {
            stalled = 0;
        }
        t.pivot(pr, pc);
        pivots += 1;
        if pivots > cap {
            return Err(Error::Numerical(format!("simplex exceeded {cap} pivots")));
        }
    }

    let mut x = vec![0.0; m];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < m {
            x[b] = t.at(r, width - 1).max(0.0);
        }
    }
    let y: Vec<f64> = (0..n).map(|j| (-t.at(n, m + j)).max(0.0)).collect();
    let p = normalize(x)?;
    let q = normalize(y)?;
    let gap = exploitability_raw(game, &p, &q)?;
    if gap > NASH_TOL {
        return Err(Error::Numerical(format!(
            "solution exploitability {gap:e} exceeds tolerance"
        )));
    }
    let mq = game.row_values(&q)?;
    let value = p.iter().zip(&mq).map(|(a, b)| a * b).sum();
    Ok(NashSolution {
        row: MixedStrategy::new(p)?,
        col: MixedStrategy::new(q)?,
        value,
    })
}

fn normalize(mut w: Vec<f64>) -> Result<Vec<f64>> {
    let total: f64 = w.iter().sum();
    if !(total > 0.0) {
        return Err(Error::Numerical("degenerate optimum".into()));
    }
    for x in &mut w {
        *x /= total;
    }
    Ok(w)
}
