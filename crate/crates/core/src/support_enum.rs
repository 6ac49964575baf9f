//! Exhaustive support enumeration for small games.
//!
//! Every square support pair `(I, J)` is tried by solving the indifference
//! system `[A -1; 1ᵀ 0] (w, v) = (0, 1)` for both players. Some square
//! submatrix always yields a nonsingular system at an extreme equilibrium, so
//! the search is complete. Used to cross-check [`crate::lp::nash_lp`].

use crate::error::{Error, Result};
use crate::game::{MatrixGame, MixedStrategy};
use crate::lp::NashSolution;

/// Largest side accepted by [`support_enum_nash`].
pub const MAX_SIDE: usize = 6;

const TOL: f64 = 1e-9;

pub fn support_enum_nash(game: &MatrixGame) -> Result<NashSolution> {
    let (m, n) = (game.rows(), game.cols());
    if m > MAX_SIDE || n > MAX_SIDE {
        return Err(Error::TooLarge(format!(
            "support enumeration limited to {MAX_SIDE}x{MAX_SIDE}, got {m}x{n}"
        )));
    }
    for k in 1..=m.min(n) {
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                if let Some(sol) = try_supports(game, &rows, &cols) {
                    return Ok(sol);
                }
            }
        }
    }
    Err(Error::Numerical("no equilibrium found by support enumeration".into()))
}

fn try_supports(game: &MatrixGame, rows: &[usize], cols: &[usize]) -> Option<NashSolution> {
    let k = rows.len();
    // Column strategy: rows in the support are indifferent.
    let (q_local, v) = solve_indifference(k, |a, b| game.get(rows[a], cols[b]))?;
    let (p_local, v2) = solve_indifference(k, |a, b| game.get(rows[b], cols[a]))?;
    if (v - v2).abs() > 1e-7 * (1.0 + v.abs()) {
        return None;
    }
    if q_local.iter().chain(&p_local).any(|&w| w < -TOL) {
        return None;
    }
    let mut q = vec![0.0; game.cols()];
    for (&j, &w) in cols.iter().zip(&q_local) {
        q[j] = w.max(0.0);
    }
    let mut p = vec![0.0; game.rows()];
    for (&i, &w) in rows.iter().zip(&p_local) {
        p[i] = w.max(0.0);
    }
    // Row player minimizes: no row may do better than v against q.
    for i in 0..game.rows() {
        let r: f64 = (0..game.cols()).map(|j| game.get(i, j) * q[j]).sum();
        if r < v - 1e-7 {
            return None;
        }
    }
    for j in 0..game.cols() {
        let c: f64 = (0..game.rows()).map(|i| game.get(i, j) * p[i]).sum();
        if c > v + 1e-7 {
            return None;
        }
    }
    let sp: f64 = p.iter().sum();
    let sq: f64 = q.iter().sum();
    p.iter_mut().for_each(|x| *x /= sp);
    q.iter_mut().for_each(|x| *x /= sq);
    Some(NashSolution {
        row: MixedStrategy::new(p).ok()?,
        col: MixedStrategy::new(q).ok()?,
        value: v,
    })
}

/// Solves `Σ_b a(r, b) w_b = v` for all `r`, `Σ w = 1`.
fn solve_indifference(k: usize, a: impl Fn(usize, usize) -> f64) -> Option<(Vec<f64>, f64)> {
    let dim = k + 1;
    let mut mat = vec![vec![0.0; dim + 1]; dim];
    for r in 0..k {
        for b in 0..k {
            mat[r][b] = a(r, b);
        }
        mat[r][k] = -1.0;
    }
    for b in 0..k {
        mat[k][b] = 1.0;
    }
    mat[k][dim] = 1.0;
    let sol = gaussian_solve(mat)?;
    Some((sol[..k].to_vec(), sol[k]))
}

fn gaussian_solve(mut mat: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let n = mat.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| mat[a][col].abs().total_cmp(&mat[b][col].abs()))?;
        if mat[piv][col].abs() < 1e-12 {
            return None;
        }
        mat.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = mat[r][col] / mat[col][col];
                if f != 0.0 {
                    for c in col..=n {
                        mat[r][c] -= f * mat[col][c];
                    }
                }
            }
        }
    }
    Some((0..n).map(|r| mat[r][n] / mat[r][r]).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::exploitability;

    #[test]
    fn matching_pennies_value_zero() {
        let g = MatrixGame::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        let s = support_enum_nash(&g).unwrap();
        assert!(s.value.abs() < 1e-12);
    }

    #[test]
    fn l3_pure_last() {
        let g = MatrixGame::from_rows(&[
            vec![0.0, 1.0, 1.0],
            vec![-1.0, 0.0, 1.0],
            vec![-1.0, -1.0, 0.0],
        ])
        .unwrap();
        let s = support_enum_nash(&g).unwrap();
        assert_eq!(s.value, 0.0);
        assert_eq!(s.row.support(0.0), vec![2]);
        assert_eq!(s.col.support(0.0), vec![2]);
    }

    #[test]
    fn rock_paper_scissors_uniform() {
        let g = MatrixGame::from_rows(&[
            vec![0.0, 1.0, -1.0],
            vec![-1.0, 0.0, 1.0],
            vec![1.0, -1.0, 0.0],
        ])
        .unwrap();
        let s = support_enum_nash(&g).unwrap();
        for w in s.row.weights().iter().chain(s.col.weights()) {
            assert!((w - 1.0 / 3.0).abs() < 1e-12);
        }
        assert!(s.value.abs() < 1e-12);
        assert!(exploitability(&g, &s.row, &s.col).unwrap() < 1e-12);
    }

    #[test]
    fn rejects_large_games() {
        let g = MatrixGame::new(7, 2, vec![0.0; 14]).unwrap();
        assert!(matches!(support_enum_nash(&g), Err(Error::TooLarge(_))));
    }
}
