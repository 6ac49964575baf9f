//! Dense matrix games, strategies and exact best-response oracles.

use std::fmt;

use crate::error::{check_dim, Error, Result};

/// Tolerance on the sum of a mixed strategy.
pub const SIMPLEX_TOL: f64 = 1e-9;

/// A zero-sum matrix game. Entry `(i, j)` is the loss of the row player and
/// the reward of the column player.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGame {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl MatrixGame {
    /// Builds a game from row-major entries.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix(format!("empty shape {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "non-finite entry at ({}, {})",
                pos / cols,
                pos % cols
            )));
        }
        Ok(MatrixGame { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(m * n);
        for r in rows {
            check_dim(n, r.len())?;
            data.extend_from_slice(r);
        }
        Self::new(m, n, data)
    }

    /// Builds a game by evaluating `f(i, j)` on every cell.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> MatrixGame {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        MatrixGame {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn min_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_entry(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `M q` for a weight vector over the columns. Zero weights are skipped,
    /// so sparse profiles cost `O(m * |support|)`.
    pub fn row_values(&self, q: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.cols, q.len())?;
        let nz: Vec<(usize, f64)> = q
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, w)| w != 0.0)
            .collect();
        Ok((0..self.rows)
            .map(|i| {
                let row = self.row(i);
                nz.iter().map(|&(j, w)| row[j] * w).sum()
            })
            .collect())
    }

    /// `pᵀ M` for a weight vector over the rows.
    pub fn col_values(&self, p: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.rows, p.len())?;
        let mut out = vec![0.0; self.cols];
        for (i, &w) in p.iter().enumerate() {
            if w != 0.0 {
                for (acc, &x) in out.iter_mut().zip(self.row(i)) {
                    *acc += w * x;
                }
            }
        }
        Ok(out)
    }

    /// Restricts the game to the given rows and columns, in support order.
    pub fn submatrix(&self, rows: &SupportSet, cols: &SupportSet) -> Result<MatrixGame> {
        if rows.is_empty() || cols.is_empty() {
            return Err(Error::InvalidArgument("empty support set".into()));
        }
        for (set, size) in [(rows, self.rows), (cols, self.cols)] {
            if let Some(&bad) = set.iter().find(|&&x| x >= size) {
                return Err(Error::IndexOutOfRange { index: bad, size });
            }
        }
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows.iter() {
            let row = self.row(i);
            data.extend(cols.iter().map(|&j| row[j]));
        }
        Ok(MatrixGame {
            rows: rows.len(),
            cols: cols.len(),
            data,
        })
    }

    /// Parses the plain-text exchange format: a line `m n` followed by `m`
    /// lines of `n` reals.
    pub fn parse_text(text: &str) -> Result<MatrixGame> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("missing header line".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad dimension '{t}'"))))
            .collect::<Result<_>>()?;
        let [m, n] = dims[..] else {
            return Err(Error::Parse("header must be 'm n'".into()));
        };
        let mut data = Vec::with_capacity(m * n);
        for (lineno, line) in lines.enumerate() {
            if lineno >= m {
                return Err(Error::Parse(format!("more than {m} rows")));
            }
            let before = data.len();
            for tok in line.split_whitespace() {
                let x: f64 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad number '{tok}' on row {}", lineno + 1)))?;
                if !x.is_finite() {
                    return Err(Error::Parse(format!("non-finite value on row {}", lineno + 1)));
                }
                data.push(x);
            }
            if data.len() - before != n {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {n}",
                    lineno + 1,
                    data.len() - before
                )));
            }
        }
        if data.len() != m * n {
            return Err(Error::Parse(format!("expected {m} rows")));
        }
        MatrixGame::new(m, n, data)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for MatrixGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// A probability distribution over one player's pure strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedStrategy(Vec<f64>);

impl MixedStrategy {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidStrategy("empty strategy".into()));
        }
        if weights.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidStrategy("negative or non-finite weight".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::InvalidStrategy(format!("weights sum to {total}")));
        }
        Ok(MixedStrategy(weights))
    }

    pub fn pure(size: usize, index: usize) -> Self {
        let mut w = vec![0.0; size];
        w[index] = 1.0;
        MixedStrategy(w)
    }

    pub fn uniform(size: usize) -> Self {
        MixedStrategy(vec![1.0 / size as f64; size])
    }

    pub fn weights(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Indices carrying weight above `threshold`.
    pub fn support(&self, threshold: f64) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > threshold).collect()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// Nonnegative play counts over one player's pure strategies.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedProfile {
    counts: Vec<f64>,
    total: f64,
}

impl WeightedProfile {
    pub fn new(counts: Vec<f64>) -> Result<Self> {
        if counts.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidStrategy("negative or non-finite count".into()));
        }
        let total: f64 = counts.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidStrategy("profile has zero total weight".into()));
        }
        Ok(WeightedProfile { counts, total })
    }

    pub fn pure(size: usize, index: usize) -> Self {
        let mut counts = vec![0.0; size];
        counts[index] = 1.0;
        WeightedProfile { counts, total: 1.0 }
    }

    pub fn counts(&self) -> &[f64] {
        &self.counts
    }

    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn normalized(&self) -> MixedStrategy {
        MixedStrategy(self.counts.iter().map(|c| c / self.total).collect())
    }
}

impl From<&MixedStrategy> for WeightedProfile {
    fn from(s: &MixedStrategy) -> Self {
        WeightedProfile {
            counts: s.0.clone(),
            total: s.0.iter().sum(),
        }
    }
}

/// An insertion-ordered set of pure-strategy indices.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SupportSet {
    order: Vec<usize>,
    member: Vec<bool>,
}

impl SupportSet {
    pub fn new(size: usize) -> Self {
        SupportSet {
            order: Vec::new(),
            member: vec![false; size],
        }
    }

    pub fn from_indices(size: usize, indices: &[usize]) -> Result<Self> {
        let mut s = SupportSet::new(size);
        for &i in indices {
            if i >= size {
                return Err(Error::IndexOutOfRange { index: i, size });
            }
            if !s.insert(i) {
                return Err(Error::InvalidArgument(format!("duplicate index {i}")));
            }
        }
        Ok(s)
    }

    pub fn full(size: usize) -> Self {
        SupportSet {
            order: (0..size).collect(),
            member: vec![true; size],
        }
    }

    /// Inserts `i`; returns false when already present. Panics when `i` is
    /// beyond the ground set.
    pub fn insert(&mut self, i: usize) -> bool {
        if self.member[i] {
            return false;
        }
        self.member[i] = true;
        self.order.push(i);
        true
    }

    pub fn contains(&self, i: usize) -> bool {
        self.member.get(i).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.order.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.order
    }

    pub fn ground_size(&self) -> usize {
        self.member.len()
    }

    pub fn min(&self) -> Option<usize> {
        self.order.iter().copied().min()
    }

    /// Spreads a strategy over this support into the full ground set.
    pub fn embed(&self, local: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.member.len()];
        for (&g, &w) in self.order.iter().zip(local) {
            out[g] = w;
        }
        out
    }
}

/// Which player an oracle call acts for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Row,
    Col,
}

/// Least index attaining the minimum.
pub fn argmin_least(values: &[f64]) -> (usize, f64) {
    let mut best = (0, values[0]);
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v < best.1 {
            best = (i, v);
        }
    }
    best
}

/// Least index attaining the maximum.
pub fn argmax_least(values: &[f64]) -> (usize, f64) {
    let mut best = (0, values[0]);
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > best.1 {
            best = (i, v);
        }
    }
    best
}

/// `pᵀ M q`.
pub fn value(game: &MatrixGame, p: &MixedStrategy, q: &MixedStrategy) -> Result<f64> {
    check_dim(game.rows(), p.len())?;
    let mq = game.row_values(q.weights())?;
    Ok(p.weights().iter().zip(&mq).map(|(a, b)| a * b).sum())
}

/// Row player's best response to raw column counts: the least index minimizing
/// `M q`, with the unnormalized value.
pub fn best_response_row(game: &MatrixGame, q: &WeightedProfile) -> Result<(usize, f64)> {
    Ok(argmin_least(&game.row_values(q.counts())?))
}

/// Column player's best response to raw row counts: the least index
/// maximizing `pᵀ M`, with the unnormalized value.
pub fn best_response_col(game: &MatrixGame, p: &WeightedProfile) -> Result<(usize, f64)> {
    Ok(argmax_least(&game.col_values(p.counts())?))
}

/// `BRVal_c(p) - BRVal_r(q)`; the pair is an ε-equilibrium when this is at
/// most ε.
pub fn exploitability(game: &MatrixGame, p: &MixedStrategy, q: &MixedStrategy) -> Result<f64> {
    exploitability_raw(game, p.weights(), q.weights())
}

pub(crate) fn exploitability_raw(game: &MatrixGame, p: &[f64], q: &[f64]) -> Result<f64> {
    let ub = argmax_least(&game.col_values(p)?).1;
    let lb = argmin_least(&game.row_values(q)?).1;
    Ok(ub - lb)
}

/// Positive affine map `x -> (x - shift) / scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    pub scale: f64,
    pub shift: f64,
}

impl AffineMap {
    pub fn apply(&self, x: f64) -> f64 {
        (x - self.shift) / self.scale
    }

    pub fn invert(&self, y: f64) -> f64 {
        y * self.scale + self.shift
    }
}

/// Maps entries onto `[0, 1]` via `(M - min) / (max - min)`. A constant
/// matrix maps to zeros with unit scale.
pub fn normalize_unit(game: &MatrixGame) -> (MatrixGame, AffineMap) {
    let lo = game.min_entry();
    let hi = game.max_entry();
    let map = if hi > lo {
        AffineMap {
            scale: hi - lo,
            shift: lo,
        }
    } else {
        AffineMap {
            scale: 1.0,
            shift: lo,
        }
    };
    let data = game.data.iter().map(|&x| map.apply(x)).collect();
    (
        MatrixGame {
            rows: game.rows,
            cols: game.cols,
            data,
        },
        map,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l2() -> MatrixGame {
        MatrixGame::from_rows(&[vec![0.0, 1.0], vec![-1.0, 0.0]]).unwrap()
    }

    fn l3() -> MatrixGame {
        MatrixGame::from_rows(&[
            vec![0.0, 1.0, 1.0],
            vec![-1.0, 0.0, 1.0],
            vec![-1.0, -1.0, 0.0],
        ])
        .unwrap()
    }

    fn pennies() -> MatrixGame {
        MatrixGame::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap()
    }

    #[test]
    fn value_examples() {
        let g = l2();
        let v = value(&g, &MixedStrategy::pure(2, 0), &MixedStrategy::pure(2, 1)).unwrap();
        assert_eq!(v, 1.0);
        let h = MixedStrategy::uniform(2);
        assert_eq!(value(&g, &h, &h).unwrap(), 0.0);
        let c = MatrixGame::from_rows(&[vec![3.5]]).unwrap();
        let e = MixedStrategy::pure(1, 0);
        assert_eq!(value(&c, &e, &e).unwrap(), 3.5);
    }

    #[test]
    fn value_dimension_mismatch() {
        let err = value(&l2(), &MixedStrategy::uniform(3), &MixedStrategy::uniform(2));
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn best_response_examples() {
        let g = l3();
        assert_eq!(best_response_row(&g, &WeightedProfile::pure(3, 2)).unwrap(), (2, 0.0));
        let half = WeightedProfile::new(vec![0.5, 0.5]).unwrap();
        assert_eq!(best_response_row(&l2(), &half).unwrap(), (1, -0.5));
        assert_eq!(best_response_col(&g, &WeightedProfile::pure(3, 0)).unwrap(), (1, 1.0));
        assert_eq!(best_response_col(&g, &WeightedProfile::pure(3, 2)).unwrap(), (2, 0.0));
    }

    #[test]
    fn best_response_is_homogeneous() {
        let g = l3();
        let q = WeightedProfile::new(vec![0.2, 0.3, 0.5]).unwrap();
        let q7 = WeightedProfile::new(vec![1.4, 2.1, 3.5]).unwrap();
        let (a, va) = best_response_row(&g, &q).unwrap();
        let (b, vb) = best_response_row(&g, &q7).unwrap();
        assert_eq!(a, b);
        assert!((vb - 7.0 * va).abs() < 1e-12);
        let (a, va) = best_response_col(&g, &q).unwrap();
        let (b, vb) = best_response_col(&g, &q7).unwrap();
        assert_eq!(a, b);
        assert!((vb - 7.0 * va).abs() < 1e-12);
    }

    #[test]
    fn exploitability_examples() {
        let e3 = MixedStrategy::pure(3, 2);
        assert_eq!(exploitability(&l3(), &e3, &e3).unwrap(), 0.0);
        let h = MixedStrategy::uniform(2);
        assert_eq!(exploitability(&pennies(), &h, &h).unwrap(), 0.0);
        let e1 = MixedStrategy::pure(2, 0);
        assert_eq!(exploitability(&pennies(), &e1, &e1).unwrap(), 2.0);
    }

    #[test]
    fn normalize_examples() {
        let (g, map) = normalize_unit(&l2());
        assert_eq!(g, MatrixGame::from_rows(&[vec![0.5, 1.0], vec![0.0, 0.5]]).unwrap());
        assert_eq!(map.invert(g.get(0, 1)), 1.0);
        let b = MatrixGame::from_rows(&[vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(normalize_unit(&b).0, b);
        let c = MatrixGame::from_rows(&[vec![4.0, 4.0]]).unwrap();
        assert_eq!(normalize_unit(&c).0.entries(), &[0.0, 0.0]);
    }

    #[test]
    fn submatrix_examples() {
        let g = l3();
        let r = SupportSet::from_indices(3, &[0, 2]).unwrap();
        let c = SupportSet::from_indices(3, &[1]).unwrap();
        assert_eq!(
            g.submatrix(&r, &c).unwrap(),
            MatrixGame::from_rows(&[vec![1.0], vec![-1.0]]).unwrap()
        );
        assert_eq!(g.submatrix(&SupportSet::full(3), &SupportSet::full(3)).unwrap(), g);
        let d = SupportSet::from_indices(3, &[1]).unwrap();
        assert_eq!(g.submatrix(&d, &d).unwrap().entries(), &[0.0]);
    }

    #[test]
    fn submatrix_errors() {
        let g = l3();
        assert!(g.submatrix(&SupportSet::new(3), &SupportSet::full(3)).is_err());
        assert!(SupportSet::from_indices(3, &[3]).is_err());
        assert!(SupportSet::from_indices(3, &[1, 1]).is_err());
        let big = SupportSet::from_indices(5, &[4]).unwrap();
        assert!(matches!(
            g.submatrix(&big, &SupportSet::full(3)),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn rejects_non_finite() {
        assert!(MatrixGame::new(1, 2, vec![0.0, f64::NAN]).is_err());
        assert!(MatrixGame::new(0, 2, vec![]).is_err());
    }

    #[test]
    fn text_format() {
        let g = MatrixGame::parse_text("2 3\n1 2 3\n-4.5 0 1e-3\n").unwrap();
        assert_eq!(g.get(1, 0), -4.5);
        assert_eq!(MatrixGame::parse_text(&g.to_text()).unwrap(), g);
        assert!(MatrixGame::parse_text("1 2\n1 NaN\n").is_err());
        assert!(MatrixGame::parse_text("1 2\n1 inf\n").is_err());
        assert!(MatrixGame::parse_text("2 2\n1 2\n").is_err());
        assert!(MatrixGame::parse_text("1 2\n1 2 3\n").is_err());
    }

    #[test]
    fn mixed_strategy_validation() {
        assert!(MixedStrategy::new(vec![0.5, 0.5]).is_ok());
        assert!(MixedStrategy::new(vec![0.5, 0.6]).is_err());
        assert!(MixedStrategy::new(vec![1.5, -0.5]).is_err());
        assert!(WeightedProfile::new(vec![0.0, 0.0]).is_err());
    }
}
