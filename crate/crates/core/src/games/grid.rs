//! Path-planning game on an `n×n` grid of nodes.
//!
//! The row player picks a monotone path (right/up moves) from the bottom-left
//! node to the top-right node and pays its cost. The column player picks one
//! edge whose cost is multiplied by `coefficient`. Matrix entry
//! `(path, edge) = base(path) + (coefficient - 1) · cost(edge) · [edge ∈ path]`.
//!
//! Paths are indexed by the lexicographic rank of their move strings with
//! right before up. Edges are indexed by tail node (row-major from the
//! source), right edge before up edge.

use crate::error::{check_dim, Error, Result};
use crate::game::{argmax_least, MatrixGame};
use crate::perturbation::PerturbationSpec;
use crate::rng::RandomSource;

/// Largest path count for which [`GridGame::to_matrix`] builds a matrix.
pub const EXPLICIT_PATH_LIMIT: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Right,
    Up,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridGame {
    side: usize,
    coefficient: f64,
    costs: Vec<f64>,
    /// Edge index of the right/up edge leaving each node, if any.
    right: Vec<Option<usize>>,
    up: Vec<Option<usize>>,
    /// `binom[a][b] = C(a, b)`, for path ranking.
    binom: Vec<Vec<u128>>,
}

fn edge_tables(n: usize) -> (Vec<Option<usize>>, Vec<Option<usize>>, Vec<usize>) {
    let mut right = vec![None; n * n];
    let mut up = vec![None; n * n];
    let mut tail_distance = Vec::new();
    for y in 0..n {
        for x in 0..n {
            let node = y * n + x;
            if x + 1 < n {
                right[node] = Some(tail_distance.len());
                tail_distance.push(x + y);
            }
            if y + 1 < n {
                up[node] = Some(tail_distance.len());
                tail_distance.push(x + y);
            }
        }
    }
    (right, up, tail_distance)
}

impl GridGame {
    /// Grid with the default layered costs: an edge whose tail is `d` steps
    /// from the source sits in layer `min(d, 2(n-1) - 1 - d)`; layers 0, 1 and
    /// 2+ cost 1/6, 1/2 and 5/6.
    pub fn new(side: usize, coefficient: f64) -> Result<Self> {
        if side < 2 {
            return Err(Error::InvalidArgument("grid needs side >= 2".into()));
        }
        let (_, _, dist) = edge_tables(side);
        let last = 2 * (side - 1) - 1;
        let costs = dist
            .iter()
            .map(|&d| match d.min(last - d) {
                0 => 1.0 / 6.0,
                1 => 0.5,
                _ => 5.0 / 6.0,
            })
            .collect();
        Self::with_costs(side, coefficient, costs)
    }

    pub fn with_costs(side: usize, coefficient: f64, costs: Vec<f64>) -> Result<Self> {
        if side < 2 {
            return Err(Error::InvalidArgument("grid needs side >= 2".into()));
        }
        if !(coefficient >= 1.0) || !coefficient.is_finite() {
            return Err(Error::InvalidArgument(format!("bad coefficient {coefficient}")));
        }
        let (right, up, dist) = edge_tables(side);
        check_dim(dist.len(), costs.len())?;
        if costs.iter().any(|&c| !(c > 0.0) || !c.is_finite()) {
            return Err(Error::InvalidArgument("edge costs must be positive".into()));
        }
        let len = 2 * (side - 1);
        let mut binom = vec![vec![0u128; len + 1]; len + 1];
        for a in 0..=len {
            binom[a][0] = 1;
            for b in 1..=a {
                binom[a][b] = binom[a - 1][b - 1] + if b < a { binom[a - 1][b] } else { 0 };
            }
        }
        Ok(GridGame {
            side,
            coefficient,
            costs,
            right,
            up,
            binom,
        })
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    pub fn edge_count(&self) -> usize {
        self.costs.len()
    }

    /// `C(2(n-1), n-1)`.
    pub fn path_count(&self) -> usize {
        let k = self.side - 1;
        self.binom[2 * k][k] as usize
    }

    /// Tail and head node coordinates `((x, y), (x', y'))` of an edge.
    pub fn edge_endpoints(&self, e: usize) -> ((usize, usize), (usize, usize)) {
        let n = self.side;
        for node in 0..n * n {
            let (x, y) = (node % n, node / n);
            if self.right[node] == Some(e) {
                return ((x, y), (x + 1, y));
            }
            if self.up[node] == Some(e) {
                return ((x, y), (x, y + 1));
            }
        }
        panic!("edge {e} out of range")
    }

    /// Number of paths with the given remaining right and up moves.
    fn completions(&self, rights: usize, ups: usize) -> u128 {
        self.binom[rights + ups][rights]
    }

    pub fn path_moves(&self, rank: usize) -> Vec<Move> {
        let mut rank = rank as u128;
        let (mut r, mut u) = (self.side - 1, self.side - 1);
        let mut out = Vec::with_capacity(r + u);
        while r + u > 0 {
            let with_right = if r > 0 { self.completions(r - 1, u) } else { 0 };
            if r > 0 && rank < with_right {
                out.push(Move::Right);
                r -= 1;
            } else {
                rank -= with_right;
                out.push(Move::Up);
                u -= 1;
            }
        }
        out
    }

    pub fn path_rank(&self, moves: &[Move]) -> usize {
        let (mut r, mut u) = (self.side - 1, self.side - 1);
        let mut rank = 0u128;
        for m in moves {
            match m {
                Move::Right => r -= 1,
                Move::Up => {
                    if r > 0 {
                        rank += self.completions(r - 1, u);
                    }
                    u -= 1;
                }
            }
        }
        rank as usize
    }

    fn edges_of_moves(&self, moves: &[Move]) -> Vec<usize> {
        let n = self.side;
        let (mut x, mut y) = (0, 0);
        moves
            .iter()
            .map(|m| {
                let node = y * n + x;
                match m {
                    Move::Right => {
                        x += 1;
                        self.right[node].expect("move stays in grid")
                    }
                    Move::Up => {
                        y += 1;
                        self.up[node].expect("move stays in grid")
                    }
                }
            })
            .collect()
    }

    pub fn path_edges(&self, rank: usize) -> Vec<usize> {
        self.edges_of_moves(&self.path_moves(rank))
    }

    pub fn path_cost(&self, rank: usize) -> f64 {
        self.path_edges(rank).iter().map(|&e| self.costs[e]).sum()
    }

    /// Payoff when the row player takes `path` and the column player picks `edge`.
    pub fn entry(&self, path: usize, edge: usize) -> f64 {
        let edges = self.path_edges(path);
        let base: f64 = edges.iter().map(|&e| self.costs[e]).sum();
        if edges.contains(&edge) {
            base + (self.coefficient - 1.0) * self.costs[edge]
        } else {
            base
        }
    }

    pub fn to_matrix(&self) -> Result<MatrixGame> {
        let paths = self.path_count();
        if paths > EXPLICIT_PATH_LIMIT {
            return Err(Error::TooLarge(format!("{paths} paths exceed the explicit limit")));
        }
        let m = self.edge_count();
        let mut data = Vec::with_capacity(paths * m);
        for p in 0..paths {
            let edges = self.path_edges(p);
            let base: f64 = edges.iter().map(|&e| self.costs[e]).sum();
            let mut row = vec![base; m];
            for &e in &edges {
                row[e] = base + (self.coefficient - 1.0) * self.costs[e];
            }
            data.extend(row);
        }
        MatrixGame::new(paths, m, data)
    }

    /// Cheapest path against edge weights. Each edge costs
    /// `c(e) · (W + (coefficient - 1) · w(e)) / W` with `W` the total weight
    /// (plain `c(e)` when `W = 0`), where `c(e)` is the base cost plus one fresh
    /// noise draw. Ties go to the lexicographically least path. Returns the
    /// path rank and its cost under the effective costs.
    pub fn best_response_path(
        &self,
        edge_weights: &[f64],
        noise: &PerturbationSpec,
        rng: &mut RandomSource,
    ) -> Result<(usize, f64)> {
        check_dim(self.edge_count(), edge_weights.len())?;
        let total: f64 = edge_weights.iter().sum();
        let eff: Vec<f64> = self
            .costs
            .iter()
            .zip(edge_weights)
            .map(|(&c, &w)| {
                let c = c + noise.sample_one(rng);
                if total > 0.0 {
                    c * (total + (self.coefficient - 1.0) * w) / total
                } else {
                    c
                }
            })
            .collect();
        let n = self.side;
        // Cost-to-go from each node to the sink.
        let mut togo = vec![0.0; n * n];
        for y in (0..n).rev() {
            for x in (0..n).rev() {
                let node = y * n + x;
                let r = self.right[node].map(|e| eff[e] + togo[node + 1]);
                let u = self.up[node].map(|e| eff[e] + togo[node + n]);
                togo[node] = match (r, u) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => 0.0,
                };
            }
        }
        let mut moves = Vec::with_capacity(2 * (n - 1));
        let (mut x, mut y) = (0, 0);
        while x + 1 < n || y + 1 < n {
            let node = y * n + x;
            let r = self.right[node].map(|e| eff[e] + togo[node + 1]);
            let u = self.up[node].map(|e| eff[e] + togo[node + n]);
            let go_right = match (r, u) {
                (Some(a), Some(b)) => a <= b + 1e-12 * (1.0 + b.abs()),
                (Some(_), None) => true,
                _ => false,
            };
            if go_right {
                moves.push(Move::Right);
                x += 1;
            } else {
                moves.push(Move::Up);
                y += 1;
            }
        }
        Ok((self.path_rank(&moves), togo[0]))
    }

    /// Expected usage of each edge under path weights, unnormalized.
    pub fn edge_usage(&self, path_weights: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.path_count(), path_weights.len())?;
        let mut usage = vec![0.0; self.edge_count()];
        for (p, &w) in path_weights.iter().enumerate() {
            if w != 0.0 {
                for e in self.path_edges(p) {
                    usage[e] += w;
                }
            }
        }
        Ok(usage)
    }

    /// Edge maximizing `cost(e) · usage(e)` (least index on ties) together
    /// with its payoff `Σ_p w_p base(p) + (coefficient - 1) cost(e) usage(e)`
    /// on raw weights.
    pub fn best_response_edge(&self, path_weights: &[f64]) -> Result<(usize, f64)> {
        let usage = self.edge_usage(path_weights)?;
        let scores: Vec<f64> = self.costs.iter().zip(&usage).map(|(c, u)| c * u).collect();
        let (e, s) = argmax_least(&scores);
        let base: f64 = path_weights
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0.0)
            .map(|(p, &w)| w * self.path_cost(p))
            .sum();
        Ok((e, base + (self.coefficient - 1.0) * s))
    }

    /// As [`Self::best_response_edge`] with one fresh noise draw added to each
    /// edge cost.
    pub fn perturbed_best_response_edge(
        &self,
        path_weights: &[f64],
        noise: &PerturbationSpec,
        rng: &mut RandomSource,
    ) -> Result<usize> {
        let usage = self.edge_usage(path_weights)?;
        let scores: Vec<f64> = self
            .costs
            .iter()
            .zip(&usage)
            .map(|(&c, &u)| (c + noise.sample_one(rng)) * u)
            .collect();
        Ok(argmax_least(&scores).0)
    }
}
