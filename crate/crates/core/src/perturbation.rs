//! Noise distributions, softmax, and perturbed best-response oracles.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_dim, Error, Result};
use crate::game::{argmax_least, argmin_least, MatrixGame, MixedStrategy, Side, WeightedProfile};
use crate::games::ClusterMap;
use crate::rng::RandomSource;

/// Distribution of the i.i.d. noise added to utilities before an oracle picks
/// its best response.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum PerturbationSpec {
    #[default]
    None,
    /// Uniform on `[a, b)`.
    Uniform { a: f64, b: f64 },
    /// Gumbel with location `mu` and scale `beta`.
    Gumbel { mu: f64, beta: f64 },
}

impl PerturbationSpec {
    pub fn uniform(a: f64, b: f64) -> Result<Self> {
        let s = PerturbationSpec::Uniform { a, b };
        s.validate()?;
        Ok(s)
    }

    pub fn gumbel(mu: f64, beta: f64) -> Result<Self> {
        let s = PerturbationSpec::Gumbel { mu, beta };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            PerturbationSpec::None => Ok(()),
            PerturbationSpec::Uniform { a, b } => {
                if a.is_finite() && b.is_finite() && a < b {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument(format!("uniform needs a < b, got ({a}, {b})")))
                }
            }
            PerturbationSpec::Gumbel { mu, beta } => {
                if mu.is_finite() && beta.is_finite() && beta > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidArgument(format!("gumbel needs beta > 0, got {beta}")))
                }
            }
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, PerturbationSpec::None)
    }

    /// One draw; `None` yields zero.
    pub fn sample_one(&self, rng: &mut RandomSource) -> f64 {
        match *self {
            PerturbationSpec::None => 0.0,
            PerturbationSpec::Uniform { a, b } => a + (b - a) * rng.uniform01(),
            PerturbationSpec::Gumbel { mu, beta } => gumbel_from_unit(rng.open01(), mu, beta),
        }
    }

    pub fn sample(&self, rng: &mut RandomSource, dim: usize) -> Vec<f64> {
        (0..dim).map(|_| self.sample_one(rng)).collect()
    }
}

impl fmt::Display for PerturbationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PerturbationSpec::None => write!(f, "none"),
            PerturbationSpec::Uniform { a, b } => write!(f, "uniform:{a},{b}"),
            PerturbationSpec::Gumbel { mu, beta } => write!(f, "gumbel:{mu},{beta}"),
        }
    }
}

impl FromStr for PerturbationSpec {
    type Err = Error;

    /// Accepts `none`, `uniform:a,b` and `gumbel:mu,beta`. Numbers may be
    /// written as fractions, e.g. `uniform:-1/6,1/6`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "none" {
            return Ok(PerturbationSpec::None);
        }
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad perturbation '{s}'")))?;
        let nums: Vec<f64> = args
            .split(',')
            .map(|t| parse_number(t).ok_or_else(|| Error::Parse(format!("bad number '{t}' in '{s}'"))))
            .collect::<Result<_>>()?;
        match (kind, nums.as_slice()) {
            ("uniform", &[a, b]) => PerturbationSpec::uniform(a, b),
            ("gumbel", &[mu, beta]) => PerturbationSpec::gumbel(mu, beta),
            _ => Err(Error::Parse(format!("bad perturbation '{s}'"))),
        }
    }
}

fn parse_number(t: &str) -> Option<f64> {
    let t = t.trim();
    let v = match t.split_once('/') {
        Some((a, b)) => a.trim().parse::<f64>().ok()? / b.trim().parse::<f64>().ok()?,
        None => t.parse::<f64>().ok()?,
    };
    v.is_finite().then_some(v)
}

/// Inverse Gumbel CDF: `mu - beta ln(-ln u)`.
pub fn gumbel_from_unit(u: f64, mu: f64, beta: f64) -> f64 {
    mu - beta * (-u.ln()).ln()
}

pub fn sample_uniform(rng: &mut RandomSource, a: f64, b: f64, dim: usize) -> Result<Vec<f64>> {
    Ok(PerturbationSpec::uniform(a, b)?.sample(rng, dim))
}

pub fn sample_gumbel(rng: &mut RandomSource, mu: f64, beta: f64, dim: usize) -> Result<Vec<f64>> {
    Ok(PerturbationSpec::gumbel(mu, beta)?.sample(rng, dim))
}

/// `e^{x_i} / Σ_j e^{x_j}`, computed after subtracting the maximum.
pub fn softmax(x: &[f64]) -> MixedStrategy {
    let hi = x.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let e: Vec<f64> = x.iter().map(|&v| (v - hi).exp()).collect();
    let total: f64 = e.iter().sum();
    MixedStrategy::new(e.into_iter().map(|v| v / total).collect())
        .expect("softmax of a finite vector is a distribution")
}

/// Least index of `argmin(values - u)` with fresh noise `u`.
pub fn perturbed_argmin(values: &[f64], spec: &PerturbationSpec, rng: &mut RandomSource) -> usize {
    if spec.is_none() {
        return argmin_least(values).0;
    }
    let mut best = (0, f64::INFINITY);
    for (i, &v) in values.iter().enumerate() {
        let x = v - spec.sample_one(rng);
        if x < best.1 {
            best = (i, x);
        }
    }
    best.0
}

/// Least index of `argmax(values + v)` with fresh noise `v`.
pub fn perturbed_argmax(values: &[f64], spec: &PerturbationSpec, rng: &mut RandomSource) -> usize {
    if spec.is_none() {
        return argmax_least(values).0;
    }
    let mut best = (0, f64::NEG_INFINITY);
    for (i, &v) in values.iter().enumerate() {
        let x = v + spec.sample_one(rng);
        if x > best.1 {
            best = (i, x);
        }
    }
    best.0
}

pub fn perturbed_best_response_row(
    game: &MatrixGame,
    q: &WeightedProfile,
    spec: &PerturbationSpec,
    rng: &mut RandomSource,
) -> Result<usize> {
    Ok(perturbed_argmin(&game.row_values(q.counts())?, spec, rng))
}

pub fn perturbed_best_response_col(
    game: &MatrixGame,
    p: &WeightedProfile,
    spec: &PerturbationSpec,
    rng: &mut RandomSource,
) -> Result<usize> {
    Ok(perturbed_argmax(&game.col_values(p.counts())?, spec, rng))
}

/// Best response in `M + Σ_k z_k B_k`, where one noise value `z_k` is drawn per
/// cluster and `B_k` masks the cells of cluster `k`. The perturbed matrix is
/// never materialized.
pub fn cluster_perturbed_best_response(
    game: &MatrixGame,
    clusters: &ClusterMap,
    side: Side,
    weights: &[f64],
    spec: &PerturbationSpec,
    rng: &mut RandomSource,
) -> Result<usize> {
    check_dim(game.rows(), clusters.rows())?;
    check_dim(game.cols(), clusters.cols())?;
    let z = spec.sample(rng, clusters.len());
    Ok(match side {
        Side::Row => {
            check_dim(game.cols(), weights.len())?;
            argmin_least(&cluster_row_values(game, clusters, weights, &z)).0
        }
        Side::Col => {
            check_dim(game.rows(), weights.len())?;
            argmax_least(&cluster_col_values(game, clusters, weights, &z)).0
        }
    })
}

pub(crate) fn cluster_row_values(game: &MatrixGame, clusters: &ClusterMap, q: &[f64], z: &[f64]) -> Vec<f64> {
    let nz: Vec<(usize, f64)> = q.iter().copied().enumerate().filter(|&(_, w)| w != 0.0).collect();
    (0..game.rows())
        .map(|i| {
            let row = game.row(i);
            let cl = clusters.row(i);
            nz.iter().map(|&(j, w)| w * (row[j] + z[cl[j] as usize])).sum()
        })
        .collect()
}

pub(crate) fn cluster_col_values(game: &MatrixGame, clusters: &ClusterMap, p: &[f64], z: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; game.cols()];
    for (i, &w) in p.iter().enumerate() {
        if w != 0.0 {
            let row = game.row(i);
            let cl = clusters.row(i);
            for j in 0..out.len() {
                out[j] += w * (row[j] + z[cl[j] as usize]);
            }
        }
    }
    out
}

/// Gumbel scale and horizon for which perturbed fictitious play reaches an
/// ε-equilibrium with probability at least one half.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SfpTheoryParams {
    pub n: f64,
    pub eps: f64,
    pub beta: f64,
    pub horizon: u64,
    pub eta: f64,
}

/// `β = (2 + √(2 ln n)) / (ε √(8 ln n))`, `T = ⌈((2 + √(2 ln n)) / ε)²⌉`,
/// `η = 1/β`. `n` is real-valued so that non-integer sizes can be probed.
pub fn sfp_theory_params(n: f64, eps: f64) -> Result<SfpTheoryParams> {
    if !(n >= 2.0) {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("need eps > 0, got {eps}")));
    }
    let ln = n.ln();
    let head = 2.0 + (2.0 * ln).sqrt();
    let beta = head / (eps * (8.0 * ln).sqrt());
    let horizon = (head / eps).powi(2).ceil() as u64;
    Ok(SfpTheoryParams {
        n,
        eps,
        beta,
        horizon,
        eta: 1.0 / beta,
    })
}
