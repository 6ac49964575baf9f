//! Experiment plans: flat `key = value` files.
//!
//! ```text
//! # SDO on S with the worst start
//! game = S:{n}
//! algorithms = do, sdo
//! perturbation = uniform:-1/2,1/2
//! eps = 0.1
//! sizes = 256, 1024, 4096
//! reps = 10
//! seed = 1
//! init = worst
//! normalize = false
//! ```
//!
//! `game` may repeat. `{n}` is replaced by each sweep value.
//! `row_perturbation` and `col_perturbation` override `perturbation` per
//! side, and `theory` selects Gumbel noise with the theory scale.

use std::fmt;
use std::str::FromStr;

use bro_core::games::GameSpec;
use bro_core::PerturbationSpec;

use crate::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Fp,
    Sfp,
    Afp,
    Safp,
    Do,
    Sdo,
    SfpRestart,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Fp => "fp",
            Algorithm::Sfp => "sfp",
            Algorithm::Afp => "afp",
            Algorithm::Safp => "safp",
            Algorithm::Do => "do",
            Algorithm::Sdo => "sdo",
            Algorithm::SfpRestart => "sfp-restart",
        }
    }

    /// Whether the algorithm uses the configured noise at all.
    pub fn is_perturbed(&self) -> bool {
        matches!(self, Algorithm::Sfp | Algorithm::Safp | Algorithm::Sdo | Algorithm::SfpRestart)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        Ok(match s.trim() {
            "fp" => Algorithm::Fp,
            "sfp" => Algorithm::Sfp,
            "afp" => Algorithm::Afp,
            "safp" => Algorithm::Safp,
            "do" => Algorithm::Do,
            "sdo" => Algorithm::Sdo,
            "sfp-restart" => Algorithm::SfpRestart,
            other => return Err(BenchError::Config(format!("unknown algorithm '{other}'"))),
        })
    }
}

/// Noise as written in a plan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Noise {
    Fixed(PerturbationSpec),
    /// Gumbel(0, β) with β from the theory parameters for the game size.
    Theory,
}

impl fmt::Display for Noise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Noise::Fixed(s) => write!(f, "{s}"),
            Noise::Theory => f.write_str("theory"),
        }
    }
}

impl FromStr for Noise {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        if s.trim() == "theory" {
            return Ok(Noise::Theory);
        }
        s.parse::<PerturbationSpec>()
            .map(Noise::Fixed)
            .map_err(|e| BenchError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitPolicy {
    Worst,
    First,
    /// 1-based indices as written in the plan.
    Explicit(usize, usize),
}

impl FromStr for InitPolicy {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        let s = s.trim();
        match s {
            "worst" => return Ok(InitPolicy::Worst),
            "first" => return Ok(InitPolicy::First),
            _ => {}
        }
        let bad = || BenchError::Config(format!("bad init policy '{s}'"));
        let (k, l) = s
            .strip_prefix("explicit:")
            .and_then(|r| r.split_once(','))
            .ok_or_else(bad)?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        let l: usize = l.trim().parse().map_err(|_| bad())?;
        if k == 0 || l == 0 {
            return Err(bad());
        }
        Ok(InitPolicy::Explicit(k, l))
    }
}

impl fmt::Display for InitPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitPolicy::Worst => f.write_str("worst"),
            InitPolicy::First => f.write_str("first"),
            InitPolicy::Explicit(k, l) => write!(f, "explicit:{k},{l}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    /// Game templates; `{n}` marks the sweep variable.
    pub games: Vec<String>,
    pub algorithms: Vec<Algorithm>,
    pub row_noise: Noise,
    pub col_noise: Noise,
    pub eps: f64,
    pub sizes: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    pub init: InitPolicy,
    pub normalize: bool,
    /// Attempt cap for the restart protocol.
    pub max_restarts: usize,
    /// Overrides the solvers' default iteration caps.
    pub max_iterations: Option<usize>,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            games: Vec::new(),
            algorithms: Vec::new(),
            row_noise: Noise::Theory,
            col_noise: Noise::Theory,
            eps: 0.1,
            sizes: Vec::new(),
            reps: 10,
            seed: 1,
            init: InitPolicy::Worst,
            normalize: false,
            max_restarts: 20,
            max_iterations: None,
        }
    }
}

impl ExperimentPlan {
    pub fn parse(text: &str) -> Result<Self, BenchError> {
        let mut plan = ExperimentPlan::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| BenchError::Config(format!("line {}: expected key = value", lineno + 1)))?;
            plan.set(key.trim(), value.trim())
                .map_err(|e| BenchError::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        plan.validate()?;
        Ok(plan)
    }

    /// Applies one `key = value` setting; the CLI uses this for overrides.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), BenchError> {
        let cfg = |msg: String| BenchError::Config(msg);
        match key {
            "game" => self.games.push(value.to_string()),
            "algorithm" | "algorithms" => {
                self.algorithms = value.split(',').map(str::parse).collect::<Result<_, _>>()?;
            }
            "perturbation" => {
                let n: Noise = value.parse()?;
                self.row_noise = n;
                self.col_noise = n;
            }
            "row_perturbation" => self.row_noise = value.parse()?,
            "col_perturbation" => self.col_noise = value.parse()?,
            "eps" => self.eps = value.parse().map_err(|_| cfg(format!("bad eps '{value}'")))?,
            "sizes" => {
                self.sizes = value
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| cfg(format!("bad size '{t}'"))))
                    .collect::<Result<_, _>>()?;
            }
            "reps" => self.reps = value.parse().map_err(|_| cfg(format!("bad reps '{value}'")))?,
            "seed" => self.seed = value.parse().map_err(|_| cfg(format!("bad seed '{value}'")))?,
            "init" => self.init = value.parse()?,
            "normalize" => {
                self.normalize = value.parse().map_err(|_| cfg(format!("bad flag '{value}'")))?;
            }
            "max_restarts" => {
                self.max_restarts = value.parse().map_err(|_| cfg(format!("bad max_restarts '{value}'")))?;
            }
            "max_iterations" => {
                self.max_iterations = Some(value.parse().map_err(|_| cfg(format!("bad max_iterations '{value}'")))?);
            }
            other => return Err(cfg(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let fail = |m: &str| Err(BenchError::Config(m.to_string()));
        if self.games.is_empty() {
            return fail("plan has no game");
        }
        if self.algorithms.is_empty() {
            return fail("plan has no algorithm");
        }
        if self.sizes.is_empty() {
            return fail("size sweep is empty");
        }
        if self.reps == 0 {
            return fail("reps must be at least 1");
        }
        if !(self.eps > 0.0) {
            return fail("eps must be positive");
        }
        if self.max_restarts == 0 {
            return fail("max_restarts must be at least 1");
        }
        for g in &self.games {
            for &n in &self.sizes {
                instantiate(g, n)?;
            }
        }
        Ok(())
    }
}

/// Substitutes the sweep value into a game template and parses it.
pub fn instantiate(template: &str, size: usize) -> Result<GameSpec, BenchError> {
    template
        .replace("{n}", &size.to_string())
        .parse()
        .map_err(|e: bro_core::Error| BenchError::Config(e.to_string()))
}
