use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::game::MatrixGame;
use crate::games::{
    bitgame_build, make_blotto, make_l, make_morra, make_random_unit, make_s, make_u, make_u_t,
    BitGameSpec, BitVariant, ClusterMap, GridGame,
};
use crate::rng::RandomSource;

/// Generator description, e.g. `L:8`, `blotto:5,4`, `bitgame:posg,7`,
/// `grid:6,10`.
#[derive(Debug, Clone, PartialEq)]
pub enum GameSpec {
    L(usize),
    S(usize),
    U(usize),
    UT(usize),
    Random(usize),
    Morra(usize),
    Blotto { fields: usize, units: usize },
    BitGame(BitGameSpec),
    Grid { side: usize, coefficient: f64 },
}

/// A generated game: a plain matrix, a matrix with its terminal clustering,
/// or a structured grid game.
#[derive(Debug, Clone)]
pub enum BuiltGame {
    Matrix(MatrixGame),
    Clustered(MatrixGame, ClusterMap),
    Grid(GridGame),
}

impl BuiltGame {
    pub fn rows(&self) -> usize {
        match self {
            BuiltGame::Matrix(g) | BuiltGame::Clustered(g, _) => g.rows(),
            BuiltGame::Grid(g) => g.path_count(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            BuiltGame::Matrix(g) | BuiltGame::Clustered(g, _) => g.cols(),
            BuiltGame::Grid(g) => g.edge_count(),
        }
    }

    /// The payoff matrix, materialized for grids when small enough.
    pub fn matrix(&self) -> Result<std::borrow::Cow<'_, MatrixGame>> {
        use std::borrow::Cow;
        match self {
            BuiltGame::Matrix(g) | BuiltGame::Clustered(g, _) => Ok(Cow::Borrowed(g)),
            BuiltGame::Grid(g) => Ok(Cow::Owned(g.to_matrix()?)),
        }
    }
}

impl GameSpec {
    /// Short family name used for initialization policies and reports.
    pub fn family(&self) -> &'static str {
        match self {
            GameSpec::L(_) => "L",
            GameSpec::S(_) => "S",
            GameSpec::U(_) => "U",
            GameSpec::UT(_) => "UT",
            GameSpec::Random(_) => "random",
            GameSpec::Morra(_) => "morra",
            GameSpec::Blotto { .. } => "blotto",
            GameSpec::BitGame(_) => "bitgame",
            GameSpec::Grid { .. } => "grid",
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, GameSpec::Random(_))
    }

    /// Builds the game; `rng` is only consumed by random families.
    pub fn build(&self, rng: &mut RandomSource) -> Result<BuiltGame> {
        Ok(match *self {
            GameSpec::L(n) => BuiltGame::Matrix(make_l(n)),
            GameSpec::S(n) => BuiltGame::Matrix(make_s(n)),
            GameSpec::U(n) => BuiltGame::Matrix(make_u(n)),
            GameSpec::UT(n) => BuiltGame::Matrix(make_u_t(n)),
            GameSpec::Random(n) => BuiltGame::Matrix(make_random_unit(n, rng)),
            GameSpec::Morra(f) => BuiltGame::Matrix(make_morra(f)),
            GameSpec::Blotto { fields, units } => BuiltGame::Matrix(make_blotto(fields, units)),
            GameSpec::BitGame(spec) => {
                let (g, c) = bitgame_build(&spec)?;
                BuiltGame::Clustered(g, c)
            }
            GameSpec::Grid { side, coefficient } => BuiltGame::Grid(GridGame::new(side, coefficient)?),
        })
    }
}

fn parse_usize(t: &str, whole: &str) -> Result<usize> {
    let v: usize = t
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer '{t}' in '{whole}'")))?;
    Ok(v)
}

impl FromStr for GameSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad game spec '{s}'")))?;
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        let positive = |v: usize| {
            if v == 0 {
                Err(Error::Parse(format!("size must be positive in '{s}'")))
            } else {
                Ok(v)
            }
        };
        let spec = match (kind.trim(), parts.as_slice()) {
            ("L", [n]) => GameSpec::L(positive(parse_usize(n, s)?)?),
            ("S", [n]) => GameSpec::S(positive(parse_usize(n, s)?)?),
            ("U", [n]) => GameSpec::U(positive(parse_usize(n, s)?)?),
            ("UT", [n]) => GameSpec::UT(positive(parse_usize(n, s)?)?),
            ("random", [n]) => GameSpec::Random(positive(parse_usize(n, s)?)?),
            ("morra", [f]) => GameSpec::Morra(positive(parse_usize(f, s)?)?),
            ("blotto", [fields, units]) => GameSpec::Blotto {
                fields: positive(parse_usize(fields, s)?)?,
                units: parse_usize(units, s)?,
            },
            ("bitgame", [variant, n]) => {
                let variant = match *variant {
                    "stochastic" => BitVariant::Stochastic,
                    "posg" => BitVariant::Posg,
                    other => return Err(Error::Parse(format!("unknown bit game variant '{other}'"))),
                };
                GameSpec::BitGame(BitGameSpec::new(variant, parse_usize(n, s)?)?)
            }
            ("grid", [n, coef]) => {
                let coefficient: f64 = coef
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient '{coef}'")))?;
                let side = parse_usize(n, s)?;
                if side < 2 || !(coefficient > 1.0) {
                    return Err(Error::Parse(format!("grid needs n >= 2 and coefficient > 1 in '{s}'")));
                }
                GameSpec::Grid { side, coefficient }
            }
            _ => return Err(Error::Parse(format!("bad game spec '{s}'"))),
        };
        Ok(spec)
    }
}

impl fmt::Display for GameSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameSpec::L(n) => write!(f, "L:{n}"),
            GameSpec::S(n) => write!(f, "S:{n}"),
            GameSpec::U(n) => write!(f, "U:{n}"),
            GameSpec::UT(n) => write!(f, "UT:{n}"),
            GameSpec::Random(n) => write!(f, "random:{n}"),
            GameSpec::Morra(n) => write!(f, "morra:{n}"),
            GameSpec::Blotto { fields, units } => write!(f, "blotto:{fields},{units}"),
            GameSpec::BitGame(b) => {
                let v = match b.variant {
                    BitVariant::Stochastic => "stochastic",
                    BitVariant::Posg => "posg",
                };
                write!(f, "bitgame:{v},{}", b.bits)
            }
            GameSpec::Grid { side, coefficient } => write!(f, "grid:{side},{coefficient}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in [
            "L:8",
            "S:4",
            "U:3",
            "UT:16",
            "random:10",
            "morra:3",
            "blotto:5,4",
            "bitgame:stochastic,3",
            "bitgame:posg,5",
            "grid:4,10",
        ] {
            let spec: GameSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn parse_errors() {
        for s in ["L", "L:0", "Q:3", "blotto:5", "bitgame:foo,3", "grid:1,10", "grid:4,1", "L:x"] {
            assert!(s.parse::<GameSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn build_shapes() {
        let mut rng = RandomSource::new(1);
        let g = "grid:4,10".parse::<GameSpec>().unwrap().build(&mut rng).unwrap();
        assert_eq!((g.rows(), g.cols()), (20, 24));
        let g = "bitgame:posg,3".parse::<GameSpec>().unwrap().build(&mut rng).unwrap();
        assert!(matches!(g, BuiltGame::Clustered(..)));
        assert_eq!(g.rows(), 8);
    }
}
