//! The n-bit games: each player commits to a bit string, which is replayed as
//! a sequence of simultaneous moves through a deterministic state machine.
//!
//! `Stochastic` walks a chain; the first round where the players differ ends
//! the game with `+1` (row 0, column 1) or `-1` (row 1, column 0). Its induced
//! matrix is `L(2ⁿ)`.
//!
//! `Posg` branches on the first difference instead. On the up branch the
//! column player reached a larger number; the walk survives only while the
//! row plays 1 and the column 0, ending in `+2` after the last round, and any
//! other pair ends in `+1`. The down branch mirrors it. A difference in the
//! last chain round goes straight to `±2`. Its induced matrix is `Uᵀ(2ⁿ)`.
//!
//! Strategy index = binary value of the string, most significant bit first.

use crate::error::{Error, Result};
use crate::game::MatrixGame;
use crate::games::ClusterMap;

/// Largest bit count for which a dense matrix is built.
pub const MAX_BITS: usize = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BitVariant {
    Stochastic,
    Posg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitGameSpec {
    pub variant: BitVariant,
    pub bits: usize,
}

/// Terminal states. Depths are 1-based round numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminal {
    Draw,
    /// Stochastic: column wins at the given round.
    Plus(usize),
    /// Stochastic: row wins at the given round.
    Minus(usize),
    /// POSG: column wins by exactly one.
    PlusTwo,
    /// POSG: row wins by exactly one.
    MinusTwo,
    /// POSG: column wins by more than one, leaving the up branch at this round.
    PlusOne(usize),
    /// POSG: row wins by more than one, leaving the down branch at this round.
    MinusOne(usize),
}

impl BitGameSpec {
    pub fn new(variant: BitVariant, bits: usize) -> Result<Self> {
        if bits == 0 {
            return Err(Error::InvalidArgument("bit games need at least one bit".into()));
        }
        Ok(BitGameSpec { variant, bits })
    }

    pub fn size(&self) -> usize {
        1 << self.bits
    }

    /// Number of terminal states, `2n + 1` for both variants.
    pub fn terminal_count(&self) -> usize {
        2 * self.bits + 1
    }

    pub fn terminal_id(&self, t: Terminal) -> usize {
        let n = self.bits;
        match t {
            Terminal::Draw => 0,
            Terminal::Plus(d) => d,
            Terminal::Minus(d) => n + d,
            Terminal::PlusTwo => 1,
            Terminal::MinusTwo => 2,
            Terminal::PlusOne(e) => 2 + e,
            Terminal::MinusOne(e) => n + 1 + e,
        }
    }

    pub fn terminal_label(&self, t: Terminal) -> String {
        match t {
            Terminal::Draw => "0".into(),
            Terminal::Plus(d) => format!("+1@{d}"),
            Terminal::Minus(d) => format!("-1@{d}"),
            Terminal::PlusTwo => "+2".into(),
            Terminal::MinusTwo => "-2".into(),
            Terminal::PlusOne(e) => format!("+1@{e}"),
            Terminal::MinusOne(e) => format!("-1@{e}"),
        }
    }

    fn terminals(&self) -> Vec<Terminal> {
        let n = self.bits;
        let mut out = vec![Terminal::Draw];
        match self.variant {
            BitVariant::Stochastic => {
                out.extend((1..=n).map(Terminal::Plus));
                out.extend((1..=n).map(Terminal::Minus));
            }
            BitVariant::Posg => {
                out.push(Terminal::PlusTwo);
                out.push(Terminal::MinusTwo);
                out.extend((1..n).map(Terminal::PlusOne));
                out.extend((1..n).map(Terminal::MinusOne));
            }
        }
        out
    }

    /// Plays pure strategies `i` (row) and `j` (column).
    pub fn play(&self, i: usize, j: usize) -> Terminal {
        let n = self.bits;
        let bit = |x: usize, round: usize| (x >> (n - 1 - round)) & 1;
        match self.variant {
            BitVariant::Stochastic => {
                for d in 0..n {
                    match (bit(i, d), bit(j, d)) {
                        (0, 1) => return Terminal::Plus(d + 1),
                        (1, 0) => return Terminal::Minus(d + 1),
                        _ => {}
                    }
                }
                Terminal::Draw
            }
            BitVariant::Posg => {
                let mut d = 0;
                while d < n {
                    let pair = (bit(i, d), bit(j, d));
                    if pair.0 == pair.1 {
                        d += 1;
                        continue;
                    }
                    let up = pair == (0, 1);
                    if d == n - 1 {
                        return if up { Terminal::PlusTwo } else { Terminal::MinusTwo };
                    }
                    let advance = if up { (1, 0) } else { (0, 1) };
                    for e in d + 1..n {
                        if (bit(i, e), bit(j, e)) != advance {
                            return if up { Terminal::PlusOne(e) } else { Terminal::MinusOne(e) };
                        }
                    }
                    return if up { Terminal::PlusTwo } else { Terminal::MinusTwo };
                }
                Terminal::Draw
            }
        }
    }
}

impl Terminal {
    /// Column player's reward.
    pub fn payoff(&self) -> f64 {
        match self {
            Terminal::Draw => 0.0,
            Terminal::Plus(_) | Terminal::PlusOne(_) => 1.0,
            Terminal::Minus(_) | Terminal::MinusOne(_) => -1.0,
            Terminal::PlusTwo => 2.0,
            Terminal::MinusTwo => -2.0,
        }
    }
}

fn parse_bits(s: &str, n: usize) -> Result<usize> {
    if s.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: s.len(),
        });
    }
    s.chars().try_fold(0usize, |acc, c| match c {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        _ => Err(Error::Parse(format!("bad bit '{c}'"))),
    })
}

/// Replays bit strings `x` (row) and `y` (column); returns the terminal id and
/// the column player's reward.
pub fn bitgame_simulate(spec: &BitGameSpec, x: &str, y: &str) -> Result<(usize, f64)> {
    let i = parse_bits(x, spec.bits)?;
    let j = parse_bits(y, spec.bits)?;
    let t = spec.play(i, j);
    Ok((spec.terminal_id(t), t.payoff()))
}

/// The induced `2ⁿ×2ⁿ` matrix and its terminal clustering.
pub fn bitgame_build(spec: &BitGameSpec) -> Result<(MatrixGame, ClusterMap)> {
    if spec.bits > MAX_BITS {
        return Err(Error::TooLarge(format!(
            "{} bits exceeds the dense limit of {MAX_BITS}",
            spec.bits
        )));
    }
    let size = spec.size();
    let mut data = Vec::with_capacity(size * size);
    let mut assign = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let t = spec.play(i, j);
            data.push(t.payoff());
            assign.push(spec.terminal_id(t) as u8);
        }
    }
    let mut labels = vec![String::new(); spec.terminal_count()];
    for t in spec.terminals() {
        labels[spec.terminal_id(t)] = spec.terminal_label(t);
    }
    Ok((
        MatrixGame::new(size, size, data)?,
        ClusterMap::new(size, size, assign, labels)?,
    ))
}
