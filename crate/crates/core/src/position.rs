//! Coin-string positions, move generation, quick outcome rules, and the
//! designated best moves.
//!
//! A position is a line of coins written as a 0-1 sequence `d_1 d_2 ... d_n`
//! (heads = 0, tails = 1). Left moves by flipping two tails coins to heads;
//! Right picks a heads coin and a tails coin to its right and flips both.
//! Coins after the last tails can never be chosen by either rule, so
//! positions are normalized by stripping trailing heads at construction.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

/// The two players. Positive values favour Left, negative favour Right.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Player {
    Left,
    Right,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Left => Player::Right,
            Player::Right => Player::Left,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Left => "Left",
            Player::Right => "Right",
        })
    }
}

/// Who wins under optimal play. `Unknown` is only produced by
/// [`CoinString::quick_outcome`], whose rules do not cover every position.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Outcome {
    LeftWins,
    RightWins,
    /// The player who moved last wins; whoever must move loses.
    PreviousWins,
    Unknown,
}

impl Outcome {
    /// Stable machine-readable token.
    pub fn token(self) -> &'static str {
        match self {
            Outcome::LeftWins => "LeftWins",
            Outcome::RightWins => "RightWins",
            Outcome::PreviousWins => "PreviousWins",
            Outcome::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::LeftWins => "Left wins",
            Outcome::RightWins => "Right wins",
            Outcome::PreviousWins => "previous player wins",
            Outcome::Unknown => "unknown",
        })
    }
}

/// A move flips the coins at 1-based indices `low < high`.
///
/// Left requires tails at both indices; Right requires heads at `low` and
/// tails at `high`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Move {
    pub player: Player,
    pub low: usize,
    pub high: usize,
}

impl Move {
    pub fn new(player: Player, low: usize, high: usize) -> Self {
        Move { player, low, high }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({},{})", self.player, self.low, self.high)
    }
}

/// Errors from parsing positions and applying moves.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum PositionError {
    #[error("invalid character {found:?} at position {index}: expected '0' or '1'")]
    InvalidCharacter { found: char, index: usize },
    #[error("illegal move {mv} in {position}")]
    IllegalMove { mv: Move, position: String },
    #[error("no Left move: fewer than two tails coins")]
    NoLeftMove,
    #[error("no Right move: no heads coin precedes a tails coin")]
    NoRightMove,
}

/// A normalized coin line: empty, or ending in a tails coin.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CoinString {
    bits: Vec<bool>,
}

impl CoinString {
    pub fn empty() -> Self {
        CoinString::default()
    }

    /// Builds a position from coin states (`true` = tails), stripping
    /// trailing heads.
    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut bits: Vec<bool> = bits.into_iter().collect();
        while bits.last() == Some(&false) {
            bits.pop();
        }
        CoinString { bits }
    }

    /// Parses a 0-1 string; spaces and underscores are ignored.
    pub fn parse(text: &str) -> Result<Self, PositionError> {
        let mut bits = Vec::with_capacity(text.len());
        for (index, ch) in text.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                ' ' | '_' => {}
                found => return Err(PositionError::InvalidCharacter { found, index }),
            }
        }
        Ok(CoinString::from_bits(bits))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Coin states, leftmost first; `true` is tails.
    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Number of tails coins.
    pub fn ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// The associated binary number `sum d_i 2^(i-1)`; it strictly decreases
    /// with every legal move, so play always terminates.
    pub fn binary_number(&self) -> BigUint {
        let mut n = BigUint::zero();
        for (i, &bit) in self.bits.iter().enumerate() {
            if bit {
                n.set_bit(i as u64, true);
            }
        }
        n
    }

    /// All Left moves: each pair of tails coins flips to heads.
    pub fn left_options(&self) -> Vec<(Move, CoinString)> {
        let ones: Vec<usize> = self.one_indices().collect();
        let mut out = Vec::with_capacity(ones.len() * ones.len().saturating_sub(1) / 2);
        for (a, &i) in ones.iter().enumerate() {
            for &j in &ones[a + 1..] {
                let mut bits = self.bits.clone();
                bits[i] = false;
                bits[j] = false;
                out.push((
                    Move::new(Player::Left, i + 1, j + 1),
                    CoinString::from_bits(bits),
                ));
            }
        }
        out
    }

    /// All Right moves: a heads coin and a tails coin to its right swap
    /// states. When the rightmost tails is flipped, the coins after the new
    /// last tails disappear under normalization.
    pub fn right_options(&self) -> Vec<(Move, CoinString)> {
        let mut out = Vec::new();
        for (i, &low_bit) in self.bits.iter().enumerate() {
            if low_bit {
                continue;
            }
            for (j, &high_bit) in self.bits.iter().enumerate().skip(i + 1) {
                if !high_bit {
                    continue;
                }
                let mut bits = self.bits.clone();
                bits[i] = true;
                bits[j] = false;
                out.push((
                    Move::new(Player::Right, i + 1, j + 1),
                    CoinString::from_bits(bits),
                ));
            }
        }
        out
    }

    pub fn options(&self, player: Player) -> Vec<(Move, CoinString)> {
        match player {
            Player::Left => self.left_options(),
            Player::Right => self.right_options(),
        }
    }

    /// Applies a move, checking legality.
    pub fn apply(&self, mv: Move) -> Result<CoinString, PositionError> {
        let illegal = || PositionError::IllegalMove {
            mv,
            position: self.to_string(),
        };
        if mv.low == 0 || mv.low >= mv.high || mv.high > self.len() {
            return Err(illegal());
        }
        let (low, high) = (self.bits[mv.low - 1], self.bits[mv.high - 1]);
        let legal = match mv.player {
            Player::Left => low && high,
            Player::Right => !low && high,
        };
        if !legal {
            return Err(illegal());
        }
        let mut bits = self.bits.clone();
        bits[mv.low - 1] = !low;
        bits[mv.high - 1] = !high;
        Ok(CoinString::from_bits(bits))
    }

    /// Outcome by the direct rules alone, without evaluating the position:
    /// Left wins with a nonzero even number of tails, or a leading tails plus
    /// at least one more; Right wins a lone tails behind at least one heads;
    /// the empty line and the single coin `1` are losses for whoever must
    /// move. Everything else is `Unknown` here.
    pub fn quick_outcome(&self) -> Outcome {
        let ones = self.ones();
        if ones == 0 {
            Outcome::PreviousWins
        } else if ones.is_multiple_of(2) || (self.bits[0] && ones >= 2) {
            Outcome::LeftWins
        } else if ones == 1 {
            if self.len() == 1 {
                Outcome::PreviousWins
            } else {
                Outcome::RightWins
            }
        } else {
            Outcome::Unknown
        }
    }

    /// Left's designated best move: flip the two rightmost tails coins.
    pub fn best_left_move(&self) -> Result<Move, PositionError> {
        let mut ones = self.one_indices().rev();
        let last = ones.next().ok_or(PositionError::NoLeftMove)?;
        let second = ones.next().ok_or(PositionError::NoLeftMove)?;
        Ok(Move::new(Player::Left, second + 1, last + 1))
    }

    /// Right's designated best move: flip the rightmost heads coin and the
    /// tails coin immediately after it (normalization guarantees the
    /// successor of the rightmost heads is tails).
    pub fn best_right_move(&self) -> Result<Move, PositionError> {
        let heads = self
            .bits
            .iter()
            .rposition(|&b| !b)
            .ok_or(PositionError::NoRightMove)?;
        debug_assert!(self.bits[heads + 1]);
        Ok(Move::new(Player::Right, heads + 1, heads + 2))
    }

    pub fn best_move(&self, player: Player) -> Result<Move, PositionError> {
        match player {
            Player::Left => self.best_left_move(),
            Player::Right => self.best_right_move(),
        }
    }

    /// All nonempty normalized positions of length `1..=max_len`, shortest
    /// first. There are `2^max_len - 1` of them.
    pub fn enumerate_normalized(max_len: usize) -> impl Iterator<Item = CoinString> {
        assert!(
            max_len < 64,
            "enumeration is only supported below length 64"
        );
        (1..=max_len).flat_map(|len| {
            (0u64..1 << (len - 1)).map(move |mask| {
                CoinString::from_bits((0..len).map(|i| i + 1 == len || mask >> i & 1 == 1))
            })
        })
    }

    fn one_indices(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }
}

impl fmt::Display for CoinString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &bit in &self.bits {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for CoinString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoinString({self})")
    }
}

impl FromStr for CoinString {
    type Err = PositionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CoinString::parse(s)
    }
}
