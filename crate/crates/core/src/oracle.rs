//! Rule-derived ground truth: brute-force evaluation of positions straight
//! from the move rules and the simplicity rule, with no reductions and no
//! decomposition.
//!
//! The oracle recursively evaluates every option of a position, takes the
//! best value for each player, and resolves the pair with [`simplest_in`].
//! Results are memoized on normalized positions so transpositions across
//! different inputs share work. Everything the fast solver claims is checked
//! against this module.

use std::collections::HashMap;

use crate::numbers::{simplest_in, Dyadic, Interval};
use crate::position::{CoinString, Move, Player};

/// Default cap on the length of positions the oracle will evaluate; the
/// enumeration behind a long position is exponential and the fast solver has
/// no such limit.
pub const DEFAULT_MAX_LEN: usize = 20;

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum OracleError {
    #[error("position {position} has {} coins, above the oracle cap of {max_len}", position.len())]
    TooLong {
        position: CoinString,
        max_len: usize,
    },
    /// The best Left option was not strictly below the best Right option.
    /// This would mean the position is not a number; it must never happen.
    #[error(
        "number violation at {position}: best Left option {left} >= best Right option {right}"
    )]
    NumberViolation {
        position: CoinString,
        left: Dyadic,
        right: Dyadic,
    },
    #[error("{player} has no move in {position}")]
    NoMove {
        player: Player,
        position: CoinString,
    },
}

/// Result of checking the F1/F2 closure properties on one position.
///
/// For every pair of a Left option and a Right option, either F1 (some
/// `G^RL >= G^L`, or some `G^LR <= G^R`) or F2 (some `G^LR <= G^RL`) must
/// hold; together they certify that every position is a number.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F1F2Report {
    pub position: CoinString,
    pub pairs_checked: usize,
    /// Option pairs `(left option, right option)` satisfying neither property.
    pub failures: Vec<(CoinString, CoinString)>,
}

impl F1F2Report {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Memoized brute-force evaluator.
pub struct Oracle {
    memo: HashMap<CoinString, Dyadic>,
    max_len: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new()
    }
}

impl Oracle {
    pub fn new() -> Self {
        Oracle::with_max_len(DEFAULT_MAX_LEN)
    }

    pub fn with_max_len(max_len: usize) -> Self {
        Oracle {
            memo: HashMap::new(),
            max_len,
        }
    }

    /// Number of memoized positions.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// The canonical value of a position, straight from the rules.
    pub fn value(&mut self, position: &CoinString) -> Result<Dyadic, OracleError> {
        self.check_len(position)?;
        self.eval(position)
    }

    fn check_len(&self, position: &CoinString) -> Result<(), OracleError> {
        if position.len() > self.max_len {
            return Err(OracleError::TooLong {
                position: position.clone(),
                max_len: self.max_len,
            });
        }
        Ok(())
    }

    // options never grow, so the cap is only checked at entry points
    fn eval(&mut self, position: &CoinString) -> Result<Dyadic, OracleError> {
        if let Some(v) = self.memo.get(position) {
            return Ok(v.clone());
        }
        let mut best_left: Option<Dyadic> = None;
        for (_, option) in position.left_options() {
            let v = self.eval(&option)?;
            best_left = Some(best_left.map_or(v.clone(), |b| b.max(v)));
        }
        let mut best_right: Option<Dyadic> = None;
        for (_, option) in position.right_options() {
            let v = self.eval(&option)?;
            best_right = Some(best_right.map_or(v.clone(), |b| b.min(v)));
        }
        if let (Some(l), Some(r)) = (&best_left, &best_right) {
            if l >= r {
                return Err(OracleError::NumberViolation {
                    position: position.clone(),
                    left: l.clone(),
                    right: r.clone(),
                });
            }
        }
        let value = simplest_in(&Interval::new(best_left, best_right));
        self.memo.insert(position.clone(), value.clone());
        Ok(value)
    }

    /// All moves of `player` whose resulting value is best for them
    /// (maximal for Left, minimal for Right). Ties are all reported.
    pub fn best_moves(
        &mut self,
        position: &CoinString,
        player: Player,
    ) -> Result<Vec<Move>, OracleError> {
        self.check_len(position)?;
        let mut evaluated = Vec::new();
        for (mv, option) in position.options(player) {
            let v = self.eval(&option)?;
            evaluated.push((mv, v));
        }
        if evaluated.is_empty() {
            return Err(OracleError::NoMove {
                player,
                position: position.clone(),
            });
        }
        let target = match player {
            Player::Left => evaluated.iter().map(|(_, v)| v).max(),
            Player::Right => evaluated.iter().map(|(_, v)| v).min(),
        }
        .cloned()
        .expect("nonempty");
        Ok(evaluated
            .into_iter()
            .filter_map(|(mv, v)| (v == target).then_some(mv))
            .collect())
    }

    /// Checks every (Left option, Right option) pair of `position` for the
    /// F1-or-F2 property, comparing by oracle values.
    pub fn check_f1_f2(&mut self, position: &CoinString) -> Result<F1F2Report, OracleError> {
        self.check_len(position)?;
        let lefts: Vec<CoinString> = position
            .left_options()
            .into_iter()
            .map(|(_, g)| g)
            .collect();
        let rights: Vec<CoinString> = position
            .right_options()
            .into_iter()
            .map(|(_, g)| g)
            .collect();

        // per option, the best follow-up value for the other player
        let mut left_data = Vec::with_capacity(lefts.len());
        for gl in &lefts {
            let value = self.eval(gl)?;
            let mut min_lr: Option<Dyadic> = None;
            for (_, glr) in gl.right_options() {
                let v = self.eval(&glr)?;
                min_lr = Some(min_lr.map_or(v.clone(), |b| b.min(v)));
            }
            left_data.push((gl.clone(), value, min_lr));
        }
        let mut right_data = Vec::with_capacity(rights.len());
        for gr in &rights {
            let value = self.eval(gr)?;
            let mut max_rl: Option<Dyadic> = None;
            for (_, grl) in gr.left_options() {
                let v = self.eval(&grl)?;
                max_rl = Some(max_rl.map_or(v.clone(), |b| b.max(v)));
            }
            right_data.push((gr.clone(), value, max_rl));
        }

        let mut failures = Vec::new();
        for (gl, left_value, min_lr) in &left_data {
            for (gr, right_value, max_rl) in &right_data {
                let f1 = max_rl.as_ref().is_some_and(|m| m >= left_value)
                    || min_lr.as_ref().is_some_and(|m| m <= right_value);
                let f2 = match (min_lr, max_rl) {
                    (Some(lo), Some(hi)) => lo <= hi,
                    _ => false,
                };
                if !f1 && !f2 {
                    failures.push((gl.clone(), gr.clone()));
                }
            }
        }
        Ok(F1F2Report {
            position: position.clone(),
            pairs_checked: left_data.len() * right_data.len(),
            failures,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(s: &str) -> CoinString {
        CoinString::parse(s).unwrap()
    }

    fn dy(n: i64, d: u64) -> Dyadic {
        Dyadic::ratio(n, d)
    }

    #[test]
    fn oracle_values() {
        let mut oracle = Oracle::new();
        assert_eq!(oracle.value(&pos("1")).unwrap(), Dyadic::zero());
        assert_eq!(oracle.value(&CoinString::empty()).unwrap(), Dyadic::zero());
        assert_eq!(oracle.value(&pos("1011")).unwrap(), dy(1, 4));
        assert_eq!(oracle.value(&pos("0101011111")).unwrap(), dy(-11, 16));
        assert_eq!(oracle.value(&pos("11")).unwrap(), Dyadic::one());
        assert_eq!(oracle.value(&pos("001")).unwrap(), Dyadic::from_int(-2));
    }

    #[test]
    fn memo_is_shared_across_queries() {
        let mut oracle = Oracle::new();
        oracle.value(&pos("1011")).unwrap();
        let after_first = oracle.memo_len();
        oracle.value(&pos("1011")).unwrap();
        assert_eq!(oracle.memo_len(), after_first);
        // a transposed position reuses shared subpositions
        oracle.value(&pos("111")).unwrap();
        assert_eq!(oracle.memo_len(), after_first);
    }

    #[test]
    fn cap_is_enforced() {
        let mut oracle = Oracle::with_max_len(4);
        assert!(matches!(
            oracle.value(&pos("10101")),
            Err(OracleError::TooLong { .. })
        ));
        assert!(oracle.value(&pos("1011")).is_ok());
    }

    #[test]
    fn best_moves_examples() {
        let mut oracle = Oracle::new();
        let g = pos("1011");
        let left = oracle.best_moves(&g, Player::Left).unwrap();
        assert!(left.contains(&Move::new(Player::Left, 3, 4)));
        let right = oracle.best_moves(&g, Player::Right).unwrap();
        assert!(right.contains(&Move::new(Player::Right, 2, 3)));
        assert!(matches!(
            oracle.best_moves(&pos("111"), Player::Right),
            Err(OracleError::NoMove { .. })
        ));
    }

    #[test]
    fn f1_f2_examples() {
        let mut oracle = Oracle::new();
        let vacuous = oracle.check_f1_f2(&pos("11")).unwrap();
        assert!(vacuous.passes());
        assert_eq!(vacuous.pairs_checked, 0);

        let report = oracle.check_f1_f2(&pos("1011")).unwrap();
        assert!(report.passes());
        assert_eq!(report.pairs_checked, 6);
    }

    #[test]
    fn f1_f2_exhaustive_short() {
        let mut oracle = Oracle::new();
        for g in CoinString::enumerate_normalized(8) {
            let report = oracle.check_f1_f2(&g).unwrap();
            assert!(report.passes(), "{g} fails F1/F2: {:?}", report.failures);
        }
    }

    #[test]
    fn agrees_with_solver_on_short_positions() {
        let report = crate::checks::value_equivalence(10, &mut Oracle::new());
        assert!(report.passed(), "{report}");
    }
}
