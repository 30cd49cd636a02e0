//! Sums of positions: lines of coins played side by side, a move picking
//! exactly one line. Values of numbers add, so the total decides the game,
//! and a complete list of winning moves falls out of a value threshold.

use std::fmt;

use crate::numbers::Dyadic;
use crate::position::{CoinString, Move, Player, PositionError};
use crate::solver::{self, NotReduced};

/// An ordered list of component positions. Components are addressed by
/// 0-based index; coin indices inside a component stay 1-based.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SumPosition {
    components: Vec<CoinString>,
}

/// One winning move in a sum: the move, where it is played, and the total
/// value it leaves behind.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WinningMove {
    pub component: usize,
    pub mv: Move,
    pub result: CoinString,
    pub total: Dyadic,
}

impl SumPosition {
    pub fn new(components: Vec<CoinString>) -> Self {
        SumPosition { components }
    }

    /// Parses component strings joined by `+`.
    pub fn parse(text: &str) -> Result<Self, PositionError> {
        let components = text
            .split('+')
            .map(|part| CoinString::parse(part.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SumPosition { components })
    }

    pub fn components(&self) -> &[CoinString] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    /// Exact total: component values add.
    pub fn value(&self) -> Result<Dyadic, NotReduced> {
        let mut total = Dyadic::zero();
        for component in &self.components {
            total = &total + &solver::value(component)?;
        }
        Ok(total)
    }

    /// The winner with `mover` to play: the sign of the total decides, and a
    /// zero total is a loss for whoever must move.
    pub fn outcome(&self, mover: Player) -> Result<Player, NotReduced> {
        let total = self.value()?;
        Ok(if total.is_positive() {
            Player::Left
        } else if total.is_negative() {
            Player::Right
        } else {
            mover.opponent()
        })
    }

    /// Every move of `mover`, in any component, that wins: one leaving a
    /// total `>= 0` for Left or `<= 0` for Right. Totals are numbers, so a
    /// non-negative total with Right to move is a Right loss, and dually.
    /// The list is complete; an empty list means every move loses.
    pub fn winning_moves(&self, mover: Player) -> Result<Vec<WinningMove>, NotReduced> {
        let component_values = self
            .components
            .iter()
            .map(solver::value)
            .collect::<Result<Vec<_>, _>>()?;
        let grand_total = component_values
            .iter()
            .fold(Dyadic::zero(), |acc, v| &acc + v);

        let mut wins = Vec::new();
        for (index, component) in self.components.iter().enumerate() {
            let rest = &grand_total - &component_values[index];
            for (mv, result) in component.options(mover) {
                let total = &rest + &solver::value(&result)?;
                let winning = match mover {
                    Player::Left => !total.is_negative(),
                    Player::Right => !total.is_positive(),
                };
                if winning {
                    wins.push(WinningMove {
                        component: index,
                        mv,
                        result,
                        total,
                    });
                }
            }
        }
        Ok(wins)
    }
}

impl fmt::Display for SumPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, component) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{component}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{simplest_in, Interval};
    use std::collections::HashMap;

    fn sum(text: &str) -> SumPosition {
        SumPosition::parse(text).unwrap()
    }

    fn dy(n: i64, d: u64) -> Dyadic {
        Dyadic::ratio(n, d)
    }

    const SAMPLE_SUM: &str = "0101011111+1101100111+0110110110111";

    /// Test-side evaluator for disjunctive sums by direct game-tree search,
    /// independent of the value-addition shortcut in production.
    struct SumSearch {
        memo: HashMap<Vec<CoinString>, Dyadic>,
    }

    impl SumSearch {
        fn new() -> Self {
            SumSearch {
                memo: HashMap::new(),
            }
        }

        fn key(components: &[CoinString]) -> Vec<CoinString> {
            let mut key: Vec<CoinString> = components
                .iter()
                .filter(|c| !c.is_empty())
                .cloned()
                .collect();
            key.sort();
            key
        }

        fn value(&mut self, components: &[CoinString]) -> Dyadic {
            let key = Self::key(components);
            if let Some(v) = self.memo.get(&key) {
                return v.clone();
            }
            let mut best_left: Option<Dyadic> = None;
            let mut best_right: Option<Dyadic> = None;
            for (i, component) in key.iter().enumerate() {
                let mut rest = key.clone();
                rest.remove(i);
                for (_, option) in component.left_options() {
                    let mut next = rest.clone();
                    next.push(option);
                    let v = self.value(&next);
                    best_left = Some(best_left.map_or(v.clone(), |b| b.max(v)));
                }
                for (_, option) in component.right_options() {
                    let mut next = rest.clone();
                    next.push(option);
                    let v = self.value(&next);
                    best_right = Some(best_right.map_or(v.clone(), |b| b.min(v)));
                }
            }
            let value = simplest_in(&Interval::new(best_left, best_right));
            self.memo.insert(key, value.clone());
            value
        }

        /// True when `mover` wins moving first, by pure win/loss search.
        fn mover_wins(&mut self, components: &[CoinString], mover: Player) -> bool {
            let key = Self::key(components);
            for (i, component) in key.iter().enumerate() {
                let mut rest = key.clone();
                rest.remove(i);
                for (_, option) in component.options(mover) {
                    let mut next = rest.clone();
                    next.push(option);
                    if !self.mover_wins(&next, mover.opponent()) {
                        return true;
                    }
                }
            }
            false
        }
    }

    #[test]
    fn sample_sum_value() {
        assert_eq!(sum(SAMPLE_SUM).value().unwrap(), dy(1, 16));
        assert_eq!(SumPosition::default().value().unwrap(), Dyadic::zero());
        assert_eq!(sum("1101100111").value().unwrap(), dy(3, 4));
    }

    #[test]
    fn sample_sum_outcomes() {
        let s = sum(SAMPLE_SUM);
        assert_eq!(s.outcome(Player::Left).unwrap(), Player::Left);
        assert_eq!(s.outcome(Player::Right).unwrap(), Player::Left);
        // zero total: the mover loses
        let zero = sum("01+11");
        assert_eq!(zero.value().unwrap(), Dyadic::zero());
        assert_eq!(zero.outcome(Player::Left).unwrap(), Player::Right);
        assert_eq!(zero.outcome(Player::Right).unwrap(), Player::Left);
    }

    #[test]
    fn sample_sum_winning_moves() {
        let s = sum(SAMPLE_SUM);
        let left = s.winning_moves(Player::Left).unwrap();
        assert_eq!(left.len(), 1);
        assert_eq!(left[0].component, 0);
        assert_eq!(left[0].result, CoinString::parse("01010111").unwrap());
        assert_eq!(left[0].total, Dyadic::zero());

        let right = s.winning_moves(Player::Right).unwrap();
        assert!(right.is_empty());
    }

    #[test]
    fn designated_moves_in_other_components_lose() {
        // Left's designated best moves in components 1 and 2 leave -1/16
        let s = sum(SAMPLE_SUM);
        for index in [1usize, 2] {
            let component = &s.components()[index];
            let mv = component.best_left_move().unwrap();
            let result = component.apply(mv).unwrap();
            let mut components = s.components().to_vec();
            components[index] = result;
            let total = SumPosition::new(components).value().unwrap();
            assert_eq!(total, dy(-1, 16), "component {index}");
        }
    }

    #[test]
    fn single_component_and_trivial_cases() {
        let s = sum("11");
        let wins = s.winning_moves(Player::Left).unwrap();
        assert_eq!(wins.len(), 1);
        assert_eq!(wins[0].mv, Move::new(Player::Left, 1, 2));
        assert_eq!(wins[0].result, CoinString::empty());
        assert_eq!(wins[0].total, Dyadic::zero());
        assert_eq!(sum("").value().unwrap(), Dyadic::zero());
    }

    #[test]
    fn tree_search_agrees_on_small_sums() {
        let mut search = SumSearch::new();
        // exhaustive over pairs of short components
        let shorts: Vec<CoinString> = CoinString::enumerate_normalized(5).collect();
        for a in &shorts {
            for b in &shorts {
                let s = SumPosition::new(vec![a.clone(), b.clone()]);
                assert_eq!(s.value().unwrap(), search.value(s.components()), "sum {s}");
            }
        }
        // sampled triples with one long component; three long components
        // would blow up the search's product state space
        let long: Vec<CoinString> = CoinString::enumerate_normalized(8).collect();
        let short: Vec<CoinString> = CoinString::enumerate_normalized(5).collect();
        let mut state = 7u64;
        let pick = |pool: &[CoinString], state: &mut u64| {
            *state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            pool[(*state >> 33) as usize % pool.len()].clone()
        };
        for _ in 0..40 {
            let s = SumPosition::new(vec![
                pick(&long, &mut state),
                pick(&short, &mut state),
                pick(&short, &mut state),
            ]);
            assert!(s.components().iter().all(|c| c.len() <= 8));
            assert_eq!(s.value().unwrap(), search.value(s.components()), "sum {s}");
        }
    }

    #[test]
    fn winning_moves_match_win_loss_search() {
        let mut search = SumSearch::new();
        let shorts: Vec<CoinString> = CoinString::enumerate_normalized(4).collect();
        for a in &shorts {
            for b in &shorts {
                let s = SumPosition::new(vec![a.clone(), b.clone()]);
                let total = s.value().unwrap();
                for mover in [Player::Left, Player::Right] {
                    let wins = s.winning_moves(mover).unwrap();
                    // nonempty exactly when the mover wins moving first
                    let mover_wins = match mover {
                        Player::Left => total.is_positive(),
                        Player::Right => total.is_negative(),
                    };
                    assert_eq!(!wins.is_empty(), mover_wins, "{s} / {mover}");
                    assert_eq!(
                        search.mover_wins(s.components(), mover),
                        mover_wins,
                        "{s} / {mover}"
                    );
                    // every reported move leaves a position the opponent
                    // loses moving first
                    for win in &wins {
                        let mut components = s.components().to_vec();
                        components[win.component] = win.result.clone();
                        assert!(
                            !search.mover_wins(&components, mover.opponent()),
                            "{s}: {:?} is not winning",
                            win.mv
                        );
                    }
                }
            }
        }
    }
}
