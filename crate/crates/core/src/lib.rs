//! Exact solver for a partizan coin-flipping game played on lines of coins.
//!
//! A position is a 0-1 string (heads = 0, tails = 1). Left moves by flipping
//! two tails coins to heads; Right flips a heads coin together with a tails
//! coin to its right. Coins after the last tails are deleted. Every position
//! is worth an exact dyadic rational, and the solver computes it three ways:
//!
//! * [`solver`] is the fast route: rewrite the string to a short fixpoint,
//!   peel off suffix layers, and fold them back as an iterated ordinal sum;
//! * [`oracle`] is brute force straight from the rules, memoized, used to
//!   verify everything the fast route claims;
//! * [`sums`] analyzes several lines played side by side, including the
//!   complete list of winning moves.
//!
//! The arithmetic substrate lives in [`numbers`]: exact dyadic rationals,
//! their sign expansions, and ordinal sums computed by concatenating sign
//! expansions (with the recursive definition kept as a cross-check).

pub mod checks;
pub mod numbers;
pub mod oracle;
pub mod position;
pub mod solver;
pub mod sums;

pub use checks::CheckReport;
pub use numbers::{ordinal_sum_by_definition, simplest_in, Dyadic, Interval, Sign, SignExpansion};
pub use oracle::{F1F2Report, Oracle, OracleError};
pub use position::{CoinString, Move, Outcome, Player, PositionError};
pub use solver::{BaseForm, Decomposition, NotReduced, ReductionRule, ReductionStep, TailShape};
pub use sums::{SumPosition, WinningMove};
