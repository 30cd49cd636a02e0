//! Exhaustive property suites behind the `verify` harness.
//!
//! Each check sweeps a bounded family of positions (or sign expansions) and
//! returns a [`CheckReport`] listing every counter-example found. The suites
//! restate, in executable form, the facts the solver relies on: moves shrink
//! the associated binary number, reductions preserve value, the suffix fold
//! identity, the closed base forms, the designated best moves, the order
//! relations, the outcome sign conditions, the F1/F2 closure, and the
//! agreement of the two ordinal-sum routes.

use std::fmt;

use crate::numbers::{ordinal_sum_by_definition, Dyadic, Sign, SignExpansion};
use crate::oracle::Oracle;
use crate::position::{CoinString, Outcome, Player};
use crate::solver;

/// Outcome of one exhaustive sweep.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: &'static str,
    /// Number of individual assertions evaluated.
    pub cases: u64,
    /// Human-readable descriptions of every failing case.
    pub failures: Vec<String>,
}

impl CheckReport {
    fn new(name: &'static str) -> Self {
        CheckReport {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} cases, {} failures",
            self.name,
            self.cases,
            self.failures.len()
        )?;
        for failure in self.failures.iter().take(5) {
            write!(f, "\n  {failure}")?;
        }
        if self.failures.len() > 5 {
            write!(f, "\n  ... and {} more", self.failures.len() - 5)?;
        }
        Ok(())
    }
}

/// All sign expansions of length `0..=max_len`.
fn all_expansions(max_len: usize) -> Vec<SignExpansion> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        for mask in 0u64..(1 << len) {
            out.push(
                (0..len)
                    .map(|i| {
                        if mask >> i & 1 == 1 {
                            Sign::Plus
                        } else {
                            Sign::Minus
                        }
                    })
                    .collect(),
            );
        }
    }
    out
}

/// All dyadics with a sign expansion of length `0..=max_len`.
fn all_short_dyadics(max_len: usize) -> Vec<Dyadic> {
    all_expansions(max_len)
        .iter()
        .map(Dyadic::from_sign_expansion)
        .collect()
}

/// All bit strings (not necessarily normalized) of length `0..=max_len`.
fn all_bit_strings(max_len: usize) -> Vec<Vec<bool>> {
    let mut out = vec![Vec::new()];
    for len in 1..=max_len {
        for mask in 0u64..(1 << len) {
            out.push((0..len).map(|i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

/// Every legal move strictly decreases the associated binary number.
pub fn binary_decrease(max_len: usize) -> CheckReport {
    let mut report = CheckReport::new("binary_decrease");
    for g in CoinString::enumerate_normalized(max_len) {
        let before = g.binary_number();
        for (mv, option) in g.left_options().into_iter().chain(g.right_options()) {
            report.case(option.binary_number() < before, || {
                format!("{g}: {mv} -> {option} does not decrease the binary number")
            });
        }
    }
    report
}

/// Each reduction step preserves the oracle value and removes exactly two
/// tails coins, and the fixpoint admits no further rewrite.
pub fn reduction_steps(max_len: usize, oracle: &mut Oracle) -> CheckReport {
    let mut report = CheckReport::new("reduction_steps");
    for g in CoinString::enumerate_normalized(max_len) {
        let (reduced, steps) = solver::reduce(&g);
        for step in &steps {
            let before = oracle.value(&step.before).expect("oracle");
            let after = oracle.value(&step.after).expect("oracle");
            report.case(before == after, || {
                format!("{step}: value changed from {before} to {after}")
            });
            report.case(step.before.ones() == step.after.ones() + 2, || {
                format!("{step}: did not remove exactly two tails")
            });
        }
        let (again, more) = solver::reduce(&reduced);
        report.case(more.is_empty() && again == reduced, || {
            format!("{g}: fixpoint {reduced} still rewrites")
        });
    }
    report
}

/// The suffix fold identity: appending `0^p 1 0^q 1` after a position ending
/// in a 0-preceded tails run of length one or two multiplies in the
/// ordinal-sum exponent `1/2^(2p+q-1)`. Swept over every prefix and gap
/// split.
///
/// Runs of one or two are the only shapes the decomposition strips: the
/// suffix carries exactly two tails, so a longer run is always reducible at
/// that run, and the identity genuinely fails there (`0111101` is `1/8`
/// while `0111 : 1` is `1`).
pub fn suffix_fold(max_len: usize) -> CheckReport {
    let mut report = CheckReport::new("suffix_fold");
    for alpha in all_bit_strings(max_len.saturating_sub(5)) {
        for run in 1..=2.min(max_len.saturating_sub(alpha.len() + 4)) {
            let budget = max_len - alpha.len() - run - 3;
            for zeros_before in 0..=budget {
                for zeros_between in 0..=(budget - zeros_before) {
                    if zeros_before + zeros_between == 0 {
                        continue;
                    }
                    let mut prefix = alpha.clone();
                    prefix.push(false);
                    prefix.extend(std::iter::repeat_n(true, run));
                    let mut whole = prefix.clone();
                    whole.extend(std::iter::repeat_n(false, zeros_before));
                    whole.push(true);
                    whole.extend(std::iter::repeat_n(false, zeros_between));
                    whole.push(true);

                    let whole = CoinString::from_bits(whole);
                    let prefix = CoinString::from_bits(prefix);
                    let exponent =
                        Dyadic::half_power((2 * zeros_before + zeros_between - 1) as u32);
                    let folded = solver::value(&prefix)
                        .expect("reduce precedes decompose")
                        .ordinal_sum(&exponent);
                    let direct = solver::value(&whole).expect("reduce precedes decompose");
                    report.case(direct == folded, || {
                        format!("{whole}: value {direct} != {prefix} : {exponent} = {folded}")
                    });
                }
            }
        }
    }
    report
}

/// Closed forms of the base positions match the oracle: `0^r 1` is `-r` and
/// `1^a 0^p 1 0^q 1` is `floor(a/2) + 1/2^(2p+q)`.
pub fn closed_forms(max_len: usize, oracle: &mut Oracle) -> CheckReport {
    let mut report = CheckReport::new("closed_forms");
    for zeros in 0..max_len {
        let mut bits = vec![false; zeros];
        bits.push(true);
        let g = CoinString::from_bits(bits);
        let expected = Dyadic::from_int(-(zeros as i64));
        let actual = oracle.value(&g).expect("oracle");
        report.case(actual == expected, || {
            format!("{g}: oracle {actual} != closed form {expected}")
        });
    }
    for ones in 0..=max_len.saturating_sub(2) {
        for zeros_before in 0..=max_len - ones - 2 {
            for zeros_between in 0..=max_len - ones - zeros_before - 2 {
                let mut bits = vec![true; ones];
                bits.extend(std::iter::repeat_n(false, zeros_before));
                bits.push(true);
                bits.extend(std::iter::repeat_n(false, zeros_between));
                bits.push(true);
                let g = CoinString::from_bits(bits);
                let expected = Dyadic::from_int((ones / 2) as i64)
                    + Dyadic::half_power((2 * zeros_before + zeros_between) as u32);
                let actual = oracle.value(&g).expect("oracle");
                report.case(actual == expected, || {
                    format!("{g}: oracle {actual} != closed form {expected}")
                });
            }
        }
    }
    report
}

/// The designated best moves attain the oracle maximum (Left) and minimum
/// (Right) over all options. Other moves may tie; the designated one is
/// never beaten.
pub fn best_moves(max_len: usize, oracle: &mut Oracle) -> CheckReport {
    let mut report = CheckReport::new("best_moves");
    for g in CoinString::enumerate_normalized(max_len) {
        if g.ones() >= 2 {
            let designated = g.best_left_move().expect("two tails");
            let best = oracle.best_moves(&g, Player::Left).expect("has moves");
            report.case(best.contains(&designated), || {
                format!("{g}: designated Left move {designated} is not optimal")
            });
        }
        if g.bits().contains(&false) {
            let designated = g.best_right_move().expect("has heads");
            let best = oracle.best_moves(&g, Player::Right).expect("has moves");
            report.case(best.contains(&designated), || {
                format!("{g}: designated Right move {designated} is not optimal")
            });
        }
    }
    report
}

/// Order relations: moving a tails coin leftward over a heads coin increases
/// the value strictly, and appending `1 0^r 1` to any string increases its
/// value strictly.
pub fn move_order(max_len: usize) -> CheckReport {
    let mut report = CheckReport::new("move_order");
    for g in CoinString::enumerate_normalized(max_len) {
        let value = solver::value(&g).expect("solver");
        let bits = g.bits();
        for i in 0..bits.len() {
            if !bits[i] {
                continue;
            }
            for j in i + 1..bits.len() {
                if bits[j] {
                    continue;
                }
                let mut swapped = bits.to_vec();
                swapped[i] = false;
                swapped[j] = true;
                let swapped = CoinString::from_bits(swapped);
                let swapped_value = solver::value(&swapped).expect("solver");
                report.case(value > swapped_value, || {
                    format!("{g} ({value}) should exceed {swapped} ({swapped_value})")
                });
            }
        }
    }
    for beta in all_bit_strings(max_len.saturating_sub(2)) {
        for gap in 0..=max_len - beta.len() - 2 {
            let base = CoinString::from_bits(beta.iter().copied());
            let mut extended = beta.clone();
            extended.push(true);
            extended.extend(std::iter::repeat_n(false, gap));
            extended.push(true);
            let extended = CoinString::from_bits(extended);
            let base_value = solver::value(&base).expect("solver");
            let extended_value = solver::value(&extended).expect("solver");
            report.case(extended_value > base_value, || {
                format!("{extended} ({extended_value}) should exceed {base} ({base_value})")
            });
        }
    }
    report
}

/// Every position with options on both sides sits strictly between its best
/// Left option and its best Right option.
pub fn option_sandwich(max_len: usize) -> CheckReport {
    let mut report = CheckReport::new("option_sandwich");
    for g in CoinString::enumerate_normalized(max_len) {
        let lefts = g.left_options();
        let rights = g.right_options();
        if lefts.is_empty() || rights.is_empty() {
            continue;
        }
        let value = solver::value(&g).expect("solver");
        let best_left = lefts
            .iter()
            .map(|(_, o)| solver::value(o).expect("solver"))
            .max()
            .expect("nonempty");
        let best_right = rights
            .iter()
            .map(|(_, o)| solver::value(o).expect("solver"))
            .min()
            .expect("nonempty");
        report.case(best_left < value && value < best_right, || {
            format!("{g}: not {best_left} < {value} < {best_right}")
        });
    }
    report
}

/// Sign conditions behind the quick outcome rules: an even nonzero number of
/// tails forces a positive value, and so does a leading tails with at least
/// two tails overall.
pub fn outcome_signs(max_len: usize) -> CheckReport {
    let mut report = CheckReport::new("outcome_signs");
    for g in CoinString::enumerate_normalized(max_len) {
        let ones = g.ones();
        let claimed = (ones >= 2 && ones.is_multiple_of(2)) || (g.bits()[0] && ones >= 2);
        if !claimed {
            continue;
        }
        let value = solver::value(&g).expect("solver");
        report.case(value.is_positive(), || {
            format!("{g}: value {value} should be positive")
        });
    }
    report
}

/// `quick_outcome` never contradicts the oracle sign.
pub fn quick_outcome_consistency(max_len: usize, oracle: &mut Oracle) -> CheckReport {
    let mut report = CheckReport::new("quick_outcome_consistency");
    for g in CoinString::enumerate_normalized(max_len) {
        let value = oracle.value(&g).expect("oracle");
        let ok = match g.quick_outcome() {
            Outcome::LeftWins => value.is_positive(),
            Outcome::RightWins => value.is_negative(),
            Outcome::PreviousWins => value.is_zero(),
            Outcome::Unknown => true,
        };
        report.case(ok, || {
            format!(
                "{g}: quick outcome {:?} but value {value}",
                g.quick_outcome()
            )
        });
    }
    report
}

/// The F1-or-F2 closure holds for every option pair of every position.
pub fn f1_f2(max_len: usize, oracle: &mut Oracle) -> CheckReport {
    let mut report = CheckReport::new("f1_f2");
    for g in CoinString::enumerate_normalized(max_len) {
        let f1f2 = oracle.check_f1_f2(&g).expect("oracle");
        report.cases += f1f2.pairs_checked as u64;
        for (gl, gr) in &f1f2.failures {
            report.failures.push(format!(
                "{g}: option pair ({gl}, {gr}) satisfies neither F1 nor F2"
            ));
        }
    }
    report
}

/// The concatenation route and the recursive definition of the ordinal sum
/// agree on all pairs of short numbers.
pub fn ordinal_sum_equivalence(max_expansion_len: usize) -> CheckReport {
    let mut report = CheckReport::new("ordinal_sum_equivalence");
    let values = all_short_dyadics(max_expansion_len);
    for base in &values {
        for exponent in &values {
            let fast = base.ordinal_sum(exponent);
            let by_definition = ordinal_sum_by_definition(base, exponent);
            report.case(fast == by_definition, || {
                format!("{base} : {exponent} = {fast} by concatenation but {by_definition} by definition")
            });
        }
    }
    report
}

/// Decoding then re-encoding a sign expansion is the identity.
pub fn sign_round_trip(max_expansion_len: usize) -> CheckReport {
    let mut report = CheckReport::new("sign_round_trip");
    for expansion in all_expansions(max_expansion_len) {
        let value = Dyadic::from_sign_expansion(&expansion);
        let round = value.to_sign_expansion();
        report.case(round == expansion, || {
            format!("{expansion} decodes to {value} which re-encodes to {round}")
        });
    }
    report
}

/// A positive exponent strictly grows an ordinal sum; a zero exponent leaves
/// the base unchanged.
pub fn ordinal_sum_growth(max_expansion_len: usize) -> CheckReport {
    let mut report = CheckReport::new("ordinal_sum_growth");
    let values = all_short_dyadics(max_expansion_len);
    for base in &values {
        report.case(base.ordinal_sum(&Dyadic::zero()) == *base, || {
            format!("{base} : 0 != {base}")
        });
        for exponent in values.iter().filter(|e| e.is_positive()) {
            let sum = base.ordinal_sum(exponent);
            report.case(sum > *base, || {
                format!("{base} : {exponent} = {sum} does not exceed the base")
            });
        }
    }
    report
}

/// Option ordering around an ordinal sum of non-integers:
/// `G^L < G:H^L < G:H < G:H^R < G^R`.
pub fn ordinal_sum_sandwich(max_expansion_len: usize) -> CheckReport {
    let mut report = CheckReport::new("ordinal_sum_sandwich");
    let values = all_short_dyadics(max_expansion_len);
    for base in values.iter().filter(|v| !v.is_integer()) {
        let (base_left, base_right) = base.canonical_options();
        let (base_left, base_right) = (
            base_left.expect("non-integer"),
            base_right.expect("non-integer"),
        );
        for exponent in values.iter().filter(|v| !v.is_integer()) {
            let (exp_left, exp_right) = exponent.canonical_options();
            let via_left = base.ordinal_sum(&exp_left.expect("non-integer"));
            let via_right = base.ordinal_sum(&exp_right.expect("non-integer"));
            let sum = base.ordinal_sum(exponent);
            report.case(
                base_left < via_left && via_left < sum && sum < via_right && via_right < base_right,
                || {
                    format!(
                        "{base} : {exponent}: not {base_left} < {via_left} < {sum} < {via_right} < {base_right}"
                    )
                },
            );
        }
    }
    report
}

/// The central cross-check: the fast solver value equals the oracle value on
/// every normalized position up to `max_len`.
pub fn value_equivalence(max_len: usize, oracle: &mut Oracle) -> CheckReport {
    let mut report = CheckReport::new("value_equivalence");
    for g in CoinString::enumerate_normalized(max_len) {
        match (solver::value(&g), oracle.value(&g)) {
            (Ok(fast), Ok(slow)) => report.case(fast == slow, || {
                format!("{g}: solver {fast} != oracle {slow}")
            }),
            (fast, slow) => report.case(false, || format!("{g}: solver {fast:?}, oracle {slow:?}")),
        }
    }
    report
}

/// Decomposing the reduction fixpoint and reassembling it is the identity.
pub fn decomposition_round_trip(max_len: usize) -> CheckReport {
    let mut report = CheckReport::new("decomposition_round_trip");
    for g in CoinString::enumerate_normalized(max_len) {
        let (reduced, _) = solver::reduce(&g);
        match solver::decompose(&reduced) {
            Ok(d) => report.case(d.reconstruct() == reduced, || {
                format!("{g}: {d} reassembles to {} not {reduced}", d.reconstruct())
            }),
            Err(e) => report.case(false, || format!("{g}: decompose failed: {e}")),
        }
    }
    report
}

/// The standard property battery at the sizes used by `verify --props`.
pub fn standard_suite(max_len: usize, oracle: &mut Oracle) -> Vec<CheckReport> {
    let shorter = max_len.saturating_sub(2);
    vec![
        binary_decrease(shorter),
        reduction_steps(max_len, oracle),
        suffix_fold(max_len),
        closed_forms(max_len, oracle),
        best_moves(shorter, oracle),
        move_order(shorter),
        option_sandwich(shorter),
        outcome_signs(max_len),
        quick_outcome_consistency(shorter, oracle),
        f1_f2(max_len.min(10), oracle),
        ordinal_sum_equivalence(6),
        sign_round_trip(12),
        ordinal_sum_growth(6),
        ordinal_sum_sandwich(6),
        decomposition_round_trip(shorter),
    ]
}
