//! Exact dyadic-rational arithmetic, the simplicity rule, sign expansions,
//! and ordinal sums of numbers.
//!
//! Every game value produced by this crate is a [`Dyadic`]: an exact rational
//! `numerator / 2^exponent`. Values are located in the number line by their
//! birth path, a finite [`SignExpansion`], and the ordinal sum of two numbers
//! is computed by concatenating their sign expansions. The recursive
//! definition of the ordinal sum is kept as [`ordinal_sum_by_definition`] so
//! the two routes can be checked against each other.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact dyadic rational `numerator / 2^exponent`.
///
/// Canonical form: `exponent == 0`, or `numerator` is odd. All constructors
/// and operations maintain canonical form, so structural equality is value
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numerator: BigInt,
    exponent: u32,
}

impl Dyadic {
    /// Builds `numerator / 2^exponent`, reducing to canonical form.
    pub fn new(numerator: BigInt, exponent: u32) -> Self {
        let mut d = Dyadic {
            numerator,
            exponent,
        };
        d.canonicalize();
        d
    }

    fn canonicalize(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        let trailing = self
            .numerator
            .trailing_zeros()
            .expect("nonzero integer has trailing_zeros");
        let shift = trailing.min(u64::from(self.exponent)) as u32;
        if shift > 0 {
            self.numerator = &self.numerator >> shift;
            self.exponent -= shift;
        }
    }

    pub fn zero() -> Self {
        Dyadic::from_int(0)
    }

    pub fn one() -> Self {
        Dyadic::from_int(1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic {
            numerator: n.into(),
            exponent: 0,
        }
    }

    /// `1 / 2^k`.
    pub fn half_power(k: u32) -> Self {
        Dyadic {
            numerator: BigInt::one(),
            exponent: k,
        }
    }

    /// Builds `numerator / denominator` where `denominator` is a power of two.
    ///
    /// Panics if it is not; this is a convenience for literals like
    /// `Dyadic::ratio(-11, 16)`.
    pub fn ratio(numerator: i64, denominator: u64) -> Self {
        assert!(
            denominator.is_power_of_two(),
            "denominator {denominator} is not a power of two"
        );
        Dyadic::new(BigInt::from(numerator), denominator.trailing_zeros())
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    /// The denominator is `2^exponent`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exponent == 0
    }

    pub fn is_positive(&self) -> bool {
        self.numerator.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.numerator.is_negative()
    }

    /// Greatest integer `<= self`. BigInt's arithmetic shift already rounds
    /// toward negative infinity.
    pub fn floor(&self) -> BigInt {
        &self.numerator >> self.exponent
    }

    fn abs(&self) -> Dyadic {
        Dyadic {
            numerator: self.numerator.abs(),
            exponent: self.exponent,
        }
    }

    /// `self * 2^k`, exact.
    fn times_pow2(&self, k: u32) -> Dyadic {
        Dyadic::new(&self.numerator << k, self.exponent)
    }

    /// Canonical-form options of a number: the empty pair for 0, `{n-1 | }`
    /// for a positive integer `n`, `{ | n+1}` for a negative integer, and the
    /// two neighbours at the next-coarser denominator for a non-integer.
    pub fn canonical_options(&self) -> (Option<Dyadic>, Option<Dyadic>) {
        if self.is_zero() {
            (None, None)
        } else if self.is_integer() {
            if self.is_positive() {
                (Some(Dyadic::from_int(&self.numerator - 1)), None)
            } else {
                (None, Some(Dyadic::from_int(&self.numerator + 1)))
            }
        } else {
            let left = Dyadic::new(&self.numerator - 1, self.exponent);
            let right = Dyadic::new(&self.numerator + 1, self.exponent);
            (Some(left), Some(right))
        }
    }

    /// Encodes the birth path of the number: walk the simplicity tree from
    /// the unbounded interval, emitting `+` when the target is above the
    /// simplest value so far and `-` when it is below, until the walk lands
    /// exactly on the number.
    pub fn to_sign_expansion(&self) -> SignExpansion {
        if self.is_zero() {
            return SignExpansion::default();
        }
        let lead = if self.is_positive() {
            Sign::Plus
        } else {
            Sign::Minus
        };
        let magnitude = self.abs();
        let mut signs = Vec::new();
        let whole = magnitude.floor();
        if magnitude.is_integer() {
            let n = u64::try_from(&whole).expect("integer magnitude fits u64");
            signs.extend(std::iter::repeat_n(lead, n as usize));
            return SignExpansion::new(signs);
        }
        // integer phase overshoots by one step, then turns around
        let leading = u64::try_from(&whole).expect("integer part fits u64") + 1;
        signs.extend(std::iter::repeat_n(lead, leading as usize));
        signs.push(lead.flipped());
        // binary-refinement phase: the remaining branch choices are the bits
        // of the fractional numerator below its leading (implicit) bit; the
        // final 1 bit is where the walk stops
        let frac = &magnitude.numerator - (whole << magnitude.exponent);
        for bit in (1..u64::from(magnitude.exponent)).rev() {
            signs.push(if frac.bit(bit) { lead } else { lead.flipped() });
        }
        SignExpansion::new(signs)
    }

    /// Decodes a birth path; the exact inverse of [`Dyadic::to_sign_expansion`].
    pub fn from_sign_expansion(expansion: &SignExpansion) -> Dyadic {
        let signs = expansion.signs();
        let Some(&lead) = signs.first() else {
            return Dyadic::zero();
        };
        let run = signs.iter().take_while(|&&s| s == lead).count();
        let tail = signs.len() - run;
        let mut numerator = BigInt::from(run) << tail;
        for (offset, &sign) in signs[run..].iter().enumerate() {
            let step = BigInt::one() << (tail - 1 - offset);
            if sign == lead {
                numerator += step;
            } else {
                numerator -= step;
            }
        }
        let magnitude = Dyadic::new(numerator, tail as u32);
        match lead {
            Sign::Plus => magnitude,
            Sign::Minus => -magnitude,
        }
    }

    /// The ordinal sum `self : exponent`: the compound number in which any
    /// move in the base `self` annihilates `exponent`. For numbers this is
    /// the concatenation of the two sign expansions.
    pub fn ordinal_sum(&self, exponent: &Dyadic) -> Dyadic {
        let combined = self
            .to_sign_expansion()
            .concat(&exponent.to_sign_expansion());
        Dyadic::from_sign_expansion(&combined)
    }

    /// Exact decimal rendering; always finite because the denominator is a
    /// power of two.
    pub fn decimal_string(&self) -> String {
        if self.exponent == 0 {
            return self.numerator.to_string();
        }
        let magnitude = self.numerator.abs();
        let whole = &magnitude >> self.exponent;
        let frac = &magnitude - (&whole << self.exponent);
        // frac / 2^e == frac * 5^e / 10^e
        let digits = frac * BigInt::from(5).pow(self.exponent);
        let sign = if self.numerator.is_negative() {
            "-"
        } else {
            ""
        };
        format!(
            "{sign}{whole}.{digits:0>width$}",
            width = self.exponent as usize
        )
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, BigInt::one() << self.exponent)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({self})")
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let exponent = self.exponent.max(other.exponent);
        let lhs = &self.numerator << (exponent - self.exponent);
        let rhs = &other.numerator << (exponent - other.exponent);
        lhs.cmp(&rhs)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        let exponent = self.exponent.max(rhs.exponent);
        let lhs = &self.numerator << (exponent - self.exponent);
        let rhs = &rhs.numerator << (exponent - rhs.exponent);
        Dyadic::new(lhs + rhs, exponent)
    }
}

impl Add for Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: -&self.numerator,
            exponent: self.exponent,
        }
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: -self.numerator,
            exponent: self.exponent,
        }
    }
}

/// One branch choice in a surreal birth path.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A finite `+`/`-` sequence: the birth path of a dyadic number.
///
/// Every finite sequence is valid, and the encoding is a bijection with
/// [`Dyadic`]. Concatenation realises the ordinal sum of numbers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SignExpansion {
    signs: Vec<Sign>,
}

impl SignExpansion {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignExpansion { signs }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn push(&mut self, sign: Sign) {
        self.signs.push(sign);
    }

    pub fn concat(&self, tail: &SignExpansion) -> SignExpansion {
        let mut signs = Vec::with_capacity(self.len() + tail.len());
        signs.extend_from_slice(&self.signs);
        signs.extend_from_slice(&tail.signs);
        SignExpansion { signs }
    }
}

impl FromIterator<Sign> for SignExpansion {
    fn from_iter<I: IntoIterator<Item = Sign>>(iter: I) -> Self {
        SignExpansion {
            signs: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for SignExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for sign in &self.signs {
            write!(f, "{sign}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignExpansion(\"{self}\")")
    }
}

/// Error from parsing a sign expansion.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid sign character {0:?}: expected '+' or '-'")]
pub struct InvalidSign(pub char);

impl FromStr for SignExpansion {
    type Err = InvalidSign;

    /// Accepts `+`, `-` and the typographic minus `−`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self, InvalidSign> {
        let mut signs = Vec::new();
        for ch in s.chars() {
            match ch {
                '+' => signs.push(Sign::Plus),
                '-' | '−' => signs.push(Sign::Minus),
                c if c.is_whitespace() => {}
                c => return Err(InvalidSign(c)),
            }
        }
        Ok(SignExpansion { signs })
    }
}

/// An open interval of dyadics; an absent bound means unbounded on that side.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    lower: Option<Dyadic>,
    upper: Option<Dyadic>,
}

impl Interval {
    /// Panics if both bounds are present and `lower >= upper`.
    pub fn new(lower: Option<Dyadic>, upper: Option<Dyadic>) -> Self {
        if let (Some(lo), Some(hi)) = (&lower, &upper) {
            assert!(lo < hi, "empty interval: {lo} >= {hi}");
        }
        Interval { lower, upper }
    }

    pub fn unbounded() -> Self {
        Interval {
            lower: None,
            upper: None,
        }
    }

    pub fn between(lower: Dyadic, upper: Dyadic) -> Self {
        Interval::new(Some(lower), Some(upper))
    }

    pub fn above(lower: Dyadic) -> Self {
        Interval::new(Some(lower), None)
    }

    pub fn below(upper: Dyadic) -> Self {
        Interval::new(None, Some(upper))
    }

    pub fn lower(&self) -> Option<&Dyadic> {
        self.lower.as_ref()
    }

    pub fn upper(&self) -> Option<&Dyadic> {
        self.upper.as_ref()
    }

    /// Strict containment.
    pub fn contains(&self, x: &Dyadic) -> bool {
        self.lower.as_ref().is_none_or(|lo| lo < x) && self.upper.as_ref().is_none_or(|hi| x < hi)
    }
}

/// Least integer strictly above `x`.
fn least_int_above(x: &Dyadic) -> BigInt {
    x.floor() + 1
}

/// Greatest integer strictly below `x`.
fn greatest_int_below(x: &Dyadic) -> BigInt {
    if x.is_integer() {
        x.numerator() - 1
    } else {
        x.floor()
    }
}

/// The integer of smallest magnitude strictly inside the interval, if any.
/// Returns 0 whenever 0 is strictly inside; the smallest-magnitude integer on
/// one side of zero is otherwise unique.
fn smallest_magnitude_integer(interval: &Interval) -> Option<BigInt> {
    let zero = Dyadic::zero();
    match (interval.lower(), interval.upper()) {
        (None, None) => Some(BigInt::zero()),
        (Some(lo), None) => {
            if *lo < zero {
                Some(BigInt::zero())
            } else {
                Some(least_int_above(lo))
            }
        }
        (None, Some(hi)) => {
            if *hi > zero {
                Some(BigInt::zero())
            } else {
                Some(greatest_int_below(hi))
            }
        }
        (Some(lo), Some(hi)) => {
            if *lo < zero && *hi > zero {
                Some(BigInt::zero())
            } else if *lo >= zero {
                let candidate = least_int_above(lo);
                (Dyadic::from_int(candidate.clone()) < *hi).then_some(candidate)
            } else {
                let candidate = greatest_int_below(hi);
                (Dyadic::from_int(candidate.clone()) > *lo).then_some(candidate)
            }
        }
    }
}

/// The simplest number strictly inside the interval: the integer closest to
/// zero if one fits (or a bound is absent), otherwise the unique `p/2^q` with
/// minimal `q >= 1` and odd `p`. Minimality is found by scanning
/// `q = 1, 2, ...`; at the first `q` that admits an integer, exactly one does
/// and it is odd.
pub fn simplest_in(interval: &Interval) -> Dyadic {
    if let Some(n) = smallest_magnitude_integer(interval) {
        return Dyadic::from_int(n);
    }
    // both bounds present and no integer strictly between them
    let lower = interval.lower().expect("bounded below");
    let upper = interval.upper().expect("bounded above");
    for exponent in 1.. {
        let scaled_lower = lower.times_pow2(exponent);
        let scaled_upper = upper.times_pow2(exponent);
        let candidate = least_int_above(&scaled_lower);
        if Dyadic::from_int(candidate.clone()) < scaled_upper {
            debug_assert!(candidate.bit(0), "minimal-denominator numerator is odd");
            return Dyadic::new(candidate, exponent);
        }
    }
    unreachable!("a nonempty open interval contains a dyadic")
}

/// The ordinal sum evaluated straight from its recursive definition over
/// canonical options:
/// `G:H = { G^L, G:H^L | G^R, G:H^R }`, resolved with the simplicity rule.
///
/// This is the independent cross-check for [`Dyadic::ordinal_sum`]; it is
/// exponentially slower and exists to keep the concatenation route honest.
pub fn ordinal_sum_by_definition(base: &Dyadic, exponent: &Dyadic) -> Dyadic {
    let (base_left, base_right) = base.canonical_options();
    let (exp_left, exp_right) = exponent.canonical_options();

    let mut left_bound = base_left;
    if let Some(el) = exp_left {
        let via_exponent = ordinal_sum_by_definition(base, &el);
        left_bound = Some(match left_bound {
            Some(bl) => bl.max(via_exponent),
            None => via_exponent,
        });
    }

    let mut right_bound = base_right;
    if let Some(er) = exp_right {
        let via_exponent = ordinal_sum_by_definition(base, &er);
        right_bound = Some(match right_bound {
            Some(br) => br.min(via_exponent),
            None => via_exponent,
        });
    }

    simplest_in(&Interval::new(left_bound, right_bound))
}
