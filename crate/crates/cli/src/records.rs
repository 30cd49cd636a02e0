//! One-line JSON records emitted by `--json` mode.
//!
//! Every analysis subcommand prints one record per line so output can be
//! streamed and filtered; verification runs can emit very large numbers of
//! lines. Value fields carry the exact fraction (`num` over `2^den_exp`) and
//! an exact decimal rendering, so no floating point appears anywhere.

use serde::{Deserialize, Serialize};

use flipcoins::{solver, CoinString, Dyadic, NotReduced, SumPosition, WinningMove};

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct ValueJson {
    /// Exact numerator, as a decimal string (arbitrary precision).
    pub num: String,
    /// The denominator is `2^den_exp`.
    pub den_exp: u32,
    /// Exact decimal rendering.
    pub decimal: String,
}

impl ValueJson {
    pub fn from_dyadic(value: &Dyadic) -> Self {
        ValueJson {
            num: value.numerator().to_string(),
            den_exp: value.exponent(),
            decimal: value.decimal_string(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct AdviceJson {
    pub component: usize,
    pub player: String,
    /// The 1-based coin indices the move flips.
    #[serde(rename = "move")]
    pub coins: (usize, usize),
    /// The component after the move.
    pub result: String,
    /// The total value left behind.
    pub total: ValueJson,
}

impl AdviceJson {
    pub fn from_winning_move(win: &WinningMove) -> Self {
        AdviceJson {
            component: win.component,
            player: win.mv.player.to_string(),
            coins: (win.mv.low, win.mv.high),
            result: win.result.to_string(),
            total: ValueJson::from_dyadic(&win.total),
        }
    }
}

/// The one-per-line analysis record shared by the evaluation subcommands.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct Record {
    pub position: String,
    pub normalized: String,
    pub value: ValueJson,
    pub sign_expansion: String,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trace: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decomposition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub advice: Option<Vec<AdviceJson>>,
}

fn outcome_token(value: &Dyadic) -> String {
    if value.is_positive() {
        "LeftWins"
    } else if value.is_negative() {
        "RightWins"
    } else {
        "PreviousWins"
    }
    .to_string()
}

impl Record {
    /// Base record for a single position; optional fields start empty.
    pub fn for_position(input: &str, position: &CoinString) -> Result<Record, NotReduced> {
        let value = solver::value(position)?;
        Ok(Record {
            position: input.to_string(),
            normalized: position.to_string(),
            value: ValueJson::from_dyadic(&value),
            sign_expansion: value.to_sign_expansion().to_string(),
            outcome: outcome_token(&value),
            trace: None,
            decomposition: None,
            advice: None,
        })
    }

    /// Base record for a sum of positions.
    pub fn for_sum(input: &str, sum: &SumPosition) -> Result<Record, NotReduced> {
        let value = sum.value()?;
        Ok(Record {
            position: input.to_string(),
            normalized: sum.to_string(),
            value: ValueJson::from_dyadic(&value),
            sign_expansion: value.to_sign_expansion().to_string(),
            outcome: outcome_token(&value),
            trace: None,
            decomposition: None,
            advice: None,
        })
    }
}
