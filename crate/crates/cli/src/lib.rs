//! Command-line front end: parsing, evaluation, traces, advice, and the
//! exhaustive verification harness.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid position or expression,
//! 3 internal invariant violation (a mismatch against the oracle, a number
//! violation, or a decomposition of an unreduced string; none of these
//! should ever happen).

pub mod records;
pub mod selftest;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use flipcoins::checks;
use flipcoins::{
    solver, CoinString, Dyadic, NotReduced, Oracle, Player, PositionError, SumPosition,
};
use records::{AdviceJson, Record, ValueJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser)]
#[command(
    name = "flipcoins",
    about = "Exact solver for the partizan coin-flipping game",
    disable_help_subcommand = true
)]
struct Cli {
    /// Emit one JSON record per line instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

fn parse_player(text: &str) -> Result<Player, String> {
    match text.to_ascii_lowercase().as_str() {
        "l" | "left" => Ok(Player::Left),
        "r" | "right" => Ok(Player::Right),
        other => Err(format!("expected L or R, got {other:?}")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a position: exact value, sign expansion, and outcome.
    Value { position: String },
    /// Rewrite a position to its reduction fixpoint.
    Reduce {
        position: String,
        /// Print every rewrite step.
        #[arg(long)]
        trace: bool,
    },
    /// Show the suffix decomposition and the ordinal-sum fold.
    Decompose { position: String },
    /// List every option of both players with resulting values.
    Moves { position: String },
    /// The designated best move for one player.
    Best {
        position: String,
        #[arg(long, value_parser = parse_player)]
        player: Player,
    },
    /// Total value of a sum of positions and the winner for either mover.
    Sum { expression: String },
    /// Complete winning-move list for one player in a sum of positions.
    Advise {
        expression: String,
        #[arg(long, value_parser = parse_player)]
        player: Player,
    },
    /// Compare the fast solver against the brute-force oracle on every
    /// position up to a length, optionally with the property suites.
    Verify {
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        /// Also check the F1/F2 closure properties on every position.
        #[arg(long)]
        f1f2: bool,
        /// Also run the exhaustive property suites.
        #[arg(long)]
        props: bool,
    },
    /// Re-run the built-in golden examples.
    Selftest,
}

enum Failure {
    Invalid(String),
    Internal(String),
    Io(io::Error),
}

impl Failure {
    fn report(&self) -> i32 {
        match self {
            Failure::Invalid(msg) => {
                eprintln!("error: {msg}");
                EXIT_INVALID
            }
            Failure::Internal(msg) => {
                eprintln!("internal error: {msg}");
                EXIT_INTERNAL
            }
            Failure::Io(err) => {
                eprintln!("error: {err}");
                EXIT_USAGE
            }
        }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::Io(err)
    }
}

impl From<PositionError> for Failure {
    fn from(err: PositionError) -> Self {
        Failure::Invalid(err.to_string())
    }
}

impl From<NotReduced> for Failure {
    fn from(err: NotReduced) -> Self {
        Failure::Internal(err.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(err: serde_json::Error) -> Self {
        Failure::Internal(format!("record serialization failed: {err}"))
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// normal output to `out` and diagnostics to stderr. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // help and version requests are successes, not usage errors
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{err}");
                    EXIT_OK
                }
                _ => {
                    eprintln!("{err}");
                    EXIT_USAGE
                }
            };
        }
    };
    let json = cli.json;
    let result = match cli.command {
        Command::Value { position } => cmd_value(&position, json, out),
        Command::Reduce { position, trace } => cmd_reduce(&position, trace, json, out),
        Command::Decompose { position } => cmd_decompose(&position, json, out),
        Command::Moves { position } => cmd_moves(&position, json, out),
        Command::Best { position, player } => cmd_best(&position, player, json, out),
        Command::Sum { expression } => cmd_sum(&expression, json, out),
        Command::Advise { expression, player } => cmd_advise(&expression, player, json, out),
        Command::Verify {
            max_len,
            f1f2,
            props,
        } => cmd_verify(max_len, f1f2, props, json, out),
        Command::Selftest => cmd_selftest(json, out),
    };
    match result {
        Ok(code) => code,
        Err(failure) => failure.report(),
    }
}

fn parse_position(text: &str) -> Result<CoinString, Failure> {
    Ok(CoinString::parse(text)?)
}

fn emit_record(out: &mut dyn Write, record: &Record) -> Result<(), Failure> {
    let line = serde_json::to_string(record)?;
    writeln!(out, "{line}")?;
    Ok(())
}

fn write_value_block(out: &mut dyn Write, value: &Dyadic) -> Result<(), Failure> {
    writeln!(out, "value: {} ({})", value, value.decimal_string())?;
    writeln!(out, "sign expansion: {}", value.to_sign_expansion())?;
    Ok(())
}

fn cmd_value(text: &str, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let position = parse_position(text)?;
    if json {
        emit_record(out, &Record::for_position(text, &position)?)?;
        return Ok(EXIT_OK);
    }
    let value = solver::value(&position)?;
    writeln!(out, "normalized: {position}")?;
    write_value_block(out, &value)?;
    writeln!(out, "outcome: {}", solver::outcome(&position)?)?;
    Ok(EXIT_OK)
}

fn cmd_reduce(text: &str, trace: bool, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let position = parse_position(text)?;
    let (reduced, steps) = solver::reduce(&position);
    if json {
        let mut record = Record::for_position(text, &position)?;
        record.trace = Some(steps.iter().map(|s| s.to_string()).collect());
        emit_record(out, &record)?;
        return Ok(EXIT_OK);
    }
    if trace {
        for step in &steps {
            writeln!(out, "{step}")?;
        }
    }
    writeln!(out, "{reduced}")?;
    Ok(EXIT_OK)
}

fn cmd_decompose(text: &str, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let position = parse_position(text)?;
    let (reduced, _) = solver::reduce(&position);
    let decomposition = solver::decompose(&reduced)?;
    if json {
        let mut record = Record::for_position(text, &position)?;
        record.decomposition = Some(decomposition.to_string());
        emit_record(out, &record)?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "reduced: {reduced}")?;
    writeln!(out, "decomposition: {decomposition}")?;
    let mut value = decomposition.base.value();
    writeln!(out, "base {} = {value}", decomposition.base)?;
    for layer in decomposition.layers.iter().rev() {
        let exponent = layer.layer_exponent();
        value = value.ordinal_sum(&exponent);
        writeln!(
            out,
            "layer {layer}: exponent {exponent}, running value {value}"
        )?;
    }
    writeln!(out, "value: {} ({})", value, value.decimal_string())?;
    Ok(EXIT_OK)
}

fn cmd_moves(text: &str, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let position = parse_position(text)?;
    let options: Vec<_> = position
        .left_options()
        .into_iter()
        .chain(position.right_options())
        .collect();
    if json {
        let mut record = Record::for_position(text, &position)?;
        let mut advice = Vec::with_capacity(options.len());
        for (mv, result) in &options {
            advice.push(AdviceJson {
                component: 0,
                player: mv.player.to_string(),
                coins: (mv.low, mv.high),
                result: result.to_string(),
                total: ValueJson::from_dyadic(&solver::value(result)?),
            });
        }
        record.advice = Some(advice);
        emit_record(out, &record)?;
        return Ok(EXIT_OK);
    }
    if options.is_empty() {
        writeln!(out, "no moves")?;
        return Ok(EXIT_OK);
    }
    for (mv, result) in &options {
        let value = solver::value(result)?;
        writeln!(out, "{mv} -> {result}  value {value}")?;
    }
    Ok(EXIT_OK)
}

fn cmd_best(text: &str, player: Player, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let position = parse_position(text)?;
    let mv = position
        .best_move(player)
        .map_err(|e| Failure::Invalid(format!("{e} in {position}")))?;
    let result = position.apply(mv).expect("designated move is legal");
    let value = solver::value(&result)?;
    if json {
        let mut record = Record::for_position(text, &position)?;
        record.advice = Some(vec![AdviceJson {
            component: 0,
            player: player.to_string(),
            coins: (mv.low, mv.high),
            result: result.to_string(),
            total: ValueJson::from_dyadic(&value),
        }]);
        emit_record(out, &record)?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "{mv} -> {result}  value {value}")?;
    Ok(EXIT_OK)
}

fn cmd_sum(text: &str, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let sum = SumPosition::parse(text)?;
    if json {
        emit_record(out, &Record::for_sum(text, &sum)?)?;
        return Ok(EXIT_OK);
    }
    for component in sum.components() {
        writeln!(out, "{component} = {}", solver::value(component)?)?;
    }
    let total = sum.value()?;
    writeln!(out, "total: {} ({})", total, total.decimal_string())?;
    writeln!(
        out,
        "Left moving first: {} wins",
        sum.outcome(Player::Left)?
    )?;
    writeln!(
        out,
        "Right moving first: {} wins",
        sum.outcome(Player::Right)?
    )?;
    Ok(EXIT_OK)
}

fn cmd_advise(text: &str, player: Player, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let sum = SumPosition::parse(text)?;
    let wins = sum.winning_moves(player)?;
    if json {
        let mut record = Record::for_sum(text, &sum)?;
        record.advice = Some(wins.iter().map(AdviceJson::from_winning_move).collect());
        emit_record(out, &record)?;
        return Ok(EXIT_OK);
    }
    if wins.is_empty() {
        writeln!(out, "no winning moves for {player}")?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "winning moves for {player}:")?;
    for win in &wins {
        writeln!(
            out,
            "component {}: ({},{}) -> {}  total {}",
            win.component, win.mv.low, win.mv.high, win.result, win.total
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    max_len: usize,
    f1f2: bool,
    props: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if max_len >= 64 {
        return Err(Failure::Invalid(format!(
            "--max-len {max_len} is out of range (the sweep is exponential; keep it below 64)"
        )));
    }
    let mut oracle = Oracle::with_max_len(max_len.max(flipcoins::oracle::DEFAULT_MAX_LEN));
    let mut checked = 0u64;
    let mut mismatches = 0u64;
    for position in CoinString::enumerate_normalized(max_len) {
        let fast = solver::value(&position)?;
        let slow = oracle
            .value(&position)
            .map_err(|e| Failure::Internal(e.to_string()))?;
        let matches = fast == slow;
        checked += 1;
        if !matches {
            mismatches += 1;
        }
        if json {
            writeln!(
                out,
                "{}",
                serde_json::json!({
                    "position": position.to_string(),
                    "fast": fast.to_string(),
                    "oracle": slow.to_string(),
                    "match": matches,
                })
            )?;
        } else {
            writeln!(
                out,
                "{position} {fast} {slow} {}",
                if matches { "ok" } else { "MISMATCH" }
            )?;
        }
    }
    let mut failures = mismatches;

    if f1f2 {
        let mut pairs = 0u64;
        let mut f1f2_failures = 0u64;
        for position in CoinString::enumerate_normalized(max_len) {
            let report = oracle
                .check_f1_f2(&position)
                .map_err(|e| Failure::Internal(e.to_string()))?;
            pairs += report.pairs_checked as u64;
            f1f2_failures += report.failures.len() as u64;
            for (gl, gr) in &report.failures {
                if json {
                    writeln!(
                        out,
                        "{}",
                        serde_json::json!({
                            "position": position.to_string(),
                            "f1f2_failure": [gl.to_string(), gr.to_string()],
                        })
                    )?;
                } else {
                    writeln!(out, "{position} f1f2 FAILURE ({gl}, {gr})")?;
                }
            }
        }
        if json {
            writeln!(
                out,
                "{}",
                serde_json::json!({
                    "f1f2_pairs": pairs,
                    "f1f2_failures": f1f2_failures,
                })
            )?;
        } else {
            writeln!(out, "f1f2: {pairs} option pairs, {f1f2_failures} failures")?;
        }
        failures += f1f2_failures;
    }

    if props {
        for report in checks::standard_suite(max_len, &mut oracle) {
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::json!({
                        "prop": report.name,
                        "cases": report.cases,
                        "failures": report.failures.len(),
                    })
                )?;
            } else {
                writeln!(
                    out,
                    "prop {}: {} cases, {} failures",
                    report.name,
                    report.cases,
                    report.failures.len()
                )?;
                for failure in report.failures.iter().take(5) {
                    writeln!(out, "  {failure}")?;
                }
            }
            failures += report.failures.len() as u64;
        }
    }

    if json {
        writeln!(
            out,
            "{}",
            serde_json::json!({
                "checked": checked,
                "max_len": max_len,
                "mismatches": mismatches,
            })
        )?;
    } else {
        writeln!(
            out,
            "checked {checked} positions up to length {max_len}: {mismatches} mismatches"
        )?;
    }
    Ok(if failures == 0 {
        EXIT_OK
    } else {
        EXIT_INTERNAL
    })
}

fn cmd_selftest(json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut failed = 0u32;
    for case in selftest::cases() {
        let result = (case.run)();
        if json {
            writeln!(
                out,
                "{}",
                serde_json::json!({
                    "test": case.name,
                    "ok": result.is_ok(),
                    "detail": result.as_ref().err(),
                })
            )?;
        } else {
            match &result {
                Ok(()) => writeln!(out, "ok   {}", case.name)?,
                Err(why) => writeln!(out, "FAIL {}: {why}", case.name)?,
            }
        }
        if result.is_err() {
            failed += 1;
        }
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_INTERNAL })
}
