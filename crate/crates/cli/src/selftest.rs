//! Built-in golden examples: the worked values this solver is expected to
//! reproduce exactly. `flipcoins selftest` re-runs all of them.

use flipcoins::{
    ordinal_sum_by_definition, simplest_in, solver, CoinString, Dyadic, Interval, Move, Oracle,
    Outcome, Player, SumPosition,
};

pub struct Case {
    pub name: &'static str,
    pub run: fn() -> Result<(), String>,
}

fn expect<T: PartialEq + std::fmt::Debug>(label: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{label}: got {got:?}, want {want:?}"))
    }
}

fn dy(n: i64, d: u64) -> Dyadic {
    Dyadic::ratio(n, d)
}

fn pos(s: &str) -> CoinString {
    CoinString::parse(s).expect("valid test position")
}

fn val(s: &str) -> Dyadic {
    solver::value(&pos(s)).expect("solver value")
}

const SAMPLE_SUM: &str = "0101011111+1101100111+0110110110111";

fn simplicity_rule() -> Result<(), String> {
    expect("{ | }", simplest_in(&Interval::unbounded()), Dyadic::zero())?;
    expect(
        "{-9 | }",
        simplest_in(&Interval::above(Dyadic::from_int(-9))),
        Dyadic::zero(),
    )?;
    expect(
        "{-5/2 | -31/16}",
        simplest_in(&Interval::between(dy(-5, 2), dy(-31, 16))),
        Dyadic::from_int(-2),
    )?;
    expect(
        "{0 | 100}",
        simplest_in(&Interval::between(Dyadic::zero(), Dyadic::from_int(100))),
        Dyadic::one(),
    )?;
    expect(
        "{3/8 | 17/32}",
        simplest_in(&Interval::between(dy(3, 8), dy(17, 32))),
        dy(1, 2),
    )
}

fn dyadic_arithmetic() -> Result<(), String> {
    expect("-11/16 + 3/4", dy(-11, 16) + dy(3, 4), dy(1, 16))?;
    expect("-5/2 < -31/16", dy(-5, 2) < dy(-31, 16), true)?;
    expect("3/8 < 17/32", dy(3, 8) < dy(17, 32), true)
}

fn ordinal_sums() -> Result<(), String> {
    let one = Dyadic::one();
    let half = dy(1, 2);
    expect("1:1", one.ordinal_sum(&one), Dyadic::from_int(2))?;
    expect("1:-1", one.ordinal_sum(&Dyadic::from_int(-1)), half.clone())?;
    expect("1:1/2", one.ordinal_sum(&half), dy(3, 2))?;
    expect("1/2:1", half.ordinal_sum(&one), dy(3, 4))?;
    expect("(1:-1):1/2", half.ordinal_sum(&half), dy(5, 8))?;
    expect(
        "base move wipes a zero exponent",
        dy(-11, 16).ordinal_sum(&Dyadic::zero()),
        dy(-11, 16),
    )?;
    expect(
        "1:-1 by definition",
        ordinal_sum_by_definition(&one, &Dyadic::from_int(-1)),
        half.clone(),
    )?;
    expect(
        "1/2:1/2 by definition",
        ordinal_sum_by_definition(&half, &half),
        dy(5, 8),
    )
}

fn options_of_1011() -> Result<(), String> {
    let g = pos("1011");
    let mut lefts: Vec<String> = g
        .left_options()
        .into_iter()
        .map(|(_, o)| o.to_string())
        .collect();
    lefts.sort();
    expect(
        "left options",
        lefts,
        vec!["0001".into(), "001".into(), "1".into()],
    )?;
    let mut rights: Vec<String> = g
        .right_options()
        .into_iter()
        .map(|(_, o)| o.to_string())
        .collect();
    rights.sort();
    expect("right options", rights, vec!["1101".into(), "111".into()])?;
    expect(
        "apply Left (3,4)",
        g.apply(Move::new(Player::Left, 3, 4))
            .map_err(|e| e.to_string())?,
        pos("1"),
    )?;
    expect(
        "apply Right (2,4) deletes the tail",
        g.apply(Move::new(Player::Right, 2, 4))
            .map_err(|e| e.to_string())?,
        pos("111"),
    )
}

fn quick_outcomes() -> Result<(), String> {
    expect("1011", pos("1011").quick_outcome(), Outcome::LeftWins)?;
    expect("0101", pos("0101").quick_outcome(), Outcome::LeftWins)
}

fn designated_best_moves() -> Result<(), String> {
    let g = pos("1011");
    expect(
        "Left plays the two rightmost tails",
        g.best_left_move().map_err(|e| e.to_string())?,
        Move::new(Player::Left, 3, 4),
    )?;
    expect(
        "Right plays the rightmost heads",
        g.best_right_move().map_err(|e| e.to_string())?,
        Move::new(Player::Right, 2, 3),
    )?;
    let long = pos("0110110110111");
    let mv = long.best_left_move().map_err(|e| e.to_string())?;
    expect("long example move", mv, Move::new(Player::Left, 12, 13))?;
    let result = long.apply(mv).map_err(|e| e.to_string())?;
    expect("long example result", result.clone(), pos("01101101101"))?;
    expect(
        "long example result value",
        solver::value(&result).map_err(|e| e.to_string())?,
        dy(-1, 8),
    )
}

fn reduction_fixpoints() -> Result<(), String> {
    expect(
        "long reduction",
        solver::reduce(&pos("10011110110110111011110011")).0,
        pos("1010110001010011"),
    )?;
    expect(
        "short reduction",
        solver::reduce(&pos("01001110110111011101")).0,
        pos("01010100011101"),
    )?;
    expect(
        "chain to a single coin",
        solver::reduce(&pos("0110110110111")).0,
        pos("1"),
    )?;
    expect(
        "1011 is already reduced",
        solver::reduce(&pos("1011")).0,
        pos("1011"),
    )
}

fn decompositions() -> Result<(), String> {
    let d = solver::decompose(&pos("1010110001010011")).map_err(|e| e.to_string())?;
    expect(
        "long partition",
        d.to_string(),
        "101(011)(000101)(0011)".to_string(),
    )?;
    let d = solver::decompose(&pos("01010100011101")).map_err(|e| e.to_string())?;
    expect(
        "short partition",
        d.to_string(),
        "01(0101)(00011)(101)".to_string(),
    )
}

fn base_closed_forms() -> Result<(), String> {
    expect("0001", val("0001"), Dyadic::from_int(-3))?;
    expect("11", val("11"), Dyadic::one())?;
    expect("101", val("101"), dy(1, 2))
}

fn value_suite() -> Result<(), String> {
    expect("011101", val("011101"), dy(3, 8))?;
    expect("1001", val("1001"), dy(1, 4))?;
    expect("0101011111", val("0101011111"), dy(-11, 16))?;
    expect("01010111", val("01010111"), dy(-3, 4))?;
    expect("1101100111", val("1101100111"), dy(3, 4))?;
    expect("0110110110111", val("0110110110111"), Dyadic::zero())?;
    expect(
        "01001110110111011101",
        val("01001110110111011101"),
        dy(-893, 1024),
    )
}

fn big_example_both_routes() -> Result<(), String> {
    // ((1/2 : 1/2) : 1/64) : 1/8, once by the fast solver and once from the
    // recursive ordinal-sum definition; the denominator is 2^14 = 16384
    let fast = val("10011110110110111011110011");
    let folded = ordinal_sum_by_definition(
        &ordinal_sum_by_definition(&ordinal_sum_by_definition(&dy(1, 2), &dy(1, 2)), &dy(1, 64)),
        &dy(1, 8),
    );
    expect("fast route", fast.clone(), dy(10257, 16384))?;
    expect("definition route", folded, dy(10257, 16384))?;
    expect(
        "numerator",
        fast.numerator().to_string(),
        "10257".to_string(),
    )?;
    expect("denominator exponent", fast.exponent(), 14)
}

fn outcome_examples() -> Result<(), String> {
    expect(
        "0110110110111",
        solver::outcome(&pos("0110110110111")).map_err(|e| e.to_string())?,
        Outcome::PreviousWins,
    )?;
    expect(
        "0101011111",
        solver::outcome(&pos("0101011111")).map_err(|e| e.to_string())?,
        Outcome::RightWins,
    )
}

fn oracle_spot_checks() -> Result<(), String> {
    let mut oracle = Oracle::new();
    expect(
        "0101011111 by brute force",
        oracle
            .value(&pos("0101011111"))
            .map_err(|e| e.to_string())?,
        dy(-11, 16),
    )?;
    expect(
        "1011 by brute force",
        oracle.value(&pos("1011")).map_err(|e| e.to_string())?,
        dy(1, 4),
    )
}

fn sum_question() -> Result<(), String> {
    let sum = SumPosition::parse(SAMPLE_SUM).map_err(|e| e.to_string())?;
    expect("total", sum.value().map_err(|e| e.to_string())?, dy(1, 16))?;
    let wins = sum.winning_moves(Player::Left).map_err(|e| e.to_string())?;
    expect("one winning move", wins.len(), 1)?;
    expect("played in the first component", wins[0].component, 0)?;
    expect("to 01010111", wins[0].result.clone(), pos("01010111"))?;
    expect("leaving total 0", wins[0].total.clone(), Dyadic::zero())?;
    expect(
        "Right has none",
        sum.winning_moves(Player::Right)
            .map_err(|e| e.to_string())?
            .len(),
        0,
    )?;
    // Left's designated moves in the other two components both lose by 1/16
    for index in [1usize, 2] {
        let component = &sum.components()[index];
        let mv = component.best_left_move().map_err(|e| e.to_string())?;
        let mut components = sum.components().to_vec();
        components[index] = component.apply(mv).map_err(|e| e.to_string())?;
        let total = SumPosition::new(components)
            .value()
            .map_err(|e| e.to_string())?;
        expect(
            &format!("component {index} best move total"),
            total,
            dy(-1, 16),
        )?;
    }
    Ok(())
}

pub fn cases() -> Vec<Case> {
    vec![
        Case {
            name: "simplicity rule",
            run: simplicity_rule,
        },
        Case {
            name: "dyadic arithmetic",
            run: dyadic_arithmetic,
        },
        Case {
            name: "ordinal sums",
            run: ordinal_sums,
        },
        Case {
            name: "options of 1011",
            run: options_of_1011,
        },
        Case {
            name: "quick outcomes",
            run: quick_outcomes,
        },
        Case {
            name: "designated best moves",
            run: designated_best_moves,
        },
        Case {
            name: "reduction fixpoints",
            run: reduction_fixpoints,
        },
        Case {
            name: "decompositions",
            run: decompositions,
        },
        Case {
            name: "base closed forms",
            run: base_closed_forms,
        },
        Case {
            name: "value suite",
            run: value_suite,
        },
        Case {
            name: "big example via both routes",
            run: big_example_both_routes,
        },
        Case {
            name: "outcomes",
            run: outcome_examples,
        },
        Case {
            name: "oracle spot checks",
            run: oracle_spot_checks,
        },
        Case {
            name: "sum question",
            run: sum_question,
        },
    ]
}
