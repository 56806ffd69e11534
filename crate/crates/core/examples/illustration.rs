//! The founding of a small firm, told in dollars and in fractions of the
//! opening capital: opening balance, three budgets, paying suppliers,
//! buying a machine and matching its cost over five years.
//!
//! Run with `cargo run --example illustration`.

use chrono::NaiveDate;
use pacioli::cli::{cmd_balance, cmd_equation, cmd_flows, cmd_schedule};
use pacioli::{BasisMode, NumberForm, ParseOptions, RenderOptions};

const JOURNAL: &str = include_str!("../tests/fixtures/matching-direct.journal");

fn day(y: i32, m: u32, d: u32) -> Option<NaiveDate> {
    NaiveDate::from_ymd_opt(y, m, d)
}

fn main() {
    let parse = ParseOptions::named("illustration.journal");
    let fractions = RenderOptions { basis_mode: BasisMode::PercentOfBasis, ..Default::default() };
    let dollars = RenderOptions { form: NumberForm::Decimal(2), ..Default::default() };

    let steps = [
        ("opening", day(2025, 1, 1)),
        ("budgets", day(2025, 1, 2)),
        ("suppliers paid", day(2025, 2, 1)),
        ("machine bought", day(2025, 3, 1)),
        ("one year of matching", day(2026, 3, 1)),
        ("fully matched", day(2030, 3, 1)),
    ];
    for (label, at) in steps {
        println!("== {label}");
        print!("{}", cmd_equation(JOURNAL, &parse, at, &fractions).stdout);
    }

    println!("\n== opening in dollars");
    print!("{}", cmd_balance(JOURNAL, &parse, day(2025, 1, 1), &dollars).stdout);
    println!("\n== after the purchase, percent of capital");
    print!("{}", cmd_balance(JOURNAL, &parse, day(2025, 3, 1), &fractions).stdout);
    println!("\n== supplier payment as a flow");
    print!("{}", cmd_flows(JOURNAL, &parse, day(2025, 1, 2).unwrap(), day(2025, 2, 1).unwrap(), &fractions).stdout);
    println!("\n== the matching schedule");
    print!("{}", cmd_schedule(JOURNAL, &parse, &fractions).stdout);
}
