//! Rendering choices: exact rationals, rounded decimals, percentages of a
//! basis, and whether to list accounts at zero. Rounding is display only.

use pacioli::cli::{cmd_balance, cmd_check};
use pacioli::{BasisMode, NumberForm, ParseOptions, RenderOptions};

const JOURNAL: &str = "basis 3
account assets:a
account assets:b
account assets:c
account equity:capital

2025-01-01 \"thirds\"
    assets:a dr 1
    assets:b dr 1
    assets:c dr 1
    equity:capital cr 3

2025-01-02 \"empty c\"
    assets:a dr 1
    assets:c cr 1
";

fn main() {
    let parse = ParseOptions::default();
    print!("{}", cmd_check(JOURNAL, &parse).stdout);
    let variants = [
        ("rational", RenderOptions::default()),
        ("two places", RenderOptions::new(NumberForm::Decimal(2), BasisMode::Raw, false).unwrap()),
        ("percent", RenderOptions::new(NumberForm::Rational, BasisMode::PercentOfBasis, false).unwrap()),
        ("percent, one place", RenderOptions::new(NumberForm::Decimal(1), BasisMode::PercentOfBasis, false).unwrap()),
        ("with zero accounts", RenderOptions::new(NumberForm::Rational, BasisMode::Raw, true).unwrap()),
    ];
    for (label, options) in variants {
        println!("-- {label}");
        print!("{}", cmd_balance(JOURNAL, &parse, None, &options).stdout);
    }
    println!("-- 13 places: {}", RenderOptions::new(NumberForm::Decimal(13), BasisMode::Raw, false).unwrap_err());
}
