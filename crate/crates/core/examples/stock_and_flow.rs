//! Stock at a date, flow over an interval, and the reconciliation that ties
//! them together.

use chrono::NaiveDate;
use pacioli::{parse_journal, ParseOptions};

const JOURNAL: &str = "
account assets:cash
account assets:stock
account income:sales
account expenses:cost
account equity:capital

2025-01-01 \"capital\"
    assets:cash dr 1000
    equity:capital cr 1000

2025-01-10 \"buy stock\"
    assets:stock dr 400
    assets:cash cr 400

2025-02-05 \"sell half the stock\"
    assets:cash dr 350
    income:sales cr 350
    expenses:cost dr 200
    assets:stock cr 200
";

fn day(m: u32, d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(2025, m, d).unwrap()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let journal = parse_journal(JOURNAL, &ParseOptions::default()).journal.expect("journal parses");

    for at in [day(1, 1), day(1, 31), day(2, 28)] {
        let stock = journal.stock_at(at)?;
        println!("stock at {at}:");
        for (path, t) in stock.balances().filter(|(_, t)| !t.is_zero()) {
            println!("  {path:<16} {t}");
        }
    }

    let (from, to) = (day(1, 31), day(2, 28));
    let flows = journal.flow_between(from, to)?;
    println!("flow over ({from}, {to}]:");
    for (path, t) in flows.balances().filter(|(_, t)| !t.is_zero()) {
        println!("  {path:<16} {t}");
    }
    println!("  total {} (zero: {})", flows.total(), flows.total().is_zero());

    let check = journal.reconcile(from, to)?;
    println!("reconciled {} accounts, consistent: {}", check.accounts_checked, check.is_consistent());

    let nominal = ["income".parse()?, "expenses".parse()?];
    let income = journal.income_report(day(1, 1), to, &nominal)?;
    println!("net income {}", income.net_income);
    Ok(())
}
