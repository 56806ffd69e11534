//! Account paths, the chart tree, aggregation and refining a leaf into
//! sub-accounts without changing anything above it.

use chrono::NaiveDate;
use pacioli::{AccountPath, Amount, Chart, Ledger, Posting, TAccount, Transaction};

fn p(s: &str) -> AccountPath {
    s.parse().unwrap()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut chart = Chart::default();
    for a in ["assets:cash", "liabilities:suppliers", "liabilities:banks", "equity:capital"] {
        chart.declare(&p(a))?;
    }
    let mut ledger = Ledger::new(chart);
    let day = NaiveDate::from_ymd_opt(2025, 1, 1).unwrap();
    ledger.post(&Transaction::new(
        day,
        "opening",
        vec![
            Posting::debit(p("assets:cash"), Amount::one()),
            Posting::credit(p("liabilities:suppliers"), Amount::ratio(2, 5)),
            Posting::credit(p("liabilities:banks"), Amount::ratio(2, 5)),
            Posting::credit(p("equity:capital"), Amount::ratio(1, 5)),
        ],
    ))?;

    for path in ledger.chart().walk() {
        println!("{:<24} {}", path.to_string(), ledger.aggregate(path)?);
    }

    // split cash into three budgets; the parent keeps its aggregate
    let before = ledger.aggregate(&p("assets"))?;
    ledger.refine(
        &p("assets:cash"),
        &[
            (p("assets:cash:operations"), TAccount::debit_of(Amount::ratio(1, 5))),
            (p("assets:cash:suppliers"), TAccount::debit_of(Amount::ratio(2, 5))),
            (p("assets:cash:equipment"), TAccount::debit_of(Amount::ratio(2, 5))),
        ],
    )?;
    println!("\nafter refining assets:cash");
    for leaf in ledger.chart().leaves_under(&p("assets"))? {
        println!("  {leaf}: {}", ledger.balance_of(leaf));
    }
    println!("assets before {before}, after {}", ledger.aggregate(&p("assets"))?);

    // shares that do not add up are rejected
    let mut copy = ledger.clone();
    let err = copy
        .refine(
            &p("assets:cash:operations"),
            &[(p("assets:cash:operations:petty"), TAccount::debit_of(Amount::ratio(1, 10)))],
        )
        .unwrap_err();
    println!("bad split: {err}");
    Ok(())
}
