//! Completing an activity (settling an obligation from a resource),
//! reclassifying between accounts, and closing nominal accounts into equity.

use chrono::NaiveDate;
use pacioli::{
    closing_transaction, complete_activity, parse_journal, reclassify, AccountPath, ActivityPair, Amount, ParseOptions,
};

const OPENING: &str = "
account assets:cash
account assets:savings
account liabilities:suppliers
account equity:capital
account equity:retained
account income:sales
account expenses:rent

2025-01-01 \"opening\"
    assets:cash dr 1
    liabilities:suppliers cr 2/5
    equity:capital cr 3/5

2025-01-15 \"sales and rent\"
    assets:cash dr 3/10
    income:sales cr 3/10
    expenses:rent dr 1/10
    assets:cash cr 1/10
";

fn p(s: &str) -> AccountPath {
    s.parse().unwrap()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut journal = parse_journal(OPENING, &ParseOptions::default()).journal.expect("parses");
    let day = NaiveDate::from_ymd_opt(2025, 2, 1).unwrap();

    let ledger = journal.ledger()?;
    let pay = ActivityPair::new(p("assets:cash"), p("liabilities:suppliers"), Amount::ratio(2, 5))?;
    let settle = complete_activity(&ledger, &pay, day, "pay suppliers")?;
    println!("{} {}", settle.date(), settle.description());
    for posting in settle.postings() {
        let (side, amount) = posting.side_amount();
        println!("    {} {} {amount}", posting.account(), side.keyword());
    }
    journal.push(settle);

    let ledger = journal.ledger()?;
    let save = reclassify(&ledger, &p("assets:cash"), &p("assets:savings"), &Amount::ratio(1, 10), day, "to savings")?;
    journal.push(save);

    // asking for more than is there fails before anything is posted
    let too_much = ActivityPair::new(p("assets:cash"), p("liabilities:suppliers"), Amount::one())?;
    println!("overdraw: {}", complete_activity(&journal.ledger()?, &too_much, day, "x").unwrap_err());

    let nominal = [p("income"), p("expenses")];
    let (from, to) = (NaiveDate::from_ymd_opt(2024, 12, 31).unwrap(), day);
    let report = journal.income_report(from, to, &nominal)?;
    println!("net income {}", report.net_income);
    let flows = journal.flow_between(from, to)?;
    if let Some(close) = closing_transaction(&flows, &nominal, &p("equity:retained"), to, "close the period")? {
        journal.push(close);
    }
    for (path, t) in journal.stock_at(to)?.balances().filter(|(_, t)| !t.is_zero()) {
        println!("  {path:<20} {t}");
    }
    Ok(())
}
