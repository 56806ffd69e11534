//! Straight-line matching schedules in direct and contra mode. Both leave
//! the same net book value at every period boundary.

use chrono::NaiveDate;
use pacioli::{
    build_schedule, AccountPath, Amount, Cadence, Chart, Journal, Posting, ScheduleDirective, ScheduleMode, Transaction,
};

fn p(s: &str) -> AccountPath {
    s.parse().unwrap()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let start = NaiveDate::from_ymd_opt(2025, 3, 1).unwrap();
    let cost = Amount::ratio(2, 5);

    let schedule = build_schedule(
        p("assets:machine"),
        p("expenses:interest"),
        cost.clone(),
        5,
        start,
        Cadence::Yearly,
        ScheduleMode::Direct,
    )?;
    for tx in schedule.emit_transactions()? {
        println!("{} {}", tx.date(), tx.description());
        for posting in tx.postings() {
            let (side, amount) = posting.side_amount();
            println!("    {} {} {amount}", posting.account(), side.keyword());
        }
    }

    for mode in [ScheduleMode::Direct, ScheduleMode::Contra] {
        let mut chart = Chart::default();
        chart.declare(&p("assets:machine"))?;
        chart.declare(&p("equity:capital"))?;
        let mut journal = Journal::new(chart);
        journal.push(Transaction::new(
            start,
            "purchase",
            vec![Posting::debit(p("assets:machine"), cost.clone()), Posting::credit(p("equity:capital"), cost.clone())],
        ));
        let directive = ScheduleDirective {
            source: p("assets:machine"),
            counterpart: p("expenses:interest"),
            total: cost.clone(),
            periods: 5,
            start,
            mode,
        };
        let schedule = directive.build()?;
        journal.add_schedule(directive)?;
        let values: Vec<String> = std::iter::once(start)
            .chain(schedule.periods().iter().map(|(d, _)| *d))
            .map(|d| journal.stock_at(d).and_then(|s| schedule.net_book_value(&s)).map(|v| v.to_string()))
            .collect::<Result<_, _>>()?;
        println!("{mode:>6}: net book value {}", values.join(" → "));
    }
    Ok(())
}
