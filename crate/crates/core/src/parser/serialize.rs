use std::fmt::Write;

use crate::journal::Journal;

/// Canonical text for `journal`: basis, account declarations, schedules,
/// then transactions in date order with postings indented four spaces.
/// Amounts print as reduced rationals. Output always uses LF.
///
/// Descriptions cannot contain `"` or line breaks in the file format; such
/// characters are replaced with `'` and a space.
pub fn serialize_journal(journal: &Journal) -> String {
    let mut sections: Vec<String> = Vec::new();
    if let Some(basis) = journal.basis() {
        sections.push(format!("basis {basis}\n"));
    }
    let accounts: String = journal.chart().declared().map(|p| format!("account {p}\n")).collect();
    if !accounts.is_empty() {
        sections.push(accounts);
    }
    let mut schedules = String::new();
    for s in journal.schedules() {
        let _ = writeln!(
            schedules,
            "schedule {} {} {} over {} yearly from {} mode {}",
            s.source,
            s.counterpart,
            s.total,
            s.periods,
            s.start.format("%Y-%m-%d"),
            s.mode
        );
    }
    if !schedules.is_empty() {
        sections.push(schedules);
    }
    for tx in journal.transactions() {
        let description: String = tx
            .description()
            .chars()
            .map(|c| {
                if c == '"' {
                    '\''
                } else if c == '\n' || c == '\r' {
                    ' '
                } else {
                    c
                }
            })
            .collect();
        let mut block = format!("{} \"{description}\"\n", tx.date().format("%Y-%m-%d"));
        for posting in tx.postings() {
            let (side, amount) = posting.side_amount();
            let _ = writeln!(block, "    {} {} {amount}", posting.account(), side.keyword());
        }
        sections.push(block);
    }
    sections.join("\n")
}
