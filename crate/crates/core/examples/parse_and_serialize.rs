//! Reading journal text, getting diagnostics with source positions, and
//! writing the canonical form back out.

use pacioli::{parse_journal, serialize_journal, validate_file, ParseOptions};

const MESSY: &str = "; mixed spellings, tabs and CRLF\r
basis 100\r
2025-01-05 \"rent\"\r
\texpenses:rent debit 12.50  ; a comment\r
\tassets:cash credit 25/2\r
\r
account assets:cash\r
account expenses:rent\r
";

const BROKEN: &str = "account assets:cash
account equity:capital

2025-01-01 \"typo\"
    assets:csah dr 10
    equity:capital cr 10

2025-01-02 \"short\"
    assets:cash dr 10
    equity:capital cr 9

2025-01-03 \"bad\"
    assets:cash dr 1/0
    equity:capital cr 1
";

fn main() {
    let parsed = parse_journal(MESSY, &ParseOptions::named("messy.journal"));
    let journal = parsed.journal.expect("parses");
    let canonical = serialize_journal(&journal);
    print!("{canonical}");
    let again = parse_journal(&canonical, &ParseOptions::default()).journal.unwrap();
    println!("-- round trip equal: {}", again == journal);

    // parse errors stop at the parser, exit code 2
    let report = validate_file(BROKEN, &ParseOptions::named("broken.journal"));
    println!("\n{} (exit {})", report.summary(), report.status.exit_code());
    for d in &report.diagnostics {
        println!("  {d}");
    }

    // without the bad amount it parses, and validation finds the rest
    let fixable = BROKEN.split("\n\n2025-01-03").next().unwrap();
    let report = validate_file(fixable, &ParseOptions::named("broken.journal"));
    println!("{} (exit {})", report.summary(), report.status.exit_code());
    for d in &report.diagnostics {
        println!("  {d}");
    }
    let loose = validate_file(fixable, &ParseOptions::named("broken.journal").loose());
    println!("with --loose: {}", loose.summary());
}
