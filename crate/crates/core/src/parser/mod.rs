//! The plain-text journal language.
//!
//! ```text
//! ; comment to end of line
//! basis 1234567.89
//! account assets:cash
//! schedule assets:machine expenses:interest 2/5 over 5 yearly from 2025-03-01 mode direct
//!
//! 2025-01-01 "Opening"
//!     assets:cash dr 1234567.89
//!     equity:capital cr 1234567.89
//! ```
//!
//! Postings are indented lines under a dated header; a blank line or the end
//! of the file closes the block. Amounts are integers, decimals or `p/q`
//! rationals, all read exactly. After an error the rest of the current
//! block is skipped so that later blocks still get checked.

mod diagnostic;
mod serialize;
mod validate;

pub use diagnostic::{ParseDiagnostic, Severity, SourceSpan};
pub use serialize::serialize_journal;
pub use validate::{validate_file, ValidationReport, ValidationStatus};

use chrono::NaiveDate;

use crate::amount::{Amount, AmountError};
use crate::journal::{Journal, Posting, Transaction};
use crate::matching::{ScheduleDirective, ScheduleMode};
use crate::taccount::Side;
use crate::taxonomy::{is_identifier, AccountPath, Chart};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseOptions {
    /// Name used in spans.
    pub file_name: String,
    /// When false, accounts used by postings or schedules are declared on
    /// first use instead of being reported as undeclared.
    pub strict: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions { file_name: "<input>".into(), strict: true }
    }
}

impl ParseOptions {
    pub fn named(file_name: impl Into<String>) -> Self {
        ParseOptions { file_name: file_name.into(), ..Default::default() }
    }

    pub fn loose(mut self) -> Self {
        self.strict = false;
        self
    }
}

/// Where a transaction came from in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransactionSpans {
    pub header: SourceSpan,
    /// Whole posting lines.
    pub postings: Vec<SourceSpan>,
    /// Just the account path of each posting.
    pub accounts: Vec<SourceSpan>,
}

/// Result of [`parse_journal`]. `journal` is present only when no error
/// diagnostics were produced; `spans` follows `journal.transactions()`.
#[derive(Debug, Clone)]
pub struct ParseOutcome {
    pub journal: Option<Journal>,
    pub diagnostics: Vec<ParseDiagnostic>,
    pub spans: Vec<TransactionSpans>,
    pub schedule_spans: Vec<SourceSpan>,
}

impl ParseOutcome {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(ParseDiagnostic::is_error)
    }
}

#[derive(Debug, Clone)]
struct Token<'a> {
    text: &'a str,
    column: usize,
    length: usize,
    quoted: bool,
}

/// Splits a line into whitespace-separated tokens, treating `"..."` as one
/// token and `;` outside quotes as the start of a comment.
fn tokenize(line: &str) -> Result<Vec<Token<'_>>, (usize, String)> {
    let mut tokens = Vec::new();
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (byte, c) = chars[i];
        if c == ';' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '"' {
            let start = i;
            let mut j = i + 1;
            while j < chars.len() && chars[j].1 != '"' {
                j += 1;
            }
            if j == chars.len() {
                return Err((start + 1, "unterminated description (missing closing `\"`)".into()));
            }
            let inner_start = chars[start].0 + 1;
            let inner_end = chars[j].0;
            tokens.push(Token {
                text: &line[inner_start..inner_end],
                column: start + 1,
                length: j - start + 1,
                quoted: true,
            });
            i = j + 1;
            continue;
        }
        let start = i;
        while i < chars.len() && !chars[i].1.is_whitespace() && chars[i].1 != ';' && chars[i].1 != '"' {
            i += 1;
        }
        let end = if i < chars.len() { chars[i].0 } else { line.len() };
        tokens.push(Token { text: &line[byte..end], column: start + 1, length: i - start, quoted: false });
    }
    Ok(tokens)
}

struct Parser<'o> {
    options: &'o ParseOptions,
    diagnostics: Vec<ParseDiagnostic>,
    line: usize,
}

#[derive(Debug)]
struct PendingPosting {
    account: AccountPath,
    side: Side,
    amount: Amount,
    span: SourceSpan,
    path_span: SourceSpan,
}

#[derive(Debug)]
struct PendingTransaction {
    date: NaiveDate,
    description: String,
    span: SourceSpan,
    postings: Vec<PendingPosting>,
    broken: bool,
}

impl<'o> Parser<'o> {
    fn span(&self, column: usize, length: usize) -> SourceSpan {
        SourceSpan::new(self.options.file_name.clone(), self.line, column, length)
    }

    fn token_span(&self, token: &Token<'_>) -> SourceSpan {
        self.span(token.column, token.length)
    }

    fn error(&mut self, span: SourceSpan, message: impl Into<String>) {
        self.diagnostics.push(ParseDiagnostic::error(span, message));
    }

    fn path(&mut self, token: &Token<'_>) -> Option<AccountPath> {
        if token.quoted {
            self.error(self.token_span(token), "expected an account path, found a quoted string");
            return None;
        }
        match token.text.parse::<AccountPath>() {
            Ok(p) => Some(p),
            Err(_) => {
                let mut offset = 0;
                for segment in token.text.split(':') {
                    if !is_identifier(segment) {
                        let bad = segment.chars().enumerate().find(|(i, c)| {
                            if *i == 0 {
                                !c.is_alphabetic()
                            } else {
                                !(c.is_alphanumeric() || *c == '_' || *c == '-')
                            }
                        });
                        let message = match bad {
                            Some((i, c)) => {
                                let span = self.span(token.column + offset + i, 1);
                                self.error(
                                    span,
                                    format!("unexpected character {c:?} in account path `{}`", token.text),
                                );
                                return None;
                            }
                            None => format!("empty segment in account path `{}`", token.text),
                        };
                        self.error(self.token_span(token), message);
                        return None;
                    }
                    offset += segment.chars().count() + 1;
                }
                self.error(self.token_span(token), format!("invalid account path `{}`", token.text));
                None
            }
        }
    }

    fn amount(&mut self, token: &Token<'_>) -> Option<Amount> {
        match Amount::parse_literal(token.text) {
            Ok(a) if !token.quoted => Some(a),
            Ok(_) => {
                self.error(self.token_span(token), "expected an amount, found a quoted string");
                None
            }
            Err(AmountError::ZeroDenominator) => {
                self.error(self.token_span(token), "zero denominator");
                None
            }
            Err(AmountError::Malformed(_)) => {
                self.error(
                    self.token_span(token),
                    format!("malformed amount `{}` (expected digits, digits.digits or digits/digits)", token.text),
                );
                None
            }
        }
    }

    fn date(&mut self, token: &Token<'_>) -> Option<NaiveDate> {
        let b = token.text.as_bytes();
        let shaped = !token.quoted
            && b.len() == 10
            && b[4] == b'-'
            && b[7] == b'-'
            && b.iter().enumerate().all(|(i, c)| i == 4 || i == 7 || c.is_ascii_digit());
        let parsed = if shaped { NaiveDate::parse_from_str(token.text, "%Y-%m-%d").ok() } else { None };
        if parsed.is_none() {
            self.error(self.token_span(token), format!("malformed date `{}` (expected YYYY-MM-DD)", token.text));
        }
        parsed
    }

    fn keyword(&mut self, tokens: &[Token<'_>], index: usize, expected: &str, after: &Token<'_>) -> bool {
        match tokens.get(index) {
            Some(t) if t.text == expected && !t.quoted => true,
            Some(t) => {
                self.error(self.token_span(t), format!("expected `{expected}`, found `{}`", t.text));
                false
            }
            None => {
                self.error(self.span(after.column + after.length, 1), format!("expected `{expected}`"));
                false
            }
        }
    }

    fn schedule(&mut self, tokens: &[Token<'_>]) -> Option<ScheduleDirective> {
        // schedule <source> <counterpart> <amount> over <n> yearly from <date> mode <mode>
        let need = |i: usize| tokens.get(i);
        let last = tokens.last().expect("keyword present").clone();
        let (Some(source), Some(counterpart), Some(total_token)) = (need(1), need(2), need(3)) else {
            self.error(
                self.span(last.column + last.length, 1),
                "expected `schedule <source> <counterpart> <amount> over <n> yearly from <date> mode <direct|contra>`",
            );
            return None;
        };
        let source = self.path(source)?;
        let counterpart = self.path(counterpart)?;
        let total = self.amount(total_token)?;
        if total.is_zero() {
            self.error(self.token_span(total_token), "schedule amount must be positive");
            return None;
        }
        if !self.keyword(tokens, 4, "over", &tokens[3]) {
            return None;
        }
        let Some(n_token) = tokens.get(5) else {
            self.error(self.span(tokens[4].column + tokens[4].length, 1), "expected a period count");
            return None;
        };
        let periods = match n_token.text.parse::<u32>() {
            Ok(n) if n >= 1 && n_token.text.bytes().all(|b| b.is_ascii_digit()) => n,
            _ => {
                self.error(
                    self.token_span(n_token),
                    format!("period count must be a positive integer, found `{}`", n_token.text),
                );
                return None;
            }
        };
        if !self.keyword(tokens, 6, "yearly", &tokens[5]) || !self.keyword(tokens, 7, "from", &tokens[6]) {
            return None;
        }
        let Some(date_token) = tokens.get(8) else {
            self.error(self.span(tokens[7].column + tokens[7].length, 1), "expected a start date");
            return None;
        };
        let start = self.date(date_token)?;
        if !self.keyword(tokens, 9, "mode", &tokens[8]) {
            return None;
        }
        let Some(mode_token) = tokens.get(10) else {
            self.error(self.span(tokens[9].column + tokens[9].length, 1), "expected `direct` or `contra`");
            return None;
        };
        let mode = match mode_token.text.parse::<ScheduleMode>() {
            Ok(m) if !mode_token.quoted => m,
            _ => {
                self.error(
                    self.token_span(mode_token),
                    format!("expected `direct` or `contra`, found `{}`", mode_token.text),
                );
                return None;
            }
        };
        if let Some(extra) = tokens.get(11) {
            self.error(self.token_span(extra), format!("unexpected `{}` after schedule", extra.text));
            return None;
        }
        Some(ScheduleDirective { source, counterpart, total, periods, start, mode })
    }

    fn posting(&mut self, tokens: &[Token<'_>], line_span: SourceSpan) -> Option<PendingPosting> {
        let path_token = &tokens[0];
        let account = self.path(path_token)?;
        let path_span = self.token_span(path_token);
        let Some(side_token) = tokens.get(1) else {
            self.error(
                self.span(path_token.column + path_token.length, 1),
                "missing side keyword (`dr` or `cr`) and amount",
            );
            return None;
        };
        let side = match side_token.text {
            "dr" | "debit" if !side_token.quoted => Side::Debit,
            "cr" | "credit" if !side_token.quoted => Side::Credit,
            other => {
                let message = if Amount::parse_literal(other).is_ok() || other.contains(['.', '/']) {
                    format!("missing side keyword (`dr` or `cr`) before `{other}`")
                } else {
                    format!("expected `dr` or `cr`, found `{other}`")
                };
                self.error(self.token_span(side_token), message);
                return None;
            }
        };
        let Some(amount_token) = tokens.get(2) else {
            self.error(self.span(side_token.column + side_token.length, 1), "missing amount");
            return None;
        };
        let amount = self.amount(amount_token)?;
        if let Some(extra) = tokens.get(3) {
            self.error(self.token_span(extra), format!("unexpected `{}` after amount", extra.text));
            return None;
        }
        Some(PendingPosting { account, side, amount, span: line_span, path_span })
    }
}

/// Parses journal text. See the module docs for the grammar.
pub fn parse_journal(text: &str, options: &ParseOptions) -> ParseOutcome {
    let mut parser = Parser { options, diagnostics: Vec::new(), line: 0 };
    let mut basis: Option<(Amount, SourceSpan)> = None;
    let mut declarations: Vec<(AccountPath, SourceSpan)> = Vec::new();
    let mut schedules: Vec<(ScheduleDirective, SourceSpan)> = Vec::new();
    let mut transactions: Vec<PendingTransaction> = Vec::new();
    let mut open: Option<PendingTransaction> = None;
    // Set after an error in an indented block; cleared by a blank line.
    let mut skipping = false;

    for (index, raw) in text.split('\n').enumerate() {
        parser.line = index + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            if let Some(tx) = open.take() {
                transactions.push(tx);
            }
            skipping = false;
            continue;
        }
        let line_span = parser.span(1, line.chars().count());
        let tokens = match tokenize(line) {
            Ok(t) => t,
            Err((column, message)) => {
                parser.error(parser.span(column, 1), message);
                if let Some(tx) = open.as_mut() {
                    tx.broken = true;
                }
                skipping = line.starts_with(char::is_whitespace) || open.is_some();
                continue;
            }
        };
        if tokens.is_empty() {
            continue;
        }
        let indented = line.starts_with(char::is_whitespace);
        if indented {
            if skipping {
                continue;
            }
            let Some(tx) = open.as_mut() else {
                parser.error(parser.token_span(&tokens[0]), "indented posting outside a transaction");
                skipping = true;
                continue;
            };
            let before = parser.diagnostics.len();
            match parser.posting(&tokens, line_span) {
                Some(p) => tx.postings.push(p),
                None => {
                    debug_assert!(parser.diagnostics.len() > before);
                    tx.broken = true;
                    skipping = true;
                }
            }
            continue;
        }

        // A new top-level line closes any open block.
        if let Some(tx) = open.take() {
            transactions.push(tx);
        }
        skipping = false;
        let head = &tokens[0];
        if head.quoted {
            parser.error(parser.token_span(head), "missing date before transaction description");
            skipping = true;
            continue;
        }
        match head.text {
            "basis" => {
                let Some(amount_token) = tokens.get(1) else {
                    parser.error(parser.span(head.column + head.length, 1), "expected an amount after `basis`");
                    continue;
                };
                let Some(amount) = parser.amount(amount_token) else { continue };
                if amount.is_zero() {
                    parser.error(parser.token_span(amount_token), "basis must be positive");
                } else if let Some(extra) = tokens.get(2) {
                    parser.error(parser.token_span(extra), format!("unexpected `{}` after basis", extra.text));
                } else if let Some((_, first)) = &basis {
                    let message = format!("basis already declared at line {}", first.line);
                    parser.error(line_span.clone(), message);
                } else {
                    basis = Some((amount, line_span));
                }
            }
            "account" => {
                let Some(path_token) = tokens.get(1) else {
                    parser.error(parser.span(head.column + head.length, 1), "expected an account path after `account`");
                    continue;
                };
                let Some(path) = parser.path(path_token) else { continue };
                if let Some(extra) = tokens.get(2) {
                    parser.error(parser.token_span(extra), format!("unexpected `{}` after account path", extra.text));
                } else if let Some((_, first)) = declarations.iter().find(|(p, _)| p == &path) {
                    let message = format!("account `{path}` is already declared at line {}", first.line);
                    parser.error(parser.token_span(path_token), message);
                } else {
                    declarations.push((path, parser.token_span(path_token)));
                }
            }
            "schedule" => {
                if let Some(s) = parser.schedule(&tokens) {
                    schedules.push((s, line_span));
                }
            }
            word if word.starts_with(|c: char| c.is_ascii_digit()) => {
                let date = parser.date(head);
                let description = match tokens.get(1) {
                    Some(t) if t.quoted => Some(t.text.to_string()),
                    Some(t) => {
                        parser.error(parser.token_span(t), "expected a quoted description");
                        None
                    }
                    None => {
                        parser.error(
                            parser.span(head.column + head.length, 1),
                            "expected a quoted description after the date",
                        );
                        None
                    }
                };
                let extra = tokens.get(2).map(|t| parser.token_span(t));
                if let Some(span) = extra.clone() {
                    parser.error(span, "unexpected text after transaction description");
                }
                match (date, description, extra) {
                    (Some(date), Some(description), None) => {
                        open = Some(PendingTransaction {
                            date,
                            description,
                            span: line_span,
                            postings: Vec::new(),
                            broken: false,
                        })
                    }
                    _ => skipping = true,
                }
            }
            other => {
                let message = if other.contains(':') {
                    format!("unexpected `{other}`; postings must be indented under a transaction header")
                } else {
                    format!("unknown directive `{other}`")
                };
                parser.error(parser.token_span(head), message);
                skipping = true;
            }
        }
    }
    if let Some(tx) = open.take() {
        transactions.push(tx);
    }

    // Chart: declarations, then first use (loose), then schedule accounts.
    let mut chart = Chart::new();
    for (path, _) in &declarations {
        chart.declare(path).expect("duplicates already filtered");
    }
    let mut journal_parts = Vec::with_capacity(transactions.len());
    let mut previous: Option<NaiveDate> = None;
    for tx in transactions {
        if tx.broken {
            continue;
        }
        if tx.postings.is_empty() {
            parser.diagnostics.push(ParseDiagnostic::error(tx.span.clone(), "transaction has no postings"));
            continue;
        }
        if let Some(prev) = previous {
            if tx.date < prev {
                parser.diagnostics.push(ParseDiagnostic::warning(
                    tx.span.clone(),
                    format!("transaction dated {} follows one dated {prev}; journal will be sorted by date", tx.date),
                ));
            }
        }
        previous = Some(previous.map_or(tx.date, |p| p.max(tx.date)));
        if !options.strict {
            for p in &tx.postings {
                chart.ensure(&p.account);
            }
        }
        journal_parts.push(tx);
    }

    let mut journal = Journal::new(chart);
    journal.set_basis(basis.map(|(b, _)| b));
    let mut schedule_spans = Vec::new();
    for (directive, span) in schedules {
        if !options.strict {
            journal.chart_mut().ensure(&directive.source);
        } else if !journal.chart().contains(&directive.source) {
            parser.diagnostics.push(ParseDiagnostic::error(span, format!("undeclared account `{}`", directive.source)));
            continue;
        }
        match journal.add_schedule(directive) {
            Ok(()) => schedule_spans.push(span),
            Err(e) => parser.diagnostics.push(ParseDiagnostic::error(span, e.to_string())),
        }
    }

    journal_parts.sort_by_key(|tx| tx.date);
    let mut spans = Vec::with_capacity(journal_parts.len());
    for tx in journal_parts {
        spans.push(TransactionSpans {
            header: tx.span,
            postings: tx.postings.iter().map(|p| p.span.clone()).collect(),
            accounts: tx.postings.iter().map(|p| p.path_span.clone()).collect(),
        });
        let postings = tx.postings.into_iter().map(|p| Posting::on_side(p.account, p.side, p.amount)).collect();
        journal.push(Transaction::new(tx.date, tx.description, postings));
    }

    let has_errors = parser.diagnostics.iter().any(ParseDiagnostic::is_error);
    ParseOutcome {
        journal: if has_errors { None } else { Some(journal) },
        diagnostics: parser.diagnostics,
        spans,
        schedule_spans,
    }
}
