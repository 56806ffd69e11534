use crate::error::LedgerError;
use crate::journal::{Journal, Ledger, Transaction};
use crate::parser::{parse_journal, ParseDiagnostic, ParseOptions, SourceSpan};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationStatus {
    Ok,
    /// Parsed, but some transaction failed validation or posting.
    Invalid,
    /// The text could not be parsed.
    ParseError,
}

impl ValidationStatus {
    /// 0, 1 or 2.
    pub fn exit_code(self) -> i32 {
        match self {
            ValidationStatus::Ok => 0,
            ValidationStatus::Invalid => 1,
            ValidationStatus::ParseError => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub status: ValidationStatus,
    pub diagnostics: Vec<ParseDiagnostic>,
    /// Explicit plus schedule-generated transactions.
    pub transactions: usize,
    pub journal: Option<Journal>,
}

impl ValidationReport {
    /// One line: `ok: N transactions, root ≡ 0`, or a failure count.
    pub fn summary(&self) -> String {
        let errors = self.diagnostics.iter().filter(|d| d.is_error()).count();
        match self.status {
            ValidationStatus::Ok => format!("ok: {} transactions, root ≡ 0", self.transactions),
            ValidationStatus::Invalid => format!("invalid: {errors} error(s) in {} transactions", self.transactions),
            ValidationStatus::ParseError => format!("parse failed: {errors} error(s)"),
        }
    }
}

/// Parses `text`, then validates every transaction (explicit and
/// schedule-generated) and checks that the fully posted tree sums to zero.
/// Problems are returned as diagnostics, never as errors.
pub fn validate_file(text: &str, options: &ParseOptions) -> ValidationReport {
    let parsed = parse_journal(text, options);
    let mut diagnostics = parsed.diagnostics;
    let Some(journal) = parsed.journal else {
        return ValidationReport { status: ValidationStatus::ParseError, diagnostics, transactions: 0, journal: None };
    };

    let mut ledger = Ledger::new(journal.chart().clone());
    let mut failed = false;
    for (tx, spans) in journal.transactions().iter().zip(&parsed.spans) {
        if let Some(d) = post_checked(&mut ledger, tx, &spans.header, Some(&spans.accounts)) {
            failed = true;
            diagnostics.push(d);
        }
    }
    let mut generated = 0;
    for (directive, span) in journal.schedules().iter().zip(&parsed.schedule_spans) {
        let emitted = directive.build().and_then(|s| s.emit_transactions());
        match emitted {
            Ok(txs) => {
                generated += txs.len();
                for tx in &txs {
                    if let Some(d) = post_checked(&mut ledger, tx, span, None) {
                        failed = true;
                        diagnostics.push(d);
                    }
                }
            }
            Err(e) => {
                failed = true;
                diagnostics.push(ParseDiagnostic::error(span.clone(), e.to_string()));
            }
        }
    }
    let total = ledger.total();
    if !total.is_zero() {
        failed = true;
        let span = SourceSpan::new(options.file_name.clone(), 1, 1, 0);
        diagnostics.push(ParseDiagnostic::error(span, format!("account tree sums to {total}, not zero")));
    }
    let status = if failed { ValidationStatus::Invalid } else { ValidationStatus::Ok };
    ValidationReport {
        status,
        diagnostics,
        transactions: journal.transactions().len() + generated,
        journal: Some(journal),
    }
}

fn post_checked(
    ledger: &mut Ledger,
    tx: &Transaction,
    header: &SourceSpan,
    accounts: Option<&[SourceSpan]>,
) -> Option<ParseDiagnostic> {
    match ledger.post(tx) {
        Ok(()) => {
            let total = ledger.total();
            (!total.is_zero()).then(|| {
                ParseDiagnostic::error(
                    header.clone(),
                    format!("internal inconsistency: tree total {total} is not zero after posting"),
                )
            })
        }
        Err(LedgerError::UnknownAccount(path)) | Err(LedgerError::NonLeafPosting(path))
            if tx.postings().iter().any(|p| p.account() == &path) =>
        {
            let position = tx.postings().iter().position(|p| p.account() == &path);
            let span = position.and_then(|i| accounts.and_then(|a| a.get(i))).unwrap_or(header);
            let message = if ledger.chart().contains(&path) {
                format!("account `{path}` has sub-accounts and cannot take postings")
            } else {
                format!("undeclared account `{path}`")
            };
            Some(ParseDiagnostic::error(span.clone(), message))
        }
        Err(e) => Some(ParseDiagnostic::error(header.clone(), format!("\"{}\": {e}", tx.description()))),
    }
}
