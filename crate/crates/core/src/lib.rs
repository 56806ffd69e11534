//! A double-entry ledger engine built directly on the T-account group.
//!
//! Amounts are exact rationals. A [`TAccount`] is a `(debit, credit)` pair;
//! pairs add componentwise and every `(x, x)` is zero. A transaction is a
//! set of postings whose sum is zero, so the whole ledger, summed over the
//! account tree, is always zero as well, and the same holds for the net
//! flow over any interval.
//!
//! The journal language ([`parser`]), the text reports ([`report`]) and the
//! command-line front end ([`cli`]) sit on top of these types.

pub mod amount;
pub mod cli;
pub mod error;
pub mod journal;
pub mod matching;
pub mod parser;
pub mod report;
pub mod taccount;
pub mod taxonomy;

pub use amount::{Amount, AmountError, Sign, SignedAmount};
pub use error::{LedgerError, PartitionMismatch, Result, Shortfall};
pub use journal::{
    closing_transaction, validate_transaction, IncomeReport, Journal, Ledger, Posting, ReconcileViolation,
    Reconciliation, Scope, Transaction,
};
pub use matching::{
    build_schedule, complete_activity, reclassify, ActivityPair, Cadence, MatchingSchedule, ScheduleDirective,
    ScheduleMode,
};
pub use parser::{
    parse_journal, serialize_journal, validate_file, ParseDiagnostic, ParseOptions, ParseOutcome, Severity, SourceSpan,
    ValidationReport, ValidationStatus,
};
pub use report::{BasisMode, NumberForm, RenderOptions};
pub use taccount::{Side, TAccount};
pub use taxonomy::{AccountPath, Chart};
