use chrono::NaiveDate;
use thiserror::Error;

use crate::amount::{Amount, SignedAmount};
use crate::taccount::TAccount;
use crate::taxonomy::AccountPath;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("invalid account path `{0}`")]
    InvalidPath(String),
    #[error("account `{0}` is already declared")]
    DuplicateDeclaration(AccountPath),
    #[error("unknown account `{0}`")]
    UnknownAccount(AccountPath),
    #[error("account `{0}` has sub-accounts and cannot take postings")]
    NonLeafPosting(AccountPath),
    #[error("transaction does not balance: residual {residual:?}")]
    Imbalance { residual: SignedAmount },
    #[error("transaction has {0} posting(s); at least two are required")]
    TooFewPostings(usize),
    #[error("posting to `{0}` must be a single-sided debit or credit")]
    TwoSidedPosting(AccountPath),
    #[error("{0}")]
    PartitionMismatch(Box<PartitionMismatch>),
    #[error("`{0}` already exists or is listed twice")]
    ChildCollision(AccountPath),
    #[error("`{child}` is not a direct sub-account of `{parent}`")]
    NotAChild { parent: AccountPath, child: AccountPath },
    #[error("partition of `{0}` is empty")]
    EmptyPartition(AccountPath),
    #[error("interval is inverted: {from} > {to}")]
    InvertedInterval { from: NaiveDate, to: NaiveDate },
    #[error("unknown nominal root `{0}`")]
    UnknownRoot(AccountPath),
    #[error("{0}")]
    InsufficientBalance(Box<Shortfall>),
    #[error("movement amount must be positive")]
    EmptyMovement,
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("no basis declared; percent mode needs one")]
    MissingBasis,
    #[error("transaction #{index} ({date} \"{description}\"): {source}")]
    AtTransaction {
        index: usize,
        date: NaiveDate,
        description: String,
        #[source]
        source: Box<LedgerError>,
    },
}

/// Refinement shares that do not add up to the parent's balance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("shares {actual} do not partition `{parent}` balance {expected} (residual {residual:?})")]
pub struct PartitionMismatch {
    pub parent: AccountPath,
    pub expected: TAccount,
    pub actual: TAccount,
    pub residual: SignedAmount,
}

/// An account asked to give up more than it carries on the expected side.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{account}` holds {available:?}; cannot move {requested}")]
pub struct Shortfall {
    pub account: AccountPath,
    pub available: SignedAmount,
    pub requested: Amount,
}

pub type Result<T, E = LedgerError> = std::result::Result<T, E>;
