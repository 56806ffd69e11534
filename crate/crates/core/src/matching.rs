//! Activity pairing and the matching principle.
//!
//! A resource on the debit side is paired with an obligation on the credit
//! side. Completing the activity moves the paired magnitude out of both, so
//! both drop out of the reduced balance sheet once fully matched. A
//! [`MatchingSchedule`] spreads a resource across dated periods, each period
//! charging its share to a per-period counterpart account.

use std::fmt;
use std::str::FromStr;

use chrono::{Months, NaiveDate};

use crate::amount::{Amount, Sign, SignedAmount};
use crate::error::{LedgerError, Result, Shortfall};
use crate::journal::{Ledger, Posting, Transaction};
use crate::taxonomy::AccountPath;

/// Name of the contra account created next to a depreciated resource.
pub const CONTRA_ACCOUNT: &str = "accumulated-depreciation";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActivityPair {
    resource: AccountPath,
    obligation: AccountPath,
    magnitude: Amount,
}

impl ActivityPair {
    pub fn new(resource: AccountPath, obligation: AccountPath, magnitude: Amount) -> Result<Self> {
        if magnitude.is_zero() {
            return Err(LedgerError::EmptyMovement);
        }
        Ok(ActivityPair { resource, obligation, magnitude })
    }

    pub fn resource(&self) -> &AccountPath {
        &self.resource
    }

    pub fn obligation(&self) -> &AccountPath {
        &self.obligation
    }

    pub fn magnitude(&self) -> &Amount {
        &self.magnitude
    }
}

fn require(ledger: &Ledger, account: &AccountPath, side: Sign, magnitude: &Amount) -> Result<()> {
    if !ledger.chart().contains(account) {
        return Err(LedgerError::UnknownAccount(account.clone()));
    }
    let available = ledger.aggregate(account)?.balance();
    let enough = available.sign() == side && available.magnitude() >= magnitude;
    if enough {
        Ok(())
    } else {
        Err(LedgerError::InsufficientBalance(Box::new(Shortfall {
            account: account.clone(),
            available,
            requested: magnitude.clone(),
        })))
    }
}

/// The transaction settling `pair`: debit the obligation, credit the resource.
pub fn complete_activity(
    ledger: &Ledger,
    pair: &ActivityPair,
    date: NaiveDate,
    description: impl Into<String>,
) -> Result<Transaction> {
    require(ledger, &pair.resource, Sign::Positive, &pair.magnitude)?;
    require(ledger, &pair.obligation, Sign::Negative, &pair.magnitude)?;
    Ok(Transaction::new(
        date,
        description,
        vec![
            Posting::debit(pair.obligation.clone(), pair.magnitude.clone()),
            Posting::credit(pair.resource.clone(), pair.magnitude.clone()),
        ],
    ))
}

/// Moves `magnitude` from `from` to `to` on whichever side `from` is carried.
pub fn reclassify(
    ledger: &Ledger,
    from: &AccountPath,
    to: &AccountPath,
    magnitude: &Amount,
    date: NaiveDate,
    description: impl Into<String>,
) -> Result<Transaction> {
    if magnitude.is_zero() {
        return Err(LedgerError::EmptyMovement);
    }
    if !ledger.chart().contains(to) {
        return Err(LedgerError::UnknownAccount(to.clone()));
    }
    let side = match ledger.aggregate(from)?.balance().sign() {
        Sign::Negative => Sign::Negative,
        _ => Sign::Positive,
    };
    require(ledger, from, side, magnitude)?;
    let postings = match side {
        Sign::Negative => {
            vec![Posting::debit(from.clone(), magnitude.clone()), Posting::credit(to.clone(), magnitude.clone())]
        }
        _ => vec![Posting::debit(to.clone(), magnitude.clone()), Posting::credit(from.clone(), magnitude.clone())],
    };
    Ok(Transaction::new(date, description, postings))
}

/// Where a schedule's per-period credits land.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ScheduleMode {
    /// Credit the resource itself, taking it out of the balance sheet.
    #[default]
    Direct,
    /// Credit a sibling `accumulated-depreciation` account; the resource
    /// keeps its cost and reports net it against the contra.
    Contra,
}

impl ScheduleMode {
    pub fn keyword(self) -> &'static str {
        match self {
            ScheduleMode::Direct => "direct",
            ScheduleMode::Contra => "contra",
        }
    }
}

impl FromStr for ScheduleMode {
    type Err = LedgerError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(ScheduleMode::Direct),
            "contra" => Ok(ScheduleMode::Contra),
            other => Err(LedgerError::InvalidSchedule(format!("unknown mode `{other}`"))),
        }
    }
}

impl fmt::Display for ScheduleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Spacing between schedule periods. Only calendar years are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Cadence {
    #[default]
    Yearly,
}

impl Cadence {
    /// `start` advanced by `k` steps. Feb 29 clamps to Feb 28.
    pub fn step(self, start: NaiveDate, k: u32) -> Option<NaiveDate> {
        match self {
            Cadence::Yearly => start.checked_add_months(Months::new(12u32.checked_mul(k)?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingSchedule {
    source: AccountPath,
    counterpart: AccountPath,
    total: Amount,
    periods: Vec<(NaiveDate, Amount)>,
    mode: ScheduleMode,
}

impl MatchingSchedule {
    /// A schedule with explicit period fractions. Fractions must be
    /// positive and add up to exactly one; dates must strictly increase.
    pub fn new(
        source: AccountPath,
        counterpart: AccountPath,
        total: Amount,
        periods: Vec<(NaiveDate, Amount)>,
        mode: ScheduleMode,
    ) -> Result<Self> {
        if total.is_zero() {
            return Err(LedgerError::InvalidSchedule("total must be positive".into()));
        }
        if periods.is_empty() {
            return Err(LedgerError::InvalidSchedule("at least one period is required".into()));
        }
        if periods.iter().any(|(_, f)| f.is_zero()) {
            return Err(LedgerError::InvalidSchedule("period fractions must be positive".into()));
        }
        if periods.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(LedgerError::InvalidSchedule("period dates must strictly increase".into()));
        }
        let sum: Amount = periods.iter().map(|(_, f)| f.clone()).sum();
        if sum != Amount::one() {
            return Err(LedgerError::InvalidSchedule(format!("fractions add up to {sum}, not 1")));
        }
        Ok(MatchingSchedule { source, counterpart, total, periods, mode })
    }

    pub fn source(&self) -> &AccountPath {
        &self.source
    }

    pub fn counterpart(&self) -> &AccountPath {
        &self.counterpart
    }

    pub fn total(&self) -> &Amount {
        &self.total
    }

    pub fn periods(&self) -> &[(NaiveDate, Amount)] {
        &self.periods
    }

    pub fn mode(&self) -> ScheduleMode {
        self.mode
    }

    /// Counterpart account for 1-based period `k`.
    pub fn counterpart_account(&self, k: usize) -> Result<AccountPath> {
        self.counterpart.with_suffix(&k.to_string())
    }

    /// The contra account in contra mode.
    pub fn contra_account(&self) -> Result<Option<AccountPath>> {
        match self.mode {
            ScheduleMode::Direct => Ok(None),
            ScheduleMode::Contra => self.source.sibling(CONTRA_ACCOUNT).map(Some),
        }
    }

    /// Every account the schedule posts to besides the source.
    pub fn accounts(&self) -> Result<Vec<AccountPath>> {
        let mut out = (1..=self.periods.len()).map(|k| self.counterpart_account(k)).collect::<Result<Vec<_>>>()?;
        out.extend(self.contra_account()?);
        Ok(out)
    }

    /// Amount moved in each period: `total * fraction`.
    pub fn amounts(&self) -> Vec<(NaiveDate, Amount)> {
        self.periods.iter().map(|(d, f)| (*d, &self.total * f)).collect()
    }

    /// One transaction per period: debit the period's counterpart, credit
    /// the source (direct) or its contra account (contra).
    pub fn emit_transactions(&self) -> Result<Vec<Transaction>> {
        let credited = match self.contra_account()? {
            Some(contra) => contra,
            None => self.source.clone(),
        };
        let n = self.periods.len();
        self.amounts()
            .into_iter()
            .enumerate()
            .map(|(i, (date, amount))| {
                let counterpart = self.counterpart_account(i + 1)?;
                let description = format!("{} matched to {counterpart}, period {} of {n}", self.source, i + 1);
                Ok(Transaction::new(
                    date,
                    description,
                    vec![Posting::debit(counterpart, amount.clone()), Posting::credit(credited.clone(), amount)],
                ))
            })
            .collect()
    }

    /// Resource balance net of its contra account, if any.
    pub fn net_book_value(&self, ledger: &Ledger) -> Result<SignedAmount> {
        let mut net = ledger.aggregate(&self.source)?;
        if let Some(contra) = self.contra_account()? {
            if ledger.chart().contains(&contra) {
                net = net.add(&ledger.aggregate(&contra)?);
            }
        }
        Ok(net.balance())
    }
}

/// Straight-line schedule of `n` equal fractions, period `k` dated
/// `start + k` cadence steps.
pub fn build_schedule(
    source: AccountPath,
    counterpart: AccountPath,
    total: Amount,
    n: u32,
    start: NaiveDate,
    cadence: Cadence,
    mode: ScheduleMode,
) -> Result<MatchingSchedule> {
    if n == 0 {
        return Err(LedgerError::InvalidSchedule("period count must be at least 1".into()));
    }
    let fraction = Amount::ratio(1, u64::from(n));
    let periods = (1..=n)
        .map(|k| {
            cadence
                .step(start, k)
                .map(|d| (d, fraction.clone()))
                .ok_or_else(|| LedgerError::InvalidSchedule("period date out of range".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    MatchingSchedule::new(source, counterpart, total, periods, mode)
}

/// The journal form of a straight-line yearly schedule:
/// `schedule <source> <counterpart> <total> over <n> yearly from <date> mode <mode>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleDirective {
    pub source: AccountPath,
    pub counterpart: AccountPath,
    pub total: Amount,
    pub periods: u32,
    pub start: NaiveDate,
    pub mode: ScheduleMode,
}

impl ScheduleDirective {
    pub fn source(&self) -> &AccountPath {
        &self.source
    }

    pub fn build(&self) -> Result<MatchingSchedule> {
        build_schedule(
            self.source.clone(),
            self.counterpart.clone(),
            self.total.clone(),
            self.periods,
            self.start,
            Cadence::Yearly,
            self.mode,
        )
    }
}
