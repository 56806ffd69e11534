//! Transactions, posting, and the two ways of reading a journal: the stock
//! of every account at a cutoff date, and the flow through every account
//! over an interval.
//!
//! A transaction is a set of postings adding up to a zero T-account. Since
//! the opening state is itself a transaction, every stock is a sum of zeros
//! and is therefore zero; so is every flow. `stock(t0) + flow(t0, t1)` is
//! equivalent to `stock(t1)` account by account.

use std::borrow::Cow;

use chrono::NaiveDate;
use indexmap::IndexMap;

use crate::amount::{Amount, SignedAmount};
use crate::error::{LedgerError, Result};
use crate::matching::ScheduleDirective;
use crate::taccount::{Side, TAccount};
use crate::taxonomy::{AccountPath, Chart};

/// One line of a transaction: a single-sided entry against one account.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Posting {
    account: AccountPath,
    entry: TAccount,
}

impl Posting {
    /// Rejects entries with amounts in both columns.
    pub fn new(account: AccountPath, entry: TAccount) -> Result<Self> {
        if !entry.is_reduced() {
            return Err(LedgerError::TwoSidedPosting(account));
        }
        Ok(Posting { account, entry })
    }

    pub fn debit(account: AccountPath, amount: Amount) -> Self {
        Posting { account, entry: TAccount::debit_of(amount) }
    }

    pub fn credit(account: AccountPath, amount: Amount) -> Self {
        Posting { account, entry: TAccount::credit_of(amount) }
    }

    pub fn on_side(account: AccountPath, side: Side, amount: Amount) -> Self {
        Posting { account, entry: TAccount::on_side(side, amount) }
    }

    pub fn account(&self) -> &AccountPath {
        &self.account
    }

    pub fn entry(&self) -> &TAccount {
        &self.entry
    }

    /// Side and amount as written; a zero entry reads as a zero debit.
    pub fn side_amount(&self) -> (Side, &Amount) {
        if self.entry.credit().is_zero() {
            (Side::Debit, self.entry.debit())
        } else {
            (Side::Credit, self.entry.credit())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    date: NaiveDate,
    description: String,
    postings: Vec<Posting>,
}

impl Transaction {
    pub fn new(date: NaiveDate, description: impl Into<String>, postings: Vec<Posting>) -> Self {
        Transaction { date, description: description.into(), postings }
    }

    pub fn date(&self) -> NaiveDate {
        self.date
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn postings(&self) -> &[Posting] {
        &self.postings
    }

    /// Componentwise sum of the posting entries.
    pub fn sum(&self) -> TAccount {
        self.postings.iter().map(Posting::entry).sum()
    }

    /// Ok when there are at least two postings and they add to zero.
    /// The imbalance residual is debit minus credit of the sum.
    pub fn validate(&self) -> Result<()> {
        if self.postings.len() < 2 {
            return Err(LedgerError::TooFewPostings(self.postings.len()));
        }
        let sum = self.sum();
        if !sum.is_zero() {
            return Err(LedgerError::Imbalance { residual: sum.balance() });
        }
        Ok(())
    }
}

/// Free-function form of [`Transaction::validate`].
pub fn validate_transaction(tx: &Transaction) -> Result<()> {
    tx.validate()
}

/// What period a [`Ledger`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Everything posted so far.
    Unbounded,
    /// Stock: transactions dated on or before the cutoff.
    AsOf(NaiveDate),
    /// Flow: transactions dated in `(from, to]`.
    Between(NaiveDate, NaiveDate),
}

/// Per-account T-accounts over a chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ledger {
    chart: Chart,
    pub(crate) balances: IndexMap<AccountPath, TAccount>,
    scope: Scope,
}

impl Ledger {
    /// Every leaf of `chart` at `(0, 0)`.
    pub fn new(chart: Chart) -> Self {
        let balances = chart.leaves().into_iter().map(|p| (p.clone(), TAccount::zero())).collect();
        Ledger { chart, balances, scope: Scope::Unbounded }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub(crate) fn chart_mut(&mut self) -> &mut Chart {
        &mut self.chart
    }

    pub fn scope(&self) -> Scope {
        self.scope
    }

    pub fn with_scope(mut self, scope: Scope) -> Self {
        self.scope = scope;
        self
    }

    /// The T-account held directly by `path`; `(0, 0)` if none.
    pub fn balance_of(&self, path: &AccountPath) -> TAccount {
        self.balances.get(path).cloned().unwrap_or_default()
    }

    /// Leaf balances in posting-slot order.
    pub fn balances(&self) -> impl Iterator<Item = (&AccountPath, &TAccount)> {
        self.balances.iter()
    }

    pub(crate) fn set_balance(&mut self, path: AccountPath, t: TAccount) {
        self.balances.insert(path, t);
    }

    pub(crate) fn remove_balance(&mut self, path: &AccountPath) {
        self.balances.shift_remove(path);
    }

    /// Adds every posting of `tx` to its account. Nothing changes on error.
    pub fn post(&mut self, tx: &Transaction) -> Result<()> {
        tx.validate()?;
        for posting in tx.postings() {
            if !self.chart.contains(&posting.account) {
                return Err(LedgerError::UnknownAccount(posting.account.clone()));
            }
            if !self.chart.is_leaf(&posting.account) {
                return Err(LedgerError::NonLeafPosting(posting.account.clone()));
            }
        }
        for posting in tx.postings() {
            *self.balances.entry(posting.account.clone()).or_default() += &posting.entry;
        }
        Ok(())
    }

    /// Same ledger with every balance replaced by its canonical form.
    pub fn reduced(&self) -> Ledger {
        Ledger {
            chart: self.chart.clone(),
            balances: self.balances.iter().map(|(p, t)| (p.clone(), t.reduce())).collect(),
            scope: self.scope,
        }
    }

    /// Every balance multiplied by `k` (used to express amounts as fractions of a basis).
    pub fn scaled(&self, k: &Amount) -> Ledger {
        Ledger {
            chart: self.chart.clone(),
            balances: self.balances.iter().map(|(p, t)| (p.clone(), t.scale(k))).collect(),
            scope: self.scope,
        }
    }
}

/// A chart, an optional normalization basis, dated transactions and
/// matching schedules.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Journal {
    chart: Chart,
    basis: Option<Amount>,
    transactions: Vec<Transaction>,
    schedules: Vec<ScheduleDirective>,
}

impl Journal {
    pub fn new(chart: Chart) -> Self {
        Journal { chart, ..Default::default() }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn chart_mut(&mut self) -> &mut Chart {
        &mut self.chart
    }

    pub fn basis(&self) -> Option<&Amount> {
        self.basis.as_ref()
    }

    pub fn set_basis(&mut self, basis: Option<Amount>) {
        self.basis = basis;
    }

    /// Explicit transactions, sorted by date with ties in insertion order.
    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn schedules(&self) -> &[ScheduleDirective] {
        &self.schedules
    }

    /// Inserts after every transaction dated on or before `tx`.
    pub fn push(&mut self, tx: Transaction) {
        let at = self.transactions.partition_point(|t| t.date <= tx.date);
        self.transactions.insert(at, tx);
    }

    /// Adds a schedule and declares the accounts its transactions use.
    pub fn add_schedule(&mut self, directive: ScheduleDirective) -> Result<()> {
        let schedule = directive.build()?;
        if !self.chart.contains(directive.source()) {
            return Err(LedgerError::UnknownAccount(directive.source().clone()));
        }
        if let Some(contra) = schedule.contra_account()? {
            let clash = self.schedules.iter().any(|other| {
                other.build().ok().and_then(|s| s.contra_account().ok().flatten()).as_ref() == Some(&contra)
            });
            if clash {
                return Err(LedgerError::InvalidSchedule(format!(
                    "contra account `{contra}` is already used by another schedule"
                )));
            }
        }
        for account in schedule.accounts()? {
            self.chart.ensure(&account);
        }
        self.schedules.push(directive);
        Ok(())
    }

    /// Explicit transactions plus everything the schedules emit, in date
    /// order. Emitted transactions follow explicit ones on the same date.
    pub fn entries(&self) -> Vec<Cow<'_, Transaction>> {
        let mut all: Vec<Cow<'_, Transaction>> = self.transactions.iter().map(Cow::Borrowed).collect();
        for directive in &self.schedules {
            if let Ok(schedule) = directive.build() {
                if let Ok(txs) = schedule.emit_transactions() {
                    all.extend(txs.into_iter().map(Cow::Owned));
                }
            }
        }
        all.sort_by_key(|t| t.date);
        all
    }

    /// Last date in the effective history.
    pub fn last_date(&self) -> Option<NaiveDate> {
        self.entries().iter().map(|t| t.date).max()
    }

    fn fold<F>(&self, include: F) -> Result<Ledger>
    where
        F: Fn(NaiveDate) -> bool,
    {
        let mut ledger = Ledger::new(self.chart.clone());
        for (index, tx) in self.entries().iter().enumerate() {
            if include(tx.date) {
                ledger.post(tx).map_err(|e| LedgerError::AtTransaction {
                    index,
                    date: tx.date,
                    description: tx.description.clone(),
                    source: Box::new(e),
                })?;
            }
        }
        Ok(ledger)
    }

    /// Raw posted balances (not reduced) for every transaction dated on or
    /// before `cutoff`.
    pub fn ledger_at(&self, cutoff: NaiveDate) -> Result<Ledger> {
        Ok(self.fold(|d| d <= cutoff)?.with_scope(Scope::AsOf(cutoff)))
    }

    /// The stock view at `cutoff` (inclusive), every balance reduced.
    pub fn stock_at(&self, cutoff: NaiveDate) -> Result<Ledger> {
        Ok(self.ledger_at(cutoff)?.reduced())
    }

    /// The whole history, raw.
    pub fn ledger(&self) -> Result<Ledger> {
        self.fold(|_| true)
    }

    /// Net postings per account for transactions in `(from, to]`.
    pub fn flow_between(&self, from: NaiveDate, to: NaiveDate) -> Result<Ledger> {
        if from > to {
            return Err(LedgerError::InvertedInterval { from, to });
        }
        Ok(self.fold(|d| from < d && d <= to)?.with_scope(Scope::Between(from, to)))
    }

    /// Checks `stock(from) + flow(from, to) ~ stock(to)` at every node of
    /// the chart.
    pub fn reconcile(&self, from: NaiveDate, to: NaiveDate) -> Result<Reconciliation> {
        let flows = self.flow_between(from, to)?;
        let opening = self.stock_at(from)?;
        let closing = self.stock_at(to)?;
        let mut violations = Vec::new();
        let nodes = self.chart.walk();
        for node in &nodes {
            let start = opening.aggregate(node)?;
            let flow = flows.aggregate(node)?;
            let end = closing.aggregate(node)?;
            if !start.add(&flow).equivalent(&end) {
                violations.push(ReconcileViolation { account: (*node).clone(), opening: start, flow, closing: end });
            }
        }
        Ok(Reconciliation { from, to, accounts_checked: nodes.len(), flow_total: flows.total(), violations })
    }

    /// Aggregates flows under `nominal_roots` into net income, positive
    /// when credits exceed debits.
    pub fn income_report(&self, from: NaiveDate, to: NaiveDate, nominal_roots: &[AccountPath]) -> Result<IncomeReport> {
        for root in nominal_roots {
            if !self.chart.contains(root) {
                return Err(LedgerError::UnknownRoot(root.clone()));
            }
        }
        let flows = self.flow_between(from, to)?;
        let mut by_root = Vec::with_capacity(nominal_roots.len());
        for root in nominal_roots {
            by_root.push((root.clone(), flows.aggregate(root)?));
        }
        let nominal: TAccount = by_root.iter().map(|(_, t)| t).sum();
        let net_income = -nominal.balance();
        Ok(IncomeReport { from, to, by_root, nominal, net_income })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconcileViolation {
    pub account: AccountPath,
    pub opening: TAccount,
    pub flow: TAccount,
    pub closing: TAccount,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reconciliation {
    pub from: NaiveDate,
    pub to: NaiveDate,
    pub accounts_checked: usize,
    /// Sum of all flows; always a zero representative for a valid journal.
    pub flow_total: TAccount,
    pub violations: Vec<ReconcileViolation>,
}

impl Reconciliation {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty() && self.flow_total.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncomeReport {
    pub from: NaiveDate,
    pub to: NaiveDate,
    pub by_root: Vec<(AccountPath, TAccount)>,
    pub nominal: TAccount,
    pub net_income: SignedAmount,
}

/// A transaction that empties every nominal leaf of `flows` into `equity`.
///
/// Returns `None` when the nominal accounts are already at zero.
pub fn closing_transaction(
    flows: &Ledger,
    nominal_roots: &[AccountPath],
    equity: &AccountPath,
    date: NaiveDate,
    description: &str,
) -> Result<Option<Transaction>> {
    let mut postings = Vec::new();
    for root in nominal_roots {
        for leaf in flows.chart().leaves_under(root).map_err(|_| LedgerError::UnknownRoot(root.clone()))? {
            if let Some((side, amount)) = flows.balance_of(leaf).side() {
                postings.push(Posting::on_side(leaf.clone(), side.opposite(), amount));
            }
        }
    }
    if postings.is_empty() {
        return Ok(None);
    }
    let cleared: TAccount = postings.iter().map(Posting::entry).sum();
    if let Some((side, amount)) = cleared.side() {
        postings.push(Posting::on_side(equity.clone(), side.opposite(), amount));
    }
    Ok(Some(Transaction::new(date, description, postings)))
}
