//! Text reports over a journal: balance tree, flows, the zero-account
//! equation and schedule listings.
//!
//! Computation is exact throughout; [`RenderOptions`] only affects how the
//! final numbers are printed.

use std::fmt::Write;

use chrono::NaiveDate;

use crate::amount::{Amount, SignedAmount};
use crate::error::{LedgerError, Result};
use crate::journal::{Journal, Ledger, Posting, Transaction};
use crate::parser::serialize_journal;
use crate::taccount::TAccount;
use crate::taxonomy::AccountPath;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NumberForm {
    /// Reduced rationals: `2/5`.
    #[default]
    Rational,
    /// Fixed places, round half to even.
    Decimal(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BasisMode {
    #[default]
    Raw,
    /// Amounts divided by the declared basis.
    PercentOfBasis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RenderOptions {
    pub form: NumberForm,
    pub basis_mode: BasisMode,
    pub show_zero: bool,
}

pub const MAX_DECIMAL_PLACES: u32 = 12;

impl RenderOptions {
    pub fn new(form: NumberForm, basis_mode: BasisMode, show_zero: bool) -> std::result::Result<Self, String> {
        if let NumberForm::Decimal(places) = form {
            if places > MAX_DECIMAL_PLACES {
                return Err(format!("decimal places must be between 0 and {MAX_DECIMAL_PLACES}, got {places}"));
            }
        }
        Ok(RenderOptions { form, basis_mode, show_zero })
    }

    pub fn amount(&self, a: &Amount) -> String {
        match self.form {
            NumberForm::Rational => a.to_string(),
            NumberForm::Decimal(places) => a.to_decimal_string(places),
        }
    }

    pub fn signed(&self, a: &SignedAmount) -> String {
        match self.form {
            NumberForm::Rational => a.to_string(),
            NumberForm::Decimal(places) => a.to_decimal_string(places),
        }
    }

    pub fn taccount(&self, t: &TAccount) -> String {
        format!("({}, {})", self.amount(t.debit()), self.amount(t.credit()))
    }

    /// A fraction of the basis shown as a percentage.
    pub fn percent(&self, fraction: &Amount) -> String {
        format!("{}%", self.amount(&(fraction * &Amount::from(100))))
    }

    /// Balance-report figure: a percentage in percent mode, otherwise the amount.
    fn figure(&self, a: &Amount) -> String {
        match self.basis_mode {
            BasisMode::Raw => self.amount(a),
            BasisMode::PercentOfBasis => self.percent(a),
        }
    }

    fn figure_pair(&self, t: &TAccount) -> String {
        format!("({}, {})", self.figure(t.debit()), self.figure(t.credit()))
    }

    /// Ledger rescaled to fractions of the basis when in percent mode.
    pub fn normalize(&self, journal: &Journal, ledger: Ledger) -> Result<Ledger> {
        match self.basis_mode {
            BasisMode::Raw => Ok(ledger),
            BasisMode::PercentOfBasis => Ok(ledger.scaled(&basis_unit(journal)?)),
        }
    }
}

/// `1 / basis`.
fn basis_unit(journal: &Journal) -> Result<Amount> {
    journal.basis().and_then(Amount::recip).ok_or(LedgerError::MissingBasis)
}

fn stock(journal: &Journal, at: Option<NaiveDate>) -> Result<Ledger> {
    match at {
        Some(cutoff) => journal.stock_at(cutoff),
        None => Ok(journal.ledger()?.reduced()),
    }
}

fn is_quiet(ledger: &Ledger, path: &AccountPath) -> Result<bool> {
    for leaf in ledger.chart().leaves_under(path)? {
        if !ledger.balance_of(leaf).is_zero() {
            return Ok(false);
        }
    }
    Ok(ledger.aggregate(path)?.is_zero())
}

/// `("dr", figure)` / `("cr", figure)`, or an empty side for zero.
fn side_figure(t: &TAccount, figure: impl Fn(&Amount) -> String) -> (String, String) {
    match t.side() {
        Some((side, amount)) => (side.keyword().to_string(), figure(&amount)),
        None => (String::new(), figure(&Amount::zero())),
    }
}

fn columns(rows: &[(String, String, String)]) -> String {
    let name_width = rows.iter().map(|r| r.0.chars().count()).max().unwrap_or(0);
    let figure_width = rows.iter().map(|r| r.2.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (name, side, figure) in rows {
        let line = format!("{name:<name_width$}  {side:<2} {figure:>figure_width$}");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Reduced stock at `at` (or after everything), as an indented tree with
/// interior nodes showing their subtree totals.
pub fn balance_report(journal: &Journal, at: Option<NaiveDate>, options: &RenderOptions) -> Result<String> {
    let ledger = options.normalize(journal, stock(journal, at)?)?;
    let mut out = String::new();
    let when = at.map_or_else(|| "end of journal".to_string(), |d| d.format("%Y-%m-%d").to_string());
    match (options.basis_mode, journal.basis()) {
        (BasisMode::PercentOfBasis, Some(basis)) => {
            let _ = writeln!(out, "balance at {when}, percent of basis {}", exact_decimal(basis));
        }
        _ => {
            let _ = writeln!(out, "balance at {when}");
        }
    }
    let mut rows = Vec::new();
    for path in ledger.chart().walk() {
        if !options.show_zero && is_quiet(&ledger, path)? {
            continue;
        }
        let indent = "  ".repeat(path.depth() - 1);
        let (side, figure) = side_figure(&ledger.aggregate(path)?, |a| options.figure(a));
        rows.push((format!("{indent}{}", path.leaf_name()), side, figure));
    }
    out.push_str(&columns(&rows));
    let total = ledger.total();
    let _ = writeln!(out, "root {} {}", options.figure_pair(&total), zero_mark(&total));
    Ok(out)
}

/// Shortest exact decimal for `a`, or the rational if it does not terminate
/// within the supported places.
fn exact_decimal(a: &Amount) -> String {
    (0..=MAX_DECIMAL_PLACES)
        .map(|p| a.to_decimal_string(p))
        .find(|s| s.parse::<Amount>().as_ref() == Ok(a))
        .unwrap_or_else(|| a.to_string())
}

fn zero_mark(t: &TAccount) -> &'static str {
    if t.is_zero() {
        "≡ 0"
    } else {
        "≢ 0 (UNBALANCED)"
    }
}

/// Per-account net flow over `(from, to]`, with the zero-sum footer. Percent
/// mode prints plain fractions of the basis.
pub fn flows_report(journal: &Journal, from: NaiveDate, to: NaiveDate, options: &RenderOptions) -> Result<String> {
    let flows = options.normalize(journal, journal.flow_between(from, to)?)?;
    let mut out = String::new();
    let _ = writeln!(out, "flows after {} through {}", from.format("%Y-%m-%d"), to.format("%Y-%m-%d"));
    let mut rows = Vec::new();
    for leaf in flows.chart().leaves() {
        let t = flows.balance_of(leaf);
        if !options.show_zero && t.is_zero() {
            continue;
        }
        let (side, figure) = side_figure(&t, |a| options.amount(a));
        rows.push((leaf.to_string(), side, figure));
    }
    out.push_str(&columns(&rows));
    let total = flows.total();
    let _ = writeln!(out, "total {} {}", options.taccount(&total), zero_mark(&total));
    Ok(out)
}

/// `0 = (d1, c1)_name1 + ...` over reduced balances, followed by the check
/// that the terms add to a zero T-account. Percent mode prints plain
/// fractions of the basis.
pub fn equation_report(journal: &Journal, at: Option<NaiveDate>, options: &RenderOptions) -> Result<String> {
    let ledger = options.normalize(journal, stock(journal, at)?)?;
    let terms: Vec<(&AccountPath, TAccount)> = ledger
        .chart()
        .leaves()
        .into_iter()
        .map(|leaf| (leaf, ledger.balance_of(leaf)))
        .filter(|(_, t)| options.show_zero || !t.is_zero())
        .collect();
    let label = |path: &AccountPath| -> String {
        let clashes = terms.iter().filter(|(p, _)| p.leaf_name() == path.leaf_name()).count();
        if clashes > 1 {
            path.to_string()
        } else {
            path.leaf_name().to_string()
        }
    };
    let rendered: Vec<String> = terms.iter().map(|(p, t)| format!("{}_{}", options.taccount(t), label(p))).collect();
    let sum: TAccount = terms.iter().map(|(_, t)| t).sum();
    let mut out = String::new();
    if rendered.is_empty() {
        out.push_str("0 = (0, 0)\n");
    } else {
        let _ = writeln!(out, "0 = {}", rendered.join(" + "));
    }
    let _ = writeln!(out, "sum = {} {}", options.taccount(&sum), zero_mark(&sum));
    Ok(out)
}

/// The transactions every schedule emits, as pasteable journal text.
pub fn schedule_report(journal: &Journal, options: &RenderOptions) -> Result<String> {
    let scale = match options.basis_mode {
        BasisMode::Raw => None,
        BasisMode::PercentOfBasis => Some(basis_unit(journal)?),
    };
    let mut out = String::new();
    for directive in journal.schedules() {
        let schedule = directive.build()?;
        let total = match &scale {
            Some(k) => directive.total.clone() * k.clone(),
            None => directive.total.clone(),
        };
        if !out.is_empty() {
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "; {} over {} yearly period(s) from {}, mode {}, total {}{}",
            directive.source,
            directive.periods,
            directive.start.format("%Y-%m-%d"),
            directive.mode,
            options.amount(&total),
            if scale.is_some() { " (fraction of basis)" } else { "" }
        );
        let mut listing = Journal::default();
        for tx in schedule.emit_transactions()? {
            let tx = match &scale {
                Some(k) => Transaction::new(
                    tx.date(),
                    tx.description(),
                    tx.postings()
                        .iter()
                        .map(|p| Posting::new(p.account().clone(), p.entry().scale(k)))
                        .collect::<Result<Vec<_>>>()?,
                ),
                None => tx,
            };
            listing.push(tx);
        }
        let text = serialize_journal(&listing);
        match options.form {
            NumberForm::Rational => out.push_str(&text),
            NumberForm::Decimal(_) => {
                for tx in listing.transactions() {
                    let _ = writeln!(out, "{} \"{}\"", tx.date().format("%Y-%m-%d"), tx.description());
                    for p in tx.postings() {
                        let (side, amount) = p.side_amount();
                        let _ = writeln!(out, "    {} {} {}", p.account(), side.keyword(), options.amount(amount));
                    }
                }
            }
        }
    }
    Ok(out)
}
