//! Random journals for the property and fuzz suites.
//!
//! A `RawJournal` holds plain integers and strings. It can be turned into a
//! library [`Journal`] or into journal text written by hand here, and the
//! oracles read the raw data directly so they never share arithmetic with
//! the code under test.
#![allow(dead_code)]

use std::collections::HashMap;

use chrono::{Days, NaiveDate};
use num_bigint::BigInt;
use num_rational::BigRational;
use pacioli::{AccountPath, Amount, Chart, Journal, Posting, ScheduleDirective, ScheduleMode, Transaction};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

const ROOTS: [&str; 5] = ["assets", "liabilities", "equity", "income", "expenses"];
const WORDS: [&str; 12] =
    ["cash", "bank", "stock", "loan", "rent", "wages", "sales", "tax", "fees", "plant", "notes", "misc"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RawAmount {
    pub num: u64,
    pub den: u64,
}

impl RawAmount {
    pub fn rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    pub fn amount(self) -> Amount {
        Amount::ratio(self.num, self.den)
    }
}

#[derive(Debug, Clone)]
pub struct RawPosting {
    pub account: String,
    pub debit: bool,
    pub amount: RawAmount,
}

#[derive(Debug, Clone)]
pub struct RawTx {
    pub date: NaiveDate,
    pub description: String,
    pub postings: Vec<RawPosting>,
}

#[derive(Debug, Clone)]
pub struct RawSchedule {
    pub source: String,
    pub counterpart: String,
    pub total: RawAmount,
    pub periods: u32,
    pub start: NaiveDate,
    pub contra: bool,
}

#[derive(Debug, Clone)]
pub struct RawJournal {
    pub accounts: Vec<String>,
    pub basis: Option<RawAmount>,
    pub transactions: Vec<RawTx>,
    pub schedule: Option<RawSchedule>,
}

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_accounts: usize,
    pub max_transactions: usize,
    pub max_numerator: u64,
    /// Denominators are drawn from this set; `None` means uniform in
    /// `1..=max_denominator`.
    pub denominators: Option<&'static [u64]>,
    pub max_denominator: u64,
    pub schedules: bool,
}

/// Denominators that show up in real books: cents, mills, halves through
/// twelfths (monthly and quarterly splits).
pub const LEDGER_DENOMINATORS: [u64; 12] = [1, 2, 3, 4, 5, 6, 8, 10, 12, 25, 100, 1000];

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_accounts: 50,
            max_transactions: 200,
            max_numerator: 1_000_000,
            denominators: Some(&LEDGER_DENOMINATORS),
            max_denominator: 1_000,
            schedules: false,
        }
    }
}

fn random_amount(rng: &mut TestRng, limits: &Limits) -> RawAmount {
    let den = match limits.denominators {
        Some(set) => *set.choose(rng).unwrap(),
        None => rng.gen_range(1..=limits.max_denominator),
    };
    RawAmount { num: rng.gen_range(1..=limits.max_numerator), den }
}

/// Leaf accounts of depth 2 or 3 under the five usual roots. No path is a
/// prefix of another, so every generated account is a leaf.
fn random_accounts(rng: &mut TestRng, count: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(count);
    let mut serial = 0;
    while out.len() < count {
        serial += 1;
        let root = ROOTS.choose(rng).unwrap();
        let word = WORDS.choose(rng).unwrap();
        let path =
            if rng.gen_bool(0.3) { format!("{root}:g{serial}:{word}") } else { format!("{root}:{word}{serial}") };
        out.push(path);
    }
    out
}

fn random_description(rng: &mut TestRng, i: usize) -> String {
    let pool = ["sale", "purchase", "payroll", "transfer", "accrual", "adjust ; not a comment", "vendor: ACME"];
    format!("{} {i}", pool.choose(rng).unwrap())
}

/// Balanced postings: a few debits, and credits that split the debit total
/// by random integer weights, so the credit amounts stay exact.
fn random_postings(rng: &mut TestRng, accounts: &[String], limits: &Limits) -> Vec<RawPosting> {
    let debits = rng.gen_range(1..=3);
    let credits = rng.gen_range(1..=3);
    let mut postings = Vec::new();
    let mut total = BigRational::from_integer(0.into());
    for _ in 0..debits {
        let amount = random_amount(rng, limits);
        total += amount.rational();
        postings.push(RawPosting { account: accounts.choose(rng).unwrap().clone(), debit: true, amount });
    }
    let weights: Vec<u64> = (0..credits).map(|_| rng.gen_range(1..=5)).collect();
    let weight_sum: u64 = weights.iter().sum();
    for w in weights {
        let share = &total * BigRational::new(BigInt::from(w), BigInt::from(weight_sum));
        let num = share.numer().try_into().expect("numerator fits in u64");
        let den = share.denom().try_into().expect("denominator fits in u64");
        postings.push(RawPosting {
            account: accounts.choose(rng).unwrap().clone(),
            debit: false,
            amount: RawAmount { num, den },
        });
    }
    postings.shuffle(rng);
    postings
}

pub fn random_journal(rng: &mut TestRng, limits: &Limits) -> RawJournal {
    let account_count = rng.gen_range(2..=limits.max_accounts.max(2));
    let accounts = random_accounts(rng, account_count);
    let tx_count = rng.gen_range(0..=limits.max_transactions);
    let origin = NaiveDate::from_ymd_opt(2020, 1, 1).unwrap();
    let mut dates: Vec<NaiveDate> =
        (0..tx_count).map(|_| origin.checked_add_days(Days::new(rng.gen_range(0..1500))).unwrap()).collect();
    dates.sort();
    let transactions = dates
        .into_iter()
        .enumerate()
        .map(|(i, date)| RawTx {
            date,
            description: random_description(rng, i),
            postings: random_postings(rng, &accounts, limits),
        })
        .collect();
    let basis = rng.gen_bool(0.5).then(|| random_amount(rng, limits));
    let schedule = (limits.schedules && rng.gen_bool(0.4)).then(|| RawSchedule {
        source: accounts.choose(rng).unwrap().clone(),
        counterpart: format!("expenses:matched{}", rng.gen_range(0..100)),
        total: random_amount(rng, limits),
        periods: rng.gen_range(1..=6),
        start: origin.checked_add_days(Days::new(rng.gen_range(0..1500))).unwrap(),
        contra: rng.gen_bool(0.5),
    });
    RawJournal { accounts, basis, transactions, schedule }
}

pub fn path(s: &str) -> AccountPath {
    s.parse().expect("generated path is valid")
}

impl RawTx {
    pub fn transaction(&self) -> Transaction {
        let postings = self
            .postings
            .iter()
            .map(|p| {
                if p.debit {
                    Posting::debit(path(&p.account), p.amount.amount())
                } else {
                    Posting::credit(path(&p.account), p.amount.amount())
                }
            })
            .collect();
        Transaction::new(self.date, self.description.clone(), postings)
    }
}

impl RawJournal {
    pub fn journal(&self) -> Journal {
        let mut chart = Chart::default();
        for a in &self.accounts {
            chart.declare(&path(a)).expect("generated accounts are distinct");
        }
        let mut journal = Journal::new(chart);
        journal.set_basis(self.basis.map(RawAmount::amount));
        for tx in &self.transactions {
            journal.push(tx.transaction());
        }
        if let Some(s) = &self.schedule {
            journal
                .add_schedule(ScheduleDirective {
                    source: path(&s.source),
                    counterpart: path(&s.counterpart),
                    total: s.total.amount(),
                    periods: s.periods,
                    start: s.start,
                    mode: if s.contra { ScheduleMode::Contra } else { ScheduleMode::Direct },
                })
                .expect("generated schedule is valid");
        }
        journal
    }

    /// Journal text written independently of the library serializer, with
    /// varied spellings: `debit`/`credit`, tabs, comments, CRLF.
    pub fn text(&self, rng: &mut TestRng) -> String {
        let nl = if rng.gen_bool(0.2) { "\r\n" } else { "\n" };
        let mut out = String::new();
        if let Some(b) = self.basis {
            out.push_str(&format!("basis {}/{}{nl}", b.num, b.den));
        }
        for a in &self.accounts {
            out.push_str(&format!("account {a}"));
            if rng.gen_bool(0.1) {
                out.push_str(" ; declared");
            }
            out.push_str(nl);
        }
        if let Some(s) = &self.schedule {
            out.push_str(&format!(
                "schedule {} {} {}/{} over {} yearly from {} mode {}{nl}",
                s.source,
                s.counterpart,
                s.total.num,
                s.total.den,
                s.periods,
                s.start.format("%Y-%m-%d"),
                if s.contra { "contra" } else { "direct" }
            ));
        }
        for tx in &self.transactions {
            out.push_str(nl);
            out.push_str(&format!("{} \"{}\"{nl}", tx.date.format("%Y-%m-%d"), tx.description));
            for p in &tx.postings {
                let indent = if rng.gen_bool(0.2) { "\t" } else { "  " };
                let side = match (p.debit, rng.gen_bool(0.2)) {
                    (true, false) => "dr",
                    (true, true) => "debit",
                    (false, false) => "cr",
                    (false, true) => "credit",
                };
                let amount = if p.amount.den == 1 && rng.gen_bool(0.5) {
                    p.amount.num.to_string()
                } else {
                    format!("{}/{}", p.amount.num, p.amount.den)
                };
                out.push_str(&format!("{indent}{} {side} {amount}{nl}", p.account));
            }
        }
        out
    }
}

/// One signed rational per account: debits add, credits subtract.
#[derive(Debug, Default, Clone)]
pub struct SignedOracle {
    pub balances: HashMap<String, BigRational>,
}

impl SignedOracle {
    pub fn post(&mut self, tx: &RawTx) {
        for p in &tx.postings {
            let entry = self.balances.entry(p.account.clone()).or_insert_with(|| BigRational::from_integer(0.into()));
            if p.debit {
                *entry += p.amount.rational();
            } else {
                *entry -= p.amount.rational();
            }
        }
    }

    pub fn balance(&self, account: &str) -> BigRational {
        self.balances.get(account).cloned().unwrap_or_else(|| BigRational::from_integer(0.into()))
    }

    pub fn total(&self) -> BigRational {
        self.balances.values().sum()
    }
}
