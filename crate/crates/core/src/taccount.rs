//! The T-account group.
//!
//! A T-account is an ordered pair `(debit, credit)` of non-negative amounts.
//! Pairs add componentwise, and two pairs are equivalent when their
//! cross-sums agree: `(a, b) ~ (c, d)` iff `a + d = b + c`. Every pair
//! `(x, x)` stands for the neutral element, and the class of `(a, b)` has
//! inverse `(b, a)`. Each class has exactly one representative with a zero
//! component, which is what [`TAccount::reduce`] returns.

use std::fmt;
use std::ops::{Add, AddAssign, Neg};

use crate::amount::{Amount, SignedAmount};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TAccount {
    debit: Amount,
    credit: Amount,
}

/// Which column of a T-account carries the reduced balance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Debit,
    Credit,
}

impl Side {
    pub fn keyword(self) -> &'static str {
        match self {
            Side::Debit => "dr",
            Side::Credit => "cr",
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Debit => Side::Credit,
            Side::Credit => Side::Debit,
        }
    }
}

impl TAccount {
    pub fn new(debit: Amount, credit: Amount) -> Self {
        TAccount { debit, credit }
    }

    /// The canonical zero, `(0, 0)`.
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn debit_of(amount: Amount) -> Self {
        TAccount { debit: amount, credit: Amount::zero() }
    }

    pub fn credit_of(amount: Amount) -> Self {
        TAccount { debit: Amount::zero(), credit: amount }
    }

    /// A single-sided pair carrying `amount` on `side`.
    pub fn on_side(side: Side, amount: Amount) -> Self {
        match side {
            Side::Debit => Self::debit_of(amount),
            Side::Credit => Self::credit_of(amount),
        }
    }

    pub fn debit(&self) -> &Amount {
        &self.debit
    }

    pub fn credit(&self) -> &Amount {
        &self.credit
    }

    /// Componentwise sum: debits with debits, credits with credits.
    pub fn add(&self, other: &TAccount) -> TAccount {
        TAccount { debit: &self.debit + &other.debit, credit: &self.credit + &other.credit }
    }

    /// Swaps the columns. `a.add(&a.inverse())` is always a zero representative.
    pub fn inverse(&self) -> TAccount {
        TAccount { debit: self.credit.clone(), credit: self.debit.clone() }
    }

    /// Cross-sum equality.
    pub fn equivalent(&self, other: &TAccount) -> bool {
        &self.debit + &other.credit == &other.debit + &self.credit
    }

    /// Subtracts `min(debit, credit)` from both columns.
    pub fn reduce(&self) -> TAccount {
        let common = (&self.debit).min(&self.credit);
        TAccount {
            debit: self.debit.checked_sub(common).expect("min is not larger"),
            credit: self.credit.checked_sub(common).expect("min is not larger"),
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.debit.is_zero() || self.credit.is_zero()
    }

    /// `debit - credit`.
    pub fn balance(&self) -> SignedAmount {
        SignedAmount::difference(&self.debit, &self.credit)
    }

    /// True for every representative `(x, x)` of the neutral element.
    pub fn is_zero(&self) -> bool {
        self.debit == self.credit
    }

    /// Multiplies both columns by a non-negative scalar.
    pub fn scale(&self, k: &Amount) -> TAccount {
        TAccount { debit: &self.debit * k, credit: &self.credit * k }
    }

    /// The side and magnitude of the reduced form, or `None` for zero.
    pub fn side(&self) -> Option<(Side, Amount)> {
        let r = self.reduce();
        if !r.debit.is_zero() {
            Some((Side::Debit, r.debit))
        } else if !r.credit.is_zero() {
            Some((Side::Credit, r.credit))
        } else {
            None
        }
    }

    /// The canonical pair whose balance is `net`.
    pub fn from_balance(net: &SignedAmount) -> TAccount {
        match net.sign() {
            crate::amount::Sign::Negative => Self::credit_of(net.abs()),
            _ => Self::debit_of(net.abs()),
        }
    }
}

impl fmt::Display for TAccount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.debit, self.credit)
    }
}

impl fmt::Debug for TAccount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a TAccount> for &'a TAccount {
    type Output = TAccount;
    fn add(self, rhs: &'a TAccount) -> TAccount {
        TAccount::add(self, rhs)
    }
}

impl AddAssign<&TAccount> for TAccount {
    fn add_assign(&mut self, rhs: &TAccount) {
        *self = TAccount::add(self, rhs);
    }
}

impl Neg for TAccount {
    type Output = TAccount;
    fn neg(self) -> TAccount {
        TAccount { debit: self.credit, credit: self.debit }
    }
}

impl std::iter::Sum for TAccount {
    fn sum<I: Iterator<Item = TAccount>>(iter: I) -> TAccount {
        iter.fold(TAccount::zero(), |mut acc, t| {
            acc += &t;
            acc
        })
    }
}

impl<'a> std::iter::Sum<&'a TAccount> for TAccount {
    fn sum<I: Iterator<Item = &'a TAccount>>(iter: I) -> TAccount {
        iter.fold(TAccount::zero(), |mut acc, t| {
            acc += t;
            acc
        })
    }
}
