//! Exact, non-negative quantities of value and their signed counterpart.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Pow, Zero};
use thiserror::Error;

/// Errors raised while reading an amount literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmountError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed amount `{0}`")]
    Malformed(String),
}

/// A non-negative rational quantity, always held in lowest terms.
///
/// Zero is `0/1`. Both decimal literals (`493827.16`) and rational literals
/// (`2/25`) convert exactly.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Amount(Ratio<BigUint>);

impl Amount {
    pub fn zero() -> Self {
        Amount(Ratio::zero())
    }

    pub fn one() -> Self {
        Amount(Ratio::one())
    }

    pub fn from_integer(n: u64) -> Self {
        Amount(Ratio::from_integer(BigUint::from(n)))
    }

    /// Builds `numerator / denominator`, reducing to lowest terms.
    pub fn new(numerator: impl Into<BigUint>, denominator: impl Into<BigUint>) -> Result<Self, AmountError> {
        let denominator = denominator.into();
        if denominator.is_zero() {
            return Err(AmountError::ZeroDenominator);
        }
        Ok(Amount(Ratio::new(numerator.into(), denominator)))
    }

    /// Convenience for literals known to be valid; panics on a zero denominator.
    pub fn ratio(numerator: u64, denominator: u64) -> Self {
        Self::new(numerator, denominator).expect("nonzero denominator")
    }

    pub fn numerator(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `self - other`, or `None` when the result would be negative.
    pub fn checked_sub(&self, other: &Amount) -> Option<Amount> {
        if self >= other {
            Some(Amount(&self.0 - &other.0))
        } else {
            None
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Amount> {
        if self.is_zero() {
            None
        } else {
            Some(Amount(self.0.recip()))
        }
    }

    pub(crate) fn to_big_rational(&self) -> BigRational {
        BigRational::new(
            BigInt::from_biguint(BigSign::Plus, self.numerator().clone()),
            BigInt::from_biguint(BigSign::Plus, self.denominator().clone()),
        )
    }

    /// Renders with a fixed number of fractional digits, rounding half to even.
    pub fn to_decimal_string(&self, places: u32) -> String {
        let scale = BigUint::from(10u32).pow(places);
        let scaled = self.numerator() * &scale;
        let (mut quotient, remainder) = scaled.div_rem(self.denominator());
        let twice = remainder * 2u32;
        match twice.cmp(self.denominator()) {
            Ordering::Greater => quotient += 1u32,
            Ordering::Equal if quotient.is_odd() => quotient += 1u32,
            _ => {}
        }
        let digits = quotient.to_str_radix(10);
        if places == 0 {
            return digits;
        }
        let places = places as usize;
        let padded = format!("{digits:0>width$}", width = places + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - places);
        format!("{int_part}.{frac_part}")
    }

    /// Parses `<digits>`, `<digits>.<digits>` or `<digits>/<digits>`.
    pub fn parse_literal(text: &str) -> Result<Self, AmountError> {
        let malformed = || AmountError::Malformed(text.to_string());
        let all_digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
        if let Some((num, den)) = text.split_once('/') {
            if !all_digits(num) || !all_digits(den) {
                return Err(malformed());
            }
            let num: BigUint = num.parse().map_err(|_| malformed())?;
            let den: BigUint = den.parse().map_err(|_| malformed())?;
            return Amount::new(num, den);
        }
        if let Some((int, frac)) = text.split_once('.') {
            if !all_digits(int) || !all_digits(frac) {
                return Err(malformed());
            }
            let value: BigUint = format!("{int}{frac}").parse().map_err(|_| malformed())?;
            let scale = BigUint::from(10u32).pow(frac.len() as u32);
            return Amount::new(value, scale);
        }
        if !all_digits(text) {
            return Err(malformed());
        }
        let value: BigUint = text.parse().map_err(|_| malformed())?;
        Ok(Amount(Ratio::from_integer(value)))
    }
}

impl Default for Amount {
    fn default() -> Self {
        Amount::zero()
    }
}

impl FromStr for Amount {
    type Err = AmountError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Amount::parse_literal(s)
    }
}

/// Reduced rational form: `7`, `2/5`.
impl fmt::Display for Amount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator().is_one() {
            write!(f, "{}", self.numerator())
        } else {
            write!(f, "{}/{}", self.numerator(), self.denominator())
        }
    }
}

impl fmt::Debug for Amount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<u64> for Amount {
    fn from(n: u64) -> Self {
        Amount::from_integer(n)
    }
}

impl<'a> Add<&'a Amount> for &'a Amount {
    type Output = Amount;
    fn add(self, rhs: &'a Amount) -> Amount {
        Amount(&self.0 + &rhs.0)
    }
}

impl Add for Amount {
    type Output = Amount;
    fn add(self, rhs: Amount) -> Amount {
        Amount(self.0 + rhs.0)
    }
}

impl<'a> Mul<&'a Amount> for &'a Amount {
    type Output = Amount;
    fn mul(self, rhs: &'a Amount) -> Amount {
        Amount(&self.0 * &rhs.0)
    }
}

impl Mul for Amount {
    type Output = Amount;
    fn mul(self, rhs: Amount) -> Amount {
        Amount(self.0 * rhs.0)
    }
}

impl std::iter::Sum for Amount {
    fn sum<I: Iterator<Item = Amount>>(iter: I) -> Amount {
        iter.fold(Amount::zero(), |acc, a| acc + a)
    }
}

/// Direction of a [`SignedAmount`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Zero,
    Negative,
}

/// A net quantity: magnitude plus direction. The sign is `Zero` exactly when
/// the magnitude is zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedAmount {
    sign: Sign,
    magnitude: Amount,
}

impl SignedAmount {
    pub fn zero() -> Self {
        SignedAmount { sign: Sign::Zero, magnitude: Amount::zero() }
    }

    pub fn new(sign: Sign, magnitude: Amount) -> Self {
        if magnitude.is_zero() {
            Self::zero()
        } else {
            let sign = if sign == Sign::Zero { Sign::Positive } else { sign };
            SignedAmount { sign, magnitude }
        }
    }

    pub fn positive(magnitude: Amount) -> Self {
        Self::new(Sign::Positive, magnitude)
    }

    pub fn negative(magnitude: Amount) -> Self {
        Self::new(Sign::Negative, magnitude)
    }

    /// `a - b` for two non-negative amounts.
    pub fn difference(a: &Amount, b: &Amount) -> Self {
        match a.cmp(b) {
            Ordering::Greater => Self::positive(Amount(&a.0 - &b.0)),
            Ordering::Less => Self::negative(Amount(&b.0 - &a.0)),
            Ordering::Equal => Self::zero(),
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn magnitude(&self) -> &Amount {
        &self.magnitude
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn to_big_rational(&self) -> BigRational {
        let r = self.magnitude.to_big_rational();
        if self.sign == Sign::Negative {
            -r
        } else {
            r
        }
    }

    pub fn from_big_rational(r: &BigRational) -> Self {
        let (sign, numer) = r.numer().clone().into_parts();
        let (_, denom) = r.denom().clone().into_parts();
        let magnitude = Amount(Ratio::new(numer, denom));
        match sign {
            BigSign::Minus => Self::negative(magnitude),
            _ => Self::positive(magnitude),
        }
    }

    /// Multiplies by a non-negative scalar.
    pub fn scale(&self, k: &Amount) -> Self {
        Self::new(self.sign, &self.magnitude * k)
    }

    pub fn abs(&self) -> Amount {
        self.magnitude.clone()
    }

    pub fn to_decimal_string(&self, places: u32) -> String {
        let body = self.magnitude.to_decimal_string(places);
        // Rounding can erase a tiny magnitude; never print "-0.00".
        if self.sign == Sign::Negative && body.bytes().any(|b| matches!(b, b'1'..=b'9')) {
            format!("-{body}")
        } else {
            body
        }
    }
}

impl Default for SignedAmount {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Amount> for SignedAmount {
    fn from(a: Amount) -> Self {
        Self::positive(a)
    }
}

impl fmt::Display for SignedAmount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Negative => write!(f, "-{}", self.magnitude),
            _ => write!(f, "{}", self.magnitude),
        }
    }
}

impl fmt::Debug for SignedAmount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Positive => write!(f, "+{}", self.magnitude),
            _ => write!(f, "{self}"),
        }
    }
}

impl PartialOrd for SignedAmount {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedAmount {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_big_rational().cmp(&other.to_big_rational())
    }
}

impl<'a> Add<&'a SignedAmount> for &'a SignedAmount {
    type Output = SignedAmount;
    fn add(self, rhs: &'a SignedAmount) -> SignedAmount {
        use Sign::*;
        match (self.sign, rhs.sign) {
            (Zero, _) => rhs.clone(),
            (_, Zero) => self.clone(),
            (Positive, Positive) => SignedAmount::positive(&self.magnitude + &rhs.magnitude),
            (Negative, Negative) => SignedAmount::negative(&self.magnitude + &rhs.magnitude),
            (Positive, Negative) => SignedAmount::difference(&self.magnitude, &rhs.magnitude),
            (Negative, Positive) => SignedAmount::difference(&rhs.magnitude, &self.magnitude),
        }
    }
}

impl Add for SignedAmount {
    type Output = SignedAmount;
    fn add(self, rhs: SignedAmount) -> SignedAmount {
        &self + &rhs
    }
}

impl Neg for SignedAmount {
    type Output = SignedAmount;
    fn neg(self) -> SignedAmount {
        let sign = match self.sign {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
        };
        SignedAmount { sign, magnitude: self.magnitude }
    }
}

impl<'a> Sub<&'a SignedAmount> for &'a SignedAmount {
    type Output = SignedAmount;
    fn sub(self, rhs: &'a SignedAmount) -> SignedAmount {
        self + &(-rhs.clone())
    }
}

impl Sub for SignedAmount {
    type Output = SignedAmount;
    fn sub(self, rhs: SignedAmount) -> SignedAmount {
        &self - &rhs
    }
}

impl<'a> Div<&'a Amount> for &'a SignedAmount {
    type Output = Option<SignedAmount>;
    fn div(self, rhs: &'a Amount) -> Option<SignedAmount> {
        rhs.recip().map(|r| self.scale(&r))
    }
}

impl std::iter::Sum for SignedAmount {
    fn sum<I: Iterator<Item = SignedAmount>>(iter: I) -> SignedAmount {
        iter.fold(SignedAmount::zero(), |acc, a| acc + a)
    }
}
