//! Arbitrary precision rational numbers.
//!
//! A [`Rational`] is always stored in lowest terms with a strictly positive
//! denominator, so structural equality is numeric equality and zero is `0/1`.
//!
//! Addition and multiplication follow Henrici's formulations: the gcd steps are
//! taken against the smaller operands wherever possible. Powers of partial sums
//! quickly reach hundreds of thousands of bits, and a gcd between two such
//! numbers dominates everything else, so avoiding them matters.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    numer: BigInt,
    denom: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as a rational: {reason}")]
pub struct ParseRationalError {
    input: String,
    reason: &'static str,
}

impl ParseRationalError {
    fn new(input: &str, reason: &'static str) -> Self {
        ParseRationalError {
            input: input.to_owned(),
            reason,
        }
    }
}

/// gcd of the magnitudes. Starts with a remainder step so that a small operand
/// reduces a large one in a single division.
fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a: BigUint = a.magnitude().clone();
    let mut b: BigUint = b.magnitude().clone();
    if a < b {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        if let (Some(x), Some(y)) = (a.to_u64(), b.to_u64()) {
            return BigInt::from(x.gcd(&y));
        }
        let r = &a % &b;
        a = b;
        b = r;
    }
    BigInt::from(a)
}

impl Rational {
    /// Builds `numer / denom` in lowest terms.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let numer = numer.into();
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Self::reduce(numer, denom))
    }

    fn reduce(mut numer: BigInt, mut denom: BigInt) -> Self {
        debug_assert!(!denom.is_zero());
        if denom.is_negative() {
            numer = -numer;
            denom = -denom;
        }
        if numer.is_zero() {
            return Self::zero();
        }
        let g = gcd(&numer, &denom);
        if !g.is_one() {
            numer /= &g;
            denom /= &g;
        }
        Rational { numer, denom }
    }

    /// Caller guarantees lowest terms and a positive denominator.
    fn from_parts_unchecked(numer: BigInt, denom: BigInt) -> Self {
        debug_assert!(denom.is_positive());
        Rational { numer, denom }
    }

    pub fn zero() -> Self {
        Rational {
            numer: BigInt::zero(),
            denom: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Rational {
            numer: BigInt::one(),
            denom: BigInt::one(),
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational {
            numer: n.into(),
            denom: BigInt::one(),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    /// Always strictly positive.
    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.numer.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.numer.is_negative()
    }

    pub fn is_one(&self) -> bool {
        self.numer.is_one() && self.denom.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.denom.is_one()
    }

    pub fn abs(&self) -> Self {
        Rational {
            numer: self.numer.abs(),
            denom: self.denom.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("division by zero"));
        }
        let (numer, denom) = if self.numer.is_negative() {
            (-self.denom.clone(), -self.numer.clone())
        } else {
            (self.denom.clone(), self.numer.clone())
        };
        Ok(Self::from_parts_unchecked(numer, denom))
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    /// `self^k`, with `0^0 = 1`.
    ///
    /// Powers of a reduced fraction are reduced, so no gcd is needed.
    pub fn pow(&self, k: u32) -> Self {
        Rational {
            numer: num_traits::pow(self.numer.clone(), k as usize),
            denom: num_traits::pow(self.denom.clone(), k as usize),
        }
    }

    /// Decimal expansion rounded to `digits` fractional digits, ties to even.
    ///
    /// A minus sign is printed only when the rounded value is nonzero.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10u32), digits);
        let scaled = self.numer.abs() * scale;
        let (mut q, r) = scaled.div_rem(&self.denom);
        let twice = r << 1usize;
        match twice.cmp(&self.denom) {
            Ordering::Greater => q += 1u32,
            Ordering::Equal if q.is_odd() => q += 1u32,
            _ => {}
        }
        let mut body = q.to_string();
        if body.len() <= digits {
            body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
        }
        if digits > 0 {
            body.insert(body.len() - digits, '.');
        }
        if self.is_negative() && !q.is_zero() {
            body.insert(0, '-');
        }
        body
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Self::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.denom == other.denom {
            return self.numer.cmp(&other.numer);
        }
        let sign_order = self.numer.sign().cmp(&other.numer.sign());
        if sign_order != Ordering::Equal {
            return sign_order;
        }
        (&self.numer * &other.denom).cmp(&(&other.numer * &self.denom))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_digits(s: &str, input: &str) -> Result<BigInt, ParseRationalError> {
    if s.is_empty() {
        return Err(ParseRationalError::new(input, "expected digits"));
    }
    if !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::new(input, "unexpected character"));
    }
    // all-ASCII-digit strings always parse
    Ok(BigInt::parse_bytes(s.as_bytes(), 10).expect("digits"))
}

fn split_sign(s: &str) -> (bool, &str) {
    match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    }
}

/// Accepts `[-]digits`, `[-]digits/digits` and `[-]digits.digits`.
impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        if let Some((num, den)) = input.split_once('/') {
            let (neg, num) = split_sign(num);
            let mut numer = parse_digits(num, input)?;
            let denom = parse_digits(den, input)?;
            if denom.is_zero() {
                return Err(ParseRationalError::new(input, "zero denominator"));
            }
            if neg {
                numer = -numer;
            }
            return Ok(Rational::reduce(numer, denom));
        }
        let (neg, body) = split_sign(input);
        let (numer, denom) = match body.split_once('.') {
            Some((int, frac)) => {
                parse_digits(int, input)?;
                parse_digits(frac, input)?;
                let all = format!("{int}{frac}");
                (
                    parse_digits(&all, input)?,
                    num_traits::pow(BigInt::from(10u32), frac.len()),
                )
            }
            None => (parse_digits(body, input)?, BigInt::one()),
        };
        let numer = if neg { -numer } else { numer };
        Ok(Rational::reduce(numer, denom))
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            numer: -self.numer,
            denom: self.denom,
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -(self.clone())
    }
}

fn add_impl(a: &Rational, b: &Rational, negate_b: bool) -> Rational {
    let bn = if negate_b { -&b.numer } else { b.numer.clone() };
    if a.is_zero() {
        return Rational::from_parts_unchecked(bn, b.denom.clone());
    }
    if b.is_zero() {
        return a.clone();
    }
    let g = gcd(&a.denom, &b.denom);
    if g.is_one() {
        let numer = &a.numer * &b.denom + bn * &a.denom;
        let denom = &a.denom * &b.denom;
        if numer.is_zero() {
            return Rational::zero();
        }
        return Rational::from_parts_unchecked(numer, denom);
    }
    let ad = &a.denom / &g;
    let bd = &b.denom / &g;
    let t = &a.numer * &bd + bn * &ad;
    if t.is_zero() {
        return Rational::zero();
    }
    let g2 = gcd(&t, &g);
    if g2.is_one() {
        Rational::from_parts_unchecked(t, ad * &b.denom)
    } else {
        Rational::from_parts_unchecked(t / &g2, ad * (&b.denom / &g2))
    }
}

fn mul_impl(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() || b.is_zero() {
        return Rational::zero();
    }
    let g1 = gcd(&a.numer, &b.denom);
    let g2 = gcd(&b.numer, &a.denom);
    let (an, bd) = if g1.is_one() {
        (a.numer.clone(), b.denom.clone())
    } else {
        (&a.numer / &g1, &b.denom / &g1)
    };
    let (bn, ad) = if g2.is_one() {
        (b.numer.clone(), a.denom.clone())
    } else {
        (&b.numer / &g2, &a.denom / &g2)
    };
    Rational::from_parts_unchecked(an * bn, ad * bd)
}

impl Add<&Rational> for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        add_impl(self, rhs, false)
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        add_impl(self, rhs, true)
    }
}

impl Mul<&Rational> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        mul_impl(self, rhs)
    }
}

/// Panics on division by zero; use [`Rational::checked_div`] for a `Result`.
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn parts(r: &Rational) -> (i64, i64) {
        (r.numer().to_i64().unwrap(), r.denom().to_i64().unwrap())
    }

    #[test]
    fn make_normalizes() {
        assert_eq!(parts(&Rational::new(2, 4).unwrap()), (1, 2));
        assert_eq!(parts(&Rational::new(3, -6).unwrap()), (-1, 2));
        assert_eq!(parts(&Rational::new(0, 7).unwrap()), (0, 1));
        assert_eq!(parts(&Rational::new(0, -7).unwrap()), (0, 1));
        assert!(Rational::new(1, 0).unwrap_err().is_invalid_input());
    }

    #[test]
    fn field_ops() {
        assert_eq!(q("1/2") + q("1/3"), q("5/6"));
        assert_eq!(q("3/4") * q("4/3"), Rational::one());
        assert_eq!(q("1/2") / q("1/2"), Rational::one());
        assert_eq!(q("1/2") - q("1/2"), Rational::zero());
        assert_eq!(q("1/6") + q("1/3"), q("1/2"));
        assert_eq!(q("-2/3") * q("9/4"), q("-3/2"));
        assert_eq!(q("5/6") / q("-5/3"), q("-1/2"));
        assert!(q("1/2").checked_div(&Rational::zero()).is_err());
        assert!(Rational::zero().recip().is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(q("1/2").pow(3), q("1/8"));
        assert_eq!(q("5/4").pow(0), Rational::one());
        assert_eq!(q("2/3").pow(2), q("4/9"));
        assert_eq!(Rational::zero().pow(0), Rational::one());
        assert_eq!(Rational::zero().pow(3), Rational::zero());
        assert_eq!(q("-1/2").pow(3), q("-1/8"));
    }

    #[test]
    fn ordering() {
        assert_eq!(q("1/3").cmp(&q("1/2")), Ordering::Less);
        assert_eq!(q("2/4").cmp(&q("1/2")), Ordering::Equal);
        assert_eq!(q("10/9").cmp(&Rational::one()), Ordering::Greater);
        assert!(q("-1/2") < q("1/3"));
        assert!(q("-1/2") < Rational::zero());
        assert!(q("-1/3") > q("-1/2"));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(q("1/9").to_decimal_string(4), "0.1111");
        assert_eq!(q("1/2").to_decimal_string(0), "0");
        assert_eq!(q("3/2").to_decimal_string(0), "2");
        assert_eq!(q("5/2").to_decimal_string(0), "2");
        assert_eq!(q("10/9").to_decimal_string(3), "1.111");
        assert_eq!(q("1/16").to_decimal_string(6), "0.062500");
        assert_eq!(q("2/3").to_decimal_string(6), "0.666667");
        assert_eq!(q("-1/8").to_decimal_string(2), "-0.12");
        assert_eq!(q("-1/1000").to_decimal_string(2), "0.00");
        assert_eq!(q("7").to_decimal_string(2), "7.00");
        assert_eq!(q("1/1024").to_decimal_string(3), "0.001");
    }

    #[test]
    fn parsing() {
        assert_eq!(q("1/2"), Rational::new(1, 2).unwrap());
        assert_eq!(q("0.2"), Rational::new(1, 5).unwrap());
        assert_eq!(q("0.25"), Rational::new(1, 4).unwrap());
        assert_eq!(q("3"), Rational::from(3));
        assert_eq!(q("-4/6"), Rational::new(-2, 3).unwrap());
        assert_eq!(q("-1.50"), Rational::new(-3, 2).unwrap());
        assert_eq!(q("-0"), Rational::zero());
        for bad in ["", "-", "1/0", "1/-2", "+1", ".5", "5.", "1.2.3", "a", "1/", "/2", " 1", "1e3", "--1"] {
            assert!(bad.parse::<Rational>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(q("6/3").to_string(), "2");
        assert_eq!(q("-3/6").to_string(), "-1/2");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn large_unbalanced_arithmetic() {
        let big = q("3/7").pow(5000);
        let sum = &big + &q("1/2");
        assert_eq!(&sum - &big, q("1/2"));
        assert_eq!(&(&big * &q("7/3")) / &big, q("7/3"));
    }
}
