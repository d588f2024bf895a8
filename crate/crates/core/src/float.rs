//! Binary64 evaluation of the step-time partial sums, audited against the
//! exact rational value.
//!
//! Both evaluators start from the same correctly rounded inputs
//! `fl(x0 / sA)` and `fl(sT / sA)`; the rounding of those inputs is charged to
//! the float result, never to the exact reference.
//!
//! * [`SumMethod::Naive`] generates terms by repeated multiplication,
//!   `term_{k+1} = term_k * fl(r)`, and adds them left to right. Its relative
//!   error stays below `(n + 1) * 2^-52`.
//! * [`SumMethod::Compensated`] carries every rounding error alongside the
//!   working value: the ratio and first term are split into a rounded part and
//!   its exact residue, each term product is formed with Dekker's error-free
//!   multiplication and each addition with Knuth's two-sum. The result is
//!   within a few units of `2^-53` independently of `n`.
//!
//! All arithmetic is plain IEEE binary64 with round-to-nearest-even: no fused
//! multiply-add, no reassociation, so every report is reproducible bit for bit.
//!
//! Magnitudes are bounded by the catch-up time `fl(x0 / sA) / (1 - r)`, which
//! is required to stay below `1e299` (under `2^995`) so that neither the partial sums nor
//! Dekker's splitting constant can overflow.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::race::{RaceConfig, MAX_STEPS};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumMethod {
    Naive,
    Compensated,
}

impl SumMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SumMethod::Naive => "naive",
            SumMethod::Compensated => "compensated",
        }
    }
}

impl fmt::Display for SumMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A float partial sum together with its exact reference.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatReport {
    /// Index of the last term included.
    pub n: u32,
    pub method: SumMethod,
    pub value: f64,
    pub exact: Rational,
    /// `|value - exact|`, computed exactly.
    pub abs_error: Rational,
    /// `abs_error / exact`.
    pub rel_error: Rational,
}

/// Nearest binary64 to `x`, ties to even. `None` when `|x|` rounds beyond
/// the finite range.
pub fn rational_to_f64(x: &Rational) -> Option<f64> {
    if x.is_zero() {
        return Some(0.0);
    }
    let numer = x.numer().magnitude();
    let denom = x.denom().magnitude();

    let shifted_quotient = |s: i64| -> (BigUint, BigUint) {
        if s >= 0 {
            (numer << s as usize).div_rem(denom)
        } else {
            numer.div_rem(&(denom << (-s) as usize))
        }
    };

    // floor(log2 |x|) is one of these two
    let mut exp = numer.bits() as i64 - denom.bits() as i64;
    let mut shift = 52 - exp;
    let (mut q, mut rem) = shifted_quotient(shift);
    if q.bits() < 53 {
        exp -= 1;
        shift += 1;
        (q, rem) = shifted_quotient(shift);
    }
    let subnormal = exp < -1022;
    if subnormal {
        shift = 1074;
        (q, rem) = shifted_quotient(shift);
    }

    let d = if shift >= 0 {
        denom.clone()
    } else {
        denom << (-shift) as usize
    };
    match (rem << 1usize).cmp(&d) {
        Ordering::Greater => q += 1u32,
        Ordering::Equal if q.is_odd() => q += 1u32,
        _ => {}
    }

    let mut mantissa = q.to_u64().expect("at most 54 bits");
    let bits = if subnormal {
        // a carry into bit 52 lands exactly on the smallest normal encoding
        mantissa
    } else {
        if mantissa == 1 << 53 {
            mantissa >>= 1;
            exp += 1;
        }
        if exp > 1023 {
            return None;
        }
        (((exp + 1023) as u64) << 52) | (mantissa & ((1 << 52) - 1))
    };
    let magnitude = f64::from_bits(bits);
    Some(if x.is_negative() { -magnitude } else { magnitude })
}

/// The exact value of a finite binary64. `None` for infinities and NaN.
pub fn f64_to_rational(v: f64) -> Option<Rational> {
    if !v.is_finite() {
        return None;
    }
    let bits = v.to_bits();
    let negative = bits >> 63 == 1;
    let exp_field = ((bits >> 52) & 0x7ff) as i64;
    let fraction = bits & ((1 << 52) - 1);
    let (mantissa, exp) = if exp_field == 0 {
        (fraction, -1074)
    } else {
        (fraction | (1 << 52), exp_field - 1075)
    };
    let mut m = BigInt::from(mantissa);
    if negative {
        m = -m;
    }
    Some(if exp >= 0 {
        Rational::from_integer(m << exp as usize)
    } else {
        Rational::new(m, BigInt::one() << (-exp) as usize).expect("nonzero power of two")
    })
}

/// `(|value - exact|, |value - exact| / exact)` for a positive exact value.
///
/// The relative error is formed as `|value / exact - 1|`, which keeps every
/// gcd against the short dyadic side.
fn audit(value: f64, exact: &Rational) -> (Rational, Rational) {
    let v = f64_to_rational(value).expect("finite partial sum");
    let abs_error = (&v - exact).abs();
    let rel_error = (&v / exact - Rational::one()).abs();
    (abs_error, rel_error)
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

/// Veltkamp split into two 26-bit halves.
#[inline]
fn split(a: f64) -> (f64, f64) {
    const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1
    let c = SPLITTER * a;
    let hi = c - (c - a);
    (hi, a - hi)
}

/// Dekker's product: `a * b = p + err` exactly, barring underflow.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, err)
}

/// Correctly rounded inputs shared by both evaluators.
#[derive(Debug, Clone, Copy)]
struct FloatInputs {
    first: f64,
    first_residue: f64,
    ratio: f64,
    ratio_residue: f64,
}

fn rounded(x: &Rational) -> Result<f64> {
    rational_to_f64(x).ok_or_else(|| Error::invalid(format!("{x} is outside the binary64 range")))
}

impl FloatInputs {
    fn new(config: &RaceConfig) -> Result<Self> {
        let limit = config.catch_up()?.time;
        const MAX_MAGNITUDE: f64 = 1e299; // below 2^995
        if rounded(&limit)? >= MAX_MAGNITUDE {
            return Err(Error::invalid("catch-up time too large for binary64 evaluation"));
        }
        let first_exact = config.first_step_time();
        let first = rounded(&first_exact)?;
        let ratio = rounded(config.ratio())?;
        let residue = |exact: &Rational, approx: f64| -> Result<f64> {
            rounded(&(exact - &f64_to_rational(approx).expect("finite")))
        };
        Ok(FloatInputs {
            first,
            first_residue: residue(&first_exact, first)?,
            ratio,
            ratio_residue: residue(config.ratio(), ratio)?,
        })
    }
}

/// Running state of a float evaluator after `k + 1` terms.
trait Accumulator {
    fn start(inputs: FloatInputs) -> Self;
    /// Adds the next term.
    fn push(&mut self);
    fn value(&self) -> f64;
}

struct NaiveSum {
    sum: f64,
    term: f64,
    ratio: f64,
}

impl Accumulator for NaiveSum {
    fn start(inputs: FloatInputs) -> Self {
        NaiveSum {
            sum: 0.0,
            term: inputs.first,
            ratio: inputs.ratio,
        }
    }

    fn push(&mut self) {
        self.sum += self.term;
        self.term *= self.ratio;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

struct CompensatedSum {
    sum: f64,
    correction: f64,
    term: f64,
    term_residue: f64,
    ratio: f64,
    ratio_residue: f64,
}

impl Accumulator for CompensatedSum {
    fn start(inputs: FloatInputs) -> Self {
        CompensatedSum {
            sum: 0.0,
            correction: 0.0,
            term: inputs.first,
            term_residue: inputs.first_residue,
            ratio: inputs.ratio,
            ratio_residue: inputs.ratio_residue,
        }
    }

    fn push(&mut self) {
        let (sum, err) = two_sum(self.sum, self.term);
        self.sum = sum;
        self.correction += err + self.term_residue;

        let (p, mut err) = two_prod(self.term, self.ratio);
        err += self.term * self.ratio_residue + self.term_residue * self.ratio;
        (self.term, self.term_residue) = fast_two_sum(p, err);
    }

    fn value(&self) -> f64 {
        self.sum + self.correction
    }
}

fn evaluate<A: Accumulator>(inputs: FloatInputs, n: u32) -> f64 {
    let mut acc = A::start(inputs);
    for _ in 0..=n {
        acc.push();
    }
    acc.value()
}

fn report(n: u32, method: SumMethod, value: f64, exact: Rational) -> FloatReport {
    let (abs_error, rel_error) = audit(value, &exact);
    FloatReport {
        n,
        method,
        value,
        exact,
        abs_error,
        rel_error,
    }
}

fn single(config: &RaceConfig, n: u32, method: SumMethod) -> Result<FloatReport> {
    let inputs = FloatInputs::new(config)?;
    let value = match method {
        SumMethod::Naive => evaluate::<NaiveSum>(inputs, n),
        SumMethod::Compensated => evaluate::<CompensatedSum>(inputs, n),
    };
    Ok(report(n, method, value, config.t_n_closed(n)?))
}

impl RaceConfig {
    /// `t_n` by left-to-right binary64 summation.
    pub fn sum_naive(&self, n: u32) -> Result<FloatReport> {
        single(self, n, SumMethod::Naive)
    }

    /// `t_n` by compensated binary64 summation.
    pub fn sum_compensated(&self, n: u32) -> Result<FloatReport> {
        single(self, n, SumMethod::Compensated)
    }
}

/// `(naive, compensated)` reports for every `n` in `0..=n_max`.
pub fn error_sweep(config: &RaceConfig, n_max: u32) -> Result<Vec<(FloatReport, FloatReport)>> {
    if n_max == 0 {
        return Err(Error::invalid("n_max must be positive"));
    }
    if n_max as usize > MAX_STEPS {
        return Err(Error::ResourceLimit {
            requested: n_max as usize,
            limit: MAX_STEPS,
        });
    }
    let inputs = FloatInputs::new(config)?;
    let mut naive = NaiveSum::start(inputs);
    let mut compensated = CompensatedSum::start(inputs);

    // t_n = first / (1 - r) * (1 - r^(n+1)), with the power kept incrementally
    let one = Rational::one();
    let scale = config.first_step_time() / (&one - config.ratio());
    let mut power = config.ratio().clone();

    let mut rows = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        naive.push();
        compensated.push();
        let exact = &scale * &(&one - &power);
        rows.push((
            report(n, SumMethod::Naive, naive.value(), exact.clone()),
            report(n, SumMethod::Compensated, compensated.value(), exact),
        ));
        power = &power * config.ratio();
    }
    Ok(rows)
}

/// `k * 2^-e` as an exact rational.
pub fn ulp_multiple(k: u64, e: u32) -> Rational {
    Rational::new(BigInt::from(k), BigInt::one() << e as usize).expect("nonzero")
}
