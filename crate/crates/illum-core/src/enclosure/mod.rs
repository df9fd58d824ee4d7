//! Outward-rounded interval arithmetic over extended-precision floats.
//!
//! An [`Enclosure`] is a closed interval `[lo, hi]` of MPFR floats with the
//! single guarantee that matters: **containment**. If the true inputs of an
//! operation lie inside the input enclosures, the true result lies inside the
//! output enclosure. Every primitive rounds its lower endpoint toward `-∞`
//! and its upper endpoint toward `+∞` at the working precision, so the
//! guarantee survives arbitrarily long computations; only the interval width
//! (never the truth of containment) degrades.
//!
//! Correctly-rounded 1-ulp semantics are *not* promised — only containment —
//! and no use is made of hardware rounding modes: every rounding is an
//! explicit per-operation MPFR argument, which keeps results bit-identical
//! across platforms and thread counts.

pub mod special;

use crate::error::{Error, Result};
use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::cmp::Ordering;
use std::fmt;

/// Working mantissa precision in bits.
///
/// 53 bits (IEEE double) is the floor; the crate-wide default is 128 bits,
/// which keeps rounding contributions many orders of magnitude below the
/// discretization errors of the quadratures built on top.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    /// Default working precision (128 bits).
    pub const DEFAULT: Precision = Precision { bits: 128 };

    /// Creates a precision, requiring at least 53 bits and at most 2²⁴
    /// (far beyond any sensible use; the cap guards MPFR's own limits).
    pub fn new(bits: u32) -> Result<Precision> {
        if !(53..=(1 << 24)).contains(&bits) {
            return Err(Error::Domain(format!(
                "precision must be between 53 and 2^24 bits, got {bits}"
            )));
        }
        Ok(Precision { bits })
    }

    /// The mantissa width in bits.
    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Twice the precision (used by near-integer re-checks and test oracles).
    pub fn doubled(self) -> Precision {
        Precision {
            bits: (self.bits * 2).min(1 << 24),
        }
    }

    /// Precision raised by `extra` guard bits.
    pub(crate) fn with_guard(self, extra: u32) -> Precision {
        Precision {
            bits: (self.bits + extra).min(1 << 24),
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DEFAULT
    }
}

/// A closed real interval `[lo, hi]` certified to contain the value it
/// stands for.
///
/// Invariants: `lo ≤ hi`, both endpoints finite, both carried at the same
/// MPFR precision. All constructors and operations preserve these.
#[derive(Debug, Clone, PartialEq)]
pub struct Enclosure {
    lo: Float,
    hi: Float,
}

/// Sign class of an interval, used by the multiplication/division tables.
enum SignClass {
    /// Entirely positive: `lo > 0`.
    Pos,
    /// Entirely negative: `hi < 0`.
    Neg,
    /// Contains zero (including exact zero endpoints).
    Mixed,
}

impl Enclosure {
    fn assert_valid(&self) {
        debug_assert!(self.lo.is_finite() && self.hi.is_finite(), "endpoints must be finite");
        debug_assert!(self.lo <= self.hi, "lo must not exceed hi: [{}, {}]", self.lo, self.hi);
    }

    /// Builds an enclosure from endpoints the caller already rounded in the
    /// right directions. Panics (in debug builds) if `lo > hi`.
    pub fn from_endpoints(lo: Float, hi: Float) -> Enclosure {
        let e = Enclosure { lo, hi };
        e.assert_valid();
        e
    }

    /// Point interval for a value exactly representable at precision `p`
    /// (all `i64` are, since 53 ≤ bits).
    pub fn point_i64(v: i64, p: Precision) -> Enclosure {
        let f = Float::with_val(p.bits, v);
        Enclosure { lo: f.clone(), hi: f }
    }

    /// Point interval for an unsigned value (exact at any supported precision).
    pub fn point_u64(v: u64, p: Precision) -> Enclosure {
        let f = Float::with_val(p.bits, v);
        Enclosure { lo: f.clone(), hi: f }
    }

    /// Directed conversion of an exact big integer. The interval is a point
    /// whenever the integer fits in the mantissa, and one ulp wide otherwise.
    pub fn from_integer(v: &Integer, p: Precision) -> Enclosure {
        let lo = Float::with_val_round(p.bits, v, Round::Down).0;
        let hi = Float::with_val_round(p.bits, v, Round::Up).0;
        Enclosure { lo, hi }
    }

    /// Directed conversion of an exact rational.
    pub fn from_rational(v: &Rational, p: Precision) -> Enclosure {
        let lo = Float::with_val_round(p.bits, v, Round::Down).0;
        let hi = Float::with_val_round(p.bits, v, Round::Up).0;
        Enclosure { lo, hi }
    }

    /// Enclosure of π, one ulp wide — comfortably below `2^(−bits+4)`.
    pub fn pi(p: Precision) -> Enclosure {
        let lo = Float::with_val_round(p.bits, Constant::Pi, Round::Down).0;
        let hi = Float::with_val_round(p.bits, Constant::Pi, Round::Up).0;
        Enclosure { lo, hi }
    }

    /// Lower endpoint.
    pub fn lo(&self) -> &Float {
        &self.lo
    }

    /// Upper endpoint.
    pub fn hi(&self) -> &Float {
        &self.hi
    }

    /// Working precision of the endpoints.
    pub fn prec(&self) -> Precision {
        Precision { bits: self.lo.prec() }
    }

    /// `hi − lo`, rounded up (a certified bound on the interval width).
    pub fn width(&self) -> Float {
        Float::with_val_round(self.lo.prec(), &self.hi - &self.lo, Round::Up).0
    }

    /// True if both endpoints are the same float.
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Re-rounds to precision `p` (outward; a no-op point stays a point when
    /// representable).
    pub fn with_precision(&self, p: Precision) -> Enclosure {
        let lo = Float::with_val_round(p.bits, &self.lo, Round::Down).0;
        let hi = Float::with_val_round(p.bits, &self.hi, Round::Up).0;
        Enclosure { lo, hi }
    }

    /// Containment test for an exact rational.
    pub fn contains_rational(&self, v: &Rational) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    /// Containment test for a float (of any precision).
    pub fn contains_float(&self, v: &Float) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    /// True if `other` lies entirely inside `self`.
    pub fn encloses(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Smallest interval containing both operands.
    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        let lo = if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() };
        Enclosure { lo, hi }
    }

    /// Intersects with `[lo, hi]` given as exact small integers; used for
    /// the `[0,1]` and `[−1,1]` clamps of the probability-flavored functions.
    /// The intersection of an enclosure with a set known to contain the true
    /// value is still an enclosure of it.
    pub fn clamp_i64(&self, lo: i64, hi: i64) -> Enclosure {
        let prec = self.lo.prec();
        let lo_f = Float::with_val(prec, lo);
        let hi_f = Float::with_val(prec, hi);
        let new_lo = if self.lo < lo_f { lo_f } else { self.lo.clone() };
        let new_hi = if self.hi > hi_f { hi_f } else { self.hi.clone() };
        // A conservative enclosure can stick out past the clamp on either
        // side; never let the clamp manufacture an empty interval.
        if new_lo <= new_hi {
            Enclosure { lo: new_lo, hi: new_hi }
        } else {
            let mid = new_hi.clone();
            Enclosure { lo: new_hi, hi: mid.max(&new_lo) }
        }
    }

    fn result_prec(&self, other: &Enclosure) -> u32 {
        self.lo.prec().max(other.lo.prec())
    }

    fn sign_class(&self) -> SignClass {
        if self.lo.is_sign_positive() && !self.lo.is_zero() {
            SignClass::Pos
        } else if self.hi.is_sign_negative() && !self.hi.is_zero() {
            SignClass::Neg
        } else {
            SignClass::Mixed
        }
    }

    /// Exact negation (sign flips never round).
    pub fn neg(&self) -> Enclosure {
        Enclosure {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    /// `self + other`, outward rounded.
    pub fn add(&self, other: &Enclosure) -> Enclosure {
        let prec = self.result_prec(other);
        let lo = Float::with_val_round(prec, &self.lo + &other.lo, Round::Down).0;
        let hi = Float::with_val_round(prec, &self.hi + &other.hi, Round::Up).0;
        Enclosure { lo, hi }
    }

    /// `self − other`, outward rounded.
    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        let prec = self.result_prec(other);
        let lo = Float::with_val_round(prec, &self.lo - &other.hi, Round::Down).0;
        let hi = Float::with_val_round(prec, &self.hi - &other.lo, Round::Up).0;
        Enclosure { lo, hi }
    }

    /// `self · other`, outward rounded (endpoint selection by sign class).
    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let prec = self.result_prec(other);
        let down = |a: &Float, b: &Float| Float::with_val_round(prec, a * b, Round::Down).0;
        let up = |a: &Float, b: &Float| Float::with_val_round(prec, a * b, Round::Up).0;
        let (lo, hi) = match (self.sign_class(), other.sign_class()) {
            (SignClass::Pos, SignClass::Pos) => (down(&self.lo, &other.lo), up(&self.hi, &other.hi)),
            (SignClass::Pos, SignClass::Neg) => (down(&self.hi, &other.lo), up(&self.lo, &other.hi)),
            (SignClass::Pos, SignClass::Mixed) => (down(&self.hi, &other.lo), up(&self.hi, &other.hi)),
            (SignClass::Neg, SignClass::Pos) => (down(&self.lo, &other.hi), up(&self.hi, &other.lo)),
            (SignClass::Neg, SignClass::Neg) => (down(&self.hi, &other.hi), up(&self.lo, &other.lo)),
            (SignClass::Neg, SignClass::Mixed) => (down(&self.lo, &other.hi), up(&self.lo, &other.lo)),
            (SignClass::Mixed, SignClass::Pos) => (down(&self.lo, &other.hi), up(&self.hi, &other.hi)),
            (SignClass::Mixed, SignClass::Neg) => (down(&self.hi, &other.lo), up(&self.lo, &other.lo)),
            (SignClass::Mixed, SignClass::Mixed) => {
                let lo1 = down(&self.lo, &other.hi);
                let lo2 = down(&self.hi, &other.lo);
                let hi1 = up(&self.lo, &other.lo);
                let hi2 = up(&self.hi, &other.hi);
                (lo1.min(&lo2), hi1.max(&hi2))
            }
        };
        Enclosure { lo, hi }
    }

    /// `self / other`; errors when `other` contains zero.
    pub fn div(&self, other: &Enclosure) -> Result<Enclosure> {
        match other.sign_class() {
            SignClass::Mixed => Err(Error::Domain(format!(
                "division by an interval containing zero: [{}, {}]",
                other.lo, other.hi
            ))),
            SignClass::Neg => Ok(self.neg().div_pos(&other.neg())),
            SignClass::Pos => Ok(self.div_pos(other)),
        }
    }

    /// Division by a strictly positive interval.
    fn div_pos(&self, other: &Enclosure) -> Enclosure {
        let prec = self.result_prec(other);
        // Numerator endpoint signs pick which denominator endpoint extremizes
        // the quotient.
        let lo_den = if self.lo.is_sign_positive() { &other.hi } else { &other.lo };
        let hi_den = if self.hi.is_sign_positive() { &other.lo } else { &other.hi };
        let lo = Float::with_val_round(prec, &self.lo / lo_den, Round::Down).0;
        let hi = Float::with_val_round(prec, &self.hi / hi_den, Round::Up).0;
        Enclosure { lo, hi }
    }

    /// Square root; requires `lo ≥ 0`.
    pub fn sqrt(&self) -> Result<Enclosure> {
        if self.lo.is_sign_negative() && !self.lo.is_zero() {
            return Err(Error::Domain(format!(
                "sqrt of an interval with negative lower endpoint {}",
                self.lo
            )));
        }
        let prec = self.lo.prec();
        let lo = Float::with_val_round(prec, self.lo.sqrt_ref(), Round::Down).0;
        let hi = Float::with_val_round(prec, self.hi.sqrt_ref(), Round::Up).0;
        Ok(Enclosure { lo, hi })
    }

    /// Exponential (monotone, endpoint evaluation).
    pub fn exp(&self) -> Enclosure {
        let prec = self.lo.prec();
        let lo = Float::with_val_round(prec, self.lo.exp_ref(), Round::Down).0;
        let hi = Float::with_val_round(prec, self.hi.exp_ref(), Round::Up).0;
        Enclosure { lo, hi }
    }

    /// Natural logarithm; requires `lo > 0`.
    pub fn ln(&self) -> Result<Enclosure> {
        if self.lo.is_sign_negative() || self.lo.is_zero() {
            return Err(Error::Domain(format!(
                "ln of an interval with non-positive lower endpoint {}",
                self.lo
            )));
        }
        let prec = self.lo.prec();
        let lo = Float::with_val_round(prec, self.lo.ln_ref(), Round::Down).0;
        let hi = Float::with_val_round(prec, self.hi.ln_ref(), Round::Up).0;
        Ok(Enclosure { lo, hi })
    }

    /// Integer power `self^k` for `k ≥ 0`, with the usual sign case split.
    pub fn pow_u32(&self, k: u32) -> Enclosure {
        let prec = self.lo.prec();
        if k == 0 {
            return Enclosure::point_i64(1, Precision { bits: prec });
        }
        let down = |f: &Float| Float::with_val_round(prec, f.pow(k), Round::Down).0;
        let up = |f: &Float| Float::with_val_round(prec, f.pow(k), Round::Up).0;
        if !self.lo.is_sign_negative() {
            // Nonnegative base: monotone increasing.
            Enclosure { lo: down(&self.lo), hi: up(&self.hi) }
        } else if self.hi.is_sign_negative() && k % 2 == 0 {
            // Negative base, even power: monotone decreasing.
            Enclosure { lo: down(&self.hi), hi: up(&self.lo) }
        } else if k % 2 == 1 {
            // Odd power: monotone increasing everywhere.
            Enclosure { lo: down(&self.lo), hi: up(&self.hi) }
        } else {
            // Interval straddles zero, even power: minimum is 0.
            let hi1 = up(&self.lo);
            let hi2 = up(&self.hi);
            Enclosure {
                lo: Float::with_val(prec, 0),
                hi: hi1.max(&hi2),
            }
        }
    }

    /// Real power `self^exponent = exp(exponent · ln self)`; requires `lo > 0`.
    pub fn pow_real(&self, exponent: &Enclosure) -> Result<Enclosure> {
        Ok(exponent.mul(&self.ln()?).exp())
    }

    /// Multiplies by an exact integer (the common Steiner-coefficient case).
    pub fn mul_integer(&self, k: &Integer) -> Enclosure {
        let p = self.prec();
        self.mul(&Enclosure::from_integer(k, p))
    }

    /// Decimal rendering of the lower endpoint, rounded **down** at
    /// `places` digits, so the printed interval still encloses the value.
    pub fn decimal_lo(&self, places: u32) -> String {
        decimal_directed(&self.lo, places, false)
    }

    /// Decimal rendering of the upper endpoint, rounded **up** at `places`
    /// digits.
    pub fn decimal_hi(&self, places: u32) -> String {
        decimal_directed(&self.hi, places, true)
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.decimal_lo(6), self.decimal_hi(6))
    }
}

/// Exact floor of a finite float as a big integer.
pub fn floor_int(x: &Float) -> Integer {
    x.to_integer_round(Round::Down)
        .expect("floor of a finite float")
        .0
}

/// Exact ceiling of a finite float as a big integer.
pub fn ceil_int(x: &Float) -> Integer {
    x.to_integer_round(Round::Up)
        .expect("ceiling of a finite float")
        .0
}

/// Renders `x` as a decimal string with exactly `places` fractional digits,
/// rounded toward `−∞` (`round_up = false`) or `+∞` (`round_up = true`).
///
/// The computation is exact: the float's dyadic mantissa/exponent pair is
/// scaled by `10^places` in big-integer arithmetic and floored/ceiled there,
/// so printing can never break an enclosure no matter the magnitudes.
pub fn decimal_directed(x: &Float, places: u32, round_up: bool) -> String {
    let (m, e) = x
        .to_integer_exp()
        .expect("decimal rendering requires a finite value");
    // x = m · 2^e; scaled = x · 10^places as an exact rational m·10^places·2^e.
    let num = m * Integer::from(Integer::u_pow_u(10, places));
    let scaled: Integer = match e.cmp(&0) {
        Ordering::Equal => num,
        Ordering::Greater => num << (e as u32),
        Ordering::Less => {
            let den = Integer::from(1) << ((-e) as u32);
            if round_up {
                num.div_rem_ceil(den).0
            } else {
                num.div_rem_floor(den).0
            }
        }
    };
    let negative = scaled < 0;
    let abs = scaled.abs();
    let ten_p = Integer::from(Integer::u_pow_u(10, places));
    let (int_part, frac_part) = abs.div_rem_floor(ten_p);
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!(
            "{sign}{int_part}.{frac:0>width$}",
            frac = frac_part.to_string(),
            width = places as usize
        )
    }
}
