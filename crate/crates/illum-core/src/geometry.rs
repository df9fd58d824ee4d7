//! Exact combinatorics and geometric constants: factorials, binomials,
//! half-integer Γ, unit-ball volumes, the closed-form quermassintegrals of
//! the regular simplex and the cube, and Steiner-polynomial evaluation.
//!
//! Everything that can stay exact does: factorials and binomials are
//! arbitrary-size integers, Γ at half-integers and ball volumes are exact
//! rationals times a power of π, and odd powers like `n^{n/2}` are written
//! as an exact rational times a single square root. Rounding enters only
//! where a genuine irrational (π or one square root) must be converted to
//! an interval.

use crate::enclosure::{Enclosure, Precision};
use crate::error::{Error, Result};
use rug::{Integer, Rational};
use std::fmt;

/// Ambient dimension, validated to `1 ..= 64`.
///
/// The cap keeps exact factorials/binomials cheap (`binom(128, 64)` is the
/// largest combinatorial factor that can appear) and far away from any
/// fixed-width overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(u32);

impl Dimension {
    /// Validates `1 ≤ n ≤ 64`.
    pub fn new(n: u32) -> Result<Dimension> {
        if (1..=64).contains(&n) {
            Ok(Dimension(n))
        } else {
            Err(Error::Domain(format!("dimension must be in 1..=64, got {n}")))
        }
    }

    /// The raw dimension value.
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Whether bounds refer to all convex bodies or only centrally symmetric
/// ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BodyClass {
    General,
    Symmetric,
}

impl fmt::Display for BodyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyClass::General => write!(f, "general"),
            BodyClass::Symmetric => write!(f, "symmetric"),
        }
    }
}

/// Exact `k!`.
pub fn factorial(k: u32) -> Integer {
    Integer::from(Integer::factorial(k))
}

/// Exact binomial coefficient; requires `k ≤ n`.
pub fn binomial(n: u32, k: u32) -> Integer {
    assert!(k <= n, "binomial requires k <= n, got ({n}, {k})");
    factorial(n).div_exact(&(factorial(k) * factorial(n - k)))
}

/// Γ at a half-integer argument `two_m / 2` (so `two_m = 7` means Γ(7/2)).
///
/// Integer arguments give the exact point `(k−1)!`; half-odd arguments give
/// the exact rational `(2m)!/(4^m m!)` times an enclosure of √π, via the
/// recurrence Γ(x+1) = xΓ(x) anchored at Γ(1/2) = √π.
pub fn gamma_half_integer(two_m: u32, p: Precision) -> Enclosure {
    assert!(two_m >= 1, "gamma argument must be at least 1/2");
    if two_m % 2 == 0 {
        let k = two_m / 2;
        Enclosure::from_integer(&factorial(k - 1), p)
    } else {
        let m = (two_m - 1) / 2;
        let coeff = Rational::from((
            factorial(2 * m),
            Integer::from(Integer::u_pow_u(4, m)) * factorial(m),
        ));
        let sqrt_pi = Enclosure::pi(p).sqrt().expect("pi is positive");
        Enclosure::from_rational(&coeff, p).mul(&sqrt_pi)
    }
}

/// Unit-ball volume for a raw dimension, accepting `m = 0` (a point, volume
/// 1) so callers can ask for `|B^{n−1}|` at `n = 1`.
fn ball_volume_raw(m: u32, p: Precision) -> Enclosure {
    if m == 0 {
        return Enclosure::point_i64(1, p);
    }
    // |B^n| = π^{n/2} / Γ(n/2 + 1), split by parity into an exact rational
    // times an integer power of π.
    if m % 2 == 0 {
        let half = m / 2;
        let coeff = Rational::from((Integer::from(1), factorial(half)));
        Enclosure::from_rational(&coeff, p).mul(&Enclosure::pi(p).pow_u32(half))
    } else {
        let half = (m - 1) / 2;
        let coeff = Rational::from((
            Integer::from(Integer::u_pow_u(4, half + 1)) * factorial(half + 1),
            factorial(2 * half + 2),
        ));
        Enclosure::from_rational(&coeff, p).mul(&Enclosure::pi(p).pow_u32(half))
    }
}

/// Volume of the unit ball `B^n`.
pub fn ball_volume(n: Dimension, p: Precision) -> Enclosure {
    ball_volume_raw(n.get(), p)
}

/// `W_0(Δⁿ) = n^{n/2} (n+1)^{(n+1)/2} / n!` — the volume of the regular
/// simplex with unit insphere, i.e. the `(2n(n+1))^{n/2}`-fold dilation of
/// the unit-diameter normalization.
///
/// Exactly one of the two powers has a half-odd exponent, so the value is
/// an exact rational times one square root (of `n` or of `n+1`).
pub fn simplex_volume_bound(n: Dimension, p: Precision) -> Enclosure {
    let nv = n.get();
    let (coeff, radicand) = if nv % 2 == 0 {
        // n^{n/2} exact, (n+1)^{(n+1)/2} = (n+1)^{n/2} · √(n+1).
        let q = nv / 2;
        let num = Integer::from(Integer::u_pow_u(nv, q))
            * Integer::from(Integer::u_pow_u(nv + 1, q));
        (Rational::from((num, factorial(nv))), nv + 1)
    } else {
        // (n+1)^{(n+1)/2} exact, n^{n/2} = n^{(n−1)/2} · √n.
        let q = (nv - 1) / 2;
        let num = Integer::from(Integer::u_pow_u(nv, q))
            * Integer::from(Integer::u_pow_u(nv + 1, q + 1));
        (Rational::from((num, factorial(nv))), nv)
    };
    let root = Enclosure::point_u64(radicand as u64, p)
        .sqrt()
        .expect("radicand is positive");
    Enclosure::from_rational(&coeff, p).mul(&root)
}

/// The two quermassintegrals of the cube `C^n = [−1, 1]^n` that the
/// covering bounds use: `W_0(Cⁿ) = 2ⁿ` (exact) and
/// `W_{n−1}(Cⁿ) = 2|B^{n−1}|`.
pub fn cube_constants(n: Dimension, p: Precision) -> (Enclosure, Enclosure) {
    let w0 = Enclosure::from_integer(&(Integer::from(1) << n.get()), p);
    let wn1 = ball_volume_raw(n.get() - 1, p).mul(&Enclosure::point_i64(2, p));
    (w0, wn1)
}

/// Steiner polynomial at `t = 1`: `Σ_{j=0}^{n} binom(n,j) · W_j`, summed in
/// ascending `j` so results are bit-reproducible.
///
/// Requires exactly `n+1` quermassintegral enclosures, all nonnegative.
pub fn steiner_sum(n: Dimension, w: &[Enclosure]) -> Result<Enclosure> {
    let expect = n.get() as usize + 1;
    if w.len() != expect {
        return Err(Error::Contract(format!(
            "steiner sum for n={} needs {} quermassintegrals, got {}",
            n,
            expect,
            w.len()
        )));
    }
    for (j, wj) in w.iter().enumerate() {
        if wj.lo().is_sign_negative() && !wj.lo().is_zero() {
            return Err(Error::Contract(format!(
                "quermassintegral {j} has negative lower endpoint {}",
                wj.lo()
            )));
        }
    }
    let p = w.iter().map(|e| e.prec().bits()).max().unwrap();
    let p = Precision::new(p).expect("operand precision is valid");
    let mut acc = Enclosure::point_i64(0, p);
    for (j, wj) in w.iter().enumerate() {
        let coeff = Enclosure::from_integer(&binomial(n.get(), j as u32), p);
        acc = acc.add(&coeff.mul(wj));
    }
    Ok(acc)
}
