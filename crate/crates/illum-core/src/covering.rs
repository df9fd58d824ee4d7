//! Certified upper bounds on covering densities of the unit ball, plus the
//! optimized Rogers covering bound and the Hadwiger-type corollaries it
//! implies.
//!
//! Three sources of density bounds feed the selector [`theta_best`]:
//!
//! * [`theta_anstar`] — the exact density of the `Aₙ*` lattice covering,
//!   `|Bⁿ|·√(n+1)·(n(n+2)/(12(n+1)))^{n/2}`, evaluated as an enclosure.
//!   Optimal among lattice coverings for `n ≤ 5` and the best known value
//!   in most dimensions from 10 on.
//! * [`theta_catalog`] — the best published lattice covering densities in
//!   dimensions 2–13, from the tables of Schürmann & Vallentin 2006 (which
//!   improve on `Aₙ*` for `n = 6, 7, 8`). Published to six decimals, so a
//!   uniform `+5·10⁻⁶` margin turns each truncated value into a certified
//!   upper bound.
//! * an `external` fallback in the plane: the worst-case translative
//!   covering density of any planar convex body is 3/2 (Fáry 1950), which
//!   in particular bounds the disc's density. It never beats `A₂*` and is
//!   kept only for completeness of the candidate set.
//!
//! Independently, Rogers' bound `θ(K) ≤ r_n := inf f_n(x)` with
//! `f_n(x) = (1+x)ⁿ(1 − n ln x)` on `(0, 1/n)` holds for every convex body;
//! any grid value of `f_n` is a valid upper bound on `r_n`, so a plain grid
//! minimum suffices ([`rogers_rn`]). Combined with counting arguments it
//! yields `H_n ≤ binom(2n,n)·r_n` and `H_n^s ≤ 2ⁿ·r_n`
//! ([`rogers_hadwiger`]).

use crate::enclosure::{floor_int, Enclosure, Precision};
use crate::error::{Error, Result};
use crate::geometry::{ball_volume, binomial, BodyClass, Dimension};
use rug::float::Round;
use rug::{Float, Integer, Rational};
use std::fmt;

/// Where a covering-density upper bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaMethod {
    /// The `Aₙ*` lattice covering formula.
    Anstar,
    /// Embedded best-published densities (Schürmann & Vallentin 2006).
    Catalog,
    /// Rogers' optimized bound `r_n`.
    Rogers,
    /// A cited constant from outside this crate's computations.
    External,
}

impl fmt::Display for ThetaMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaMethod::Anstar => write!(f, "anstar"),
            ThetaMethod::Catalog => write!(f, "catalog"),
            ThetaMethod::Rogers => write!(f, "rogers"),
            ThetaMethod::External => write!(f, "external"),
        }
    }
}

/// A certified upper bound on a covering density: `value.hi` bounds the
/// density from above under the method's cited guarantee, and
/// `value.lo ≥ 1` because no covering has density below 1.
#[derive(Debug, Clone)]
pub struct ThetaBound {
    pub n: Dimension,
    pub value: Enclosure,
    pub method: ThetaMethod,
}

/// Outcome of the Rogers grid minimization: `r.hi` is a certified upper
/// bound on `r_n` (every grid value bounds the infimum), `best_j` records
/// the minimizing grid index, and `r.lo = 1` is the trivial floor.
#[derive(Debug, Clone)]
pub struct RogersResult {
    pub n: Dimension,
    pub grid_n: u32,
    pub best_j: u32,
    pub r: Enclosure,
}

/// Best published lattice covering densities of the ball, dimensions 2–13,
/// exactly as printed (six decimals) in Schürmann & Vallentin 2006 and the
/// survey table derived from it. Stored as `(n, printed value × 10⁶)` so the
/// +5·10⁻⁶ certification margin stays exact rational arithmetic.
const CATALOG_MICRO: [(u32, u64); 12] = [
    (2, 1_209_199),  // A₂* (hexagonal), optimal lattice covering of the plane
    (3, 1_463_505),  // A₃*, optimal among lattices (Bambah)
    (4, 1_765_529),  // A₄*, optimal among lattices
    (5, 2_124_286),  // A₅*, optimal among lattices
    (6, 2_464_801),  // Schürmann & Vallentin 2006, better than A₆*
    (7, 2_900_024),  // Schürmann & Vallentin 2006, better than A₇*
    (8, 3_142_202),  // Schürmann & Vallentin 2006, better than A₈*
    (9, 4_340_185),  // best known, Schürmann & Vallentin 2006 survey
    (10, 5_251_713), // best known (Aₙ* family)
    (11, 5_598_338), // best known
    (12, 7_510_113), // best known
    (13, 7_864_060), // best known
];

/// Truncation margin: published densities carry six decimals, so the true
/// density can exceed the printed value by strictly less than 10⁻⁶; adding
/// 5·10⁻⁶ certifies the upper bound with room to spare.
fn catalog_margin() -> Rational {
    Rational::from((5, 1_000_000))
}

/// Exact rational power by repeated multiplication (exponents here are at
/// most 32).
fn rational_pow(base: &Rational, k: u32) -> Rational {
    let mut acc = Rational::from(1);
    for _ in 0..k {
        acc *= base;
    }
    acc
}

/// Raises an enclosure's lower endpoint to 1 (densities are never below 1;
/// intersecting with `[1, ∞)` is sound and keeps the invariant).
fn floor_density_at_one(value: Enclosure) -> Enclosure {
    if *value.lo() < 1 {
        let one = Float::with_val(value.lo().prec(), 1);
        Enclosure::from_endpoints(one, value.hi().clone())
    } else {
        value
    }
}

/// Covering density of the `Aₙ*` lattice:
/// `θ(Bⁿ) ≤ |Bⁿ| · √(n+1) · (n(n+2)/(12(n+1)))^{n/2}`.
///
/// The rational base is raised to its integer part exactly; the leftover
/// half power merges with `√(n+1)` (odd `n` turns the two roots into the
/// single root `√(n(n+2)/12)`), so one square root and one π power carry
/// all the rounding. Requires `n ≥ 2`.
pub fn theta_anstar(n: Dimension, p: Precision) -> ThetaBound {
    assert!(n.get() >= 2, "the A_n^* covering bound needs n >= 2");
    let work = p.with_guard(16);
    let nv = n.get() as u64;
    let base = Rational::from((nv * (nv + 2), 12 * (nv + 1)));
    let value = if nv % 2 == 0 {
        let exact = rational_pow(&base, (nv / 2) as u32);
        let root = Enclosure::point_u64(nv + 1, work).sqrt().expect("n+1 > 0");
        ball_volume(n, work)
            .mul(&root)
            .mul(&Enclosure::from_rational(&exact, work))
    } else {
        // √(n+1) · base^{1/2} = √(n(n+2)/12).
        let exact = rational_pow(&base, ((nv - 1) / 2) as u32);
        let merged = Rational::from((nv * (nv + 2), 12));
        let root = Enclosure::from_rational(&merged, work)
            .sqrt()
            .expect("n(n+2)/12 > 0");
        ball_volume(n, work)
            .mul(&root)
            .mul(&Enclosure::from_rational(&exact, work))
    };
    ThetaBound {
        n,
        value: floor_density_at_one(value.with_precision(p)),
        method: ThetaMethod::Anstar,
    }
}

/// Catalog lookup with the uniform certification margin applied:
/// `hi = printed + 5·10⁻⁶`, `lo = 1`. Available for `2 ≤ n ≤ 13`.
pub fn theta_catalog(n: Dimension) -> Result<ThetaBound> {
    theta_catalog_with(n, &[])
}

/// Catalog lookup honoring caller-supplied replacement rows (newer density
/// records); each override receives the same truncation margin as the
/// built-in rows. Rows not overridden fall back to the catalog.
pub fn theta_catalog_with(n: Dimension, overrides: &[(u32, Rational)]) -> Result<ThetaBound> {
    let printed: Option<Rational> = overrides
        .iter()
        .find(|(m, _)| *m == n.get())
        .map(|(_, v)| v.clone())
        .or_else(|| {
            CATALOG_MICRO
                .iter()
                .find(|(m, _)| *m == n.get())
                .map(|(_, micro)| Rational::from((*micro, 1_000_000)))
        });
    let Some(printed) = printed else {
        return Err(Error::NotAvailable(format!(
            "no published covering density on record for n = {n}"
        )));
    };
    let hi_exact = printed + catalog_margin();
    let p = Precision::DEFAULT;
    // The margin certifies hi ≥ θ with ~4.5·10⁻⁶ of slack, so representing
    // the exact rational by the float just below it (loss < 2⁻¹²²) keeps the
    // bound sound while letting directed decimal output reproduce the
    // published six-decimal value verbatim.
    let hi = Float::with_val_round(p.bits(), &hi_exact, Round::Down).0;
    let lo = Float::with_val(p.bits(), 1);
    Ok(ThetaBound {
        n,
        value: Enclosure::from_endpoints(lo, hi),
        method: ThetaMethod::Catalog,
    })
}

/// Parses an override file: one `n value` pair per line, decimal text
/// (e.g. `6 2.464013`). Blank lines and `#` comments are ignored.
pub fn parse_catalog_overrides(text: &str) -> Result<Vec<(u32, Rational)>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(n_txt), Some(v_txt), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Domain(format!(
                "override line {}: expected `n value`, got {line:?}",
                lineno + 1
            )));
        };
        let n: u32 = n_txt.parse().map_err(|_| {
            Error::Domain(format!("override line {}: bad dimension {n_txt:?}", lineno + 1))
        })?;
        let value = parse_decimal(v_txt).ok_or_else(|| {
            Error::Domain(format!("override line {}: bad decimal {v_txt:?}", lineno + 1))
        })?;
        if value <= 0 {
            return Err(Error::Domain(format!(
                "override line {}: density must be positive",
                lineno + 1
            )));
        }
        rows.push((n, value));
    }
    Ok(rows)
}

/// Exact decimal-to-rational conversion (`"2.464013"` → 2464013/10⁶).
fn parse_decimal(text: &str) -> Option<Rational> {
    let (int_part, frac_part) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let digits: String = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let num = Integer::from_str_radix(&digits, 10).ok()?;
    let den = Integer::from(Integer::u_pow_u(10, frac_part.len() as u32));
    Some(Rational::from((num, den)))
}

/// Enclosure of `f_n(x) = (1+x)ⁿ (1 − n ln x)` over `x`; the domain is
/// `0 < x < 1/n` (where `ln x < 0` keeps the second factor positive).
pub fn rogers_f(n: Dimension, x: &Enclosure, p: Precision) -> Result<Enclosure> {
    let bad_low = x.lo().is_sign_negative() || x.lo().is_zero();
    let inv_n = Rational::from((1u32, n.get()));
    if bad_low || !(x.hi().to_rational().map(|r| r < inv_n).unwrap_or(false)) {
        return Err(Error::Contract(format!(
            "Rogers function needs 0 < x < 1/{}, got [{}, {}]",
            n.get(),
            x.lo(),
            x.hi()
        )));
    }
    let work = p.with_guard(16);
    let one = Enclosure::point_i64(1, work);
    let nv = Enclosure::point_u64(n.get() as u64, work);
    let x_work = x.with_precision(work);
    let first = one.add(&x_work).pow_u32(n.get());
    let second = one.sub(&nv.mul(&x_work.ln()?));
    Ok(first.mul(&second).with_precision(p))
}

/// Upper bound on `r_n = inf f_n` by brute grid evaluation at the points
/// `x_j = j/(grid_n · n)`, `1 ≤ j ≤ grid_n − 1`: the bound is the smallest
/// upper endpoint seen (any single grid value already bounds the infimum).
///
/// `best_j` is the index attaining the minimum; ties resolve to the
/// smallest index, so the result is deterministic. Requires `grid_n ≥ 2`.
pub fn rogers_rn(n: Dimension, grid_n: u32, p: Precision) -> RogersResult {
    assert!(grid_n >= 2, "grid must have at least one interior point");
    let mut best_hi: Option<Float> = None;
    let mut best_j = 0u32;
    for j in 1..grid_n {
        let x_exact = Rational::from((j, grid_n * n.get()));
        let x = Enclosure::from_rational(&x_exact, p);
        let fx = rogers_f(n, &x, p).expect("grid points lie inside (0, 1/n)");
        let hi = fx.hi().clone();
        if best_hi.as_ref().map(|b| hi < *b).unwrap_or(true) {
            best_hi = Some(hi);
            best_j = j;
        }
    }
    let hi = best_hi.expect("grid has at least one point");
    let lo = Float::with_val(p.bits(), 1);
    RogersResult {
        n,
        grid_n,
        best_j,
        r: Enclosure::from_endpoints(lo, hi),
    }
}

/// Hadwiger-type covering corollaries of the Rogers bound:
/// `H_n ≤ binom(2n, n) · r_n` and `H_n^s ≤ 2ⁿ · r_n`, floored to integers
/// (the covering numbers are integers, so flooring the real upper bound is
/// valid). Uses the full-precision `r.hi` from the default 1000-point grid.
/// Requires `n ≥ 3`.
pub fn rogers_hadwiger(n: Dimension, class: BodyClass, p: Precision) -> Integer {
    assert!(n.get() >= 3, "Rogers-based covering bounds are used from n = 3 on");
    let rr = rogers_rn(n, 1000, p);
    let factor = match class {
        BodyClass::General => binomial(2 * n.get(), n.get()),
        BodyClass::Symmetric => Integer::from(1) << n.get(),
    };
    let work = p.with_guard(64);
    let product = Float::with_val_round(work.bits(), rr.r.hi() * factor, Round::Up).0;
    floor_int(&product)
}

/// The tightest available upper bound on the ball covering density θ(Bⁿ):
/// the candidate with minimal upper endpoint among the `Aₙ*` formula (all
/// `n ≥ 2`), the published catalog (`2 ≤ n ≤ 13`), and in the plane Fáry's
/// worst-case constant 3/2. Ties keep the earlier candidate in that fixed
/// order, so the choice is deterministic.
pub fn theta_best(n: Dimension, p: Precision) -> ThetaBound {
    theta_best_with(n, p, &[])
}

/// [`theta_best`] with catalog override rows (see [`theta_catalog_with`]).
pub fn theta_best_with(
    n: Dimension,
    p: Precision,
    overrides: &[(u32, Rational)],
) -> ThetaBound {
    let mut best = theta_anstar(n, p);
    let consider = |cand: ThetaBound, best: &mut ThetaBound| {
        if cand.value.hi() < best.value.hi() {
            *best = cand;
        }
    };
    if let Ok(cat) = theta_catalog_with(n, overrides) {
        consider(cat, &mut best);
    }
    if n.get() == 2 {
        // Fáry 1950: every planar convex body covers with density ≤ 3/2.
        let fary = Enclosure::from_rational(&Rational::from((3, 2)), p);
        consider(
            ThetaBound {
                n,
                value: fary,
                method: ThetaMethod::External,
            },
            &mut best,
        );
    }
    best
}
