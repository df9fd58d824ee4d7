//! Certified enclosures of the error function and the standard normal CDF.
//!
//! Two regimes, split at `|x| = 8`:
//!
//! * **Maclaurin series** `erf(x) = (2/√π) Σ (−1)^k x^{2k+1} / (k!(2k+1))`
//!   for the core range. The series alternates with eventually decreasing
//!   terms, so truncating after term `K` leaves a remainder no larger than
//!   the first omitted term — a fully rigorous bound. Evaluation runs at a
//!   boosted internal precision (the largest term grows like `e^{x²}`, so
//!   roughly `x²·log₂e` mantissa bits cancel before the sum settles).
//! * **Mills-ratio bounds** for the tails, where the series would need huge
//!   cancellation: with `φ` the standard normal density,
//!   `y/(1+y²)·φ(y) ≤ 1−F(y) ≤ φ(y)/y` for `y > 0`, applied at `y = x√2`
//!   through `erf(x) = 1 − 2(1−F(x√2))`.
//!
//! Both regimes round every step outward, so the returned interval always
//! contains the true value; widths are a few ulps at the requested output
//! precision.

use super::{Enclosure, Precision};
use rug::float::Round;
use rug::ops::{AddAssignRound, MulAssignRound, SubAssignRound};
use rug::{Float, Rational};

/// Series/tail crossover for point arguments.
const SERIES_LIMIT: f64 = 8.0;

/// Enclosure of `erf` over `x`, clamped to `[−1, 1]`, at output precision `p`.
///
/// `erf` is odd and strictly increasing, so the endpoints map to the
/// endpoints, and every argument reduces to point evaluations on `[0, ∞)`.
/// The two endpoints are always evaluated separately: pushing an interval
/// through the alternating series in one pass would amplify its width by
/// roughly `e^{x²}` (the term-wise derivative sum), turning a few-ulp
/// argument into a uselessly wide tail enclosure.
pub fn erf_enclosure(x: &Enclosure, p: Precision) -> Enclosure {
    if x.lo().is_zero() && x.hi().is_zero() {
        return Enclosure::point_i64(0, p);
    }
    let lo_box = erf_at(x.lo(), p);
    let hi_box = erf_at(x.hi(), p);
    Enclosure::from_endpoints(lo_box.lo().clone(), hi_box.hi().clone())
}

/// Enclosure of the standard normal CDF `F` over `x`, clamped to `[0, 1]`:
/// `F(x) = 1/2 + erf(x/√2)/2`.
pub fn std_normal_cdf(x: &Enclosure, p: Precision) -> Enclosure {
    let work = p.with_guard(8);
    let half = Enclosure::from_rational(&Rational::from((1, 2)), work);
    let inv_sqrt2 = half.sqrt().expect("sqrt of 1/2");
    let arg = x.with_precision(work).mul(&inv_sqrt2);
    let e = erf_enclosure(&arg, work);
    let one = Enclosure::point_i64(1, work);
    one.add(&e)
        .mul(&half)
        .clamp_i64(0, 1)
        .with_precision(p)
}

/// Point evaluation: a thin enclosure of `erf(f)` for a single float.
fn erf_at(f: &Float, p: Precision) -> Enclosure {
    if f.is_zero() {
        return Enclosure::point_i64(0, p);
    }
    if f.is_sign_negative() {
        let pos = Float::with_val(f.prec(), -f);
        return erf_at(&pos, p).neg();
    }
    let point = Enclosure::from_endpoints(f.clone(), f.clone());
    if *f <= SERIES_LIMIT {
        series_nonneg(&point, p)
    } else {
        mills_tail(&point, p)
    }
}

/// Alternating Maclaurin series for a point argument in `[0, SERIES_LIMIT]`
/// (passed as a degenerate enclosure; only rounding separates the tracked
/// endpoints).
///
/// Terms obey `t_k = t_{k−1} · x² · (2k−1)/(k(2k+1))`, so the ratio is at
/// most `x²/k`; from `k ≥ ⌈x²⌉` on, magnitudes strictly decrease and the
/// classic alternating-series bound applies: the error after summing term
/// `K` is at most `|t_{K+1}|`. Both endpoints of every term and of the
/// running sum are rounded outward.
fn series_nonneg(x: &Enclosure, p: Precision) -> Enclosure {
    let x_hi_f = x.hi().to_f64().min(SERIES_LIMIT);
    // The largest term is about e^{x²}, so that many bits cancel; add them
    // as guard bits (containment never depends on this estimate — only the
    // output width does).
    let guard = (x_hi_f * x_hi_f * std::f64::consts::LOG2_E).ceil() as u32 + 2;
    let work = p.with_guard(guard + 32);
    let bits = work.bits();

    // Squared argument, outward.
    let s_lo = Float::with_val_round(bits, x.lo() * x.lo(), Round::Down).0;
    let s_hi = Float::with_val_round(bits, x.hi() * x.hi(), Round::Up).0;

    // Term magnitude interval and running sum, both outward; term 0 is x.
    let mut t_lo = Float::with_val_round(bits, x.lo(), Round::Down).0;
    let mut t_hi = Float::with_val_round(bits, x.hi(), Round::Up).0;
    let mut sum_lo = t_lo.clone();
    let mut sum_hi = t_hi.clone();

    // Terms decrease once k exceeds x²; stop only in the decreasing regime.
    let k_min = (x_hi_f * x_hi_f).ceil() as u64 + 1;
    let eps = Float::with_val(32, Float::i_exp(1, -(p.bits() as i32 + 16)));

    let mut k: u64 = 1;
    loop {
        let ratio = Rational::from((2 * k - 1, k * (2 * k + 1)));
        t_lo.mul_assign_round(&s_lo, Round::Down);
        t_lo.mul_assign_round(&ratio, Round::Down);
        t_hi.mul_assign_round(&s_hi, Round::Up);
        t_hi.mul_assign_round(&ratio, Round::Up);
        if k % 2 == 1 {
            sum_lo.sub_assign_round(&t_hi, Round::Down);
            sum_hi.sub_assign_round(&t_lo, Round::Up);
        } else {
            sum_lo.add_assign_round(&t_lo, Round::Down);
            sum_hi.add_assign_round(&t_hi, Round::Up);
        }
        if k >= k_min && t_hi < eps {
            break;
        }
        k += 1;
        assert!(k < 1_000_000, "error-function series failed to converge");
    }

    // First omitted term bounds the truncation error in both directions.
    let next_ratio = Rational::from((2 * k + 1, (k + 1) * (2 * k + 3)));
    let mut rem = t_hi.clone();
    rem.mul_assign_round(&s_hi, Round::Up);
    rem.mul_assign_round(&next_ratio, Round::Up);
    sum_lo.sub_assign_round(&rem, Round::Down);
    sum_hi.add_assign_round(&rem, Round::Up);

    // Scale by 2/√π.
    let sqrt_pi = Enclosure::pi(work).sqrt().expect("sqrt of pi");
    let two = Enclosure::point_i64(2, work);
    let scale = two.div(&sqrt_pi).expect("sqrt(pi) is positive");
    Enclosure::from_endpoints(sum_lo, sum_hi)
        .mul(&scale)
        .clamp_i64(-1, 1)
        .with_precision(p)
}

/// Mills-ratio tail bounds for a thin positive argument beyond the series
/// range: with `y = x√2 > 0`,
/// `erf(x) ∈ [1 − 2φ(y)/y, 1 − 2yφ(y)/(1+y²)]`.
fn mills_tail(x: &Enclosure, p: Precision) -> Enclosure {
    let work = p.with_guard(32);
    let two = Enclosure::point_i64(2, work);
    let one = Enclosure::point_i64(1, work);
    let half = Enclosure::from_rational(&Rational::from((1, 2)), work);

    let sqrt2 = two.sqrt().expect("sqrt of 2");
    let y = x.with_precision(work).mul(&sqrt2);
    let y_sq = y.mul(&y);
    // φ(y) = e^{−y²/2} / √(2π).
    let sqrt_two_pi = two
        .mul(&Enclosure::pi(work))
        .sqrt()
        .expect("sqrt of 2*pi");
    let density = y_sq
        .mul(&half)
        .neg()
        .exp()
        .div(&sqrt_two_pi)
        .expect("sqrt(2*pi) is positive");

    // Upper bound on the tail 1−F(y) gives the lower erf endpoint and vice
    // versa.
    let tail_hi = density.div(&y).expect("y > 0");
    let tail_lo = y
        .mul(&density)
        .div(&one.add(&y_sq))
        .expect("1 + y^2 > 0");
    let lo_side = one.sub(&two.mul(&tail_hi));
    let hi_side = one.sub(&two.mul(&tail_lo));
    Enclosure::from_endpoints(lo_side.lo().clone(), hi_side.hi().clone())
        .clamp_i64(-1, 1)
        .with_precision(p)
}
