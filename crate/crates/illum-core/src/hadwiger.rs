//! Assembly of certified integer covering bounds `C(K, int K)` — and hence
//! Hadwiger-number bounds — from quermassintegral estimates.
//!
//! The engine is the translative-covering estimate
//! `C(K, int K) ≤ θ(B₂ⁿ)/|B₂ⁿ| · Σ_j binom(n,j) W_j(K)`, applied to a body
//! `K` in John position (inball `B₂ⁿ`, outer ball `R·B₂ⁿ` with `R = n` in
//! general and `R = √n` for centrally symmetric `K`). Four bound sources
//! fill the quermassintegral vector:
//!
//! * `volume` — every `W_j ≤ W_0`, and `W_0` is maximized by the regular
//!   simplex (general) or the cube (symmetric) in John position;
//! * `meanwidth` — `W_{n−1}` via the simplex mean width or the cube's
//!   closed form `2|B^{n−1}|`;
//! * `exact_ball` — `W_n = |B₂ⁿ|` identically;
//! * `bonnesen(i,k)` — the Bokowski–Heil interpolation
//!   `W_j ≤ B_{R,i,j,k}(W_i, W_k)` filling the gap between two anchors.
//!
//! [`plan_general`] and [`plan_symmetric`] reproduce the hand-chosen anchor
//! triples of the source computation; [`auto_plan`] searches all admissible
//! triples to a fixpoint and can only do better. [`best_bound`] selects
//! among the John-position assembly, the Rogers-based counting bound, and
//! externally certified constants in low dimensions.

use crate::covering::{rogers_hadwiger, rogers_rn, theta_best_with, ThetaBound, ThetaMethod};
use crate::enclosure::{floor_int, Enclosure, Precision};
use crate::error::{Error, Result};
use crate::geometry::{
    ball_volume, cube_constants, simplex_volume_bound, steiner_sum, BodyClass, Dimension,
};
use crate::meanwidth::{simplex_mean_width, simplex_wn_minus_1, MeanWidthResult, QuadratureParams};
use rug::float::Round;
use rug::{Float, Integer, Rational};
use std::fmt;
use std::fmt::Write as _;

/// Where a quermassintegral bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WSource {
    /// `W_j ≤ W_0 ≤` extremal-body volume bound.
    Volume,
    /// Mean-width-type bound at index `n−1`.
    MeanWidth,
    /// `W_n = |B₂ⁿ|`, exact.
    ExactBall,
    /// Bokowski–Heil interpolation between anchor indices `i < j < k`.
    Bonnesen { i: u32, k: u32 },
}

impl fmt::Display for WSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WSource::Volume => write!(f, "volume"),
            WSource::MeanWidth => write!(f, "meanwidth"),
            WSource::ExactBall => write!(f, "exact_ball"),
            WSource::Bonnesen { i, k } => write!(f, "bonnesen({i},{k})"),
        }
    }
}

/// One quermassintegral upper bound with its provenance.
#[derive(Debug, Clone)]
pub struct WEntry {
    pub bound: Enclosure,
    pub source: WSource,
}

/// A full vector of quermassintegral bounds for a body class in John
/// position: `w[j]` bounds `W_j(K)` from above for every body of the class,
/// `w[n]` is exactly `|B₂ⁿ|`, and `r` is the outer-ball radius (`n` in
/// general, `√n` for symmetric bodies).
#[derive(Debug, Clone)]
pub struct QuermassBounds {
    pub n: Dimension,
    pub cls: BodyClass,
    pub r: Enclosure,
    pub w: Vec<WEntry>,
}

/// How a Hadwiger-type integer bound was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMethod {
    /// John-position Steiner assembly.
    John,
    /// Rogers covering bound with counting factors.
    Rogers,
    /// Externally certified constant from the literature.
    External,
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundMethod::John => write!(f, "john"),
            BoundMethod::Rogers => write!(f, "rogers"),
            BoundMethod::External => write!(f, "external"),
        }
    }
}

/// A certified integer covering bound with its derivation record.
#[derive(Debug, Clone)]
pub struct HadwigerBound {
    pub n: Dimension,
    pub cls: BodyClass,
    /// The real-valued bound before flooring.
    pub real_bound: Enclosure,
    /// `floor(real_bound.hi)` — valid because covering numbers are integers.
    pub integer_bound: Integer,
    /// The covering-density bound that entered the assembly, when one did.
    pub theta_used: Option<ThetaBound>,
    pub method: BoundMethod,
    /// One line per ingredient: sources and upper endpoints.
    pub plan_trace: String,
}

/// The Bokowski–Heil Bonnesen-style interpolation
/// `B_{R,i,j,k}(W_i, W_k) = ((k−j)(i+1)R^i·W_i + (j−i)(k+1)R^k·W_k) /
/// ((k−i)(j+1)R^j)` bounding `W_j` for bodies with inball `B₂ⁿ` and outer
/// ball `R·B₂ⁿ`.
///
/// Requires `0 ≤ i < j < k ≤ n`, `R.lo > 0`, and nonnegative anchors. The
/// expression is increasing in both anchors but not monotone in `R`, so `R`
/// goes through interval powers and division intact, keeping containment
/// over the whole radius enclosure.
#[allow(clippy::too_many_arguments)]
pub fn bonnesen(
    n: Dimension,
    r: &Enclosure,
    i: u32,
    j: u32,
    k: u32,
    wi: &Enclosure,
    wk: &Enclosure,
    p: Precision,
) -> Result<Enclosure> {
    if !(i < j && j < k && k <= n.get()) {
        return Err(Error::Contract(format!(
            "Bonnesen indices must satisfy 0 <= i < j < k <= n, got ({i}, {j}, {k}) with n={n}"
        )));
    }
    if r.lo().is_sign_negative() || r.lo().is_zero() {
        return Err(Error::Contract("outer radius must be positive".into()));
    }
    if (wi.lo().is_sign_negative() && !wi.lo().is_zero())
        || (wk.lo().is_sign_negative() && !wk.lo().is_zero())
    {
        return Err(Error::Contract("anchor quermassintegrals must be nonnegative".into()));
    }
    let work = p.with_guard(16);
    let r_work = r.with_precision(work);
    let c_i = Enclosure::point_u64(u64::from(k - j) * u64::from(i + 1), work);
    let c_k = Enclosure::point_u64(u64::from(j - i) * u64::from(k + 1), work);
    let c_j = Enclosure::point_u64(u64::from(k - i) * u64::from(j + 1), work);
    let term_i = c_i.mul(&r_work.pow_u32(i)).mul(&wi.with_precision(work));
    let term_k = c_k.mul(&r_work.pow_u32(k)).mul(&wk.with_precision(work));
    let denom = c_j.mul(&r_work.pow_u32(j));
    Ok(term_i.add(&term_k).div(&denom)?.with_precision(p))
}

/// The hand-chosen anchor plans for general convex bodies,
/// `n ∈ {5, 6, 7, 8}` (John position, outer radius `R = n`):
///
/// * low indices take the simplex volume bound,
/// * index `n−1` takes the simplex mean-width bound from `mw`,
/// * index `n` is the exact ball,
/// * the gap (index `n−2`, and also `n−3` when `n ≥ 7`) is interpolated by
///   `bonnesen` anchored at the highest volume index and at `n−1`.
pub fn plan_general(n: Dimension, mw: &MeanWidthResult, p: Precision) -> Result<QuermassBounds> {
    let nv = n.get();
    if !(5..=8).contains(&nv) {
        return Err(Error::NotAvailable(format!(
            "no validated general-body anchor plan for n = {nv} (supported: 5..=8)"
        )));
    }
    if mw.n != n {
        return Err(Error::Contract(format!(
            "mean-width result is for n = {}, plan needs n = {nv}",
            mw.n
        )));
    }
    // Volume bound fills 0..=v_top; Bonnesen fills v_top+1..=n-2.
    let v_top = if nv <= 6 { nv - 3 } else { nv - 4 };
    let r = Enclosure::point_u64(u64::from(nv), p);
    let volume = simplex_volume_bound(n, p);
    let wn1 = simplex_wn_minus_1(n, mw, p);
    let ball = ball_volume(n, p);

    let mut w: Vec<WEntry> = Vec::with_capacity(nv as usize + 1);
    for _ in 0..=v_top {
        w.push(WEntry { bound: volume.clone(), source: WSource::Volume });
    }
    for j in (v_top + 1)..=(nv - 2) {
        let bound = bonnesen(n, &r, v_top, j, nv - 1, &volume, &wn1, p)?;
        w.push(WEntry { bound, source: WSource::Bonnesen { i: v_top, k: nv - 1 } });
    }
    w.push(WEntry { bound: wn1, source: WSource::MeanWidth });
    w.push(WEntry { bound: ball, source: WSource::ExactBall });
    Ok(QuermassBounds { n, cls: BodyClass::General, r, w })
}

/// The anchor plans for centrally symmetric bodies, `n ∈ {4, 5, 6}` (John
/// position, outer radius `R = √n`; exactly 2 for `n = 4`): the cube is the
/// extremal body, so every ingredient is closed-form — `2ⁿ` at low indices,
/// `2|B^{n−1}|` at `n−1`, the exact ball at `n`, and Bonnesen interpolation
/// between them. No quadrature is involved.
pub fn plan_symmetric(n: Dimension, p: Precision) -> Result<QuermassBounds> {
    let nv = n.get();
    if !(4..=6).contains(&nv) {
        return Err(Error::NotAvailable(format!(
            "no validated symmetric-body anchor plan for n = {nv} (supported: 4..=6)"
        )));
    }
    let r = Enclosure::point_u64(u64::from(nv), p)
        .sqrt()
        .expect("n > 0");
    let (w0, wn1) = cube_constants(n, p);
    let ball = ball_volume(n, p);
    let v_top = if nv == 4 { 1 } else { 2 };

    let mut w: Vec<WEntry> = Vec::with_capacity(nv as usize + 1);
    for _ in 0..=v_top {
        w.push(WEntry { bound: w0.clone(), source: WSource::Volume });
    }
    for j in (v_top + 1)..=(nv - 2) {
        let bound = bonnesen(n, &r, v_top, j, nv - 1, &w0, &wn1, p)?;
        w.push(WEntry { bound, source: WSource::Bonnesen { i: v_top, k: nv - 1 } });
    }
    w.push(WEntry { bound: wn1, source: WSource::MeanWidth });
    w.push(WEntry { bound: ball, source: WSource::ExactBall });
    Ok(QuermassBounds { n, cls: BodyClass::Symmetric, r, w })
}

/// Combines a quermassintegral vector with a covering-density bound:
/// `real_bound = θ · Σ_j binom(n,j) W_j / |B₂ⁿ|`, whose upper endpoint uses
/// `θ.hi`, the `W_j.hi`, and the ball volume's lower endpoint; the integer
/// bound is its floor.
///
/// If the upper endpoint lands within `2⁻²⁰` of an integer, the combination
/// is redone at doubled precision before flooring, so combination rounding
/// alone can never push the floor across an integer boundary.
pub fn assemble(
    n: Dimension,
    q: &QuermassBounds,
    theta: &ThetaBound,
    p: Precision,
) -> Result<HadwigerBound> {
    assert_eq!(q.n, n, "quermassintegral vector belongs to a different dimension");
    assert_eq!(theta.n, n, "density bound belongs to a different dimension");

    let combine = |prec: Precision| -> Result<Enclosure> {
        let bounds: Vec<Enclosure> = q
            .w
            .iter()
            .map(|e| e.bound.with_precision(prec))
            .collect();
        let steiner = steiner_sum(n, &bounds)?;
        let ball = ball_volume(n, prec);
        Ok(theta
            .value
            .with_precision(prec)
            .mul(&steiner)
            .div(&ball)?
            .with_precision(p))
    };

    let mut real_bound = combine(p.with_guard(16))?;
    let nearest = real_bound
        .hi()
        .to_integer_round(Round::Nearest)
        .expect("finite bound")
        .0;
    let dist = Float::with_val(64, real_bound.hi() - &nearest).abs();
    if dist < Float::with_val(32, Float::i_exp(1, -20)) {
        real_bound = combine(p.doubled())?;
    }
    let integer_bound = floor_int(real_bound.hi());

    let mut trace = String::new();
    for (j, entry) in q.w.iter().enumerate() {
        let _ = writeln!(
            trace,
            "W_{j}: {} <= {}",
            entry.source,
            entry.bound.decimal_hi(6)
        );
    }
    let _ = writeln!(trace, "theta: {} <= {}", theta.method, theta.value.decimal_hi(6));
    let _ = writeln!(
        trace,
        "bound: theta * steiner / ball <= {} -> {}",
        real_bound.decimal_hi(6),
        integer_bound
    );

    Ok(HadwigerBound {
        n,
        cls: q.cls,
        real_bound,
        integer_bound,
        theta_used: Some(theta.clone()),
        method: BoundMethod::John,
        plan_trace: trace,
    })
}

/// Relative improvement threshold for the fixpoint iteration: roughly one
/// rounding step at quermassintegral scale, far below any real gain a new
/// anchor triple can contribute.
fn improvement_eps(hi: &Float) -> Float {
    Float::with_val(64, hi * Float::with_val(64, Float::i_exp(1, -40))).abs()
}

/// Generalizes the hand-chosen plans: start from the volume bound
/// everywhere (every `W_j ≤ W_0`), the mean-width bound at `n−1`, and the
/// exact ball at `n`; then repeatedly sweep all admissible Bonnesen triples
/// `(i, j, k)`, replacing any entry a candidate improves, until a sweep
/// improves nothing by more than a rounding step.
///
/// Entries only decrease, and the hand plans' candidates are all in the
/// search space, so the result never loses to [`plan_general`] /
/// [`plan_symmetric`] on the same inputs. Supported for the same dimensions
/// as those plans.
pub fn auto_plan(
    n: Dimension,
    cls: BodyClass,
    mw: &MeanWidthResult,
    p: Precision,
) -> Result<QuermassBounds> {
    let nv = n.get();
    let (r, volume, wn1) = match cls {
        BodyClass::General => {
            if !(5..=8).contains(&nv) {
                return Err(Error::NotAvailable(format!(
                    "no general-body anchors for n = {nv} (supported: 5..=8)"
                )));
            }
            if mw.n != n {
                return Err(Error::Contract(format!(
                    "mean-width result is for n = {}, auto plan needs n = {nv}",
                    mw.n
                )));
            }
            (
                Enclosure::point_u64(u64::from(nv), p),
                simplex_volume_bound(n, p),
                simplex_wn_minus_1(n, mw, p),
            )
        }
        BodyClass::Symmetric => {
            if !(4..=6).contains(&nv) {
                return Err(Error::NotAvailable(format!(
                    "no symmetric-body anchors for n = {nv} (supported: 4..=6)"
                )));
            }
            let (w0, wn1) = cube_constants(n, p);
            (
                Enclosure::point_u64(u64::from(nv), p).sqrt().expect("n > 0"),
                w0,
                wn1,
            )
        }
    };

    let ball = ball_volume(n, p);
    let mut w: Vec<WEntry> = (0..nv)
        .map(|_| WEntry { bound: volume.clone(), source: WSource::Volume })
        .collect();
    // The mean-width bound is far below the volume bound at n−1 in every
    // supported case, but take the minimum anyway for robustness.
    if wn1.hi() < w[nv as usize - 1].bound.hi() {
        w[nv as usize - 1] = WEntry { bound: wn1, source: WSource::MeanWidth };
    }
    w.push(WEntry { bound: ball, source: WSource::ExactBall });

    // Monotone bounded iteration: entries only decrease and the candidate
    // set is finite, so a fixpoint exists; the cap is pure defense.
    for _sweep in 0..(4 * nv as usize) {
        let mut improved = false;
        for j in 1..nv {
            let mut best: Option<(Enclosure, u32, u32)> = None;
            for i in 0..j {
                for k in (j + 1)..=nv {
                    let cand = bonnesen(n, &r, i, j, k, &w[i as usize].bound, &w[k as usize].bound, p)?;
                    if best
                        .as_ref()
                        .map(|(b, _, _)| cand.hi() < b.hi())
                        .unwrap_or(true)
                    {
                        best = Some((cand, i, k));
                    }
                }
            }
            if let Some((cand, i, k)) = best {
                let cur_hi = w[j as usize].bound.hi().clone();
                if Float::with_val(160, cand.hi() + improvement_eps(&cur_hi)) < cur_hi {
                    w[j as usize] = WEntry { bound: cand, source: WSource::Bonnesen { i, k } };
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    Ok(QuermassBounds { n, cls, r, w })
}

/// Externally certified low-dimensional constants: `(n, class, bound,
/// citation)`.
const EXTERNAL_BOUNDS: [(u32, BodyClass, u64, &str); 3] = [
    (3, BodyClass::General, 14, "Prymak 2023"),
    (4, BodyClass::General, 96, "Prymak & Shepelska 2020"),
    (3, BodyClass::Symmetric, 8, "Lassak 1984"),
];

/// The literature citation backing the externally certified constant for
/// `(n, cls)`, if one is in use (n = 3, 4 general; n = 3 symmetric).
pub fn external_citation(n: Dimension, cls: BodyClass) -> Option<&'static str> {
    EXTERNAL_BOUNDS
        .iter()
        .find(|(en, ecls, _, _)| *en == n.get() && *ecls == cls)
        .map(|(_, _, _, source)| *source)
}

/// Which quermassintegral plan the John-position assembly uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanKind {
    /// The hand-chosen anchor layouts of [`plan_general`] /
    /// [`plan_symmetric`].
    Hand,
    /// The fixpoint search of [`auto_plan`].
    Auto,
}

/// The John-position assembly as a standalone bound. Errors with
/// not-available outside the supported ranges (general 5–8, symmetric 4–6).
/// `overrides` replace catalog covering-density rows, as in
/// `theta_catalog_with`.
pub fn john_bound(
    n: Dimension,
    cls: BodyClass,
    params: &QuadratureParams,
    plan: PlanKind,
    overrides: &[(u32, Rational)],
    p: Precision,
) -> Result<HadwigerBound> {
    // Reject unsupported dimensions before paying for the quadrature.
    if cls == BodyClass::General && !(5..=8).contains(&n.get()) {
        return Err(Error::NotAvailable(format!(
            "no validated general-body anchor plan for n = {n} (supported: 5..=8)"
        )));
    }
    let q = match (cls, plan) {
        (BodyClass::General, PlanKind::Hand) => {
            let mw = simplex_mean_width(n, params, p);
            plan_general(n, &mw, p)?
        }
        (BodyClass::General, PlanKind::Auto) => {
            let mw = simplex_mean_width(n, params, p);
            auto_plan(n, cls, &mw, p)?
        }
        (BodyClass::Symmetric, PlanKind::Hand) => plan_symmetric(n, p)?,
        (BodyClass::Symmetric, PlanKind::Auto) => {
            // The symmetric anchors are closed-form; the mean-width argument
            // is a signature placeholder, so a one-node record suffices.
            let stub_params = QuadratureParams::from_integers(3, 1).expect("valid stub");
            let mw = simplex_mean_width(n, &stub_params, p);
            auto_plan(n, cls, &mw, p)?
        }
    };
    let theta = theta_best_with(n, p, overrides);
    assemble(n, &q, &theta, p)
}

/// The Rogers covering bound as a standalone [`HadwigerBound`] record:
/// counting factor × certified `r_n`, floored. Requires `n ≥ 3`.
pub fn rogers_bound(n: Dimension, cls: BodyClass, p: Precision) -> Result<HadwigerBound> {
    if n.get() < 3 {
        return Err(Error::NotAvailable(format!(
            "the Rogers covering bound is provided from n = 3 on, got n = {n}"
        )));
    }
    let rr = rogers_rn(n, 1000, p);
    let integer = rogers_hadwiger(n, cls, p);
    let factor = match cls {
        BodyClass::General => crate::geometry::binomial(2 * n.get(), n.get()),
        BodyClass::Symmetric => Integer::from(1) << n.get(),
    };
    // The product is exact well past 128 + 64 bits, so the flooring here
    // agrees with rogers_hadwiger's higher-precision path.
    let real = rr
        .r
        .with_precision(p.with_guard(64))
        .mul(&Enclosure::from_integer(&factor, p.with_guard(64)));
    let trace = format!(
        "rogers: r_{} <= {} (grid j={}), factor {} -> {}\n",
        n.get(),
        rr.r.decimal_hi(6),
        rr.best_j,
        factor,
        integer
    );
    Ok(HadwigerBound {
        n,
        cls,
        real_bound: real,
        integer_bound: integer,
        theta_used: Some(ThetaBound {
            n,
            value: rr.r.clone(),
            method: ThetaMethod::Rogers,
        }),
        method: BoundMethod::Rogers,
        plan_trace: trace,
    })
}

/// The best certified integer bound available for `(n, cls)`: the minimum
/// over externally cited constants (n = 3, 4), the John-position assembly
/// with the hand plans (general 5–8, symmetric 4–6; `params` drives the
/// general case's quadrature), and the Rogers counting bound (all n ≥ 3).
/// Candidates are examined in that fixed order and replaced only on a
/// strictly smaller integer, so the winner is deterministic.
pub fn best_bound(
    n: Dimension,
    cls: BodyClass,
    params: &QuadratureParams,
    p: Precision,
) -> Result<HadwigerBound> {
    best_bound_with(n, cls, params, PlanKind::Hand, &[], p)
}

/// [`best_bound`] with the plan kind and covering-density catalog overrides
/// exposed.
pub fn best_bound_with(
    n: Dimension,
    cls: BodyClass,
    params: &QuadratureParams,
    plan: PlanKind,
    overrides: &[(u32, Rational)],
    p: Precision,
) -> Result<HadwigerBound> {
    if n.get() < 3 {
        return Err(Error::NotAvailable(format!(
            "integer covering bounds are provided from n = 3 on, got n = {n}"
        )));
    }
    let mut best: Option<HadwigerBound> = None;
    let mut consider = |cand: HadwigerBound| {
        if best
            .as_ref()
            .map(|b| cand.integer_bound < b.integer_bound)
            .unwrap_or(true)
        {
            best = Some(cand);
        }
    };

    for (en, ecls, val, source) in EXTERNAL_BOUNDS {
        if en == n.get() && ecls == cls {
            let point = Enclosure::from_integer(&Integer::from(val), p);
            consider(HadwigerBound {
                n,
                cls,
                real_bound: point,
                integer_bound: Integer::from(val),
                theta_used: None,
                method: BoundMethod::External,
                plan_trace: format!("external: {source}\n"),
            });
        }
    }

    let john_supported = match cls {
        BodyClass::General => (5..=8).contains(&n.get()),
        BodyClass::Symmetric => (4..=6).contains(&n.get()),
    };
    if john_supported {
        consider(john_bound(n, cls, params, plan, overrides, p)?);
    }

    consider(rogers_bound(n, cls, p)?);

    Ok(best.expect("Rogers bound always applies"))
}
