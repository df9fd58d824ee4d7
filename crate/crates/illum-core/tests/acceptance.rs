//! End-to-end acceptance gate: every published number the library claims to
//! certify, plus the structural property suite, with one printed PASS/FAIL
//! verdict per check (visible under `--nocapture`).
//!
//! The four heavyweight quadratures (n = 5..8 at a = 20, N = 10⁶) are shared
//! across the checks through a lazy static — they are pure functions of
//! their parameters, so every consumer sees identical enclosures.

use illum_core::covering::{rogers_hadwiger, rogers_rn, theta_anstar, theta_best};
use illum_core::enclosure::special::{erf_enclosure, std_normal_cdf};
use illum_core::geometry::ball_volume;
use illum_core::hadwiger::{assemble, auto_plan, best_bound, bonnesen, plan_general, plan_symmetric};
use illum_core::meanwidth::{riemann_enclosure, simplex_mean_width, MeanWidthResult, QuadratureParams};
use illum_core::{BodyClass, Dimension, Enclosure, Precision};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use std::sync::LazyLock;

fn dim(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

fn p() -> Precision {
    Precision::DEFAULT
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Mean widths of the unit-edge simplex for n = 5..8 at the default
/// parameters (a = 20, N = 10⁶, 128 bits), computed once per process.
static MEAN_WIDTHS: LazyLock<[MeanWidthResult; 4]> = LazyLock::new(|| {
    let params = QuadratureParams::default();
    [5u32, 6, 7, 8].map(|n| simplex_mean_width(dim(n), &params, p()))
});

fn shared_mw(n: u32) -> &'static MeanWidthResult {
    &MEAN_WIDTHS[n as usize - 5]
}

#[test]
fn integer_bounds_reproduce_published_values() {
    // General bodies, n = 5..8, via the John-position assembly (the branch
    // that wins the best-bound selection in this range).
    let general: [(u32, u64); 4] = [(5, 933), (6, 6_137), (7, 41_377), (8, 284_096)];
    let mut all_ok = true;
    for (n, want) in general {
        let q = plan_general(dim(n), shared_mw(n), p()).unwrap();
        let theta = theta_best(dim(n), p());
        let hb = assemble(dim(n), &q, &theta, p()).unwrap();
        let ok = hb.integer_bound == want;
        all_ok &= ok;
        println!(
            "ACCEPTANCE 1 bound(n={n}, general) = {} (expected {want}): {}",
            hb.integer_bound,
            verdict(ok)
        );
    }

    // Symmetric bodies, n = 4..6, through the full selection (their John
    // branch is quadrature-free).
    let symmetric: [(u32, u64); 3] = [(4, 72), (5, 305), (6, 1_292)];
    let params = QuadratureParams::default();
    for (n, want) in symmetric {
        let hb = best_bound(dim(n), BodyClass::Symmetric, &params, p()).unwrap();
        let ok = hb.integer_bound == want;
        all_ok &= ok;
        println!(
            "ACCEPTANCE 1 bound(n={n}, symmetric) = {} (expected {want}): {}",
            hb.integer_bound,
            verdict(ok)
        );
    }
    assert!(all_ok, "an integer bound deviated from its published value");
}

#[test]
fn mean_width_enclosures_lie_inside_published_brackets() {
    // Published two-sided brackets for w(Tⁿ), n = 5..8. The enclosure must
    // land inside the bracket — both endpoints.
    let brackets: [(u32, (u64, u32), (u64, u32)); 4] = [
        (5, (4_208, 4), (4_215, 4)),
        (6, (4_067, 4), (4_070, 4)),
        (7, (39_425, 5), (39_427, 5)),
        (8, (38_300, 5), (38_301, 5)),
    ];
    let mut all_ok = true;
    for (n, (lo_num, lo_dig), (hi_num, hi_dig)) in brackets {
        let w = &shared_mw(n).width;
        let bracket_lo = Rational::from((lo_num, 10u64.pow(lo_dig)));
        let bracket_hi = Rational::from((hi_num, 10u64.pow(hi_dig)));
        let ok = *w.lo() >= bracket_lo && *w.hi() <= bracket_hi;
        all_ok &= ok;
        println!(
            "ACCEPTANCE 2 w(T{n}) = [{}, {}] inside [{}, {}]: {}",
            w.decimal_lo(10),
            w.decimal_hi(10),
            bracket_lo.to_f64(),
            bracket_hi.to_f64(),
            verdict(ok)
        );
    }
    assert!(all_ok, "a mean-width enclosure left its published bracket");
}

#[test]
fn rogers_minima_match_published_six_decimal_ceilings() {
    let expected = [
        (3, "10.064123"),
        (4, "14.916986"),
        (5, "20.024359"),
        (6, "25.362768"),
        (7, "30.898293"),
        (8, "36.603890"),
        (9, "42.458503"),
        (10, "48.445515"),
        (11, "54.551530"),
        (12, "60.765566"),
        (13, "67.078451"),
        (14, "73.482436"),
    ];
    let mut all_ok = true;
    for (n, want) in expected {
        let rr = rogers_rn(dim(n), 1000, p());
        let got = rr.r.decimal_hi(6);
        let ok = got == want;
        all_ok &= ok;
        println!("ACCEPTANCE 3 r_{n} ceiled = {got} (expected {want}): {}", verdict(ok));
    }
    assert!(all_ok, "a Rogers minimum deviated in its sixth-decimal ceiling");
}

#[test]
fn rogers_integer_rows_match_published_tables() {
    let general: [(u32, u64); 6] = [
        (9, 2_064_332),
        (10, 8_950_599),
        (11, 38_482_394),
        (12, 164_319_569),
        (13, 697_656_132),
        (14, 2_947_865_482),
    ];
    let symmetric: [(u32, u64); 8] = [
        (7, 3_954),
        (8, 9_370),
        (9, 21_738),
        (10, 49_608),
        (11, 111_721),
        (12, 248_895),
        (13, 549_506),
        (14, 1_203_936),
    ];
    let mut all_ok = true;
    for (n, want) in general {
        let got = rogers_hadwiger(dim(n), BodyClass::General, p());
        let ok = got == want;
        all_ok &= ok;
        println!(
            "ACCEPTANCE 4 rogers bound (n={n}, general) = {got} (expected {want}): {}",
            verdict(ok)
        );
    }
    for (n, want) in symmetric {
        let got = rogers_hadwiger(dim(n), BodyClass::Symmetric, p());
        let ok = got == want;
        all_ok &= ok;
        println!(
            "ACCEPTANCE 4 rogers bound (n={n}, symmetric) = {got} (expected {want}): {}",
            verdict(ok)
        );
    }
    assert!(all_ok, "a Rogers integer row deviated from its published value");
}

#[test]
fn lattice_density_formula_tracks_published_rows() {
    // Published six-decimal rows attributed to the Aₙ* family for n = 2..5.
    // The formula enclosure must sit within 10⁻⁶ of each printed value.
    let printed: [(u32, u64); 4] =
        [(2, 1_209_199), (3, 1_463_505), (4, 1_765_529), (5, 2_124_286)];
    let tol = Rational::from((1, 1_000_000));
    let mut all_ok = true;
    for (n, micro) in printed {
        let row = Rational::from((micro, 1_000_000));
        let value = theta_anstar(dim(n), p()).value;
        let ok = *value.lo() <= row.clone() + tol.clone() && *value.hi() >= row.clone() - tol.clone();
        all_ok &= ok;
        println!(
            "ACCEPTANCE 5 density formula n={n}: enclosure [{}, {}] vs printed {} ± 1e-6: {}",
            value.decimal_lo(8),
            value.decimal_hi(8),
            row.to_f64(),
            verdict(ok)
        );
    }
    assert!(
        all_ok,
        "a formula density row sits more than 1e-6 from its printed value"
    );
}

/// Property suite part 1: random-expression containment against a
/// 4×-precision point oracle — 10⁴ seeded cases, zero violations allowed.
#[test]
fn property_random_containment_against_high_precision_oracle() {
    const CASES: usize = 10_000;
    const ORACLE_BITS: u32 = 512;
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97);
    let mut violations = 0usize;

    for _ in 0..CASES {
        // Start from an exact rational in [−8, 8].
        let num = rng.gen_range(-512i64..=512);
        let den = rng.gen_range(1i64..=64);
        let q = Rational::from((num, den));
        let mut enc = Enclosure::from_rational(&q, p());
        let mut oracle = Float::with_val(ORACLE_BITS, &q);

        for _ in 0..3 {
            match rng.gen_range(0u8..8) {
                0 => {
                    let c = Rational::from((rng.gen_range(-16i64..=16), rng.gen_range(1i64..=16)));
                    enc = enc.add(&Enclosure::from_rational(&c, p()));
                    oracle += Float::with_val(ORACLE_BITS, &c);
                }
                1 => {
                    let c = Rational::from((rng.gen_range(-16i64..=16), rng.gen_range(1i64..=16)));
                    enc = enc.sub(&Enclosure::from_rational(&c, p()));
                    oracle -= Float::with_val(ORACLE_BITS, &c);
                }
                2 => {
                    let c = Rational::from((rng.gen_range(-4i64..=4), rng.gen_range(1i64..=4)));
                    enc = enc.mul(&Enclosure::from_rational(&c, p()));
                    oracle *= Float::with_val(ORACLE_BITS, &c);
                }
                3 => {
                    // sqrt(x² + 1): always in domain.
                    enc = enc.mul(&enc).add(&Enclosure::point_i64(1, p())).sqrt().unwrap();
                    let sq = Float::with_val(ORACLE_BITS, &oracle * &oracle);
                    oracle = Float::with_val(ORACLE_BITS, sq + 1).sqrt();
                }
                4 => {
                    // ln(x² + 1): always in domain.
                    enc = enc.mul(&enc).add(&Enclosure::point_i64(1, p())).ln().unwrap();
                    let sq = Float::with_val(ORACLE_BITS, &oracle * &oracle);
                    oracle = Float::with_val(ORACLE_BITS, sq + 1).ln();
                }
                5 => {
                    enc = enc.pow_u32(3);
                    oracle = Float::with_val(ORACLE_BITS, (&oracle).pow(3));
                }
                6 => {
                    enc = erf_enclosure(&enc, p());
                    oracle = oracle.clone().erf();
                }
                _ => {
                    enc = std_normal_cdf(&enc, p());
                    let arg = Float::with_val(ORACLE_BITS, &oracle / Float::with_val(ORACLE_BITS, 2).sqrt());
                    let erfc = Float::with_val(ORACLE_BITS, -arg).erfc();
                    oracle = Float::with_val(ORACLE_BITS, erfc / 2);
                }
            }
            // Keep magnitudes small enough that every op stays cheap.
            if *enc.hi() > 1e12 || *enc.lo() < -1e12 {
                enc = std_normal_cdf(&enc, p());
                let arg = Float::with_val(ORACLE_BITS, &oracle / Float::with_val(ORACLE_BITS, 2).sqrt());
                let erfc = Float::with_val(ORACLE_BITS, -arg).erfc();
                oracle = Float::with_val(ORACLE_BITS, erfc / 2);
            }
        }

        // The oracle carries ≤ 2⁻⁵⁰⁰-ish rounding error of its own, so pad
        // the enclosure by 2⁻³⁰⁰ before testing membership: far above the
        // oracle's slack, far below any enclosure width that could matter.
        let pad = Float::with_val(32, Float::i_exp(1, -300));
        let lo = Float::with_val(ORACLE_BITS, enc.lo() - &pad);
        let hi = Float::with_val(ORACLE_BITS, enc.hi() + &pad);
        if !(lo <= oracle && oracle <= hi) {
            violations += 1;
        }
    }
    println!(
        "ACCEPTANCE 6 random containment: {violations} violations in {CASES} cases: {}",
        verdict(violations == 0)
    );
    assert_eq!(violations, 0);
}

/// Property suite part 2: the interpolation inequality is tight on balls —
/// feeding W_m(R·Bⁿ) = R^{n−m}|Bⁿ| must return R^{n−j}|Bⁿ| for every valid
/// triple, to relative width 10⁻²⁰.
#[test]
fn property_interpolation_exact_on_balls() {
    let mut checked = 0usize;
    let mut ok = true;
    for n in 2..=10u32 {
        let ball = ball_volume(dim(n), Precision::new(256).unwrap());
        for r_case in 0..3 {
            let r = match r_case {
                0 => Enclosure::point_i64(2, p()),
                1 => Enclosure::point_i64(5, p()).sqrt().unwrap(),
                _ => Enclosure::point_i64(7, p()),
            };
            for i in 0..n {
                for j in (i + 1)..n {
                    for k in (j + 1)..=n {
                        let wi = r.pow_u32(n - i).mul(&ball);
                        let wk = r.pow_u32(n - k).mul(&ball);
                        let got = bonnesen(dim(n), &r, i, j, k, &wi, &wk, p()).unwrap();
                        let want = r.pow_u32(n - j).mul(&ball);
                        let overlap = got.lo() <= want.hi() && want.lo() <= got.hi();
                        let rel = Float::with_val(128, got.width() / got.lo());
                        ok &= overlap && rel < 1e-20;
                        checked += 1;
                    }
                }
            }
        }
    }
    println!(
        "ACCEPTANCE 6 interpolation ball identity: {checked} triples, relative width < 1e-20: {}",
        verdict(ok)
    );
    assert!(ok);
}

/// Property suite part 3: sandwich refinement — doubling N can only improve
/// both integral endpoints (up to one rounding step).
#[test]
fn property_refinement_improves_monotonically() {
    let slack = Float::with_val(32, Float::i_exp(1, -100));
    let mut ok = true;
    for n in 5..=8u32 {
        let mut prev = riemann_enclosure(
            dim(n),
            &QuadratureParams::from_integers(20, 100).unwrap(),
            p(),
        );
        for t in 1..=10u32 {
            let cur = riemann_enclosure(
                dim(n),
                &QuadratureParams::from_integers(20, 100 << t).unwrap(),
                p(),
            );
            let lo_improves = Float::with_val(160, cur.lo() + &slack) >= *prev.lo();
            let hi_improves = Float::with_val(160, cur.hi() - &slack) <= *prev.hi();
            ok &= lo_improves && hi_improves;
            prev = cur;
        }
    }
    println!(
        "ACCEPTANCE 6 refinement monotone over 10 doublings for n=5..8: {}",
        verdict(ok)
    );
    assert!(ok);
}

/// Property suite part 4: the two dimensions with closed-form mean widths.
/// w(T¹) = 1/2 and w(T²) = 3/(2π); at N = 5·10⁶ the sandwich is inside 10⁻⁶.
#[test]
fn property_closed_form_mean_widths() {
    let params = QuadratureParams::from_integers(20, 5_000_000).unwrap();
    let tol = Float::with_val(64, 1e-6);
    let mut ok = true;

    let w1 = simplex_mean_width(dim(1), &params, p()).width;
    let half = Rational::from((1, 2));
    let contains1 = w1.contains_rational(&half);
    let close1 = Float::with_val(160, w1.hi() - &half) <= tol
        && Float::with_val(160, w1.lo() - &half).abs() <= tol;
    ok &= contains1 && close1;
    println!(
        "ACCEPTANCE 6 w(T1) = [{}, {}] contains 1/2 within 1e-6: {}",
        w1.decimal_lo(8),
        w1.decimal_hi(8),
        verdict(contains1 && close1)
    );

    let w2 = simplex_mean_width(dim(2), &params, p()).width;
    // 3/(2π) as a tight reference enclosure.
    let truth = Enclosure::point_i64(3, Precision::new(256).unwrap())
        .div(&Enclosure::pi(Precision::new(256).unwrap()).mul(&Enclosure::point_i64(2, Precision::new(256).unwrap())))
        .unwrap();
    let contains2 = w2.lo() <= truth.lo() && truth.hi() <= w2.hi();
    let close2 = Float::with_val(300, w2.hi() - truth.lo()) <= tol
        && Float::with_val(300, truth.hi() - w2.lo()) <= tol;
    ok &= contains2 && close2;
    println!(
        "ACCEPTANCE 6 w(T2) = [{}, {}] contains 3/(2pi) within 1e-6: {}",
        w2.decimal_lo(8),
        w2.decimal_hi(8),
        verdict(contains2 && close2)
    );
    assert!(ok);
}

/// Property suite part 5: the integer bounds cannot depend on which point of
/// the certified mean-width enclosure nature actually picked — substituting
/// the lower endpoints reproduces all seven integers.
#[test]
fn property_integer_bounds_insensitive_to_quadrature_slack() {
    let mut ok = true;
    let general: [(u32, u64); 4] = [(5, 933), (6, 6_137), (7, 41_377), (8, 284_096)];
    for (n, want) in general {
        let mw = shared_mw(n);
        let collapsed = MeanWidthResult {
            n: mw.n,
            params: mw.params.clone(),
            integral: Enclosure::from_endpoints(mw.integral.lo().clone(), mw.integral.lo().clone()),
            width: Enclosure::from_endpoints(mw.width.lo().clone(), mw.width.lo().clone()),
        };
        let q = plan_general(dim(n), &collapsed, p()).unwrap();
        let theta = theta_best(dim(n), p());
        let hb = assemble(dim(n), &q, &theta, p()).unwrap();
        ok &= hb.integer_bound == want;
    }
    // The symmetric pipeline has no quadrature input; it must keep its
    // integers trivially.
    let symmetric: [(u32, u64); 3] = [(4, 72), (5, 305), (6, 1_292)];
    for (n, want) in symmetric {
        let q = plan_symmetric(dim(n), p()).unwrap();
        let theta = theta_best(dim(n), p());
        let hb = assemble(dim(n), &q, &theta, p()).unwrap();
        ok &= hb.integer_bound == want;
    }
    println!(
        "ACCEPTANCE 6 lower-endpoint substitution keeps all seven integers: {}",
        verdict(ok)
    );
    assert!(ok);
}

#[test]
fn auto_plans_never_lose_to_hand_plans() {
    let mut all_ok = true;
    for n in 5..=8u32 {
        let mw = shared_mw(n);
        let theta = theta_best(dim(n), p());
        let hand = assemble(dim(n), &plan_general(dim(n), mw, p()).unwrap(), &theta, p()).unwrap();
        let auto =
            assemble(dim(n), &auto_plan(dim(n), BodyClass::General, mw, p()).unwrap(), &theta, p())
                .unwrap();
        let ok = auto.integer_bound <= hand.integer_bound;
        all_ok &= ok;
        let note = if auto.integer_bound < hand.integer_bound {
            "strict improvement"
        } else {
            "equal"
        };
        println!(
            "ACCEPTANCE 7 auto vs hand (n={n}, general): {} vs {} ({note}): {}",
            auto.integer_bound,
            hand.integer_bound,
            verdict(ok)
        );
        if auto.integer_bound < hand.integer_bound {
            println!("{}", auto.plan_trace);
        }
    }
    for n in 4..=6u32 {
        // The symmetric search needs no quadrature input; any mean-width
        // record satisfies the signature.
        let mw = shared_mw(5);
        let theta = theta_best(dim(n), p());
        let hand = assemble(dim(n), &plan_symmetric(dim(n), p()).unwrap(), &theta, p()).unwrap();
        let auto = assemble(
            dim(n),
            &auto_plan(dim(n), BodyClass::Symmetric, mw, p()).unwrap(),
            &theta,
            p(),
        )
        .unwrap();
        let ok = auto.integer_bound <= hand.integer_bound;
        all_ok &= ok;
        let note = if auto.integer_bound < hand.integer_bound {
            "strict improvement"
        } else {
            "equal"
        };
        println!(
            "ACCEPTANCE 7 auto vs hand (n={n}, symmetric): {} vs {} ({note}): {}",
            auto.integer_bound,
            hand.integer_bound,
            verdict(ok)
        );
        if auto.integer_bound < hand.integer_bound {
            println!("{}", auto.plan_trace);
        }
    }
    assert!(all_ok, "an automatic plan produced a worse integer than the hand plan");
}

/// Floor validity across every integer produced above: the integer is the
/// floor of a certified real upper bound, so bound ≤ real < bound + 1.
#[test]
fn integer_bounds_are_floors_of_their_real_bounds() {
    let params = QuadratureParams::from_integers(20, 2_000).unwrap();
    let mut ok = true;
    for (n, cls) in [
        (3, BodyClass::General),
        (5, BodyClass::General),
        (9, BodyClass::General),
        (3, BodyClass::Symmetric),
        (5, BodyClass::Symmetric),
        (7, BodyClass::Symmetric),
    ] {
        let hb = best_bound(dim(n), cls, &params, p()).unwrap();
        let floor = Float::with_val(128, &hb.integer_bound);
        let next = Float::with_val(128, Integer::from(&hb.integer_bound + 1u32));
        ok &= floor <= *hb.real_bound.hi() && *hb.real_bound.hi() < next;
    }
    println!("ACCEPTANCE floors: integer = floor(real bound) everywhere: {}", verdict(ok));
    assert!(ok);
}
