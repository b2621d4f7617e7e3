//! Acceptance suite: one test per criterion, each asserting the stated
//! exact values/tolerances and printing a pass line (visible with
//! `cargo test --test acceptance -- --nocapture`).

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use common::{c2c2, f2, k22, mixed, p3, pentagon, raag, s3_single, z2};
use gpgrowth::centraliser::{
    brute_force_centraliser, centraliser_ball_count, expand_centraliser_of_g,
};
use gpgrowth::enumeration::{
    dc_sequence, enumerate_ball, submultiplicativity_audit, to_bigints, SubmultVerdict,
};
use gpgrowth::graph::GraphProduct;
use gpgrowth::series::{
    asymptotic_profile, c_sequence_check, convolve_spheres, density_gap, digit_sum_sequence,
    example_rational_function, example_sequence, find_recurrence, growth_window_audit,
    product_growth_check, GrowthWindowVerdict, ProductGrowthVerdict,
};

const BUDGET: u64 = 2 << 30; // 2 GiB

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn free_group_spheres(rank: u64, len: usize) -> Vec<BigInt> {
    let degree = 2 * rank;
    let mut out = vec![BigInt::one()];
    for n in 1..len {
        out.push(BigInt::from(degree) * BigInt::from(degree - 1).pow(n as u32 - 1));
    }
    out
}

#[test]
fn acceptance_1_example_fixture_exactness() {
    let t0 = Instant::now();
    let rf = example_rational_function();
    let expanded = rf.expand_integer(60).expect("integer coefficients");
    let closed_form = example_sequence(61);
    assert_eq!(
        expanded, closed_form,
        "a(n) = c(n) 2^n + 1 with c cycling (0,2,6,8,6,2)"
    );
    assert_eq!(expanded[1], BigInt::from(5));
    assert_eq!(expanded[6], BigInt::from(1));
    assert_eq!(expanded[7], BigInt::from(257));
    assert_eq!(
        submultiplicativity_audit(&expanded),
        SubmultVerdict::Violation { i: 1, j: 6 },
        "a(7) = 257 > 5 = a(1) a(6)"
    );
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("acceptance 1 (example fixture exactness): pass ({elapsed:?})");
}

#[test]
fn acceptance_2_f2_pipeline() {
    let t0 = Instant::now();
    let gp = f2();
    let ball = enumerate_ball(&gp, 10, BUDGET).unwrap();
    let spheres = ball.sphere_sizes();
    let expected = free_group_spheres(2, 11);
    assert_eq!(to_bigints(&spheres), expected, "spheres are 4·3^(n-1)");

    let rf = find_recurrence(&to_bigints(&spheres), 3)
        .unwrap()
        .expect("rational");
    assert_eq!(
        rf.numerator().coeffs(),
        &[rat(1, 1), rat(1, 1)],
        "p = 1 + t"
    );
    assert_eq!(
        rf.denominator().coeffs(),
        &[rat(1, 1), rat(-3, 1)],
        "q = 1 - 3t"
    );

    let prof = asymptotic_profile(&rf, 20).unwrap();
    assert_eq!(prof.lambda_exact, Some(rat(3, 1)));
    assert_eq!(prof.alpha, 0);
    for (n, s) in spheres.iter().enumerate().skip(1) {
        let ratio = BigRational::new(BigInt::from(*s), BigInt::from(3).pow(n as u32));
        assert_eq!(ratio, rat(4, 3), "a({n})/3^{n} = 4/3 exactly");
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!("acceptance 2 (F_2 pipeline): pass ({elapsed:?})");
}

#[test]
fn acceptance_3_k22_reproduction() {
    let t0 = Instant::now();
    let gp = k22();

    // part subgroup G_A ≅ F_2: ball sizes 2·3^n - 1 for n <= 6, exact
    let part = gp.special_subgroup(&[0, 1]);
    let part_ball = enumerate_ball(&part, 6, BUDGET).unwrap();
    let part_balls = part_ball.ball_sizes();
    for (n, b) in part_balls.iter().enumerate() {
        assert_eq!(*b, 2 * 3u64.pow(n as u32) - 1, "𝔅_A({n})");
    }

    // enumerated G-spheres agree exactly with the free-group convolution,
    // which then extends the data beyond the enumeration radius
    let ball = enumerate_ball(&gp, 6, BUDGET).unwrap();
    let f2s = free_group_spheres(2, 13);
    let conv = convolve_spheres(&f2s, &f2s).unwrap();
    assert_eq!(to_bigints(&ball.sphere_sizes()), conv[..7].to_vec());
    let mut balls_ext: Vec<BigInt> = Vec::new();
    let mut acc = BigInt::zero();
    for s in &conv {
        acc += s;
        balls_ext.push(acc.clone());
    }
    assert_eq!(to_bigints(&ball.ball_sizes()), balls_ext[..7].to_vec());

    // ball profile: λ = 3, α = 1, dominant coefficient 8/3 within 1e-6
    let rf = find_recurrence(&balls_ext, 4).unwrap().expect("rational");
    let prof = asymptotic_profile(&rf, 24).unwrap();
    assert_eq!(prof.lambda_exact, Some(rat(3, 1)));
    assert_eq!(prof.alpha, 1);
    let lead = prof
        .dominant_real_coefficient()
        .expect("real dominant root");
    assert!((lead.value.re - 8.0 / 3.0).abs() <= 1e-6);
    assert_eq!(lead.exact, Some(rat(8, 3)));

    // e_1, e_2 fitted from 𝔅(0), 𝔅(1) predict all remaining balls exactly:
    // 𝔅(n) = (8/3) n 3^n + e_1 3^n + e_2
    let model = |n: usize| rat(8, 3) * rat(n as i64, 1) * rat(3, 1).pow(n as i32);
    let b0 = BigRational::from(balls_ext[0].clone());
    let b1 = BigRational::from(balls_ext[1].clone());
    // e_1 + e_2 = 𝔅(0); 3 e_1 + e_2 = 𝔅(1) - 8
    let e1 = ((b1.clone() - model(1)) - (b0.clone() - model(0))) / rat(2, 1);
    let e2 = b0 - e1.clone();
    for (n, b) in balls_ext.iter().enumerate().take(7).skip(2) {
        let predicted = model(n) + e1.clone() * rat(3, 1).pow(n as i32) + e2.clone();
        assert_eq!(BigRational::from(b.clone()), predicted, "𝔅({n})");
    }

    // d_n >= 𝔅_A(n) 𝔅_linkA(n) / 𝔅_G(n)² for n <= 4
    let ball4 = enumerate_ball(&gp, 4, BUDGET).unwrap();
    let dc = dc_sequence(&gp, &ball4);
    let other = gp.special_subgroup(&[2, 3]);
    let other_balls = enumerate_ball(&other, 4, BUDGET).unwrap().ball_sizes();
    let g_balls = ball4.ball_sizes();
    for n in 0..=4usize {
        let bound = BigRational::new(
            BigInt::from(part_balls[n]) * BigInt::from(other_balls[n]),
            BigInt::from(g_balls[n]) * BigInt::from(g_balls[n]),
        );
        assert!(dc[n] >= bound, "d_{n} >= product bound");
    }

    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("acceptance 3 (K_2,2 reproduction): pass ({elapsed:?})");
}

#[test]
fn acceptance_4_centraliser_oracle_equivalence() {
    let t0 = Instant::now();
    let fixtures: Vec<(&str, GraphProduct)> = vec![
        ("F_2", f2()),
        ("Z^2", z2()),
        ("P_3 RAAG", p3()),
        ("C_2 * C_2", c2c2()),
        ("pentagon RACG", pentagon()),
        ("mixed C_3 + Z + Z", mixed()),
    ];
    for (name, gp) in &fixtures {
        let ball3 = enumerate_ball(gp, 3, BUDGET).unwrap();
        let ball4 = enumerate_ball(gp, 4, BUDGET).unwrap();
        for (g, _) in ball3.elements() {
            if g.is_identity() {
                continue;
            }
            let desc = gp.centraliser_structure(g).unwrap();
            // exact set equality at radius 3 for g itself
            let structural = expand_centraliser_of_g(gp, &desc, 3, BUDGET).unwrap();
            let brute = brute_force_centraliser(gp, &ball3, g);
            assert_eq!(
                structural,
                brute,
                "{name}: C({}) ∩ B(3)",
                gp.display_word(g)
            );
            // exact cardinalities for g̃ at every radius n <= 4
            let tilde_cent = brute_force_centraliser(gp, &ball4, &desc.tilde);
            for n in 0..=4u32 {
                let brute_count = tilde_cent
                    .iter()
                    .filter(|e| ball4.distance(e).is_some_and(|d| d <= n))
                    .count() as u64;
                let structural_count = centraliser_ball_count(gp, &desc, n, BUDGET).unwrap();
                assert_eq!(
                    structural_count,
                    brute_count,
                    "{name}: |C({}) ∩ B({n})|",
                    gp.display_word(&desc.tilde)
                );
            }
        }
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!("acceptance 4 (centraliser oracle equivalence): pass ({elapsed:?})");
}

#[test]
fn acceptance_5_growth_window_property_suite() {
    let t0 = Instant::now();
    let fixtures: Vec<(&str, GraphProduct, u32)> = vec![
        ("F_2", f2(), 8),
        ("Z^2", z2(), 8),
        ("P_3 RAAG", p3(), 7),
        ("C_2 * C_2", c2c2(), 10),
        ("pentagon RACG", pentagon(), 8),
        ("mixed C_3 + Z + Z", mixed(), 7),
        ("K_2,2", k22(), 8),
    ];
    for (name, gp, radius) in &fixtures {
        let ball = enumerate_ball(gp, *radius, BUDGET).unwrap();
        let spheres = to_bigints(&ball.sphere_sizes());
        assert_eq!(
            submultiplicativity_audit(&spheres),
            SubmultVerdict::Pass,
            "{name}: sphere sizes are submultiplicative"
        );
        assert_eq!(
            submultiplicativity_audit(&to_bigints(&ball.ball_sizes())),
            SubmultVerdict::Pass,
            "{name}: ball sizes are submultiplicative"
        );
        let max_order = (spheres.len() - 4) / 2;
        let rf = find_recurrence(&spheres, max_order)
            .unwrap()
            .unwrap_or_else(|| panic!("{name}: sphere sequence must reconstruct"));
        let prof = asymptotic_profile(&rf, 40).unwrap();
        // λ >= 1, and for these infinite groups the series diverges at 1:
        // either λ > 1 or the denominator has a root at t = 1
        assert!(prof.lambda >= 1.0 - 1e-12, "{name}: λ >= 1");
        if prof.lambda_exact.as_ref().is_some_and(|l| l.is_one()) {
            let q_at_one = rf.denominator().eval(&BigRational::one());
            assert!(q_at_one.is_zero(), "{name}: λ = 1 needs a pole at t = 1");
        }
        match growth_window_audit(&spheres, &prof) {
            GrowthWindowVerdict::BoundedPositive { c_emp, d_emp } => {
                assert!(c_emp.is_positive(), "{name}: C_emp > 0");
                assert!(d_emp >= c_emp);
            }
            v => panic!("{name}: expected bounded-positive, got {v:?}"),
        }
        let check = c_sequence_check(&prof, 40, 1e-9);
        assert!(check.pass, "{name}: c-sequence check");
        assert!(check.max_im_abs <= 1e-9, "{name}: |Im c_n|");
        assert!(check.min_re >= -1e-9, "{name}: Re c_n >= 0");
        // density of E_δ at δ = C_emp/2 is finite over the window
        let delta = &prof.c_emp / rat(2, 1);
        let gap = density_gap(&prof.c_samples, &delta)
            .unwrap_or_else(|e| panic!("{name}: E_delta empty: {e}"));
        assert!(gap.max_gap <= prof.c_samples.len(), "{name}: finite gap");
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!("acceptance 5 (growth window property suite): pass ({elapsed:?})");
}

#[test]
fn acceptance_6_non_rationality_evidence() {
    let t0 = Instant::now();
    let seq65 = digit_sum_sequence(65);
    let seq64 = &seq65[..64];

    assert_eq!(
        find_recurrence(seq64, 8).unwrap(),
        None,
        "no recurrence of order <= 8"
    );
    assert_eq!(submultiplicativity_audit(seq64), SubmultVerdict::Pass);

    // min over 1 <= n <= 64 of a(n)/n is attained at n = 64 with value 2/64
    let mut min_val: Option<BigRational> = None;
    let mut min_at = 0usize;
    for (n, a) in seq65.iter().enumerate().skip(1) {
        let v = BigRational::new(a.clone(), BigInt::from(n));
        if min_val.as_ref().is_none_or(|m| v < *m) {
            min_val = Some(v);
            min_at = n;
        }
    }
    assert_eq!(min_at, 64);
    assert_eq!(min_val.unwrap(), rat(2, 64));

    for m in 0..=6u32 {
        assert_eq!(
            seq65[(1usize << m) - 1],
            BigInt::from(2).pow(m),
            "a(2^{m} - 1) = 2^{m}"
        );
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("acceptance 6 (non-rationality evidence): pass ({elapsed:?})");
}

#[test]
fn acceptance_7_product_growth_dichotomy() {
    let t0 = Instant::now();

    // ℤ spheres: validated against enumeration, then extended by formula
    let z_line = raag(&["a"], &[]);
    let z_ball = enumerate_ball(&z_line, 8, BUDGET).unwrap();
    let z_formula: Vec<BigInt> = (0..21)
        .map(|n| BigInt::from(if n == 0 { 1 } else { 2 }))
        .collect();
    assert_eq!(to_bigints(&z_ball.sphere_sizes()), z_formula[..9].to_vec());

    // λ_H = λ_K branch: conv(ℤ, ℤ) equals the ℤ² spheres 4n exactly
    let conv = convolve_spheres(&z_formula, &z_formula).unwrap();
    let z2_ball = enumerate_ball(&z2(), 8, BUDGET).unwrap();
    assert_eq!(conv[..9].to_vec(), to_bigints(&z2_ball.sphere_sizes()));
    for (n, c) in conv.iter().enumerate().skip(1) {
        assert_eq!(c, &BigInt::from(4 * n), "conv(ℤ,ℤ)({n}) = 4n");
    }
    let rf_z = find_recurrence(&z_formula, 2).unwrap().unwrap();
    let prof_z = asymptotic_profile(&rf_z, 20).unwrap();
    match product_growth_check(&z_formula, &z_formula, &prof_z, &prof_z).unwrap() {
        ProductGrowthVerdict::Unbounded {
            shape_constant,
            final_over_mid,
        } => {
            assert!(shape_constant > 0.0);
            assert!(final_over_mid > 1.5, "ratio 4n diverges");
        }
        v => panic!("expected unbounded, got {v:?}"),
    }

    // λ_H > λ_K branch: conv(F_2, ℤ)/3^n is bounded over n <= 20
    let f2s = free_group_spheres(2, 21);
    let rf_f2 = find_recurrence(&f2s, 2).unwrap().unwrap();
    let prof_f2 = asymptotic_profile(&rf_f2, 20).unwrap();
    match product_growth_check(&f2s, &z_formula, &prof_f2, &prof_z).unwrap() {
        ProductGrowthVerdict::Bounded {
            d_tilde_emp,
            exact,
            increments_decayed,
        } => {
            assert!(exact, "λ = 3 is rational, ratios are exact");
            assert!(increments_decayed);
            assert!(d_tilde_emp.is_positive() && d_tilde_emp < rat(4, 1));
        }
        v => panic!("expected bounded, got {v:?}"),
    }

    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    println!("acceptance 7 (product growth dichotomy): pass ({elapsed:?})");
}

#[test]
fn acceptance_8_finite_sanity() {
    let t0 = Instant::now();
    let gp = s3_single();
    let ball = enumerate_ball(&gp, 4, BUDGET).unwrap();
    assert_eq!(
        ball.sphere_sizes(),
        vec![1, 2, 2, 1, 0],
        "S_3 saturates at radius 3"
    );
    let dc = dc_sequence(&gp, &ball);
    assert_eq!(dc[3], rat(1, 2), "classical dc(S_3) = 1/2");
    assert_eq!(dc[4], rat(1, 2), "stays 1/2 once saturated");
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("acceptance 8 (finite sanity): pass ({elapsed:?})");
}
