//! The four report pipelines behind the CLI subcommands.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use gpgrowth::centraliser::{
    brute_force_centraliser, centraliser_ball_count, conjugate_bound_audit, factor_ball_counts,
    small_centraliser_bounds_audit, Factor,
};
use gpgrowth::enumeration::{
    dc_sequence, enumerate_ball, submultiplicativity_audit, to_bigints, BallIndex,
    EnumerationError, SubmultVerdict,
};
use gpgrowth::graph::GraphProduct;
use gpgrowth::poly::Poly;
use gpgrowth::series::{
    asymptotic_profile_with_tolerance, c_sequence_check, density_gap, find_recurrence,
    growth_window_audit, AsymptoticProfile, GrowthWindowVerdict, RationalFunctionSeries,
    SeriesError,
};
use gpgrowth::vertex::VertexGroup;

use crate::report::{
    rat_str, AuditSection, CentraliserReport, CoeffRow, DcReport, DcRow, FactorRow, GrowthReport,
    Meta, OracleRow, ProfileSection, Report, RootRow, SeriesReport, SeriesSection,
};

/// Resolved run options (flags over spec-file options over defaults).
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub radius: u32,
    pub max_order: usize,
    pub memory_budget: u64,
    pub modulus_tolerance: f64,
    pub c_check_tolerance: f64,
    pub seed: u64,
}

pub const DEFAULT_RADIUS: u32 = 8;
pub const DEFAULT_MAX_ORDER: usize = 12;
pub const PROFILE_HORIZON: usize = 60;

/// Enumerates a ball, falling back to the largest affordable radius.
fn enumerate_partial(gp: &GraphProduct, radius: u32, budget: u64) -> (BallIndex, bool) {
    match enumerate_ball(gp, radius, budget) {
        Ok(ball) => (ball, false),
        Err(EnumerationError::BudgetExceeded { partial, .. }) => (*partial, true),
    }
}

fn submult_str(seq: &[BigInt]) -> String {
    if seq.iter().any(|a| a.is_negative()) {
        return "not applicable (negative entries)".to_string();
    }
    match submultiplicativity_audit(seq) {
        SubmultVerdict::Pass => "pass".to_string(),
        SubmultVerdict::Violation { i, j } => format!("violation at ({i}, {j})"),
    }
}

fn profile_section(p: &AsymptoticProfile) -> ProfileSection {
    ProfileSection {
        lambda: p.lambda,
        lambda_exact: p.lambda_exact.as_ref().map(rat_str),
        alpha: p.alpha,
        roots: p
            .roots
            .iter()
            .map(|r| RootRow {
                re: r.value.re,
                im: r.value.im,
                modulus: r.modulus,
                multiplicity: r.multiplicity,
                exact: r.exact,
            })
            .collect(),
        coefficients: p
            .coefficients
            .iter()
            .map(|c| CoeffRow {
                root_re: c.root.re,
                root_im: c.root.im,
                power: c.power,
                value_re: c.value.re,
                value_im: c.value.im,
                exact: c.exact.as_ref().map(rat_str),
            })
            .collect(),
        c_exact: p.c_exact,
        c_samples: p
            .c_samples
            .iter()
            .map(|s| match &s.exact {
                Some(v) => rat_str(v),
                None => format!("{}{:+}i", s.re, s.im),
            })
            .collect(),
        c_emp: rat_str(&p.c_emp),
        d_emp: rat_str(&p.d_emp),
        bounds_exact: p.bounds_exact,
    }
}

fn audit_section(seq: &[BigInt], profile: &AsymptoticProfile, cfg: &RunConfig) -> AuditSection {
    let growth_window = match growth_window_audit(seq, profile) {
        GrowthWindowVerdict::BoundedPositive { c_emp, d_emp } => {
            format!(
                "bounded-positive (C_emp={}, D_emp={})",
                rat_str(&c_emp),
                rat_str(&d_emp)
            )
        }
        GrowthWindowVerdict::LiminfZero { min_ratio } => {
            format!("liminf-zero (min ratio {min_ratio:e})")
        }
        GrowthWindowVerdict::Unbounded { growth_factor } => {
            format!("unbounded (window growth factor {growth_factor})")
        }
    };
    let check = c_sequence_check(profile, profile.sample_horizon, cfg.c_check_tolerance);
    let c_check = format!(
        "{} (max |Im c_n| = {:e}, min Re c_n = {}, n <= {})",
        if check.pass { "pass" } else { "FAIL" },
        check.max_im_abs,
        check.min_re,
        check.checked_to
    );
    let delta = &profile.c_emp / BigRational::from(BigInt::from(2));
    let density = if delta.is_positive() {
        match density_gap(&profile.c_samples, &delta) {
            Ok(g) => format!(
                "delta={}: max gap {}, lead-in {}, members {}",
                rat_str(&delta),
                g.max_gap,
                g.lead_in,
                g.members
            ),
            Err(_) => format!("delta={}: E_delta empty in window", rat_str(&delta)),
        }
    } else {
        "skipped (C_emp not positive)".to_string()
    };
    AuditSection {
        growth_window,
        c_check,
        density,
    }
}

/// Recurrence search capped to what the data can confirm.
fn recurrence_for(
    seq: &[BigInt],
    requested_order: usize,
) -> (Option<RationalFunctionSeries>, usize) {
    if seq.len() < 4 {
        return (None, 0);
    }
    let effective = requested_order.min((seq.len() - 4) / 2);
    let found = find_recurrence(seq, effective).expect("order is capped to the data");
    (found, effective)
}

pub fn cmd_growth(
    gp: &GraphProduct,
    meta: Meta,
    cfg: &RunConfig,
    dump_ball: Option<&std::path::Path>,
) -> Result<(Report, bool), String> {
    let (ball, partial) = enumerate_partial(gp, cfg.radius, cfg.memory_budget);
    if let Some(path) = dump_ball {
        std::fs::write(path, ball.dump(gp))
            .map_err(|e| format!("cannot write ball dump to {}: {e}", path.display()))?;
    }
    let spheres = ball.sphere_sizes();
    let balls = ball.ball_sizes();
    let sphere_ints = to_bigints(&spheres);
    let ball_ints = to_bigints(&balls);

    let (rf, _) = recurrence_for(&sphere_ints, cfg.max_order);
    let (series, profile, audits, ball_series, ball_series_check, ball_profile) = match rf {
        None => (None, None, None, None, None, None),
        Some(rf) => {
            let series = SeriesSection {
                numerator: rf.numerator().coeffs().iter().map(rat_str).collect(),
                denominator: rf.denominator().coeffs().iter().map(rat_str).collect(),
            };
            let (profile, audits) = match asymptotic_profile_with_tolerance(
                &rf,
                PROFILE_HORIZON,
                cfg.modulus_tolerance,
            ) {
                Ok(p) => {
                    let audits = audit_section(&sphere_ints, &p, cfg);
                    (Some(profile_section(&p)), Some(audits))
                }
                Err(SeriesError::ConstantDenominator) => (None, None),
                Err(e) => (
                    None,
                    Some(AuditSection {
                        growth_window: format!("profile unavailable: {e}"),
                        c_check: "skipped".to_string(),
                        density: "skipped".to_string(),
                    }),
                ),
            };
            // balls are partial sums, so their series is p/((1-t) q)
            let ball_rf = RationalFunctionSeries::new(
                rf.numerator().clone(),
                rf.denominator().mul(&Poly::from_i64(&[1, -1])),
            );
            let check = match ball_rf.expand_integer(ball_ints.len() - 1) {
                Some(expansion) if expansion == ball_ints => "exact match".to_string(),
                _ => "MISMATCH with enumerated balls".to_string(),
            };
            let ball_section = SeriesSection {
                numerator: ball_rf.numerator().coeffs().iter().map(rat_str).collect(),
                denominator: ball_rf.denominator().coeffs().iter().map(rat_str).collect(),
            };
            let ball_profile =
                asymptotic_profile_with_tolerance(&ball_rf, PROFILE_HORIZON, cfg.modulus_tolerance)
                    .ok()
                    .map(|p| profile_section(&p));
            (
                Some(series),
                profile,
                audits,
                Some(ball_section),
                Some(check),
                ball_profile,
            )
        }
    };

    let report = GrowthReport {
        meta,
        partial,
        sphere_submultiplicativity: submult_str(&sphere_ints),
        ball_submultiplicativity: submult_str(&ball_ints),
        spheres,
        balls,
        series,
        profile,
        audits,
        ball_series,
        ball_series_check,
        ball_profile,
    };
    Ok((Report::Growth(report), partial))
}

/// Detects a K_{k,k} RAAG: all vertex groups ℤ, the complement splits into
/// exactly two parts of equal size, and each part is an independent set.
fn kkk_parts(gp: &GraphProduct) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = gp.vertex_count() as u32;
    if n < 2 {
        return None;
    }
    for v in 0..n {
        if !matches!(gp.group(v), VertexGroup::InfiniteCyclic) {
            return None;
        }
    }
    let all: Vec<u32> = (0..n).collect();
    let comps = gp.graph().complement_components(&all);
    if comps.len() != 2 || comps[0].len() != comps[1].len() {
        return None;
    }
    for part in &comps {
        for (i, &u) in part.iter().enumerate() {
            for &v in &part[i + 1..] {
                if gp.adjacent(u, v) {
                    return None;
                }
            }
        }
    }
    Some((comps[0].clone(), comps[1].clone()))
}

pub fn cmd_dc(gp: &GraphProduct, meta: Meta, cfg: &RunConfig) -> (Report, bool) {
    let (ball, partial) = enumerate_partial(gp, cfg.radius, cfg.memory_budget);
    let dc = dc_sequence(gp, &ball);
    let balls = ball.ball_sizes();

    let bounds = kkk_parts(gp).map(|(a, b)| {
        let ga = gp.special_subgroup(&a);
        let gb = gp.special_subgroup(&b);
        let ball_a = enumerate_ball(&ga, ball.radius(), cfg.memory_budget)
            .map(|i| i.ball_sizes())
            .unwrap_or_default();
        let ball_b = enumerate_ball(&gb, ball.radius(), cfg.memory_budget)
            .map(|i| i.ball_sizes())
            .unwrap_or_default();
        (ball_a, ball_b)
    });

    let rows: Vec<DcRow> = dc
        .iter()
        .enumerate()
        .map(|(n, d)| {
            let (kkk_bound, bound_holds) = match &bounds {
                Some((ba, bb)) if n < ba.len() && n < bb.len() => {
                    let bound = BigRational::new(
                        BigInt::from(ba[n]) * BigInt::from(bb[n]),
                        BigInt::from(balls[n]) * BigInt::from(balls[n]),
                    );
                    let holds = *d >= bound;
                    (Some(rat_str(&bound)), Some(holds))
                }
                _ => (None, None),
            };
            DcRow {
                n: n as u32,
                ball: balls[n],
                dc: rat_str(d),
                dc_approx: d.to_f64().unwrap_or(f64::NAN),
                kkk_bound,
                bound_holds,
            }
        })
        .collect();

    (
        Report::Dc(DcReport {
            meta,
            partial,
            rows,
        }),
        partial,
    )
}

#[allow(clippy::large_enum_variant)] // one outcome per run
pub enum CentraliserOutcome {
    Report(Report),
    InputError(String),
    Budget(String),
}

pub fn cmd_centraliser(
    gp: &GraphProduct,
    meta: Meta,
    cfg: &RunConfig,
    word: &str,
) -> CentraliserOutcome {
    let g = match gp.parse_word(word) {
        Ok(g) => g,
        Err(e) => return CentraliserOutcome::InputError(format!("cannot parse word: {e}")),
    };
    if g.is_identity() {
        return CentraliserOutcome::InputError(
            "the word is the identity; its centraliser is the whole group".to_string(),
        );
    }
    let desc = gp.centraliser_structure(&g).expect("nontrivial element");

    let labels = |vs: &[u32]| {
        vs.iter()
            .map(|&v| gp.graph().label(v).to_string())
            .collect::<Vec<_>>()
    };

    let factors: Vec<FactorRow> = desc
        .factors
        .iter()
        .map(|f| {
            let size_profile = factor_ball_counts(gp, f, cfg.radius);
            match f {
                Factor::Finite { vertex, elements } => FactorRow {
                    kind: "finite".to_string(),
                    vertex: Some(gp.graph().label(*vertex).to_string()),
                    generator: None,
                    set_size: Some(elements.len()),
                    primitive: None,
                    beta: None,
                    size_profile,
                },
                Factor::Cyclic {
                    generator,
                    primitive,
                    beta,
                    ..
                } => FactorRow {
                    kind: "cyclic".to_string(),
                    vertex: None,
                    generator: Some(gp.display_word(generator)),
                    set_size: None,
                    primitive: Some(*primitive),
                    beta: Some(*beta),
                    size_profile,
                },
            }
        })
        .collect();

    let mut counts = Vec::with_capacity(cfg.radius as usize + 1);
    for n in 0..=cfg.radius {
        match centraliser_ball_count(gp, &desc, n, cfg.memory_budget) {
            Ok(c) => counts.push(c),
            Err(e) => return CentraliserOutcome::Budget(e.to_string()),
        }
    }

    let oracle_radius = cfg.radius.min(4);
    let oracle_ball = match enumerate_ball(gp, oracle_radius, cfg.memory_budget) {
        Ok(b) => b,
        Err(e) => return CentraliserOutcome::Budget(e.to_string()),
    };
    let cent_tilde = brute_force_centraliser(gp, &oracle_ball, &desc.tilde);
    let oracle: Vec<OracleRow> = (0..=oracle_radius)
        .map(|n| {
            let brute = cent_tilde
                .iter()
                .filter(|e| oracle_ball.distance(e).is_some_and(|d| d <= n))
                .count() as u64;
            let structural = counts[n as usize];
            OracleRow {
                n,
                structural,
                brute_force: brute,
                matches: structural == brute,
            }
        })
        .collect();

    let small = match small_centraliser_bounds_audit(gp, &desc, cfg.radius.max(1)) {
        Ok(()) => "pass".to_string(),
        Err(v) => format!(
            "FAIL: factor {} has {} elements in B({}) > bound {}",
            v.factor_index + 1,
            v.count,
            v.radius,
            v.bound
        ),
    };
    let conj = match conjugate_bound_audit(gp, &desc, &g, &oracle_ball, cfg.memory_budget) {
        Ok(r) => format!(
            "{} (s={}, |C(g) ∩ B({})| = {} <= |C(g~) ∩ B({})| = {})",
            if r.pass { "pass" } else { "FAIL" },
            r.s,
            oracle_radius,
            r.lhs,
            oracle_radius + 2 * r.s,
            r.rhs
        ),
        Err(e) => return CentraliserOutcome::Budget(e.to_string()),
    };

    CentraliserOutcome::Report(Report::Centraliser(CentraliserReport {
        meta,
        word: gp.display_word(&g),
        conjugator: gp.display_word(&desc.conjugator),
        tilde: gp.display_word(&desc.tilde),
        normal: gp.display_word(&desc.normal),
        components: desc.components.iter().map(|c| labels(c)).collect(),
        link: labels(&desc.link),
        factors,
        counts,
        oracle,
        small_centraliser_bounds: small,
        conjugate_bound: conj,
    }))
}

pub fn cmd_series(meta: Meta, cfg: &RunConfig, seq: &[BigInt]) -> Report {
    let (rf, effective) = recurrence_for(seq, cfg.max_order);
    let (recurrence, verdict, profile, audits) = match rf {
        None => (
            None,
            format!("none found (orders <= {effective})"),
            None,
            None,
        ),
        Some(rf) => {
            let section = SeriesSection {
                numerator: rf.numerator().coeffs().iter().map(rat_str).collect(),
                denominator: rf.denominator().coeffs().iter().map(rat_str).collect(),
            };
            let verdict = format!("found (order {})", rf.denominator().degree().unwrap_or(0));
            match asymptotic_profile_with_tolerance(&rf, PROFILE_HORIZON, cfg.modulus_tolerance) {
                Ok(p) => {
                    let audits = audit_section(seq, &p, cfg);
                    (
                        Some(section),
                        verdict,
                        Some(profile_section(&p)),
                        Some(audits),
                    )
                }
                Err(SeriesError::ConstantDenominator) => (
                    Some(section),
                    format!("{verdict}; series is a polynomial"),
                    None,
                    None,
                ),
                Err(e) => (
                    Some(section),
                    verdict,
                    None,
                    Some(AuditSection {
                        growth_window: format!("profile unavailable: {e}"),
                        c_check: "skipped".to_string(),
                        density: "skipped".to_string(),
                    }),
                ),
            }
        }
    };
    Report::Series(SeriesReport {
        meta,
        terms: seq.len(),
        submultiplicativity: submult_str(seq),
        recurrence,
        recurrence_verdict: verdict,
        profile,
        audits,
    })
}

/// Parses a sequence file: one integer per line, `#` comments allowed.
pub fn parse_sequence(text: &str) -> Result<Vec<BigInt>, String> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match line.parse::<BigInt>() {
            Ok(v) => out.push(v),
            Err(_) => {
                return Err(format!(
                    "line {}: cannot parse integer {line:?}",
                    lineno + 1
                ))
            }
        }
    }
    if out.is_empty() {
        return Err("sequence file contains no terms".to_string());
    }
    Ok(out)
}
