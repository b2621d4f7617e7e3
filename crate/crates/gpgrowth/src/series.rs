//! Rational-series reconstruction and dominant-singularity asymptotics.
//!
//! A sequence with a rational generating function p/q (normalized so
//! q(0) = 1) satisfies a(n) = -Σ q_i a(n-i) + p_n. Detection works over
//! exact rationals: the candidate recurrence is solved from tail
//! equations, then validated against every supplied term, so a
//! near-recurrence is never silently accepted.
//!
//! Profiling factors q exactly over the rationals where possible (linear
//! factors and irreducible quadratics, including repeated ones), isolates
//! any residual roots numerically, groups reciprocal roots by modulus,
//! and computes the expansion coefficients b_{i,j} of
//! a(n) = Σ_i Σ_j b_{i,j} n^j λ_i^n. The bounded sequence
//! c_n = Σ_j b_{j,α} exp(iφ_j n) multiplying the dominant part n^α λ^n is
//! sampled exactly when the dominant roots are exactly factored and λ is
//! rational, numerically otherwise.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::{rat_i64, sqrt_exact, Poly};

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("sequence too short: got {got} terms, need at least {need} for max order {order}")]
    TooShort {
        got: usize,
        need: usize,
        order: usize,
    },
    #[error("root isolation failed to separate moduli {m1} and {m2} at relative tolerance {tol}")]
    ModulusSeparation { m1: f64, m2: f64, tol: f64 },
    #[error("asymptotic profile of a polynomial series (constant denominator) is undefined")]
    ConstantDenominator,
    #[error("sequences must have equal length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("product growth check requires λ_H ≥ λ_K")]
    ProductOrder,
    #[error("E_δ is empty in the sampled window")]
    EmptyDensityWindow,
}

/// A rational function p/q normalized so that q(0) = 1 and gcd(p, q) = 1,
/// together with coefficient expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunctionSeries {
    numerator: Poly,
    denominator: Poly,
}

impl RationalFunctionSeries {
    pub fn new(numerator: Poly, denominator: Poly) -> Self {
        assert!(
            !denominator.coeff(0).is_zero(),
            "denominator must not vanish at 0"
        );
        let g = numerator.gcd(&denominator);
        let (mut p, mut q) = if g.degree() > Some(0) {
            (numerator.divmod(&g).0, denominator.divmod(&g).0)
        } else {
            (numerator, denominator)
        };
        let scale = BigRational::one() / q.coeff(0);
        p = p.scale(&scale);
        q = q.scale(&scale);
        RationalFunctionSeries {
            numerator: p,
            denominator: q,
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    /// First `n + 1` power-series coefficients, via the recurrence
    /// a(k) = p_k - Σ_{i>=1} q_i a(k-i).
    pub fn expand(&self, n: usize) -> Vec<BigRational> {
        let q = &self.denominator;
        let dq = q.degree().unwrap_or(0);
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut a = self.numerator.coeff(k);
            for i in 1..=dq.min(k) {
                a -= q.coeff(i) * &out[k - i];
            }
            out.push(a);
        }
        out
    }

    /// Integer expansion; `None` when a coefficient is not an integer.
    pub fn expand_integer(&self, n: usize) -> Option<Vec<BigInt>> {
        self.expand(n)
            .into_iter()
            .map(|a| a.is_integer().then(|| a.to_integer()))
            .collect()
    }
}

/// Finds the minimal-order exact linear recurrence (with constant
/// coefficients, plus a finite polynomial correction) valid on all
/// supplied terms; `None` when no order `<= max_order` works.
pub fn find_recurrence(
    seq: &[BigInt],
    max_order: usize,
) -> Result<Option<RationalFunctionSeries>, SeriesError> {
    let len = seq.len();
    let need = 2 * max_order + 4;
    if len < need {
        return Err(SeriesError::TooShort {
            got: len,
            need,
            order: max_order,
        });
    }
    let a: Vec<BigRational> = seq.iter().map(|x| BigRational::from(x.clone())).collect();

    for m in 0..=max_order {
        // solve from a tail window of equations (the most likely to lie
        // beyond the numerator), widest first; the all-terms validation
        // below is the actual gate
        let candidates: Vec<Poly> = if m == 0 {
            vec![Poly::one()]
        } else {
            let mut qs = Vec::new();
            for extra in [4usize, 2] {
                let eqs = m + extra;
                let Some(start) = len.checked_sub(eqs) else {
                    continue;
                };
                if start < m {
                    continue;
                }
                // Σ_{i=1..m} q_i a(k-i) = -a(k)
                let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(eqs);
                for k in start..len {
                    let mut row: Vec<BigRational> = (1..=m).map(|i| a[k - i].clone()).collect();
                    row.push(-a[k].clone());
                    rows.push(row);
                }
                if let Some(sol) = solve_exact(rows, m) {
                    let mut coeffs = vec![BigRational::one()];
                    coeffs.extend(sol);
                    let q = Poly::new(coeffs);
                    if !qs.contains(&q) {
                        qs.push(q);
                    }
                }
            }
            qs
        };
        for q in candidates {
            // validate on every term: p = q * s must be a short polynomial
            let dq = q.degree().unwrap_or(0);
            let mut p_coeffs = vec![BigRational::zero(); len];
            let mut d_p: Option<usize> = None;
            for (k, pc) in p_coeffs.iter_mut().enumerate() {
                let mut c = BigRational::zero();
                for i in 0..=dq.min(k) {
                    c += q.coeff(i) * &a[k - i];
                }
                if !c.is_zero() {
                    d_p = Some(k);
                }
                *pc = c;
            }
            let margin = 4.max(m + 2);
            let ok = match d_p {
                None => true,
                Some(d) => len > d + margin,
            };
            if ok {
                let d = d_p.map_or(0, |d| d);
                let p = Poly::new(p_coeffs[..=d].to_vec());
                return Ok(Some(RationalFunctionSeries::new(p, q)));
            }
        }
    }
    Ok(None)
}

/// Exact Gaussian elimination for an overdetermined system given as rows
/// `[c_1, ..., c_m | rhs]`. Returns `None` when inconsistent; free
/// variables are set to zero.
fn solve_exact(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; unknowns];
    let mut r = 0;
    for c in 0..unknowns {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = BigRational::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                #[allow(clippy::needless_range_loop)] // two rows are touched
                for j in 0..=unknowns {
                    let sub = &f * &rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    // inconsistent row: all-zero coefficients with nonzero rhs
    for row in &rows {
        if row[..unknowns].iter().all(|x| x.is_zero()) && !row[unknowns].is_zero() {
            return None;
        }
    }
    let mut sol = vec![BigRational::zero(); unknowns];
    for c in 0..unknowns {
        if let Some(pr) = pivot_of_col[c] {
            sol[c] = rows[pr][unknowns].clone();
        }
    }
    Some(sol)
}

/// Exact factorization of a denominator (constant term 1) into linear
/// factors `(1 - λt)`, irreducible quadratics, and a numeric residual.
#[derive(Debug, Clone)]
pub struct DenominatorFactors {
    /// Rational reciprocal roots λ with multiplicities.
    pub linear: Vec<(BigRational, usize)>,
    /// Irreducible `λ² + b λ + c` (reciprocal-root polynomial) with
    /// multiplicities; the t-factor is `1 + b t + c t²`.
    pub quadratic: Vec<(BigRational, BigRational, usize)>,
    /// Unfactored part (constant term 1), roots isolated numerically.
    pub residual: Option<Poly>,
}

pub fn factor_denominator(q: &Poly) -> DenominatorFactors {
    let (t_roots, mut rest) = q.rational_roots();
    // reciprocal roots: q = Π (1 - λ t)^m with λ = 1/r for a t-root r
    let mut linear: Vec<(BigRational, usize)> = t_roots
        .into_iter()
        .map(|(r, m)| {
            assert!(!r.is_zero(), "denominator has nonzero constant term");
            (BigRational::one() / r, m)
        })
        .collect();
    linear.sort_by(|a, b| b.0.cmp(&a.0));

    let mut quadratic = Vec::new();
    let mut residual = None;
    loop {
        match rest.degree() {
            None | Some(0) => break,
            Some(2) => {
                let norm = rest.scale(&(BigRational::one() / rest.coeff(0)));
                // 1 + b t + c t² has reciprocal-root polynomial λ² + b λ + c
                quadratic.push((norm.coeff(1), norm.coeff(2), 1));
                rest = Poly::one();
            }
            Some(4) => {
                // try a repeated quadratic: (1 + b t + c t²)²
                let norm = rest.scale(&(BigRational::one() / rest.coeff(0)));
                let b = norm.coeff(1) / rat_i64(2);
                let c = (norm.coeff(2) - &b * &b) / rat_i64(2);
                let square = Poly::new(vec![BigRational::one(), b.clone(), c.clone()]).pow(2);
                if square == norm {
                    quadratic.push((b, c, 2));
                    rest = Poly::one();
                } else {
                    residual = Some(norm);
                    break;
                }
            }
            Some(_) => {
                residual = Some(rest.scale(&(BigRational::one() / rest.coeff(0))));
                break;
            }
        }
    }
    // merge equal quadratic factors produced separately
    quadratic.sort_by_key(|a| (a.0.clone(), a.1.clone()));
    quadratic.dedup_by(|a, b| {
        if a.0 == b.0 && a.1 == b.1 {
            b.2 += a.2;
            true
        } else {
            false
        }
    });
    DenominatorFactors {
        linear,
        quadratic,
        residual,
    }
}

/// One reciprocal root λ_i of the denominator.
#[derive(Debug, Clone)]
pub struct ReciprocalRoot {
    pub value: Complex64,
    pub modulus: f64,
    /// α_i + 1.
    pub multiplicity: usize,
    /// Came out of the exact factorization (vs numeric isolation).
    pub exact: bool,
    /// Exact |λ|² when available.
    pub modulus_sq_exact: Option<BigRational>,
}

/// One expansion term b_{i,j} n^j λ_i^n.
#[derive(Debug, Clone)]
pub struct CoeffTerm {
    pub root: Complex64,
    /// The power j of n.
    pub power: usize,
    pub value: Complex64,
    /// Exact value when the root is rational.
    pub exact: Option<BigRational>,
}

/// One sample of the dominant-part sequence c_n.
#[derive(Debug, Clone)]
pub struct CSample {
    pub re: f64,
    pub im: f64,
    pub exact: Option<BigRational>,
}

/// Dominant modulus λ, dominant degree α, root list, expansion
/// coefficients, c_n samples and empirical window bounds.
#[derive(Debug, Clone)]
pub struct AsymptoticProfile {
    pub roots: Vec<ReciprocalRoot>,
    pub lambda: f64,
    /// Exact λ when rational.
    pub lambda_exact: Option<BigRational>,
    pub alpha: usize,
    pub coefficients: Vec<CoeffTerm>,
    pub c_samples: Vec<CSample>,
    /// True when every c_n sample carries an exact rational value.
    pub c_exact: bool,
    /// min over 1 <= n <= sample_horizon of a(n) / (n^α λ^n).
    pub c_emp: BigRational,
    /// max over the same window.
    pub d_emp: BigRational,
    /// True when the ratio window was computed in exact arithmetic.
    pub bounds_exact: bool,
    pub sample_horizon: usize,
}

impl AsymptoticProfile {
    /// The coefficient of n^α λ^n at the positive real dominant root, when
    /// present.
    pub fn dominant_real_coefficient(&self) -> Option<&CoeffTerm> {
        self.coefficients.iter().find(|t| {
            t.power == self.alpha
                && (t.root.im == 0.0 || t.root.im.abs() < 1e-12 * self.lambda)
                && (t.root.re - self.lambda).abs() <= 1e-8 * self.lambda.max(1.0)
        })
    }
}

/// Ball-sequence degree: α + 1 when λ = 1 exactly, α otherwise.
pub fn alpha_for_balls(profile: &AsymptoticProfile) -> usize {
    if profile.lambda_exact.as_ref().is_some_and(|l| l.is_one()) {
        profile.alpha + 1
    } else {
        profile.alpha
    }
}

const MODULUS_GROUP_RTOL: f64 = 1e-8;

/// Computes the asymptotic profile of a reconstructed rational series.
pub fn asymptotic_profile(
    rf: &RationalFunctionSeries,
    sample_horizon: usize,
) -> Result<AsymptoticProfile, SeriesError> {
    asymptotic_profile_with_tolerance(rf, sample_horizon, MODULUS_GROUP_RTOL)
}

pub fn asymptotic_profile_with_tolerance(
    rf: &RationalFunctionSeries,
    sample_horizon: usize,
    modulus_rtol: f64,
) -> Result<AsymptoticProfile, SeriesError> {
    let q = rf.denominator();
    let deg_q = q.degree().unwrap_or(0);
    if deg_q == 0 {
        return Err(SeriesError::ConstantDenominator);
    }
    let factors = factor_denominator(q);

    // assemble the root list
    let mut roots: Vec<ReciprocalRoot> = Vec::new();
    for (lam, m) in &factors.linear {
        let v = lam.to_f64().unwrap();
        roots.push(ReciprocalRoot {
            value: Complex64::new(v, 0.0),
            modulus: v.abs(),
            multiplicity: *m,
            exact: true,
            modulus_sq_exact: Some(lam * lam),
        });
    }
    for (b, c, m) in &factors.quadratic {
        let bf = b.to_f64().unwrap();
        let cf = c.to_f64().unwrap();
        let disc = bf * bf - 4.0 * cf;
        if disc < 0.0 {
            // conjugate pair: |λ|² = c exactly
            let re = -bf / 2.0;
            let im = (-disc).sqrt() / 2.0;
            for sign in [1.0, -1.0] {
                roots.push(ReciprocalRoot {
                    value: Complex64::new(re, sign * im),
                    modulus: cf.sqrt(),
                    multiplicity: *m,
                    exact: true,
                    modulus_sq_exact: Some(c.clone()),
                });
            }
        } else {
            // two real irrational roots; |λ|² is rational only when b = 0
            let s = disc.sqrt();
            for sign in [1.0, -1.0] {
                let v = (-bf + sign * s) / 2.0;
                roots.push(ReciprocalRoot {
                    value: Complex64::new(v, 0.0),
                    modulus: v.abs(),
                    multiplicity: *m,
                    exact: true,
                    modulus_sq_exact: b.is_zero().then(|| -c.clone()),
                });
            }
        }
    }
    if let Some(res) = &factors.residual {
        for (value, m) in numeric_roots(res) {
            roots.push(ReciprocalRoot {
                value,
                modulus: value.norm(),
                multiplicity: m,
                exact: false,
                modulus_sq_exact: None,
            });
        }
    }
    roots.sort_by(|a, b| b.modulus.total_cmp(&a.modulus));

    // group the top modulus; an ambiguous numeric separation is reported
    // instead of being merged away (exact moduli compare exactly)
    let top = roots[0].modulus;
    let mut dominant_idx: Vec<usize> = Vec::new();
    for (i, r) in roots.iter().enumerate() {
        let both_exact = roots[0].modulus_sq_exact.is_some() && r.modulus_sq_exact.is_some();
        let same = match (&roots[0].modulus_sq_exact, &r.modulus_sq_exact) {
            (Some(a), Some(b)) => a == b,
            _ => (top - r.modulus).abs() <= modulus_rtol * top.max(1.0),
        };
        if same {
            dominant_idx.push(i);
        } else if !both_exact && (top - r.modulus).abs() <= 10.0 * modulus_rtol * top.max(1.0) {
            return Err(SeriesError::ModulusSeparation {
                m1: top,
                m2: r.modulus,
                tol: modulus_rtol,
            });
        }
    }
    let lambda = top;
    let lambda_exact = roots[0]
        .modulus_sq_exact
        .as_ref()
        .and_then(sqrt_exact)
        .filter(|_| {
            dominant_idx
                .iter()
                .all(|&i| roots[i].modulus_sq_exact == roots[0].modulus_sq_exact)
        });
    let alpha = dominant_idx
        .iter()
        .map(|&i| roots[i].multiplicity - 1)
        .max()
        .unwrap();

    // proper part: p/q = polypart + p_prop/q
    let (polypart, p_prop) = rf.numerator().divmod(q);

    // exact expansion coefficients from the linear factors
    let mut coefficients: Vec<CoeffTerm> = Vec::new();
    let mut exact_linear: Vec<(BigRational, Vec<BigRational>)> = Vec::new();
    for (lam, m) in &factors.linear {
        let f = Poly::new(vec![BigRational::one(), -lam.clone()]); // 1 - λt
        let numerators = factor_power_numerators(&p_prop, q, &f, *m);
        // power k numerator is a constant a_k; contribution a_k C(n+k-1, k-1) λ^n
        let mut b_by_power = vec![BigRational::zero(); *m];
        for (k, num) in numerators.iter().enumerate() {
            let k = k + 1;
            let a_k = num.coeff(0);
            if a_k.is_zero() {
                continue;
            }
            // C(n+k-1, k-1) = Π_{s=1..k-1} (n+s) / (k-1)!
            let mut poly_n = vec![BigRational::one()];
            let mut fact = BigRational::one();
            for s in 1..k {
                fact *= rat_i64(s as i64);
                let mut next = vec![BigRational::zero(); poly_n.len() + 1];
                for (j, c) in poly_n.iter().enumerate() {
                    next[j + 1] += c;
                    next[j] += c * rat_i64(s as i64);
                }
                poly_n = next;
            }
            for (j, c) in poly_n.iter().enumerate() {
                b_by_power[j] += &a_k * c / &fact;
            }
        }
        for (j, b) in b_by_power.iter().enumerate() {
            if !b.is_zero() || j == *m - 1 {
                coefficients.push(CoeffTerm {
                    root: Complex64::new(lam.to_f64().unwrap(), 0.0),
                    power: j,
                    value: Complex64::new(b.to_f64().unwrap(), 0.0),
                    exact: Some(b.clone()),
                });
            }
        }
        exact_linear.push((lam.clone(), b_by_power));
    }

    // expansion values (exact), long enough for sampling and solving
    let non_linear_unknowns: usize = factors
        .quadratic
        .iter()
        .map(|(_, _, m)| 2 * m)
        .sum::<usize>()
        + factors
            .residual
            .as_ref()
            .and_then(|r| r.degree())
            .unwrap_or(0);
    let n0 = polypart.degree().map_or(0, |d| d + 1);
    let expand_to = sample_horizon.max(n0 + non_linear_unknowns + 1).max(1);
    let a = rf.expand(expand_to);

    // numeric coefficients for quadratic/residual roots, solved from the
    // sequence with the exact linear contributions removed
    if non_linear_unknowns > 0 {
        // everything except the rational roots (those already have
        // exact coefficients)
        let covered_by_linear = |r: &ReciprocalRoot| {
            r.exact
                && r.value.im == 0.0
                && factors.linear.iter().any(|(l, _)| {
                    (l.to_f64().unwrap() - r.value.re).abs()
                        <= f64::EPSILON * 4.0 * r.modulus.max(1.0)
                })
        };
        let unknown_roots: Vec<(Complex64, usize)> = roots
            .iter()
            .filter(|r| !covered_by_linear(r))
            .map(|r| (r.value, r.multiplicity))
            .collect();
        let k_total: usize = unknown_roots.iter().map(|&(_, m)| m).sum();
        debug_assert_eq!(k_total, non_linear_unknowns);
        let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(k_total);
        #[allow(clippy::needless_range_loop)] // n is the sample point
        for n in n0 + 1..=n0 + k_total {
            let mut row = Vec::with_capacity(k_total + 1);
            for &(root, m) in &unknown_roots {
                let pw = root.powi(n as i32);
                for j in 0..m {
                    row.push(pw * (n as f64).powi(j as i32));
                }
            }
            // residual sequence value
            let mut val = a[n].clone() - polypart.coeff(n);
            for (lam, bs) in &exact_linear {
                let lam_n = rat_pow(lam, n);
                for (j, b) in bs.iter().enumerate() {
                    val -= b * rat_pow_usize(n, j) * &lam_n;
                }
            }
            row.push(Complex64::new(val.to_f64().unwrap(), 0.0));
            rows.push(row);
        }
        let sol = solve_complex(rows, k_total);
        let mut idx = 0;
        for &(root, m) in &unknown_roots {
            for j in 0..m {
                coefficients.push(CoeffTerm {
                    root,
                    power: j,
                    value: sol[idx],
                    exact: None,
                });
                idx += 1;
            }
        }
    }

    // c_n samples over the dominant set {roots with α_i = α}
    let dominant: Vec<&ReciprocalRoot> = dominant_idx
        .iter()
        .map(|&i| &roots[i])
        .filter(|r| r.multiplicity - 1 == alpha)
        .collect();
    let exact_c_possible = lambda_exact.is_some()
        && dominant.iter().all(|r| {
            if !r.exact {
                return false;
            }
            if r.value.im == 0.0 {
                // rational real root at ±λ
                factors.linear.iter().any(|(l, _)| {
                    (l.to_f64().unwrap() - r.value.re).abs() < 1e-12 * lambda.max(1.0)
                })
            } else {
                // conjugate pair of multiplicity 1
                r.multiplicity == 1
            }
        });

    let (c_samples, c_exact) = if exact_c_possible {
        let lam = lambda_exact.clone().unwrap();
        let mut vals = vec![BigRational::zero(); sample_horizon + 1];
        // rational dominant roots contribute b_{i,α} (λ_i/λ)^n
        for (l, bs) in &exact_linear {
            if (l * l) == (&lam * &lam) && bs.len() == alpha + 1 {
                let sign = if l.is_negative() { -1i64 } else { 1 };
                let b = bs[alpha].clone();
                for (n, v) in vals.iter_mut().enumerate() {
                    let s = if sign < 0 && n % 2 == 1 {
                        -b.clone()
                    } else {
                        b.clone()
                    };
                    *v += s;
                }
            }
        }
        // dominant conjugate pairs of multiplicity 1: exact 2-term recurrence
        for (b, c, m) in &factors.quadratic {
            if *m != 1 || c != &(&lam * &lam) {
                continue;
            }
            if alpha != 0 {
                continue;
            }
            let f = Poly::new(vec![BigRational::one(), b.clone(), c.clone()]);
            let num = factor_power_numerators(&p_prop, q, &f, 1).remove(0);
            let x0 = num.coeff(0);
            let x1 = num.coeff(1) - b * &x0;
            let r1 = -(b / &lam);
            let r2 = -(c / (&lam * &lam));
            let mut u_prev = x0.clone();
            let mut u = &x1 / &lam;
            vals[0] += &u_prev;
            if sample_horizon >= 1 {
                vals[1] += &u;
            }
            for v in vals.iter_mut().take(sample_horizon + 1).skip(2) {
                let next = &r1 * &u + &r2 * &u_prev;
                u_prev = std::mem::replace(&mut u, next);
                *v += &u;
            }
        }
        let samples = vals
            .into_iter()
            .map(|v| CSample {
                re: v.to_f64().unwrap(),
                im: 0.0,
                exact: Some(v),
            })
            .collect();
        (samples, true)
    } else {
        let mut samples = Vec::with_capacity(sample_horizon + 1);
        let dom_terms: Vec<&CoeffTerm> = coefficients
            .iter()
            .filter(|t| {
                t.power == alpha
                    && dominant
                        .iter()
                        .any(|r| (r.value - t.root).norm() <= 1e-9 * lambda.max(1.0))
            })
            .collect();
        for n in 0..=sample_horizon {
            let mut z = Complex64::new(0.0, 0.0);
            for t in &dom_terms {
                let unit = t.root / lambda;
                z += t.value * unit.powi(n as i32);
            }
            samples.push(CSample {
                re: z.re,
                im: z.im,
                exact: None,
            });
        }
        (samples, false)
    };

    // empirical window bounds over 1..=sample_horizon
    let (c_emp, d_emp, bounds_exact) = match &lambda_exact {
        Some(lam) => {
            let mut min: Option<BigRational> = None;
            let mut max: Option<BigRational> = None;
            for (n, an) in a.iter().enumerate().take(sample_horizon + 1).skip(1) {
                let denom = rat_pow_usize(n, alpha) * rat_pow(lam, n);
                let ratio = an / denom;
                if min.as_ref().is_none_or(|m| ratio < *m) {
                    min = Some(ratio.clone());
                }
                if max.as_ref().is_none_or(|m| ratio > *m) {
                    max = Some(ratio);
                }
            }
            (min.unwrap(), max.unwrap(), true)
        }
        None => {
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            for (n, an) in a.iter().enumerate().take(sample_horizon + 1).skip(1) {
                let ratio =
                    an.to_f64().unwrap() / ((n as f64).powi(alpha as i32) * lambda.powi(n as i32));
                min = min.min(ratio);
                max = max.max(ratio);
            }
            (
                BigRational::from_float(min).unwrap_or_else(BigRational::zero),
                BigRational::from_float(max).unwrap_or_else(BigRational::zero),
                false,
            )
        }
    };

    Ok(AsymptoticProfile {
        roots,
        lambda,
        lambda_exact,
        alpha,
        coefficients,
        c_samples,
        c_exact,
        c_emp,
        d_emp,
        bounds_exact,
        sample_horizon,
    })
}

/// Partial-fraction numerators of `p/q` at the factor `f^m`: returns the
/// numerators of `1/f, 1/f², ..., 1/f^m` (each of degree < deg f).
fn factor_power_numerators(p: &Poly, q: &Poly, f: &Poly, m: usize) -> Vec<Poly> {
    let fm = f.pow(m);
    let (cof, rem) = q.divmod(&fm);
    debug_assert!(rem.is_zero(), "factor must divide the denominator");
    let (g, u, _) = cof.ext_gcd(&fm);
    debug_assert_eq!(g.degree(), Some(0));
    let gi = p.mul(&u).rem(&fm);
    // base-f digits: gi = Σ_j r_j f^j, so gi/f^m = Σ_j r_j / f^(m-j)
    let mut digits = Vec::with_capacity(m);
    let mut rest = gi;
    for _ in 0..m {
        let (d, r) = rest.divmod(f);
        digits.push(r);
        rest = d;
    }
    // numerator of 1/f^k is digit m-k
    (1..=m).map(|k| digits[m - k].clone()).collect()
}

fn rat_pow(r: &BigRational, n: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = r.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

fn rat_pow_usize(n: usize, j: usize) -> BigRational {
    rat_pow(&rat_i64(n as i64), j)
}

/// Durand-Kerner root isolation with clustering into multiplicities.
fn numeric_roots(poly: &Poly) -> Vec<(Complex64, usize)> {
    let deg = poly.degree().unwrap_or(0);
    if deg == 0 {
        return Vec::new();
    }
    // roots of the t-polynomial, then reciprocals
    let lead = poly.coeff(deg);
    let coeffs: Vec<Complex64> = (0..=deg)
        .map(|i| Complex64::new((poly.coeff(i) / &lead).to_f64().unwrap(), 0.0))
        .collect();
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let mut zs: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::new(0.4, 0.9).powi(k as i32 + 1))
        .collect();
    for _ in 0..500 {
        let mut delta: f64 = 0.0;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= zs[i] - zs[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let step = eval(zs[i]) / denom;
            zs[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    // reciprocal roots, clustered
    let recip: Vec<Complex64> = zs.iter().map(|z| 1.0 / z).collect();
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for r in recip {
        match clusters
            .iter_mut()
            .find(|(c, _)| (*c - r).norm() <= 1e-6 * c.norm().max(1.0))
        {
            Some((c, m)) => {
                *c = (*c * (*m as f64) + r) / (*m as f64 + 1.0);
                *m += 1;
            }
            None => clusters.push((r, 1)),
        }
    }
    clusters
}

/// Complex Gaussian elimination with partial pivoting; rows are
/// `[coeffs | rhs]`.
fn solve_complex(mut rows: Vec<Vec<Complex64>>, unknowns: usize) -> Vec<Complex64> {
    let n = rows.len();
    assert!(n >= unknowns);
    for c in 0..unknowns {
        let piv = (c..n)
            .max_by(|&i, &j| rows[i][c].norm().total_cmp(&rows[j][c].norm()))
            .unwrap();
        rows.swap(c, piv);
        let p = rows[c][c];
        for x in rows[c].iter_mut() {
            *x /= p;
        }
        for i in 0..n {
            if i != c {
                let f = rows[i][c];
                if f.norm() > 0.0 {
                    #[allow(clippy::needless_range_loop)] // two rows are touched
                    for j in 0..=unknowns {
                        let sub = f * rows[c][j];
                        rows[i][j] -= sub;
                    }
                }
            }
        }
    }
    (0..unknowns).map(|i| rows[i][unknowns]).collect()
}

/// Verdict of the empirical growth-window window check.
#[derive(Debug, Clone, PartialEq)]
pub enum GrowthWindowVerdict {
    /// a(n)/(n^α λ^n) stays in a positive bounded window.
    BoundedPositive {
        c_emp: BigRational,
        d_emp: BigRational,
    },
    /// The window ratio collapses towards zero (c_n vanishes infinitely often).
    LiminfZero { min_ratio: f64 },
    /// The window ratio grows without bound.
    Unbounded { growth_factor: f64 },
}

/// Checks how a(n)/(n^α λ^n) behaves over the window 1..len.
pub fn growth_window_audit(seq: &[BigInt], profile: &AsymptoticProfile) -> GrowthWindowVerdict {
    let ratios: Vec<f64> = (1..seq.len())
        .map(|n| {
            seq[n].to_f64().unwrap_or(f64::MAX)
                / ((n as f64).powi(profile.alpha as i32) * profile.lambda.powi(n as i32))
        })
        .collect();
    let mid = ratios.len() / 2;
    let max_first = ratios[..mid.max(1)]
        .iter()
        .cloned()
        .fold(f64::MIN, f64::max);
    let max_second = ratios[mid..].iter().cloned().fold(f64::MIN, f64::max);
    if max_second > 2.0 * max_first {
        return GrowthWindowVerdict::Unbounded {
            growth_factor: max_second / max_first,
        };
    }
    let min_ratio = ratios.iter().cloned().fold(f64::MAX, f64::min);
    let max_ratio = max_first.max(max_second);
    let exact_zero = profile.c_exact
        && profile
            .c_samples
            .iter()
            .any(|s| s.exact.as_ref().is_some_and(|v| v.is_zero()));
    if exact_zero || min_ratio < 1e-6 * max_ratio {
        return GrowthWindowVerdict::LiminfZero { min_ratio };
    }
    // exact window bounds when λ is rational, f64-derived otherwise
    match &profile.lambda_exact {
        Some(lam) => {
            let mut min: Option<BigRational> = None;
            let mut max: Option<BigRational> = None;
            for (n, an) in seq.iter().enumerate().skip(1) {
                let ratio = BigRational::from(an.clone())
                    / (rat_pow_usize(n, profile.alpha) * rat_pow(lam, n));
                if min.as_ref().is_none_or(|m| ratio < *m) {
                    min = Some(ratio.clone());
                }
                if max.as_ref().is_none_or(|m| ratio > *m) {
                    max = Some(ratio);
                }
            }
            GrowthWindowVerdict::BoundedPositive {
                c_emp: min.unwrap(),
                d_emp: max.unwrap(),
            }
        }
        None => GrowthWindowVerdict::BoundedPositive {
            c_emp: BigRational::from_float(min_ratio).unwrap_or_else(BigRational::zero),
            d_emp: BigRational::from_float(max_ratio).unwrap_or_else(BigRational::zero),
        },
    }
}

/// Result of checking that the c_n are (numerically) real and
/// asymptotically nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct CSequenceReport {
    pub pass: bool,
    pub max_im_abs: f64,
    pub min_re: f64,
    pub checked_to: usize,
}

/// Asserts |Im c_n| <= tol and Re c_n >= -tol for 0 <= n <= N (exact zero
/// imaginary part and exact sign check when the samples are exact).
pub fn c_sequence_check(profile: &AsymptoticProfile, n: usize, tol: f64) -> CSequenceReport {
    let upto = n.min(profile.c_samples.len().saturating_sub(1));
    let samples = &profile.c_samples[..=upto];
    let mut max_im: f64 = 0.0;
    let mut min_re = f64::MAX;
    let mut pass = true;
    for s in samples {
        match &s.exact {
            Some(v) => {
                min_re = min_re.min(v.to_f64().unwrap());
                if v.is_negative() {
                    pass = false;
                }
            }
            None => {
                max_im = max_im.max(s.im.abs());
                min_re = min_re.min(s.re);
                if s.im.abs() > tol || s.re < -tol {
                    pass = false;
                }
            }
        }
    }
    CSequenceReport {
        pass,
        max_im_abs: max_im,
        min_re,
        checked_to: upto,
    }
}

/// Gap structure of E_δ = {n : c_n >= δ} within the sampled window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityGap {
    /// Largest spacing between consecutive members.
    pub max_gap: usize,
    /// Index of the first member.
    pub lead_in: usize,
    pub members: usize,
}

pub fn density_gap(samples: &[CSample], delta: &BigRational) -> Result<DensityGap, SeriesError> {
    let delta_f = delta.to_f64().unwrap();
    let members: Vec<usize> = samples
        .iter()
        .enumerate()
        .filter(|(_, s)| match &s.exact {
            Some(v) => v >= delta,
            None => s.re >= delta_f,
        })
        .map(|(n, _)| n)
        .collect();
    if members.is_empty() {
        return Err(SeriesError::EmptyDensityWindow);
    }
    let max_gap = members.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);
    Ok(DensityGap {
        max_gap,
        lead_in: members[0],
        members: members.len(),
    })
}

/// Exact convolution of two equal-length sphere sequences; models sphere
/// sizes of H × K under length additivity.
pub fn convolve_spheres(a: &[BigInt], b: &[BigInt]) -> Result<Vec<BigInt>, SeriesError> {
    if a.len() != b.len() {
        return Err(SeriesError::LengthMismatch(a.len(), b.len()));
    }
    Ok((0..a.len())
        .map(|n| (0..=n).map(|i| &a[i] * &b[n - i]).sum())
        .collect())
}

/// Verdict of the product-growth dichotomy for H × K inside G.
#[derive(Debug, Clone, PartialEq)]
pub enum ProductGrowthVerdict {
    /// λ_H > λ_K: the convolution is O(n^{α_H} λ_H^n); empirical constant
    /// reported.
    Bounded {
        d_tilde_emp: BigRational,
        exact: bool,
        increments_decayed: bool,
    },
    /// λ_H = λ_K: the ratio grows at least like n^{α_K/2 + 1}.
    Unbounded {
        shape_constant: f64,
        final_over_mid: f64,
    },
}

pub fn product_growth_check(
    seq_h: &[BigInt],
    seq_k: &[BigInt],
    prof_h: &AsymptoticProfile,
    prof_k: &AsymptoticProfile,
) -> Result<ProductGrowthVerdict, SeriesError> {
    let equal = match (&prof_h.lambda_exact, &prof_k.lambda_exact) {
        (Some(a), Some(b)) => a == b,
        _ => (prof_h.lambda - prof_k.lambda).abs() <= 1e-9 * prof_h.lambda.max(1.0),
    };
    if !equal && prof_h.lambda < prof_k.lambda {
        return Err(SeriesError::ProductOrder);
    }
    let conv = convolve_spheres(seq_h, seq_k)?;
    if equal {
        let ratios: Vec<f64> = (1..conv.len())
            .map(|n| {
                conv[n].to_f64().unwrap()
                    / ((n as f64).powi(prof_h.alpha as i32) * prof_h.lambda.powi(n as i32))
            })
            .collect();
        let shape_constant = ratios
            .iter()
            .enumerate()
            .map(|(i, r)| r / ((i + 1) as f64).powf(prof_k.alpha as f64 / 2.0 + 1.0))
            .fold(f64::MAX, f64::min);
        let mid = ratios[ratios.len() / 2 - 1];
        let last = *ratios.last().unwrap();
        Ok(ProductGrowthVerdict::Unbounded {
            shape_constant,
            final_over_mid: last / mid,
        })
    } else {
        match &prof_h.lambda_exact {
            Some(lam) => {
                let mut max: Option<BigRational> = None;
                let mut incs: Vec<BigRational> = Vec::new();
                let mut prev: Option<BigRational> = None;
                for (n, c) in conv.iter().enumerate().skip(1) {
                    let ratio = BigRational::from(c.clone())
                        / (rat_pow_usize(n, prof_h.alpha) * rat_pow(lam, n));
                    if let Some(p) = &prev {
                        incs.push((&ratio - p).abs());
                    }
                    prev = Some(ratio.clone());
                    if max.as_ref().is_none_or(|m| ratio > *m) {
                        max = Some(ratio);
                    }
                }
                let mid = incs.len() / 2;
                let increments_decayed = incs
                    .last()
                    .is_none_or(|l| incs.get(mid).is_none_or(|m| l <= m));
                Ok(ProductGrowthVerdict::Bounded {
                    d_tilde_emp: max.unwrap(),
                    exact: true,
                    increments_decayed,
                })
            }
            None => {
                let ratios: Vec<f64> = (1..conv.len())
                    .map(|n| {
                        conv[n].to_f64().unwrap()
                            / ((n as f64).powi(prof_h.alpha as i32) * prof_h.lambda.powi(n as i32))
                    })
                    .collect();
                let max = ratios.iter().cloned().fold(f64::MIN, f64::max);
                let mid = ratios.len() / 2;
                let increments_decayed = ratios.len() < 3
                    || (ratios[ratios.len() - 1] - ratios[ratios.len() - 2]).abs()
                        <= (ratios[mid] - ratios[mid - 1]).abs();
                Ok(ProductGrowthVerdict::Bounded {
                    d_tilde_emp: BigRational::from_float(max).unwrap_or_else(BigRational::zero),
                    exact: false,
                    increments_decayed,
                })
            }
        }
    }
}

/// a(n) = 2^{b(n)} with b(n) the binary digit sum of n: submultiplicative
/// but with no rational generating function.
pub fn digit_sum_sequence(len: usize) -> Vec<BigInt> {
    (0..len as u64)
        .map(|n| BigInt::from(1u8) << n.count_ones())
        .collect()
}

/// The rational-series fixture p = 1 + 12t² - 16t³ over
/// q = (1-t)(1-2t)(1-2t+4t²): rational with λ = 2, α = 0 but liminf
/// a(n)/2^n = 0.
pub fn example_rational_function() -> RationalFunctionSeries {
    let p = Poly::from_i64(&[1, 0, 12, -16]);
    let q = Poly::from_i64(&[1, -1])
        .mul(&Poly::from_i64(&[1, -2]))
        .mul(&Poly::from_i64(&[1, -2, 4]));
    RationalFunctionSeries::new(p, q)
}

/// Closed form of the fixture sequence: a(n) = c(n) 2^n + 1 with c
/// cycling (0, 2, 6, 8, 6, 2). Used as the independent oracle for the
/// expansion.
pub fn example_sequence(len: usize) -> Vec<BigInt> {
    const CYCLE: [i64; 6] = [0, 2, 6, 8, 6, 2];
    (0..len)
        .map(|n| BigInt::from(CYCLE[n % 6]) * (BigInt::from(1u8) << n) + 1)
        .collect()
}
