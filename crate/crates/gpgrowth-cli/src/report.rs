//! Report data structures and deterministic rendering.
//!
//! Reports serialize to human text (default), JSON, or CSV plot data.
//! Re-running with identical inputs yields byte-identical output; the
//! worker count never enters a report.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;

pub fn rat_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub command: String,
    pub input: String,
    pub digest: String,
    pub radius: Option<u32>,
    pub max_order: Option<usize>,
    pub tolerance: f64,
    pub memory_budget: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesSection {
    /// Coefficients low-to-high degree, as exact `num/den` strings.
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RootRow {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub multiplicity: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoeffRow {
    pub root_re: f64,
    pub root_im: f64,
    pub power: usize,
    pub value_re: f64,
    pub value_im: f64,
    pub exact: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileSection {
    pub lambda: f64,
    pub lambda_exact: Option<String>,
    pub alpha: usize,
    pub roots: Vec<RootRow>,
    pub coefficients: Vec<CoeffRow>,
    pub c_exact: bool,
    pub c_samples: Vec<String>,
    pub c_emp: String,
    pub d_emp: String,
    pub bounds_exact: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditSection {
    pub growth_window: String,
    pub c_check: String,
    pub density: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub meta: Meta,
    pub partial: bool,
    pub spheres: Vec<u64>,
    pub balls: Vec<u64>,
    pub sphere_submultiplicativity: String,
    pub ball_submultiplicativity: String,
    pub series: Option<SeriesSection>,
    pub profile: Option<ProfileSection>,
    pub audits: Option<AuditSection>,
    /// Ball series p(t)/((1-t) q(t)), derived from the sphere series.
    pub ball_series: Option<SeriesSection>,
    /// "exact match" when its expansion reproduces every enumerated ball
    /// size.
    pub ball_series_check: Option<String>,
    pub ball_profile: Option<ProfileSection>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DcRow {
    pub n: u32,
    pub ball: u64,
    pub dc: String,
    pub dc_approx: f64,
    /// K_{k,k} lower bound column, when the spec is a K_{k,k} RAAG.
    pub kkk_bound: Option<String>,
    pub bound_holds: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DcReport {
    pub meta: Meta,
    pub partial: bool,
    pub rows: Vec<DcRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorRow {
    pub kind: String,
    pub vertex: Option<String>,
    pub generator: Option<String>,
    pub set_size: Option<usize>,
    pub primitive: Option<bool>,
    pub beta: Option<u32>,
    /// |factor ∩ B(n)| for n = 0..=radius.
    pub size_profile: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleRow {
    pub n: u32,
    pub structural: u64,
    pub brute_force: u64,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CentraliserReport {
    pub meta: Meta,
    pub word: String,
    pub conjugator: String,
    pub tilde: String,
    pub normal: String,
    pub components: Vec<Vec<String>>,
    pub link: Vec<String>,
    pub factors: Vec<FactorRow>,
    /// |C(g̃) ∩ B(n)| for n = 0..=radius.
    pub counts: Vec<u64>,
    pub oracle: Vec<OracleRow>,
    pub small_centraliser_bounds: String,
    pub conjugate_bound: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport {
    pub meta: Meta,
    pub terms: usize,
    pub submultiplicativity: String,
    pub recurrence: Option<SeriesSection>,
    pub recurrence_verdict: String,
    pub profile: Option<ProfileSection>,
    pub audits: Option<AuditSection>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "report")]
#[allow(clippy::large_enum_variant)] // one report per run
pub enum Report {
    #[serde(rename = "growth")]
    Growth(GrowthReport),
    #[serde(rename = "dc")]
    Dc(DcReport),
    #[serde(rename = "centraliser")]
    Centraliser(CentraliserReport),
    #[serde(rename = "series")]
    Series(SeriesReport),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(),
            Format::Csv => self.render_csv(),
        }
    }

    fn meta(&self) -> &Meta {
        match self {
            Report::Growth(r) => &r.meta,
            Report::Dc(r) => &r.meta,
            Report::Centraliser(r) => &r.meta,
            Report::Series(r) => &r.meta,
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let meta = self.meta();
        let _ = writeln!(out, "== gpgrowth {} report ==", meta.command);
        let _ = writeln!(out, "input: {} (sha256:{})", meta.input, meta.digest);
        let _ = write!(out, "options:");
        if let Some(r) = meta.radius {
            let _ = write!(out, " radius={r}");
        }
        if let Some(m) = meta.max_order {
            let _ = write!(out, " max-order={m}");
        }
        let _ = writeln!(
            out,
            " tolerance={} memory-budget={} seed={}",
            meta.tolerance, meta.memory_budget, meta.seed
        );
        match self {
            Report::Growth(r) => {
                if r.partial {
                    let _ = writeln!(out, "NOTE: memory budget exhausted; partial results");
                }
                let _ = writeln!(out, "spheres: {}", join(&r.spheres));
                let _ = writeln!(out, "balls:   {}", join(&r.balls));
                let _ = writeln!(
                    out,
                    "sphere submultiplicativity: {}",
                    r.sphere_submultiplicativity
                );
                let _ = writeln!(
                    out,
                    "ball submultiplicativity:   {}",
                    r.ball_submultiplicativity
                );
                match &r.series {
                    Some(s) => {
                        let _ = writeln!(
                            out,
                            "growth series numerator:   [{}]",
                            s.numerator.join(", ")
                        );
                        let _ = writeln!(
                            out,
                            "growth series denominator: [{}]",
                            s.denominator.join(", ")
                        );
                    }
                    None => {
                        let _ = writeln!(out, "growth series: no recurrence found at this order");
                    }
                }
                if let Some(p) = &r.profile {
                    render_profile(&mut out, p);
                }
                if let Some(a) = &r.audits {
                    render_audits(&mut out, a);
                }
                if let Some(s) = &r.ball_series {
                    let _ = writeln!(out, "ball series numerator:   [{}]", s.numerator.join(", "));
                    let _ = writeln!(
                        out,
                        "ball series denominator: [{}]",
                        s.denominator.join(", ")
                    );
                }
                if let Some(c) = &r.ball_series_check {
                    let _ = writeln!(out, "ball series vs enumeration: {c}");
                }
                if let Some(p) = &r.ball_profile {
                    let _ = writeln!(out, "ball asymptotics:");
                    render_profile(&mut out, p);
                }
            }
            Report::Dc(r) => {
                if r.partial {
                    let _ = writeln!(out, "NOTE: memory budget exhausted; partial results");
                }
                let _ = writeln!(out, "n\tball\td_n\td_n~\tK_kk bound");
                for row in &r.rows {
                    let _ = writeln!(
                        out,
                        "{}\t{}\t{}\t{:.6}\t{}",
                        row.n,
                        row.ball,
                        row.dc,
                        row.dc_approx,
                        match (&row.kkk_bound, row.bound_holds) {
                            (Some(b), Some(ok)) =>
                                format!("{b} ({})", if ok { "holds" } else { "VIOLATED" }),
                            _ => "-".to_string(),
                        }
                    );
                }
            }
            Report::Centraliser(r) => {
                let _ = writeln!(out, "element: {}", r.word);
                let _ = writeln!(out, "conjugator p_g: {}", r.conjugator);
                let _ = writeln!(out, "cyclic reduction g~: {}", r.tilde);
                let _ = writeln!(out, "cyclically normal g^: {}", r.normal);
                let _ = writeln!(
                    out,
                    "complement components of supp(g~): {}",
                    r.components
                        .iter()
                        .map(|c| format!("{{{}}}", c.join(", ")))
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                let _ = writeln!(out, "link part: {{{}}}", r.link.join(", "));
                for (i, f) in r.factors.iter().enumerate() {
                    let _ = write!(out, "factor {}: {}", i + 1, f.kind);
                    if let Some(v) = &f.vertex {
                        let _ = write!(out, " at {v}");
                    }
                    if let Some(g) = &f.generator {
                        let _ = write!(out, " generated by {g}");
                    }
                    if let Some(s) = f.set_size {
                        let _ = write!(out, " ({s} elements)");
                    }
                    if let (Some(p), Some(b)) = (f.primitive, f.beta) {
                        let _ = write!(out, " primitive={p} beta={b}");
                    }
                    let _ = writeln!(out, "; ball sizes {}", join(&f.size_profile));
                }
                let _ = writeln!(out, "|C(g~) ∩ B(n)|: {}", join(&r.counts));
                for row in &r.oracle {
                    let _ = writeln!(
                        out,
                        "oracle n={}: structural {} vs brute force {} -> {}",
                        row.n,
                        row.structural,
                        row.brute_force,
                        if row.matches { "match" } else { "MISMATCH" }
                    );
                }
                let _ = writeln!(
                    out,
                    "small-centraliser bounds: {}",
                    r.small_centraliser_bounds
                );
                let _ = writeln!(out, "conjugate bound: {}", r.conjugate_bound);
            }
            Report::Series(r) => {
                let _ = writeln!(out, "terms: {}", r.terms);
                let _ = writeln!(out, "submultiplicativity: {}", r.submultiplicativity);
                let _ = writeln!(out, "recurrence: {}", r.recurrence_verdict);
                if let Some(s) = &r.recurrence {
                    let _ = writeln!(out, "numerator:   [{}]", s.numerator.join(", "));
                    let _ = writeln!(out, "denominator: [{}]", s.denominator.join(", "));
                }
                if let Some(p) = &r.profile {
                    render_profile(&mut out, p);
                }
                if let Some(a) = &r.audits {
                    render_audits(&mut out, a);
                }
            }
        }
        out
    }

    /// Plot data: the main (n, value) table of the command.
    fn render_csv(&self) -> String {
        let mut out = String::new();
        let meta = self.meta();
        let _ = writeln!(
            out,
            "# gpgrowth {} input={} sha256:{}",
            meta.command, meta.input, meta.digest
        );
        match self {
            Report::Growth(r) => {
                let _ = writeln!(out, "n,sphere,ball");
                for (n, (s, b)) in r.spheres.iter().zip(&r.balls).enumerate() {
                    let _ = writeln!(out, "{n},{s},{b}");
                }
            }
            Report::Dc(r) => {
                let _ = writeln!(out, "n,ball,dc,dc_approx,kkk_bound");
                for row in &r.rows {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        row.n,
                        row.ball,
                        row.dc,
                        row.dc_approx,
                        row.kkk_bound.clone().unwrap_or_default()
                    );
                }
            }
            Report::Centraliser(r) => {
                let _ = writeln!(out, "n,structural_count");
                for (n, c) in r.counts.iter().enumerate() {
                    let _ = writeln!(out, "{n},{c}");
                }
            }
            Report::Series(r) => {
                let _ = writeln!(out, "n,c_sample");
                if let Some(p) = &r.profile {
                    for (n, c) in p.c_samples.iter().enumerate() {
                        let _ = writeln!(out, "{n},{c}");
                    }
                }
            }
        }
        out
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_profile(out: &mut String, p: &ProfileSection) {
    let _ = writeln!(
        out,
        "profile: lambda={}{} alpha={}",
        p.lambda,
        p.lambda_exact
            .as_ref()
            .map(|l| format!(" (exact {l})"))
            .unwrap_or_default(),
        p.alpha
    );
    for r in &p.roots {
        let _ = writeln!(
            out,
            "  root {}{:+}i |.|={} multiplicity={} {}",
            r.re,
            r.im,
            r.modulus,
            r.multiplicity,
            if r.exact { "exact" } else { "numeric" }
        );
    }
    for c in &p.coefficients {
        let _ = writeln!(
            out,
            "  b[{}{:+}i, n^{}] = {}{:+}i{}",
            c.root_re,
            c.root_im,
            c.power,
            c.value_re,
            c.value_im,
            c.exact
                .as_ref()
                .map(|e| format!(" (exact {e})"))
                .unwrap_or_default()
        );
    }
    let _ = writeln!(
        out,
        "  c_n ({}): {}",
        if p.c_exact { "exact" } else { "numeric" },
        p.c_samples[..p.c_samples.len().min(13)].join(" ")
    );
    let _ = writeln!(
        out,
        "  window bounds ({}): C_emp={} D_emp={}",
        if p.bounds_exact { "exact" } else { "numeric" },
        p.c_emp,
        p.d_emp
    );
}

fn render_audits(out: &mut String, a: &AuditSection) {
    let _ = writeln!(out, "growth window audit: {}", a.growth_window);
    let _ = writeln!(out, "c-sequence check: {}", a.c_check);
    let _ = writeln!(out, "density gap: {}", a.density);
}
