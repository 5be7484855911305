//! Recomputes the published noun-phrase and S/O/V results from the embedded
//! data and compares them with the reported values.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::data::{
    builtin_dryer_table, builtin_sov_aggregates, UNIT_ADJUSTED, UNIT_GENERA, UNIT_LANGUAGES,
};
use crate::error::{Error, Result};
use crate::exact::{format_rational, ratio, to_f64};
use crate::export::{
    export_plot_data, format_p_value, render_binomial_table, render_mean_d_table,
    round_significant, FigureKind, PlotSource,
};
use crate::ring::build_ring;
use crate::stats::{analyze, right_binomial_test, HeadPlacementReport, DEFAULT_ALPHA};

/// Values as reported, with the tolerances they are checked at.
pub mod published {
    /// Tolerance on proportions g/F.
    pub const PROPORTION_TOL: f64 = 0.001;
    /// Tolerance on average D.
    pub const MEAN_D_TOL: f64 = 0.001;
    /// Tolerance on the separation k.
    pub const K_TOL: f64 = 0.01;
    /// Tolerance on sigma(<D>).
    pub const SIGMA_TOL: f64 = 0.001;

    /// (unit, g/F, F, g, p-value) for the integer units.
    pub const BINOMIAL_INTEGER: [(&str, f64, u64, u64, f64); 2] = [
        ("languages", 0.641, 576, 369, 7.3e-12),
        ("genera", 0.596, 322, 192, 3.3e-4),
    ];

    /// (g/F, F', g', p-value) for the four roundings of the adjusted unit.
    pub const BINOMIAL_ADJUSTED: [(f64, u64, u64, f64); 4] = [
        (0.567, 217, 123, 0.029),
        (0.564, 218, 123, 0.034),
        (0.571, 217, 124, 0.021),
        (0.569, 218, 124, 0.025),
    ];

    /// (unit, sigma, <D>, k) at the unit's own F.
    pub const MEAN_D_UNITS: [(&str, f64, f64, f64); 3] = [
        ("languages", 0.042, 5.281, 6.75),
        ("genera", 0.056, 5.193, 3.46),
        ("adjusted", 0.068, 5.133, 1.97),
    ];

    /// (F', sigma, <D>, k) for the roundings of the adjusted unit.
    pub const MEAN_D_ADJUSTED: [(u64, f64, f64, f64); 4] = [
        (217, 0.068, 5.134, 1.97),
        (218, 0.068, 5.128, 1.9),
        (217, 0.068, 5.143, 2.1),
        (218, 0.068, 5.138, 2.03),
    ];

    pub const D_MIN: u64 = 4;
    pub const D_MAX: u64 = 6;
    pub const MU: i64 = 5;

    /// (unit, F, g, p-value) for verb-first-or-last S/O/V orders.
    pub const SOV_FOOTNOTE: [(&str, u64, u64, f64); 2] = [
        ("languages", 5128, 2971, 2.7e-30),
        ("families", 340, 282, 9.2e-37),
    ];

    /// Layout order of the S/O/V ring.
    pub const SOV_RING: [&str; 6] = ["SOV", "SVO", "VSO", "VOS", "OVS", "OSV"];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Table2,
    Table3,
    Fig2,
    Fig3,
    Fig4,
    SovFootnote,
}

impl Target {
    pub const ALL: [Target; 6] = [
        Target::Table2,
        Target::Table3,
        Target::Fig2,
        Target::Fig3,
        Target::Fig4,
        Target::SovFootnote,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Table2 => "table2",
            Target::Table3 => "table3",
            Target::Fig2 => "fig2",
            Target::Fig3 => "fig3",
            Target::Fig4 => "fig4",
            Target::SovFootnote => "sov-footnote",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown reproduction target {s:?}")))
    }
}

/// One computed-vs-published comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub computed: String,
    pub published: String,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {}: computed {}, published {}",
            if self.passed { "ok" } else { "MISMATCH" },
            self.label,
            self.computed,
            self.published
        )
    }
}

#[derive(Debug, Clone)]
pub struct Reproduction {
    pub target: Target,
    /// The recomputed artifact (text table or CSV).
    pub body: String,
    pub checks: Vec<Check>,
}

impl Reproduction {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Body followed by one line per check.
    pub fn render(&self) -> String {
        let mut out = self.body.clone();
        if !out.ends_with('\n') {
            out.push('\n');
        }
        out.push('\n');
        for c in &self.checks {
            let _ = writeln!(out, "{c}");
        }
        out
    }
}

fn within(label: String, computed: f64, published: f64, tol: f64) -> Check {
    Check {
        label,
        computed: format!("{computed:.6}"),
        published: published.to_string(),
        passed: (computed - published).abs() <= tol + 1e-12,
    }
}

fn exact<T: PartialEq + fmt::Display>(label: String, computed: T, published: T) -> Check {
    Check {
        label,
        computed: computed.to_string(),
        published: published.to_string(),
        passed: computed == published,
    }
}

/// Agreement to two significant figures.
pub fn p_value_matches(computed: f64, published: f64) -> bool {
    let rounded = round_significant(computed, 2);
    ((rounded - published) / published).abs() < 1e-9
}

fn p_check(label: String, computed: f64, published: f64) -> Check {
    Check {
        label,
        computed: format!("{computed:.4e}"),
        published: format_p_value(published),
        passed: p_value_matches(computed, published),
    }
}

/// Reports for the embedded noun-phrase table at the default alpha.
pub fn dryer_reports() -> Result<Vec<HeadPlacementReport>> {
    analyze(&builtin_dryer_table(), DEFAULT_ALPHA, None)
}

fn report<'a>(reports: &'a [HeadPlacementReport], unit: &str) -> &'a HeadPlacementReport {
    reports
        .iter()
        .find(|r| r.unit == unit)
        .expect("embedded unit")
}

fn table2_checks(reports: &[HeadPlacementReport]) -> Vec<Check> {
    use published::*;
    let mut checks = Vec::new();
    for (unit, prop, f, g, p) in BINOMIAL_INTEGER {
        let r = report(reports, unit);
        let v = &r.variants[0];
        checks.push(exact(format!("{unit} variants"), r.variants.len(), 1));
        checks.push(within(
            format!("{unit} g/F"),
            r.proportion,
            prop,
            PROPORTION_TOL,
        ));
        checks.push(exact(
            format!("{unit} F"),
            format_rational(&r.f),
            f.to_string(),
        ));
        checks.push(exact(
            format!("{unit} g"),
            format_rational(&r.g),
            g.to_string(),
        ));
        checks.push(p_check(format!("{unit} p-value"), v.test.p_value, p));
    }
    let r = report(reports, UNIT_ADJUSTED);
    checks.push(exact(
        format!("{UNIT_ADJUSTED} F"),
        format_rational(&r.f),
        "217.4".into(),
    ));
    checks.push(exact(
        format!("{UNIT_ADJUSTED} g"),
        format_rational(&r.g),
        "123.2".into(),
    ));
    checks.push(exact(
        format!("{UNIT_ADJUSTED} variants"),
        r.variants.len(),
        4,
    ));
    for (v, (prop, f, g, p)) in r.variants.iter().zip(BINOMIAL_ADJUSTED) {
        let tag = format!("{UNIT_ADJUSTED} ({f}, {g})");
        checks.push(exact(
            format!("{tag} pairing"),
            format!("({}, {})", v.test.trials, v.test.successes),
            format!("({f}, {g})"),
        ));
        checks.push(within(
            format!("{tag} g/F"),
            v.proportion,
            prop,
            PROPORTION_TOL,
        ));
        checks.push(p_check(format!("{tag} p-value"), v.test.p_value, p));
    }
    checks
}

fn table3_checks(reports: &[HeadPlacementReport]) -> Vec<Check> {
    use published::*;
    let mut checks = Vec::new();
    for (unit, sigma, mean_d, k) in MEAN_D_UNITS {
        let r = report(reports, unit);
        checks.push(exact(format!("{unit} D_min"), r.d_min, D_MIN));
        checks.push(exact(format!("{unit} D_max"), r.d_max, D_MAX));
        checks.push(exact(
            format!("{unit} mu"),
            r.expected_d.clone(),
            crate::exact::int(MU),
        ));
        checks.push(within(
            format!("{unit} sigma"),
            r.sigma_mean_d,
            sigma,
            SIGMA_TOL,
        ));
        checks.push(within(format!("{unit} <D>"), r.mean_d, mean_d, MEAN_D_TOL));
        checks.push(within(format!("{unit} k"), r.k, k, K_TOL));
    }
    let r = report(reports, UNIT_ADJUSTED);
    for (v, (f, sigma, mean_d, k)) in r.variants.iter().zip(MEAN_D_ADJUSTED) {
        let tag = format!("{UNIT_ADJUSTED} ({}, {})", v.test.trials, v.test.successes);
        checks.push(exact(format!("{tag} F"), v.test.trials, f));
        checks.push(within(
            format!("{tag} sigma"),
            v.sigma_mean_d,
            sigma,
            SIGMA_TOL,
        ));
        checks.push(within(format!("{tag} <D>"), v.mean_d, mean_d, MEAN_D_TOL));
        checks.push(within(format!("{tag} k"), v.k, k, K_TOL));
    }
    checks
}

/// Right-tail p-values of the S/O/V aggregates under `p0 = 2/3` and `p0 = 1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SovFinding {
    pub unit: &'static str,
    pub total: u64,
    pub head_at_ends: u64,
    pub published: f64,
    pub p_two_thirds: f64,
    pub p_half: f64,
}

/// Within one order of magnitude.
pub fn same_order_of_magnitude(computed: f64, published: f64) -> bool {
    computed > 0.0 && (computed.log10() - published.log10()).abs() <= 1.0
}

pub fn sov_findings() -> Result<Vec<SovFinding>> {
    builtin_sov_aggregates()
        .into_iter()
        .zip(published::SOV_FOOTNOTE)
        .map(|(agg, (_, _, _, published))| {
            let t = right_binomial_test(agg.head_at_ends, agg.total, &ratio(2, 3))?;
            let h = right_binomial_test(agg.head_at_ends, agg.total, &ratio(1, 2))?;
            Ok(SovFinding {
                unit: agg.unit,
                total: agg.total,
                head_at_ends: agg.head_at_ends,
                published,
                p_two_thirds: t.p_value,
                p_half: h.p_value,
            })
        })
        .collect()
}

pub fn reproduce(target: Target) -> Result<Reproduction> {
    let (body, checks) = match target {
        Target::Table2 => {
            let reports = dryer_reports()?;
            (render_binomial_table(&reports), table2_checks(&reports))
        }
        Target::Table3 => {
            let reports = dryer_reports()?;
            (render_mean_d_table(&reports), table3_checks(&reports))
        }
        Target::Fig2 => {
            let reports = dryer_reports()?;
            let csv = export_plot_data(&PlotSource::Reports(&reports), FigureKind::Fig2)?;
            let mut checks = Vec::new();
            for (unit, prop, mid) in [
                (UNIT_LANGUAGES, 0.641, 0.359),
                (UNIT_GENERA, 0.596, 0.404),
                (UNIT_ADJUSTED, 0.567, 0.433),
            ] {
                let r = report(&reports, unit);
                checks.push(within(
                    format!("{unit} g/F"),
                    r.proportion,
                    prop,
                    published::PROPORTION_TOL,
                ));
                checks.push(within(
                    format!("{unit} 1 - g/F"),
                    1.0 - r.proportion,
                    mid,
                    published::PROPORTION_TOL,
                ));
            }
            (String::from_utf8_lossy(&csv).into_owned(), checks)
        }
        Target::Fig3 => {
            let reports = dryer_reports()?;
            let csv = export_plot_data(&PlotSource::Reports(&reports), FigureKind::Fig3)?;
            let mut checks = Vec::new();
            for (unit, sigma, mean_d, _) in published::MEAN_D_UNITS {
                let r = report(&reports, unit);
                checks.push(within(
                    format!("{unit} mu"),
                    to_f64(&r.expected_d),
                    5.0,
                    0.0,
                ));
                checks.push(within(
                    format!("{unit} <D>"),
                    r.mean_d,
                    mean_d,
                    published::MEAN_D_TOL,
                ));
                checks.push(within(
                    format!("{unit} sigma"),
                    r.sigma_mean_d,
                    sigma,
                    published::SIGMA_TOL,
                ));
            }
            (String::from_utf8_lossy(&csv).into_owned(), checks)
        }
        Target::Fig4 => {
            let ring = build_ring(&['S', 'O', 'V'], None)?;
            let mut body = String::from_utf8_lossy(&export_plot_data(
                &PlotSource::Ring(&ring),
                FigureKind::Fig4,
            )?)
            .into_owned();
            body.push('\n');
            let mut edges = Vec::new();
            ring.write_edges_csv(&mut edges)?;
            body.push_str(&String::from_utf8_lossy(&edges));
            let names: Vec<String> = ring.nodes().iter().map(|n| n.to_string()).collect();
            let checks = vec![
                exact("nodes".into(), ring.nodes().len(), 6),
                exact("edges".into(), ring.edges().len(), 6),
                exact("single cycle".into(), ring.is_ring(), true),
                exact(
                    "cycle order".into(),
                    names.join(" "),
                    published::SOV_RING.join(" "),
                ),
            ];
            (body, checks)
        }
        Target::SovFootnote => {
            let findings = sov_findings()?;
            let mut body = String::new();
            let _ = writeln!(
                body,
                "{:<10} {:>6} {:>6} {:>7} {:>12} {:>12} {:>12}",
                "unit", "F", "g", "g/F", "p(p0=2/3)", "p(p0=1/2)", "published"
            );
            let mut checks = Vec::new();
            for f in &findings {
                let _ = writeln!(
                    body,
                    "{:<10} {:>6} {:>6} {:>7.3} {:>12.2e} {:>12.2e} {:>12.1e}",
                    f.unit,
                    f.total,
                    f.head_at_ends,
                    f.head_at_ends as f64 / f.total as f64,
                    f.p_two_thirds,
                    f.p_half,
                    f.published
                );
                checks.push(Check {
                    label: format!(
                        "{} p-value within one order of magnitude (p0 = 1/2)",
                        f.unit
                    ),
                    computed: format!("{:.2e}", f.p_half),
                    published: format!("{:.1e}", f.published),
                    passed: same_order_of_magnitude(f.p_half, f.published),
                });
            }
            let half = findings
                .iter()
                .all(|f| same_order_of_magnitude(f.p_half, f.published));
            let third = findings
                .iter()
                .all(|f| same_order_of_magnitude(f.p_two_thirds, f.published));
            let _ = writeln!(
                body,
                "\np0 = 1/2 reproduces the published p-values: {}\np0 = 2/3 reproduces the published p-values: {}",
                if half { "yes" } else { "no" },
                if third { "yes" } else { "no" }
            );
            (body, checks)
        }
    };
    Ok(Reproduction {
        target,
        body,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_target_reproduces() {
        for t in Target::ALL {
            let r = reproduce(t).unwrap();
            assert!(r.all_passed(), "{}", r.render());
        }
    }

    #[test]
    fn p_value_matching() {
        assert!(p_value_matches(7.276e-12, 7.3e-12));
        assert!(p_value_matches(0.02854, 0.029));
        assert!(!p_value_matches(0.0284, 0.029));
        assert!(same_order_of_magnitude(2.72e-30, 2.7e-30));
        assert!(!same_order_of_magnitude(1.0, 2.7e-30));
    }

    #[test]
    fn target_names() {
        for t in Target::ALL {
            assert_eq!(t.name().parse::<Target>().unwrap(), t);
        }
        assert!("table9".parse::<Target>().is_err());
    }
}
