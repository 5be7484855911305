//! Rendering of reports as text tables and CSV, and plot-ready exports.
//!
//! Figure exports (all CSV with a header row):
//!
//! * `fig2`: `unit,placement,proportion,ci_lo,ci_hi`, two rows per unit
//!   (`ends` for g/F, `middle` for 1 - g/F) with quantile confidence bounds.
//! * `fig3`: `unit,mu,mean_d,sigma,lo1,hi1,lo2,hi2,lo3,hi3` where `loK`/`hiK`
//!   are `mu -/+ K sigma`.
//! * `fig4`: `node,angle,frequency`, angles in degrees clockwise from the top.
//! * `null`: `value,probability,decimal` for an exact distribution of D.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{format_rational, to_f64};
use crate::null_model::DiscreteDistribution;
use crate::ring::PermutationRing;
use crate::stats::HeadPlacementReport;

/// p-values below 1e-3 in scientific notation with two significant figures,
/// larger ones with three decimals.
pub fn format_p_value(p: f64) -> String {
    if p < 1e-3 {
        format!("{p:.1e}")
    } else {
        format!("{p:.3}")
    }
}

/// Rounds to `digits` significant figures.
pub fn round_significant(x: f64, digits: i32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(digits - 1 - magnitude);
    (x * scale).round() / scale
}

/// Rows of the head-end binomial test table: unit, g/F, F, g, p-value.
pub fn render_binomial_table(reports: &[HeadPlacementReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<20} {:>7} {:>7} {:>7} {:>10}",
        "unit", "g/F", "F", "g", "p-value"
    );
    for r in reports {
        for v in &r.variants {
            let _ = writeln!(
                out,
                "{:<20} {:>7.3} {:>7} {:>7} {:>10}",
                r.unit,
                v.proportion,
                v.test.trials,
                v.test.successes,
                format_p_value(v.test.p_value)
            );
        }
    }
    out
}

/// Rows of the average-D table: unit, F, D_min, mu, sigma, <D>, D_max, k.
/// Units with non-integer frequencies get one row at the real `F` followed by
/// one per integer transformation.
pub fn render_mean_d_table(reports: &[HeadPlacementReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<20} {:>7} {:>5} {:>6} {:>7} {:>7} {:>5} {:>6}",
        "unit", "F", "D_min", "mu", "sigma", "<D>", "D_max", "k"
    );
    for r in reports {
        let mu = format_rational(&r.expected_d);
        let mut row = |f: String, sigma: f64, mean_d: f64, k: f64| {
            let _ = writeln!(
                out,
                "{:<20} {:>7} {:>5} {:>6} {:>7.3} {:>7.3} {:>5} {:>6.2}",
                r.unit, f, r.d_min, mu, sigma, mean_d, r.d_max, k
            );
        };
        row(format_rational(&r.f), r.sigma_mean_d, r.mean_d, r.k);
        if !(r.f.is_integer() && r.g.is_integer()) {
            for v in &r.variants {
                row(v.test.trials.to_string(), v.sigma_mean_d, v.mean_d, v.k);
            }
        }
    }
    out
}

/// Full-precision report, one CSV row per integer transformation of each unit.
pub fn write_reports_csv<W: Write>(reports: &[HeadPlacementReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "unit",
        "F",
        "g",
        "proportion",
        "p0",
        "trials",
        "successes",
        "p_value",
        "d_min",
        "mu",
        "sigma",
        "mean_d",
        "d_max",
        "k",
        "three_sigma",
        "ci_ends_lo",
        "ci_ends_hi",
        "ci_mid_lo",
        "ci_mid_hi",
    ])?;
    for r in reports {
        for v in &r.variants {
            w.write_record([
                r.unit.clone(),
                format_rational(&r.f),
                format_rational(&r.g),
                r.proportion.to_string(),
                format!("{}/{}", r.p0.numer(), r.p0.denom()),
                v.test.trials.to_string(),
                v.test.successes.to_string(),
                v.test.p_value.to_string(),
                r.d_min.to_string(),
                to_f64(&r.expected_d).to_string(),
                r.sigma_mean_d.to_string(),
                r.mean_d.to_string(),
                r.d_max.to_string(),
                r.k.to_string(),
                r.three_sigma_significant.to_string(),
                r.ci_ends.0.to_string(),
                r.ci_ends.1.to_string(),
                r.ci_mid.0.to_string(),
                r.ci_mid.1.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    Fig2,
    Fig3,
    Fig4,
    Null,
}

impl FromStr for FigureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig2" => Ok(FigureKind::Fig2),
            "fig3" => Ok(FigureKind::Fig3),
            "fig4" => Ok(FigureKind::Fig4),
            "null" => Ok(FigureKind::Null),
            other => Err(Error::domain(format!("unknown figure id {other:?}"))),
        }
    }
}

pub enum PlotSource<'a> {
    Reports(&'a [HeadPlacementReport]),
    Ring(&'a PermutationRing),
    Distribution(&'a DiscreteDistribution),
}

pub fn export_plot_data(source: &PlotSource<'_>, kind: FigureKind) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    match (source, kind) {
        (PlotSource::Reports(reports), FigureKind::Fig2) => {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(["unit", "placement", "proportion", "ci_lo", "ci_hi"])?;
            for r in *reports {
                w.write_record([
                    r.unit.clone(),
                    "ends".into(),
                    r.proportion.to_string(),
                    r.ci_ends.0.to_string(),
                    r.ci_ends.1.to_string(),
                ])?;
                w.write_record([
                    r.unit.clone(),
                    "middle".into(),
                    (1.0 - r.proportion).to_string(),
                    r.ci_mid.0.to_string(),
                    r.ci_mid.1.to_string(),
                ])?;
            }
            w.flush()?;
        }
        (PlotSource::Reports(reports), FigureKind::Fig3) => {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record([
                "unit", "mu", "mean_d", "sigma", "lo1", "hi1", "lo2", "hi2", "lo3", "hi3",
            ])?;
            for r in *reports {
                let mu = to_f64(&r.expected_d);
                let mut rec = vec![
                    r.unit.clone(),
                    mu.to_string(),
                    r.mean_d.to_string(),
                    r.sigma_mean_d.to_string(),
                ];
                for k in 1..=3 {
                    let k = k as f64;
                    rec.push((mu - k * r.sigma_mean_d).to_string());
                    rec.push((mu + k * r.sigma_mean_d).to_string());
                }
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
        (PlotSource::Ring(ring), FigureKind::Fig4) => ring.write_layout_csv(&mut buf)?,
        (PlotSource::Distribution(dist), FigureKind::Null) => dist.write_csv(&mut buf)?,
        (_, kind) => {
            return Err(Error::domain(format!(
                "figure {kind:?} cannot be drawn from this kind of data"
            )))
        }
    }
    Ok(buf)
}
