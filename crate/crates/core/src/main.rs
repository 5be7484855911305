use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use headplace::error::{Error, Result};
use headplace::exact::{format_rational, parse_rational};
use headplace::export::{
    export_plot_data, render_binomial_table, render_mean_d_table, write_reports_csv, FigureKind,
    PlotSource,
};
use headplace::io::{load_frequency_table, TableSchema};
use headplace::null_model::{
    enumerate_d_distribution_with_cap, null_moments, vp_diagnostic, DEFAULT_MAX_N,
};
use headplace::reproduce::{reproduce, Target};
use headplace::stats::{analyze, DEFAULT_ALPHA};
use headplace::{build_ring, FreeTree};

/// Exit status when a reproduction does not match the published values.
const EXIT_MISMATCH: u8 = 1;
/// Exit status for usage, parse and input errors.
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "headplace",
    version,
    about = "Head placement statistics for single-head structures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Table,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute a published table or figure from the embedded data.
    Reproduce {
        /// table2, table3, fig2, fig3, fig4 or sov-footnote.
        target: String,
    },
    /// Analyze an order frequency table read from CSV.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Symbol of the head in the order strings.
        #[arg(long, default_value = "n")]
        head: String,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        /// Null probability of a head at an end (default 2/n), e.g. 1/2.
        #[arg(long)]
        p0: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Emit plot data for fig2 or fig3 instead of the report.
        #[arg(long)]
        figure: Option<String>,
        /// Require a row for every order.
        #[arg(long)]
        strict: bool,
    },
    /// Moments of D under random shuffling, optionally with the exact distribution.
    NullModel {
        /// Tree as `n=4; edges=1-2,1-3,1-4; head=1`, or `star:N` / `path:N`.
        #[arg(long)]
        tree: String,
        /// Total frequency F for sigma(<D>).
        #[arg(long = "frequency", short = 'F')]
        frequency: Option<f64>,
        /// Dump the enumerated distribution of D.
        #[arg(long)]
        distribution: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Check the closed-form moments against exhaustive enumeration.
    Oracle {
        #[arg(long)]
        tree: String,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Orders one adjacent swap apart, as a ring layout or an edge list.
    Ring {
        /// Symbols of the alphabet, in the order of the first node.
        #[arg(long, default_value = "SOV")]
        alphabet: String,
        /// CSV with columns `order,<frequency>` to annotate the nodes.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Emit the edge list instead of the layout.
        #[arg(long)]
        edges: bool,
    },
}

struct Outcome {
    text: String,
    matched: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            matched: true,
        }
    }
}

fn single_char(s: &str, what: &str) -> Result<char> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::parse(
            None,
            format!("{what} must be a single character, got {s:?}"),
        )),
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "--alpha must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(())
}

fn check_cap(max_n: usize) -> Result<()> {
    if max_n < 2 {
        return Err(Error::Domain(format!(
            "--max-n must be at least 2, got {max_n}"
        )));
    }
    Ok(())
}

fn cmd_reproduce(target: &str) -> Result<Outcome> {
    let target: Target = target.parse()?;
    let r = reproduce(target)?;
    Ok(Outcome {
        text: r.render(),
        matched: r.all_passed(),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_analyze(
    input: &PathBuf,
    head: &str,
    alpha: f64,
    p0: Option<&str>,
    format: Format,
    figure: Option<&str>,
    strict: bool,
) -> Result<Outcome> {
    check_alpha(alpha)?;
    let schema = TableSchema {
        head: single_char(head, "--head")?,
        alphabet: None,
        strict,
    };
    let file = File::open(input).map_err(|e| Error::Io(format!("{}: {e}", input.display())))?;
    let table = load_frequency_table(file, &schema).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", input.display()),
        },
        other => other,
    })?;
    let p0 = p0.map(parse_rational).transpose()?;
    let reports = analyze(&table, alpha, p0.as_ref())?;
    if let Some(fig) = figure {
        let kind: FigureKind = fig.parse()?;
        let bytes = export_plot_data(&PlotSource::Reports(&reports), kind)?;
        return Ok(Outcome::ok(String::from_utf8_lossy(&bytes).into_owned()));
    }
    let text = match format {
        Format::Table => format!(
            "{}\n{}",
            render_binomial_table(&reports),
            render_mean_d_table(&reports)
        ),
        Format::Csv => {
            let mut buf = Vec::new();
            write_reports_csv(&reports, &mut buf)?;
            String::from_utf8_lossy(&buf).into_owned()
        }
    };
    Ok(Outcome::ok(text))
}

/// `p/q`, followed by the decimal form when it terminates.
fn fraction(r: &num_rational::BigRational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let exact = format_rational(r);
    if exact.contains('/') {
        exact
    } else {
        format!("{}/{} = {exact}", r.numer(), r.denom())
    }
}

fn cmd_null_model(
    tree: &str,
    frequency: Option<f64>,
    distribution: bool,
    format: Format,
    max_n: usize,
) -> Result<Outcome> {
    check_cap(max_n)?;
    let tree: FreeTree = tree.parse()?;
    let moments = null_moments(&tree, frequency)?;
    let mut text = String::new();
    let mut line = |s: String| {
        text.push_str(&s);
        text.push('\n');
    };
    line(format!("tree: {tree}"));
    line(format!("D_r = {}", fraction(&moments.mean)));
    line(format!("V(D) = {}", fraction(&moments.variance)));
    if let (Some(f), Some(s)) = (frequency, moments.sigma_mean_d) {
        line(format!("sigma(<D>) at F = {f}: {s}"));
    }
    if tree.n() > max_n {
        if distribution {
            enumerate_d_distribution_with_cap(&tree, max_n)?;
        }
        line(format!(
            "oracle: skipped (n = {} exceeds --max-n {max_n})",
            tree.n()
        ));
        return Ok(Outcome::ok(text));
    }
    let dist = enumerate_d_distribution_with_cap(&tree, max_n)?;
    let confirmed = dist.mean() == moments.mean && dist.variance() == moments.variance;
    line(format!(
        "oracle: {}",
        if confirmed {
            "confirmed by enumeration"
        } else {
            "MISMATCH with enumeration"
        }
    ));
    if distribution {
        let diag = vp_diagnostic(&dist);
        line(format!("unimodal: {}", diag.unimodal));
        line(format!("finite variance: {}", diag.finite_variance));
        match format {
            Format::Csv => {
                let mut buf = Vec::new();
                dist.write_csv(&mut buf)?;
                text.push_str(&String::from_utf8_lossy(&buf));
            }
            Format::Table => {
                text.push_str(&format!(
                    "{:>6} {:>14} {:>12}\n",
                    "D", "probability", "decimal"
                ));
                for (v, m) in dist.support().iter().zip(dist.mass()) {
                    text.push_str(&format!(
                        "{v:>6} {:>14} {:>12.6}\n",
                        format!("{}/{}", m.numer(), m.denom()),
                        headplace::exact::to_f64(m)
                    ));
                }
            }
        }
    }
    Ok(Outcome {
        text,
        matched: confirmed,
    })
}

fn cmd_oracle(tree: &str, max_n: usize) -> Result<Outcome> {
    check_cap(max_n)?;
    let tree: FreeTree = tree.parse()?;
    let moments = null_moments(&tree, None)?;
    let dist = enumerate_d_distribution_with_cap(&tree, max_n)?;
    let (mean, var) = (dist.mean(), dist.variance());
    let ok_mean = mean == moments.mean;
    let ok_var = var == moments.variance;
    let text = format!(
        "tree: {tree}\nmean: enumerated {} closed form {} [{}]\nvariance: enumerated {} closed form {} [{}]\n",
        format_rational(&mean),
        format_rational(&moments.mean),
        if ok_mean { "ok" } else { "MISMATCH" },
        format_rational(&var),
        format_rational(&moments.variance),
        if ok_var { "ok" } else { "MISMATCH" },
    );
    Ok(Outcome {
        text,
        matched: ok_mean && ok_var,
    })
}

fn read_ring_frequencies(path: &PathBuf) -> Result<BTreeMap<String, f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut out = BTreeMap::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map(|p| p.line() as usize);
        if record.len() < 2 {
            return Err(Error::parse(line, "expected order,frequency"));
        }
        let f: f64 = record[1]
            .parse()
            .map_err(|_| Error::parse(line, format!("malformed frequency {:?}", &record[1])))?;
        if out.insert(record[0].to_string(), f).is_some() {
            return Err(Error::parse(
                line,
                format!("duplicate order {:?}", &record[0]),
            ));
        }
    }
    Ok(out)
}

fn cmd_ring(alphabet: &str, input: Option<&PathBuf>, edges: bool) -> Result<Outcome> {
    let symbols: Vec<char> = alphabet.chars().collect();
    let freqs = input.map(read_ring_frequencies).transpose()?;
    let ring = build_ring(&symbols, freqs.as_ref())?;
    if symbols.len() > 3 {
        eprintln!(
            "warning: with {} symbols the swap graph is not a ring",
            symbols.len()
        );
    }
    let mut buf = Vec::new();
    if edges {
        ring.write_edges_csv(&mut buf)?;
    } else {
        buf = export_plot_data(&PlotSource::Ring(&ring), FigureKind::Fig4)?;
    }
    Ok(Outcome::ok(String::from_utf8_lossy(&buf).into_owned()))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Reproduce { target } => cmd_reproduce(target),
        Command::Analyze {
            input,
            head,
            alpha,
            p0,
            format,
            figure,
            strict,
        } => cmd_analyze(
            input,
            head,
            *alpha,
            p0.as_deref(),
            *format,
            figure.as_deref(),
            *strict,
        ),
        Command::NullModel {
            tree,
            frequency,
            distribution,
            format,
            max_n,
        } => cmd_null_model(tree, *frequency, *distribution, *format, *max_n),
        Command::Oracle { tree, max_n } => cmd_oracle(tree, *max_n),
        Command::Ring {
            alphabet,
            input,
            edges,
        } => cmd_ring(alphabet, input.as_ref(), *edges),
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => File::create(path)?.write_all(text.as_bytes()),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if let Err(e) = emit(cli.out.as_ref(), &outcome.text) {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
            if outcome.matched {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MISMATCH)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
