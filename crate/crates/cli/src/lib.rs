//! Command implementations behind the `majmaj` binary.
//!
//! Every command renders into an [`Outcome`]; the binary only prints and maps
//! exit codes, which keeps the commands testable in-process.

use std::fmt::Write as _;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use majmaj::classifier::{self, Rational};
use majmaj::constructions;
use majmaj::graph::{to_dot, to_json};
use majmaj::oracle::{EnumerationBudget, Oracle};
use majmaj::regions::{self, RegionCell};
use majmaj::voting;
use majmaj::Configuration;
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] majmaj::Error),
    #[error("{0}")]
    Usage(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(majmaj::Error::Csv(_)) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(_) => EXIT_INFEASIBLE,
            CliError::Internal(_) => EXIT_MISMATCH,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Rendered standard output plus the exit code to report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            code: EXIT_OK,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "majmaj",
    version,
    about = "Majority-of-majorities classification on regular graphs with loops"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Status of the class G(n|d|h) with every quantity behind it
    Classify {
        n: u64,
        d: u64,
        h: u64,
        #[arg(long)]
        json: bool,
    },
    /// Fewest happy vertices that allow an approving configuration
    Hmin {
        n: u64,
        d: u64,
        #[arg(long)]
        json: bool,
    },
    /// Most happy vertices that allow a disapproving configuration
    Hmax {
        n: u64,
        d: u64,
        #[arg(long)]
        json: bool,
    },
    /// gamma_maj of G(n|d), or the global minimum over all degrees
    Gamma {
        n: u64,
        d: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Security gap, uncertainty radius and alpha levels
    Gap {
        n: u64,
        d: u64,
        /// Threshold to test 2-way security against, e.g. 5 or 3/2
        #[arg(long)]
        r0: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Degree segment D_{n,m} where hmin_global(n) + m is attained
    Segments {
        n: u64,
        #[arg(long, default_value_t = 0)]
        m: u64,
        #[arg(long)]
        json: bool,
    },
    /// Emit a witness configuration (DOT by default)
    Construct {
        n: usize,
        d: usize,
        /// Happy count; defaults to hmin (or hmax with --disapproving)
        #[arg(long)]
        h: Option<usize>,
        /// Build a disapproving witness instead of an approving one
        #[arg(long)]
        disapproving: bool,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Cross-check the formulas against exhaustive enumeration
    Verify {
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        /// Worker threads for the enumeration
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Region diagram data as CSV or SVG
    Regions(RegionsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Series {
    Segments,
    Global,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("grid").required(true).args(["order", "degree", "series"])))]
pub struct RegionsArgs {
    /// Fixed order n: every odd degree and happy count
    #[arg(long)]
    pub order: Option<u64>,
    /// Fixed degree d over a range of orders
    #[arg(long)]
    pub degree: Option<u64>,
    /// A per-order series up to --n-max
    #[arg(long, value_enum)]
    pub series: Option<Series>,
    #[arg(long)]
    pub n_min: Option<u64>,
    #[arg(long, default_value_t = 101)]
    pub n_max: u64,
    #[arg(long, conflicts_with = "svg")]
    pub csv: bool,
    #[arg(long)]
    pub svg: bool,
}

fn to_json_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn parse_ratio(text: &str) -> CliResult<Rational> {
    text.trim()
        .parse::<Rational>()
        .map_err(|_| CliError::Usage(format!("cannot read {text:?} as an integer or fraction")))
}

/// Runs one command; `progress` receives status lines meant for stderr.
pub fn run(cli: &Cli, progress: &mut dyn FnMut(&str)) -> CliResult<Outcome> {
    match &cli.command {
        Command::Classify { n, d, h, json } => classify(*n, *d, *h, *json),
        Command::Hmin { n, d, json } => {
            let v = classifier::hmin(*n, *d)?;
            Ok(Outcome::ok(scalar("hmin", *n, *d, v, *json)))
        }
        Command::Hmax { n, d, json } => {
            let v = classifier::hmax(*n, *d)?;
            Ok(Outcome::ok(scalar("hmax", *n, *d, v, *json)))
        }
        Command::Gamma { n, d, json } => gamma(*n, *d, *json),
        Command::Gap { n, d, r0, json } => gap(*n, *d, r0.as_deref(), *json),
        Command::Segments { n, m, json } => segments(*n, *m, *json),
        Command::Construct {
            n,
            d,
            h,
            disapproving,
            json,
            ..
        } => construct(*n, *d, *h, *disapproving, *json),
        Command::Verify { max_n, jobs, json } => verify(*max_n, *jobs, *json, progress),
        Command::Regions(args) => region_data(args),
    }
}

fn scalar(name: &str, n: u64, d: u64, value: u64, json: bool) -> String {
    if json {
        to_json_text(&serde_json::json!({ "n": n, "d": d, name: value }))
    } else {
        format!("{value}\n")
    }
}

fn classify(n: u64, d: u64, h: u64, json: bool) -> CliResult<Outcome> {
    let summary = classifier::summarize(n, d, Some(h))?;
    let shape = constructions::witness_shape(n as usize, d as usize)?;
    if json {
        #[derive(Serialize)]
        struct Report<'a> {
            #[serde(flatten)]
            summary: &'a classifier::ClassSummary,
            witness: &'a str,
        }
        return Ok(Outcome::ok(to_json_text(&Report {
            summary: &summary,
            witness: &shape,
        })));
    }
    let status = summary.status.expect("h supplied");
    let mut out = String::new();
    let _ = writeln!(out, "G({n}|{d}|{h}): {status}");
    let _ = writeln!(out, "hmin = {}, hmax = {}", summary.hmin, summary.hmax);
    let _ = writeln!(
        out,
        "regime = {}, q = {}, b = {}{}",
        if summary.low_degree {
            "low degree"
        } else {
            "high degree"
        },
        summary.q,
        summary.b,
        summary.t.map(|t| format!(", t = {t}")).unwrap_or_default()
    );
    let _ = writeln!(
        out,
        "global bound = {}, local bound = {}{}",
        summary.global_bound,
        summary.local_bound,
        if summary.exceptional {
            " (exceptional pair)"
        } else {
            ""
        }
    );
    let _ = writeln!(
        out,
        "security gap r = {}, r~ = {}, alpha1 = {}, alpha2 = {}",
        summary.gap.r, summary.gap.r_tilde, summary.gap.alpha1, summary.gap.alpha2
    );
    let _ = writeln!(
        out,
        "gamma_maj = {}, Henning-Holm bound = {}",
        summary.gamma.gamma_maj, summary.gamma.henning_holm
    );
    let _ = writeln!(out, "minimum approving witness: {shape}");
    Ok(Outcome::ok(out))
}

fn gamma(n: u64, d: Option<u64>, json: bool) -> CliResult<Outcome> {
    match d {
        Some(d) => {
            let cmp = classifier::compare_gamma_bounds(n, d)?;
            if json {
                return Ok(Outcome::ok(to_json_text(&serde_json::json!({
                    "n": n, "d": d, "comparison": cmp
                }))));
            }
            Ok(Outcome::ok(format!(
                "gamma_maj = {}\nHenning-Holm bound = {}\nglobal bound form = {}\nstrictly above Henning-Holm: {}\n",
                cmp.gamma_maj, cmp.henning_holm, cmp.global_form, cmp.exceeds_henning_holm
            )))
        }
        None => {
            let g = classifier::gamma_maj_global(n)?;
            let h = classifier::hmin_global(n)?;
            if json {
                return Ok(Outcome::ok(to_json_text(&serde_json::json!({
                    "n": n, "hmin_global": h, "gamma_maj_global": g
                }))));
            }
            Ok(Outcome::ok(format!(
                "hmin_global = {h}\ngamma_maj_global = {g}\n"
            )))
        }
    }
}

fn gap(n: u64, d: u64, r0: Option<&str>, json: bool) -> CliResult<Outcome> {
    let report = classifier::security_gap(n, d)?;
    let secure = match r0 {
        Some(text) => {
            let r0 = parse_ratio(text)?;
            Some((r0, classifier::is_two_way_secure(n, d, r0)?))
        }
        None => None,
    };
    if json {
        let mut value = serde_json::json!({ "n": n, "d": d, "gap": report });
        if let Some((r0, ok)) = secure {
            value["r0"] = serde_json::Value::String(r0.to_string());
            value["two_way_secure"] = serde_json::Value::Bool(ok);
        }
        return Ok(Outcome::ok(to_json_text(&value)));
    }
    let mut out = format!(
        "r = {}\nr~ = {}\ndelta = {}\nalpha1 = {}\nalpha2 = {}\n",
        report.r, report.r_tilde, report.delta, report.alpha1, report.alpha2
    );
    if let Some((r0, ok)) = secure {
        let _ = writeln!(out, "2-way {r0}-secure: {ok}");
    }
    Ok(Outcome::ok(out))
}

fn segments(n: u64, m: u64, json: bool) -> CliResult<Outcome> {
    let seg = classifier::degree_segment(n, m)?;
    if json {
        return Ok(Outcome::ok(to_json_text(&seg)));
    }
    let degrees = classifier::low_support_degrees(n, m)?;
    let listed: Vec<String> = degrees.iter().map(u64::to_string).collect();
    Ok(Outcome::ok(format!(
        "hmin_global = {}\nD = [{}, {}], length {}\ndegrees: {}\n",
        classifier::hmin_global(n)?,
        seg.left,
        seg.right,
        seg.length,
        listed.join(" ")
    )))
}

/// Checks a witness independently of how it was built.
fn revalidate(c: &Configuration, n: usize, d: usize, h: usize, approving: bool) -> CliResult<()> {
    let g = c.graph();
    if g.order() != n || g.regular_degree() != Some(d) {
        return Err(CliError::Internal(format!(
            "witness is not a {d}-regular graph on {n} vertices"
        )));
    }
    if c.happy_count() != h {
        return Err(CliError::Internal(format!(
            "witness has {} happy vertices, expected {h}",
            c.happy_count()
        )));
    }
    if voting::is_approving(c) != approving {
        return Err(CliError::Internal(format!(
            "witness outcome differs from the requested {}",
            if approving { "approval" } else { "disapproval" }
        )));
    }
    Ok(())
}

fn construct(
    n: usize,
    d: usize,
    h: Option<usize>,
    disapproving: bool,
    json: bool,
) -> CliResult<Outcome> {
    let (config, h) = match (h, disapproving) {
        (None, false) => (
            constructions::build_min_approving(n, d)?,
            classifier::hmin(n as u64, d as u64)? as usize,
        ),
        (None, true) => (
            constructions::build_max_disapproving(n, d)?,
            classifier::hmax(n as u64, d as u64)? as usize,
        ),
        (Some(h), false) => (constructions::build_approving_with(n, d, h)?, h),
        (Some(h), true) => (constructions::build_disapproving_with(n, d, h)?, h),
    };
    revalidate(&config, n, d, h, !disapproving)?;
    if json {
        #[derive(Serialize)]
        struct Witness {
            #[serde(flatten)]
            graph: majmaj::graph::GraphJson,
            vote: voting::VoteResult,
        }
        return Ok(Outcome::ok(to_json_text(&Witness {
            graph: to_json(&config),
            vote: voting::proponents(&config),
        })));
    }
    Ok(Outcome::ok(to_dot(&config)))
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRow {
    pub n: usize,
    pub d: usize,
    pub graphs: u64,
    pub hmin_formula: u64,
    pub hmin_oracle: usize,
    pub hmax_formula: u64,
    pub hmax_oracle: usize,
    pub agree: bool,
}

fn verify(
    max_n: usize,
    jobs: Option<usize>,
    json: bool,
    progress: &mut dyn FnMut(&str),
) -> CliResult<Outcome> {
    if jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let oracle = Oracle::new()
        .with_cap(max_n)?
        .with_budget(EnumerationBudget::exhaustive())
        .with_jobs(jobs);
    let mut rows = Vec::new();
    for n in (1..=max_n).step_by(2) {
        for d in (1..=n).step_by(2) {
            progress(&format!("enumerating G({n}|{d})"));
            let survey = oracle.survey(n, d)?;
            let mut agree = true;
            for h in 0..=n {
                if survey.status(h) != classifier::classify(n as u64, d as u64, h as u64)? {
                    agree = false;
                }
            }
            rows.push(VerifyRow {
                n,
                d,
                graphs: survey.graphs,
                hmin_formula: classifier::hmin(n as u64, d as u64)?,
                hmin_oracle: survey.hmin(),
                hmax_formula: classifier::hmax(n as u64, d as u64)?,
                hmax_oracle: survey.hmax(),
                agree,
            });
        }
    }
    let all = rows.iter().all(|r| r.agree);
    let stdout = if json {
        to_json_text(&serde_json::json!({ "max_n": max_n, "agree": all, "rows": rows }))
    } else {
        let mut out = format!(
            "{:>3} {:>3} {:>9} {:>6} {:>6} {:>6} {:>6}  verdict\n",
            "n", "d", "graphs", "hmin", "oracle", "hmax", "oracle"
        );
        for r in &rows {
            let _ = writeln!(
                out,
                "{:>3} {:>3} {:>9} {:>6} {:>6} {:>6} {:>6}  {}",
                r.n,
                r.d,
                r.graphs,
                r.hmin_formula,
                r.hmin_oracle,
                r.hmax_formula,
                r.hmax_oracle,
                if r.agree { "ok" } else { "MISMATCH" }
            );
        }
        let _ = writeln!(
            out,
            "{}",
            if all {
                "all classes agree"
            } else {
                "mismatches found"
            }
        );
        out
    };
    Ok(Outcome {
        stdout,
        code: if all { EXIT_OK } else { EXIT_MISMATCH },
    })
}

fn region_data(args: &RegionsArgs) -> CliResult<Outcome> {
    let cells: Vec<RegionCell> = if let Some(n) = args.order {
        regions::order_grid(n)?
    } else if let Some(d) = args.degree {
        let n_min = args.n_min.unwrap_or(d);
        regions::degree_grid(d, n_min, args.n_max)?
    } else {
        if args.svg {
            return Err(CliError::Usage("series output is CSV only".into()));
        }
        let csv = match args.series.expect("clap enforces one grid") {
            Series::Segments => regions::to_csv(&regions::segment_series(args.n_max)?)?,
            Series::Global => regions::to_csv(&regions::global_series(args.n_max)?)?,
        };
        return Ok(Outcome::ok(csv));
    };
    if args.svg {
        Ok(Outcome::ok(regions::render_svg(&cells)))
    } else {
        Ok(Outcome::ok(regions::to_csv(&cells)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CliResult<Outcome> {
        let cli = Cli::try_parse_from(std::iter::once("majmaj").chain(args.iter().copied()))
            .expect("arguments parse");
        run(&cli, &mut |_| {})
    }

    #[test]
    fn ratios() {
        assert_eq!(parse_ratio("5").unwrap(), Rational::from_integer(5));
        assert_eq!(parse_ratio(" 9/2 ").unwrap(), Rational::new(9, 2));
        assert!(matches!(parse_ratio("2.5"), Err(CliError::Usage(_))));
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), EXIT_USAGE);
        assert_eq!(CliError::Internal("x".into()).exit_code(), EXIT_MISMATCH);
        let e = run_args(&["hmin", "9", "10"]).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_INFEASIBLE);
        let e = run_args(&["verify", "--jobs", "0"]).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn in_process_outputs() {
        assert_eq!(run_args(&["hmin", "9", "5"]).unwrap().stdout, "4\n");
        let out = run_args(&["verify", "--max-n", "5"]).unwrap();
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.ends_with("all classes agree\n"));
        let mut lines = Vec::new();
        let cli = Cli::try_parse_from(["majmaj", "verify", "--max-n", "3"]).unwrap();
        run(&cli, &mut |l| lines.push(l.to_string())).unwrap();
        assert_eq!(
            lines,
            [
                "enumerating G(1|1)",
                "enumerating G(3|1)",
                "enumerating G(3|3)"
            ]
        );
    }

    #[test]
    fn revalidation_rejects_wrong_outcome() {
        let c = constructions::build_min_approving(9, 3).unwrap();
        assert!(revalidate(&c, 9, 3, 4, true).is_ok());
        assert!(matches!(
            revalidate(&c, 9, 3, 4, false),
            Err(CliError::Internal(_))
        ));
        assert!(matches!(
            revalidate(&c, 9, 5, 4, true),
            Err(CliError::Internal(_))
        ));
    }
}
