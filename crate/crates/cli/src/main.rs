use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::builder::{PossibleValuesParser, TypedValueParser as _};
use clap::{Parser, Subcommand, ValueEnum};

use gme_core::bipartition::canonical_bipartitions;
use gme_core::exec::{self, Execution};
use gme_core::measures::{evaluate, EvalOptions, MeasureReport, MeasureSelection, ZERO_TOL};
use gme_core::report::{paper_report, ReportDocument, RowStatus};
use gme_core::verify::{run_check, CheckName, TrialConfig, TrialOutcome};
use gme_core::{parse_state, GmeError};

#[derive(Parser)]
#[command(
    name = "gme",
    version,
    about = "Genuine multipartite entanglement measures for pure states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the measures for one or more state files.
    Eval {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Measure::All)]
        measure: Measure,
        /// Concurrences at or below this count as zero.
        #[arg(long, default_value_t = ZERO_TOL)]
        tol: f64,
        /// Rescale amplitudes to unit norm instead of rejecting unnormalized input.
        #[arg(long)]
        normalize: bool,
        #[arg(long)]
        json: bool,
    },
    /// List the canonical bipartitions of N parties.
    Bipartitions { n: usize },
    /// Evaluate the built-in benchmark states against their published values.
    Paper {
        #[arg(long)]
        json: bool,
    },
    /// Run a seeded randomized property check.
    Random {
        /// Comma-separated local dimensions, e.g. 2,2,2,2.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, value_parser = check_parser())]
        check: CheckName,
        /// Override the check's pass threshold.
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Measure {
    Volume,
    Cgme,
    Triangle,
    All,
}

impl From<Measure> for MeasureSelection {
    fn from(m: Measure) -> Self {
        match m {
            Measure::Volume => MeasureSelection::Volume,
            Measure::Cgme => MeasureSelection::CGme,
            Measure::Triangle => MeasureSelection::Triangle,
            Measure::All => MeasureSelection::All,
        }
    }
}

fn check_parser() -> impl clap::builder::TypedValueParser<Value = CheckName> {
    PossibleValuesParser::new(CheckName::ALL.map(CheckName::as_str))
        .map(|s| s.parse::<CheckName>().expect("restricted to known names"))
}

/// Rendered output plus whether every requested item succeeded.
struct Output {
    text: String,
    success: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<Output> {
    match command {
        Command::Eval {
            files,
            measure,
            tol,
            normalize,
            json,
        } => {
            if !(tol >= 0.0) {
                bail!("--tol must be a nonnegative number");
            }
            let opts = EvalOptions {
                tol,
                measure: measure.into(),
                execution: Execution::default(),
            };
            cmd_eval(&files, &opts, normalize, json)
        }
        Command::Bipartitions { n } => cmd_bipartitions(n),
        Command::Paper { json } => cmd_paper(json),
        Command::Random {
            dims,
            seed,
            trials,
            check,
            tolerance,
            json,
        } => {
            let config = TrialConfig {
                dims,
                trials,
                seed,
                tolerance,
            };
            cmd_random(check, &config, json)
        }
    }
}

fn eval_file(path: &PathBuf, opts: &EvalOptions, normalize: bool) -> Result<MeasureReport> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let state =
        parse_state(&text, normalize).with_context(|| format!("parsing {}", path.display()))?;
    evaluate(path.display().to_string(), &state, opts).map_err(|e| {
        let hint = match e {
            GmeError::Unsupported { n: 2, .. } => {
                "; two-party states have no pyramid, use --measure cgme"
            }
            GmeError::Unsupported {
                measure: "triangle measure",
                ..
            } => "; the triangle measure needs exactly three parties",
            _ => "",
        };
        anyhow::anyhow!("{}: {e}{hint}", path.display())
    })
}

fn cmd_eval(files: &[PathBuf], opts: &EvalOptions, normalize: bool, json: bool) -> Result<Output> {
    let results = exec::map(files, Execution::default(), |path| {
        eval_file(path, opts, normalize)
    });
    let mut doc = ReportDocument::new(opts.tol);
    let mut success = true;
    for result in results {
        match result {
            Ok(report) => doc.states.push(report),
            Err(e) => {
                success = false;
                eprintln!("error: {e:#}");
            }
        }
    }
    let text = if json {
        doc.to_json() + "\n"
    } else {
        doc.states
            .iter()
            .map(render_state)
            .collect::<Vec<_>>()
            .join("\n")
    };
    Ok(Output { text, success })
}

fn fmt4(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"))
}

fn render_state(r: &MeasureReport) -> String {
    let mut out = String::new();
    let dims: Vec<String> = r.dims.iter().map(usize::to_string).collect();
    let _ = writeln!(out, "{}  (dims {})", r.id, dims.join("x"));
    if let Some(v) = r.volume {
        let _ = writeln!(out, "  V               {v:.4}");
    }
    if r.c_gme.is_some() {
        let _ = writeln!(out, "  C_GME           {}", fmt4(r.c_gme));
    }
    if r.triangle.is_some() {
        let _ = writeln!(out, "  F_123           {}", fmt4(r.triangle));
    }
    let _ = writeln!(out, "  classification  {}", r.classification);
    let _ = writeln!(out, "  concurrences");
    for (cut, c) in &r.concurrences {
        let _ = writeln!(out, "    {cut:<12}  {c:.4}");
    }
    if r.zero_cuts.is_empty() {
        let _ = writeln!(out, "  zero cuts       none");
    } else {
        let cuts: Vec<String> = r.zero_cuts.iter().map(|c| format!("{{{c}}}")).collect();
        let _ = writeln!(out, "  zero cuts       {}", cuts.join(" "));
    }
    out
}

fn cmd_bipartitions(n: usize) -> Result<Output> {
    let mut text = String::new();
    for group in canonical_bipartitions(n)? {
        let _ = writeln!(text, "# k={}", group[0].len());
        for cut in group {
            let _ = writeln!(text, "{cut}");
        }
    }
    Ok(Output {
        text,
        success: true,
    })
}

fn cmd_paper(json: bool) -> Result<Output> {
    let doc = paper_report(&EvalOptions::default())?;
    if json {
        return Ok(Output {
            text: doc.to_json() + "\n",
            success: true,
        });
    }
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{:<10} {:<6} {:>9} {:>9} {:>9}  status",
        "state", "value", "published", "computed", "deviation"
    );
    let rows = doc.paper_rows.as_deref().unwrap_or_default();
    for row in rows {
        let status = match row.status {
            RowStatus::Match => "ok",
            RowStatus::Discrepancy => "DISCREPANCY",
        };
        let _ = writeln!(
            text,
            "{:<10} {:<6} {:>9.4} {:>9.4} {:>9.4}  {status}",
            row.state, row.quantity, row.expected, row.computed, row.deviation
        );
    }
    let notes: Vec<_> = rows
        .iter()
        .filter_map(|r| r.note.as_ref().map(|n| (r, n)))
        .collect();
    if !notes.is_empty() {
        text.push('\n');
        for (row, note) in notes {
            let _ = writeln!(text, "note [{} {}]: {note}", row.state, row.quantity);
        }
    }
    Ok(Output {
        text,
        success: true,
    })
}

fn render_outcome(o: &TrialOutcome) -> String {
    let dims: Vec<String> = o.dims.iter().map(usize::to_string).collect();
    format!(
        "{} dims={} seed={} trials={} max_deviation={:.3e} tolerance={:.0e} worst_trial={} {}\n",
        o.check,
        dims.join(","),
        o.seed,
        o.trials,
        o.max_deviation,
        o.tolerance,
        o.worst_trial,
        if o.passed { "PASS" } else { "FAIL" }
    )
}

fn cmd_random(check: CheckName, config: &TrialConfig, json: bool) -> Result<Output> {
    let outcome = run_check(check, config)?;
    let success = outcome.passed;
    let text = if json {
        let mut doc = ReportDocument::new(ZERO_TOL);
        doc.checks = Some(vec![outcome]);
        doc.to_json() + "\n"
    } else {
        render_outcome(&outcome)
    };
    Ok(Output { text, success })
}
