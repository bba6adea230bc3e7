use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qgc_core::coupling::derive_table;
use qgc_core::freealg::{contracted_boson_system, BosonForm};
use qgc_core::qgroup::{c_metric_contract, c_metric_q, r_h_or_trivial, r_standard, r_tilde_contracted};
use qgc_core::{run_suite, Parameters, QGroupError, Suite, SuiteError, VerificationReport};

#[derive(Parser)]
#[command(name = "qgc", version, about = "Exact R-matrix contraction and deformed boson verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum EmitFormat {
    Json,
    Latex,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print a matrix or the derived coupling table.
    Emit {
        /// r_q, r_h, c_q, c_h, rtilde_h or cgc-h
        name: Option<String>,
        #[arg(long = "table", conflicts_with = "name")]
        table: Option<String>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, value_enum, default_value_t = EmitFormat::Json)]
        format: EmitFormat,
    },
    /// Run a verification suite.
    Verify {
        suite: Option<String>,
        #[arg(long = "suite", conflicts_with = "suite")]
        suite_flag: Option<String>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 6)]
        trunc: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add h to one entry (1-based `row,col`) of the suite's R-matrix.
        #[arg(long, value_parser = parse_entry)]
        perturb: Option<(usize, usize)>,
    },
}

fn parse_entry(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected ROW,COL")?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|e| e.to_string());
    Ok((p(a)?, p(b)?))
}

/// Stdout write that treats a closed pipe as success.
fn say(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("qgc: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Emit {
            name,
            table,
            n,
            format,
        } => match name.or(table) {
            None => usage("emit needs a name: r_q, r_h, c_q, c_h, rtilde_h or cgc-h"),
            Some(name) => match emit(&name, n, format) {
                Ok(text) => {
                    say(&text);
                    ExitCode::SUCCESS
                }
                Err(msg) => usage(msg),
            },
        },
        Command::Verify {
            suite,
            suite_flag,
            n,
            m,
            trunc,
            format,
            out,
            perturb,
        } => {
            let Some(name) = suite.or(suite_flag) else {
                return usage(format!("verify needs a suite: {}", Suite::NAMES.join(", ")));
            };
            let Some(suite) = Suite::parse(&name) else {
                return usage(format!("unknown suite {name}; expected one of {}", Suite::NAMES.join(", ")));
            };
            let mut params = Parameters::new(n, m, trunc);
            params.perturb = perturb;
            match run_suite(suite, &params) {
                Ok(report) => finish(&report, format, out.as_deref()),
                Err(SuiteError::Usage(msg)) => usage(msg),
                Err(SuiteError::Pole(msg)) => usage(msg),
            }
        }
    }
}

fn finish(report: &VerificationReport, format: ReportFormat, out: Option<&std::path::Path>) -> ExitCode {
    let json = serde_json::to_string_pretty(report).expect("report serializes");
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, format!("{json}\n")) {
            return usage(format!("cannot write {}: {e}", path.display()));
        }
    }
    match format {
        ReportFormat::Json => say(&json),
        ReportFormat::Text => {
            for r in &report.results {
                match &r.witness {
                    None => say(&format!("PASS {}", r.identity)),
                    Some(w) => say(&format!("FAIL {}: {w}", r.identity)),
                }
            }
            let failed = report.results.iter().filter(|r| !r.pass).count();
            say(&format!(
                "{}: {} of {} passed",
                report.suite,
                report.results.len() - failed,
                report.results.len()
            ));
        }
    }
    if report.overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn parity(n: usize, e: QGroupError) -> String {
    match e {
        QGroupError::OddMetric(_) => "no contraction limit: n must be even".to_string(),
        QGroupError::Pole { .. } if n % 2 == 1 => format!("no contraction limit: n must be even ({e})"),
        other => other.to_string(),
    }
}

fn emit(name: &str, n: usize, format: EmitFormat) -> Result<String, String> {
    if n == 0 || n > 8 {
        return Err(format!("n must be between 1 and 8 (got {n})"));
    }
    let matrix = |m: qgc_core::RingMatrix| -> String {
        match format {
            EmitFormat::Json => serde_json::to_string(&m.to_json()).expect("matrix serializes"),
            EmitFormat::Latex => m.to_latex(),
        }
    };
    match name {
        "r_q" => Ok(matrix(r_standard(n))),
        "r_h" => Ok(matrix(r_h_or_trivial(n))),
        "c_q" => Ok(matrix(c_metric_q(n, false))),
        "c_h" => c_metric_contract(n).map(matrix).map_err(|e| parity(n, e)),
        "rtilde_h" => {
            if n < 2 {
                return Err("rtilde_h needs n >= 2".into());
            }
            if n % 2 == 1 {
                return Err("no contraction limit: n must be even".into());
            }
            r_tilde_contracted(n)
                .map(|m| matrix(m.to_scalar().with_factors(n, n)))
                .map_err(|e| parity(n, e))
        }
        "cgc-h" => {
            let rs = contracted_boson_system(2, 1, BosonForm::Tilde).map_err(|e| e.to_string())?;
            let table = derive_table(&rs).map_err(|e| e.to_string())?;
            Ok(match format {
                EmitFormat::Json => serde_json::to_string_pretty(&table.to_json()).expect("table serializes"),
                EmitFormat::Latex => {
                    let mut s = String::from("\\begin{array}{cccc|c}\nm_1 & m_2 & j & m & \\text{coefficient} \\\\\n\\hline\n");
                    for e in table.to_json().entries {
                        s.push_str(&format!(
                            "{} & {} & {} & {} & {} \\\\\n",
                            e.m1, e.m2, e.j, e.m, e.value
                        ));
                    }
                    s.push_str("\\end{array}");
                    s
                }
            })
        }
        other => Err(format!(
            "unknown name {other}; expected r_q, r_h, c_q, c_h, rtilde_h or cgc-h"
        )),
    }
}
