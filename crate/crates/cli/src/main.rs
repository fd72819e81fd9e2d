use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use wres_cli::fixtures::Fixtures;
use wres_cli::report::{interior_op, to_json, BoundaryReport, Format, InteriorReport};
use wres_cli::{oracle, verify};
use wres_core::boundary::{evaluate_pairing, CaseLabel, Pairing};
use wres_core::interior::wres_integrand;
use wres_core::symbols::BoundaryModel;

#[derive(Parser)]
#[command(name = "wres", version, about = "Exact noncommutative-residue computations for Dirac-Witten operators")]
struct Cli {
    /// Worker threads for case evaluation.
    #[arg(long, env = "WRES_THREADS", global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Boundary term of a pairing, case by case.
    Boundary {
        #[arg(long, value_parser = parse_dimension)]
        n: usize,
        #[arg(long)]
        pairing: Pairing,
        #[arg(long)]
        case: Option<CaseLabel>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interior residue integrand.
    Interior {
        #[arg(long, value_parser = parse_dimension)]
        n: usize,
        #[arg(long, value_parser = ["dstar-d", "d2", "dstar-d-squared", "d4"])]
        which: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compares every fixture value exactly; exits nonzero on any mismatch.
    Verify {
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Floating-point quadrature and Monte Carlo cross-checks.
    Oracle {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 200_000)]
        samples: usize,
    },
}

fn parse_dimension(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n @ (4 | 6)) => Ok(n),
        Ok(n) => Err(format!("dimension {n} is unsupported; use 4 or 6")),
        Err(e) => Err(e.to_string()),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    let start = Instant::now();
    match cli.command {
        Command::Boundary { n, pairing, case, format, out } => {
            let model = BoundaryModel::new(n)?;
            let results = evaluate_pairing(&model, pairing, case)?;
            let report = BoundaryReport::new(n, pairing, &results)?;
            let text = match format {
                Format::Json => to_json(&report)?,
                Format::Md => report.markdown(),
            };
            emit(&text, out.as_ref())?;
        }
        Command::Interior { n, which, format, out } => {
            let integrand = wres_integrand(n, interior_op(n, &which)?)?;
            let report = InteriorReport::new(&which, &integrand)?;
            let text = match format {
                Format::Json => to_json(&report)?,
                Format::Md => report.markdown(),
            };
            emit(&text, out.as_ref())?;
        }
        Command::Verify { fixtures } => {
            let fx = match fixtures {
                Some(path) => Fixtures::load(&path)?,
                None => Fixtures::embedded(),
            };
            let outcomes = verify::run(&fx)?;
            let failed = outcomes.iter().filter(|o| !o.passed()).count();
            for o in &outcomes {
                println!("{o}");
            }
            println!("{} checks, {} failed", outcomes.len(), failed);
            eprintln!("verified in {:.2?}", start.elapsed());
            return Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Command::Oracle { seed, trials, samples } => {
            let line = oracle::check_line_integrals(seed, trials);
            println!("line integrals: {} trials, max relative deviation {:.3e}", line.trials, line.max_deviation);
            println!("  worst: {}", line.worst);
            let moments = oracle::check_moments(seed, samples);
            let mut ok = line.max_deviation < 1e-9;
            for m in &moments {
                println!(
                    "moment d={} {:?}: exact {:.6} estimate {:.6} ± {:.2e} {}",
                    m.d,
                    m.exponents,
                    m.exact,
                    m.estimate,
                    m.std_err,
                    if m.passed() { "ok" } else { "FAIL" }
                );
                ok &= m.passed();
            }
            return Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
    }
    eprintln!("evaluated in {:.2?}", start.elapsed());
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
