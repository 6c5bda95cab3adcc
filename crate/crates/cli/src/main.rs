use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use charp_cli::{recheck, report_from_json, run_scenario, Params, ScenarioReport, DEFAULT_SEED, SCENARIOS};
use charp_core::Exec;

#[derive(Parser, Debug)]
#[command(name = "charp", version, about = "Scenarios for inseparable covers and function-field heights")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug)]
struct Opts {
    /// Characteristic.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Constant field F_{p^m}.
    #[arg(long, global = true)]
    m: Option<u32>,
    #[arg(long, global = true)]
    n: Option<u32>,
    #[arg(long, global = true)]
    d: Option<u32>,
    /// Dimension N of the base P^N (genericity).
    #[arg(long, global = true)]
    dim: Option<u32>,
    /// Number of blown-up points (adjunction).
    #[arg(long, global = true)]
    k: Option<u32>,
    /// Jet order (normal form).
    #[arg(long, global = true)]
    r: Option<u32>,
    /// Largest section degree M (vojta-demo).
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Polynomial or point, in x1, x2, … and t.
    #[arg(long, global = true)]
    input: Option<String>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Number of scenarios run at once.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalized coordinates and height of a point of P^N(k(t)).
    Height,
    /// Families of bounded height (examples 1-3).
    NorthcottDemo {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
        example: u8,
    },
    /// p-cover of P^N: gluing, singular points, degeneracy.
    Cover,
    /// Normal form a0 + Σ x_i^2 of a function at a critical point.
    Normalform,
    /// Blow-up resolution of z^p = Σ x_i^2.
    Desing,
    /// Canonical class of the resolved cover.
    Adjunction,
    /// j-invariants and projective equivalence of configurations.
    Isotriviality,
    /// Family violating the Vojta-type height inequality.
    VojtaDemo,
    /// Any scenario by name.
    Run { scenario: String },
    /// Every scenario with default parameters.
    All,
    /// Names of the scenarios.
    List,
    /// Re-run the scenario recorded in a JSON report and compare.
    Verify { report: PathBuf },
}

fn params(o: &Opts) -> Params {
    Params { p: o.p, m: o.m, n: o.n, d: o.d, dim: o.dim, k: o.k, r: o.r, max_degree: o.max_degree, input: o.input.clone() }
}

fn run_many(names: &[&str], params: &Params, seed: u64, jobs: usize) -> Vec<Result<ScenarioReport, String>> {
    let exec = Exec::best();
    let one = |name: &str| run_scenario(name, params, seed, exec).map_err(|e| format!("{name}: {e}"));
    if jobs <= 1 {
        return names.iter().map(|n| one(n)).collect();
    }
    let mut out = Vec::with_capacity(names.len());
    for chunk in names.chunks(jobs) {
        let results: Vec<_> = std::thread::scope(|s| {
            let handles: Vec<_> = chunk.iter().map(|n| s.spawn(move || one(n))).collect();
            handles.into_iter().map(|h| h.join().unwrap_or_else(|_| Err("scenario panicked".into()))).collect()
        });
        out.extend(results);
    }
    out
}

fn render(reports: &[ScenarioReport], format: Format) -> String {
    match format {
        Format::Text => reports.iter().map(ScenarioReport::to_text).collect::<Vec<_>>().join("\n"),
        Format::Json if reports.len() == 1 => reports[0].to_json(),
        Format::Json => serde_json::to_string_pretty(reports).expect("reports serialize"),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let o = &cli.opts;
    let params = params(o);
    let names: Vec<&str> = match &cli.command {
        Command::Height => vec!["height"],
        Command::NorthcottDemo { example } => vec![["northcott-example1", "northcott-example2", "northcott-example3"][*example as usize - 1]],
        Command::Cover => vec!["cover"],
        Command::Normalform => vec!["normalform"],
        Command::Desing => vec!["desing"],
        Command::Adjunction => vec!["adjunction"],
        Command::Isotriviality => vec!["isotriviality"],
        Command::VojtaDemo => vec!["vojta-demo"],
        Command::Run { scenario } => vec![scenario.as_str()],
        Command::All => SCENARIOS.to_vec(),
        Command::List => {
            println!("{}", SCENARIOS.join("\n"));
            return ExitCode::SUCCESS;
        }
        Command::Verify { report } => {
            let outcome = std::fs::read_to_string(report)
                .map_err(|e| e.to_string())
                .and_then(|s| report_from_json(&s).map_err(|e| e.to_string()))
                .and_then(|r| recheck(&r, Exec::best()).map(|same| (r, same)).map_err(|e| e.to_string()));
            return match outcome {
                Ok((r, true)) => {
                    println!("{}: report reproduced", r.scenario);
                    if r.passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::FAILURE
                    }
                }
                Ok((r, false)) => {
                    eprintln!("{}: report does not match a fresh run", r.scenario);
                    ExitCode::FAILURE
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            };
        }
    };
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for r in run_many(&names, &params, o.seed, o.jobs) {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => errors.push(e),
        }
    }
    if let Err(e) = emit(&render(&reports, o.format), &o.out) {
        errors.push(e);
    }
    for e in &errors {
        eprintln!("error: {e}");
    }
    if !errors.is_empty() {
        eprintln!("known scenarios: {}", SCENARIOS.join(", "));
        return ExitCode::from(2);
    }
    if reports.iter().all(ScenarioReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
