//! Command-line front end: certification, polygon inspection, oracle
//! runs, experiments and smooth-number queries with stable
//! machine-readable output.
//!
//! Exit codes: 0 = computed/certified, 2 = inconclusive certificate or
//! unconfirmed oracle verdict, 1 = usage or runtime error. Data goes to
//! stdout, diagnostics to stderr.

use clap::{Args, Parser, Subcommand, ValueEnum};
use npcert::certify::{certify, Certificate, Conclusion, Family, PolyInstance};
use npcert::experiment::{
    report_to_csv, run_smooth_experiment, run_theorem_experiment, ExperimentConfig, FamilyChoice,
};
use npcert::modpoly::oracle_confirm;
use npcert::polygon::{instance_polygon, PolygonReport};
use npcert::smooth::psi;
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "npcert",
    version,
    about = "Newton polygon certification of symmetric Galois groups, with a Frobenius cycle-type oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify the Galois group of one instance.
    Certify(CertifyArgs),
    /// Print the Newton polygon of an instance at a prime.
    Np(NpArgs),
    /// Confirm an instance through the cycle-type oracle.
    Oracle(OracleArgs),
    /// Monte-Carlo experiments.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
    /// Count k-smooth numbers up to x.
    Psi(PsiArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Trimmed,
    Laguerre,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Trimmed => Family::Trimmed,
            FamilyArg::Laguerre => Family::Laguerre,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyChoiceArg {
    Trimmed,
    Laguerre,
    Both,
}

impl From<FamilyChoiceArg> for FamilyChoice {
    fn from(f: FamilyChoiceArg) -> FamilyChoice {
        match f {
            FamilyChoiceArg::Trimmed => FamilyChoice::Trimmed,
            FamilyChoiceArg::Laguerre => FamilyChoice::Laguerre,
            FamilyChoiceArg::Both => FamilyChoice::Both,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Human,
}

/// Instance addressing: either (--n, --m) or (--m, --k) with n = m − k.
#[derive(Args)]
struct InstanceArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    m: u64,
    #[arg(long)]
    k: Option<u64>,
}

impl InstanceArgs {
    fn resolve(&self) -> Result<PolyInstance, String> {
        let n = match (self.n, self.k) {
            (Some(n), None) => n,
            (None, Some(k)) => self
                .m
                .checked_sub(k)
                .ok_or_else(|| format!("--k {} exceeds --m {}", k, self.m))?,
            (Some(n), Some(k)) => {
                if self.m.checked_sub(k) != Some(n) {
                    return Err(format!(
                        "--n {n} and --k {k} disagree for --m {} (need n = m - k)",
                        self.m
                    ));
                }
                n
            }
            (None, None) => return Err("provide --n or --k alongside --m".into()),
        };
        PolyInstance::new(self.family.into(), n, self.m).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Args)]
struct NpArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// The prime of the valuation.
    #[arg(long)]
    p: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    /// Maximum number of primes to sample.
    #[arg(long)]
    budget: u64,
    /// RNG seed; required so every published verdict is reproducible.
    #[arg(long)]
    seed: u64,
}

#[derive(Subcommand)]
enum ExperimentCommand {
    /// Certification success rates over uniformly drawn m.
    Theorem(TheoremArgs),
    /// Probability that t consecutive shifted values all carry a large
    /// unit prime.
    Smooth(SmoothArgs),
}

#[derive(Args)]
struct TheoremArgs {
    /// Comma-separated x values.
    #[arg(long, value_delimiter = ',', required = true)]
    x: Vec<u64>,
    #[arg(long, default_value_t = 8)]
    kmin: u64,
    #[arg(long)]
    kmax: u64,
    #[arg(long)]
    samples: u64,
    #[arg(long, value_enum, default_value = "both")]
    family: FamilyChoiceArg,
    #[arg(long)]
    seed: u64,
    /// Share of certified instances to cross-check with the oracle.
    #[arg(long, default_value_t = 0.0)]
    oracle_fraction: f64,
    #[arg(long, default_value_t = 100)]
    oracle_budget: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Emit CSV cells instead of the JSON report.
    #[arg(long)]
    csv: bool,
    /// Worker threads (0 = available parallelism).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct SmoothArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    x: Vec<u64>,
    #[arg(long)]
    k: u64,
    #[arg(long, default_value_t = 7)]
    t: u64,
    #[arg(long)]
    samples: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct PsiArgs {
    #[arg(long)]
    x: u64,
    #[arg(long)]
    k: u64,
}

enum Outcome {
    Done,
    Inconclusive,
}

fn human_certificate(cert: &Certificate) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "family:     {}", cert.family);
    let _ = writeln!(s, "n, m, k:    {}, {}, {}", cert.n, cert.m, cert.k);
    let conclusion = match cert.conclusion {
        Conclusion::SymmetricFull => format!("Galois group is S_{}", cert.k),
        Conclusion::AtLeastAlternating => format!("Galois group contains A_{}", cert.k),
        Conclusion::IrreducibleOnly => "irreducible; group undetermined".into(),
        Conclusion::Inconclusive => "inconclusive".into(),
    };
    let _ = writeln!(s, "conclusion: {conclusion}");
    if let Some(w) = &cert.witness_a {
        let _ = writeln!(s, "witness A:  p = {}", w.p);
    }
    if let Some(w) = &cert.witness_b {
        let _ = writeln!(s, "witness B:  p = {} (shift {})", w.p, w.shift);
    }
    if let Some(w) = &cert.witness_c {
        let _ = match w {
            npcert::certify::WitnessC::Delta { q, p } => {
                writeln!(s, "witness C:  delta q = {q}, p = {p}")
            }
            npcert::certify::WitnessC::Gamma { p, j1, j2 } => {
                writeln!(s, "witness C:  gamma p = {p}, j1 = {j1}, j2 = {j2}")
            }
        };
    }
    if let Some(pairs) = &cert.small_k {
        for (i, q) in pairs {
            let _ = writeln!(s, "witness q_{i}: {q}");
        }
    }
    let _ = writeln!(s, "deduction:");
    for (i, step) in cert.deduction.iter().enumerate() {
        let _ = writeln!(s, "  {}. {}", i + 1, step);
    }
    s
}

fn run(cli: Cli) -> Result<Outcome, String> {
    match cli.command {
        Command::Certify(args) => {
            let instance = args.instance.resolve()?;
            let cert = certify(&instance);
            match args.format {
                FormatArg::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&cert).map_err(|e| e.to_string())?
                ),
                FormatArg::Human => print!("{}", human_certificate(&cert)),
            }
            if cert.conclusion == Conclusion::Inconclusive {
                Ok(Outcome::Inconclusive)
            } else {
                Ok(Outcome::Done)
            }
        }
        Command::Np(args) => {
            let instance = args.instance.resolve()?;
            let np = instance_polygon(&instance, args.p).map_err(|e| e.to_string())?;
            let report = PolygonReport::new(&np, args.p);
            match args.format {
                FormatArg::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
                ),
                FormatArg::Human => {
                    println!("degree {} at p = {}", report.degree, report.prime);
                    println!(
                        "vertices: {}",
                        report
                            .vertices
                            .iter()
                            .map(|v| format!("({}, {})", v[0], v[1]))
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                    println!("slopes:   {}", report.slopes.join(" "));
                }
            }
            Ok(Outcome::Done)
        }
        Command::Oracle(args) => {
            let instance = args.instance.resolve()?;
            let verdict =
                oracle_confirm(&instance, args.budget, args.seed).map_err(|e| e.to_string())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&verdict).map_err(|e| e.to_string())?
            );
            if verdict.confirmed_sk {
                Ok(Outcome::Done)
            } else {
                Ok(Outcome::Inconclusive)
            }
        }
        Command::Experiment(ExperimentCommand::Theorem(args)) => {
            let config = ExperimentConfig {
                x_values: args.x,
                k_min: args.kmin,
                k_max: args.kmax,
                samples: args.samples,
                family: args.family.into(),
                seed: args.seed,
                oracle_budget: args.oracle_budget,
                oracle_fraction: args.oracle_fraction,
            };
            let report = run_theorem_experiment(&config, args.threads).map_err(|e| e.to_string())?;
            if let Some(elapsed) = report.elapsed_seconds {
                eprintln!("experiment finished in {elapsed:.2}s");
            }
            let payload = if args.csv {
                report_to_csv(&report)
            } else {
                let mut json =
                    serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
                json.push('\n');
                json
            };
            match args.out {
                Some(path) => std::fs::write(&path, payload)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
                None => print!("{payload}"),
            }
            Ok(Outcome::Done)
        }
        Command::Experiment(ExperimentCommand::Smooth(args)) => {
            let report = run_smooth_experiment(
                &args.x,
                args.k,
                args.t,
                args.samples,
                args.seed,
                args.threads,
            )
            .map_err(|e| e.to_string())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
            );
            Ok(Outcome::Done)
        }
        Command::Psi(args) => {
            let count = psi(args.x, args.k).map_err(|e| e.to_string())?;
            // The guard value x (log k + 4) / log x alongside the count.
            let bound = if args.x > 1 && args.k > 1 {
                args.x as f64 * ((args.k as f64).ln() + 4.0) / (args.x as f64).ln()
            } else {
                f64::NAN
            };
            println!(
                "{}",
                serde_json::json!({
                    "x": count.x,
                    "k": count.k,
                    "psi": count.count,
                    "bound": bound,
                })
            );
            Ok(Outcome::Done)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Inconclusive) => ExitCode::from(2),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
