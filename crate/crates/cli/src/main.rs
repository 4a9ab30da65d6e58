//! qha: verify quasi-Hopf presentations, compute quantum dimensions, and run
//! the integral pipeline, emitting deterministic JSON reports.
//!
//! Exit codes: 0 all asserted stages pass, 1 an asserted stage fails,
//! 2 unusable input.

mod report;

use clap::{Args, Parser, Subcommand};
use report::*;

#[derive(Parser)]
#[command(name = "qha", version, about = "Exact quasi-Hopf algebra toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Named example: group:Zn, group:S3, dual-omega:Zn:q, dpr:Zn:q, sweedler
    #[arg(long, conflicts_with = "file")]
    example: Option<String>,

    /// Presentation file (JSON)
    file: Option<String>,

    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<String>,

    /// Seed for the random endomorphism trials
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Number of trace-formula trials
    #[arg(long, default_value_t = 20)]
    chi_trials: u64,

    /// Comma-separated stage filter (validation, identity_suite,
    /// quasitriangularity, qdim, integrals, trace_formula)
    #[arg(long)]
    stage: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the axioms and run the identity suite
    Verify(InputArgs),
    /// Compute the three quantum-dimension expressions and compare
    Qdim(InputArgs),
    /// Integrals, cointegrals, trace-formula trials and rank scalars
    Integrals(InputArgs),
}

fn stage_enabled(filter: &Option<Vec<String>>, name: &str) -> bool {
    match filter {
        None => true,
        Some(list) => list.iter().any(|s| s == name),
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    let (args, command) = match &cli.command {
        Command::Verify(a) => (a, "verify"),
        Command::Qdim(a) => (a, "qdim"),
        Command::Integrals(a) => (a, "integrals"),
    };
    let filter: Option<Vec<String>> = args
        .stage
        .as_ref()
        .map(|s| s.split(',').map(|p| p.trim().to_string()).collect());

    let mut subject = resolve_subject(args.example.as_deref(), args.file.as_deref())
        .map_err(|e| e.to_string())?;

    let mut stages: Vec<StageOutcome> = Vec::new();
    match command {
        "verify" => {
            if stage_enabled(&filter, "validation") {
                stages.push(stage_validation(&subject));
            }
            if stage_enabled(&filter, "identity_suite") {
                stages.push(stage_identity_suite(&subject));
            }
            if stage_enabled(&filter, "quasitriangularity") {
                if let Some(outcome) = stage_quasitriangularity(&subject) {
                    stages.push(outcome);
                }
            }
        }
        "qdim" => {
            if stage_enabled(&filter, "qdim") {
                stages.push(stage_qdim(&mut subject));
            }
        }
        "integrals" => {
            let mut data = None;
            if stage_enabled(&filter, "integrals") {
                let (outcome, d) = stage_integrals(&mut subject);
                stages.push(outcome);
                data = d;
            }
            if stage_enabled(&filter, "trace_formula") {
                if let Some(data) = &data {
                    stages.push(stage_trace_formula(
                        &subject,
                        data,
                        args.seed,
                        args.chi_trials,
                    ));
                }
            }
        }
        _ => unreachable!(),
    }

    let (report, pass) = final_report(&subject.descriptor, stages);
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    match &args.out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| e.to_string())?,
        None => println!("{text}"),
    }
    Ok(if pass { 0 } else { 1 })
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    }
}
