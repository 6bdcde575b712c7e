//! `causetree` — generate cause–effect benchmark data, infer direction on
//! a CSV pair, or run the full benchmark.
//!
//! All randomness flows from `--seed`; identical invocations produce
//! byte-identical outputs. Exit codes: 0 success, 1 runtime or I/O error,
//! 2 usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use causetree::bench::{run_benchmark, BenchConfig};
use causetree::criteria::{evaluate_all, SignConfig};
use causetree::data::{CriterionKind, DataKind};
use causetree::io::{read_pair_csv, write_manifest, write_pair_csv, write_report, ManifestRecord};
use causetree::scmgen::{generate_dataset, GenConfig, NoiseMode, NoiseSpec};
use causetree::DEFAULT_SEED;

/// Infer the causal direction between two dependent variables by comparing
/// decision-tree complexity in both directions.
#[derive(Parser)]
#[command(name = "causetree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate synthetic cause–effect datasets plus a ground-truth manifest.
    Generate(GenerateCmd),
    /// Score a two-column CSV and print each criterion's decision.
    Infer(InferCmd),
    /// Run the synthetic benchmark and write a JSON report.
    Benchmark(BenchmarkCmd),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum KindArg {
    Discrete,
    Continuous,
}

#[derive(Clone, Copy, ValueEnum)]
enum NoiseArg {
    Uniform,
    Gaussian,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Additive,
    Multiplicative,
}

#[derive(Clone, Copy, ValueEnum)]
enum CriterionArg {
    Td,
    Tn,
    Tl,
    Pl,
    Re,
    Ih,
}

impl From<CriterionArg> for CriterionKind {
    fn from(c: CriterionArg) -> CriterionKind {
        match c {
            CriterionArg::Td => CriterionKind::TD,
            CriterionArg::Tn => CriterionKind::TN,
            CriterionArg::Tl => CriterionKind::TL,
            CriterionArg::Pl => CriterionKind::PL,
            CriterionArg::Re => CriterionKind::RE,
            CriterionArg::Ih => CriterionKind::IH,
        }
    }
}

/// Flags shared by `generate` and `benchmark` that describe the data model.
#[derive(Args)]
struct GenFlags {
    /// Data kind of both variables.
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Noise family of the cause.
    #[arg(long, value_enum, default_value = "uniform")]
    noise_x: NoiseArg,
    /// Noise family of the effect.
    #[arg(long, value_enum, default_value = "uniform")]
    noise_y: NoiseArg,
    /// How the effect's noise enters the mechanism.
    #[arg(long, value_enum, default_value = "additive")]
    mode: ModeArg,
    /// Support size R of discrete noise. Required for --kind discrete,
    /// invalid otherwise.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    cardinality: Option<u32>,
    /// Samples per dataset.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(2..))]
    samples: u64,
    /// Master seed; dataset i derives its own RNG stream from (seed, i).
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl GenFlags {
    /// Validate the kind/cardinality combination (usage errors exit 2) and
    /// assemble the generator config.
    fn to_config(&self) -> GenConfig {
        match (self.kind, self.cardinality) {
            (KindArg::Discrete, None) => usage_error(
                clap::error::ErrorKind::MissingRequiredArgument,
                "--cardinality is required with --kind discrete",
            ),
            (KindArg::Continuous, Some(_)) => usage_error(
                clap::error::ErrorKind::ArgumentConflict,
                "--cardinality only applies to --kind discrete",
            ),
            _ => {}
        }
        let spec = |family: NoiseArg| match (self.kind, family) {
            (KindArg::Discrete, NoiseArg::Uniform) => NoiseSpec::DiscreteUniform {
                r: self.cardinality.unwrap(),
            },
            (KindArg::Discrete, NoiseArg::Gaussian) => NoiseSpec::DiscreteGaussian {
                r: self.cardinality.unwrap(),
            },
            (KindArg::Continuous, NoiseArg::Uniform) => NoiseSpec::ContinuousUniform,
            (KindArg::Continuous, NoiseArg::Gaussian) => NoiseSpec::ContinuousGaussian,
        };
        GenConfig {
            n_samples: self.samples as usize,
            noise_x: spec(self.noise_x),
            noise_y: spec(self.noise_y),
            noise_mode: match self.mode {
                ModeArg::Additive => NoiseMode::Additive,
                ModeArg::Multiplicative => NoiseMode::Multiplicative,
            },
            flip_probability: 0.5,
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct GenerateCmd {
    #[command(flatten)]
    gen: GenFlags,
    /// Number of datasets to write.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    datasets: u64,
    /// Output directory (created if missing).
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct InferCmd {
    /// Two-column CSV with header "x,y".
    #[arg(long)]
    input: PathBuf,
    /// How to interpret the columns.
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Equal-width bins for continuous data (ignored for discrete).
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    bins: u64,
    /// Score a single criterion instead of all six.
    #[arg(long, value_enum)]
    criterion: Option<CriterionArg>,
}

#[derive(Args)]
struct BenchmarkCmd {
    #[command(flatten)]
    gen: GenFlags,
    /// Number of datasets to benchmark over.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    datasets: u64,
    /// Equal-width bins for continuous evaluation.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    bins: u64,
    /// Bins of the report's score histograms.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    histogram_bins: u64,
    /// Where to write the JSON report.
    #[arg(long)]
    report: PathBuf,
}

fn usage_error(kind: clap::error::ErrorKind, message: &str) -> ! {
    Cli::command().error(kind, message).exit()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Infer(args) => cmd_infer(args),
        Command::Benchmark(args) => cmd_benchmark(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

type CmdResult = Result<(), Box<dyn std::error::Error>>;

fn cmd_generate(args: GenerateCmd) -> CmdResult {
    let cfg = args.gen.to_config();
    fs::create_dir_all(&args.out)
        .map_err(|e| format!("{}: {e}", args.out.display()))?;
    let width = args.datasets.saturating_sub(1).to_string().len().max(4);
    let mut manifest = Vec::with_capacity(args.datasets as usize);
    for index in 0..args.datasets {
        let ds = generate_dataset(&cfg, index)?;
        let name = format!("dataset_{index:0width$}.csv");
        write_pair_csv(&args.out.join(&name), &ds.data)?;
        manifest.push(ManifestRecord::for_dataset(name, index, cfg.seed, &ds));
    }
    write_manifest(&args.out.join("manifest.jsonl"), &manifest)?;
    println!(
        "wrote {} dataset(s) and manifest.jsonl to {}",
        args.datasets,
        args.out.display()
    );
    Ok(())
}

fn cmd_infer(args: InferCmd) -> CmdResult {
    let kind = match args.kind {
        KindArg::Discrete => DataKind::Discrete,
        KindArg::Continuous => DataKind::Continuous,
    };
    let dataset = read_pair_csv(&args.input, kind)?;
    let scores = evaluate_all(&dataset, args.bins as usize, &SignConfig::default())?;
    let only: Option<CriterionKind> = args.criterion.map(CriterionKind::from);
    for score in scores {
        if only.is_some_and(|k| k != score.kind) {
            continue;
        }
        println!("{:<4}  {:+.6}  {}", score.kind.name(), score.j_oriented, score.decision);
    }
    Ok(())
}

fn cmd_benchmark(args: BenchmarkCmd) -> CmdResult {
    let cfg = BenchConfig {
        n_datasets: args.datasets as usize,
        gen: args.gen.to_config(),
        n_bins: args.bins as usize,
        histogram_bins: args.histogram_bins as usize,
        signs: SignConfig::default(),
    };
    let report = run_benchmark(&cfg)?;
    write_report(&args.report, &report)?;
    println!("{:<9} {:>9} {:>16}", "criterion", "accuracy", "excl. abstain");
    for s in &report.criteria {
        println!(
            "{:<9} {:>9.3} {:>16.3}",
            s.kind.name(),
            s.accuracy,
            s.accuracy_excluding_abstentions
        );
    }
    println!(
        "report written to {} ({:.1}s)",
        args.report.display(),
        report.duration_seconds
    );
    Ok(())
}
