use clap::{Args, Parser, Subcommand};
use cosnufft::{CharacteristicFunction, Evaluation, Formula};
use cosnufft_bench::{emit_report, run_suite, CaseRegistry, SuiteOptions, ThroughputSettings, STRIKE_COUNTS};
use cosnufft_cli::{density_csv, price_csv, CliError, Result, RunConfig};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const OUT_DIR_ENV: &str = "COSNUFFT_OUT_DIR";

/// COS option pricing with classic and NUFFT backends.
#[derive(Parser)]
#[command(name = "cosnufft", version)]
struct Cli {
    /// Worker threads; more than one enables the parallel backends.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Price the configured strikes; writes strike,put,call,valid,backend.
    Price(RunArgs),
    /// Reconstruct the log-return density; writes x,density,valid.
    Density(RunArgs),
    /// Run benchmark cases and write the report tables.
    Bench(BenchArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Output file; defaults to $COSNUFFT_OUT_DIR/<command>.csv, else stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    backend: Option<EvaluationArg>,
    #[arg(long, value_enum)]
    formula: Option<FormulaArg>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Write the effective configuration (after flag overrides) here.
    #[arg(long)]
    dump_config: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Named case set.
    #[arg(long, value_enum, default_value_t = SuiteArg::Paper)]
    suite: SuiteArg,
    /// Comma-separated case names; defaults to the whole suite.
    #[arg(long, value_delimiter = ',')]
    cases: Vec<String>,
    /// Comma-separated strike counts for the throughput runs.
    #[arg(long, value_delimiter = ',')]
    strikes: Vec<usize>,
    /// Print the case registry and exit.
    #[arg(long)]
    list: bool,
    /// Seeds the measurement order.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report directory; defaults to $COSNUFFT_OUT_DIR, else ./bench-report.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    warmup: usize,
    #[arg(long, default_value_t = 20)]
    repetitions: usize,
    /// Skip the throughput measurements.
    #[arg(long)]
    accuracy_only: bool,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum EvaluationArg {
    Direct,
    Nufft,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FormulaArg {
    Classic,
    Alt,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum SuiteArg {
    Paper,
}

fn write_output(out: Option<&Path>, default_name: &str, text: &str) -> Result<()> {
    let path = match out {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os(OUT_DIR_ENV).map(|d| PathBuf::from(d).join(default_name)),
    };
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| CliError::Io(parent.display().to_string(), e))?;
            }
            std::fs::write(&p, text).map_err(|e| CliError::Io(p.display().to_string(), e))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn effective_config(args: &RunArgs) -> Result<RunConfig> {
    let mut config = RunConfig::load(&args.config)?;
    if let Some(b) = args.backend {
        config.cos.backend = match b {
            EvaluationArg::Direct => Evaluation::Direct,
            EvaluationArg::Nufft => Evaluation::Nufft,
        };
    }
    if let Some(f) = args.formula {
        config.cos.formula = match f {
            FormulaArg::Classic => Formula::Classic,
            FormulaArg::Alt => Formula::Alt,
        };
    }
    if let Some(t) = args.tolerance {
        config.cos.tolerance = t;
    }
    if let Some(path) = &args.dump_config {
        std::fs::write(path, config.to_toml()?).map_err(|e| CliError::Io(path.display().to_string(), e))?;
    }
    Ok(config)
}

fn list_cases(registry: &CaseRegistry) {
    println!("case,model,maturity,terms,level,accuracy_strikes,reference");
    for c in registry.cases() {
        println!(
            "{},{},{},{},{},{},{}",
            c.name,
            c.model.name(),
            c.maturity,
            c.terms,
            c.level,
            c.accuracy_strikes,
            c.reference.label()
        );
    }
}

/// Exit code 1 when any accuracy bound fails.
fn bench(args: &BenchArgs, parallel: bool) -> Result<ExitCode> {
    let registry = match args.suite {
        SuiteArg::Paper => CaseRegistry::paper(),
    };
    if args.list {
        list_cases(&registry);
        return Ok(ExitCode::SUCCESS);
    }
    for name in &args.cases {
        registry.get(name)?;
    }
    let throughput = (!args.accuracy_only).then(|| ThroughputSettings {
        warmup: args.warmup,
        repetitions: args.repetitions,
        parallel,
        seed: args.seed,
        ..ThroughputSettings::default()
    });
    if let Some(t) = &throughput {
        t.validate()?;
    }
    let options = SuiteOptions {
        cases: args.cases.clone(),
        throughput,
        strike_counts: if args.strikes.is_empty() {
            STRIKE_COUNTS.to_vec()
        } else {
            args.strikes.clone()
        },
        ..SuiteOptions::default()
    };
    let report = run_suite(&registry, &options)?;
    let dir = args
        .out
        .clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("bench-report"));
    for path in emit_report(&report, &dir)? {
        eprintln!("wrote {}", path.display());
    }
    for a in report.failures() {
        eprintln!(
            "accuracy bound failed: {} {} {} = {:e} not in [{:e}, {:e}]",
            a.label,
            a.backend,
            a.metric.name(),
            a.value,
            a.lower,
            a.upper
        );
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if cli.threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let parallel = cli.threads > 1;
    match &cli.command {
        Command::Price(args) => {
            let config = effective_config(args)?;
            write_output(args.out.as_deref(), "prices.csv", &price_csv(&config, parallel)?)?;
        }
        Command::Density(args) => {
            let config = effective_config(args)?;
            write_output(args.out.as_deref(), "density.csv", &density_csv(&config, parallel)?)?;
        }
        Command::Bench(args) => return bench(args, parallel),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Config(_) | CliError::Usage(_) | CliError::Bench(cosnufft_bench::BenchError::UnknownCase { .. }) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
