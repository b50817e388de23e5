use std::path::PathBuf;
use std::process;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use fssrank::config::DatasetConfig;
use fssrank::error::Result;
use fssrank::indicators::Indicator;
use fssrank::model::Scope;
use fssrank::report::{cmd_compare, cmd_compute, cmd_synth, cmd_validate, BaselineMode, RunSpec};
use fssrank::synth::SynthSpec;

#[derive(Parser)]
#[command(
    name = "fssrank",
    version,
    about = "Research-productivity scores, rankings and method comparisons from CSV corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Dataset directory holding the six input CSV files.
    data: PathBuf,
    /// TOML run configuration; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Indicator family: fss or mncs.
    #[arg(long, default_value = "fss")]
    indicator: String,
    /// Scope to report (sds, uda, overall); repeat for several. All three
    /// when omitted.
    #[arg(long = "scope")]
    scopes: Vec<String>,
    /// Output directory for the CSV results.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Baseline source: ingest (require baselines.csv) or build (from the
    /// corpus). Default: ingest when the file exists, otherwise build.
    #[arg(long)]
    baselines: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a dataset directory and report what the filters would drop.
    Validate {
        /// Dataset directory holding the six input CSV files.
        data: PathBuf,
        /// TOML run configuration; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Score the corpus; writes per-scope and professor-level CSV files.
    Compute(RunArgs),
    /// Rank both aggregation methods and report their divergence.
    Compare(RunArgs),
    /// Generate a seeded synthetic corpus (plus optional oracle scores).
    Synth {
        /// Output directory for the generated CSV files.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// TOML run configuration; defaults apply when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        universities: usize,
        #[arg(long, default_value_t = 2)]
        udas: usize,
        #[arg(long, default_value_t = 3)]
        sds_per_uda: usize,
        #[arg(long, default_value_t = 4)]
        professors_min: usize,
        #[arg(long, default_value_t = 10)]
        professors_max: usize,
        #[arg(long, default_value_t = 3.0)]
        pubs_per_professor: f64,
        #[arg(long, default_value_t = 0.4)]
        between_sd: f64,
        #[arg(long, default_value_t = 0.8)]
        within_sd: f64,
        /// Also write ground_truth.csv from the independent oracle.
        #[arg(long)]
        ground_truth: bool,
    },
}

fn load_config(path: &Option<PathBuf>) -> Result<DatasetConfig> {
    match path {
        Some(path) => DatasetConfig::from_toml_file(path),
        None => Ok(DatasetConfig::default()),
    }
}

fn parse_scopes(raw: &[String]) -> Result<Vec<Scope>> {
    if raw.is_empty() {
        return Ok(Scope::ALL.to_vec());
    }
    let mut scopes = Vec::new();
    for name in raw {
        let scope = Scope::from_str(name).map_err(fssrank::error::Error::InvalidConfig)?;
        if !scopes.contains(&scope) {
            scopes.push(scope);
        }
    }
    Ok(scopes)
}

fn run_spec(args: &RunArgs) -> Result<RunSpec> {
    Ok(RunSpec {
        data_dir: args.data.clone(),
        out_dir: args.out.clone(),
        config: load_config(&args.config)?,
        indicator: Indicator::from_str(&args.indicator)
            .map_err(fssrank::error::Error::InvalidConfig)?,
        scopes: parse_scopes(&args.scopes)?,
        baselines: match &args.baselines {
            Some(mode) => BaselineMode::from_str(mode)?,
            None => BaselineMode::Auto,
        },
    })
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Validate { data, config } => cmd_validate(&data, &load_config(&config)?),
        Command::Compute(args) => cmd_compute(&run_spec(&args)?),
        Command::Compare(args) => cmd_compare(&run_spec(&args)?),
        Command::Synth {
            out,
            config,
            seed,
            universities,
            udas,
            sds_per_uda,
            professors_min,
            professors_max,
            pubs_per_professor,
            between_sd,
            within_sd,
            ground_truth,
        } => {
            let spec = SynthSpec {
                universities,
                udas,
                sds_per_uda,
                professors_min,
                professors_max,
                pubs_per_professor,
                between_sd,
                within_sd,
                seed,
            };
            cmd_synth(&spec, &load_config(&config)?, &out, ground_truth)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(log) => print!("{log}"),
        Err(error) => {
            eprintln!("error: {error}");
            process::exit(error.exit_code());
        }
    }
}
