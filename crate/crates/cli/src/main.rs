use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spinscatter_cli::config::SweepConfig;
use spinscatter_cli::figure::{run_figure, Preset};
use spinscatter_cli::sweep::run_to_file;
use spinscatter_cli::verify::{run_verify, Scope};
use spinscatter_cli::CliError;

#[derive(Parser)]
#[command(
    name = "spinscatter",
    version,
    about = "Impurity entanglement by electron scattering"
)]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep the incident wave number and write one CSV.
    Sweep(SweepArgs),
    /// Write every curve of a figure preset (fig4..fig8).
    Figure {
        preset: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        output: PathBuf,
        #[arg(long, default_value_t = 1000)]
        k_steps: usize,
        #[arg(long, default_value = "weighted")]
        combine_mode: String,
    },
    /// Run the oracle checks (all, chain, zpnr, greens).
    Verify {
        #[arg(default_value = "all")]
        scope: String,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// key=value file applied before the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// chain or zpnr
    #[arg(long)]
    model: Option<String>,
    /// Impurity separation in sites (0: both on one site).
    #[arg(long)]
    m: Option<String>,
    /// Exchange strength in units of the hopping (t, or t' for zpnr).
    #[arg(long)]
    u_prime: Option<String>,
    /// Initial spins of electron, left and right impurity, e.g. udd.
    #[arg(long)]
    initial: Option<String>,
    #[arg(long)]
    k_min: Option<String>,
    #[arg(long)]
    k_max: Option<String>,
    #[arg(long)]
    k_steps: Option<String>,
    /// weighted or paper_sum
    #[arg(long)]
    combine_mode: Option<String>,
    #[arg(long)]
    output: Option<String>,
}

impl SweepArgs {
    fn to_config(&self) -> Result<SweepConfig, CliError> {
        let mut cfg = SweepConfig::default();
        if let Some(path) = &self.config {
            cfg.apply_file(path)?;
        }
        let flags = [
            ("model", &self.model),
            ("m", &self.m),
            ("u-prime", &self.u_prime),
            ("initial", &self.initial),
            ("k-min", &self.k_min),
            ("k-max", &self.k_max),
            ("k-steps", &self.k_steps),
            ("combine-mode", &self.combine_mode),
            ("output", &self.output),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Config("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    match cli.command {
        Command::Sweep(args) => {
            let cfg = args.to_config()?;
            let summary = run_to_file(&cfg)?;
            println!("{}", summary.line(&cfg));
            println!("wrote {}", cfg.output.display());
        }
        Command::Figure {
            preset,
            output,
            k_steps,
            combine_mode,
        } => {
            let preset: Preset = preset.parse()?;
            let mode = combine_mode
                .parse()
                .map_err(|e: spinscatter::Error| CliError::Config(e.to_string()))?;
            for (path, summary, cfg) in run_figure(preset, &output, k_steps, mode)? {
                println!("{}", summary.line(&cfg));
                println!("wrote {}", path.display());
            }
        }
        Command::Verify { scope } => {
            let scope: Scope = scope.parse()?;
            let checks = run_verify(scope);
            for c in &checks {
                println!("{c}");
            }
            let failed: Vec<&str> = checks
                .iter()
                .filter(|c| !c.passed())
                .map(|c| c.name)
                .collect();
            if !failed.is_empty() {
                return Err(CliError::Verification(failed.join(", ")));
            }
            println!("all {} checks passed", checks.len());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
