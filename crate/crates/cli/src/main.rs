use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use landau_cs_cli::config::{RawOptions, RunConfig};
use landau_cs_cli::table::Format;
use landau_cs_cli::{commands, figures, verify, CliError};

/// Coherent and photon-added states of the time-dependent Landau problem.
#[derive(Parser)]
#[command(name = "landau-cs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Command {
    /// Mean photon number, g2 and Mandel Q at a label or along |z|.
    Stats,
    /// Photon-number distribution.
    Pnd,
    /// Weight function of the resolution of identity along r.
    Weight,
    /// Wigner function on an (x, p) grid; x is the exponent coordinate, e^{-x} = κr²/ρ².
    Wigner,
    /// Envelope, residual and phase for a time profile.
    Ermakov,
    /// Run the verification suite; exit status 1 if any criterion fails.
    Verify,
    /// Write every figure dataset into the --out directory.
    Figures,
}

#[derive(Args)]
struct Opts {
    /// Key-value file supplying any of the options below; flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Bargmann index ℓ ≥ 0.
    #[arg(long, global = true, allow_hyphen_values = true)]
    ell: Option<String>,
    /// Number of added photons.
    #[arg(long, global = true, allow_hyphen_values = true)]
    m: Option<String>,
    /// Complex label `re` or `re,im`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    z: Option<String>,
    /// Label given by |z|² on the positive real axis.
    #[arg(long, global = true, allow_hyphen_values = true)]
    z2: Option<String>,
    /// Built-in profile (constant, caldirola-kanai, modulated-frequency, modulated-mass) or a profile file.
    #[arg(long, global = true)]
    profile: Option<String>,
    /// Main grid `lo:hi:n` (|z|, r, x or t depending on the subcommand).
    #[arg(long, global = true, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Momentum grid `lo:hi:n` for `wigner`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pgrid: Option<String>,
    /// Output file, or directory for `figures`.
    #[arg(long, global = true)]
    out: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Smallest probability printed by `pnd`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    tol: Option<String>,
    /// Evaluation time for `wigner` with a profile.
    #[arg(long, global = true, allow_hyphen_values = true)]
    time: Option<String>,
    /// Highest level printed by `pnd`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    nmax: Option<String>,
    /// Initial envelope width (defaults to the stationary value).
    #[arg(long, global = true, allow_hyphen_values = true)]
    rho0: Option<String>,
    /// Initial envelope velocity.
    #[arg(long = "rho-dot0", global = true, allow_hyphen_values = true)]
    rho_dot0: Option<String>,
    /// Reduced grids.
    #[arg(long, global = true)]
    quick: bool,
    /// Allow frames with a moving envelope in `wigner`.
    #[arg(long, global = true)]
    experimental: bool,
}

impl Opts {
    fn raw(&self) -> RawOptions {
        let mut raw = RawOptions::default();
        raw.set("ell", self.ell.clone());
        raw.set("m", self.m.clone());
        raw.set("z", self.z.clone());
        raw.set("z2", self.z2.clone());
        raw.set("profile", self.profile.clone());
        raw.set("grid", self.grid.clone());
        raw.set("pgrid", self.pgrid.clone());
        raw.set("out", self.out.clone());
        raw.set("format", self.format.map(|f| f.extension().to_string()));
        raw.set("tol", self.tol.clone());
        raw.set("time", self.time.clone());
        raw.set("nmax", self.nmax.clone());
        raw.set("rho0", self.rho0.clone());
        raw.set("rho_dot0", self.rho_dot0.clone());
        raw.set("quick", self.quick.then(|| "true".into()));
        raw.set("experimental", self.experimental.then(|| "true".into()));
        raw
    }
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("LANDAU_CS_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Config(format!("LANDAU_CS_THREADS: cannot parse `{v}` as a thread count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("LANDAU_CS_THREADS: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let cfg = RunConfig::resolve(&cli.opts.raw(), cli.opts.config.as_deref())?;
    let table = match cli.command {
        Command::Stats => commands::stats(&cfg)?,
        Command::Pnd => commands::pnd_table(&cfg)?,
        Command::Weight => commands::weight(&cfg)?,
        Command::Wigner => commands::wigner(&cfg)?,
        Command::Ermakov => commands::ermakov(&cfg)?,
        Command::Figures => {
            let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("figures"));
            for name in figures::write_all(&dir, cfg.format, cfg.quick)? {
                println!("{}", dir.join(name).display());
            }
            return Ok(());
        }
        Command::Verify => {
            let reports = verify::run_all(cfg.quick);
            let text = verify::render(&reports);
            match &cfg.out {
                Some(p) => std::fs::write(p, &text)?,
                None => print!("{text}"),
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            return if failed == 0 { Ok(()) } else { Err(CliError::Verification { failed }) };
        }
    };
    table.write(cfg.out.as_deref(), cfg.format)?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("landau-cs: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
