use clap::{Args, Parser, Subcommand};
use shearwave::harness::{self, Config, ExperimentConfig, Pipeline};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "shearwave", version, about = "Stability experiments for monotone shear flows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the profile assumptions and the spectral condition.
    ValidateFlow(Common),
    /// Solve the homogeneous Rayleigh equation around one critical layer.
    SolveRayleigh(Common),
    /// Sweep the 𝒥 functionals and Wronskians for eigenvalues.
    CheckSpectrum(Common),
    /// Build the wave-operator tables.
    BuildWaveop(Common),
    /// Intertwining, duality, norm and commutator checks.
    CheckWaveop(Common),
    /// Tabulate the ghost multiplier.
    DumpMultiplier(Common),
    /// Linearized Navier–Stokes for one mode.
    SimulateLinear(Common),
    /// Nonlinear perturbation run with the bootstrap monitor.
    SimulateNonlinear(Common),
    /// Amplitude-threshold scan.
    ScanThreshold(Common),
}

#[derive(Args)]
struct Common {
    /// Key–value configuration file.
    #[arg(long, visible_alias = "profile")]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    yc: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    kmax: Option<String>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    nu: Option<String>,
    #[arg(long)]
    amp: Option<String>,
    #[arg(long = "T")]
    t_end: Option<String>,
    #[arg(long)]
    init: Option<String>,
    /// Extra `key=value` overrides.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn split(cmd: Command) -> (Pipeline, Common) {
    match cmd {
        Command::ValidateFlow(c) => (Pipeline::ValidateFlow, c),
        Command::SolveRayleigh(c) => (Pipeline::SolveRayleigh, c),
        Command::CheckSpectrum(c) => (Pipeline::CheckSpectrum, c),
        Command::BuildWaveop(c) => (Pipeline::BuildWaveop, c),
        Command::CheckWaveop(c) => (Pipeline::CheckWaveop, c),
        Command::DumpMultiplier(c) => (Pipeline::DumpMultiplier, c),
        Command::SimulateLinear(c) => (Pipeline::SimulateLinear, c),
        Command::SimulateNonlinear(c) => (Pipeline::SimulateNonlinear, c),
        Command::ScanThreshold(c) => (Pipeline::ScanThreshold, c),
    }
}

fn load(c: &Common) -> shearwave::Result<ExperimentConfig> {
    let (mut cfg, base) = match &c.config {
        Some(p) => (Config::load(p)?, p.parent().map(PathBuf::from).unwrap_or_default()),
        None => (Config::default(), PathBuf::from(".")),
    };
    let flags = [("k", &c.k), ("yc", &c.yc), ("eps", &c.eps), ("kmax", &c.kmax), ("s", &c.s), ("nu", &c.nu), ("amp", &c.amp), ("T", &c.t_end), ("init", &c.init)];
    for (key, v) in flags {
        if let Some(v) = v {
            cfg.set(key, v);
        }
    }
    for kv in &c.set {
        let (k, v) = kv.split_once('=').ok_or(shearwave::Error::Config { line: 0, msg: format!("override `{kv}` is not KEY=VALUE") })?;
        cfg.set(k.trim(), v.trim());
    }
    if let Some(o) = &c.out {
        cfg.set("out_dir", &o.to_string_lossy());
    }
    ExperimentConfig::from_config(cfg, &base)
}

fn main() -> ExitCode {
    harness::init_threads();
    let cli = Cli::parse();
    let (pipeline, common) = split(cli.command);
    let cfg = match load(&common) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(harness::exit_code(&e) as u8);
        }
    };
    match harness::run_suite(pipeline, &cfg) {
        Ok(out) => {
            for a in &out.artifacts {
                println!("{}", a.display());
            }
            ExitCode::from(harness::EXIT_OK as u8)
        }
        Err(e) => {
            eprintln!("error in {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
