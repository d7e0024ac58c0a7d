//! Command-line front end for the batch scans.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use geobinder::lattice::OccupationMode;
use geobinder::scan::{
    run_scan, write_outputs, AaFidelityConfig, AaVarianceConfig, BerryConfig, FermiObcConfig,
    FermiPbcConfig, Grid, OutputPaths, ScanConfig, SchemeChoice, SshConfig, SshRoute,
    ZeckendorfConfig,
};

#[derive(Parser)]
#[command(
    version,
    about = "Geometric Binder cumulant and fidelity scans for 1D lattice models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// CSV destination (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON manifest destination.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Where to write a matplotlib script that plots the CSV.
    #[arg(long)]
    plot_script: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Periodic Fermi sea: U4 against the stencil order.
    FermiPbc {
        #[arg(long = "L", value_delimiter = ',', default_value = "100")]
        sites: Vec<usize>,
        #[arg(long = "N", value_delimiter = ',', default_value = "49")]
        particles: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        mu_max: u32,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value = "numeric", value_parser = parse_occupation)]
        occupation: OccupationMode,
        #[command(flatten)]
        output: Output,
    },
    /// Open Fermi sea: U4 of the position distribution.
    FermiObc {
        #[arg(long = "L", value_delimiter = ',', default_value = "250,500,1000,2000")]
        sites: Vec<usize>,
        /// Defaults to L/2 for each size.
        #[arg(long = "N", value_delimiter = ',')]
        particles: Vec<usize>,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[command(flatten)]
        output: Output,
    },
    /// SSH chain at half filling across the dimerization.
    Ssh {
        #[arg(long = "L", value_delimiter = ',', default_value = "50,100,200")]
        sites: Vec<usize>,
        #[arg(long, default_value = "-0.5:0.5:0.05", allow_hyphen_values = true)]
        dj_grid: Grid,
        #[arg(long, default_value_t = 1.0)]
        mean: f64,
        #[arg(long, default_value_t = 1)]
        mu_max: u32,
        #[arg(long, default_value = "bloch", value_parser = parse_route)]
        route: SshRoute,
        #[command(flatten)]
        output: Output,
    },
    /// Aubry-André variance per particle, FDD against FDLD.
    AaVariance {
        #[arg(long, value_delimiter = ',', default_value = "18")]
        fib_index: Vec<u32>,
        /// Defaults to the nearest half filling of parity opposite to L.
        #[arg(long = "N", value_delimiter = ',')]
        particles: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "1.99,2.00,2.01")]
        w_list: Vec<f64>,
        #[arg(long, default_value_t = 6)]
        mu_max: u32,
        #[arg(long, default_value = "both")]
        scheme: SchemeChoice,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Aubry-André fidelity susceptibility against W.
    AaFidelity {
        #[arg(long, default_value_t = 15)]
        fib_index: u32,
        #[arg(long = "N", value_delimiter = ',', default_value = "377,379")]
        particles: Vec<usize>,
        #[arg(long, default_value = "0.5:3.5:0.05")]
        w_grid: Grid,
        #[arg(long, default_value_t = 0.01)]
        delta: f64,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Zeckendorf classification of fillings N/L.
    Zeckendorf {
        #[arg(long = "L", default_value_t = 610)]
        sites: u64,
        #[arg(long = "N", value_delimiter = ',', default_value = "305,377,379")]
        particles: Vec<u64>,
        #[arg(long, default_value_t = geobinder::number_theory::DEFAULT_SMALL_INDEX)]
        small_index: u32,
        #[arg(long, default_value_t = geobinder::number_theory::DEFAULT_LIMIT_SHIFT)]
        shift: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Discrete Berry phase of two-level loops around, off and through the degeneracy.
    Berry {
        #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
        samples: Vec<usize>,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "0,1,2.5",
            allow_hyphen_values = true
        )]
        centers: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_occupation(s: &str) -> Result<OccupationMode, String> {
    match s {
        "numeric" => Ok(OccupationMode::Numeric),
        "plane-wave" => Ok(OccupationMode::PlaneWave),
        _ => Err(format!("{s:?} is not one of numeric, plane-wave")),
    }
}

fn parse_route(s: &str) -> Result<SshRoute, String> {
    match s {
        "bloch" => Ok(SshRoute::Bloch),
        "real-space" => Ok(SshRoute::RealSpace),
        _ => Err(format!("{s:?} is not one of bloch, real-space")),
    }
}

fn split(command: Command) -> (ScanConfig, Output) {
    match command {
        Command::FermiPbc {
            sites,
            particles,
            mu_max,
            t,
            occupation,
            output,
        } => (
            ScanConfig::FermiPbc(FermiPbcConfig {
                sites,
                particles,
                mu_max,
                t,
                mode: occupation,
            }),
            output,
        ),
        Command::FermiObc {
            sites,
            particles,
            t,
            output,
        } => (
            ScanConfig::FermiObc(FermiObcConfig {
                sites,
                particles,
                t,
            }),
            output,
        ),
        Command::Ssh {
            sites,
            dj_grid,
            mean,
            mu_max,
            route,
            output,
        } => (
            ScanConfig::Ssh(SshConfig {
                sites,
                dj: dj_grid.values(),
                mean,
                mu_max,
                route,
            }),
            output,
        ),
        Command::AaVariance {
            fib_index,
            particles,
            w_list,
            mu_max,
            scheme,
            t,
            output,
        } => (
            ScanConfig::AaVariance(AaVarianceConfig {
                fib_index,
                particles,
                w_list,
                mu_max,
                scheme,
                t,
            }),
            output,
        ),
        Command::AaFidelity {
            fib_index,
            particles,
            w_grid,
            delta,
            t,
            output,
        } => (
            ScanConfig::AaFidelity(AaFidelityConfig {
                fib_index,
                particles,
                w_grid,
                delta,
                t,
            }),
            output,
        ),
        Command::Zeckendorf {
            sites,
            particles,
            small_index,
            shift,
            output,
        } => (
            ScanConfig::Zeckendorf(ZeckendorfConfig {
                sites,
                particles,
                small_index,
                shift,
            }),
            output,
        ),
        Command::Berry {
            samples,
            centers,
            radius,
            output,
        } => (
            ScanConfig::Berry(BerryConfig {
                samples,
                centers,
                radius,
            }),
            output,
        ),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let (config, output) = split(Cli::parse().command);
    let mut result = match run_scan(&config, output.threads) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    let paths = OutputPaths {
        csv: output.out,
        manifest: output.manifest,
        plot_script: output.plot_script,
    };
    if let Err(e) = write_outputs(&mut result, &paths) {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    if result.manifest.failed_rows > 0 {
        log::warn!(
            "{} of {} rows failed; see the status column",
            result.manifest.failed_rows,
            result.manifest.rows
        );
    }
    ExitCode::SUCCESS
}
