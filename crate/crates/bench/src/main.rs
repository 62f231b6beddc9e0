use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use wallcheb_bench::config::Config;
use wallcheb_bench::{plots, scaling, scenario, thresholds};

#[derive(Parser)]
#[command(name = "wallcheb", version, about = "Ground-state projector experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario file (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Overrides the sweep end or the threshold cap.
    #[arg(long)]
    max_order: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep every method over the configured orders and write a CSV.
    Run {
        #[command(flatten)]
        common: Common,
        /// Also replay wall-Chebyshev postselections with this RNG seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        shots: usize,
    },
    /// Smallest order per method and system meeting the accuracy target.
    Thresholds {
        #[command(flatten)]
        common: Common,
    },
    /// Fit threshold order against gap on a log-log scale.
    Scaling {
        #[command(flatten)]
        common: Common,
    },
    /// Write plot-data files.
    Plots {
        #[command(flatten)]
        common: Common,
    },
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?))
}

fn load(c: &Common) -> Result<Config> {
    let cfg = Config::load(&c.config).with_context(|| format!("loading {}", c.config.display()))?;
    std::fs::create_dir_all(&c.out).with_context(|| format!("creating {}", c.out.display()))?;
    Ok(cfg)
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run { common, seed, shots } => {
            let cfg = load(&common)?;
            let path = scenario::run_to_dir(&cfg, &common.out, common.max_order)?;
            println!("{}", path.display());
            if let Some(seed) = seed {
                let rows = scenario::sampling_demo(&cfg, seed, shots, common.max_order)?;
                let path = common.out.join(format!("{}_sampling.csv", cfg.scenario.name));
                scenario::write_sampling(&rows, create(&path)?)?;
                println!("{}", path.display());
            }
        }
        Command::Thresholds { common } => {
            let cfg = load(&common)?;
            let rows = thresholds::threshold_search(&cfg, common.max_order)?;
            let path = common.out.join(format!("{}_thresholds.csv", cfg.scenario.name));
            thresholds::write_thresholds(&rows, create(&path)?)?;
            for r in &rows {
                println!("{:<16} {:<10} {:>4}", r.system, r.method, r.order_label());
            }
        }
        Command::Scaling { common } => {
            let cfg = load(&common)?;
            let results = scaling::scaling_fit(&cfg, common.max_order)?;
            let path = common.out.join(format!("{}_scaling.csv", cfg.scenario.name));
            scaling::write_scaling(&results, create(&path)?)?;
            for r in &results {
                let slope = r.slope.map_or("-".to_string(), |s| format!("{s:.3}"));
                println!("{:<10} slope {slope}", r.method);
            }
        }
        Command::Plots { common } => {
            let cfg = load(&common)?;
            for p in plots::emit_plots(&cfg, &common.out)? {
                println!("{}", p.display());
            }
        }
    }
    Ok(())
}
