//! Runs the four Monte Carlo sweeps and writes one CSV per sweep.
//!
//! cargo run --release --example fading_sweeps -- [out_dir] [trials]

use std::path::PathBuf;

use noma::output::{sweep_table, Format};
use noma::{run_sweep, SweepConfig, SweepMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "sweeps".into()));
    let trials: u32 = args
        .next()
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(10_000);
    std::fs::create_dir_all(&dir)?;

    for mode in SweepMode::ALL {
        let config = SweepConfig {
            trials,
            ..SweepConfig::new(mode)
        };
        let result = run_sweep(&config)?;
        let path = dir.join(format!("{mode}.csv"));
        sweep_table(&result).write_file(Format::Csv, &path)?;
        println!("{mode:>16} M={:<3} -> {}", config.users, path.display());
    }
    Ok(())
}
