//! Writes a small synthetic dataset and a ready-to-run experiment config
//! into ./demo, so the CLI can be tried without real data:
//!
//! ```text
//! cargo run -p pipeline-cli --example generate_demo
//! cargo run -p pipeline-cli --bin namemd -- report demo/experiment.conf
//! cargo run -p pipeline-cli --bin namemd -- plot demo/out
//! ```

use pipeline_cli::synthetic::{series_to_csv, synthetic_benchmark};

fn main() -> std::io::Result<()> {
    let dir = std::path::Path::new("demo");
    std::fs::create_dir_all(dir)?;

    let series = synthetic_benchmark(42, 246, 3);
    std::fs::write(dir.join("tourism.csv"), series_to_csv(&series))?;

    let config = "\
# Demo experiment: forecast the target market jointly with three source markets.
input = demo/tourism.csv
target_channel = target
source_channels = source_1, source_2, source_3
train_fraction = 0.8
horizons = 1, 2, 3
models = lr, elm, rvfl, seasonal_naive
lag_count = 12
leakage_mode = whole-series
grouping = none
output_dir = demo/out
seed = 42

# Noise-assisted decomposition settings (defaults shown).
na_memd.noise_channels = 2
na_memd.noise_amplitude = 0.1
na_memd.directions = 64
na_memd.sift.s_number = 4
na_memd.sift.max_sifts = 50

# Narrower hidden layers keep the random-feature models honest on smooth modes.
elm.hidden_units = 16
rvfl.hidden_units = 16
";
    std::fs::write(dir.join("experiment.conf"), config)?;

    println!("wrote demo/tourism.csv and demo/experiment.conf");
    Ok(())
}
