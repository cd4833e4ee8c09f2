//! The full study grid through the library API: both platforms, all four
//! equipment cases, all four seasonal fixture days. Writes ledgers,
//! normalized series, charts, and a summary to `out/seasonal_grid/`.
//!
//! Run with: cargo run --example seasonal_grid

use std::path::PathBuf;
use uav_energy::cli::{run, RunManifest};
use uav_energy::config::PlatformKind;
use uav_energy::scenario::EquipmentCase;

fn main() {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let manifest = RunManifest {
        config_path: None, // builtin "table1" preset
        weather: ["spring", "summer", "autumn", "winter"]
            .iter()
            .map(|s| (s.to_string(), fixtures.join(format!("weather_{s}.csv"))))
            .collect(),
        platforms: PlatformKind::ALL.to_vec(),
        cases: EquipmentCase::ALL.to_vec(),
        out_dir: PathBuf::from("out/seasonal_grid"),
        emit_svg: true,
        step_override: None,
    };
    match run(&manifest) {
        Ok(summary) => println!("grid complete; summary at {}", summary.display()),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
