//! Daily PV and wind-turbine harvest on the summer and winter fixture
//! days, showing the seasonal reversal between the two generators.
//!
//! Run with: cargo run --example harvest_day

use chrono::Duration;
use uav_energy::config::{PlatformKind, ScenarioConfig};
use uav_energy::scenario::{simulate, EquipmentCase};
use uav_energy::weather_csv::parse_weather_csv;

fn main() {
    let config = ScenarioConfig::table1();
    let inputs = config
        .simulation_inputs(PlatformKind::Multirotor, EquipmentCase::PvAndWt, None, false)
        .expect("builtin preset");

    for season in ["summer", "winter"] {
        let path = format!(
            "{}/fixtures/weather_{season}.csv",
            env!("CARGO_MANIFEST_DIR")
        );
        let weather = parse_weather_csv(&path).expect("fixture parses");
        let ledger = simulate(&inputs, &weather, Duration::hours(1)).expect("grid is uniform");
        let pv_wh: f64 = ledger.pv_series().iter().sum();
        let wt_wh: f64 = ledger.wt_series().iter().sum();
        println!(
            "{season:<7} PV {pv_wh:>7.1} Wh   WT {wt_wh:>7.1} Wh   harvested total {:>7.1} Wh",
            ledger.total_harvested_wh()
        );
    }
}
