//! Optional battery extension: clipped state-of-charge ledger over a windy
//! winter day, reporting spilled and unmet energy.
//!
//! Run with: cargo run --example battery_ledger

use chrono::Duration;
use uav_energy::config::{PlatformKind, ScenarioConfig};
use uav_energy::scenario::{simulate, BatteryConfig, EquipmentCase};
use uav_energy::weather_csv::parse_weather_csv;

fn main() {
    let mut config = ScenarioConfig::table1();
    config.battery = Some(BatteryConfig {
        capacity_wh: 500.0,
        initial_soc_wh: 400.0,
        charge_efficiency: 0.95,
        discharge_efficiency: 0.95,
    });
    let inputs = config
        .simulation_inputs(PlatformKind::FixedWing, EquipmentCase::PvAndWt, None, true)
        .expect("builtin preset");
    let path = format!(
        "{}/fixtures/weather_winter.csv",
        env!("CARGO_MANIFEST_DIR")
    );
    let weather = parse_weather_csv(&path).expect("fixture parses");
    let ledger = simulate(&inputs, &weather, Duration::hours(1)).expect("grid is uniform");

    println!("{:<6} {:>10} {:>12}", "hour", "net [W]", "soc [Wh]");
    for (hour, r) in ledger.records.iter().enumerate() {
        println!(
            "{hour:<6} {:>10.1} {:>12.1}",
            r.net_power,
            r.battery_soc_wh.unwrap()
        );
    }
    println!(
        "\nspilled {:.1} Wh, unmet {:.1} Wh",
        ledger.spilled_wh, ledger.unmet_wh
    );
}
