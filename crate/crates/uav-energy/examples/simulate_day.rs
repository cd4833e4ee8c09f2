//! One full engine run: hourly ledger for a multirotor with both
//! generators fitted on the spring fixture day.
//!
//! Run with: cargo run --example simulate_day

use chrono::Duration;
use uav_energy::config::{PlatformKind, ScenarioConfig};
use uav_energy::scenario::{simulate, EquipmentCase};
use uav_energy::weather_csv::parse_weather_csv;

fn main() {
    let config = ScenarioConfig::table1();
    let inputs = config
        .simulation_inputs(PlatformKind::Multirotor, EquipmentCase::PvAndWt, None, false)
        .expect("builtin preset");
    let path = format!(
        "{}/fixtures/weather_spring.csv",
        env!("CARGO_MANIFEST_DIR")
    );
    let weather = parse_weather_csv(&path).expect("fixture parses");
    let ledger = simulate(&inputs, &weather, Duration::hours(1)).expect("grid is uniform");

    println!(
        "{:<6} {:>10} {:>8} {:>8} {:>8} {:>10}",
        "hour", "propulsion", "payload", "pv", "wt", "net [W]"
    );
    for (hour, r) in ledger.records.iter().enumerate() {
        println!(
            "{hour:<6} {:>10.1} {:>8.1} {:>8.2} {:>8.2} {:>10.1}",
            r.power.propulsion,
            r.power.mimo + r.power.irs,
            r.harvest.pv,
            r.harvest.wt,
            r.net_power
        );
    }
    println!(
        "\nday totals: consumed {:.1} Wh, harvested {:.1} Wh, balance {:.1} Wh",
        ledger.total_consumed_wh(),
        ledger.total_harvested_wh(),
        ledger.total_harvested_wh() - ledger.total_consumed_wh()
    );
}
