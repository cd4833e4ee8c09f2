//! Derived environment over one fixture day: air density, hub-height wind,
//! plane-of-array irradiance, and PV cell temperature.
//!
//! Run with: cargo run --example environment_day

use uav_energy::atmosphere::{
    air_density, pv_cell_temperature, solar_irradiance, wind_at_height, AtmosphereParams,
};
use uav_energy::scenario::seasonal_presets;
use uav_energy::weather_csv::parse_weather_csv;

fn main() {
    let path = format!(
        "{}/fixtures/weather_summer.csv",
        env!("CARGO_MANIFEST_DIR")
    );
    let samples = parse_weather_csv(&path).expect("fixture parses");
    let site = seasonal_presets()
        .into_iter()
        .find(|p| p.name == "summer")
        .unwrap()
        .site;
    let params = AtmosphereParams::default();

    println!(
        "{:<6} {:>10} {:>10} {:>10} {:>10}",
        "hour", "rho", "v_hub", "G_T", "T_cell"
    );
    for (hour, sample) in samples.iter().enumerate() {
        let air = air_density(sample).expect("finite sample");
        let v_hub = wind_at_height(sample, &site).expect("valid site");
        let g_t = solar_irradiance(sample, &site, &params);
        let t_cell = pv_cell_temperature(sample, g_t, &params);
        println!(
            "{hour:<6} {:>10.4} {:>10.2} {:>10.1} {:>10.1}",
            air.density, v_hub, g_t, t_cell
        );
    }
}
