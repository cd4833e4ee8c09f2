//! Payload power breakdown: reflecting-surface array plus transceiver,
//! with the non-trivial coefficient preset enabled for comparison.
//!
//! Run with: cargo run --example payload_budget

use uav_energy::payload_power::{
    mimo_power, payload_power_total, IrsConfig, MimoCoefficients, MimoConfig,
};

fn main() {
    let irs = IrsConfig::default();
    let mimo = MimoConfig::default();

    let payload = payload_power_total(&irs, &mimo).expect("valid payload configs");
    println!("reflecting surface ({} elements, {}-bit shifters):", irs.element_count, irs.bit_resolution);
    println!("  {:.1} W", payload.irs);
    println!("transceiver (zero component coefficients):");
    println!("  amplifier  {:.3} W", payload.mimo.power_amplifier);
    println!("  total      {:.3} W", payload.mimo.total);
    println!("payload total: {:.3} W\n", payload.total);

    let rich = MimoConfig {
        component_coeffs: MimoCoefficients::massive_mimo_ref(),
        ..mimo
    };
    let bd = mimo_power(&rich).expect("valid transceiver config");
    println!("transceiver with the 'massive-mimo-ref' coefficient preset:");
    println!("  fixed              {:>8.3} W", bd.fixed);
    println!("  transceiver chains {:>8.3} W", bd.transceiver_chains);
    println!("  channel estimation {:>8.3} W", bd.channel_estimation);
    println!("  coding/decoding    {:>8.3} W", bd.coding_decoding);
    println!("  backhaul           {:>8.3} W", bd.backhaul);
    println!("  signal processing  {:>8.3} W", bd.signal_processing);
    println!("  power amplifier    {:>8.3} W", bd.power_amplifier);
    println!("  total              {:>8.3} W", bd.total);
}
