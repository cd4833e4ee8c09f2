//! Fixed-wing propulsion power as a function of cruise speed, with the
//! analytic minimum-power speed marked.
//!
//! Run with: cargo run --example fixed_wing_sweep

use uav_energy::atmosphere::AirState;
use uav_energy::uav_power::{
    fixed_wing_power, presets, FixedWingCoefficients, KinematicState,
};

fn main() {
    let air = AirState {
        density: 1.225,
        temperature: 288.15,
    };
    let mass = presets::mass_budget(true, true);
    let params = presets::fixed_wing();
    let coeffs = FixedWingCoefficients::new(&mass, &air, &params);

    println!("c1 = {:.6}, c2 = {:.3}", coeffs.c1, coeffs.c2);
    println!("{:>8} {:>10}", "v [m/s]", "P [W]");
    for v in (2..=40).step_by(2) {
        let p = fixed_wing_power(&KinematicState::cruise(v as f64), &mass, &air, &params)
            .expect("v > 0");
        println!("{v:>8} {p:>10.2}");
    }

    let v_star = coeffs.optimal_speed();
    let p_star =
        fixed_wing_power(&KinematicState::cruise(v_star), &mass, &air, &params).unwrap();
    println!("\nminimum-power speed v* = {v_star:.2} m/s, P(v*) = {p_star:.2} W");
}
