//! Multirotor hover power across the four equipment cases.
//!
//! Run with: cargo run --example hover_power

use uav_energy::atmosphere::AirState;
use uav_energy::scenario::EquipmentCase;
use uav_energy::uav_power::{multirotor_power, presets, KinematicState};

fn main() {
    let air = AirState {
        density: 1.225,
        temperature: 288.15,
    };
    let params = presets::multirotor();
    let state = KinematicState::hover(presets::MULTIROTOR_ROTOR_SPEED);

    println!("{:<10} {:>10} {:>12}", "case", "mass [kg]", "hover [W]");
    let mut baseline = None;
    for case in EquipmentCase::ALL {
        let mass = case.apply(&presets::mass_budget(false, false));
        let power = multirotor_power(&state, &mass, &air, &params).expect("valid hover state");
        let note = match baseline {
            None => {
                baseline = Some(power);
                String::new()
            }
            Some(base) => format!("  ({:.2}x the bare platform)", power / base),
        };
        println!(
            "{:<10} {:>10.2} {:>12.1}{note}",
            case.label(),
            mass.total_mass(),
            power
        );
    }
}
