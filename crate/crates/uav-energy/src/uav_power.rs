//! Propulsion power models for the two UAV platform types.
//!
//! The fixed-wing model is the cubic-plus-induced-drag form
//! P = |c1 v³ + (c2/v)(1 + a⊥²/g²) + m·a∥·v|; the multirotor model sums
//! blade-profile, induced, and parasite terms, with the induced term
//! evaluated through its conjugate form to avoid cancellation at speed.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::atmosphere::AirState;
use crate::error::{ConfigError, ModelError};

/// Component masses of the airframe and everything bolted to it, kg.
///
/// The renewable generators only count toward the total when fitted, so one
/// budget describes all four equipment cases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassBudget {
    pub m_uav: f64,
    pub m_batt: f64,
    pub m_rf: f64,
    pub m_irs: f64,
    pub m_pv: f64,
    pub m_wt: f64,
    pub m_pkg: f64,
    pub pv_fitted: bool,
    pub wt_fitted: bool,
}

impl MassBudget {
    /// Total airborne mass, kg.
    pub fn total_mass(&self) -> f64 {
        let mut total = self.m_uav + self.m_batt + self.m_rf + self.m_irs + self.m_pkg;
        if self.pv_fitted {
            total += self.m_pv;
        }
        if self.wt_fitted {
            total += self.m_wt;
        }
        total
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        for (field, v) in [
            ("m_uav", self.m_uav),
            ("m_batt", self.m_batt),
            ("m_rf", self.m_rf),
            ("m_irs", self.m_irs),
            ("m_pv", self.m_pv),
            ("m_wt", self.m_wt),
            ("m_pkg", self.m_pkg),
        ] {
            if !(v >= 0.0) {
                return Err(ConfigError::InvalidField {
                    field,
                    reason: format!("mass must be >= 0, got {v}"),
                });
            }
        }
        if !(self.total_mass() > 0.0) {
            return Err(ConfigError::InvalidField {
                field: "total_mass",
                reason: "total mass must be > 0".into(),
            });
        }
        Ok(())
    }
}

/// Kinematic state of the platform at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KinematicState {
    /// Forward flight velocity, m/s.
    pub velocity: f64,
    /// Forward acceleration, m/s².
    pub accel_forward: f64,
    /// Centripetal acceleration on a circular trajectory, m/s².
    pub accel_centripetal: f64,
    /// Rotor angular velocity, rad/s (multirotor only).
    pub rotor_angular_velocity: f64,
}

impl KinematicState {
    /// Hover with rotors at the given angular velocity.
    pub fn hover(rotor_angular_velocity: f64) -> Self {
        Self {
            velocity: 0.0,
            accel_forward: 0.0,
            accel_centripetal: 0.0,
            rotor_angular_velocity,
        }
    }

    /// Level unaccelerated flight at the given speed.
    pub fn cruise(velocity: f64) -> Self {
        Self {
            velocity,
            accel_forward: 0.0,
            accel_centripetal: 0.0,
            rotor_angular_velocity: 0.0,
        }
    }
}

/// Fixed-wing aerodynamic parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FixedWingParams {
    /// Zero-lift drag coefficient.
    pub c_d0: f64,
    /// Oswald (wingspan) efficiency.
    pub e0: f64,
    /// Wing aspect ratio.
    pub aspect_ratio: f64,
    /// Reference wing area, m².
    pub wing_area: f64,
    /// Gravitational acceleration, m/s².
    pub g: f64,
}

impl FixedWingParams {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (field, v) in [
            ("c_d0", self.c_d0),
            ("e0", self.e0),
            ("aspect_ratio", self.aspect_ratio),
            ("wing_area", self.wing_area),
            ("g", self.g),
        ] {
            if !(v > 0.0) {
                return Err(ConfigError::InvalidField {
                    field,
                    reason: format!("must be > 0, got {v}"),
                });
            }
        }
        if self.e0 > 1.0 {
            return Err(ConfigError::InvalidField {
                field: "e0",
                reason: format!("Oswald efficiency must be in (0, 1], got {}", self.e0),
            });
        }
        Ok(())
    }
}

/// Which reading of the induced-power formula to evaluate.
///
/// The square-root form is consistent with the hover induced velocity
/// v0 = sqrt(W / (2 rho A)); the as-printed form keeps the radicand
/// un-rooted and is retained for audit only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InducedPowerForm {
    #[default]
    SquareRoot,
    AsPrinted,
}

/// Multirotor rotor and drag parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultirotorParams {
    /// Profile drag coefficient (delta).
    pub profile_drag: f64,
    /// Incremental correction factor to induced power (k).
    pub induced_correction: f64,
    /// Thrust-to-weight ratio (kappa-tilde).
    pub thrust_to_weight: f64,
    /// Fuselage drag ratio (d0).
    pub fuselage_drag_ratio: f64,
    /// Disc area of a single rotor, m².
    pub rotor_area: f64,
    /// Rotor radius, m.
    pub rotor_radius: f64,
    /// Rotor solidity.
    pub rotor_solidity: f64,
    /// Number of rotors.
    pub rotor_count: u32,
    /// Gravitational acceleration, m/s².
    pub g: f64,
    #[serde(default)]
    pub induced_power_form: InducedPowerForm,
}

impl MultirotorParams {
    pub fn validate(&self) -> Result<(), ConfigError> {
        for (field, v) in [
            ("profile_drag", self.profile_drag),
            ("induced_correction", self.induced_correction),
            ("thrust_to_weight", self.thrust_to_weight),
            ("fuselage_drag_ratio", self.fuselage_drag_ratio),
            ("rotor_area", self.rotor_area),
            ("rotor_radius", self.rotor_radius),
            ("rotor_solidity", self.rotor_solidity),
            ("g", self.g),
        ] {
            if !(v > 0.0) {
                return Err(ConfigError::InvalidField {
                    field,
                    reason: format!("must be > 0, got {v}"),
                });
            }
        }
        if self.rotor_count < 1 {
            return Err(ConfigError::InvalidField {
                field: "rotor_count",
                reason: "at least one rotor required".into(),
            });
        }
        Ok(())
    }
}

/// Drag coefficients of the fixed-wing power polynomial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedWingCoefficients {
    /// Parasite-drag coefficient, multiplies v³.
    pub c1: f64,
    /// Induced-drag coefficient, divides by v.
    pub c2: f64,
}

impl FixedWingCoefficients {
    pub fn new(mass: &MassBudget, air: &AirState, params: &FixedWingParams) -> Self {
        let weight = mass.total_mass() * params.g;
        let c1 = 0.5 * air.density * params.c_d0 * params.wing_area;
        let c2 = 2.0 * weight * weight
            / (PI * params.e0 * params.aspect_ratio * air.density * params.wing_area);
        Self { c1, c2 }
    }

    /// Speed minimizing level-flight power: v* = (c2 / 3c1)^(1/4).
    pub fn optimal_speed(&self) -> f64 {
        (self.c2 / (3.0 * self.c1)).powf(0.25)
    }
}

/// Instantaneous fixed-wing propulsion power, W.
pub fn fixed_wing_power(
    state: &KinematicState,
    mass: &MassBudget,
    air: &AirState,
    params: &FixedWingParams,
) -> Result<f64, ModelError> {
    if state.velocity <= 0.0 {
        return Err(ModelError::FixedWingHover);
    }
    if !(air.density > 0.0) {
        return Err(ModelError::NonPositiveDensity(air.density));
    }
    let coeffs = FixedWingCoefficients::new(mass, air, params);
    let v = state.velocity;
    let turn_factor = 1.0 + state.accel_centripetal.powi(2) / params.g.powi(2);
    let power = coeffs.c1 * v.powi(3)
        + coeffs.c2 / v * turn_factor
        + mass.total_mass() * state.accel_forward * v;
    Ok(power.abs())
}

/// Blade-profile and induced hover powers, W.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotorPowers {
    pub profile: f64,
    pub induced: f64,
    /// Mean induced velocity in hover, m/s.
    pub hover_induced_velocity: f64,
}

impl RotorPowers {
    pub fn new(
        mass: &MassBudget,
        air: &AirState,
        params: &MultirotorParams,
        omega: f64,
    ) -> Self {
        let weight = mass.total_mass() * params.g;
        let n = params.rotor_count as f64;
        let profile = params.profile_drag / 8.0
            * air.density
            * n
            * params.rotor_solidity
            * params.rotor_area
            * omega.powi(3)
            * params.rotor_radius.powi(3);
        let radicand = weight.powi(3) / (2.0 * air.density * n * params.rotor_area);
        let induced = (1.0 + params.induced_correction)
            * match params.induced_power_form {
                InducedPowerForm::SquareRoot => radicand.sqrt(),
                InducedPowerForm::AsPrinted => radicand,
            };
        let hover_induced_velocity = (weight / (2.0 * air.density * params.rotor_area)).sqrt();
        Self {
            profile,
            induced,
            hover_induced_velocity,
        }
    }
}

/// Instantaneous multirotor propulsion power, W.
pub fn multirotor_power(
    state: &KinematicState,
    mass: &MassBudget,
    air: &AirState,
    params: &MultirotorParams,
) -> Result<f64, ModelError> {
    if !(air.density > 0.0) {
        return Err(ModelError::NonPositiveDensity(air.density));
    }
    let omega = state.rotor_angular_velocity;
    if !(omega > 0.0) {
        return Err(ModelError::NonPositiveRotorSpeed(omega));
    }
    let v = state.velocity;
    let n = params.rotor_count as f64;
    let rotors = RotorPowers::new(mass, air, params, omega);
    let v0 = rotors.hover_induced_velocity;
    let kappa = params.thrust_to_weight;

    let parasite = params.fuselage_drag_ratio / 2.0
        * air.density
        * n
        * params.rotor_solidity
        * params.rotor_area
        * v.powi(3);
    let blade = rotors.profile
        * (1.0 + 3.0 * v.powi(2) / (omega.powi(2) * params.rotor_radius.powi(2)));
    // Conjugate form of sqrt(kappa + v^4/4v0^4) - v^2/2v0^2; the direct
    // difference cancels catastrophically at high advance ratios.
    let half_ratio = v.powi(2) / (2.0 * v0.powi(2));
    let root = (kappa + half_ratio * half_ratio).sqrt();
    let inner = kappa / (root + half_ratio);
    let induced = rotors.induced * kappa * inner.sqrt();

    Ok(parasite + blade + induced)
}

/// Closed-form hover power P0 + Pi·kappa^(5/4), used as an algebraic check
/// against the general model at v = 0.
pub fn multirotor_hover_power(
    mass: &MassBudget,
    air: &AirState,
    params: &MultirotorParams,
    omega: f64,
) -> f64 {
    let rotors = RotorPowers::new(mass, air, params, omega);
    rotors.profile + rotors.induced * params.thrust_to_weight.powf(1.25)
}

/// Platform variant with its aerodynamic parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum PlatformVariant {
    Multirotor(MultirotorParams),
    FixedWing(FixedWingParams),
}

impl PlatformVariant {
    pub fn name(&self) -> &'static str {
        match self {
            PlatformVariant::Multirotor(_) => "multirotor",
            PlatformVariant::FixedWing(_) => "fixed-wing",
        }
    }
}

/// Dispatch to the model matching the platform variant.
pub fn propulsion_power(
    variant: &PlatformVariant,
    state: &KinematicState,
    mass: &MassBudget,
    air: &AirState,
) -> Result<f64, ModelError> {
    match variant {
        PlatformVariant::Multirotor(params) => multirotor_power(state, mass, air, params),
        PlatformVariant::FixedWing(params) => fixed_wing_power(state, mass, air, params),
    }
}

/// Table-derived default parameter presets.
pub mod presets {
    use super::*;

    pub const GRAVITY: f64 = 9.81;

    /// Reference mass budget: 5.0 kg airframe, 0.94 kg battery, 2.0 kg RF
    /// transceiver, 1.0 kg reflecting surface, 2.78 kg PV panel, 6.0 kg
    /// wind turbine, no extra package.
    pub fn mass_budget(pv_fitted: bool, wt_fitted: bool) -> MassBudget {
        MassBudget {
            m_uav: 5.0,
            m_batt: 0.94,
            m_rf: 2.0,
            m_irs: 1.0,
            m_pv: 2.78,
            m_wt: 6.0,
            m_pkg: 0.0,
            pv_fitted,
            wt_fitted,
        }
    }

    pub fn multirotor() -> MultirotorParams {
        MultirotorParams {
            profile_drag: 0.012,
            induced_correction: 0.1,
            thrust_to_weight: 1.0,
            fuselage_drag_ratio: 14.52,
            rotor_area: 0.071,
            rotor_radius: 0.15,
            rotor_solidity: 0.067,
            rotor_count: 8,
            g: GRAVITY,
            induced_power_form: InducedPowerForm::SquareRoot,
        }
    }

    pub fn fixed_wing() -> FixedWingParams {
        FixedWingParams {
            c_d0: 0.01,
            e0: 0.85,
            aspect_ratio: 118.81,
            wing_area: 1.0,
            g: GRAVITY,
        }
    }

    pub const MULTIROTOR_ROTOR_SPEED: f64 = 300.0;
    pub const FIXED_WING_CRUISE_SPEED: f64 = 10.0;
}
