//! Deterministic, weather-driven energy-budget simulator for UAV-mounted
//! wireless base stations.
//!
//! The crate models both sides of the airborne energy ledger:
//!
//! * consumption — propulsion for multirotor and fixed-wing platforms
//!   ([`uav_power`]), plus the communications payload: a reflecting-surface
//!   phase-shifter array and a multi-antenna transceiver ([`payload_power`]);
//! * harvest — a photovoltaic panel and a small wind turbine
//!   ([`res_harvest`]), driven by the physical environment derived from
//!   weather samples ([`atmosphere`]).
//!
//! The [`scenario`] engine walks a weather time series, evaluates both
//! sides per step, and folds the result into an [`scenario::EnergyLedger`].
//! [`config`] defines the TOML scenario format (with the builtin `table1`
//! preset), [`weather_csv`] the weather ingestion schema, [`report`] the
//! CSV/SVG outputs, and [`cli`] the `simulate` / `validate` / `presets`
//! command-line surface.
//!
//! See the crate's `examples/` directory for one runnable program per
//! major capability.

pub mod atmosphere;
pub mod cli;
pub mod config;
pub mod error;
pub mod payload_power;
pub mod report;
pub mod res_harvest;
pub mod scenario;
pub mod uav_power;
pub mod weather_csv;

pub use atmosphere::{AirState, AtmosphereParams, SiteConfig, WeatherSample};
pub use config::{PlatformKind, ScenarioConfig};
pub use error::{ConfigError, ModelError, WeatherError};
pub use payload_power::{IrsConfig, MimoConfig};
pub use res_harvest::{PvConfig, WtConfig};
pub use scenario::{
    EnergyLedger, EquipmentCase, HarvestBreakdown, PlatformConfig, PowerBreakdown,
    SimulationInputs,
};
pub use uav_power::{KinematicState, MassBudget, PlatformVariant};
