//! Time-stepped simulation engine.
//!
//! Walks a weather series, derives the environment per step, evaluates
//! consumption and harvest, and folds everything into an energy ledger.
//! Each run is a pure function of its inputs; runs over the case grid are
//! independent of one another.

use chrono::{DateTime, Duration, FixedOffset};
use serde::{Deserialize, Serialize};

use crate::atmosphere::{
    self, AtmosphereParams, SiteConfig, WeatherSample,
};
use crate::error::{ConfigError, ModelError};
use crate::payload_power::{self, IrsConfig, MimoConfig};
use crate::res_harvest::{self, PvConfig, WtConfig};
use crate::uav_power::{self, KinematicState, MassBudget, PlatformVariant};

/// Complete description of one airborne platform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlatformConfig {
    pub variant: PlatformVariant,
    pub mass: MassBudget,
    pub kinematics: KinematicState,
    pub site: SiteConfig,
    #[serde(default)]
    pub atmosphere: AtmosphereParams,
}

impl PlatformConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.mass.validate()?;
        self.site.validate()?;
        match &self.variant {
            PlatformVariant::Multirotor(p) => {
                p.validate()?;
                if !(self.kinematics.rotor_angular_velocity > 0.0) {
                    return Err(ConfigError::InvalidField {
                        field: "rotor_angular_velocity",
                        reason: "multirotor requires a positive rotor speed".into(),
                    });
                }
            }
            PlatformVariant::FixedWing(p) => {
                p.validate()?;
                if !(self.kinematics.velocity > 0.0) {
                    return Err(ConfigError::InvalidField {
                        field: "velocity",
                        reason: "fixed-wing requires velocity > 0".into(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// The four equipment cases of the study grid: which renewable generators
/// are carried (and therefore both weigh the platform down and harvest).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquipmentCase {
    None,
    PvOnly,
    WtOnly,
    PvAndWt,
}

impl EquipmentCase {
    pub const ALL: [EquipmentCase; 4] = [
        EquipmentCase::None,
        EquipmentCase::PvOnly,
        EquipmentCase::WtOnly,
        EquipmentCase::PvAndWt,
    ];

    pub fn pv_fitted(&self) -> bool {
        matches!(self, EquipmentCase::PvOnly | EquipmentCase::PvAndWt)
    }

    pub fn wt_fitted(&self) -> bool {
        matches!(self, EquipmentCase::WtOnly | EquipmentCase::PvAndWt)
    }

    /// Mass budget with the fitted flags forced to agree with this case.
    pub fn apply(&self, mass: &MassBudget) -> MassBudget {
        MassBudget {
            pv_fitted: self.pv_fitted(),
            wt_fitted: self.wt_fitted(),
            ..*mass
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            EquipmentCase::None => "none",
            EquipmentCase::PvOnly => "pv-only",
            EquipmentCase::WtOnly => "wt-only",
            EquipmentCase::PvAndWt => "pv-and-wt",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Some(EquipmentCase::None),
            "pv-only" | "pv" => Some(EquipmentCase::PvOnly),
            "wt-only" | "wt" => Some(EquipmentCase::WtOnly),
            "pv-and-wt" | "both" => Some(EquipmentCase::PvAndWt),
            _ => None,
        }
    }
}

/// Per-step consumption split, W.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerBreakdown {
    pub propulsion: f64,
    pub mimo: f64,
    pub irs: f64,
    pub total_consumption: f64,
}

/// Per-step generation split, W.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarvestBreakdown {
    pub pv: f64,
    pub wt: f64,
    pub total_harvest: f64,
}

/// One ledger row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerRecord {
    pub timestamp: DateTime<FixedOffset>,
    pub power: PowerBreakdown,
    pub harvest: HarvestBreakdown,
    /// total_harvest − total_consumption, W.
    pub net_power: f64,
    pub cumulative_consumed_wh: f64,
    pub cumulative_harvested_wh: f64,
    pub battery_soc_wh: Option<f64>,
}

/// Time-indexed outcome of one simulation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyLedger {
    pub records: Vec<LedgerRecord>,
    pub step: Duration,
    /// Energy the battery could not absorb, Wh (battery runs only).
    pub spilled_wh: f64,
    /// Deficit the battery could not cover, Wh (battery runs only).
    pub unmet_wh: f64,
}

impl EnergyLedger {
    pub fn consumption_series(&self) -> Vec<f64> {
        self.records
            .iter()
            .map(|r| r.power.total_consumption)
            .collect()
    }

    pub fn pv_series(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.harvest.pv).collect()
    }

    pub fn wt_series(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.harvest.wt).collect()
    }

    pub fn total_consumed_wh(&self) -> f64 {
        self.records
            .last()
            .map_or(0.0, |r| r.cumulative_consumed_wh)
    }

    pub fn total_harvested_wh(&self) -> f64 {
        self.records
            .last()
            .map_or(0.0, |r| r.cumulative_harvested_wh)
    }
}

/// Optional clipped state-of-charge model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BatteryConfig {
    pub capacity_wh: f64,
    pub initial_soc_wh: f64,
    pub charge_efficiency: f64,
    pub discharge_efficiency: f64,
}

impl BatteryConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.capacity_wh > 0.0) {
            return Err(ConfigError::InvalidField {
                field: "capacity_wh",
                reason: format!("must be > 0, got {}", self.capacity_wh),
            });
        }
        if !(0.0..=self.capacity_wh).contains(&self.initial_soc_wh) {
            return Err(ConfigError::InvalidField {
                field: "initial_soc_wh",
                reason: "must lie in [0, capacity]".into(),
            });
        }
        for (field, v) in [
            ("charge_efficiency", self.charge_efficiency),
            ("discharge_efficiency", self.discharge_efficiency),
        ] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(ConfigError::InvalidField {
                    field,
                    reason: format!("must be in (0, 1], got {v}"),
                });
            }
        }
        Ok(())
    }
}

/// Outcome of one battery step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatteryStep {
    pub soc_wh: f64,
    /// Surplus the full battery could not absorb, Wh.
    pub spilled_wh: f64,
    /// Deficit the empty battery could not cover, Wh.
    pub unmet_wh: f64,
}

/// Advance the state of charge by one step of net power.
///
/// Charging applies the charge efficiency to the absorbed energy;
/// discharging draws net·dt / discharge_efficiency from the store. The
/// state is clamped to [0, capacity] with overflow and shortfall reported.
pub fn battery_step(
    soc_wh: f64,
    net_power_w: f64,
    dt: Duration,
    capacity_wh: f64,
    charge_eff: f64,
    discharge_eff: f64,
) -> BatteryStep {
    let dt_h = dt.num_milliseconds() as f64 / 3.6e6;
    let delta = if net_power_w >= 0.0 {
        net_power_w * dt_h * charge_eff
    } else {
        net_power_w * dt_h / discharge_eff
    };
    let unclamped = soc_wh + delta;
    let soc = unclamped.clamp(0.0, capacity_wh);
    BatteryStep {
        soc_wh: soc,
        spilled_wh: (unclamped - capacity_wh).max(0.0),
        unmet_wh: (-unclamped).max(0.0),
    }
}

/// Everything the engine needs besides the weather.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationInputs {
    pub platform: PlatformConfig,
    pub case: EquipmentCase,
    pub irs: IrsConfig,
    pub mimo: MimoConfig,
    pub pv: PvConfig,
    pub wt: WtConfig,
    pub battery: Option<BatteryConfig>,
}

fn check_weather_grid(weather: &[WeatherSample], step: Duration) -> Result<(), ModelError> {
    if weather.is_empty() {
        return Err(ModelError::EmptyWeather);
    }
    let expected_s = step.num_seconds();
    for (i, pair) in weather.windows(2).enumerate() {
        let gap = pair[1].timestamp.signed_duration_since(pair[0].timestamp);
        let gap_s = gap.num_seconds();
        if gap_s <= 0 {
            return Err(ModelError::NonMonotoneWeather(i + 1));
        }
        if gap_s != expected_s {
            return Err(ModelError::NonUniformSpacing {
                index: i + 1,
                actual_s: gap_s,
                expected_s,
            });
        }
    }
    Ok(())
}

/// Run the engine over a uniformly spaced weather series.
///
/// Per step: atmosphere, then propulsion with the case-adjusted mass, then
/// payload, then harvest from the fitted generators only, then the ledger
/// fold with left-rectangle energy integration.
pub fn simulate(
    inputs: &SimulationInputs,
    weather: &[WeatherSample],
    step: Duration,
) -> Result<EnergyLedger, ModelError> {
    check_weather_grid(weather, step)?;
    let platform = &inputs.platform;
    let mass = inputs.case.apply(&platform.mass);
    let payload = payload_power::payload_power_total(&inputs.irs, &inputs.mimo)?;

    let dt_h = step.num_milliseconds() as f64 / 3.6e6;
    let mut records = Vec::with_capacity(weather.len());
    let mut consumed_wh = 0.0;
    let mut harvested_wh = 0.0;
    let mut soc = inputs.battery.map(|b| b.initial_soc_wh);
    let mut spilled_wh = 0.0;
    let mut unmet_wh = 0.0;

    for sample in weather {
        let air = atmosphere::air_density(sample)?;
        let propulsion =
            uav_power::propulsion_power(&platform.variant, &platform.kinematics, &mass, &air)?;

        let pv = if inputs.case.pv_fitted() {
            let g_t = atmosphere::solar_irradiance(sample, &platform.site, &platform.atmosphere);
            let t_cell = atmosphere::pv_cell_temperature(sample, g_t, &platform.atmosphere);
            res_harvest::pv_power(&inputs.pv, g_t, t_cell)
        } else {
            0.0
        };
        let wt = if inputs.case.wt_fitted() {
            let v_hub = atmosphere::wind_at_height(sample, &platform.site)?;
            res_harvest::wt_power(&inputs.wt, v_hub, &air)
        } else {
            0.0
        };

        let power = PowerBreakdown {
            propulsion,
            mimo: payload.mimo.total,
            irs: payload.irs,
            total_consumption: propulsion + payload.mimo.total + payload.irs,
        };
        let harvest = HarvestBreakdown {
            pv,
            wt,
            total_harvest: pv + wt,
        };
        let net_power = harvest.total_harvest - power.total_consumption;
        consumed_wh += power.total_consumption * dt_h;
        harvested_wh += harvest.total_harvest * dt_h;

        if let (Some(state), Some(batt)) = (soc, inputs.battery.as_ref()) {
            let out = battery_step(
                state,
                net_power,
                step,
                batt.capacity_wh,
                batt.charge_efficiency,
                batt.discharge_efficiency,
            );
            soc = Some(out.soc_wh);
            spilled_wh += out.spilled_wh;
            unmet_wh += out.unmet_wh;
        }

        records.push(LedgerRecord {
            timestamp: sample.timestamp,
            power,
            harvest,
            net_power,
            cumulative_consumed_wh: consumed_wh,
            cumulative_harvested_wh: harvested_wh,
            battery_soc_wh: soc,
        });
    }

    Ok(EnergyLedger {
        records,
        step,
        spilled_wh,
        unmet_wh,
    })
}

/// Scale a series by its maximum. An all-zero (or all non-positive)
/// series maps to itself unchanged.
pub fn normalize_series(values: &[f64]) -> Vec<f64> {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(max > 0.0) {
        return values.to_vec();
    }
    values.iter().map(|v| v / max).collect()
}

/// Normalize several series by the maximum across the whole group, the
/// per-study-case scaling used for the seasonal charts.
pub fn normalize_group(group: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let max = group
        .iter()
        .flat_map(|s| s.iter().cloned())
        .fold(f64::NEG_INFINITY, f64::max);
    if !(max > 0.0) {
        return group.to_vec();
    }
    group
        .iter()
        .map(|s| s.iter().map(|v| v / max).collect())
        .collect()
}

/// One of the four seasonal study dates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeasonPreset {
    pub name: &'static str,
    /// Local calendar date, ISO format.
    pub date: &'static str,
    pub site: SiteConfig,
}

/// The four season-starting dates of the study year, anchored to the
/// Poznan site. Weather series for these days are user-supplied.
pub fn seasonal_presets() -> Vec<SeasonPreset> {
    let site = SiteConfig {
        latitude: 52.4064,
        longitude: 16.9252,
        altitude_agl: 50.0,
        ref_height: 10.0,
        roughness_length: 0.1,
    };
    vec![
        SeasonPreset {
            name: "spring",
            date: "2022-03-20",
            site: site.clone(),
        },
        SeasonPreset {
            name: "summer",
            date: "2022-06-21",
            site: site.clone(),
        },
        SeasonPreset {
            name: "autumn",
            date: "2022-09-23",
            site: site.clone(),
        },
        SeasonPreset {
            name: "winter",
            date: "2022-12-21",
            site,
        },
    ]
}
