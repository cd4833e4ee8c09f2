//! Scenario configuration file: one structured TOML document holding the
//! site, masses, platform parameters, payload, generator, and run
//! settings. The `table1` preset reproduces the reference parameter set
//! verbatim.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

use crate::atmosphere::{AtmosphereParams, SiteConfig};
use crate::error::ConfigError;
use crate::payload_power::{IrsConfig, MimoCoefficients, MimoConfig};
use crate::res_harvest::{PowerCurve, PvConfig, WtConfig};
use crate::scenario::{BatteryConfig, EquipmentCase, PlatformConfig, SimulationInputs};
use crate::uav_power::{
    FixedWingParams, InducedPowerForm, KinematicState, MassBudget, MultirotorParams,
    PlatformVariant,
};

/// Which platform a grid run evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlatformKind {
    Multirotor,
    FixedWing,
}

impl PlatformKind {
    pub const ALL: [PlatformKind; 2] = [PlatformKind::Multirotor, PlatformKind::FixedWing];

    pub fn label(&self) -> &'static str {
        match self {
            PlatformKind::Multirotor => "multirotor",
            PlatformKind::FixedWing => "fixed-wing",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "multirotor" | "mr" => Some(PlatformKind::Multirotor),
            "fixed-wing" | "fixedwing" | "fw" => Some(PlatformKind::FixedWing),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MassesSection {
    pub m_uav: f64,
    pub m_batt: f64,
    pub m_rf: f64,
    pub m_irs: f64,
    pub m_pv: f64,
    pub m_wt: f64,
    pub m_pkg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultirotorSection {
    pub profile_drag: f64,
    pub induced_correction: f64,
    pub thrust_to_weight: f64,
    pub fuselage_drag_ratio: f64,
    pub rotor_area: f64,
    pub rotor_radius: f64,
    pub rotor_solidity: f64,
    pub rotor_count: u32,
    pub rotor_angular_velocity: f64,
    #[serde(default)]
    pub velocity: f64,
    #[serde(default)]
    pub induced_power_form: InducedPowerForm,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedWingSection {
    pub c_d0: f64,
    pub e0: f64,
    pub aspect_ratio: f64,
    pub wing_area: f64,
    pub velocity: f64,
    #[serde(default)]
    pub accel_forward: f64,
    #[serde(default)]
    pub accel_centripetal: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrsSection {
    pub element_count: u32,
    pub bit_resolution: u32,
    /// TOML table keys are strings; converted to bit counts at load.
    pub shifter_power_table: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MimoSection {
    pub antennas: u32,
    pub users: u32,
    pub tr_ul: f64,
    pub tr_dl: f64,
    #[serde(default)]
    pub p_fix: f64,
    pub p_tx: f64,
    pub pa_efficiency: f64,
    /// Named coefficient preset; ignored when `coeffs` is given inline.
    #[serde(default)]
    pub coeff_preset: Option<String>,
    #[serde(default)]
    pub coeffs: Option<MimoCoefficients>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PayloadSection {
    pub irs: IrsSection,
    pub mimo: MimoSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WtSection {
    pub cut_in: f64,
    pub rated_speed: f64,
    pub cut_out: f64,
    pub rated_power: f64,
    pub rho_ref: f64,
    /// Inline knot list; mutually exclusive with `power_curve_file`.
    #[serde(default)]
    pub power_curve: Option<Vec<[f64; 2]>>,
    /// CSV file with columns `wind_speed_mps,normalized_power`.
    #[serde(default)]
    pub power_curve_file: Option<String>,
}

fn default_step_minutes() -> u32 {
    60
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSection {
    #[serde(default = "default_step_minutes")]
    pub step_minutes: u32,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            step_minutes: default_step_minutes(),
        }
    }
}

/// Root of the scenario config document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub site: SiteConfig,
    #[serde(default)]
    pub atmosphere: AtmosphereParams,
    pub masses: MassesSection,
    #[serde(default)]
    pub multirotor: Option<MultirotorSection>,
    #[serde(default, rename = "fixed-wing")]
    pub fixed_wing: Option<FixedWingSection>,
    pub payload: PayloadSection,
    pub pv: PvConfig,
    pub wt: WtSection,
    #[serde(default)]
    pub battery: Option<BatteryConfig>,
    #[serde(default)]
    pub run: RunSection,
}

impl ScenarioConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path_str = path.as_ref().display().to_string();
        let text = std::fs::read_to_string(path.as_ref()).map_err(|source| ConfigError::Io {
            path: path_str.clone(),
            source,
        })?;
        let cfg: ScenarioConfig = toml::from_str(&text).map_err(|source| ConfigError::Parse {
            path: path_str,
            source: Box::new(source),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let cfg: ScenarioConfig = toml::from_str(text).map_err(|source| ConfigError::Parse {
            path: "<inline>".to_string(),
            source: Box::new(source),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// The reference parameter preset: all masses, both platform variants,
    /// payload ratings, and generator ratings at their canonical values.
    pub fn table1() -> Self {
        Self::from_toml_str(TABLE1_TOML).expect("builtin preset is well-formed")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.site.validate()?;
        self.mass_budget(EquipmentCase::PvAndWt).validate()?;
        self.irs_config()?.validate()?;
        self.mimo_config()?.validate()?;
        self.pv.validate()?;
        self.wt_config(None)?.validate()?;
        if let Some(batt) = &self.battery {
            batt.validate()?;
        }
        if self.run.step_minutes == 0 {
            return Err(ConfigError::InvalidField {
                field: "run.step_minutes",
                reason: "must be > 0".into(),
            });
        }
        if self.platforms().is_empty() {
            return Err(ConfigError::MissingVariantParams {
                variant: "any".into(),
                section: "multirotor or fixed-wing".into(),
            });
        }
        Ok(())
    }

    pub fn step(&self) -> chrono::Duration {
        chrono::Duration::minutes(self.run.step_minutes as i64)
    }

    pub fn platforms(&self) -> Vec<PlatformKind> {
        let mut kinds = Vec::new();
        if self.multirotor.is_some() {
            kinds.push(PlatformKind::Multirotor);
        }
        if self.fixed_wing.is_some() {
            kinds.push(PlatformKind::FixedWing);
        }
        kinds
    }

    pub fn mass_budget(&self, case: EquipmentCase) -> MassBudget {
        MassBudget {
            m_uav: self.masses.m_uav,
            m_batt: self.masses.m_batt,
            m_rf: self.masses.m_rf,
            m_irs: self.masses.m_irs,
            m_pv: self.masses.m_pv,
            m_wt: self.masses.m_wt,
            m_pkg: self.masses.m_pkg,
            pv_fitted: case.pv_fitted(),
            wt_fitted: case.wt_fitted(),
        }
    }

    pub fn irs_config(&self) -> Result<IrsConfig, ConfigError> {
        let mut table = BTreeMap::new();
        for (key, value) in &self.payload.irs.shifter_power_table {
            let bits: u32 = key.parse().map_err(|_| ConfigError::InvalidField {
                field: "payload.irs.shifter_power_table",
                reason: format!("key '{key}' is not a bit count"),
            })?;
            table.insert(bits, *value);
        }
        Ok(IrsConfig {
            element_count: self.payload.irs.element_count,
            bit_resolution: self.payload.irs.bit_resolution,
            shifter_power_table: table,
        })
    }

    pub fn mimo_config(&self) -> Result<MimoConfig, ConfigError> {
        let m = &self.payload.mimo;
        let coeffs = match (&m.coeffs, &m.coeff_preset) {
            (Some(inline), _) => *inline,
            (None, Some(name)) => MimoCoefficients::by_name(name)?,
            (None, None) => MimoCoefficients::zero(),
        };
        Ok(MimoConfig {
            antennas: m.antennas,
            users: m.users,
            tr_ul: m.tr_ul,
            tr_dl: m.tr_dl,
            p_fix: m.p_fix,
            p_tx: m.p_tx,
            pa_efficiency: m.pa_efficiency,
            component_coeffs: coeffs,
        })
    }

    /// Build the wind-turbine config, resolving a power-curve file path
    /// relative to `base_dir` when given.
    pub fn wt_config(&self, base_dir: Option<&Path>) -> Result<WtConfig, ConfigError> {
        let curve = match (&self.wt.power_curve, &self.wt.power_curve_file) {
            (Some(knots), _) => {
                PowerCurve::new(knots.iter().map(|[v, p]| (*v, *p)).collect())?
            }
            (None, Some(file)) => {
                let path = match base_dir {
                    Some(dir) => dir.join(file),
                    None => Path::new(file).to_path_buf(),
                };
                load_power_curve_csv(&path)?
            }
            (None, None) => PowerCurve::default_small_turbine(),
        };
        let cfg = WtConfig {
            cut_in: self.wt.cut_in,
            rated_speed: self.wt.rated_speed,
            cut_out: self.wt.cut_out,
            rated_power: self.wt.rated_power,
            power_curve: curve,
            rho_ref: self.wt.rho_ref,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn platform_config(
        &self,
        kind: PlatformKind,
        case: EquipmentCase,
    ) -> Result<PlatformConfig, ConfigError> {
        let mass = self.mass_budget(case);
        let (variant, kinematics) = match kind {
            PlatformKind::Multirotor => {
                let section = self.multirotor.as_ref().ok_or_else(|| {
                    ConfigError::MissingVariantParams {
                        variant: "multirotor".into(),
                        section: "multirotor".into(),
                    }
                })?;
                let params = MultirotorParams {
                    profile_drag: section.profile_drag,
                    induced_correction: section.induced_correction,
                    thrust_to_weight: section.thrust_to_weight,
                    fuselage_drag_ratio: section.fuselage_drag_ratio,
                    rotor_area: section.rotor_area,
                    rotor_radius: section.rotor_radius,
                    rotor_solidity: section.rotor_solidity,
                    rotor_count: section.rotor_count,
                    g: GRAVITY,
                    induced_power_form: section.induced_power_form,
                };
                let state = KinematicState {
                    velocity: section.velocity,
                    accel_forward: 0.0,
                    accel_centripetal: 0.0,
                    rotor_angular_velocity: section.rotor_angular_velocity,
                };
                (PlatformVariant::Multirotor(params), state)
            }
            PlatformKind::FixedWing => {
                let section = self.fixed_wing.as_ref().ok_or_else(|| {
                    ConfigError::MissingVariantParams {
                        variant: "fixed-wing".into(),
                        section: "fixed-wing".into(),
                    }
                })?;
                let params = FixedWingParams {
                    c_d0: section.c_d0,
                    e0: section.e0,
                    aspect_ratio: section.aspect_ratio,
                    wing_area: section.wing_area,
                    g: GRAVITY,
                };
                let state = KinematicState {
                    velocity: section.velocity,
                    accel_forward: section.accel_forward,
                    accel_centripetal: section.accel_centripetal,
                    rotor_angular_velocity: 0.0,
                };
                (PlatformVariant::FixedWing(params), state)
            }
        };
        // Kinematic preconditions (e.g. fixed-wing needs forward speed) are
        // left to PlatformConfig::validate / the engine, so a violation
        // surfaces as a model error rather than a config parse failure.
        Ok(PlatformConfig {
            variant,
            mass,
            kinematics,
            site: self.site.clone(),
            atmosphere: self.atmosphere.clone(),
        })
    }

    /// Assemble the full engine inputs for one grid cell.
    pub fn simulation_inputs(
        &self,
        kind: PlatformKind,
        case: EquipmentCase,
        base_dir: Option<&Path>,
        battery_enabled: bool,
    ) -> Result<SimulationInputs, ConfigError> {
        Ok(SimulationInputs {
            platform: self.platform_config(kind, case)?,
            case,
            irs: self.irs_config()?,
            mimo: self.mimo_config()?,
            pv: self.pv,
            wt: self.wt_config(base_dir)?,
            battery: if battery_enabled { self.battery } else { None },
        })
    }
}

const GRAVITY: f64 = 9.81;

/// Load a power curve from CSV with columns `wind_speed_mps,normalized_power`.
pub fn load_power_curve_csv(path: &Path) -> Result<PowerCurve, ConfigError> {
    let path_str = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path_str.clone(),
        source,
    })?;
    let mut knots = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            if line.trim() != "wind_speed_mps,normalized_power" {
                return Err(ConfigError::MalformedPowerCurve(format!(
                    "{path_str}: unexpected header '{line}'"
                )));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.splitn(2, ',');
        let parse = |s: Option<&str>| -> Result<f64, ConfigError> {
            s.and_then(|v| v.trim().parse::<f64>().ok())
                .ok_or_else(|| {
                    ConfigError::MalformedPowerCurve(format!("{path_str}: bad line '{line}'"))
                })
        };
        let v = parse(parts.next())?;
        let p = parse(parts.next())?;
        knots.push((v, p));
    }
    PowerCurve::new(knots)
}

/// The canonical reference scenario, serialized exactly as shipped.
pub const TABLE1_TOML: &str = r#"# Reference scenario: both platform variants, all four equipment cases.

[site]
latitude = 52.4064
longitude = 16.9252
altitude_agl = 50.0
ref_height = 10.0
roughness_length = 0.1

[atmosphere]
noct_c = 47.0
k_cloud = 0.75

[masses]
m_uav = 5.0
m_batt = 0.94
m_rf = 2.0
m_irs = 1.0
m_pv = 2.78
m_wt = 6.0
m_pkg = 0.0

[multirotor]
profile_drag = 0.012
induced_correction = 0.1
thrust_to_weight = 1.0
fuselage_drag_ratio = 14.52
rotor_area = 0.071
rotor_radius = 0.15
rotor_solidity = 0.067
rotor_count = 8
rotor_angular_velocity = 300.0
velocity = 0.0
induced_power_form = "square-root"

[fixed-wing]
c_d0 = 0.01
e0 = 0.85
aspect_ratio = 118.81
wing_area = 1.0
velocity = 10.0
accel_forward = 0.0
accel_centripetal = 0.0

[payload.irs]
element_count = 16
bit_resolution = 6

[payload.irs.shifter_power_table]
6 = 7.8

[payload.mimo]
antennas = 16
users = 10
tr_ul = 50.0
tr_dl = 100.0
p_fix = 0.0
p_tx = 15.0
pa_efficiency = 0.35
coeff_preset = "zero"

[pv]
rated_power = 20.0
derating = 0.72
temp_coeff = -0.5
g_stc = 1000.0
t_c_stc = 25.0

[wt]
cut_in = 2.0
rated_speed = 16.0
cut_out = 20.0
rated_power = 30.0
rho_ref = 1.225
power_curve = [
    [2.0, 0.0],
    [4.0, 0.04],
    [6.0, 0.13],
    [8.0, 0.29],
    [10.0, 0.52],
    [12.0, 0.76],
    [14.0, 0.92],
    [16.0, 1.0],
]

[run]
step_minutes = 60
"#;
