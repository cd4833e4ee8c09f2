//! Harvested power from the photovoltaic panel and the wind turbine.

use serde::{Deserialize, Serialize};

use crate::atmosphere::AirState;
use crate::error::ConfigError;

/// Photovoltaic panel parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PvConfig {
    /// Rated output under standard test conditions, W.
    pub rated_power: f64,
    /// Derating factor, fraction in (0, 1].
    pub derating: f64,
    /// Temperature coefficient of power, %/°C (typically negative).
    pub temp_coeff: f64,
    /// STC irradiance, W/m².
    pub g_stc: f64,
    /// STC cell temperature, °C.
    pub t_c_stc: f64,
}

impl Default for PvConfig {
    fn default() -> Self {
        Self {
            rated_power: 20.0,
            derating: 0.72,
            temp_coeff: -0.5,
            g_stc: 1000.0,
            t_c_stc: 25.0,
        }
    }
}

impl PvConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.rated_power >= 0.0) {
            return Err(ConfigError::InvalidField {
                field: "rated_power",
                reason: format!("must be >= 0, got {}", self.rated_power),
            });
        }
        if !(self.derating > 0.0 && self.derating <= 1.0) {
            return Err(ConfigError::InvalidField {
                field: "derating",
                reason: format!("must be in (0, 1], got {}", self.derating),
            });
        }
        if !(self.g_stc > 0.0) {
            return Err(ConfigError::InvalidField {
                field: "g_stc",
                reason: format!("must be > 0, got {}", self.g_stc),
            });
        }
        Ok(())
    }
}

/// PV output power, W.
///
/// P = P_r · f_PV · (G_T / G_STC) · [1 + alpha_P/100 · (T_c − T_STC)],
/// clamped below at zero. The temperature coefficient arrives in %/°C and
/// is converted to a fraction here.
pub fn pv_power(cfg: &PvConfig, g_t: f64, t_cell: f64) -> f64 {
    let temp_factor = 1.0 + cfg.temp_coeff / 100.0 * (t_cell - cfg.t_c_stc);
    let raw = cfg.rated_power * cfg.derating * (g_t / cfg.g_stc) * temp_factor;
    raw.max(0.0)
}

/// Normalized wind-turbine power curve: knots of (wind speed m/s, output
/// fraction), linearly interpolated. Validated at load: strictly increasing
/// speeds, 0 at cut-in, 1 at rated speed, non-decreasing in between.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PowerCurve {
    knots: Vec<(f64, f64)>,
}

impl PowerCurve {
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self, ConfigError> {
        if knots.len() < 2 {
            return Err(ConfigError::MalformedPowerCurve(
                "need at least two knots".into(),
            ));
        }
        for window in knots.windows(2) {
            let (v0, p0) = window[0];
            let (v1, p1) = window[1];
            if !(v1 > v0) {
                return Err(ConfigError::MalformedPowerCurve(format!(
                    "knot speeds must be strictly increasing ({v0} then {v1})"
                )));
            }
            if p1 < p0 {
                return Err(ConfigError::MalformedPowerCurve(format!(
                    "normalized output must be non-decreasing ({p0} then {p1})"
                )));
            }
        }
        for &(v, p) in &knots {
            if !v.is_finite() || !(0.0..=1.0).contains(&p) {
                return Err(ConfigError::MalformedPowerCurve(format!(
                    "knot ({v}, {p}) outside [0, 1] output range"
                )));
            }
        }
        Ok(Self { knots })
    }

    /// Generic small-turbine curve with cut-in at 2 m/s and rated output
    /// reached at 16 m/s.
    pub fn default_small_turbine() -> Self {
        Self::new(vec![
            (2.0, 0.0),
            (4.0, 0.04),
            (6.0, 0.13),
            (8.0, 0.29),
            (10.0, 0.52),
            (12.0, 0.76),
            (14.0, 0.92),
            (16.0, 1.0),
        ])
        .expect("builtin curve is well-formed")
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    /// Interpolated normalized output at the given wind speed, clamped to
    /// the knot range at the ends.
    pub fn interpolate(&self, v: f64) -> f64 {
        let first = self.knots[0];
        let last = self.knots[self.knots.len() - 1];
        if v <= first.0 {
            return first.1;
        }
        if v >= last.0 {
            return last.1;
        }
        for window in self.knots.windows(2) {
            let (v0, p0) = window[0];
            let (v1, p1) = window[1];
            if v <= v1 {
                return p0 + (p1 - p0) * (v - v0) / (v1 - v0);
            }
        }
        last.1
    }
}

/// Wind-turbine parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WtConfig {
    /// Cut-in speed, m/s.
    pub cut_in: f64,
    /// Rated speed, m/s.
    pub rated_speed: f64,
    /// Cut-out speed, m/s.
    pub cut_out: f64,
    /// Rated output power, W.
    pub rated_power: f64,
    pub power_curve: PowerCurve,
    /// Air density the power curve was measured at, kg/m³.
    pub rho_ref: f64,
}

impl Default for WtConfig {
    fn default() -> Self {
        Self {
            cut_in: 2.0,
            rated_speed: 16.0,
            cut_out: 20.0,
            rated_power: 30.0,
            power_curve: PowerCurve::default_small_turbine(),
            rho_ref: 1.225,
        }
    }
}

impl WtConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(0.0 < self.cut_in && self.cut_in < self.rated_speed && self.rated_speed < self.cut_out)
        {
            return Err(ConfigError::InvalidField {
                field: "wt speeds",
                reason: format!(
                    "need 0 < cut_in < rated < cut_out, got {} / {} / {}",
                    self.cut_in, self.rated_speed, self.cut_out
                ),
            });
        }
        if !(self.rated_power >= 0.0) {
            return Err(ConfigError::InvalidField {
                field: "rated_power",
                reason: format!("must be >= 0, got {}", self.rated_power),
            });
        }
        if !(self.rho_ref > 0.0) {
            return Err(ConfigError::InvalidField {
                field: "rho_ref",
                reason: format!("must be > 0, got {}", self.rho_ref),
            });
        }
        if self.power_curve.interpolate(self.cut_in).abs() > 1e-12 {
            return Err(ConfigError::MalformedPowerCurve(format!(
                "curve must be 0 at cut-in speed {}",
                self.cut_in
            )));
        }
        if (self.power_curve.interpolate(self.rated_speed) - 1.0).abs() > 1e-12 {
            return Err(ConfigError::MalformedPowerCurve(format!(
                "curve must reach 1 at rated speed {}",
                self.rated_speed
            )));
        }
        Ok(())
    }
}

/// Wind-turbine output power, W, at the (already altitude-corrected) hub
/// wind speed.
///
/// Zero below cut-in and above cut-out, curve-interpolated between cut-in
/// and rated speed, rated output up to cut-out; then scaled by the density
/// ratio rho / rho_ref.
pub fn wt_power(cfg: &WtConfig, v_hub: f64, air: &AirState) -> f64 {
    let base = if v_hub < cfg.cut_in || v_hub > cfg.cut_out {
        0.0
    } else if v_hub < cfg.rated_speed {
        cfg.rated_power * cfg.power_curve.interpolate(v_hub)
    } else {
        cfg.rated_power
    };
    let density_ratio = air.density / cfg.rho_ref;
    (base * density_ratio).clamp(0.0, cfg.rated_power * density_ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const AIR_REF: AirState = AirState {
        density: 1.225,
        temperature: 288.15,
    };

    #[test]
    fn pv_stc_point() {
        let cfg = PvConfig::default();
        assert_relative_eq!(pv_power(&cfg, 1000.0, 25.0), 14.4, epsilon = 1e-9);
    }

    #[test]
    fn pv_hot_cell_derates() {
        let cfg = PvConfig::default();
        assert_relative_eq!(pv_power(&cfg, 1000.0, 45.0), 12.96, epsilon = 1e-9);
    }

    #[test]
    fn pv_dark_is_zero() {
        assert_eq!(pv_power(&PvConfig::default(), 0.0, 15.0), 0.0);
    }

    #[test]
    fn pv_linear_in_irradiance() {
        let cfg = PvConfig::default();
        let p500 = pv_power(&cfg, 500.0, 30.0);
        let p1000 = pv_power(&cfg, 1000.0, 30.0);
        assert_relative_eq!(p1000, 2.0 * p500, max_relative = 1e-12);
    }

    #[test]
    fn pv_never_negative() {
        let cfg = PvConfig::default();
        // 1 + (-0.5/100)(t - 25) < 0 for t > 225 degC; absurd but clamped.
        assert_eq!(pv_power(&cfg, 1000.0, 300.0), 0.0);
    }

    #[test]
    fn wt_below_cut_in_is_zero() {
        let cfg = WtConfig::default();
        assert_eq!(wt_power(&cfg, 1.0, &AIR_REF), 0.0);
        assert_eq!(wt_power(&cfg, 1.9, &AIR_REF), 0.0);
    }

    #[test]
    fn wt_rated_region() {
        let cfg = WtConfig::default();
        assert_relative_eq!(wt_power(&cfg, 16.0, &AIR_REF), 30.0, epsilon = 1e-12);
        assert_relative_eq!(wt_power(&cfg, 20.0, &AIR_REF), 30.0, epsilon = 1e-12);
    }

    #[test]
    fn wt_cut_out_shutdown() {
        let cfg = WtConfig::default();
        assert_eq!(wt_power(&cfg, 20.01, &AIR_REF), 0.0);
        assert_eq!(wt_power(&cfg, 25.0, &AIR_REF), 0.0);
    }

    #[test]
    fn wt_continuous_at_rated_speed() {
        let cfg = WtConfig::default();
        let just_below = wt_power(&cfg, 16.0 - 1e-10, &AIR_REF);
        let at_rated = wt_power(&cfg, 16.0, &AIR_REF);
        assert!((at_rated - just_below).abs() < 1e-6);
    }

    #[test]
    fn wt_non_decreasing_below_cut_out() {
        let cfg = WtConfig::default();
        let mut prev = -1.0;
        for i in 0..=200 {
            let v = 20.0 * i as f64 / 200.0;
            let p = wt_power(&cfg, v, &AIR_REF);
            assert!(p + 1e-12 >= prev, "decrease at v={v}");
            prev = p;
        }
    }

    #[test]
    fn wt_density_scaling() {
        let cfg = WtConfig::default();
        let thin = AirState {
            density: 1.1,
            temperature: 300.0,
        };
        let p_ref = wt_power(&cfg, 10.0, &AIR_REF);
        let p_thin = wt_power(&cfg, 10.0, &thin);
        assert_relative_eq!(p_thin, p_ref * 1.1 / 1.225, max_relative = 1e-12);
    }

    #[test]
    fn curve_rejects_malformed_input() {
        assert!(PowerCurve::new(vec![(2.0, 0.0)]).is_err());
        assert!(PowerCurve::new(vec![(2.0, 0.0), (2.0, 0.5)]).is_err());
        assert!(PowerCurve::new(vec![(2.0, 0.5), (4.0, 0.2)]).is_err());
        assert!(PowerCurve::new(vec![(2.0, 0.0), (4.0, 1.5)]).is_err());
    }

    #[test]
    fn config_rejects_bad_speed_ordering() {
        let mut cfg = WtConfig::default();
        cfg.cut_out = 15.0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn config_requires_curve_anchored_at_cut_in_and_rated() {
        let mut cfg = WtConfig::default();
        cfg.power_curve = PowerCurve::new(vec![(2.0, 0.1), (16.0, 1.0)]).unwrap();
        assert!(cfg.validate().is_err());
        cfg.power_curve = PowerCurve::new(vec![(2.0, 0.0), (16.0, 0.9)]).unwrap();
        assert!(cfg.validate().is_err());
        assert!(WtConfig::default().validate().is_ok());
    }

    #[test]
    fn interpolation_is_exact_at_knots_and_between() {
        let curve = PowerCurve::default_small_turbine();
        for &(v, p) in curve.knots() {
            assert_relative_eq!(curve.interpolate(v), p, epsilon = 1e-12);
        }
        // Midpoint of the (10, 0.52)-(12, 0.76) segment.
        assert_relative_eq!(curve.interpolate(11.0), 0.64, epsilon = 1e-12);
    }
}
