//! Physical environment derived from raw weather samples: air density,
//! hub-height wind speed, plane-of-array solar irradiance, and PV cell
//! temperature.
//!
//! All functions here are pure; a time step of the simulation calls them in
//! sequence to turn one [`WeatherSample`] into the quantities the power
//! models consume.

use chrono::{DateTime, Datelike, FixedOffset, Timelike};
use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, ModelError};

/// Specific gas constant of dry air, J/(kg·K).
pub const R_DRY: f64 = 287.058;
/// Specific gas constant of water vapor, J/(kg·K).
pub const R_VAPOR: f64 = 461.495;
/// Extraterrestrial solar irradiance, W/m².
pub const SOLAR_CONSTANT: f64 = 1367.0;

const KELVIN_OFFSET: f64 = 273.15;

/// One timestamped record of ambient conditions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeatherSample {
    /// Sample time, with explicit UTC offset.
    pub timestamp: DateTime<FixedOffset>,
    /// Ambient temperature, °C.
    pub ambient_temp: f64,
    /// Station-level pressure, Pa.
    pub pressure: f64,
    /// Relative humidity, fraction in [0, 1].
    pub rel_humidity: f64,
    /// Wind speed at the reference (anemometer) height, m/s.
    pub wind_speed_ref: f64,
    /// Cloud opacity, fraction in [0, 1]; 0 = clear sky, 1 = fully opaque.
    pub cloud_opacity: f64,
}

impl WeatherSample {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let checks: [(&'static str, f64, bool); 5] = [
            ("pressure", self.pressure, self.pressure > 0.0),
            (
                "rel_humidity",
                self.rel_humidity,
                (0.0..=1.0).contains(&self.rel_humidity),
            ),
            (
                "cloud_opacity",
                self.cloud_opacity,
                (0.0..=1.0).contains(&self.cloud_opacity),
            ),
            (
                "wind_speed_ref",
                self.wind_speed_ref,
                self.wind_speed_ref >= 0.0,
            ),
            (
                "ambient_temp",
                self.ambient_temp,
                self.ambient_temp > -KELVIN_OFFSET,
            ),
        ];
        for (field, value, ok) in checks {
            if !value.is_finite() {
                return Err(ConfigError::InvalidField {
                    field,
                    reason: format!("non-finite value {value}"),
                });
            }
            if !ok {
                return Err(ConfigError::InvalidField {
                    field,
                    reason: format!("value {value} out of range"),
                });
            }
        }
        Ok(())
    }
}

/// Site geometry for solar and wind-shear calculations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SiteConfig {
    /// Latitude, degrees north.
    pub latitude: f64,
    /// Longitude, degrees east.
    pub longitude: f64,
    /// UAV operating height above ground, m.
    pub altitude_agl: f64,
    /// Anemometer height, m.
    pub ref_height: f64,
    /// Terrain roughness length z0, m.
    pub roughness_length: f64,
}

impl SiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.latitude.abs() <= 90.0) {
            return Err(ConfigError::InvalidField {
                field: "latitude",
                reason: format!("|{}| > 90", self.latitude),
            });
        }
        for (field, v) in [
            ("altitude_agl", self.altitude_agl),
            ("ref_height", self.ref_height),
            ("roughness_length", self.roughness_length),
        ] {
            if !(v > 0.0) {
                return Err(ConfigError::InvalidField {
                    field,
                    reason: format!("must be > 0, got {v}"),
                });
            }
        }
        Ok(())
    }
}

/// Tunable constants of the environment models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AtmosphereParams {
    /// Nominal operating cell temperature of the PV module, °C.
    pub noct_c: f64,
    /// Fraction of clear-sky irradiance removed by a fully opaque sky.
    pub k_cloud: f64,
}

impl Default for AtmosphereParams {
    fn default() -> Self {
        Self {
            noct_c: 47.0,
            k_cloud: 0.75,
        }
    }
}

/// Air density and absolute temperature at the sample instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AirState {
    /// Density, kg/m³.
    pub density: f64,
    /// Absolute temperature, K.
    pub temperature: f64,
}

/// Saturation vapor pressure over water, Pa (Magnus formula, T in °C).
fn saturation_pressure(temp_c: f64) -> f64 {
    610.94 * (17.625 * temp_c / (temp_c + 243.04)).exp()
}

/// Moist-air density from the ideal-gas law with partial pressures:
/// rho = p_d/(R_d T) + p_v/(R_v T), p_v = RH · e_sat(T).
pub fn air_density(sample: &WeatherSample) -> Result<AirState, ModelError> {
    for (name, v) in [
        ("ambient_temp", sample.ambient_temp),
        ("pressure", sample.pressure),
        ("rel_humidity", sample.rel_humidity),
    ] {
        if !v.is_finite() {
            return Err(ModelError::NonFinite(name));
        }
    }
    let temp_k = sample.ambient_temp + KELVIN_OFFSET;
    let p_vapor = sample.rel_humidity * saturation_pressure(sample.ambient_temp);
    let p_dry = sample.pressure - p_vapor;
    let density = p_dry / (R_DRY * temp_k) + p_vapor / (R_VAPOR * temp_k);
    Ok(AirState {
        density,
        temperature: temp_k,
    })
}

/// Wind speed at height `altitude_agl` from the logarithmic shear profile:
/// v(h) = v_ref · ln(h/z0) / ln(h_ref/z0).
pub fn wind_at_height(sample: &WeatherSample, site: &SiteConfig) -> Result<f64, ModelError> {
    let z0 = site.roughness_length;
    let h = site.altitude_agl;
    let h_ref = site.ref_height;
    if h <= z0 {
        return Err(ModelError::HeightBelowRoughness { h, z0 });
    }
    if h_ref <= z0 {
        return Err(ModelError::HeightBelowRoughness { h: h_ref, z0 });
    }
    Ok(sample.wind_speed_ref * (h / z0).ln() / (h_ref / z0).ln())
}

/// Solar elevation angle in radians at the sample instant.
///
/// Standard declination and hour-angle geometry evaluated in true solar
/// time derived from longitude plus the equation of time. Daylight saving
/// never enters.
pub fn solar_elevation(timestamp: &DateTime<FixedOffset>, site: &SiteConfig) -> f64 {
    let utc = timestamp.with_timezone(&chrono::Utc);
    let day = utc.ordinal() as f64;
    let frac_hour_utc = utc.hour() as f64
        + utc.minute() as f64 / 60.0
        + utc.second() as f64 / 3600.0;

    // Equation of time, minutes.
    let b = (360.0 / 365.0 * (day - 81.0)).to_radians();
    let eot_min = 9.87 * (2.0 * b).sin() - 7.53 * b.cos() - 1.5 * b.sin();

    let solar_hour = frac_hour_utc + site.longitude / 15.0 + eot_min / 60.0;
    let hour_angle = (15.0 * (solar_hour - 12.0)).to_radians();

    let declination = (23.45_f64.to_radians())
        * ((360.0 / 365.0) * (284.0 + day)).to_radians().sin();

    let lat = site.latitude.to_radians();
    let sin_elev =
        lat.sin() * declination.sin() + lat.cos() * declination.cos() * hour_angle.cos();
    sin_elev.asin()
}

/// Plane-of-array solar irradiance, W/m².
///
/// Clear-sky envelope 1367 · 0.7^(AM^0.678) · sin(elevation) with air mass
/// AM = 1/sin(elevation), attenuated by (1 − k_cloud · opacity). Zero when
/// the sun is below the horizon.
pub fn solar_irradiance(
    sample: &WeatherSample,
    site: &SiteConfig,
    params: &AtmosphereParams,
) -> f64 {
    let elevation = solar_elevation(&sample.timestamp, site);
    let sin_elev = elevation.sin();
    if sin_elev <= 0.0 {
        return 0.0;
    }
    let air_mass = 1.0 / sin_elev;
    let clear_sky = SOLAR_CONSTANT * 0.7_f64.powf(air_mass.powf(0.678)) * sin_elev;
    let attenuated = clear_sky * (1.0 - params.k_cloud * sample.cloud_opacity);
    attenuated.clamp(0.0, SOLAR_CONSTANT)
}

/// PV cell temperature, °C: T_c = T_ambient + G_T · (NOCT − 20) / 800.
pub fn pv_cell_temperature(sample: &WeatherSample, g_t: f64, params: &AtmosphereParams) -> f64 {
    sample.ambient_temp + g_t * (params.noct_c - 20.0) / 800.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use chrono::TimeZone;

    fn sample(temp: f64, pressure: f64, rh: f64) -> WeatherSample {
        WeatherSample {
            timestamp: FixedOffset::east_opt(0)
                .unwrap()
                .with_ymd_and_hms(2022, 6, 21, 12, 0, 0)
                .unwrap(),
            ambient_temp: temp,
            pressure,
            rel_humidity: rh,
            wind_speed_ref: 5.0,
            cloud_opacity: 0.0,
        }
    }

    fn poznan_site() -> SiteConfig {
        SiteConfig {
            latitude: 52.4064,
            longitude: 16.9252,
            altitude_agl: 100.0,
            ref_height: 10.0,
            roughness_length: 0.1,
        }
    }

    #[test]
    fn dry_air_standard_conditions() {
        let air = air_density(&sample(15.0, 101325.0, 0.0)).unwrap();
        assert_relative_eq!(air.density, 1.2250, max_relative = 0.001 / 1.225);
        assert_relative_eq!(air.temperature, 288.15, epsilon = 1e-12);
    }

    #[test]
    fn humid_air_is_lighter() {
        let dry = air_density(&sample(15.0, 101325.0, 0.0)).unwrap();
        let humid = air_density(&sample(15.0, 101325.0, 1.0)).unwrap();
        assert!(humid.density < dry.density);
    }

    #[test]
    fn density_monotone_in_temperature_and_pressure() {
        let hot = air_density(&sample(35.0, 101325.0, 0.3)).unwrap();
        let cold = air_density(&sample(0.0, 101325.0, 0.3)).unwrap();
        assert!(hot.density < cold.density);
        let low_p = air_density(&sample(15.0, 95000.0, 0.3)).unwrap();
        let high_p = air_density(&sample(15.0, 103000.0, 0.3)).unwrap();
        assert!(low_p.density < high_p.density);
    }

    #[test]
    fn density_rejects_non_finite() {
        assert!(air_density(&sample(f64::NAN, 101325.0, 0.0)).is_err());
    }

    #[test]
    fn wind_identity_at_reference_height() {
        let mut site = poznan_site();
        site.altitude_agl = site.ref_height;
        let v = wind_at_height(&sample(15.0, 101325.0, 0.0), &site).unwrap();
        assert_relative_eq!(v, 5.0, epsilon = 1e-12);
    }

    #[test]
    fn wind_log_law_hand_value() {
        // v_ref=5, h_ref=10, h=100, z0=0.1 -> 5 ln(1000)/ln(100) = 7.5
        let site = poznan_site();
        let v = wind_at_height(&sample(15.0, 101325.0, 0.0), &site).unwrap();
        assert_relative_eq!(v, 7.5, epsilon = 1e-6);
    }

    #[test]
    fn wind_zero_scales_to_zero() {
        let mut s = sample(15.0, 101325.0, 0.0);
        s.wind_speed_ref = 0.0;
        let v = wind_at_height(&s, &poznan_site()).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn wind_rejects_height_below_roughness() {
        let mut site = poznan_site();
        site.altitude_agl = 0.05;
        assert!(wind_at_height(&sample(15.0, 101325.0, 0.0), &site).is_err());
    }

    #[test]
    fn irradiance_zero_at_night() {
        let mut s = sample(15.0, 101325.0, 0.0);
        s.timestamp = FixedOffset::east_opt(3600)
            .unwrap()
            .with_ymd_and_hms(2022, 6, 21, 0, 30, 0)
            .unwrap();
        let g = solar_irradiance(&s, &poznan_site(), &AtmosphereParams::default());
        assert_eq!(g, 0.0);
    }

    #[test]
    fn full_opacity_leaves_quarter_of_clear_sky() {
        let params = AtmosphereParams::default();
        let clear = sample(15.0, 101325.0, 0.0);
        let mut overcast = clear.clone();
        overcast.cloud_opacity = 1.0;
        let g_clear = solar_irradiance(&clear, &poznan_site(), &params);
        let g_overcast = solar_irradiance(&overcast, &poznan_site(), &params);
        assert!(g_clear > 0.0);
        assert_relative_eq!(g_overcast, 0.25 * g_clear, epsilon = 1e-9);
    }

    #[test]
    fn irradiance_monotone_in_opacity() {
        let params = AtmosphereParams::default();
        let clear = sample(15.0, 101325.0, 0.0);
        let mut half = clear.clone();
        half.cloud_opacity = 0.5;
        assert!(
            solar_irradiance(&clear, &poznan_site(), &params)
                > solar_irradiance(&half, &poznan_site(), &params)
        );
    }

    #[test]
    fn irradiance_bounded_by_solar_constant() {
        let params = AtmosphereParams::default();
        for hour in 0..24 {
            let mut s = sample(15.0, 101325.0, 0.0);
            s.timestamp = FixedOffset::east_opt(0)
                .unwrap()
                .with_ymd_and_hms(2022, 6, 21, hour, 0, 0)
                .unwrap();
            let g = solar_irradiance(&s, &poznan_site(), &params);
            assert!((0.0..=SOLAR_CONSTANT).contains(&g));
        }
    }

    #[test]
    fn cell_temperature_matches_noct_definition() {
        let params = AtmosphereParams::default();
        let s = sample(20.0, 101325.0, 0.0);
        assert_eq!(pv_cell_temperature(&s, 0.0, &params), 20.0);
        assert_relative_eq!(pv_cell_temperature(&s, 800.0, &params), 47.0, epsilon = 1e-12);
        let s25 = sample(25.0, 101325.0, 0.0);
        assert_relative_eq!(
            pv_cell_temperature(&s25, 1000.0, &params),
            58.75,
            epsilon = 1e-9
        );
    }

    #[test]
    fn sample_validation_catches_out_of_range() {
        let mut s = sample(15.0, 101325.0, 0.0);
        s.rel_humidity = 1.3;
        assert!(s.validate().is_err());
        let mut s = sample(15.0, 101325.0, 0.0);
        s.pressure = -5.0;
        assert!(s.validate().is_err());
        let mut s = sample(15.0, 101325.0, 0.0);
        s.ambient_temp = -300.0;
        assert!(s.validate().is_err());
    }
}
