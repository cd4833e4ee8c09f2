//! Property tests for the model invariants.

use proptest::prelude::*;

use uav_energy::atmosphere::{self, AirState, SiteConfig, WeatherSample};
use uav_energy::res_harvest::{self, PvConfig, WtConfig};
use uav_energy::scenario;
use uav_energy::uav_power::{self, presets, KinematicState};
use chrono::{FixedOffset, TimeZone};

fn sample(temp: f64, pressure: f64, rh: f64, wind: f64) -> WeatherSample {
    WeatherSample {
        timestamp: FixedOffset::east_opt(0)
            .unwrap()
            .with_ymd_and_hms(2022, 6, 21, 12, 0, 0)
            .unwrap(),
        ambient_temp: temp,
        pressure,
        rel_humidity: rh,
        wind_speed_ref: wind,
        cloud_opacity: 0.0,
    }
}

proptest! {
    #[test]
    fn air_density_monotone(
        temp in -15.0..40.0f64,
        pressure in 94_000.0..104_000.0f64,
        rh in 0.0..1.0f64,
        dt in 0.1..20.0f64,
        dp in 100.0..10_000.0f64,
    ) {
        let base = atmosphere::air_density(&sample(temp, pressure, rh, 0.0)).unwrap();
        let warmer = atmosphere::air_density(&sample(temp + dt, pressure, rh, 0.0)).unwrap();
        let denser = atmosphere::air_density(&sample(temp, pressure + dp, rh, 0.0)).unwrap();
        prop_assert!(warmer.density < base.density);
        prop_assert!(denser.density > base.density);
        prop_assert!((0.5..1.5).contains(&base.density));
    }

    #[test]
    fn wind_shear_linear_in_reference_speed(
        v_ref in 0.0..30.0f64,
        scale in 0.1..5.0f64,
        h in 5.0..300.0f64,
    ) {
        let site = SiteConfig {
            latitude: 52.0,
            longitude: 17.0,
            altitude_agl: h,
            ref_height: 10.0,
            roughness_length: 0.1,
        };
        let a = atmosphere::wind_at_height(&sample(10.0, 101325.0, 0.5, v_ref), &site).unwrap();
        let b = atmosphere::wind_at_height(&sample(10.0, 101325.0, 0.5, v_ref * scale), &site)
            .unwrap();
        prop_assert!((b - a * scale).abs() < 1e-9 * (1.0 + b.abs()));
        prop_assert!(a >= 0.0);
    }

    #[test]
    fn cell_heating_proportional_to_irradiance(
        temp in -10.0..40.0f64,
        g in 0.0..1367.0f64,
        scale in 0.0..1.0f64,
    ) {
        let params = atmosphere::AtmosphereParams::default();
        let s = sample(temp, 101325.0, 0.5, 0.0);
        let full = atmosphere::pv_cell_temperature(&s, g, &params) - temp;
        let part = atmosphere::pv_cell_temperature(&s, g * scale, &params) - temp;
        prop_assert!((part - full * scale).abs() < 1e-9);
        prop_assert!(full >= 0.0);
    }

    #[test]
    fn multirotor_hover_closed_form_everywhere(
        density in 0.9..1.4f64,
        omega in 100.0..600.0f64,
        kappa in 0.5..2.0f64,
        extra_mass in 0.0..20.0f64,
    ) {
        let mut params = presets::multirotor();
        params.thrust_to_weight = kappa;
        let mut mass = presets::mass_budget(true, false);
        mass.m_pkg = extra_mass;
        let air = AirState { density, temperature: 288.0 };
        let general = uav_power::multirotor_power(
            &KinematicState::hover(omega), &mass, &air, &params).unwrap();
        let closed = uav_power::multirotor_hover_power(&mass, &air, &params, omega);
        prop_assert!((general - closed).abs() <= 1e-12 * closed.abs());
    }

    #[test]
    fn fixed_wing_turning_exceeds_level(
        v in 0.5..60.0f64,
        a_perp in 0.01..10.0f64,
    ) {
        let mass = presets::mass_budget(true, true);
        let params = presets::fixed_wing();
        let air = AirState { density: 1.225, temperature: 288.15 };
        let level = uav_power::fixed_wing_power(
            &KinematicState::cruise(v), &mass, &air, &params).unwrap();
        let mut turn_state = KinematicState::cruise(v);
        turn_state.accel_centripetal = a_perp;
        let turning = uav_power::fixed_wing_power(&turn_state, &mass, &air, &params).unwrap();
        prop_assert!(turning > level);
    }

    #[test]
    fn wt_power_non_decreasing_then_cut_out(
        v1 in 0.0..20.0f64,
        dv in 0.0..5.0f64,
        density in 1.0..1.4f64,
    ) {
        let cfg = WtConfig::default();
        let air = AirState { density, temperature: 288.0 };
        let v2 = (v1 + dv).min(20.0);
        prop_assert!(res_harvest::wt_power(&cfg, v2, &air)
            >= res_harvest::wt_power(&cfg, v1, &air) - 1e-12);
        prop_assert_eq!(res_harvest::wt_power(&cfg, 20.0 + dv + 1e-9, &air), 0.0);
    }

    #[test]
    fn pv_power_bounded_and_non_negative(
        g in 0.0..1367.0f64,
        t_cell in -20.0..120.0f64,
    ) {
        let cfg = PvConfig::default();
        let p = res_harvest::pv_power(&cfg, g, t_cell);
        prop_assert!(p >= 0.0);
        let dt_max = 120.0 - cfg.t_c_stc;
        let bound = cfg.rated_power * cfg.derating * (g / cfg.g_stc)
            * (1.0 + cfg.temp_coeff.abs() * dt_max / 100.0);
        prop_assert!(p <= bound + 1e-9);
    }

    #[test]
    fn normalize_scale_invariant_and_idempotent(
        series in proptest::collection::vec(0.0..1e6f64, 1..100),
        scale in 0.001..1000.0f64,
    ) {
        let once = scenario::normalize_series(&series);
        let twice = scenario::normalize_series(&once);
        prop_assert_eq!(&once, &twice);
        let scaled: Vec<f64> = series.iter().map(|v| v * scale).collect();
        for (a, b) in scenario::normalize_series(&scaled).iter().zip(&once) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn irs_power_additive(
        a in 0u32..100,
        b in 0u32..100,
    ) {
        use uav_energy::payload_power::{irs_power, IrsConfig};
        let cfg = |n| IrsConfig { element_count: n, ..IrsConfig::default() };
        let sum = irs_power(&cfg(a)).unwrap() + irs_power(&cfg(b)).unwrap();
        prop_assert!((sum - irs_power(&cfg(a + b)).unwrap()).abs() < 1e-9);
    }
}
