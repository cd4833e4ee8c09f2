//! Power drawn by the communications payload: the reflecting-surface
//! phase-shifter array and the multi-antenna RF transceiver.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{ConfigError, ModelError};

/// Reflecting-surface configuration: element count and per-shifter power
/// indexed by phase-shifter bit resolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IrsConfig {
    pub element_count: u32,
    pub bit_resolution: u32,
    /// bit resolution -> power per shifter, W.
    pub shifter_power_table: BTreeMap<u32, f64>,
}

impl Default for IrsConfig {
    fn default() -> Self {
        // The only shifter characterized by the reference hardware: 6-bit, 7.8 W.
        let mut table = BTreeMap::new();
        table.insert(6, 7.8);
        Self {
            element_count: 16,
            bit_resolution: 6,
            shifter_power_table: table,
        }
    }
}

impl IrsConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !self.shifter_power_table.contains_key(&self.bit_resolution) {
            return Err(ConfigError::UnknownBitResolution(self.bit_resolution));
        }
        for (&bits, &p) in &self.shifter_power_table {
            if !(p >= 0.0) {
                return Err(ConfigError::InvalidField {
                    field: "shifter_power_table",
                    reason: format!("power for {bits}-bit shifter must be >= 0, got {p}"),
                });
            }
        }
        Ok(())
    }
}

/// Total surface power: element count times per-shifter power.
pub fn irs_power(cfg: &IrsConfig) -> Result<f64, ModelError> {
    let per_shifter = cfg
        .shifter_power_table
        .get(&cfg.bit_resolution)
        .ok_or(ModelError::UnknownBitResolution(cfg.bit_resolution))?;
    Ok(cfg.element_count as f64 * per_shifter)
}

/// Coefficients of the load- and array-dependent transceiver sub-models.
///
/// Transceiver chains: P_TC = p_syn + M·p_ant. Channel estimation:
/// P_CE = c_ce·M·K. Coding/decoding: (TR_UL + TR_DL)·(e_cod + e_dec).
/// Backhaul: (TR_UL + TR_DL)·e_bh. Signal processing: c_sp0 + c_sp·M·K.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct MimoCoefficients {
    /// Local oscillator / synthesizer base power, W.
    pub p_syn: f64,
    /// Per-antenna chain power, W.
    pub p_ant: f64,
    /// Channel-estimation power per antenna-user pair, W.
    pub c_ce: f64,
    /// Coding energy per Mbps, W/Mbps.
    pub e_cod: f64,
    /// Decoding energy per Mbps, W/Mbps.
    pub e_dec: f64,
    /// Backhaul energy per Mbps, W/Mbps.
    pub e_bh: f64,
    /// Signal-processing base power, W.
    pub c_sp0: f64,
    /// Signal-processing power per antenna-user pair, W.
    pub c_sp: f64,
}

impl MimoCoefficients {
    /// All-zero coefficient set: only the fixed and amplifier terms remain.
    pub fn zero() -> Self {
        Self::default()
    }

    /// Non-trivial set for experimentation, loosely scaled to a small
    /// massive-MIMO node with MMSE processing.
    pub fn massive_mimo_ref() -> Self {
        Self {
            p_syn: 2.0,
            p_ant: 1.0,
            c_ce: 0.01,
            e_cod: 0.01,
            e_dec: 0.08,
            e_bh: 0.025,
            c_sp0: 1.0,
            c_sp: 0.02,
        }
    }

    pub fn by_name(name: &str) -> Result<Self, ConfigError> {
        match name {
            "zero" => Ok(Self::zero()),
            "massive-mimo-ref" => Ok(Self::massive_mimo_ref()),
            other => Err(ConfigError::UnknownPreset(other.to_string())),
        }
    }

    fn non_negative(&self) -> bool {
        [
            self.p_syn, self.p_ant, self.c_ce, self.e_cod, self.e_dec, self.e_bh, self.c_sp0,
            self.c_sp,
        ]
        .iter()
        .all(|v| *v >= 0.0)
    }
}

/// Transceiver configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MimoConfig {
    /// Active antenna elements (M).
    pub antennas: u32,
    /// Served users (K).
    pub users: u32,
    /// Uplink throughput, Mbps.
    pub tr_ul: f64,
    /// Downlink throughput, Mbps.
    pub tr_dl: f64,
    /// Fixed base-station power, W.
    pub p_fix: f64,
    /// Transmit power, W.
    pub p_tx: f64,
    /// Power amplifier efficiency, fraction in (0, 1].
    pub pa_efficiency: f64,
    pub component_coeffs: MimoCoefficients,
}

impl Default for MimoConfig {
    fn default() -> Self {
        Self {
            antennas: 16,
            users: 10,
            tr_ul: 50.0,
            tr_dl: 100.0,
            p_fix: 0.0,
            p_tx: 15.0,
            pa_efficiency: 0.35,
            component_coeffs: MimoCoefficients::zero(),
        }
    }
}

impl MimoConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.antennas < self.users {
            return Err(ConfigError::InvalidField {
                field: "antennas",
                reason: format!(
                    "antenna count {} must be >= user count {}",
                    self.antennas, self.users
                ),
            });
        }
        if !(self.pa_efficiency > 0.0 && self.pa_efficiency <= 1.0) {
            return Err(ConfigError::InvalidField {
                field: "pa_efficiency",
                reason: format!("must be in (0, 1], got {}", self.pa_efficiency),
            });
        }
        for (field, v) in [
            ("tr_ul", self.tr_ul),
            ("tr_dl", self.tr_dl),
            ("p_fix", self.p_fix),
            ("p_tx", self.p_tx),
        ] {
            if !(v >= 0.0) {
                return Err(ConfigError::InvalidField {
                    field,
                    reason: format!("must be >= 0, got {v}"),
                });
            }
        }
        if !self.component_coeffs.non_negative() {
            return Err(ConfigError::InvalidField {
                field: "component_coeffs",
                reason: "all coefficients must be >= 0".into(),
            });
        }
        Ok(())
    }
}

/// Per-term split of the transceiver power model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MimoBreakdown {
    pub fixed: f64,
    pub transceiver_chains: f64,
    pub channel_estimation: f64,
    pub coding_decoding: f64,
    pub backhaul: f64,
    pub signal_processing: f64,
    pub power_amplifier: f64,
    pub total: f64,
}

/// Transceiver power: seven-term sum with per-term breakdown.
pub fn mimo_power(cfg: &MimoConfig) -> Result<MimoBreakdown, ModelError> {
    if cfg.pa_efficiency <= 0.0 {
        return Err(ModelError::ZeroPaEfficiency(cfg.pa_efficiency));
    }
    let c = &cfg.component_coeffs;
    let m = cfg.antennas as f64;
    let k = cfg.users as f64;
    let traffic = cfg.tr_ul + cfg.tr_dl;

    let fixed = cfg.p_fix;
    let transceiver_chains = c.p_syn + m * c.p_ant;
    let channel_estimation = c.c_ce * m * k;
    let coding_decoding = traffic * (c.e_cod + c.e_dec);
    let backhaul = traffic * c.e_bh;
    let signal_processing = c.c_sp0 + c.c_sp * m * k;
    let power_amplifier = cfg.p_tx / cfg.pa_efficiency;
    let total = fixed
        + transceiver_chains
        + channel_estimation
        + coding_decoding
        + backhaul
        + signal_processing
        + power_amplifier;
    Ok(MimoBreakdown {
        fixed,
        transceiver_chains,
        channel_estimation,
        coding_decoding,
        backhaul,
        signal_processing,
        power_amplifier,
        total,
    })
}

/// Combined payload draw with the per-device split preserved.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PayloadBreakdown {
    pub irs: f64,
    pub mimo: MimoBreakdown,
    pub total: f64,
}

pub fn payload_power_total(
    irs: &IrsConfig,
    mimo: &MimoConfig,
) -> Result<PayloadBreakdown, ModelError> {
    let irs_w = irs_power(irs)?;
    let mimo_bd = mimo_power(mimo)?;
    Ok(PayloadBreakdown {
        irs: irs_w,
        mimo: mimo_bd,
        total: irs_w + mimo_bd.total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn irs_reference_point() {
        let cfg = IrsConfig::default();
        assert_relative_eq!(irs_power(&cfg).unwrap(), 124.8, epsilon = 1e-12);
    }

    #[test]
    fn irs_empty_surface_draws_nothing() {
        let cfg = IrsConfig {
            element_count: 0,
            ..IrsConfig::default()
        };
        assert_eq!(irs_power(&cfg).unwrap(), 0.0);
    }

    #[test]
    fn irs_linear_in_elements() {
        let n16 = irs_power(&IrsConfig::default()).unwrap();
        let n32 = irs_power(&IrsConfig {
            element_count: 32,
            ..IrsConfig::default()
        })
        .unwrap();
        assert_relative_eq!(n32, 2.0 * n16, epsilon = 1e-12);
    }

    #[test]
    fn irs_additive_in_element_count() {
        let base = IrsConfig::default();
        for (a, b) in [(0u32, 5u32), (3, 7), (16, 16), (1, 63)] {
            let pa = irs_power(&IrsConfig {
                element_count: a,
                ..base.clone()
            })
            .unwrap();
            let pb = irs_power(&IrsConfig {
                element_count: b,
                ..base.clone()
            })
            .unwrap();
            let pab = irs_power(&IrsConfig {
                element_count: a + b,
                ..base.clone()
            })
            .unwrap();
            assert_relative_eq!(pa + pb, pab, epsilon = 1e-12);
        }
    }

    #[test]
    fn irs_unknown_resolution_is_distinct_error() {
        let cfg = IrsConfig {
            bit_resolution: 4,
            ..IrsConfig::default()
        };
        assert!(matches!(
            irs_power(&cfg),
            Err(ModelError::UnknownBitResolution(4))
        ));
        assert!(matches!(
            cfg.validate(),
            Err(ConfigError::UnknownBitResolution(4))
        ));
    }

    #[test]
    fn pa_term_reference_point() {
        let bd = mimo_power(&MimoConfig::default()).unwrap();
        assert_relative_eq!(bd.power_amplifier, 15.0 / 0.35, epsilon = 1e-9);
        assert_relative_eq!(bd.power_amplifier, 42.857142857, epsilon = 1e-9);
    }

    #[test]
    fn zero_coeffs_leave_fixed_term_only() {
        let cfg = MimoConfig {
            p_fix: 10.0,
            p_tx: 0.0,
            ..MimoConfig::default()
        };
        let bd = mimo_power(&cfg).unwrap();
        assert_eq!(bd.total, 10.0);
    }

    #[test]
    fn traffic_increases_power_with_load_coeffs() {
        let loaded = MimoConfig {
            component_coeffs: MimoCoefficients::massive_mimo_ref(),
            ..MimoConfig::default()
        };
        let idle = MimoConfig {
            tr_ul: 0.0,
            tr_dl: 0.0,
            ..loaded
        };
        assert!(mimo_power(&loaded).unwrap().total > mimo_power(&idle).unwrap().total);
    }

    #[test]
    fn breakdown_sums_to_total() {
        let cfg = MimoConfig {
            p_fix: 4.2,
            component_coeffs: MimoCoefficients::massive_mimo_ref(),
            ..MimoConfig::default()
        };
        let bd = mimo_power(&cfg).unwrap();
        let sum = bd.fixed
            + bd.transceiver_chains
            + bd.channel_estimation
            + bd.coding_decoding
            + bd.backhaul
            + bd.signal_processing
            + bd.power_amplifier;
        assert_relative_eq!(sum, bd.total, max_relative = 1e-15);
    }

    #[test]
    fn monotone_in_array_and_load() {
        let base = MimoConfig {
            component_coeffs: MimoCoefficients::massive_mimo_ref(),
            ..MimoConfig::default()
        };
        let p0 = mimo_power(&base).unwrap().total;
        for grown in [
            MimoConfig {
                antennas: 32,
                ..base
            },
            MimoConfig { users: 16, antennas: 32, ..base },
            MimoConfig {
                tr_ul: 80.0,
                ..base
            },
            MimoConfig {
                tr_dl: 150.0,
                ..base
            },
        ] {
            assert!(mimo_power(&grown).unwrap().total >= p0);
        }
    }

    #[test]
    fn rejects_zero_pa_efficiency() {
        let mut cfg = MimoConfig::default();
        cfg.pa_efficiency = 0.0;
        assert!(cfg.validate().is_err());
        assert!(matches!(
            mimo_power(&cfg),
            Err(ModelError::ZeroPaEfficiency(_))
        ));
    }

    #[test]
    fn payload_total_preserves_breakdown() {
        let bd = payload_power_total(&IrsConfig::default(), &MimoConfig::default()).unwrap();
        assert_relative_eq!(bd.total, bd.irs + bd.mimo.total, max_relative = 1e-15);
        assert_relative_eq!(bd.irs, 124.8, epsilon = 1e-12);
    }

    #[test]
    fn preset_lookup() {
        assert_eq!(
            MimoCoefficients::by_name("zero").unwrap(),
            MimoCoefficients::zero()
        );
        assert!(MimoCoefficients::by_name("massive-mimo-ref").is_ok());
        assert!(MimoCoefficients::by_name("nope").is_err());
    }
}
