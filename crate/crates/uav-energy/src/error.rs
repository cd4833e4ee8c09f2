//! Error types shared across the crate.

use thiserror::Error;

/// Configuration and parameter validation failures.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid {field}: {reason}")]
    InvalidField { field: &'static str, reason: String },
    #[error("wind turbine power curve is malformed: {0}")]
    MalformedPowerCurve(String),
    #[error("no phase-shifter power entry for bit resolution {0}")]
    UnknownBitResolution(u32),
    #[error("platform variant '{variant}' requires the [{section}] parameter table")]
    MissingVariantParams { variant: String, section: String },
    #[error("unknown coefficient preset '{0}'")]
    UnknownPreset(String),
    #[error("failed to read config file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to parse config file {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: Box<toml::de::Error>,
    },
}

/// Weather CSV ingestion failures, with line-numbered diagnostics.
#[derive(Debug, Error)]
pub enum WeatherError {
    #[error("failed to read weather file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("weather file {path}: missing column '{column}'")]
    MissingColumn { path: String, column: String },
    #[error("weather file {path}, row {row}: field '{field}' unparseable: {value}")]
    Unparseable {
        path: String,
        row: usize,
        field: String,
        value: String,
    },
    #[error("weather file {path}, row {row}: field '{field}' out of range: {reason}")]
    OutOfRange {
        path: String,
        row: usize,
        field: String,
        reason: String,
    },
    #[error("weather file {path}, row {row}: timestamp not strictly increasing")]
    NonMonotone { path: String, row: usize },
    #[error("weather file {path}: header only, no samples")]
    NoSamples { path: String },
}

/// Model precondition violations raised at evaluation time.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("fixed-wing cannot hover: velocity must be strictly positive")]
    FixedWingHover,
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("air density must be positive, got {0}")]
    NonPositiveDensity(f64),
    #[error("rotor angular velocity must be positive, got {0}")]
    NonPositiveRotorSpeed(f64),
    #[error("power amplifier efficiency must be positive, got {0}")]
    ZeroPaEfficiency(f64),
    #[error("no phase-shifter power entry for bit resolution {0}")]
    UnknownBitResolution(u32),
    #[error("evaluation height {h} m must exceed roughness length {z0} m")]
    HeightBelowRoughness { h: f64, z0: f64 },
    #[error("weather series is empty")]
    EmptyWeather,
    #[error("weather series: duplicate or non-increasing timestamp at index {0}")]
    NonMonotoneWeather(usize),
    #[error("weather series: spacing at index {index} is {actual_s} s, expected {expected_s} s")]
    NonUniformSpacing {
        index: usize,
        actual_s: i64,
        expected_s: i64,
    },
}
