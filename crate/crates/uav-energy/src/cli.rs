//! Command-line front end: scenario parsing, grid execution, and report
//! emission. The binary in `src/bin/uav_energy.rs` is a thin wrapper over
//! [`run_cli`].

use chrono::Duration;
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use thiserror::Error;

use crate::atmosphere::WeatherSample;
use crate::config::{PlatformKind, ScenarioConfig, TABLE1_TOML};
use crate::error::{ConfigError, ModelError, WeatherError};
use crate::report::{self, SeriesGroup};
use crate::scenario::{self, EquipmentCase};
use crate::weather_csv;

/// Exit code 2: scenario/manifest configuration problem.
pub const EXIT_CONFIG: i32 = 2;
/// Exit code 3: weather file problem.
pub const EXIT_WEATHER: i32 = 3;
/// Exit code 4: model precondition violated.
pub const EXIT_MODEL: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Weather(#[from] WeatherError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("output error: {0}")]
    Output(#[from] std::io::Error),
    #[error("{0}")]
    Manifest(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Weather(_) => EXIT_WEATHER,
            CliError::Model(_) => EXIT_MODEL,
            _ => EXIT_CONFIG,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "uav-energy",
    about = "Weather-driven energy-budget simulator for UAV-mounted base stations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the simulation grid and emit CSV ledgers and normalized series.
    Simulate(SimulateArgs),
    /// Lint a scenario config and weather files without running.
    Validate(ValidateArgs),
    /// Print the seasonal bundles and the builtin parameter preset.
    Presets,
}

#[derive(Debug, Parser)]
pub struct SimulateArgs {
    /// Scenario config file (TOML); omitted = builtin "table1" preset.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Weather CSV, either PATH (one unnamed season) or SEASON=PATH,
    /// repeatable.
    #[arg(long, required = true)]
    pub weather: Vec<String>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Step length in minutes; overrides the config value.
    #[arg(long)]
    pub step: Option<u32>,
    /// Also emit SVG charts next to the normalized CSVs.
    #[arg(long)]
    pub svg: bool,
    /// Restrict to one platform (multirotor | fixed-wing).
    #[arg(long)]
    pub platform: Option<String>,
    /// Restrict to one equipment case (none | pv-only | wt-only | pv-and-wt).
    #[arg(long, name = "case")]
    pub case: Option<String>,
    /// Restrict to one season name.
    #[arg(long)]
    pub season: Option<String>,
}

#[derive(Debug, Parser)]
pub struct ValidateArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub weather: Vec<String>,
}

/// Everything one `simulate` invocation needs.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub config_path: Option<PathBuf>,
    /// season name -> weather CSV path, in emission order.
    pub weather: Vec<(String, PathBuf)>,
    pub platforms: Vec<PlatformKind>,
    pub cases: Vec<EquipmentCase>,
    pub out_dir: PathBuf,
    pub emit_svg: bool,
    pub step_override: Option<Duration>,
}

fn parse_weather_args(args: &[String]) -> Result<Vec<(String, PathBuf)>, CliError> {
    let mut out = Vec::new();
    for raw in args {
        let (name, path) = match raw.split_once('=') {
            Some((name, path)) => (name.to_string(), PathBuf::from(path)),
            None => {
                if args.len() > 1 {
                    return Err(CliError::Manifest(format!(
                        "multiple --weather arguments must use SEASON=PATH form, got '{raw}'"
                    )));
                }
                ("default".to_string(), PathBuf::from(raw))
            }
        };
        if out.iter().any(|(n, _)| *n == name) {
            return Err(CliError::Manifest(format!("duplicate season '{name}'")));
        }
        out.push((name, path));
    }
    Ok(out)
}

impl RunManifest {
    pub fn from_args(args: &SimulateArgs) -> Result<Self, CliError> {
        let platforms = match &args.platform {
            Some(s) => vec![PlatformKind::parse(s).ok_or_else(|| {
                CliError::Manifest(format!("unknown platform '{s}'"))
            })?],
            None => PlatformKind::ALL.to_vec(),
        };
        let cases = match &args.case {
            Some(s) => vec![EquipmentCase::parse(s).ok_or_else(|| {
                CliError::Manifest(format!("unknown equipment case '{s}'"))
            })?],
            None => EquipmentCase::ALL.to_vec(),
        };
        let mut weather = parse_weather_args(&args.weather)?;
        if let Some(season) = &args.season {
            weather.retain(|(name, _)| name == season);
            if weather.is_empty() {
                return Err(CliError::Manifest(format!(
                    "--season {season} matches none of the supplied weather files"
                )));
            }
        }
        Ok(Self {
            config_path: args.config.clone(),
            weather,
            platforms,
            cases,
            out_dir: args.out.clone(),
            emit_svg: args.svg,
            step_override: args.step.map(|m| Duration::minutes(m as i64)),
        })
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<(ScenarioConfig, Option<PathBuf>), CliError> {
    match path {
        Some(p) => {
            let cfg = ScenarioConfig::load(p)?;
            Ok((cfg, p.parent().map(Path::to_path_buf)))
        }
        None => Ok((ScenarioConfig::table1(), None)),
    }
}

#[derive(Debug, Serialize)]
struct RunEntry {
    platform: String,
    case: String,
    season: String,
    steps: usize,
    total_consumed_wh: f64,
    total_harvested_wh: f64,
    ledger_file: String,
}

#[derive(Debug, Serialize)]
struct RunSummary {
    config: String,
    step_minutes: i64,
    runs: Vec<RunEntry>,
    normalized_files: Vec<String>,
    svg_files: Vec<String>,
}

/// Execute the full grid described by the manifest; returns the summary
/// file path on success.
pub fn run(manifest: &RunManifest) -> Result<PathBuf, CliError> {
    let (config, base_dir) = load_config(&manifest.config_path)?;
    let platforms: Vec<PlatformKind> = manifest
        .platforms
        .iter()
        .copied()
        .filter(|k| config.platforms().contains(k))
        .collect();
    if platforms.is_empty() {
        return Err(CliError::Manifest(
            "no selected platform has parameters in the config".into(),
        ));
    }
    let step = manifest.step_override.unwrap_or_else(|| config.step());

    let mut weather_by_season: Vec<(String, Vec<WeatherSample>)> = Vec::new();
    for (season, path) in &manifest.weather {
        weather_by_season.push((season.clone(), weather_csv::parse_weather_csv(path)?));
    }

    std::fs::create_dir_all(&manifest.out_dir)?;

    let mut runs = Vec::new();
    let mut normalized_files = Vec::new();
    let mut svg_files = Vec::new();
    // (platform, case) -> season -> consumption series
    let mut consumption: BTreeMap<(String, String), Vec<(String, Vec<f64>)>> = BTreeMap::new();
    // generator -> season -> harvest series
    let mut harvest: BTreeMap<&'static str, Vec<(String, Vec<f64>)>> = BTreeMap::new();

    for kind in &platforms {
        for case in &manifest.cases {
            let inputs = config.simulation_inputs(*kind, *case, base_dir.as_deref(), false)?;
            for (season, weather) in &weather_by_season {
                let ledger = scenario::simulate(&inputs, weather, step)?;
                let file = format!(
                    "ledger_{}_{}_{}.csv",
                    kind.label(),
                    case.label(),
                    season
                );
                report::write_ledger_csv(&ledger, manifest.out_dir.join(&file))?;
                consumption
                    .entry((kind.label().to_string(), case.label().to_string()))
                    .or_default()
                    .push((season.clone(), ledger.consumption_series()));
                if *case == EquipmentCase::PvAndWt && *kind == platforms[0] {
                    harvest
                        .entry("pv")
                        .or_default()
                        .push((season.clone(), ledger.pv_series()));
                    harvest
                        .entry("wt")
                        .or_default()
                        .push((season.clone(), ledger.wt_series()));
                }
                runs.push(RunEntry {
                    platform: kind.label().to_string(),
                    case: case.label().to_string(),
                    season: season.clone(),
                    steps: ledger.records.len(),
                    total_consumed_wh: ledger.total_consumed_wh(),
                    total_harvested_wh: ledger.total_harvested_wh(),
                    ledger_file: file,
                });
            }
        }
    }

    // One normalized-consumption file per platform: columns are
    // case/season, each study case scaled by its own maximum across the
    // seasons.
    for kind in &platforms {
        let mut labels = Vec::new();
        let mut columns = Vec::new();
        for case in &manifest.cases {
            let key = (kind.label().to_string(), case.label().to_string());
            if let Some(seasonal) = consumption.get(&key) {
                let group: Vec<Vec<f64>> =
                    seasonal.iter().map(|(_, series)| series.clone()).collect();
                let normalized = scenario::normalize_group(&group);
                for ((season, _), series) in seasonal.iter().zip(normalized) {
                    labels.push(format!("{}_{}", case.label(), season));
                    columns.push(series);
                }
            }
        }
        let file = format!("normalized_consumption_{}.csv", kind.label());
        let group = clip_group(SeriesGroup { labels, columns });
        report::write_series_csv(&group, manifest.out_dir.join(&file))?;
        normalized_files.push(file.clone());
        if manifest.emit_svg {
            let svg = file.replace(".csv", ".svg");
            report::emit_svg(
                &group,
                &format!("Normalized consumption, {}", kind.label()),
                manifest.out_dir.join(&svg),
            )?;
            svg_files.push(svg);
        }
    }

    // One normalized-harvest file per generator, scaled across seasons.
    for (generator, seasonal) in &harvest {
        let group: Vec<Vec<f64>> = seasonal.iter().map(|(_, s)| s.clone()).collect();
        let normalized = scenario::normalize_group(&group);
        let group = clip_group(SeriesGroup {
            labels: seasonal.iter().map(|(season, _)| season.clone()).collect(),
            columns: normalized,
        });
        let file = format!("normalized_harvest_{generator}.csv");
        report::write_series_csv(&group, manifest.out_dir.join(&file))?;
        normalized_files.push(file.clone());
        if manifest.emit_svg {
            let svg = file.replace(".csv", ".svg");
            report::emit_svg(
                &group,
                &format!("Normalized {generator} harvest"),
                manifest.out_dir.join(&svg),
            )?;
            svg_files.push(svg);
        }
    }

    let summary = RunSummary {
        config: manifest
            .config_path
            .as_ref()
            .map_or("<builtin table1>".to_string(), |p| p.display().to_string()),
        step_minutes: step.num_minutes(),
        runs,
        normalized_files,
        svg_files,
    };
    let summary_path = manifest.out_dir.join("run_summary.json");
    std::fs::write(
        &summary_path,
        serde_json::to_string_pretty(&summary).expect("summary serializes"),
    )?;
    Ok(summary_path)
}

/// Truncate all columns of a group to the shortest, so mixed-length
/// seasons still produce a rectangular CSV.
fn clip_group(mut group: SeriesGroup) -> SeriesGroup {
    let min = group.columns.iter().map(Vec::len).min().unwrap_or(0);
    for col in &mut group.columns {
        col.truncate(min);
    }
    group
}

/// Lint the config plus weather files; no simulation.
pub fn validate(args: &ValidateArgs) -> Result<String, CliError> {
    let (config, base_dir) = load_config(&args.config)?;
    config.validate()?;
    // Exercises curve-file resolution and per-platform preconditions too.
    config.wt_config(base_dir.as_deref())?;
    for kind in config.platforms() {
        config
            .platform_config(kind, EquipmentCase::PvAndWt)?
            .validate()?;
    }
    let mut report = String::from("config: ok\n");
    for raw in parse_weather_args(&args.weather)? {
        let samples = weather_csv::parse_weather_csv(&raw.1)?;
        report.push_str(&format!(
            "weather '{}' ({}): {} samples, ok\n",
            raw.0,
            raw.1.display(),
            samples.len()
        ));
    }
    Ok(report)
}

/// Human-readable dump of the seasonal bundles and the builtin preset.
pub fn presets_text() -> String {
    let mut out = String::from("Seasonal bundles (weather files are user-supplied):\n");
    for preset in scenario::seasonal_presets() {
        out.push_str(&format!(
            "  {:<7} {}  site {:.4}N {:.4}E, hub {} m agl\n",
            preset.name,
            preset.date,
            preset.site.latitude,
            preset.site.longitude,
            preset.site.altitude_agl
        ));
    }
    out.push_str(&format!(
        "Case grid: {{none, pv-only, wt-only, pv-and-wt}} x {{multirotor, fixed-wing}}\n\n\
         Builtin scenario preset \"table1\":\n\n{TABLE1_TOML}"
    ));
    out
}

/// Top-level dispatch; returns the process exit code.
pub fn run_cli(cli: Cli) -> i32 {
    match cli.command {
        Command::Simulate(args) => {
            let manifest = match RunManifest::from_args(&args) {
                Ok(m) => m,
                Err(e) => {
                    eprintln!("error: {e}");
                    return e.exit_code();
                }
            };
            match run(&manifest) {
                Ok(summary) => {
                    println!("run complete; summary at {}", summary.display());
                    0
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Command::Validate(args) => match validate(&args) {
            Ok(report) => {
                print!("{report}");
                0
            }
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Command::Presets => {
            print!("{}", presets_text());
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weather_arg_forms() {
        let single = parse_weather_args(&["w.csv".to_string()]).unwrap();
        assert_eq!(single[0].0, "default");
        let named =
            parse_weather_args(&["summer=s.csv".to_string(), "winter=w.csv".to_string()])
                .unwrap();
        assert_eq!(named[1].0, "winter");
        assert!(parse_weather_args(&["a.csv".to_string(), "b.csv".to_string()]).is_err());
        assert!(
            parse_weather_args(&["x=a.csv".to_string(), "x=b.csv".to_string()]).is_err()
        );
    }

    #[test]
    fn exit_codes_map_by_error_kind() {
        let config_err: CliError = ConfigError::UnknownPreset("x".into()).into();
        assert_eq!(config_err.exit_code(), EXIT_CONFIG);
        let weather_err: CliError = WeatherError::NoSamples { path: "p".into() }.into();
        assert_eq!(weather_err.exit_code(), EXIT_WEATHER);
        let model_err: CliError = ModelError::FixedWingHover.into();
        assert_eq!(model_err.exit_code(), EXIT_MODEL);
    }

    #[test]
    fn presets_text_lists_seasons_and_cases() {
        let text = presets_text();
        for needle in ["2022-03-20", "2022-06-21", "2022-09-23", "2022-12-21", "pv-and-wt"] {
            assert!(text.contains(needle), "missing {needle}");
        }
    }
}
