//! Weather CSV ingestion and serialization.
//!
//! Schema: header `timestamp,temp_c,pressure_pa,rel_humidity,wind_mps,cloud_opacity`,
//! ISO-8601 timestamps with explicit offset, `.` decimal point, UTF-8, LF
//! line endings. Diagnostics carry the offending row and field.

use chrono::{DateTime, FixedOffset};
use std::io::Write;
use std::path::Path;

use crate::atmosphere::WeatherSample;
use crate::error::WeatherError;

pub const HEADER: [&str; 6] = [
    "timestamp",
    "temp_c",
    "pressure_pa",
    "rel_humidity",
    "wind_mps",
    "cloud_opacity",
];

fn parse_float(
    path: &str,
    row: usize,
    field: &str,
    value: &str,
) -> Result<f64, WeatherError> {
    value.trim().parse::<f64>().map_err(|_| WeatherError::Unparseable {
        path: path.to_string(),
        row,
        field: field.to_string(),
        value: value.to_string(),
    })
}

fn check_range(
    path: &str,
    row: usize,
    field: &str,
    value: f64,
    ok: bool,
    reason: &str,
) -> Result<(), WeatherError> {
    if value.is_finite() && ok {
        Ok(())
    } else {
        Err(WeatherError::OutOfRange {
            path: path.to_string(),
            row,
            field: field.to_string(),
            reason: format!("{value} {reason}"),
        })
    }
}

/// Parse a weather CSV file into validated, time-ordered samples.
pub fn parse_weather_csv(path: impl AsRef<Path>) -> Result<Vec<WeatherSample>, WeatherError> {
    let path_str = path.as_ref().display().to_string();
    let file = std::fs::File::open(path.as_ref()).map_err(|source| WeatherError::Io {
        path: path_str.clone(),
        source,
    })?;
    parse_weather_reader(file, &path_str)
}

/// Parse from any reader; `origin` names the source in diagnostics.
pub fn parse_weather_reader(
    reader: impl std::io::Read,
    origin: &str,
) -> Result<Vec<WeatherSample>, WeatherError> {
    let mut rdr = csv::ReaderBuilder::new().from_reader(reader);
    let header = rdr.headers().map_err(|_| WeatherError::MissingColumn {
        path: origin.to_string(),
        column: "timestamp".to_string(),
    })?;
    let positions: Vec<usize> = HEADER
        .iter()
        .map(|col| {
            header
                .iter()
                .position(|h| h.trim() == *col)
                .ok_or_else(|| WeatherError::MissingColumn {
                    path: origin.to_string(),
                    column: col.to_string(),
                })
        })
        .collect::<Result<_, _>>()?;

    let mut samples = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        // Row numbers are 1-based data rows (header is row 0).
        let row = i + 1;
        let record = record.map_err(|e| WeatherError::Unparseable {
            path: origin.to_string(),
            row,
            field: "<record>".to_string(),
            value: e.to_string(),
        })?;
        let field = |idx: usize| record.get(positions[idx]).unwrap_or("").to_string();

        let ts_raw = field(0);
        let timestamp: DateTime<FixedOffset> = DateTime::parse_from_rfc3339(ts_raw.trim())
            .map_err(|_| WeatherError::Unparseable {
                path: origin.to_string(),
                row,
                field: "timestamp".to_string(),
                value: ts_raw.clone(),
            })?;
        let ambient_temp = parse_float(origin, row, "temp_c", &field(1))?;
        let pressure = parse_float(origin, row, "pressure_pa", &field(2))?;
        let rel_humidity = parse_float(origin, row, "rel_humidity", &field(3))?;
        let wind_speed_ref = parse_float(origin, row, "wind_mps", &field(4))?;
        let cloud_opacity = parse_float(origin, row, "cloud_opacity", &field(5))?;

        check_range(origin, row, "temp_c", ambient_temp, ambient_temp > -273.15, "below absolute zero")?;
        check_range(origin, row, "pressure_pa", pressure, pressure > 0.0, "must be > 0")?;
        check_range(
            origin,
            row,
            "rel_humidity",
            rel_humidity,
            (0.0..=1.0).contains(&rel_humidity),
            "must lie in [0, 1]",
        )?;
        check_range(origin, row, "wind_mps", wind_speed_ref, wind_speed_ref >= 0.0, "must be >= 0")?;
        check_range(
            origin,
            row,
            "cloud_opacity",
            cloud_opacity,
            (0.0..=1.0).contains(&cloud_opacity),
            "must lie in [0, 1]",
        )?;

        if let Some(prev) = samples.last() {
            let prev: &WeatherSample = prev;
            if timestamp <= prev.timestamp {
                return Err(WeatherError::NonMonotone {
                    path: origin.to_string(),
                    row,
                });
            }
        }

        samples.push(WeatherSample {
            timestamp,
            ambient_temp,
            pressure,
            rel_humidity,
            wind_speed_ref,
            cloud_opacity,
        });
    }

    if samples.is_empty() {
        return Err(WeatherError::NoSamples {
            path: origin.to_string(),
        });
    }
    Ok(samples)
}

/// Serialize samples back to the canonical CSV schema. Floats use the
/// shortest round-tripping representation, so parse(serialize(x)) == x.
pub fn serialize_weather(samples: &[WeatherSample]) -> String {
    let mut out = String::new();
    out.push_str(&HEADER.join(","));
    out.push('\n');
    for s in samples {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            s.timestamp.to_rfc3339(),
            s.ambient_temp,
            s.pressure,
            s.rel_humidity,
            s.wind_speed_ref,
            s.cloud_opacity
        ));
    }
    out
}

pub fn write_weather_csv(
    samples: &[WeatherSample],
    path: impl AsRef<Path>,
) -> Result<(), WeatherError> {
    let path_str = path.as_ref().display().to_string();
    let mut file = std::fs::File::create(path.as_ref()).map_err(|source| WeatherError::Io {
        path: path_str.clone(),
        source,
    })?;
    file.write_all(serialize_weather(samples).as_bytes())
        .map_err(|source| WeatherError::Io {
            path: path_str,
            source,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::{Duration, TimeZone};

    fn samples(n: usize) -> Vec<WeatherSample> {
        let start = FixedOffset::east_opt(3600)
            .unwrap()
            .with_ymd_and_hms(2022, 3, 20, 0, 0, 0)
            .unwrap();
        (0..n)
            .map(|i| WeatherSample {
                timestamp: start + Duration::hours(i as i64),
                ambient_temp: 4.5 + 0.25 * i as f64,
                pressure: 101200.0 - 10.0 * i as f64,
                rel_humidity: 0.61,
                wind_speed_ref: 3.3 + 0.1 * i as f64,
                cloud_opacity: 0.4,
            })
            .collect()
    }

    #[test]
    fn round_trip_is_exact() {
        let original = samples(24);
        let text = serialize_weather(&original);
        let parsed = parse_weather_reader(text.as_bytes(), "mem").unwrap();
        assert_eq!(parsed, original);
    }

    #[test]
    fn happy_path_counts_rows() {
        let text = serialize_weather(&samples(24));
        assert_eq!(parse_weather_reader(text.as_bytes(), "mem").unwrap().len(), 24);
    }

    #[test]
    fn out_of_range_humidity_names_row_and_field() {
        let text = "timestamp,temp_c,pressure_pa,rel_humidity,wind_mps,cloud_opacity\n\
                    2022-03-20T00:00:00+01:00,5.0,101000,1.3,3.0,0.2\n";
        let err = parse_weather_reader(text.as_bytes(), "mem").unwrap_err();
        match err {
            WeatherError::OutOfRange { row, field, .. } => {
                assert_eq!(row, 1);
                assert_eq!(field, "rel_humidity");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn header_only_is_distinct_error() {
        let text = "timestamp,temp_c,pressure_pa,rel_humidity,wind_mps,cloud_opacity\n";
        assert!(matches!(
            parse_weather_reader(text.as_bytes(), "mem"),
            Err(WeatherError::NoSamples { .. })
        ));
    }

    #[test]
    fn missing_column_is_reported() {
        let text = "timestamp,temp_c,pressure_pa,rel_humidity,wind_mps\n";
        match parse_weather_reader(text.as_bytes(), "mem").unwrap_err() {
            WeatherError::MissingColumn { column, .. } => assert_eq!(column, "cloud_opacity"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unparseable_value_is_reported() {
        let text = "timestamp,temp_c,pressure_pa,rel_humidity,wind_mps,cloud_opacity\n\
                    2022-03-20T00:00:00+01:00,abc,101000,0.5,3.0,0.2\n";
        match parse_weather_reader(text.as_bytes(), "mem").unwrap_err() {
            WeatherError::Unparseable { field, .. } => assert_eq!(field, "temp_c"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn non_monotone_timestamps_rejected() {
        let mut rows = samples(3);
        rows[2].timestamp = rows[0].timestamp;
        let text = serialize_weather(&rows);
        match parse_weather_reader(text.as_bytes(), "mem").unwrap_err() {
            WeatherError::NonMonotone { row, .. } => assert_eq!(row, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
