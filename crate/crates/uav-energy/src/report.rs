//! Output serialization: ledger CSV, normalized-series CSV, run summary
//! JSON, and static SVG line charts.

use chrono::DateTime;
use std::io;
use std::path::Path;

use crate::scenario::{EnergyLedger, HarvestBreakdown, LedgerRecord, PowerBreakdown};

pub const LEDGER_HEADER: &str = "timestamp,p_propulsion_w,p_mimo_w,p_irs_w,p_consumption_w,\
p_pv_w,p_wt_w,p_harvest_w,net_w,e_consumed_wh,e_harvested_wh";

/// Render a float with 12 significant digits, the ledger's round-trip
/// precision.
fn fmt(v: f64) -> String {
    format!("{v:.11e}")
}

/// Serialize a ledger to the canonical CSV layout.
pub fn ledger_to_csv(ledger: &EnergyLedger) -> String {
    let mut out = String::from(LEDGER_HEADER);
    out.push('\n');
    for r in &ledger.records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.timestamp.to_rfc3339(),
            fmt(r.power.propulsion),
            fmt(r.power.mimo),
            fmt(r.power.irs),
            fmt(r.power.total_consumption),
            fmt(r.harvest.pv),
            fmt(r.harvest.wt),
            fmt(r.harvest.total_harvest),
            fmt(r.net_power),
            fmt(r.cumulative_consumed_wh),
            fmt(r.cumulative_harvested_wh),
        ));
    }
    out
}

pub fn write_ledger_csv(ledger: &EnergyLedger, path: impl AsRef<Path>) -> io::Result<()> {
    std::fs::write(path, ledger_to_csv(ledger))
}

/// Parse a ledger CSV back into records (used for round-trip checks and
/// downstream tooling; the battery column is not part of the schema).
pub fn parse_ledger_csv(
    text: &str,
    step: chrono::Duration,
) -> Result<EnergyLedger, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == LEDGER_HEADER => {}
        other => return Err(format!("unexpected ledger header: {other:?}")),
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 11 {
            return Err(format!("row {}: expected 11 fields, got {}", i + 1, fields.len()));
        }
        let timestamp = DateTime::parse_from_rfc3339(fields[0])
            .map_err(|e| format!("row {}: bad timestamp: {e}", i + 1))?;
        let num = |idx: usize| -> Result<f64, String> {
            fields[idx]
                .parse::<f64>()
                .map_err(|e| format!("row {}: field {}: {e}", i + 1, idx))
        };
        records.push(LedgerRecord {
            timestamp,
            power: PowerBreakdown {
                propulsion: num(1)?,
                mimo: num(2)?,
                irs: num(3)?,
                total_consumption: num(4)?,
            },
            harvest: HarvestBreakdown {
                pv: num(5)?,
                wt: num(6)?,
                total_harvest: num(7)?,
            },
            net_power: num(8)?,
            cumulative_consumed_wh: num(9)?,
            cumulative_harvested_wh: num(10)?,
            battery_soc_wh: None,
        });
    }
    Ok(EnergyLedger {
        records,
        step,
        spilled_wh: 0.0,
        unmet_wh: 0.0,
    })
}

/// A labeled group of equal-length series for normalized output.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesGroup {
    /// One label per column.
    pub labels: Vec<String>,
    /// Column-major values; all columns equal length.
    pub columns: Vec<Vec<f64>>,
}

/// Serialize a series group as CSV with a leading step index column.
pub fn series_to_csv(group: &SeriesGroup) -> String {
    let mut out = String::from("step");
    for label in &group.labels {
        out.push(',');
        out.push_str(label);
    }
    out.push('\n');
    let rows = group.columns.first().map_or(0, Vec::len);
    for row in 0..rows {
        out.push_str(&row.to_string());
        for col in &group.columns {
            out.push(',');
            out.push_str(&fmt(col[row]));
        }
        out.push('\n');
    }
    out
}

pub fn write_series_csv(group: &SeriesGroup, path: impl AsRef<Path>) -> io::Result<()> {
    std::fs::write(path, series_to_csv(group))
}

const SVG_WIDTH: f64 = 800.0;
const SVG_HEIGHT: f64 = 420.0;
const MARGIN: f64 = 50.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#e6b400", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#17becf", "#7f7f7f",
];

/// Emit a static line chart: one polyline per series, y-axis fixed to
/// [0, 1] for normalized data.
pub fn emit_svg(group: &SeriesGroup, title: &str, path: impl AsRef<Path>) -> io::Result<()> {
    std::fs::write(path, render_svg(group, title))
}

pub fn render_svg(group: &SeriesGroup, title: &str) -> String {
    let plot_w = SVG_WIDTH - 2.0 * MARGIN;
    let plot_h = SVG_HEIGHT - 2.0 * MARGIN;
    let n = group.columns.first().map_or(0, Vec::len);

    let mut svg = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">
<rect width="100%" height="100%" fill="white"/>
<text x="{:.1}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{title}</text>
"#,
        SVG_WIDTH / 2.0
    );

    // Axes and gridlines at 0.25 intervals.
    for i in 0..=4 {
        let frac = i as f64 / 4.0;
        let y = MARGIN + plot_h * (1.0 - frac);
        svg.push_str(&format!(
            "<line x1=\"{MARGIN}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{y:.1}\" stroke=\"#ddd\"/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{frac:.2}</text>\n",
            SVG_WIDTH - MARGIN,
            MARGIN - 6.0,
            y + 4.0
        ));
    }
    svg.push_str(&format!(
        "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{plot_w:.1}\" height=\"{plot_h:.1}\" fill=\"none\" stroke=\"black\"/>\n"
    ));

    for (idx, (label, column)) in group.labels.iter().zip(&group.columns).enumerate() {
        let color = PALETTE[idx % PALETTE.len()];
        let points: Vec<String> = column
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let x = if n > 1 {
                    MARGIN + plot_w * i as f64 / (n - 1) as f64
                } else {
                    MARGIN + plot_w / 2.0
                };
                let y = MARGIN + plot_h * (1.0 - v.clamp(0.0, 1.0));
                format!("{x:.2},{y:.2}")
            })
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.join(" ")
        ));
        let legend_y = MARGIN + 16.0 * idx as f64 + 12.0;
        svg.push_str(&format!(
            "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"10\" height=\"10\" fill=\"{color}\"/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\">{label}</text>\n",
            SVG_WIDTH - MARGIN - 150.0,
            legend_y - 9.0,
            SVG_WIDTH - MARGIN - 136.0,
            legend_y
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
