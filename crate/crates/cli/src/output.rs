//! JSON and CSV renderings of command results.
//!
//! Every JSON document is a single object carrying `kind`, `generated_at` and
//! a `warnings` array. CSV output never contains a timestamp, so identical
//! invocations are byte-identical. Numbers use shortest round-trip formatting.

use std::fmt::Write as _;

use chrono::Utc;
use clap::ValueEnum;
use serde_json::{json, Value};

use scint_core::analysis::{ClimatePeriod, LongitudeWindow, MonthlyProfile, SweepResult};
use scint_core::climate::MONTH_NAMES;
use scint_core::model::{ClimateSample, LinkConfig, PredictionTrace};
use scint_core::TemperatureSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Default)]
pub struct Document {
    text: String,
}

impl Document {
    pub fn empty() -> Self {
        Document::default()
    }

    pub fn raw(text: String) -> Self {
        Document { text }
    }

    fn json(value: Value) -> Self {
        let mut text = serde_json::to_string_pretty(&value).expect("json values serialize");
        text.push('\n');
        Document { text }
    }

    pub fn as_str(&self) -> &str {
        &self.text
    }
}

fn frequency_warning(f: f64) -> String {
    format!("frequency {f} GHz is outside the 4-20 GHz validity range of the model")
}

const CLAMP_WARNING: &str = "aperture averaging radicand is negative; g clamped to 0, fade nullified";

fn trace_warnings(config: &LinkConfig, trace: &PredictionTrace) -> Vec<String> {
    let mut w = Vec::new();
    if trace.out_of_validity {
        w.push(frequency_warning(config.frequency_ghz));
    }
    if trace.radicand_clamped {
        w.push(CLAMP_WARNING.to_string());
    }
    w
}

fn emit_warnings_to_stderr(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn link_json(config: &LinkConfig) -> Value {
    serde_json::to_value(config).expect("link config serializes")
}

pub fn predict_document(
    site: Option<&str>,
    series: Option<TemperatureSeries>,
    period: Option<ClimatePeriod>,
    climate: &ClimateSample,
    config: &LinkConfig,
    trace: &PredictionTrace,
    format: Format,
) -> Document {
    let warnings = trace_warnings(config, trace);
    match format {
        Format::Json => Document::json(json!({
            "kind": "prediction",
            "generated_at": Utc::now().to_rfc3339(),
            "inputs": {
                "site": site,
                "series": series.map(TemperatureSeries::as_str),
                "period": period.map(ClimatePeriod::label),
                "climate": climate,
                "link": link_json(config),
            },
            "trace": trace,
            "warnings": warnings,
        })),
        Format::Csv => {
            emit_warnings_to_stderr(&warnings);
            let mut out = String::from(
                "site,series,period,temperature_c,relative_humidity_pct,frequency_ghz,elevation_deg,\
                 antenna_diameter_m,antenna_efficiency,time_percent,turbulence_height_m,variant,\
                 e_s_hpa,n_wet_ppm,sigma_ref_db,path_length_m,d_eff_m,x,g,sigma_db,a_p,fade_depth_db,\
                 radicand_clamped,out_of_validity\n",
            );
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                csv_field(site.unwrap_or("")),
                series.map(TemperatureSeries::as_str).unwrap_or(""),
                period.map(ClimatePeriod::label).unwrap_or_default(),
                climate.temperature_c,
                climate.relative_humidity_pct,
                config.frequency_ghz,
                config.elevation_deg,
                config.antenna_diameter_m,
                config.antenna_efficiency,
                config.time_percent,
                config.turbulence_height_m,
                config.variant,
                trace.e_s_hpa,
                trace.n_wet_ppm,
                trace.sigma_ref_db,
                trace.path_length_m,
                trace.d_eff_m,
                trace.x,
                trace.g,
                trace.sigma_db,
                trace.a_p,
                trace.fade_depth_db,
                trace.radicand_clamped,
                trace.out_of_validity,
            );
            Document::raw(out)
        }
    }
}

fn sweep_warnings(result: &SweepResult) -> Vec<String> {
    let mut w = Vec::new();
    let oov = result.rows.iter().filter(|r| r.out_of_validity).count();
    if oov > 0 {
        w.push(format!(
            "{oov} row(s) use a frequency outside the 4-20 GHz validity range of the model"
        ));
    }
    let clamped = result.rows.iter().filter(|r| r.radicand_clamped).count();
    if clamped > 0 {
        w.push(format!("{clamped} row(s): {CLAMP_WARNING}"));
    }
    w
}

pub fn sweep_document(result: &SweepResult, format: Format) -> Document {
    let warnings = sweep_warnings(result);
    match format {
        Format::Json => Document::json(json!({
            "kind": "sweep",
            "generated_at": result.generated_at.to_rfc3339(),
            "parameter": result.parameter,
            "values": result.values,
            "base": link_json(&result.base),
            "sites": result.sites,
            "series": result.series,
            "period": result.period.label(),
            "variant": result.variant,
            "rows": result.rows,
            "warnings": warnings,
        })),
        Format::Csv => {
            emit_warnings_to_stderr(&warnings);
            let mut out = String::from(
                "site,series,parameter,value,elevation_deg,fade_depth_db,radicand_clamped,out_of_validity,variant,period\n",
            );
            let period = result.period.label();
            for r in &result.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    csv_field(&r.site),
                    r.series,
                    result.parameter,
                    r.value,
                    r.elevation_deg,
                    r.fade_depth_db,
                    r.radicand_clamped,
                    r.out_of_validity,
                    result.variant,
                    period,
                );
            }
            Document::raw(out)
        }
    }
}

pub fn season_document(profile: &MonthlyProfile, config: &LinkConfig, format: Format) -> Document {
    let mut warnings = Vec::new();
    if config.out_of_validity() {
        warnings.push(frequency_warning(config.frequency_ghz));
    }
    let clamped = TemperatureSeries::BOTH
        .iter()
        .flat_map(|&s| profile.traces(s))
        .filter(|t| t.radicand_clamped)
        .count();
    if clamped > 0 {
        warnings.push(format!("{clamped} month(s): {CLAMP_WARNING}"));
    }

    let rows = TemperatureSeries::BOTH.iter().flat_map(|&series| {
        profile
            .traces(series)
            .iter()
            .enumerate()
            .map(move |(i, t)| (series, i as u8 + 1, t))
    });

    match format {
        Format::Json => Document::json(json!({
            "kind": "season",
            "generated_at": Utc::now().to_rfc3339(),
            "site": profile.site,
            "link": link_json(config),
            "rows": rows
                .map(|(series, month, t)| json!({
                    "series": series,
                    "month": month,
                    "month_name": MONTH_NAMES[usize::from(month - 1)],
                    "fade_depth_db": t.fade_depth_db,
                    "radicand_clamped": t.radicand_clamped,
                    "out_of_validity": t.out_of_validity,
                }))
                .collect::<Vec<_>>(),
            "warnings": warnings,
        })),
        Format::Csv => {
            emit_warnings_to_stderr(&warnings);
            let mut out = String::from("site,series,month,month_name,fade_depth_db,radicand_clamped,out_of_validity\n");
            for (series, month, t) in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    csv_field(&profile.site),
                    series,
                    month,
                    MONTH_NAMES[usize::from(month - 1)],
                    t.fade_depth_db,
                    t.radicand_clamped,
                    t.out_of_validity,
                );
            }
            Document::raw(out)
        }
    }
}

pub fn validate_document(file: &str, sites: usize, diagnostics: &[String], format: Format) -> Document {
    match format {
        Format::Json => Document::json(json!({
            "kind": "dataset_validation",
            "generated_at": Utc::now().to_rfc3339(),
            "file": file,
            "sites": sites,
            "diagnostics": diagnostics,
            "warnings": [],
        })),
        Format::Csv => {
            let mut out = String::from("diagnostic\n");
            for d in diagnostics {
                let _ = writeln!(out, "{}", csv_field(d));
            }
            Document::raw(out)
        }
    }
}

pub fn window_document(min_elevation_deg: f64, sites: &[String], window: &LongitudeWindow, format: Format) -> Document {
    let mut warnings = Vec::new();
    if window.is_empty() {
        warnings.push(format!("no geostationary longitude is seen above {min_elevation_deg}° from every site"));
    }
    match format {
        Format::Json => Document::json(json!({
            "kind": "longitude_window",
            "generated_at": Utc::now().to_rfc3339(),
            "min_elevation_deg": min_elevation_deg,
            "sites": sites,
            "window": window,
            "width_deg": window.width_deg(),
            "warnings": warnings,
        })),
        Format::Csv => {
            emit_warnings_to_stderr(&warnings);
            let (w, e) = match *window {
                LongitudeWindow::Empty => (String::new(), String::new()),
                LongitudeWindow::Interval { west_deg, east_deg } => (west_deg.to_string(), east_deg.to_string()),
            };
            Document::raw(format!(
                "min_elevation_deg,west_deg,east_deg,width_deg\n{min_elevation_deg},{w},{e},{}\n",
                window.width_deg()
            ))
        }
    }
}
