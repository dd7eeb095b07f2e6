//! Monthly surface climate data: the embedded Bangladesh normals and CSV
//! ingestion of user-supplied sites.
//!
//! CSV schema (header is exact):
//!
//! ```text
//! site,lat_deg,lon_deg,month,rh_pct,t_max_c,t_min_c
//! ```
//!
//! One file may hold any number of sites; each site needs exactly one row per
//! calendar month.

use std::fmt;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{ClimateSample, TEMPERATURE_RANGE_C};

pub const CSV_HEADER: [&str; 7] = ["site", "lat_deg", "lon_deg", "month", "rh_pct", "t_max_c", "t_min_c"];

pub const MONTH_NAMES: [&str; 12] = [
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
];

#[derive(Debug, Error)]
pub enum ClimateError {
    #[error("line {line}: malformed row: {message}")]
    Malformed { line: u64, message: String },
    #[error("line {line}: {field} = {value} is outside {bound}")]
    Invalid {
        line: u64,
        field: &'static str,
        value: f64,
        bound: &'static str,
    },
    #[error("line {line}: site {site} month {month}: t_min_c ({t_min}) exceeds t_max_c ({t_max})")]
    MinAboveMax {
        line: u64,
        site: String,
        month: u8,
        t_min: f64,
        t_max: f64,
    },
    #[error("line {line}: site {site} coordinates differ from its first row")]
    InconsistentCoordinates { line: u64, site: String },
    #[error("site {site}: duplicate month {month} (line {line})")]
    DuplicateMonth { site: String, month: u8, line: u64 },
    #[error("site {site}: missing month {month}")]
    MissingMonth { site: String, month: u8 },
    #[error("site {site}: {field} = {value} is outside {bound}")]
    InvalidSite {
        site: String,
        field: &'static str,
        value: f64,
        bound: &'static str,
    },
    #[error("no data rows")]
    Empty,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Which temperature column feeds the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TemperatureSeries {
    Max,
    Min,
}

impl TemperatureSeries {
    pub const BOTH: [TemperatureSeries; 2] = [TemperatureSeries::Max, TemperatureSeries::Min];

    pub fn as_str(self) -> &'static str {
        match self {
            TemperatureSeries::Max => "max",
            TemperatureSeries::Min => "min",
        }
    }
}

impl fmt::Display for TemperatureSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoPoint {
    pub latitude_deg: f64,
    pub longitude_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonthlyRecord {
    pub month: u8,
    pub rh_pct: f64,
    pub t_max_c: f64,
    pub t_min_c: f64,
}

impl MonthlyRecord {
    pub fn temperature(&self, series: TemperatureSeries) -> f64 {
        match series {
            TemperatureSeries::Max => self.t_max_c,
            TemperatureSeries::Min => self.t_min_c,
        }
    }

    pub fn sample(&self, series: TemperatureSeries) -> ClimateSample {
        ClimateSample {
            temperature_c: self.temperature(series),
            relative_humidity_pct: self.rh_pct,
        }
    }

    fn check(&self, line: u64, site: &str) -> Result<(), ClimateError> {
        if !(1..=12).contains(&self.month) {
            return Err(ClimateError::Invalid {
                line,
                field: "month",
                value: f64::from(self.month),
                bound: "[1, 12]",
            });
        }
        if !(0.0..=100.0).contains(&self.rh_pct) {
            return Err(ClimateError::Invalid {
                line,
                field: "rh_pct",
                value: self.rh_pct,
                bound: "[0, 100]",
            });
        }
        let t_range = TEMPERATURE_RANGE_C.0..=TEMPERATURE_RANGE_C.1;
        for (field, value) in [("t_max_c", self.t_max_c), ("t_min_c", self.t_min_c)] {
            if !t_range.contains(&value) {
                return Err(ClimateError::Invalid {
                    line,
                    field,
                    value,
                    bound: "[-40, 60]",
                });
            }
        }
        if self.t_min_c > self.t_max_c {
            return Err(ClimateError::MinAboveMax {
                line,
                site: site.to_string(),
                month: self.month,
                t_min: self.t_min_c,
                t_max: self.t_max_c,
            });
        }
        Ok(())
    }
}

/// A named site with twelve monthly records, January first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SiteClimate {
    name: String,
    location: GeoPoint,
    months: [MonthlyRecord; 12],
}

impl SiteClimate {
    /// Builds a site from records in any order. Every month 1–12 must appear
    /// exactly once.
    pub fn new(
        name: impl Into<String>,
        latitude_deg: f64,
        longitude_deg: f64,
        records: impl IntoIterator<Item = MonthlyRecord>,
    ) -> Result<Self, ClimateError> {
        let name = name.into();
        check_coordinates(&name, latitude_deg, longitude_deg)?;
        let mut slots: [Option<MonthlyRecord>; 12] = [None; 12];
        for rec in records {
            rec.check(0, &name)?;
            let slot = &mut slots[usize::from(rec.month - 1)];
            if slot.is_some() {
                return Err(ClimateError::DuplicateMonth {
                    site: name,
                    month: rec.month,
                    line: 0,
                });
            }
            *slot = Some(rec);
        }
        let mut months = [MonthlyRecord {
            month: 0,
            rh_pct: 0.0,
            t_max_c: 0.0,
            t_min_c: 0.0,
        }; 12];
        for (i, slot) in slots.iter().enumerate() {
            months[i] = slot.ok_or_else(|| ClimateError::MissingMonth {
                site: name.clone(),
                month: i as u8 + 1,
            })?;
        }
        Ok(SiteClimate {
            name,
            location: GeoPoint {
                latitude_deg,
                longitude_deg,
            },
            months,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn location(&self) -> GeoPoint {
        self.location
    }

    pub fn months(&self) -> &[MonthlyRecord; 12] {
        &self.months
    }

    /// Record for calendar month `month` (1–12).
    pub fn month(&self, month: u8) -> Option<&MonthlyRecord> {
        month.checked_sub(1).and_then(|i| self.months.get(usize::from(i)))
    }
}

fn check_coordinates(site: &str, lat: f64, lon: f64) -> Result<(), ClimateError> {
    if !(-90.0..=90.0).contains(&lat) {
        return Err(ClimateError::InvalidSite {
            site: site.to_string(),
            field: "lat_deg",
            value: lat,
            bound: "[-90, 90]",
        });
    }
    if !(-180.0..=180.0).contains(&lon) {
        return Err(ClimateError::InvalidSite {
            site: site.to_string(),
            field: "lon_deg",
            value: lon,
            bound: "[-180, 180]",
        });
    }
    Ok(())
}

/// Arithmetic means over the twelve months.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnualMeans {
    pub rh_pct: f64,
    pub t_max_c: f64,
    pub t_min_c: f64,
}

impl AnnualMeans {
    pub fn sample(&self, series: TemperatureSeries) -> ClimateSample {
        ClimateSample {
            temperature_c: match series {
                TemperatureSeries::Max => self.t_max_c,
                TemperatureSeries::Min => self.t_min_c,
            },
            relative_humidity_pct: self.rh_pct,
        }
    }
}

pub fn annual_means(site: &SiteClimate) -> AnnualMeans {
    let n = site.months.len() as f64;
    let (rh, tx, tn) = site.months.iter().fold((0.0, 0.0, 0.0), |acc, m| {
        (acc.0 + m.rh_pct, acc.1 + m.t_max_c, acc.2 + m.t_min_c)
    });
    AnnualMeans {
        rh_pct: rh / n,
        t_max_c: tx / n,
        t_min_c: tn / n,
    }
}

// Monthly normals 1971–2010, Bangladesh Agricultural Research Council.
const RH_PCT: [[u8; 12]; 4] = [
    [70, 64, 62, 71, 77, 83, 84, 83, 83, 79, 73, 72],
    [73, 70, 72, 77, 80, 84, 86, 85, 84, 82, 78, 75],
    [76, 69, 61, 64, 74, 83, 87, 86, 86, 82, 77, 76],
    [74, 68, 67, 76, 81, 87, 87, 86, 86, 83, 77, 75],
];
const T_MAX_C: [[i8; 12]; 4] = [
    [25, 28, 32, 34, 33, 32, 32, 32, 32, 32, 29, 26],
    [26, 28, 31, 32, 32, 32, 31, 31, 32, 32, 30, 27],
    [24, 28, 33, 36, 35, 34, 32, 33, 32, 32, 29, 26],
    [25, 28, 31, 31, 31, 31, 31, 32, 31, 31, 29, 27],
];
const T_MIN_C: [[i8; 12]; 4] = [
    [13, 16, 21, 24, 25, 26, 26, 26, 26, 24, 19, 14],
    [14, 16, 20, 24, 25, 25, 25, 25, 25, 24, 20, 16],
    [11, 13, 18, 23, 24, 26, 26, 26, 26, 23, 18, 13],
    [13, 15, 18, 21, 23, 24, 25, 25, 25, 23, 19, 14],
];

// City-centre coordinates from standard gazetteers; these are not part of the
// climate normals and only feed the geostationary geometry.
const CITIES: [(&str, f64, f64); 4] = [
    ("Dhaka", 23.8103, 90.4125),
    ("Chittagong", 22.3569, 91.7832),
    ("Rajshahi", 24.3745, 88.6042),
    ("Sylhet", 24.8949, 91.8687),
];

/// North-western (Tetulia) and south-eastern (Teknaf) extremes of Bangladesh.
pub const TERRITORY_EXTREMES: [(&str, GeoPoint); 2] = [
    (
        "Tetulia",
        GeoPoint {
            latitude_deg: 26.5,
            longitude_deg: 88.34,
        },
    ),
    (
        "Teknaf",
        GeoPoint {
            latitude_deg: 20.86,
            longitude_deg: 92.23,
        },
    ),
];

/// The four embedded Bangladeshi sites: Dhaka, Chittagong, Rajshahi, Sylhet.
pub fn builtin_dataset() -> Vec<SiteClimate> {
    CITIES
        .iter()
        .enumerate()
        .map(|(c, &(name, lat, lon))| {
            let records = (0..12).map(|m| MonthlyRecord {
                month: m as u8 + 1,
                rh_pct: f64::from(RH_PCT[c][m]),
                t_max_c: f64::from(T_MAX_C[c][m]),
                t_min_c: f64::from(T_MIN_C[c][m]),
            });
            SiteClimate::new(name, lat, lon, records).expect("embedded dataset is valid")
        })
        .collect()
}

/// Case-insensitive lookup in the builtin dataset.
pub fn builtin_site(name: &str) -> Option<SiteClimate> {
    builtin_dataset()
        .into_iter()
        .find(|s| s.name.eq_ignore_ascii_case(name))
}

pub fn builtin_site_names() -> Vec<&'static str> {
    CITIES.iter().map(|c| c.0).collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    site: String,
    lat_deg: f64,
    lon_deg: f64,
    month: u8,
    rh_pct: f64,
    t_max_c: f64,
    t_min_c: f64,
}

pub fn write_csv<W: Write>(sites: &[SiteClimate], writer: W) -> Result<(), ClimateError> {
    let mut w = csv::Writer::from_writer(writer);
    for site in sites {
        for m in &site.months {
            w.serialize(CsvRow {
                site: site.name.clone(),
                lat_deg: site.location.latitude_deg,
                lon_deg: site.location.longitude_deg,
                month: m.month,
                rh_pct: m.rh_pct,
                t_max_c: m.t_max_c,
                t_min_c: m.t_min_c,
            })
            .map_err(csv_to_climate)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn csv_to_climate(e: csv::Error) -> ClimateError {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => ClimateError::Io(io),
        kind => ClimateError::Malformed {
            line,
            message: format!("{kind:?}"),
        },
    }
}

struct PendingSite {
    name: String,
    lat: f64,
    lon: f64,
    tainted: bool,
    records: Vec<(u64, MonthlyRecord)>,
}

/// Parses and validates every row, collecting all problems rather than
/// stopping at the first. Returns the sites that passed alongside the
/// diagnostics, in file order.
pub fn validate_csv<R: Read>(source: R) -> (Vec<SiteClimate>, Vec<ClimateError>) {
    let mut diagnostics = Vec::new();
    let mut pending: Vec<PendingSite> = Vec::new();
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(source);

    let headers = match rdr.headers() {
        Ok(h) if h.iter().eq(CSV_HEADER.iter().copied()) => h.clone(),
        Ok(_) => {
            diagnostics.push(ClimateError::Malformed {
                line: 1,
                message: format!("expected header `{}`", CSV_HEADER.join(",")),
            });
            return (Vec::new(), diagnostics);
        }
        Err(e) => {
            diagnostics.push(csv_to_climate(e));
            return (Vec::new(), diagnostics);
        }
    };

    let mut record = csv::StringRecord::new();
    loop {
        match rdr.read_record(&mut record) {
            Ok(true) => {}
            Ok(false) => break,
            Err(e) => {
                let err = csv_to_climate(e);
                let fatal = matches!(err, ClimateError::Io(_));
                diagnostics.push(err);
                if fatal {
                    break;
                }
                continue;
            }
        }
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let row: CsvRow = match record.deserialize(Some(&headers)) {
            Ok(row) => row,
            Err(e) => {
                diagnostics.push(ClimateError::Malformed {
                    line,
                    message: csv_to_climate(e).to_string(),
                });
                continue;
            }
        };
        accept_row(row, line, &mut pending, &mut diagnostics);
    }

    let mut sites = Vec::new();
    for p in pending {
        let mut complete = true;
        let mut seen = [false; 12];
        for (line, rec) in &p.records {
            let idx = usize::from(rec.month - 1);
            if seen[idx] {
                diagnostics.push(ClimateError::DuplicateMonth {
                    site: p.name.clone(),
                    month: rec.month,
                    line: *line,
                });
                complete = false;
            }
            seen[idx] = true;
        }
        for (i, present) in seen.iter().enumerate() {
            if !present {
                diagnostics.push(ClimateError::MissingMonth {
                    site: p.name.clone(),
                    month: i as u8 + 1,
                });
                complete = false;
            }
        }
        if complete && !p.tainted {
            match SiteClimate::new(p.name, p.lat, p.lon, p.records.into_iter().map(|(_, r)| r)) {
                Ok(site) => sites.push(site),
                Err(e) => diagnostics.push(e),
            }
        }
    }
    if sites.is_empty() && diagnostics.is_empty() {
        diagnostics.push(ClimateError::Empty);
    }
    (sites, diagnostics)
}

fn accept_row(
    row: CsvRow,
    line: u64,
    pending: &mut Vec<PendingSite>,
    diagnostics: &mut Vec<ClimateError>,
) {
    let rec = MonthlyRecord {
        month: row.month,
        rh_pct: row.rh_pct,
        t_max_c: row.t_max_c,
        t_min_c: row.t_min_c,
    };
    let idx = match pending.iter().position(|p| p.name == row.site) {
        Some(idx) => {
            let p = &mut pending[idx];
            if p.lat != row.lat_deg || p.lon != row.lon_deg {
                diagnostics.push(ClimateError::InconsistentCoordinates {
                    line,
                    site: row.site.clone(),
                });
                p.tainted = true;
            }
            idx
        }
        None => {
            let mut tainted = false;
            if let Err(e) = check_coordinates(&row.site, row.lat_deg, row.lon_deg) {
                diagnostics.push(match e {
                    ClimateError::InvalidSite {
                        field, value, bound, ..
                    } => ClimateError::Invalid {
                        line,
                        field,
                        value,
                        bound,
                    },
                    other => other,
                });
                tainted = true;
            }
            pending.push(PendingSite {
                name: row.site.clone(),
                lat: row.lat_deg,
                lon: row.lon_deg,
                tainted,
                records: Vec::new(),
            });
            pending.len() - 1
        }
    };
    let p = &mut pending[idx];
    match rec.check(line, &row.site) {
        Ok(()) => p.records.push((line, rec)),
        Err(e) => {
            diagnostics.push(e);
            p.tainted = true;
            // Keep in-range months so completeness is still judged per month.
            if (1..=12).contains(&rec.month) {
                p.records.push((line, rec));
            }
        }
    }
}

/// Loads sites from CSV, failing on the first problem found.
pub fn load_csv<R: Read>(source: R) -> Result<Vec<SiteClimate>, ClimateError> {
    let (sites, mut diagnostics) = validate_csv(source);
    if diagnostics.is_empty() {
        Ok(sites)
    } else {
        Err(diagnostics.swap_remove(0))
    }
}
