//! Parameter sweeps, seasonal profiles and geostationary elevation geometry.

use std::fmt;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::climate::{annual_means, GeoPoint, SiteClimate, TemperatureSeries};
use crate::model::{self, ClimateSample, LinkConfig, ModelError, ModelVariant, PredictionTrace};

/// Earth radius over geostationary orbit radius.
pub const GEO_RADIUS_RATIO: f64 = 0.15127;

/// Latitude beyond which a geostationary satellite never rises.
pub const GEO_VISIBILITY_LAT_DEG: f64 = 81.3;

/// Longitude scan step used by [`longitude_window`], in degrees.
pub const WINDOW_SCAN_STEP_DEG: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("sweep has no values")]
    EmptySweep,
    #[error("sweep values must be strictly monotone (value {index} breaks the order)")]
    NonMonotone { index: usize },
    #[error("sweep has no sites")]
    NoSites,
    #[error("{parameter} = {value} is not a valid sweep value: {reason}")]
    InvalidValue {
        parameter: SweepParameter,
        value: f64,
        reason: String,
    },
    #[error("site {site}, {series} series, {parameter} = {value}: {source}")]
    Row {
        site: String,
        series: TemperatureSeries,
        parameter: SweepParameter,
        value: f64,
        #[source]
        source: ModelError,
    },
    #[error("{quantity} = {value} is outside {bound}")]
    Geometry {
        quantity: &'static str,
        value: f64,
        bound: &'static str,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    ElevationDeg,
    FrequencyGhz,
    AntennaDiameterM,
    TimePercent,
    Month,
    SatelliteLongitudeDeg,
}

impl SweepParameter {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepParameter::ElevationDeg => "elevation_deg",
            SweepParameter::FrequencyGhz => "frequency_ghz",
            SweepParameter::AntennaDiameterM => "antenna_diameter_m",
            SweepParameter::TimePercent => "time_percent",
            SweepParameter::Month => "month",
            SweepParameter::SatelliteLongitudeDeg => "satellite_longitude_deg",
        }
    }

    /// Copy of `base` with this parameter set to `value`. Month and satellite
    /// longitude do not live in the link config and leave it untouched.
    pub fn apply(self, base: &LinkConfig, value: f64) -> LinkConfig {
        let mut cfg = *base;
        match self {
            SweepParameter::ElevationDeg => cfg.elevation_deg = value,
            SweepParameter::FrequencyGhz => cfg.frequency_ghz = value,
            SweepParameter::AntennaDiameterM => cfg.antenna_diameter_m = value,
            SweepParameter::TimePercent => cfg.time_percent = value,
            SweepParameter::Month | SweepParameter::SatelliteLongitudeDeg => {}
        }
        cfg
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesSelection {
    #[default]
    Max,
    Min,
    Both,
}

impl SeriesSelection {
    pub fn series(self) -> &'static [TemperatureSeries] {
        match self {
            SeriesSelection::Max => &TemperatureSeries::BOTH[..1],
            SeriesSelection::Min => &TemperatureSeries::BOTH[1..],
            SeriesSelection::Both => &TemperatureSeries::BOTH,
        }
    }
}

/// How monthly climate is reduced before (or after) running the model.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClimatePeriod {
    /// Average the twelve monthly inputs, then predict once.
    #[default]
    AnnualMean,
    /// Predict with one calendar month's inputs.
    Month(u8),
    /// Predict each month separately, then average the twelve fades.
    MonthwiseMean,
}

impl ClimatePeriod {
    pub fn label(self) -> String {
        match self {
            ClimatePeriod::AnnualMean => "annual".to_string(),
            ClimatePeriod::Month(m) => m.to_string(),
            ClimatePeriod::MonthwiseMean => "monthwise".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    pub base: LinkConfig,
    pub sites: Vec<SiteClimate>,
    pub series: SeriesSelection,
    pub period: ClimatePeriod,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), AnalysisError> {
        if self.values.is_empty() {
            return Err(AnalysisError::EmptySweep);
        }
        if self.sites.is_empty() {
            return Err(AnalysisError::NoSites);
        }
        if self.values.len() > 1 {
            let increasing = self.values[1] > self.values[0];
            for (i, w) in self.values.windows(2).enumerate() {
                let ok = if increasing { w[1] > w[0] } else { w[1] < w[0] };
                if !ok {
                    return Err(AnalysisError::NonMonotone { index: i + 1 });
                }
            }
        }
        if let ClimatePeriod::Month(m) = self.period {
            if !(1..=12).contains(&m) {
                return Err(AnalysisError::InvalidValue {
                    parameter: SweepParameter::Month,
                    value: f64::from(m),
                    reason: "month must be 1-12".into(),
                });
            }
        }
        for &v in &self.values {
            let invalid = |reason: String| AnalysisError::InvalidValue {
                parameter: self.parameter,
                value: v,
                reason,
            };
            match self.parameter {
                SweepParameter::Month => {
                    if v.fract() != 0.0 || !(1.0..=12.0).contains(&v) {
                        return Err(invalid("month must be an integer 1-12".into()));
                    }
                }
                SweepParameter::SatelliteLongitudeDeg => {
                    if !(-180.0..=180.0).contains(&v) {
                        return Err(invalid("longitude must lie in [-180, 180]".into()));
                    }
                }
                p => p.apply(&self.base, v).validate().map_err(|e| invalid(e.to_string()))?,
            }
        }
        match self.parameter {
            SweepParameter::Month => self.base.validate()?,
            // Elevation comes from the geometry; everything else must be valid.
            SweepParameter::SatelliteLongitudeDeg => {
                SweepParameter::ElevationDeg.apply(&self.base, 45.0).validate()?
            }
            _ => {}
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub site: String,
    pub series: TemperatureSeries,
    pub value: f64,
    /// Elevation used for the row; differs from the base only in elevation and
    /// satellite-longitude sweeps.
    pub elevation_deg: f64,
    pub fade_depth_db: f64,
    pub radicand_clamped: bool,
    pub out_of_validity: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
    pub base: LinkConfig,
    pub sites: Vec<String>,
    pub series: SeriesSelection,
    pub period: ClimatePeriod,
    pub variant: ModelVariant,
    pub generated_at: DateTime<Utc>,
    pub rows: Vec<SweepRow>,
}

struct Outcome {
    fade_depth_db: f64,
    radicand_clamped: bool,
    out_of_validity: bool,
}

fn evaluate(
    site: &SiteClimate,
    series: TemperatureSeries,
    config: &LinkConfig,
    period: ClimatePeriod,
) -> Result<Outcome, ModelError> {
    let single = |sample: ClimateSample| -> Result<Outcome, ModelError> {
        let t = model::predict(&sample, config)?;
        Ok(Outcome {
            fade_depth_db: t.fade_depth_db,
            radicand_clamped: t.radicand_clamped,
            out_of_validity: t.out_of_validity,
        })
    };
    match period {
        ClimatePeriod::AnnualMean => single(annual_means(site).sample(series)),
        ClimatePeriod::Month(m) => {
            let rec = site.month(m).expect("month validated by caller");
            single(rec.sample(series))
        }
        ClimatePeriod::MonthwiseMean => {
            let mut acc = Outcome {
                fade_depth_db: 0.0,
                radicand_clamped: false,
                out_of_validity: false,
            };
            for rec in site.months() {
                let o = single(rec.sample(series))?;
                acc.fade_depth_db += o.fade_depth_db;
                acc.radicand_clamped |= o.radicand_clamped;
                acc.out_of_validity |= o.out_of_validity;
            }
            acc.fade_depth_db /= site.months().len() as f64;
            Ok(acc)
        }
    }
}

/// Runs one prediction per (value × site × series), in that nesting order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult, AnalysisError> {
    spec.validate()?;
    let mut rows = Vec::with_capacity(spec.values.len() * spec.sites.len() * 2);
    for &value in &spec.values {
        for site in &spec.sites {
            let mut config = spec.parameter.apply(&spec.base, value);
            let mut period = spec.period;
            match spec.parameter {
                SweepParameter::Month => period = ClimatePeriod::Month(value as u8),
                SweepParameter::SatelliteLongitudeDeg => {
                    let loc = site.location();
                    config.elevation_deg =
                        geostationary_elevation(loc.latitude_deg, loc.longitude_deg, value)?;
                }
                _ => {}
            }
            for &series in spec.series.series() {
                let o = evaluate(site, series, &config, period).map_err(|source| AnalysisError::Row {
                    site: site.name().to_string(),
                    series,
                    parameter: spec.parameter,
                    value,
                    source,
                })?;
                rows.push(SweepRow {
                    site: site.name().to_string(),
                    series,
                    value,
                    elevation_deg: config.elevation_deg,
                    fade_depth_db: o.fade_depth_db,
                    radicand_clamped: o.radicand_clamped,
                    out_of_validity: o.out_of_validity,
                });
            }
        }
    }
    Ok(SweepResult {
        parameter: spec.parameter,
        values: spec.values.clone(),
        base: spec.base,
        sites: spec.sites.iter().map(|s| s.name().to_string()).collect(),
        series: spec.series,
        period: spec.period,
        variant: spec.base.variant,
        generated_at: Utc::now(),
        rows,
    })
}

/// Month-by-month predictions for both temperature series, January first.
#[derive(Debug, Clone, Serialize)]
pub struct MonthlyProfile {
    pub site: String,
    pub max: Vec<PredictionTrace>,
    pub min: Vec<PredictionTrace>,
}

impl MonthlyProfile {
    pub fn traces(&self, series: TemperatureSeries) -> &[PredictionTrace] {
        match series {
            TemperatureSeries::Max => &self.max,
            TemperatureSeries::Min => &self.min,
        }
    }

    pub fn fades(&self, series: TemperatureSeries) -> [f64; 12] {
        let mut out = [0.0; 12];
        for (o, t) in out.iter_mut().zip(self.traces(series)) {
            *o = t.fade_depth_db;
        }
        out
    }

    /// Mean fade over the inclusive month range `from..=to` (1-based).
    pub fn mean_over(&self, series: TemperatureSeries, from: u8, to: u8) -> f64 {
        let f = self.fades(series);
        let slice = &f[usize::from(from - 1)..usize::from(to)];
        slice.iter().sum::<f64>() / slice.len() as f64
    }
}

pub fn monthly_profile(site: &SiteClimate, config: &LinkConfig) -> Result<MonthlyProfile, ModelError> {
    let run = |series: TemperatureSeries| {
        site.months()
            .iter()
            .map(|rec| model::predict(&rec.sample(series), config))
            .collect::<Result<Vec<_>, _>>()
    };
    Ok(MonthlyProfile {
        site: site.name().to_string(),
        max: run(TemperatureSeries::Max)?,
        min: run(TemperatureSeries::Min)?,
    })
}

fn wrap_longitude(lon: f64) -> f64 {
    let w = (lon + 180.0).rem_euclid(360.0) - 180.0;
    if w == -180.0 && lon > 0.0 {
        180.0
    } else {
        w
    }
}

/// Elevation of a geostationary satellite seen from a ground site, in degrees.
/// Negative values mean the satellite is below the horizon.
pub fn geostationary_elevation(
    site_lat_deg: f64,
    site_lon_deg: f64,
    satellite_lon_deg: f64,
) -> Result<f64, AnalysisError> {
    if site_lat_deg.is_nan() || site_lat_deg.abs() >= GEO_VISIBILITY_LAT_DEG {
        return Err(AnalysisError::Geometry {
            quantity: "site_lat_deg",
            value: site_lat_deg,
            bound: "(-81.3, 81.3)",
        });
    }
    for (quantity, value) in [("site_lon_deg", site_lon_deg), ("satellite_lon_deg", satellite_lon_deg)] {
        if !(-180.0..=180.0).contains(&value) {
            return Err(AnalysisError::Geometry {
                quantity,
                value,
                bound: "[-180, 180]",
            });
        }
    }
    let delta = (satellite_lon_deg - site_lon_deg).to_radians();
    let cos_psi = site_lat_deg.to_radians().cos() * delta.cos();
    let sin_psi = (1.0 - cos_psi * cos_psi).max(0.0).sqrt();
    if sin_psi == 0.0 && cos_psi > 0.0 {
        return Ok(90.0);
    }
    Ok((cos_psi - GEO_RADIUS_RATIO).atan2(sin_psi).to_degrees())
}

/// Contiguous range of satellite longitudes, west edge first. The range may
/// cross the antimeridian, in which case `west_deg > east_deg`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LongitudeWindow {
    Empty,
    Interval { west_deg: f64, east_deg: f64 },
}

impl LongitudeWindow {
    pub fn is_empty(&self) -> bool {
        matches!(self, LongitudeWindow::Empty)
    }

    pub fn width_deg(&self) -> f64 {
        match *self {
            LongitudeWindow::Empty => 0.0,
            LongitudeWindow::Interval { west_deg, east_deg } => (east_deg - west_deg).rem_euclid(360.0),
        }
    }

    pub fn contains(&self, lon: f64) -> bool {
        match *self {
            LongitudeWindow::Empty => false,
            LongitudeWindow::Interval { west_deg, east_deg } => {
                let off = (lon - west_deg).rem_euclid(360.0);
                off <= (east_deg - west_deg).rem_euclid(360.0) + 1e-9
            }
        }
    }
}

/// Largest contiguous range of geostationary longitudes seen at or above
/// `min_elevation_deg` from every point, scanned at 0.1° resolution.
pub fn longitude_window(min_elevation_deg: f64, points: &[GeoPoint]) -> Result<LongitudeWindow, AnalysisError> {
    if !(min_elevation_deg > model::MIN_ELEVATION_DEG && min_elevation_deg <= 90.0) {
        return Err(AnalysisError::Geometry {
            quantity: "min_elevation_deg",
            value: min_elevation_deg,
            bound: "(4, 90]",
        });
    }
    if points.is_empty() {
        return Ok(LongitudeWindow::Empty);
    }
    let center = points.iter().map(|p| p.longitude_deg).sum::<f64>() / points.len() as f64;
    let steps = (360.0 / WINDOW_SCAN_STEP_DEG).round() as i64;
    let start = ((center - 180.0) / WINDOW_SCAN_STEP_DEG).floor() as i64;

    let mut best: Option<(i64, i64)> = None;
    let mut run: Option<i64> = None;
    for i in 0..=steps {
        let ok = if i == steps {
            false
        } else {
            let lon = wrap_longitude((start + i) as f64 * WINDOW_SCAN_STEP_DEG);
            let mut all = true;
            for p in points {
                if geostationary_elevation(p.latitude_deg, p.longitude_deg, lon)? < min_elevation_deg {
                    all = false;
                    break;
                }
            }
            all
        };
        match (ok, run) {
            (true, None) => run = Some(i),
            (false, Some(r)) => {
                if best.is_none_or(|(a, b)| i - 1 - r > b - a) {
                    best = Some((r, i - 1));
                }
                run = None;
            }
            _ => {}
        }
    }
    Ok(match best {
        None => LongitudeWindow::Empty,
        Some((a, b)) => LongitudeWindow::Interval {
            west_deg: round_grid(wrap_longitude((start + a) as f64 * WINDOW_SCAN_STEP_DEG)),
            east_deg: round_grid(wrap_longitude((start + b) as f64 * WINDOW_SCAN_STEP_DEG)),
        },
    })
}

fn round_grid(v: f64) -> f64 {
    let per_degree = (1.0 / WINDOW_SCAN_STEP_DEG).round();
    (v * per_degree).round() / per_degree
}

pub fn territory_extremes() -> Vec<GeoPoint> {
    crate::climate::TERRITORY_EXTREMES.iter().map(|e| e.1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::climate::{builtin_dataset, builtin_site, MonthlyRecord};

    fn ku() -> LinkConfig {
        LinkConfig::baseline(10.95, 5.0)
    }

    fn spec(parameter: SweepParameter, values: Vec<f64>, series: SeriesSelection) -> SweepSpec {
        SweepSpec {
            parameter,
            values,
            base: ku(),
            sites: builtin_dataset(),
            series,
            period: ClimatePeriod::AnnualMean,
        }
    }

    fn flat_site() -> SiteClimate {
        let recs = (1..=12).map(|m| MonthlyRecord {
            month: m,
            rh_pct: 75.0,
            t_max_c: 30.0,
            t_min_c: 20.0,
        });
        SiteClimate::new("Flat", 10.0, 10.0, recs).unwrap()
    }

    #[test]
    fn elevation_sweep_rajshahi_and_decreasing() {
        let values: Vec<f64> = (5..=25).map(f64::from).collect();
        let res = run_sweep(&spec(SweepParameter::ElevationDeg, values, SeriesSelection::Max)).unwrap();
        assert_eq!(res.rows.len(), 21 * 4);
        let raj: Vec<_> = res.rows.iter().filter(|r| r.site == "Rajshahi").collect();
        assert!((raj[0].fade_depth_db - 8.639_909_511_467_295).abs() < 1e-8);
        assert!(raj.windows(2).all(|w| w[1].fade_depth_db < w[0].fade_depth_db));
        // Rows are grouped by swept value.
        assert!(res.rows.windows(2).all(|w| w[0].value <= w[1].value));
    }

    #[test]
    fn frequency_sweep_increases_per_site() {
        let res = run_sweep(&spec(SweepParameter::FrequencyGhz, vec![6.0, 10.95, 20.0], SeriesSelection::Max)).unwrap();
        for site in ["Dhaka", "Chittagong", "Rajshahi", "Sylhet"] {
            let f: Vec<_> = res.rows.iter().filter(|r| r.site == site).map(|r| r.fade_depth_db).collect();
            assert_eq!(f.len(), 3);
            assert!(f[0] < f[1] && f[1] < f[2], "{site}: {f:?}");
        }
    }

    #[test]
    fn single_value_cardinality() {
        let res = run_sweep(&spec(SweepParameter::TimePercent, vec![0.1], SeriesSelection::Both)).unwrap();
        assert_eq!(res.rows.len(), 4 * 2);
        assert_eq!(res.variant, ModelVariant::ItuStandard);
    }

    #[test]
    fn sweep_rejects_bad_specs() {
        assert_eq!(
            run_sweep(&spec(SweepParameter::ElevationDeg, vec![], SeriesSelection::Max)).unwrap_err(),
            AnalysisError::EmptySweep
        );
        assert_eq!(
            run_sweep(&spec(SweepParameter::ElevationDeg, vec![5.0, 10.0, 10.0], SeriesSelection::Max)).unwrap_err(),
            AnalysisError::NonMonotone { index: 2 }
        );
        assert!(matches!(
            run_sweep(&spec(SweepParameter::ElevationDeg, vec![3.0, 10.0], SeriesSelection::Max)),
            Err(AnalysisError::InvalidValue { .. })
        ));
        assert!(matches!(
            run_sweep(&spec(SweepParameter::Month, vec![0.0, 1.0], SeriesSelection::Max)),
            Err(AnalysisError::InvalidValue { .. })
        ));
        let mut s = spec(SweepParameter::ElevationDeg, vec![5.0], SeriesSelection::Max);
        s.sites.clear();
        assert_eq!(run_sweep(&s).unwrap_err(), AnalysisError::NoSites);
    }

    #[test]
    fn decreasing_values_are_accepted() {
        let res = run_sweep(&spec(SweepParameter::AntennaDiameterM, vec![10.0, 8.0, 2.0], SeriesSelection::Min)).unwrap();
        assert_eq!(res.rows.len(), 12);
    }

    #[test]
    fn month_sweep_matches_monthly_profile() {
        let dhaka = builtin_site("Dhaka").unwrap();
        let mut s = spec(SweepParameter::Month, (1..=12).map(f64::from).collect(), SeriesSelection::Both);
        s.sites = vec![dhaka.clone()];
        let res = run_sweep(&s).unwrap();
        let prof = monthly_profile(&dhaka, &ku()).unwrap();
        for r in &res.rows {
            let m = r.value as usize - 1;
            assert_eq!(r.fade_depth_db, prof.fades(r.series)[m]);
        }
    }

    #[test]
    fn monthwise_mean_is_labeled_and_differs() {
        let mut s = spec(SweepParameter::ElevationDeg, vec![5.0], SeriesSelection::Max);
        s.sites = vec![builtin_site("Dhaka").unwrap()];
        let annual = run_sweep(&s).unwrap().rows[0].fade_depth_db;
        s.period = ClimatePeriod::MonthwiseMean;
        let monthwise = run_sweep(&s).unwrap().rows[0].fade_depth_db;
        let prof = monthly_profile(&s.sites[0], &ku()).unwrap();
        let expected = prof.fades(TemperatureSeries::Max).iter().sum::<f64>() / 12.0;
        assert!((monthwise - expected).abs() < 1e-12);
        assert!(annual != monthwise);
        assert_eq!(ClimatePeriod::MonthwiseMean.label(), "monthwise");
    }

    #[test]
    fn satellite_longitude_sweep_uses_site_geometry() {
        let mut s = spec(SweepParameter::SatelliteLongitudeDeg, vec![90.0, 120.0, 150.0], SeriesSelection::Max);
        s.sites = vec![builtin_site("Dhaka").unwrap()];
        let res = run_sweep(&s).unwrap();
        assert!(res.rows[0].elevation_deg > res.rows[2].elevation_deg);
        assert!(res.rows[0].fade_depth_db < res.rows[2].fade_depth_db);

        // Far enough east the satellite drops below 4°.
        s.values = vec![170.0];
        assert!(matches!(run_sweep(&s), Err(AnalysisError::Row { .. })));
    }

    #[test]
    fn dhaka_monthly_profile_shape() {
        let prof = monthly_profile(&builtin_site("Dhaka").unwrap(), &ku()).unwrap();
        let f = prof.fades(TemperatureSeries::Max);
        // Oracle values, max series.
        assert!((f[5] - 9.527_833_876_725_66).abs() < 1e-8);
        let ratio = prof.mean_over(TemperatureSeries::Max, 6, 9) / prof.mean_over(TemperatureSeries::Max, 1, 3);
        assert!((ratio - 1.400_032_616_448_80).abs() < 1e-9, "{ratio}");
    }

    #[test]
    fn peak_month_is_in_monsoon() {
        for site in builtin_dataset() {
            let f = monthly_profile(&site, &ku()).unwrap().fades(TemperatureSeries::Max);
            let peak = f
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.total_cmp(b.1))
                .unwrap()
                .0
                + 1;
            assert!((6..=9).contains(&peak), "{}: peak {peak}", site.name());
        }
    }

    #[test]
    fn flat_climate_gives_flat_profile() {
        let prof = monthly_profile(&flat_site(), &ku()).unwrap();
        for series in TemperatureSeries::BOTH {
            let f = prof.fades(series);
            assert!(f.iter().all(|&v| v == f[0]));
        }
    }

    #[test]
    fn geostationary_elevation_examples() {
        assert_eq!(geostationary_elevation(0.0, 45.0, 45.0).unwrap(), 90.0);
        let tetulia = geostationary_elevation(26.5, 88.34, 152.0).unwrap();
        assert!((tetulia - 14.993_599_806_977_35).abs() < 1e-9, "{tetulia}");
        let dhaka = geostationary_elevation(23.8, 90.4, 90.4).unwrap();
        assert!((dhaka - 62.147_342_282_320_2).abs() < 1e-9, "{dhaka}");
        assert!(geostationary_elevation(82.0, 0.0, 0.0).is_err());
        assert!(geostationary_elevation(10.0, 0.0, 200.0).is_err());
        // Opposite side of the earth.
        assert!(geostationary_elevation(0.0, 0.0, 180.0).unwrap() < 0.0);
    }

    #[test]
    fn bangladesh_window_at_15_degrees() {
        let w = longitude_window(15.0, &territory_extremes()).unwrap();
        match w {
            LongitudeWindow::Interval { west_deg, east_deg } => {
                assert!((151.0..=153.0).contains(&east_deg), "{east_deg}");
                assert!(west_deg < 88.34);
            }
            LongitudeWindow::Empty => panic!("expected a window"),
        }
        let relaxed = longitude_window(5.0, &territory_extremes()).unwrap();
        assert!(relaxed.width_deg() > w.width_deg());
        if let LongitudeWindow::Interval { west_deg, east_deg } = w {
            assert!(relaxed.contains(west_deg) && relaxed.contains(east_deg));
        }
    }

    #[test]
    fn zenith_window_is_empty_for_two_sites() {
        let w = longitude_window(90.0, &territory_extremes()).unwrap();
        assert!(w.is_empty());
        assert_eq!(w.width_deg(), 0.0);
        assert!(longitude_window(4.0, &territory_extremes()).is_err());
    }

    #[test]
    fn window_can_cross_antimeridian() {
        let p = [GeoPoint {
            latitude_deg: 0.0,
            longitude_deg: 175.0,
        }];
        match longitude_window(30.0, &p).unwrap() {
            LongitudeWindow::Interval { west_deg, east_deg } => {
                assert!(west_deg > east_deg, "{west_deg} {east_deg}");
                assert!(LongitudeWindow::Interval { west_deg, east_deg }.contains(-179.0));
            }
            LongitudeWindow::Empty => panic!(),
        }
    }
}
