//! Step-by-step tropospheric scintillation fade prediction for earth-space
//! paths above 4° elevation.
//!
//! Every step of the procedure is exposed as a free function so a caller can
//! audit or recompose the chain; [`predict`] runs all nine in order and returns
//! a [`PredictionTrace`] carrying each intermediate.
//!
//! Units follow radio-propagation convention: temperature in °C, relative
//! humidity in percent (0–100), frequency in GHz, lengths in meters, fades and
//! standard deviations in dB.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Height of the turbulent layer, in meters.
pub const DEFAULT_TURBULENCE_HEIGHT_M: f64 = 1000.0;

/// The procedure only covers elevations strictly above this angle.
pub const MIN_ELEVATION_DEG: f64 = 4.0;

/// Frequency range over which the model is considered valid, in GHz.
pub const VALID_FREQUENCY_GHZ: (f64, f64) = (4.0, 20.0);

/// Accepted time-percentage range, in percent of an average year.
pub const TIME_PERCENT_RANGE: (f64, f64) = (0.01, 50.0);

/// Sanity bounds on surface temperature, in °C.
pub const TEMPERATURE_RANGE_C: (f64, f64) = (-40.0, 60.0);

/// Identifies one step of the prediction chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    SaturationVapourPressure,
    WetRefractivity,
    ReferenceSigma,
    PathLength,
    EffectiveDiameter,
    AveragingFactor,
    SignalSigma,
    TimePercentage,
    FadeDepth,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Step::SaturationVapourPressure => "step 1 (saturation vapour pressure)",
            Step::WetRefractivity => "step 2 (wet refractivity)",
            Step::ReferenceSigma => "step 3 (reference sigma)",
            Step::PathLength => "step 4 (effective path length)",
            Step::EffectiveDiameter => "step 5 (effective antenna diameter)",
            Step::AveragingFactor => "step 6 (aperture averaging factor)",
            Step::SignalSigma => "step 7 (signal sigma)",
            Step::TimePercentage => "step 8 (time percentage factor)",
            Step::FadeDepth => "step 9 (fade depth)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{step}: {quantity} = {value} is outside {bound}")]
    OutOfRange {
        step: Step,
        quantity: &'static str,
        value: f64,
        bound: &'static str,
    },
    #[error(
        "{step}: elevation {elevation_deg}° is not supported; the procedure requires \
         elevation > 4° (the low-elevation method is not implemented)"
    )]
    LowElevation { step: Step, elevation_deg: f64 },
}

impl ModelError {
    pub fn step(&self) -> Step {
        match self {
            ModelError::OutOfRange { step, .. } | ModelError::LowElevation { step, .. } => *step,
        }
    }
}

pub type Result<T> = std::result::Result<T, ModelError>;

fn out_of_range(step: Step, quantity: &'static str, value: f64, bound: &'static str) -> ModelError {
    ModelError::OutOfRange {
        step,
        quantity,
        value,
        bound,
    }
}

fn check_temperature(step: Step, t: f64) -> Result<()> {
    if !(TEMPERATURE_RANGE_C.0..=TEMPERATURE_RANGE_C.1).contains(&t) {
        return Err(out_of_range(step, "temperature_c", t, "[-40, 60] °C"));
    }
    Ok(())
}

fn check_humidity(step: Step, h: f64) -> Result<()> {
    if !(0.0..=100.0).contains(&h) {
        return Err(out_of_range(step, "relative_humidity_pct", h, "[0, 100] %"));
    }
    Ok(())
}

fn check_elevation(step: Step, elevation_deg: f64) -> Result<()> {
    if elevation_deg.is_nan() || elevation_deg > 90.0 {
        return Err(out_of_range(step, "elevation_deg", elevation_deg, "(4, 90] °"));
    }
    if elevation_deg <= MIN_ELEVATION_DEG {
        return Err(ModelError::LowElevation {
            step,
            elevation_deg,
        });
    }
    Ok(())
}

fn check_positive(step: Step, quantity: &'static str, value: f64) -> Result<()> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(out_of_range(step, quantity, value, "(0, ∞)"));
    }
    Ok(())
}

/// Aperture-averaging formulation.
///
/// The two variants differ only in the exponent on `(x² + 1)` inside the
/// averaging factor: 11/12 in the ITU-R recommendation, 1/12 in the printed
/// form used by the Bangladesh study. They agree closely for small apertures
/// and diverge as `x` grows; only `PaperCompat` drives the radicand negative
/// for the large dishes of the antenna-diameter study.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelVariant {
    #[default]
    #[serde(rename = "itu")]
    ItuStandard,
    #[serde(rename = "paper")]
    PaperCompat,
}

impl ModelVariant {
    pub fn aperture_exponent(self) -> f64 {
        match self {
            ModelVariant::ItuStandard => 11.0 / 12.0,
            ModelVariant::PaperCompat => 1.0 / 12.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ModelVariant::ItuStandard => "itu",
            ModelVariant::PaperCompat => "paper",
        }
    }
}

impl fmt::Display for ModelVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One month (or longer) of averaged surface measurements at a site.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClimateSample {
    pub temperature_c: f64,
    pub relative_humidity_pct: f64,
}

impl ClimateSample {
    pub fn new(temperature_c: f64, relative_humidity_pct: f64) -> Result<Self> {
        let sample = ClimateSample {
            temperature_c,
            relative_humidity_pct,
        };
        sample.validate()?;
        Ok(sample)
    }

    pub fn validate(&self) -> Result<()> {
        check_temperature(Step::SaturationVapourPressure, self.temperature_c)?;
        check_humidity(Step::WetRefractivity, self.relative_humidity_pct)
    }
}

/// Earth-station link parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkConfig {
    pub frequency_ghz: f64,
    pub elevation_deg: f64,
    pub antenna_diameter_m: f64,
    pub antenna_efficiency: f64,
    pub time_percent: f64,
    pub turbulence_height_m: f64,
    pub variant: ModelVariant,
}

impl LinkConfig {
    /// The study's fixed earth station: 8 m hub antenna at 50 % efficiency,
    /// 0.01 % of the time, 1000 m turbulent layer.
    pub fn baseline(frequency_ghz: f64, elevation_deg: f64) -> Self {
        LinkConfig {
            frequency_ghz,
            elevation_deg,
            antenna_diameter_m: 8.0,
            antenna_efficiency: 0.5,
            time_percent: 0.01,
            turbulence_height_m: DEFAULT_TURBULENCE_HEIGHT_M,
            variant: ModelVariant::ItuStandard,
        }
    }

    pub fn with_variant(mut self, variant: ModelVariant) -> Self {
        self.variant = variant;
        self
    }

    /// Checks every hard invariant. A frequency outside the validity range is
    /// not an error; see [`LinkConfig::out_of_validity`].
    pub fn validate(&self) -> Result<()> {
        check_positive(Step::AveragingFactor, "frequency_ghz", self.frequency_ghz)?;
        check_elevation(Step::PathLength, self.elevation_deg)?;
        check_positive(Step::EffectiveDiameter, "antenna_diameter_m", self.antenna_diameter_m)?;
        if !(self.antenna_efficiency > 0.0 && self.antenna_efficiency <= 1.0) {
            return Err(out_of_range(
                Step::EffectiveDiameter,
                "antenna_efficiency",
                self.antenna_efficiency,
                "(0, 1]",
            ));
        }
        check_time_percent(self.time_percent)?;
        check_positive(Step::PathLength, "turbulence_height_m", self.turbulence_height_m)
    }

    pub fn out_of_validity(&self) -> bool {
        !(VALID_FREQUENCY_GHZ.0..=VALID_FREQUENCY_GHZ.1).contains(&self.frequency_ghz)
    }
}

/// Every intermediate of one prediction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictionTrace {
    pub e_s_hpa: f64,
    pub n_wet_ppm: f64,
    pub sigma_ref_db: f64,
    pub path_length_m: f64,
    pub d_eff_m: f64,
    pub x: f64,
    pub g: f64,
    pub sigma_db: f64,
    pub a_p: f64,
    pub fade_depth_db: f64,
    pub radicand_clamped: bool,
    pub out_of_validity: bool,
}

/// Saturation water vapour pressure `e_s` in hPa.
pub fn saturation_vapour_pressure(t: f64) -> Result<f64> {
    check_temperature(Step::SaturationVapourPressure, t)?;
    Ok(6.11 * (19.7 * t / (t + 273.0)).exp())
}

/// Wet term of the radio refractivity in ppm. `h` is relative humidity in percent.
pub fn wet_refractivity(t: f64, h: f64) -> Result<f64> {
    check_humidity(Step::WetRefractivity, h)?;
    let e_s = saturation_vapour_pressure(t)?;
    let kelvin = t + 273.0;
    Ok(3730.0 * h * e_s / (kelvin * kelvin))
}

/// Reference standard deviation of signal amplitude, in dB.
pub fn reference_sigma(n_wet: f64) -> Result<f64> {
    if !(n_wet >= 0.0 && n_wet.is_finite()) {
        return Err(out_of_range(Step::ReferenceSigma, "n_wet_ppm", n_wet, "[0, ∞)"));
    }
    Ok(3.6e-3 + 1e-4 * n_wet)
}

/// Slant length through a turbulent layer of height `h_l`, in meters.
pub fn effective_path_length(elevation_deg: f64, h_l: f64) -> Result<f64> {
    check_elevation(Step::PathLength, elevation_deg)?;
    check_positive(Step::PathLength, "turbulence_height_m", h_l)?;
    let s = elevation_deg.to_radians().sin();
    Ok(2.0 * h_l / ((s * s + 2.35e-4).sqrt() + s))
}

pub fn effective_antenna_diameter(d: f64, efficiency: f64) -> Result<f64> {
    check_positive(Step::EffectiveDiameter, "antenna_diameter_m", d)?;
    if !(efficiency > 0.0 && efficiency <= 1.0) {
        return Err(out_of_range(
            Step::EffectiveDiameter,
            "antenna_efficiency",
            efficiency,
            "(0, 1]",
        ));
    }
    Ok(efficiency.sqrt() * d)
}

/// Result of the aperture-averaging step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AveragingFactor {
    pub x: f64,
    pub g: f64,
    /// Set when the radicand went negative and `g` was clamped to zero.
    pub radicand_clamped: bool,
}

/// Dimensionless aperture parameter `x = 1.22 · D_eff² · f / L`, with `f` in
/// GHz and `L` in meters.
pub fn aperture_parameter(d_eff: f64, frequency_ghz: f64, path_length_m: f64) -> f64 {
    1.22 * d_eff * d_eff * (frequency_ghz / path_length_m)
}

/// The averaging function `g(x)` itself. Returns `(g, clamped)`.
pub fn averaging_function(x: f64, variant: ModelVariant) -> (f64, bool) {
    let radicand = 3.86
        * (x * x + 1.0).powf(variant.aperture_exponent())
        * ((11.0 / 6.0) * (1.0 / x).atan()).sin()
        - 7.08 * x.powf(5.0 / 6.0);
    if radicand < 0.0 {
        (0.0, true)
    } else {
        (radicand.sqrt(), false)
    }
}

pub fn averaging_factor(
    d_eff: f64,
    frequency_ghz: f64,
    path_length_m: f64,
    variant: ModelVariant,
) -> Result<AveragingFactor> {
    check_positive(Step::AveragingFactor, "d_eff_m", d_eff)?;
    check_positive(Step::AveragingFactor, "frequency_ghz", frequency_ghz)?;
    check_positive(Step::AveragingFactor, "path_length_m", path_length_m)?;
    let x = aperture_parameter(d_eff, frequency_ghz, path_length_m);
    let (g, radicand_clamped) = averaging_function(x, variant);
    Ok(AveragingFactor {
        x,
        g,
        radicand_clamped,
    })
}

/// Standard deviation of the signal for the period and path, in dB.
pub fn signal_sigma(sigma_ref: f64, frequency_ghz: f64, g: f64, elevation_deg: f64) -> Result<f64> {
    check_positive(Step::SignalSigma, "sigma_ref_db", sigma_ref)?;
    check_positive(Step::SignalSigma, "frequency_ghz", frequency_ghz)?;
    if !(g >= 0.0 && g.is_finite()) {
        return Err(out_of_range(Step::SignalSigma, "g", g, "[0, ∞)"));
    }
    check_elevation(Step::SignalSigma, elevation_deg)?;
    let sin_el = elevation_deg.to_radians().sin();
    Ok(sigma_ref * frequency_ghz.powf(7.0 / 12.0) * g / sin_el.powf(1.2))
}

fn check_time_percent(p: f64) -> Result<()> {
    if !(TIME_PERCENT_RANGE.0..=TIME_PERCENT_RANGE.1).contains(&p) {
        return Err(out_of_range(
            Step::TimePercentage,
            "time_percent",
            p,
            "[0.01, 50] % (time-percentage polynomial range)",
        ));
    }
    Ok(())
}

/// Time-percentage factor `a(p)`.
pub fn time_percentage_factor(p: f64) -> Result<f64> {
    check_time_percent(p)?;
    let l = p.log10();
    Ok(-0.061 * l.powi(3) + 0.072 * l.powi(2) - 1.71 * l + 3.0)
}

/// Fade depth exceeded for the chosen time percentage, in dB.
pub fn fade_depth(a_p: f64, sigma: f64) -> f64 {
    debug_assert!(a_p >= 0.0 && sigma >= 0.0);
    a_p * sigma
}

/// Runs the full chain for one climate sample and link.
pub fn predict(climate: &ClimateSample, config: &LinkConfig) -> Result<PredictionTrace> {
    config.validate()?;
    let t = climate.temperature_c;
    let h = climate.relative_humidity_pct;

    let e_s_hpa = saturation_vapour_pressure(t)?;
    let n_wet_ppm = wet_refractivity(t, h)?;
    let sigma_ref_db = reference_sigma(n_wet_ppm)?;
    let path_length_m = effective_path_length(config.elevation_deg, config.turbulence_height_m)?;
    let d_eff_m = effective_antenna_diameter(config.antenna_diameter_m, config.antenna_efficiency)?;
    let avg = averaging_factor(d_eff_m, config.frequency_ghz, path_length_m, config.variant)?;
    let sigma_db = signal_sigma(sigma_ref_db, config.frequency_ghz, avg.g, config.elevation_deg)?;
    let a_p = time_percentage_factor(config.time_percent)?;
    let fade_depth_db = fade_depth(a_p, sigma_db);

    Ok(PredictionTrace {
        e_s_hpa,
        n_wet_ppm,
        sigma_ref_db,
        path_length_m,
        d_eff_m,
        x: avg.x,
        g: avg.g,
        sigma_db,
        a_p,
        fade_depth_db,
        radicand_clamped: avg.radicand_clamped,
        out_of_validity: config.out_of_validity(),
    })
}
