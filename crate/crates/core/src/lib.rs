//! Tropospheric scintillation fade depth prediction for earth-to-satellite
//! links, driven by monthly ground climate data.
//!
//! - [`model`]: the nine-step fade procedure and its intermediates.
//! - [`climate`]: embedded Bangladesh monthly normals and CSV ingestion.
//! - [`analysis`]: parameter sweeps, seasonal profiles and geostationary geometry.

pub mod analysis;
pub mod climate;
pub mod model;

pub use climate::{annual_means, builtin_dataset, SiteClimate, TemperatureSeries};
pub use model::{predict, ClimateSample, LinkConfig, ModelError, ModelVariant, PredictionTrace};
