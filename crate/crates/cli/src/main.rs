//! `scint`: command-line front end for scintillation fade prediction.
//!
//! Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.

mod output;

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use scint_core::analysis::{
    self, longitude_window, monthly_profile, run_sweep, ClimatePeriod, SeriesSelection,
    SweepParameter, SweepSpec,
};
use scint_core::climate::{self, annual_means, builtin_dataset, GeoPoint, SiteClimate};
use scint_core::model::{self, ClimateSample, LinkConfig, ModelVariant, DEFAULT_TURBULENCE_HEIGHT_M};
use scint_core::TemperatureSeries;

use output::{Document, Format};

#[derive(Debug)]
enum CliError {
    Validation(String),
    /// A validation failure whose full report goes to stdout.
    Report(Document),
    Usage(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Report(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Usage(m) | CliError::Io(m) => m,
            CliError::Report(_) => "validation failed",
        }
    }
}

impl From<model::ModelError> for CliError {
    fn from(e: model::ModelError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<analysis::AnalysisError> for CliError {
    fn from(e: analysis::AnalysisError) -> Self {
        match e {
            analysis::AnalysisError::EmptySweep | analysis::AnalysisError::NonMonotone { .. } => {
                CliError::Usage(e.to_string())
            }
            _ => CliError::Validation(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "scint", version, about = "Tropospheric scintillation fade depth prediction for satellite links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Predict the fade for one climate and link, printing every intermediate.
    Predict(PredictArgs),
    /// Sweep one link parameter across sites and temperature series.
    Sweep(SweepArgs),
    /// Month-by-month fade for one site.
    Season(SeasonArgs),
    /// Export or validate climate CSV files.
    Dataset(DatasetArgs),
    /// Geostationary longitudes visible above a minimum elevation.
    Window(WindowArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Band {
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "Ku", alias = "ku", alias = "KU")]
    Ku,
    #[value(name = "Ka", alias = "ka", alias = "KA")]
    Ka,
}

impl Band {
    fn ghz(self) -> f64 {
        match self {
            Band::C => 6.0,
            Band::Ku => 10.95,
            Band::Ka => 20.0,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Itu,
    Paper,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesArg {
    Max,
    Min,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesSelArg {
    Max,
    Min,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepArg {
    Elev,
    Freq,
    Diameter,
    Percent,
    Month,
    Satlon,
}

#[derive(Args)]
struct LinkArgs {
    /// Carrier frequency in GHz.
    #[arg(long, conflicts_with = "band")]
    freq: Option<f64>,
    /// Band alias: C = 6, Ku = 10.95, Ka = 20 GHz.
    #[arg(long, value_enum)]
    band: Option<Band>,
    /// Earth-station elevation in degrees (must exceed 4).
    #[arg(long)]
    elev: Option<f64>,
    #[arg(long, default_value_t = 8.0)]
    diameter: f64,
    #[arg(long, default_value_t = 0.5)]
    efficiency: f64,
    /// Percentage of an average year the fade is exceeded.
    #[arg(long, default_value_t = 0.01)]
    percent: f64,
    #[arg(long, default_value_t = DEFAULT_TURBULENCE_HEIGHT_M)]
    turbulence_height: f64,
    #[arg(long, value_enum, default_value = "itu")]
    variant: VariantArg,
}

impl LinkArgs {
    fn frequency(&self, swept: bool) -> Result<f64, CliError> {
        match (self.freq, self.band) {
            (Some(f), None) => Ok(f),
            (None, Some(b)) => Ok(b.ghz()),
            (None, None) if swept => Ok(10.95),
            (None, None) => Err(CliError::Usage("one of --freq or --band is required".into())),
            (Some(_), Some(_)) => Err(CliError::Usage("--freq and --band are mutually exclusive".into())),
        }
    }

    /// Builds the link. A field named by `swept` is overwritten per row, so
    /// its flag may be omitted and a placeholder is used.
    fn config(&self, swept: Option<SweepParameter>) -> Result<LinkConfig, CliError> {
        let elevation_swept = matches!(
            swept,
            Some(SweepParameter::ElevationDeg | SweepParameter::SatelliteLongitudeDeg)
        );
        let elevation_deg = match self.elev {
            Some(e) => e,
            None if elevation_swept => 45.0,
            None => return Err(CliError::Usage("--elev is required".into())),
        };
        Ok(LinkConfig {
            frequency_ghz: self.frequency(swept == Some(SweepParameter::FrequencyGhz))?,
            elevation_deg,
            antenna_diameter_m: self.diameter,
            antenna_efficiency: self.efficiency,
            time_percent: self.percent,
            turbulence_height_m: self.turbulence_height,
            variant: match self.variant {
                VariantArg::Itu => ModelVariant::ItuStandard,
                VariantArg::Paper => ModelVariant::PaperCompat,
            },
        })
    }
}

#[derive(Args)]
struct PredictArgs {
    /// Site name from the dataset (builtin unless --climate-file is given).
    #[arg(long, conflicts_with_all = ["temp", "rh"])]
    site: Option<String>,
    /// Surface temperature in °C.
    #[arg(long, requires = "rh")]
    temp: Option<f64>,
    /// Relative humidity in percent.
    #[arg(long, requires = "temp")]
    rh: Option<f64>,
    #[command(flatten)]
    link: LinkArgs,
    #[arg(long, value_enum, default_value = "max")]
    series: SeriesArg,
    /// `annual` or a calendar month 1-12.
    #[arg(long, default_value = "annual")]
    month: String,
    #[arg(long)]
    climate_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    sweep: SweepArg,
    #[arg(long, allow_hyphen_values = true)]
    from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    to: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    step: Option<f64>,
    /// Explicit comma-separated values instead of --from/--to/--step.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["from", "to", "step"], allow_hyphen_values = true)]
    values: Option<Vec<f64>>,
    /// `all` or a comma-separated list of site names.
    #[arg(long, default_value = "all")]
    sites: String,
    #[command(flatten)]
    link: LinkArgs,
    #[arg(long, value_enum, default_value = "both")]
    series: SeriesSelArg,
    /// `annual`, `monthwise` or a calendar month 1-12.
    #[arg(long, default_value = "annual")]
    month: String,
    #[arg(long)]
    climate_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct SeasonArgs {
    #[arg(long)]
    site: String,
    #[command(flatten)]
    link: LinkArgs,
    #[arg(long)]
    climate_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct DatasetArgs {
    /// Write the builtin dataset as CSV.
    #[arg(long, conflicts_with = "validate", required_unless_present = "validate")]
    export: bool,
    /// Destination for --export (stdout when omitted).
    #[arg(long, requires = "export")]
    out: Option<PathBuf>,
    /// Check a climate CSV file and report every problem found.
    #[arg(long)]
    validate: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct WindowArgs {
    /// Minimum elevation in degrees every site must see.
    #[arg(long)]
    min_elev: f64,
    /// `extremes` (Tetulia and Teknaf), `all`, or a comma-separated list of sites.
    #[arg(long, default_value = "extremes")]
    sites: String,
    #[arg(long)]
    climate_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

fn load_sites(file: Option<&PathBuf>) -> Result<Vec<SiteClimate>, CliError> {
    match file {
        None => Ok(builtin_dataset()),
        Some(path) => {
            let f = File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            climate::load_csv(BufReader::new(f)).map_err(|e| match e {
                climate::ClimateError::Io(io) => CliError::Io(format!("{}: {io}", path.display())),
                other => CliError::Validation(format!("{}: {other}", path.display())),
            })
        }
    }
}

fn find_site(sites: &[SiteClimate], name: &str) -> Result<SiteClimate, CliError> {
    sites
        .iter()
        .find(|s| s.name().eq_ignore_ascii_case(name))
        .cloned()
        .ok_or_else(|| {
            let names: Vec<_> = sites.iter().map(|s| s.name()).collect();
            CliError::Usage(format!("unknown site `{name}`; available: {}", names.join(", ")))
        })
}

fn select_sites(sites: &[SiteClimate], spec: &str) -> Result<Vec<SiteClimate>, CliError> {
    if spec.eq_ignore_ascii_case("all") {
        return Ok(sites.to_vec());
    }
    spec.split(',').map(|n| find_site(sites, n.trim())).collect()
}

fn parse_period(s: &str, allow_monthwise: bool) -> Result<ClimatePeriod, CliError> {
    match s {
        "annual" => Ok(ClimatePeriod::AnnualMean),
        "monthwise" if allow_monthwise => Ok(ClimatePeriod::MonthwiseMean),
        _ => match s.parse::<u8>() {
            Ok(m) if (1..=12).contains(&m) => Ok(ClimatePeriod::Month(m)),
            _ => Err(CliError::Usage(format!(
                "--month must be annual{} or 1-12, got `{s}`",
                if allow_monthwise { ", monthwise" } else { "" }
            ))),
        },
    }
}

fn range_values(from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) || step == 0.0 {
        return Err(CliError::Usage("--from/--to/--step must be finite with a non-zero step".into()));
    }
    let span = to - from;
    if span != 0.0 && span.signum() != step.signum() {
        return Err(CliError::Usage(format!(
            "empty range: stepping {step} from {from} never reaches {to}"
        )));
    }
    let n = (span / step + 1e-9).floor() as usize + 1;
    if n > 100_000 {
        return Err(CliError::Usage(format!("range produces {n} values (limit 100000)")));
    }
    Ok((0..n)
        .map(|i| ((from + i as f64 * step) * 1e9).round() / 1e9)
        .collect())
}

fn cmd_predict(args: PredictArgs) -> Result<Document, CliError> {
    let config = args.link.config(None)?;
    let series = match args.series {
        SeriesArg::Max => TemperatureSeries::Max,
        SeriesArg::Min => TemperatureSeries::Min,
    };
    let period = parse_period(&args.month, false)?;

    let (site, climate) = match (&args.site, args.temp, args.rh) {
        (Some(name), _, _) => {
            let sites = load_sites(args.climate_file.as_ref())?;
            let site = find_site(&sites, name)?;
            let sample = match period {
                ClimatePeriod::Month(m) => site.month(m).expect("validated month").sample(series),
                _ => annual_means(&site).sample(series),
            };
            (Some(site), sample)
        }
        (None, Some(t), Some(h)) => (None, ClimateSample::new(t, h)?),
        _ => return Err(CliError::Usage("either --site or both --temp and --rh are required".into())),
    };

    let trace = model::predict(&climate, &config)?;
    Ok(output::predict_document(
        site.as_ref().map(|s| s.name()),
        site.as_ref().map(|_| series),
        site.as_ref().map(|_| period),
        &climate,
        &config,
        &trace,
        args.format,
    ))
}

fn cmd_sweep(args: SweepArgs) -> Result<Document, CliError> {
    let values = match (&args.values, args.from, args.to, args.step) {
        (Some(v), _, _, _) => v.clone(),
        (None, Some(f), Some(t), Some(s)) => range_values(f, t, s)?,
        _ => return Err(CliError::Usage("give --values or all of --from, --to, --step".into())),
    };
    let parameter = match args.sweep {
        SweepArg::Elev => SweepParameter::ElevationDeg,
        SweepArg::Freq => SweepParameter::FrequencyGhz,
        SweepArg::Diameter => SweepParameter::AntennaDiameterM,
        SweepArg::Percent => SweepParameter::TimePercent,
        SweepArg::Month => SweepParameter::Month,
        SweepArg::Satlon => SweepParameter::SatelliteLongitudeDeg,
    };
    let base = args.link.config(Some(parameter))?;
    let sites = select_sites(&load_sites(args.climate_file.as_ref())?, &args.sites)?;
    let spec = SweepSpec {
        parameter,
        values,
        base,
        sites,
        series: match args.series {
            SeriesSelArg::Max => SeriesSelection::Max,
            SeriesSelArg::Min => SeriesSelection::Min,
            SeriesSelArg::Both => SeriesSelection::Both,
        },
        period: parse_period(&args.month, true)?,
    };
    let result = run_sweep(&spec)?;
    Ok(output::sweep_document(&result, args.format))
}

fn cmd_season(args: SeasonArgs) -> Result<Document, CliError> {
    let config = args.link.config(None)?;
    let sites = load_sites(args.climate_file.as_ref())?;
    let site = find_site(&sites, &args.site)?;
    let profile = monthly_profile(&site, &config)?;
    Ok(output::season_document(&profile, &config, args.format))
}

fn cmd_dataset(args: DatasetArgs) -> Result<Document, CliError> {
    if let Some(path) = &args.validate {
        let f = File::open(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        let (sites, diagnostics) = climate::validate_csv(BufReader::new(f));
        if let Some(climate::ClimateError::Io(e)) = diagnostics.iter().find(|d| matches!(d, climate::ClimateError::Io(_))) {
            return Err(CliError::Io(format!("{}: {e}", path.display())));
        }
        let messages: Vec<String> = diagnostics.iter().map(ToString::to_string).collect();
        let doc = output::validate_document(&path.display().to_string(), sites.len(), &messages, args.format);
        return if messages.is_empty() {
            Ok(doc)
        } else {
            Err(CliError::Report(doc))
        };
    }

    let mut buf = Vec::new();
    climate::write_csv(&builtin_dataset(), &mut buf).map_err(|e| CliError::Io(e.to_string()))?;
    match &args.out {
        Some(path) => {
            std::fs::write(path, &buf).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            Ok(Document::empty())
        }
        None => Ok(Document::raw(String::from_utf8(buf).expect("csv output is utf-8"))),
    }
}

fn cmd_window(args: WindowArgs) -> Result<Document, CliError> {
    let (labels, points): (Vec<String>, Vec<GeoPoint>) = if args.sites.eq_ignore_ascii_case("extremes") {
        climate::TERRITORY_EXTREMES
            .iter()
            .map(|(n, p)| (n.to_string(), *p))
            .unzip()
    } else {
        select_sites(&load_sites(args.climate_file.as_ref())?, &args.sites)?
            .iter()
            .map(|s| (s.name().to_string(), s.location()))
            .unzip()
    };
    let window = longitude_window(args.min_elev, &points)?;
    Ok(output::window_document(args.min_elev, &labels, &window, args.format))
}

fn run(cli: Cli) -> Result<Document, CliError> {
    match cli.command {
        Command::Predict(a) => cmd_predict(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Season(a) => cmd_season(a),
        Command::Dataset(a) => cmd_dataset(a),
        Command::Window(a) => cmd_window(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(doc) => {
            let mut out = io::stdout().lock();
            if out.write_all(doc.as_str().as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            if let CliError::Report(doc) = &e {
                print!("{}", doc.as_str());
            }
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
