use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::model::SolvableModel;
use crate::oscillator::Oscillator;
use crate::polycore::{rational_from_f64, Rational};
use crate::spectral::{Grid, REFERENCE_POINTS, REFERENCE_X_MAX, REFERENCE_X_MIN};

pub const DEFAULT_N_MAX: u32 = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Flags shared by every subcommand. Anything left unset falls back to the
/// `--config` file, then to defaults.
#[derive(Clone, Debug, Default, Args)]
pub struct RunArgs {
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Base model (only `oscillator` is available).
    #[arg(long)]
    pub model: Option<String>,
    /// Selected levels, comma separated, e.g. `1,2`.
    #[arg(long, value_delimiter = ',')]
    pub levels: Option<Vec<u32>>,
    /// Highest level examined by verification, spectra and classification.
    #[arg(long)]
    pub nmax: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub xmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub xmax: Option<f64>,
    /// Grid points including both ends.
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Output directory for artifact files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run independent checks concurrently.
    #[arg(long)]
    pub parallel: bool,
    /// Adds a constant to V_N before checking (negative control).
    #[arg(long, hide = true, allow_negative_numbers = true)]
    pub perturb_vn: Option<f64>,
}

/// Contents of a `--config` file; every field optional.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub model: Option<String>,
    pub levels: Option<Vec<u32>>,
    pub n_max: Option<u32>,
    pub x_min: Option<f64>,
    pub x_max: Option<f64>,
    pub points: Option<usize>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub parallel: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }
}

/// Fully resolved settings for one invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub model: String,
    pub levels: Vec<u32>,
    pub n_max: u32,
    pub grid: Grid,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub parallel: bool,
    pub perturb_vn: Option<Rational>,
    /// Value of `DARBOUX_SEED`; accepted but unused by the deterministic suites.
    pub seed: Option<String>,
}

impl RunConfig {
    pub fn resolve(args: &RunArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let levels = args
            .levels
            .clone()
            .or(file.levels)
            .ok_or_else(|| Error::InvalidSelection("no levels given (use --levels 1,2)".into()))?;
        if levels.is_empty() {
            return Err(Error::InvalidSelection(
                "selection must contain at least one level".into(),
            ));
        }
        let max_level = levels.iter().copied().max().unwrap_or(0);
        let n_max = args.nmax.or(file.n_max).unwrap_or(DEFAULT_N_MAX.max(max_level + 1));
        let grid = Grid::new(
            args.xmin.or(file.x_min).unwrap_or(REFERENCE_X_MIN),
            args.xmax.or(file.x_max).unwrap_or(REFERENCE_X_MAX),
            args.points.or(file.points).unwrap_or(REFERENCE_POINTS),
        )?;
        let perturb_vn = args
            .perturb_vn
            .map(|d| rational_from_f64(d).ok_or_else(|| Error::InvalidSelection("non-finite perturbation".into())))
            .transpose()?;
        Ok(RunConfig {
            model: args.model.clone().or(file.model).unwrap_or_else(|| "oscillator".into()),
            levels,
            n_max,
            grid,
            format: args.format.or(file.format).unwrap_or_default(),
            out: args.out.clone().or(file.out),
            parallel: args.parallel || file.parallel.unwrap_or(false),
            perturb_vn,
            seed: std::env::var("DARBOUX_SEED").ok(),
        })
    }

    pub fn model(&self) -> Result<Box<dyn SolvableModel>> {
        model_by_name(&self.model)
    }
}

pub fn model_by_name(name: &str) -> Result<Box<dyn SolvableModel>> {
    match name {
        "oscillator" => Ok(Box::new(Oscillator)),
        other => Err(Error::UnknownModel(other.to_string())),
    }
}
