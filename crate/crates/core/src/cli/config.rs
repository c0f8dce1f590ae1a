use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analytic::TwoLevelParams;
use crate::dynamics::EvolutionSettings;
use crate::error::invalid;
use crate::model::{DriveConfig, FieldVector, NvParameters};
use crate::spectra::{MwGrid, Orientations, StrainDistribution, StrainModel};
use crate::{Error, Result};

/// Only accepted value of `schema_version`.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Odmr,
    RfFrequencyMap,
    RfAmplitudeMap,
    ZeemanMap,
    Levels,
    AnalyticTable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum StrainKind {
    Single,
    #[default]
    Ensemble,
}

/// `[strain]`: a single centre with strain `e`, or the Gaussian ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StrainConfig {
    pub model: StrainKind,
    /// Strain of the single centre, Hz.
    pub e: f64,
    pub sigma: f64,
    pub e_min: f64,
    pub e_max: f64,
    pub n_points: usize,
}

impl Default for StrainConfig {
    fn default() -> Self {
        let d = StrainDistribution::default();
        Self { model: StrainKind::Ensemble, e: 2e6, sigma: d.sigma, e_min: d.e_min, e_max: d.e_max, n_points: d.n_points }
    }
}

impl StrainConfig {
    pub fn to_model(&self) -> StrainModel {
        match self.model {
            StrainKind::Single => StrainModel::Single(self.e),
            StrainKind::Ensemble => StrainModel::Ensemble(StrainDistribution {
                sigma: self.sigma,
                e_min: self.e_min,
                e_max: self.e_max,
                n_points: self.n_points,
            }),
        }
    }
}

/// `[rows]`: the second axis of maps and tables, either explicit values or a
/// uniform `start, stop, n` range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RowAxis {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub start: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stop: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
}

impl RowAxis {
    pub fn resolve(&self) -> Result<Vec<f64>> {
        match (&self.values, self.start, self.stop, self.n) {
            (Some(v), None, None, None) => {
                if v.is_empty() {
                    return Err(invalid("rows.values", "must not be empty"));
                }
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(invalid("rows.values", "must be finite"));
                }
                Ok(v.clone())
            }
            (None, Some(start), Some(stop), Some(n)) => {
                if n < 2 {
                    return Err(invalid("rows.n", "must be >= 2"));
                }
                if !(start.is_finite() && stop.is_finite() && start < stop) {
                    return Err(invalid("rows.start", "must be finite and below rows.stop"));
                }
                let step = (stop - start) / (n - 1) as f64;
                Ok((0..n).map(|i| if i + 1 == n { stop } else { start + i as f64 * step }).collect())
            }
            _ => Err(invalid("rows", "give either `values` or all of `start`, `stop`, `n`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum AmplitudeUnit {
    /// RF Rabi frequency in Hz.
    #[default]
    Hz,
    /// Antenna voltage, converted with 0.225 MHz per volt.
    Volts,
}

/// `[map]`: options of the map modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MapOptions {
    /// Prepend an RF-off reference row (frequency and amplitude maps).
    pub reference: bool,
    pub amplitude_unit: AmplitudeUnit,
    pub orientations: Orientations,
    /// Half-width around `params.d_gs` searched for the splitting, Hz.
    pub split_half_window: f64,
}

impl Default for MapOptions {
    fn default() -> Self {
        Self { reference: true, amplitude_unit: AmplitudeUnit::Hz, orientations: Orientations::All, split_half_window: 8e6 }
    }
}

/// `[provenance]`: written into sidecars, ignored when read back.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct Provenance {
    pub version: String,
    pub content_hash: String,
    pub files: Vec<String>,
    pub averaging: String,
    pub rf_off_window: f64,
}

/// A complete run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    #[serde(default = "one")]
    pub workers: usize,
    #[serde(default)]
    pub params: NvParameters,
    #[serde(default)]
    pub drives: DriveConfig,
    #[serde(default)]
    pub settings: EvolutionSettings,
    #[serde(default)]
    pub strain: StrainConfig,
    /// Static field in the NV frame, T (odmr mode).
    #[serde(default)]
    pub field: FieldVector,
    #[serde(default)]
    pub sweep: MwGrid,
    #[serde(default)]
    pub rows: RowAxis,
    #[serde(default)]
    pub map: MapOptions,
    #[serde(default)]
    pub two_level: TwoLevelParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

fn one() -> usize {
    1
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string().trim_end().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Full resolved configuration, defaults included.
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if self.workers < 1 {
            return Err(invalid("workers", "must be >= 1"));
        }
        self.params.validate()?;
        self.drives.validate()?;
        self.settings.validate()?;
        match self.mode {
            Mode::Levels => {
                self.rows.resolve()?;
            }
            Mode::AnalyticTable => {
                self.two_level.validate()?;
                let rows = self.rows.resolve()?;
                if rows.iter().any(|&w| w < 0.0) {
                    return Err(invalid("rows", "RF Rabi frequencies must be >= 0"));
                }
                if !(self.two_level.f_rf > 0.0) {
                    return Err(invalid("two_level.f_rf", "must be > 0"));
                }
            }
            Mode::Odmr => {
                self.sweep.validate()?;
                self.strain.to_model().validate()?;
                if !self.field.is_finite() {
                    return Err(invalid("field", "components must be finite"));
                }
            }
            Mode::RfFrequencyMap | Mode::RfAmplitudeMap | Mode::ZeemanMap => {
                self.sweep.validate()?;
                self.strain.to_model().validate()?;
                let rows = self.rows.resolve()?;
                let bad = match self.mode {
                    Mode::RfFrequencyMap => rows.iter().any(|&f| f <= 0.0),
                    _ => rows.iter().any(|&v| v < 0.0),
                };
                if bad {
                    return Err(invalid("rows", "map rows must be positive frequencies or non-negative amplitudes/fields"));
                }
                if self.mode == Mode::RfAmplitudeMap && !(self.drives.f_rf > 0.0) {
                    return Err(invalid("drives.f_rf", "must be > 0 for an amplitude map"));
                }
                if !(self.map.split_half_window > 0.0) {
                    return Err(invalid("map.split_half_window", "must be > 0"));
                }
            }
        }
        Ok(())
    }
}
