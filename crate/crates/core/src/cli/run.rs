use std::path::{Path, PathBuf};

use super::config::{AmplitudeUnit, Mode, Provenance, RunConfig};
use super::output::{content_hash, render_csv, row_path, sidecar_path, Cell, OutputFile};
use crate::analytic::{
    dressed_model, eigenlevels_vs_field, lzt_resonance, predicted_splitting, quasi_energy_gap, sideband_model,
    TwoLevelParams, FLOQUET_SEGMENTS, TRANSITION_LABELS,
};
use crate::dynamics::{EvolutionReport, RF_OFF_WINDOW};
use crate::spectra::{
    difference_spectrum, extract_splitting, parallel_map, rf_amplitude_map, rf_frequency_map, strain_spectrum,
    volts_to_rabi, zeeman_map, Spectrum, SpectrumMap, Sweep,
};
use crate::{Error, Result, VERSION};

const CONTRAST: &str = "contrast (excited population)";
const DIFFERENCE: &str = "difference (excited population)";

/// Everything a run produces, before anything touches the disk.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub files: Vec<OutputFile>,
    pub content_hash: String,
    pub sidecar: OutputFile,
    pub report: Option<EvolutionReport>,
}

impl RunOutput {
    /// Writes all CSV files and then the sidecar.
    pub fn write(&self) -> Result<()> {
        for f in self.files.iter().chain(std::iter::once(&self.sidecar)) {
            if let Some(dir) = f.path.parent() {
                if !dir.as_os_str().is_empty() {
                    std::fs::create_dir_all(dir)?;
                }
            }
            std::fs::write(&f.path, &f.bytes)?;
        }
        Ok(())
    }
}

fn sweep_of(cfg: &RunConfig) -> Sweep {
    Sweep { params: cfg.params, drives: cfg.drives, settings: cfg.settings, grid: cfg.sweep, workers: cfg.workers }
}

fn spectrum_csv(s: &Spectrum, reference: Option<&Spectrum>) -> Result<Vec<u8>> {
    let mut header = vec!["mw_frequency (Hz)".to_string(), CONTRAST.to_string()];
    let diff = match reference {
        Some(r) => {
            header.push(DIFFERENCE.to_string());
            Some(difference_spectrum(s, r)?)
        }
        None => None,
    };
    let rows: Vec<Vec<Cell>> = (0..s.len())
        .map(|i| {
            let mut row = vec![Cell::Num(s.mw_frequencies[i]), Cell::Num(s.contrast[i])];
            if let Some(d) = &diff {
                row.push(Cell::Num(d.contrast[i]));
            }
            row
        })
        .collect();
    render_csv(&header, &rows)
}

/// Map output: an index file plus one spectrum file per row. `references`
/// gives the RF-off spectrum each row is compared with.
fn map_files(
    cfg: &RunConfig,
    base: &Path,
    map: &SpectrumMap,
    references: Option<&[&Spectrum]>,
    volts: Option<&[f64]>,
) -> Result<Vec<OutputFile>> {
    let mut header = vec!["row".to_string(), map.row_axis.label.clone()];
    if volts.is_some() {
        header.push("amplitude (V)".into());
    }
    header.push("file".into());
    if references.is_some() {
        header.extend(["f_minus (Hz)", "f_plus (Hz)", "separation (Hz)"].map(String::from));
    }

    let mut files = Vec::new();
    let mut index_rows = Vec::new();
    for (i, s) in map.spectra.iter().enumerate() {
        let path = row_path(base, i);
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string();
        let reference = references.map(|r| r[i]);
        files.push(OutputFile { path, bytes: spectrum_csv(s, reference)? });

        let mut row = vec![Cell::Int(i), Cell::Num(map.row_axis.values[i])];
        if let Some(v) = volts {
            row.push(Cell::Num(v[i]));
        }
        row.push(Cell::Text(name));
        if let Some(r) = reference {
            // depletion: what the RF removed from the reference line shape
            let depletion = difference_spectrum(r, s)?;
            let is_reference = depletion.contrast.iter().all(|&c| c == 0.0);
            match extract_splitting(&depletion, cfg.params.d_gs, cfg.map.split_half_window)? {
                crate::spectra::Splitting::Resolved { f_minus, f_plus } if !is_reference => {
                    row.extend([Cell::Num(f_minus), Cell::Num(f_plus), Cell::Num(f_plus - f_minus)])
                }
                _ => row.extend([Cell::Empty, Cell::Empty, Cell::Empty]),
            }
        }
        index_rows.push(row);
    }
    let mut out = vec![OutputFile { path: base.to_path_buf(), bytes: render_csv(&header, &index_rows)? }];
    out.extend(files);
    Ok(out)
}

fn levels_files(cfg: &RunConfig, base: &Path) -> Result<Vec<OutputFile>> {
    let fields = cfg.rows.resolve()?;
    let curves = eigenlevels_vs_field(&cfg.params, cfg.strain.e, &fields)?;
    let mut header = vec!["b_axial (T)".to_string()];
    header.extend((1..=9).map(|k| format!("level_{k} (Hz)")));
    header.extend(TRANSITION_LABELS.iter().map(|(m_i, branch)| {
        let m = match m_i {
            1 => "p1",
            0 => "0",
            _ => "m1",
        };
        format!("transition_mI_{m}_{} (Hz)", if *branch == 0 { "lower" } else { "upper" })
    }));
    let rows: Vec<Vec<Cell>> = fields
        .iter()
        .enumerate()
        .map(|(k, &b)| {
            let mut row = vec![Cell::Num(b)];
            row.extend(curves.energies[k].iter().map(|&e| Cell::Num(e)));
            row.extend(curves.transitions[k].iter().map(|&f| Cell::Num(f)));
            row
        })
        .collect();
    Ok(vec![OutputFile { path: base.to_path_buf(), bytes: render_csv(&header, &rows)? }])
}

fn analytic_files(cfg: &RunConfig, base: &Path) -> Result<Vec<OutputFile>> {
    let omegas = cfg.rows.resolve()?;
    let header: Vec<String> = [
        "omega_rf (Hz)",
        "delta (Hz)",
        "theta (rad)",
        "lzt_resonance (Hz)",
        "omega_tilde_0 (Hz)",
        "predicted_splitting (Hz)",
        "floquet_gap (Hz)",
        "sideband_coupling_n1 (Hz)",
        "sideband_coupling_n2 (Hz)",
        "sideband_coupling_n3 (Hz)",
    ]
    .map(String::from)
    .to_vec();
    let rows = parallel_map(cfg.workers, omegas.len(), |k| {
        let p = TwoLevelParams { omega_rf: omegas[k], ..cfg.two_level };
        let d = dressed_model(&p, 0)?;
        let mut row = vec![
            Cell::Num(omegas[k]),
            Cell::Num(d.delta),
            Cell::Num(d.theta),
            Cell::Num(lzt_resonance(&p)),
            Cell::Num(d.coupling(0).unwrap_or(0.0)),
            Cell::Num(predicted_splitting(&p)?),
            Cell::Num(quasi_energy_gap(&p, FLOQUET_SEGMENTS)?),
        ];
        for n in 1..=3 {
            row.push(Cell::Num(sideband_model(&p, n)?.1));
        }
        Ok(row)
    })?;
    Ok(vec![OutputFile { path: base.to_path_buf(), bytes: render_csv(&header, &rows)? }])
}

/// Executes a validated configuration. `out` overrides `output_path`.
pub fn run(cfg: &RunConfig, out: Option<&Path>) -> Result<RunOutput> {
    cfg.validate()?;
    let base: PathBuf = match (out, &cfg.output_path) {
        (Some(p), _) => p.to_path_buf(),
        (None, Some(p)) => p.clone(),
        (None, None) => return Err(Error::Config("no output path: set `output_path` or pass --out".into())),
    };
    let sweep = sweep_of(cfg);
    let strain = cfg.strain.to_model();

    let (files, report) = match cfg.mode {
        Mode::Levels => (levels_files(cfg, &base)?, None),
        Mode::AnalyticTable => (analytic_files(cfg, &base)?, None),
        Mode::Odmr => {
            let s = strain_spectrum(&sweep, &strain, &cfg.field)?;
            let report = s.report;
            (vec![OutputFile { path: base.clone(), bytes: spectrum_csv(&s, None)? }], Some(report))
        }
        Mode::RfFrequencyMap => {
            let rows = cfg.rows.resolve()?;
            let map = rf_frequency_map(&sweep, &strain, &rows, cfg.map.reference)?;
            let refs: Option<Vec<&Spectrum>> = cfg.map.reference.then(|| vec![&map.spectra[0]; map.spectra.len()]);
            (map_files(cfg, &base, &map, refs.as_deref(), None)?, Some(map.report()))
        }
        Mode::RfAmplitudeMap => {
            let rows = cfg.rows.resolve()?;
            let (mut omegas, volts) = match cfg.map.amplitude_unit {
                AmplitudeUnit::Hz => (rows.clone(), None),
                AmplitudeUnit::Volts => (rows.iter().map(|&v| volts_to_rabi(v)).collect(), Some(rows.clone())),
            };
            let mut volts = volts;
            if cfg.map.reference {
                omegas.insert(0, 0.0);
                if let Some(v) = volts.as_mut() {
                    v.insert(0, 0.0);
                }
            }
            let map = rf_amplitude_map(&sweep, &strain, &omegas)?;
            let refs: Option<Vec<&Spectrum>> = cfg.map.reference.then(|| vec![&map.spectra[0]; map.spectra.len()]);
            (map_files(cfg, &base, &map, refs.as_deref(), volts.as_deref())?, Some(map.report()))
        }
        Mode::ZeemanMap => {
            let rows = cfg.rows.resolve()?;
            let map = zeeman_map(&sweep, &strain, &rows, cfg.map.orientations)?;
            let mut report = map.report();
            let reference = if cfg.map.reference {
                let off = Sweep { drives: cfg.drives.rf_off(), ..sweep.clone() };
                let r = zeeman_map(&off, &strain, &rows, cfg.map.orientations)?;
                report.merge(&r.report());
                Some(r)
            } else {
                None
            };
            let refs: Option<Vec<&Spectrum>> = reference.as_ref().map(|r| r.spectra.iter().collect());
            (map_files(cfg, &base, &map, refs.as_deref(), None)?, Some(report))
        }
    };

    let hash = content_hash(&files);
    let mut resolved = cfg.clone();
    resolved.output_path = Some(base.clone());
    resolved.provenance = Some(Provenance {
        version: VERSION.to_string(),
        content_hash: hash.clone(),
        files: files
            .iter()
            .map(|f| f.path.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string())
            .collect(),
        averaging: format!(
            "transient {} s, then mean over {} RF periods (RF off: {} s window)",
            cfg.settings.transient_time, cfg.settings.average_periods, RF_OFF_WINDOW
        ),
        rf_off_window: RF_OFF_WINDOW,
    });
    let sidecar = OutputFile { path: sidecar_path(&base), bytes: resolved.to_toml()?.into_bytes() };
    Ok(RunOutput { files, content_hash: hash, sidecar, report })
}
