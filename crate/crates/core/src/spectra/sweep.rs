use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::{MwGrid, StrainModel};
use super::spectrum::{MapAxis, Spectrum, SpectrumMap};
use crate::dynamics::{fluorescence_run, EvolutionReport, EvolutionSettings, FluorescenceRun};
use crate::error::invalid;
use crate::model::{build_level_model_in_field, orientation_projections, DriveConfig, FieldVector, NvParameters, NV_AXES};
use crate::record::{flatten, Record};
use crate::{Error, Result, VERSION};

/// Rabi frequency per volt of RF amplitude at the antenna, Hz/V.
pub const RF_RABI_PER_VOLT: f64 = 0.225e6;

pub fn volts_to_rabi(volts: f64) -> f64 {
    volts * RF_RABI_PER_VOLT
}

/// Everything shared by the points of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub params: NvParameters,
    pub drives: DriveConfig,
    pub settings: EvolutionSettings,
    pub grid: MwGrid,
    /// Worker threads; results do not depend on this.
    pub workers: usize,
}

impl Default for Sweep {
    fn default() -> Self {
        Self {
            params: NvParameters::default(),
            drives: DriveConfig::default(),
            settings: EvolutionSettings::default(),
            grid: MwGrid::default(),
            workers: 1,
        }
    }
}

impl Sweep {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.drives.validate()?;
        self.settings.validate()?;
        self.grid.validate()?;
        if self.workers < 1 {
            return Err(invalid("workers", "must be >= 1"));
        }
        Ok(())
    }
}

/// Orientation classes included in a Zeeman map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Orientations {
    /// All four ⟨111⟩ classes, weighted 1 aligned : 3 misaligned.
    #[default]
    All,
    /// Only the class aligned with the field.
    AlignedOnly,
}

/// One spectrum to compute: drives plus the weighted centre populations that
/// are summed into it.
struct RowJob {
    drives: DriveConfig,
    members: Vec<Member>,
    metadata: Record,
}

struct Member {
    params: NvParameters,
    field: FieldVector,
    weight: f64,
}

/// Runs `f(0..n)` on a pool of `workers` threads; output order is by index.
pub(crate) fn parallel_map<T: Send>(workers: usize, n: usize, f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
    if workers <= 1 {
        return (0..n).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    pool.install(|| (0..n).into_par_iter().map(f).collect())
}

fn compute(sweep: &Sweep, rows: &[RowJob]) -> Result<Vec<Spectrum>> {
    sweep.validate()?;
    let freqs = sweep.grid.frequencies();
    let per_member = freqs.len() + 1; // last slot: MW-off baseline
    let center = 0.5 * (sweep.grid.start + sweep.grid.stop);

    let mut offsets = Vec::with_capacity(rows.len());
    let mut tasks: Vec<(usize, usize, usize)> = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        row.drives.validate()?;
        offsets.push(tasks.len());
        for m in 0..row.members.len() {
            for k in 0..per_member {
                tasks.push((r, m, k));
            }
        }
    }

    let runs: Vec<FluorescenceRun> = parallel_map(sweep.workers, tasks.len(), |t| {
        let (r, m, k) = tasks[t];
        let row = &rows[r];
        let member = &row.members[m];
        let drives = if k < freqs.len() { row.drives.at_mw(freqs[k]) } else { row.drives.at_mw(center).mw_off() };
        let model = build_level_model_in_field(&member.params, &drives, &member.field);
        fluorescence_run(&model, &drives, &sweep.settings)
    })?;

    rows.iter()
        .enumerate()
        .map(|(r, row)| {
            let mut contrast = vec![0.0; freqs.len()];
            let mut report = EvolutionReport::empty();
            for (m, member) in row.members.iter().enumerate() {
                let base = offsets[r] + m * per_member;
                let chunk = &runs[base..base + per_member];
                let baseline = chunk[freqs.len()].value;
                for (acc, run) in contrast.iter_mut().zip(chunk) {
                    *acc += member.weight * (baseline - run.value);
                }
                for run in chunk {
                    report.merge(&run.report);
                }
            }
            let mut s = Spectrum::new(freqs.clone(), contrast, row.metadata.clone())?;
            s.report = report;
            Ok(s)
        })
        .collect()
}

fn base_metadata(sweep: &Sweep, drives: &DriveConfig, strain: Option<&StrainModel>) -> Result<Record> {
    let mut r = Record::new();
    r.insert("version".into(), format!("\"{VERSION}\""));
    r.extend(flatten("params", &sweep.params)?);
    r.extend(flatten("drives", drives)?);
    r.extend(flatten("settings", &sweep.settings)?);
    r.extend(flatten("grid", &sweep.grid)?);
    r.insert(
        "settings.averaging_window".into(),
        if drives.rf_active() { "\"rf-periods\"".into() } else { "\"fixed-10us\"".into() },
    );
    match strain {
        None => {}
        Some(StrainModel::Single(e)) => {
            r.insert("strain.model".into(), "\"single\"".into());
            r.insert("strain.e".into(), toml::Value::Float(*e).to_string());
        }
        Some(StrainModel::Ensemble(d)) => {
            r.insert("strain.model".into(), "\"ensemble\"".into());
            r.extend(flatten("strain", d)?);
        }
    }
    Ok(r)
}

fn members(params: &NvParameters, strain: &StrainModel, fields: &[(FieldVector, f64)]) -> Vec<Member> {
    let mut out = Vec::new();
    for &(field, wf) in fields {
        for (e, we) in strain.samples() {
            out.push(Member { params: params.with_strain(e), field, weight: wf * we });
        }
    }
    out
}

/// Single-centre spectrum for `sweep.params` at zero field.
pub fn odmr_sweep(sweep: &Sweep) -> Result<Spectrum> {
    let row = RowJob {
        drives: sweep.drives,
        members: vec![Member { params: sweep.params, field: FieldVector::ZERO, weight: 1.0 }],
        metadata: base_metadata(sweep, &sweep.drives, None)?,
    };
    Ok(compute(sweep, &[row])?.remove(0))
}

/// Spectrum of a single centre or a strain ensemble in a static field given
/// in the NV frame.
pub fn strain_spectrum(sweep: &Sweep, strain: &StrainModel, field: &FieldVector) -> Result<Spectrum> {
    strain.validate()?;
    let mut metadata = base_metadata(sweep, &sweep.drives, Some(strain))?;
    metadata.extend(flatten("field", field)?);
    let row = RowJob { drives: sweep.drives, members: members(&sweep.params, strain, &[(*field, 1.0)]), metadata };
    Ok(compute(sweep, &[row])?.remove(0))
}

fn drive_map(sweep: &Sweep, strain: &StrainModel, axis: MapAxis, drives: Vec<DriveConfig>) -> Result<SpectrumMap> {
    strain.validate()?;
    let rows = drives
        .into_iter()
        .map(|d| {
            Ok(RowJob {
                drives: d,
                members: members(&sweep.params, strain, &[(FieldVector::ZERO, 1.0)]),
                metadata: base_metadata(sweep, &d, Some(strain))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SpectrumMap::new(axis, compute(sweep, &rows)?)
}

/// One spectrum per RF frequency at the sweep's RF amplitude. With
/// `with_reference`, row 0 is the RF-off spectrum (axis value 0).
pub fn rf_frequency_map(sweep: &Sweep, strain: &StrainModel, f_rf: &[f64], with_reference: bool) -> Result<SpectrumMap> {
    let mut values = Vec::new();
    let mut drives = Vec::new();
    if with_reference {
        values.push(0.0);
        drives.push(sweep.drives.rf_off());
    }
    for &f in f_rf {
        if !(f > 0.0 && f.is_finite()) {
            return Err(invalid("f_rf", "map frequencies must be > 0"));
        }
        values.push(f);
        drives.push(DriveConfig { f_rf: f, ..sweep.drives });
    }
    drive_map(sweep, strain, MapAxis { label: "f_rf (Hz)".into(), values }, drives)
}

/// One spectrum per RF Rabi frequency (Hz) at the sweep's RF frequency.
/// Use [`volts_to_rabi`] for amplitudes given in volts.
pub fn rf_amplitude_map(sweep: &Sweep, strain: &StrainModel, omega_rf: &[f64]) -> Result<SpectrumMap> {
    if !(sweep.drives.f_rf > 0.0) {
        return Err(invalid("f_rf", "must be > 0 for an amplitude map"));
    }
    let mut drives = Vec::new();
    for &w in omega_rf {
        if !(w >= 0.0 && w.is_finite()) {
            return Err(invalid("omega_rf", "map amplitudes must be >= 0"));
        }
        drives.push(DriveConfig { omega_rf: w, ..sweep.drives });
    }
    drive_map(sweep, strain, MapAxis { label: "omega_rf (Hz)".into(), values: omega_rf.to_vec() }, drives)
}

/// One spectrum per field magnitude `b` (T) applied along the crystal
/// (1,1,1) axis, which is the axis of the first orientation class.
pub fn zeeman_map(sweep: &Sweep, strain: &StrainModel, b: &[f64], orientations: Orientations) -> Result<SpectrumMap> {
    strain.validate()?;
    let rows = b
        .iter()
        .map(|&bm| {
            if !(bm.is_finite() && bm >= 0.0) {
                return Err(invalid("b", "field magnitudes must be finite and >= 0"));
            }
            let axis = NV_AXES[0];
            let lab = FieldVector::new(bm * axis[0], bm * axis[1], bm * axis[2]);
            let classes = orientation_projections(&lab, axis)?;
            let mut fields: Vec<(FieldVector, f64)> = Vec::new();
            match orientations {
                Orientations::All => {
                    // classes that see the same NV-frame field are computed once
                    for f in classes {
                        match fields.iter_mut().find(|(g, _)| *g == f) {
                            Some((_, w)) => *w += 0.25,
                            None => fields.push((f, 0.25)),
                        }
                    }
                }
                Orientations::AlignedOnly => fields.push((classes[0], 1.0)),
            }
            let mut metadata = base_metadata(sweep, &sweep.drives, Some(strain))?;
            metadata.insert("zeeman.b".into(), toml::Value::Float(bm).to_string());
            metadata.insert("zeeman.axis".into(), "\"111\"".into());
            metadata.insert(
                "zeeman.orientations".into(),
                toml::Value::try_from(orientations).map_err(|e| Error::Config(e.to_string()))?.to_string(),
            );
            Ok(RowJob { drives: sweep.drives, members: members(&sweep.params, strain, &fields), metadata })
        })
        .collect::<Result<Vec<_>>>()?;
    SpectrumMap::new(MapAxis { label: "b (T)".into(), values: b.to_vec() }, compute(sweep, &rows)?)
}
