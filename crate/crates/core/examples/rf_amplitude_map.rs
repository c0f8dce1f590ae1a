//! Spectra against RF antenna voltage at fixed RF frequency.

use nv_odmr::spectra::{rf_amplitude_map, volts_to_rabi, MwGrid, StrainDistribution, StrainModel, Sweep};
use nv_odmr::{difference_spectrum, extract_splitting};

fn main() -> nv_odmr::Result<()> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let strain = StrainModel::Ensemble(StrainDistribution { n_points: 6, ..Default::default() });
    let sweep = Sweep { grid: MwGrid::centered(2.87e9, 5e6, 21)?, workers, ..Default::default() };
    let volts = [0.0, 2.0, 4.0, 6.0];
    let omegas: Vec<f64> = volts.iter().map(|&v| volts_to_rabi(v)).collect();
    let map = rf_amplitude_map(&sweep, &strain, &omegas)?;

    for (k, v) in volts.iter().enumerate().skip(1) {
        let depletion = difference_spectrum(&map.spectra[0], &map.spectra[k])?;
        let depth = depletion.contrast.iter().copied().fold(f64::MIN, f64::max);
        let split = extract_splitting(&depletion, 2.87e9, 5e6)?;
        println!(
            "{v:.0} V (Rabi {:.2} MHz): strongest depletion {depth:.2e}, splitting {}",
            omegas[k] / 1e6,
            split.separation().map_or("unresolved".into(), |s| format!("{:.2} MHz", s / 1e6))
        );
    }
    Ok(())
}
