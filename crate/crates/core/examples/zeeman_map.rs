//! Splitting against a weak field along the crystal (111) axis, averaged
//! over the four NV orientations.

use nv_odmr::spectra::{zeeman_map, MwGrid, Orientations, StrainDistribution, StrainModel, Sweep};
use nv_odmr::{difference_spectrum, extract_splitting};

fn main() -> nv_odmr::Result<()> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let strain = StrainModel::Ensemble(StrainDistribution { n_points: 5, ..Default::default() });
    let on = Sweep { grid: MwGrid::centered(2.87e9, 5e6, 21)?, workers, ..Default::default() };
    let off = Sweep { drives: on.drives.rf_off(), ..on.clone() };
    let b = [0.0, 0.15e-3, 0.3e-3];
    let with_rf = zeeman_map(&on, &strain, &b, Orientations::All)?;
    let without = zeeman_map(&off, &strain, &b, Orientations::All)?;

    for (k, field) in b.iter().enumerate() {
        let depletion = difference_spectrum(&without.spectra[k], &with_rf.spectra[k])?;
        let split = extract_splitting(&depletion, 2.87e9, 5e6)?;
        println!(
            "B {:.2} mT: splitting {}",
            field * 1e3,
            split.separation().map_or("unresolved".into(), |s| format!("{:.2} MHz", s / 1e6))
        );
    }
    Ok(())
}
