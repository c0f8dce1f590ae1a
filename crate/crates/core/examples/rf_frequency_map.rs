//! Splitting against RF frequency: the V-shaped map.

use nv_odmr::spectra::{rf_frequency_map, MwGrid, StrainDistribution, StrainModel, Sweep};
use nv_odmr::{difference_spectrum, extract_splitting};

fn main() -> nv_odmr::Result<()> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let strain = StrainModel::Ensemble(StrainDistribution { n_points: 6, ..Default::default() });
    let sweep = Sweep { grid: MwGrid::centered(2.87e9, 7e6, 29)?, workers, ..Default::default() };
    let f_rf = [4e6, 6e6, 8e6, 10e6];
    let map = rf_frequency_map(&sweep, &strain, &f_rf, true)?;

    let reference = &map.spectra[0];
    for (f, s) in f_rf.iter().zip(&map.spectra[1..]) {
        let split = extract_splitting(&difference_spectrum(reference, s)?, 2.87e9, 7e6)?;
        let shown = split.separation().map_or("unresolved".to_string(), |v| format!("{:.2} MHz", v / 1e6));
        println!("f_rf {:5.1} MHz -> splitting {shown}", f / 1e6);
    }
    let r = map.report();
    println!("max trace drift {:.1e}, min eigenvalue {:.1e}", r.max_trace_drift, r.min_eigenvalue);
    Ok(())
}
