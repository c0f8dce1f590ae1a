//! Spin polarisation under the laser alone: the m_s = 0 population of the
//! ground state grows as the intersystem crossing pumps the centre.

use nv_odmr::algebra::hyperfine_labels;
use nv_odmr::dynamics::evolve_with_report;
use nv_odmr::model::GROUND;
use nv_odmr::{build_level_model, fluorescence, initial_state_unpolarized, DriveConfig, EvolutionSettings, NvParameters};

fn main() -> nv_odmr::Result<()> {
    let p = NvParameters::default().with_strain(2e6);
    let d = DriveConfig { omega_mw: 0.0, ..DriveConfig::default().rf_off() };
    let model = build_level_model(&p, &d);
    let settings = EvolutionSettings::default();

    let mut rho = initial_state_unpolarized();
    let step = 1e-6;
    println!("{:>6} {:>12} {:>12} {:>10}", "t (us)", "P(m_s=0)", "excited", "purity");
    for k in 0..=10 {
        let p0: f64 = GROUND.filter(|&i| hyperfine_labels(i).0 == 0).map(|i| rho.population(i)).sum();
        println!("{:6.1} {:12.5} {:12.4e} {:10.5}", k as f64 * step * 1e6, p0, fluorescence(&rho, &model), rho.purity());
        let (next, _) = evolve_with_report(&rho, &model, &d, &settings, step)?;
        rho = next;
    }
    Ok(())
}
