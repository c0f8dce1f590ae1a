use num_complex::Complex64 as C64;

use super::two_level::{two_level_hamiltonian, TwoLevelParams};
use crate::algebra::{expm, ComplexMatrix};
use crate::error::invalid;
use crate::{Result, TWO_PI};

/// Default number of piecewise-constant segments per RF period.
pub const FLOQUET_SEGMENTS: usize = 2000;

/// One-period propagator of the two-level problem, built from `segments`
/// constant-Hamiltonian pieces sampled at their midpoints.
pub fn one_period_propagator(p: &TwoLevelParams, segments: usize) -> Result<ComplexMatrix> {
    p.validate()?;
    if !(p.f_rf > 0.0) {
        return Err(invalid("f_rf", "a period needs f_rf > 0"));
    }
    if segments == 0 {
        return Err(invalid("segments", "must be >= 1"));
    }
    let dt = 1.0 / (p.f_rf * segments as f64);
    let mut u = ComplexMatrix::identity(2);
    for k in 0..segments {
        let h = two_level_hamiltonian(p, (k as f64 + 0.5) * dt);
        let step = expm(&h.scale(C64::new(0.0, -dt)), 1e-15)?;
        u = &step * &u;
    }
    Ok(u)
}

/// Quasi-energies in Hz, folded into `(−f/2, f/2]`, ascending.
pub fn quasi_energies(p: &TwoLevelParams, segments: usize) -> Result<[f64; 2]> {
    let u = one_period_propagator(p, segments)?;
    let tr = u.trace();
    let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
    let disc = (tr * tr * 0.25 - det).sqrt();
    let period = 1.0 / p.f_rf;
    // λ = exp(−2πi ε T)
    let mut eps = [tr * 0.5 + disc, tr * 0.5 - disc].map(|l| -l.arg() / (TWO_PI * period));
    eps.sort_by(|a, b| a.total_cmp(b));
    Ok(eps)
}

/// Smallest separation of the two quasi-energies modulo `f_rf`, Hz.
pub fn quasi_energy_gap(p: &TwoLevelParams, segments: usize) -> Result<f64> {
    let [a, b] = quasi_energies(p, segments)?;
    let d = (b - a).rem_euclid(p.f_rf);
    Ok(d.min(p.f_rf - d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn propagator_is_unitary() {
        let p = TwoLevelParams::default();
        let u = one_period_propagator(&p, 500).unwrap();
        assert!((&u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn static_limit_reproduces_delta() {
        // Without RF the quasi-energies are ±Δ folded into the zone.
        let p = TwoLevelParams { omega_rf: 0.0, f_rf: 50e6, ..Default::default() };
        let [a, b] = quasi_energies(&p, 100).unwrap();
        assert!((a + p.delta()).abs() < 1e-3);
        assert!((b - p.delta()).abs() < 1e-3);
    }

    #[test]
    fn transverse_drive_gives_rabi_splitting() {
        // A∥ = 0: the RF term is purely transverse in the strain eigenbasis;
        // at resonance f = 2E the first-order quasi-energy gap is Ω.
        let p = TwoLevelParams { e_strain: 2e6, a_par: 0.0, omega_rf: 0.1e6, f_rf: 4e6 };
        let gap = quasi_energy_gap(&p, 2000).unwrap();
        assert!((gap / 0.1e6 - 1.0).abs() < 0.01, "{gap}");
    }

    #[test]
    fn segment_convergence() {
        let p = TwoLevelParams { f_rf: 5.887e6, ..Default::default() };
        let g1 = quasi_energy_gap(&p, 1000).unwrap();
        let g2 = quasi_energy_gap(&p, 4000).unwrap();
        assert!((g1 - g2).abs() < 1e-4 * g2);
    }
}
