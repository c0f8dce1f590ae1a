use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::bessel::bessel_j;
use crate::algebra::ComplexMatrix;
use crate::error::invalid;
use crate::{Result, TWO_PI};

/// The `{|−1,+1⟩, |+1,+1⟩}` pair coupled by strain and modulated by a
/// longitudinal RF field. All values in Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TwoLevelParams {
    pub e_strain: f64,
    pub a_par: f64,
    pub omega_rf: f64,
    pub f_rf: f64,
}

impl Default for TwoLevelParams {
    fn default() -> Self {
        Self { e_strain: 2e6, a_par: -2.16e6, omega_rf: 1.5e6, f_rf: 5e6 }
    }
}

impl TwoLevelParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("e_strain", self.e_strain), ("a_par", self.a_par), ("omega_rf", self.omega_rf), ("f_rf", self.f_rf)] {
            if !v.is_finite() {
                return Err(invalid(name, "must be finite"));
            }
        }
        if self.omega_rf < 0.0 {
            return Err(invalid("omega_rf", "must be >= 0"));
        }
        if self.omega_rf > 0.0 && !(self.f_rf > 0.0) {
            return Err(invalid("f_rf", "must be > 0 when omega_rf > 0"));
        }
        Ok(())
    }

    /// `Δ = √(A∥² + E²)`, Hz.
    pub fn delta(&self) -> f64 {
        self.a_par.hypot(self.e_strain)
    }

    /// Mixing angle θ with `tan 2θ = −E/A∥`, `2θ ∈ (−π/2, π/2)`.
    /// For `A∥ = 0` the limit `θ = ±π/4` (sign of E; +π/4 when E = 0).
    pub fn theta(&self) -> f64 {
        if self.a_par == 0.0 {
            return if self.e_strain < 0.0 { -FRAC_PI_4 } else { FRAC_PI_4 };
        }
        0.5 * (-self.e_strain / self.a_par).atan()
    }

    /// `Ω_RF / f_RF`; zero without RF.
    pub fn modulation_index(&self) -> f64 {
        if self.omega_rf == 0.0 {
            0.0
        } else {
            self.omega_rf / self.f_rf
        }
    }
}

/// `2π·[[−A∥ + Ω cos(2π f t), E], [E, A∥ − Ω cos(2π f t)]]`, rad/s.
pub fn two_level_hamiltonian(p: &TwoLevelParams, t: f64) -> ComplexMatrix {
    let m = p.omega_rf * (TWO_PI * p.f_rf * t).cos();
    let d = TWO_PI * (-p.a_par + m);
    let e = C64::new(TWO_PI * p.e_strain, 0.0);
    ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => C64::new(d, 0.0),
        (1, 1) => C64::new(-d, 0.0),
        _ => e,
    })
}

/// Polaron-frame description of the RF-modulated pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DressedModel {
    /// rad
    pub theta: f64,
    /// Hz
    pub delta: f64,
    /// `(n, Ω̃_n)` for `−n_max ≤ n ≤ n_max`, Hz.
    pub couplings: Vec<(i32, f64)>,
}

impl DressedModel {
    pub fn coupling(&self, n: i32) -> Option<f64> {
        self.couplings.iter().find(|(k, _)| *k == n).map(|(_, c)| *c)
    }
}

/// `Ω̃_n = −Ω sin2θ · J_n(2(Ω/f) cos2θ)`.
pub fn dressed_model(p: &TwoLevelParams, n_max: u32) -> Result<DressedModel> {
    p.validate()?;
    let theta = p.theta();
    let (s, c) = (2.0 * theta).sin_cos();
    let arg = 2.0 * p.modulation_index() * c;
    let n_max = n_max as i32;
    let couplings = (-n_max..=n_max).map(|n| (n, -p.omega_rf * s * bessel_j(n, arg))).collect();
    Ok(DressedModel { theta, delta: p.delta(), couplings })
}

/// RF frequency at which the modulated pair undergoes Landau-Zener
/// transitions: `f = 2Δ = 2√(A∥² + E²)`.
pub fn lzt_resonance(p: &TwoLevelParams) -> f64 {
    2.0 * p.delta()
}

/// Sideband of order `n`: offset `n·f_RF` from the unperturbed transition and
/// coupling `E·J_n(Ω/f)`.
pub fn sideband_model(p: &TwoLevelParams, n: i32) -> Result<(f64, f64)> {
    p.validate()?;
    Ok((n as f64 * p.f_rf, p.e_strain * bessel_j(n, p.modulation_index())))
}

/// `2|Ω̃_0|`, the splitting seen in the dressed-state picture.
pub fn predicted_splitting(p: &TwoLevelParams) -> Result<f64> {
    predicted_splitting_harmonic(p, 0)
}

/// `2|Ω̃_n|` for an explicit harmonic.
pub fn predicted_splitting_harmonic(p: &TwoLevelParams, n: i32) -> Result<f64> {
    let model = dressed_model(p, n.unsigned_abs())?;
    Ok(2.0 * model.coupling(n).expect("harmonic within n_max").abs())
}
