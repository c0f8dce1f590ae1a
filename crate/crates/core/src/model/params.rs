use serde::{Deserialize, Serialize};

use crate::error::invalid;
use crate::Result;

/// Physical constants of the NV center. Frequencies in Hz, rates in 1/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NvParameters {
    /// Ground-state zero-field splitting D.
    pub d_gs: f64,
    pub e_x: f64,
    pub e_y: f64,
    /// Axial hyperfine constant A∥ (¹⁴N).
    pub a_par: f64,
    /// Transverse hyperfine constant A⊥.
    pub a_perp: f64,
    /// Nuclear quadrupole splitting P.
    pub p_quad: f64,
    pub g_s: f64,
    pub g_i: f64,
    /// Bohr magneton over h, Hz/T.
    pub mu_b: f64,
    /// Nuclear magneton over h, Hz/T.
    pub mu_n: f64,
    /// Excited-state zero-field splitting.
    pub d_es: f64,
    /// Excited-state A∥ as a multiple of the ground-state value.
    pub es_hyperfine_scale: f64,
    /// Excited-state transverse strain (along x).
    pub e_es: f64,
    pub gamma_rad: f64,
    pub gamma_isc_pm1: f64,
    pub gamma_isc_0: f64,
    pub gamma_singlet: f64,
    /// Fraction of singlet decay that lands in m_s = 0.
    pub singlet_branching_to_0: f64,
}

impl Default for NvParameters {
    fn default() -> Self {
        let gamma_isc_pm1 = 1.0 / 24e-9;
        Self {
            d_gs: 2.87e9,
            e_x: 0.0,
            e_y: 0.0,
            a_par: -2.16e6,
            a_perp: -2.7e6,
            p_quad: -4.95e6,
            g_s: 2.003,
            g_i: 0.403,
            mu_b: 13.996e9,
            mu_n: 7.622e6,
            d_es: 1.42e9,
            es_hyperfine_scale: 1.0,
            e_es: 0.0,
            gamma_rad: 1.0 / 12e-9,
            gamma_isc_pm1,
            gamma_isc_0: gamma_isc_pm1 / 10.0,
            gamma_singlet: 1.0 / 250e-9,
            singlet_branching_to_0: 0.8,
        }
    }
}

impl NvParameters {
    /// Copy with transverse strain magnitude `e` (Hz) placed along x.
    pub fn with_strain(mut self, e: f64) -> Self {
        self.e_x = e;
        self.e_y = 0.0;
        self
    }

    /// Transverse strain magnitude `E = √(E_x² + E_y²)`.
    pub fn strain(&self) -> f64 {
        self.e_x.hypot(self.e_y)
    }

    /// Electron gyromagnetic ratio `g_s μ_B` in Hz/T.
    pub fn electron_gyro(&self) -> f64 {
        self.g_s * self.mu_b
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            ("d_gs", self.d_gs),
            ("e_x", self.e_x),
            ("e_y", self.e_y),
            ("a_par", self.a_par),
            ("a_perp", self.a_perp),
            ("p_quad", self.p_quad),
            ("g_s", self.g_s),
            ("g_i", self.g_i),
            ("mu_b", self.mu_b),
            ("mu_n", self.mu_n),
            ("d_es", self.d_es),
            ("es_hyperfine_scale", self.es_hyperfine_scale),
            ("e_es", self.e_es),
        ];
        for (name, v) in all {
            if !v.is_finite() {
                return Err(invalid(name, "must be finite"));
            }
        }
        let rates = [
            ("gamma_rad", self.gamma_rad),
            ("gamma_isc_pm1", self.gamma_isc_pm1),
            ("gamma_isc_0", self.gamma_isc_0),
            ("gamma_singlet", self.gamma_singlet),
        ];
        for (name, v) in rates {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(name, format!("rate must be finite and >= 0, got {v}")));
            }
        }
        if !(0.0..=1.0).contains(&self.singlet_branching_to_0) {
            return Err(invalid("singlet_branching_to_0", "must lie in [0, 1]"));
        }
        if self.d_gs <= 0.0 || self.d_es <= 0.0 {
            return Err(invalid("d_gs", "zero-field splittings must be positive"));
        }
        Ok(())
    }
}

/// Microwave, RF and optical drives. Rabi frequencies and carrier
/// frequencies in Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DriveConfig {
    pub f_mw: f64,
    pub omega_mw: f64,
    pub f_rf: f64,
    /// Longitudinal RF Rabi frequency: the m_s = ±1 levels are modulated by
    /// ±omega_rf·cos(2π f_rf t).
    pub omega_rf: f64,
    pub omega_opt: f64,
}

impl Default for DriveConfig {
    fn default() -> Self {
        Self { f_mw: 2.87e9, omega_mw: 0.5e6, f_rf: 5e6, omega_rf: 1.5e6, omega_opt: 2e6 }
    }
}

impl DriveConfig {
    pub fn rf_off(mut self) -> Self {
        self.omega_rf = 0.0;
        self
    }

    pub fn mw_off(mut self) -> Self {
        self.omega_mw = 0.0;
        self
    }

    pub fn at_mw(mut self, f_mw: f64) -> Self {
        self.f_mw = f_mw;
        self
    }

    pub fn max_rabi(&self) -> f64 {
        self.omega_mw.max(self.omega_rf).max(self.omega_opt)
    }

    pub fn rf_active(&self) -> bool {
        self.omega_rf > 0.0
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("omega_mw", self.omega_mw), ("omega_rf", self.omega_rf), ("omega_opt", self.omega_opt)] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(invalid(name, format!("Rabi frequency must be finite and >= 0, got {v}")));
            }
        }
        if !self.f_mw.is_finite() || !self.f_rf.is_finite() {
            return Err(invalid("f_mw", "carrier frequencies must be finite"));
        }
        if self.omega_rf > 0.0 && self.f_rf <= 0.0 {
            return Err(invalid("f_rf", "must be > 0 when omega_rf > 0"));
        }
        Ok(())
    }
}

/// Magnetic field in tesla.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FieldVector {
    pub bx: f64,
    pub by: f64,
    pub bz: f64,
}

impl FieldVector {
    pub const ZERO: FieldVector = FieldVector { bx: 0.0, by: 0.0, bz: 0.0 };

    pub fn new(bx: f64, by: f64, bz: f64) -> Self {
        Self { bx, by, bz }
    }

    pub fn axial(bz: f64) -> Self {
        Self { bx: 0.0, by: 0.0, bz }
    }

    pub fn transverse(&self) -> f64 {
        self.bx.hypot(self.by)
    }

    pub fn norm(&self) -> f64 {
        (self.bx * self.bx + self.by * self.by + self.bz * self.bz).sqrt()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.bx, self.by, self.bz]
    }

    pub fn is_finite(&self) -> bool {
        self.bx.is_finite() && self.by.is_finite() && self.bz.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_literature_constants() {
        let p = NvParameters::default();
        assert_eq!(p.d_gs, 2.87e9);
        assert_eq!(p.g_s, 2.003);
        assert_eq!(p.g_i, 0.403);
        assert_eq!(p.a_par, -2.16e6);
        assert_eq!(p.a_perp, -2.7e6);
        assert_eq!(p.p_quad, -4.95e6);
        assert_eq!(p.mu_b, 13.996e9);
        assert_eq!(p.mu_n, 7.622e6);
        p.validate().unwrap();
    }

    #[test]
    fn drive_defaults() {
        let d = DriveConfig::default();
        assert_eq!((d.omega_mw, d.omega_opt, d.omega_rf), (0.5e6, 2e6, 1.5e6));
        d.validate().unwrap();
    }

    #[test]
    fn rejects_bad_values() {
        let p = NvParameters { gamma_rad: -1.0, ..Default::default() };
        assert!(p.validate().is_err());
        let p = NvParameters { singlet_branching_to_0: 1.5, ..Default::default() };
        assert!(p.validate().is_err());
        let d = DriveConfig { f_rf: 0.0, ..Default::default() };
        assert!(d.validate().is_err());
        assert!(DriveConfig { f_rf: 0.0, ..Default::default() }.rf_off().validate().is_ok());
    }

    #[test]
    fn gyromagnetic_ratio() {
        // 2.003 × 13.996 GHz/T ≈ 28.03 MHz/mT
        let g = NvParameters::default().electron_gyro() * 1e-3;
        assert!((g - 28.033988e6).abs() < 1.0);
    }
}
