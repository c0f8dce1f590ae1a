use num_complex::Complex64 as C64;

use crate::algebra::ComplexMatrix;
use crate::model::{LevelModel, DIM, GROUND};
use crate::{Error, Result};

pub const HERMITICITY_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-8;
pub const MIN_EIGENVALUE_TOL: f64 = -1e-6;

/// Hermitian, unit-trace, positive semidefinite state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    rho: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates the density-matrix invariants.
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        if !rho.is_square() {
            return Err(Error::NotSquare { rows: rho.rows(), cols: rho.cols() });
        }
        let state = Self { rho };
        state.check(0.0)?;
        Ok(state)
    }

    pub(crate) fn new_unchecked(rho: ComplexMatrix) -> Self {
        Self { rho }
    }

    /// Pure state `|k⟩⟨k|`.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        Self { rho: ComplexMatrix::outer_basis(dim, k, k) }
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.rho
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn population(&self, k: usize) -> f64 {
        self.rho[(k, k)].re
    }

    pub fn purity(&self) -> f64 {
        (&self.rho * &self.rho).trace().re
    }

    /// Largest `|ρ_ij − conj(ρ_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.rho[(i, j)] - self.rho[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.rho.eigvalsh()?[0])
    }

    pub(crate) fn check(&self, time: f64) -> Result<()> {
        let herm = self.hermiticity_defect();
        if !(herm <= HERMITICITY_TOL) {
            return Err(Error::InvariantViolation { time, detail: format!("hermiticity defect {herm:.3e}") });
        }
        let tr = self.trace();
        if !((tr - 1.0).abs() <= TRACE_TOL) {
            return Err(Error::InvariantViolation { time, detail: format!("trace {tr:.12}") });
        }
        let min = self.min_eigenvalue()?;
        if !(min >= MIN_EIGENVALUE_TOL) {
            return Err(Error::InvariantViolation { time, detail: format!("minimum eigenvalue {min:.3e}") });
        }
        Ok(())
    }
}

/// Maximally mixed state over the nine ground hyperfine levels.
pub fn initial_state_unpolarized() -> DensityMatrix {
    let mut rho = ComplexMatrix::zeros(DIM, DIM);
    for k in GROUND {
        rho[(k, k)] = C64::new(1.0 / 9.0, 0.0);
    }
    DensityMatrix { rho }
}

/// Total excited-state population `Tr(P_exc ρ)`.
pub fn fluorescence(rho: &DensityMatrix, model: &LevelModel) -> f64 {
    let p = &model.fluorescence_projector;
    let n = rho.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for k in 0..n {
            let pik = p[(i, k)];
            if pik != C64::new(0.0, 0.0) {
                acc += (pik * rho.rho[(k, i)]).re;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_level_model, DriveConfig, NvParameters, EXCITED, SINGLET};

    #[test]
    fn unpolarized_state() {
        let rho = initial_state_unpolarized();
        assert!((rho.trace() - 1.0).abs() < 1e-15);
        for k in GROUND {
            assert!((rho.population(k) - 1.0 / 9.0).abs() < 1e-16);
        }
        for k in EXCITED {
            assert_eq!(rho.population(k), 0.0);
        }
        assert_eq!(rho.population(SINGLET), 0.0);
        rho.check(0.0).unwrap();
    }

    #[test]
    fn fluorescence_limits() {
        let model = build_level_model(&NvParameters::default(), &DriveConfig::default());
        assert_eq!(fluorescence(&initial_state_unpolarized(), &model), 0.0);
        let excited = DensityMatrix::basis_state(DIM, EXCITED.start + 2);
        assert!((fluorescence(&excited, &model) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn validation_rejects_bad_states() {
        let mut m = ComplexMatrix::identity(2).scale_real(0.5);
        m[(0, 1)] = C64::new(0.1, 0.0);
        assert!(DensityMatrix::new(m.clone()).is_err());
        m[(1, 0)] = C64::new(0.1, 0.0);
        assert!(DensityMatrix::new(m).is_ok());
        assert!(DensityMatrix::new(ComplexMatrix::identity(2)).is_err());
        let neg = ComplexMatrix::from_real_diagonal(&[1.5, -0.5]);
        assert!(DensityMatrix::new(neg).is_err());
    }
}
