use serde::{Deserialize, Serialize};

use crate::error::invalid;
use crate::Result;

/// Uniform MW frequency grid, Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MwGrid {
    pub start: f64,
    pub stop: f64,
    pub n: usize,
}

impl Default for MwGrid {
    fn default() -> Self {
        Self { start: 2.84e9, stop: 2.90e9, n: 241 }
    }
}

impl MwGrid {
    pub fn new(start: f64, stop: f64, n: usize) -> Result<Self> {
        let g = Self { start, stop, n };
        g.validate()?;
        Ok(g)
    }

    /// `n` points over `center ± half_width`.
    pub fn centered(center: f64, half_width: f64, n: usize) -> Result<Self> {
        Self::new(center - half_width, center + half_width, n)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(invalid("n", "a sweep needs at least 2 points"));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(invalid("start", "must be finite and below stop"));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.stop - self.start) / (self.n - 1) as f64
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let step = self.step();
        (0..self.n).map(|i| if i + 1 == self.n { self.stop } else { self.start + i as f64 * step }).collect()
    }
}

/// Half-normal strain distribution `p(E) ∝ exp(−E²/2σ²)` sampled on a
/// uniform grid over `[e_min, e_max]`. Values in Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StrainDistribution {
    pub sigma: f64,
    pub e_min: f64,
    pub e_max: f64,
    pub n_points: usize,
}

impl Default for StrainDistribution {
    fn default() -> Self {
        Self { sigma: 5e6, e_min: 0.0, e_max: 15e6, n_points: 16 }
    }
}

impl StrainDistribution {
    pub fn validate(&self) -> Result<()> {
        if !(self.e_min >= 0.0) {
            return Err(invalid("e_min", "must be >= 0"));
        }
        if !(self.e_max > self.e_min && self.e_max.is_finite()) {
            return Err(invalid("e_max", "must be finite and above e_min"));
        }
        if self.n_points < 2 {
            return Err(invalid("n_points", "must be >= 2"));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(invalid("sigma", "must be > 0"));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.e_max - self.e_min) / (self.n_points - 1) as f64;
        (0..self.n_points)
            .map(|k| if k + 1 == self.n_points { self.e_max } else { self.e_min + k as f64 * step })
            .collect()
    }

    /// Weight of each sample point; the weights sum to 1.
    pub fn weights(&self) -> Vec<f64> {
        self.weights_at(&self.points())
    }

    /// Normalised Gaussian weights at arbitrary strain values.
    pub fn weights_at(&self, strains: &[f64]) -> Vec<f64> {
        let raw: Vec<f64> = strains.iter().map(|e| (-(e * e) / (2.0 * self.sigma * self.sigma)).exp()).collect();
        let total: f64 = raw.iter().sum();
        raw.iter().map(|w| w / total).collect()
    }
}

/// Which NV centres a spectrum describes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrainModel {
    /// One centre with transverse strain E (Hz).
    Single(f64),
    /// Strain-inhomogeneous ensemble.
    Ensemble(StrainDistribution),
}

impl StrainModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            StrainModel::Single(e) if !e.is_finite() => Err(invalid("e_strain", "must be finite")),
            StrainModel::Single(_) => Ok(()),
            StrainModel::Ensemble(d) => d.validate(),
        }
    }

    /// `(E, weight)` pairs.
    pub fn samples(&self) -> Vec<(f64, f64)> {
        match self {
            StrainModel::Single(e) => vec![(*e, 1.0)],
            StrainModel::Ensemble(d) => d.points().into_iter().zip(d.weights()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid() {
        let g = MwGrid::default();
        let f = g.frequencies();
        assert_eq!(f.len(), 241);
        assert!((g.step() - 0.25e6).abs() < 1e-6);
        assert_eq!(f[120], 2.87e9);
        assert_eq!(*f.last().unwrap(), 2.90e9);
        assert!(f.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn grid_validation() {
        assert!(MwGrid::new(1.0, 2.0, 1).is_err());
        assert!(MwGrid::new(2.0, 1.0, 5).is_err());
    }

    #[test]
    fn gaussian_weights() {
        let d = StrainDistribution { n_points: 4, ..Default::default() };
        let pts = d.points();
        assert_eq!(pts, vec![0.0, 5e6, 10e6, 15e6]);
        let w = d.weights();
        let raw = [1.0, (-0.5f64).exp(), (-2.0f64).exp(), (-4.5f64).exp()];
        let total: f64 = raw.iter().sum();
        for (a, b) in w.iter().zip(raw) {
            assert!((a - b / total).abs() < 1e-15);
        }
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn distribution_validation() {
        assert!(StrainDistribution { e_min: -1.0, ..Default::default() }.validate().is_err());
        assert!(StrainDistribution { n_points: 1, ..Default::default() }.validate().is_err());
        assert!(StrainDistribution { e_max: 0.0, ..Default::default() }.validate().is_err());
        assert_eq!(StrainModel::Single(2e6).samples(), vec![(2e6, 1.0)]);
    }
}
