use serde::{Deserialize, Serialize};

use crate::dynamics::EvolutionReport;
use crate::record::Record;
use crate::{Error, Result};

/// ODMR contrast versus MW frequency. Positive contrast is a fluorescence dip.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Hz, strictly increasing.
    pub mw_frequencies: Vec<f64>,
    pub contrast: Vec<f64>,
    /// Every parameter that produced the spectrum.
    pub metadata: Record,
    /// Worst invariant values over all evolutions behind the spectrum.
    pub report: EvolutionReport,
}

impl Spectrum {
    pub fn new(mw_frequencies: Vec<f64>, contrast: Vec<f64>, metadata: Record) -> Result<Self> {
        if mw_frequencies.len() != contrast.len() {
            return Err(Error::GridMismatch(format!(
                "{} frequencies but {} contrast values",
                mw_frequencies.len(),
                contrast.len()
            )));
        }
        if !mw_frequencies.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::GridMismatch("MW frequencies must be strictly increasing".into()));
        }
        Ok(Self { mw_frequencies, contrast, metadata, report: EvolutionReport::empty() })
    }

    pub fn len(&self) -> usize {
        self.contrast.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contrast.is_empty()
    }

    /// Rectangle-rule integral of the contrast, Hz.
    pub fn integral(&self) -> f64 {
        self.mw_frequencies.windows(2).zip(self.contrast.windows(2)).map(|(f, c)| 0.5 * (c[0] + c[1]) * (f[1] - f[0])).sum()
    }

    fn check_grid(&self, other: &Spectrum) -> Result<()> {
        let same = self.mw_frequencies.len() == other.mw_frequencies.len()
            && self.mw_frequencies.iter().zip(&other.mw_frequencies).all(|(a, b)| (a - b).abs() <= 1e-6);
        if same {
            Ok(())
        } else {
            Err(Error::GridMismatch("spectra are on different MW grids".into()))
        }
    }
}

/// One spectrum per value of a swept parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapAxis {
    /// Column name with unit, e.g. `f_rf (Hz)`.
    pub label: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumMap {
    pub row_axis: MapAxis,
    pub spectra: Vec<Spectrum>,
}

impl SpectrumMap {
    pub fn new(row_axis: MapAxis, spectra: Vec<Spectrum>) -> Result<Self> {
        if row_axis.values.len() != spectra.len() {
            return Err(Error::GridMismatch(format!("{} rows but {} spectra", row_axis.values.len(), spectra.len())));
        }
        Ok(Self { row_axis, spectra })
    }

    pub fn report(&self) -> EvolutionReport {
        EvolutionReport::combine(self.spectra.iter().map(|s| &s.report))
    }
}

/// Pointwise `s − reference`.
pub fn difference_spectrum(s: &Spectrum, reference: &Spectrum) -> Result<Spectrum> {
    s.check_grid(reference)?;
    let contrast = s.contrast.iter().zip(&reference.contrast).map(|(a, b)| a - b).collect();
    let mut metadata = Record::new();
    for (k, v) in &s.metadata {
        metadata.insert(format!("minuend.{k}"), v.clone());
    }
    for (k, v) in &reference.metadata {
        metadata.insert(format!("subtrahend.{k}"), v.clone());
    }
    let mut out = Spectrum::new(s.mw_frequencies.clone(), contrast, metadata)?;
    out.report = EvolutionReport::combine([&s.report, &reference.report]);
    Ok(out)
}

/// Weighted average over per-strain spectra, weights `exp(−E²/2σ²)`
/// normalised over the given strain values.
pub fn strain_average(per_strain: &[(f64, Spectrum)], dist: &super::StrainDistribution) -> Result<Spectrum> {
    let Some((_, first)) = per_strain.first() else {
        return Err(Error::GridMismatch("no spectra to average".into()));
    };
    for (_, s) in per_strain {
        first.check_grid(s)?;
    }
    let strains: Vec<f64> = per_strain.iter().map(|(e, _)| *e).collect();
    let weights = dist.weights_at(&strains);
    let mut contrast = vec![0.0; first.len()];
    for ((_, s), w) in per_strain.iter().zip(&weights) {
        for (acc, c) in contrast.iter_mut().zip(&s.contrast) {
            *acc += w * c;
        }
    }
    let mut metadata = first.metadata.clone();
    metadata.retain(|k, _| !k.starts_with("strain."));
    for (k, v) in crate::record::flatten("strain", dist)? {
        metadata.insert(k, v);
    }
    let mut out = Spectrum::new(first.mw_frequencies.clone(), contrast, metadata)?;
    out.report = EvolutionReport::combine(per_strain.iter().map(|(_, s)| &s.report));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::StrainDistribution;

    fn spec(c: &[f64]) -> Spectrum {
        let f = (0..c.len()).map(|i| 2.87e9 + i as f64 * 1e5).collect();
        Spectrum::new(f, c.to_vec(), Record::new()).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(Spectrum::new(vec![1.0, 2.0], vec![0.0], Record::new()).is_err());
        assert!(Spectrum::new(vec![2.0, 1.0], vec![0.0, 0.0], Record::new()).is_err());
        assert!(Spectrum::new(vec![1.0, 1.0], vec![0.0, 0.0], Record::new()).is_err());
    }

    #[test]
    fn difference_rules() {
        let a = spec(&[1.0, 2.0, 3.0]);
        let b = spec(&[0.5, 0.5, 0.5]);
        let r = spec(&[0.1, 0.2, 0.3]);
        assert!(difference_spectrum(&a, &a).unwrap().contrast.iter().all(|&c| c == 0.0));
        let lhs = difference_spectrum(&a, &r).unwrap();
        let rhs = difference_spectrum(&r, &b).unwrap();
        let ab = difference_spectrum(&a, &b).unwrap();
        for i in 0..3 {
            assert!((lhs.contrast[i] + rhs.contrast[i] - ab.contrast[i]).abs() < 1e-15);
        }
        let other = Spectrum::new(vec![1.0, 2.0, 3.0], vec![0.0; 3], Record::new()).unwrap();
        assert!(matches!(difference_spectrum(&a, &other), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn averaging_rules() {
        let d = StrainDistribution::default();
        let a = spec(&[1.0, 2.0]);
        let single = strain_average(&[(3e6, a.clone())], &d).unwrap();
        assert_eq!(single.contrast, a.contrast);
        let same = strain_average(&[(0.0, a.clone()), (9e6, a.clone())], &d).unwrap();
        for (x, y) in same.contrast.iter().zip(&a.contrast) {
            assert!((x - y).abs() < 1e-15);
        }
        let b = spec(&[0.0, 0.0]);
        let mixed = strain_average(&[(0.0, a.clone()), (5e6, b)], &d).unwrap();
        let w0 = 1.0 / (1.0 + (-0.5f64).exp());
        assert!((mixed.contrast[1] - 2.0 * w0).abs() < 1e-15);
        assert!(strain_average(&[], &d).is_err());
    }
}
