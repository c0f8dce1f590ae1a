use super::spectrum::Spectrum;
use crate::error::invalid;
use crate::Result;

/// Outcome of [`extract_splitting`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Splitting {
    /// Positions of the two largest maxima, Hz, `f_minus < f_plus`.
    Resolved { f_minus: f64, f_plus: f64 },
    /// Fewer than two local maxima in the window.
    Unresolved { maxima: usize },
}

impl Splitting {
    pub fn separation(&self) -> Option<f64> {
        match self {
            Splitting::Resolved { f_minus, f_plus } => Some(f_plus - f_minus),
            Splitting::Unresolved { .. } => None,
        }
    }

    pub fn midpoint(&self) -> Option<f64> {
        match self {
            Splitting::Resolved { f_minus, f_plus } => Some(0.5 * (f_plus + f_minus)),
            Splitting::Unresolved { .. } => None,
        }
    }
}

/// Vertex of the parabola through three points.
fn parabola_vertex(x: [f64; 3], y: [f64; 3]) -> f64 {
    let d1 = (y[1] - y[0]) / (x[1] - x[0]);
    let d2 = (y[2] - y[1]) / (x[2] - x[1]);
    let curvature = (d2 - d1) / (x[2] - x[0]);
    if curvature == 0.0 {
        return x[1];
    }
    // p(x) = y0 + d1 (x − x0) + curvature (x − x0)(x − x1)
    let v = 0.5 * (x[0] + x[1]) - d1 / (2.0 * curvature);
    v.clamp(x[0], x[2])
}

/// Finds the two largest local maxima of the contrast within
/// `center ± half_window` and refines each by 3-point quadratic
/// interpolation.
///
/// For RF-dressed spectra the split lines are holes burnt into the
/// RF-off line shape; pass the depletion spectrum
/// `difference_spectrum(&reference, &rf_on)` to locate them.
pub fn extract_splitting(s: &Spectrum, center: f64, half_window: f64) -> Result<Splitting> {
    if !(half_window > 0.0) {
        return Err(invalid("half_window", "must be > 0"));
    }
    let f = &s.mw_frequencies;
    let c = &s.contrast;
    let mut maxima: Vec<usize> = (1..c.len().saturating_sub(1))
        .filter(|&i| (f[i] - center).abs() <= half_window && c[i] > c[i - 1] && c[i] >= c[i + 1])
        .collect();
    if maxima.len() < 2 {
        return Ok(Splitting::Unresolved { maxima: maxima.len() });
    }
    maxima.sort_by(|&a, &b| c[b].total_cmp(&c[a]).then(a.cmp(&b)));
    let mut peaks: Vec<f64> = maxima[..2]
        .iter()
        .map(|&i| parabola_vertex([f[i - 1], f[i], f[i + 1]], [c[i - 1], c[i], c[i + 1]]))
        .collect();
    peaks.sort_by(|a, b| a.total_cmp(b));
    Ok(Splitting::Resolved { f_minus: peaks[0], f_plus: peaks[1] })
}
