use num_complex::Complex64 as C64;

use super::ComplexMatrix;
use crate::{Error, Result};

const DEGREES: [u32; 5] = [3, 5, 7, 9, 13];

/// Matrix exponential by scaling and squaring with a diagonal Padé
/// approximant.
///
/// The Padé degree `m` and the number of squarings `s` are chosen together so
/// that the leading truncation term `(m!)² / ((2m)! (2m+1)!) · ‖A/2^s‖₁^(2m+1)`
/// stays below `tolerance`, at the smallest matrix-product count.
pub fn expm(m: &ComplexMatrix, tolerance: f64) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if !(tolerance > 0.0) {
        return Err(crate::error::invalid("tolerance", "must be positive"));
    }
    let tol = tolerance.max(1e-17);
    let norm = m.norm_1();
    if !norm.is_finite() {
        return Err(crate::error::invalid("m", "non-finite entries"));
    }

    let (degree, squarings) = choose_degree(norm, tol);
    let scaled = m.scale_real(0.5f64.powi(squarings as i32));
    let mut result = pade(&scaled, degree)?;
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

fn truncation_constant(m: u32) -> f64 {
    // (m!)^2 / ((2m)! (2m+1)!)
    let mut c = 1.0;
    for k in 1..=m {
        c *= k as f64;
    }
    c *= c;
    for k in 1..=(2 * m) {
        c /= k as f64;
    }
    for k in 1..=(2 * m + 1) {
        c /= k as f64;
    }
    c
}

fn choose_degree(norm: f64, tol: f64) -> (u32, u32) {
    let mut best = (13, 0, f64::INFINITY);
    for &m in &DEGREES {
        let c = truncation_constant(m);
        let mut s = 0u32;
        while s < 1100 && c * (norm * 0.5f64.powi(s as i32)).powi(2 * m as i32 + 1) > tol {
            s += 1;
        }
        let cost = (m - 1) as f64 + s as f64 + 1.5;
        if cost < best.2 {
            best = (m, s, cost);
        }
    }
    (best.0, best.1)
}

fn pade(a: &ComplexMatrix, m: u32) -> Result<ComplexMatrix> {
    let n = a.rows();
    // p_j = (2m - j)! m! / ((2m)! j! (m - j)!), built by the ratio recurrence.
    let mut coeffs = vec![1.0f64];
    for j in 1..=m {
        let prev = coeffs[(j - 1) as usize];
        coeffs.push(prev * (m - j + 1) as f64 / (j as f64 * (2 * m - j + 1) as f64));
    }

    let mut numer = ComplexMatrix::identity(n);
    let mut denom = ComplexMatrix::identity(n);
    let mut power = ComplexMatrix::identity(n);
    for (j, &p) in coeffs.iter().enumerate().skip(1) {
        power = &power * a;
        let term = power.scale_real(p);
        numer += &term;
        if j % 2 == 0 {
            denom += &term;
        } else {
            denom -= &term;
        }
    }
    denom.solve(&numer)
}

/// Propagator `exp(-i H t)` for a Hermitian `h` given in rad/s.
pub fn unitary_propagator(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    expm(&h.scale(C64::new(0.0, -t)), 1e-15)
}
