#![allow(dead_code)]

use nv_odmr::model::{dephasing_operator, LevelModel};
use nv_odmr::{ComplexMatrix, EvolutionSettings};
use num_complex::Complex64 as C64;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Row-major vectorised Lindblad superoperator: `vec(ρ)[i·n + j] = ρ_ij`.
pub fn liouvillian(h: &ComplexMatrix, ops: &[ComplexMatrix]) -> ComplexMatrix {
    let n = h.rows();
    let id = ComplexMatrix::identity(n);
    let mut sup = ComplexMatrix::zeros(n * n, n * n);
    // A ρ B contributes A_ik B_lj at ((i, j), (k, l))
    let mut add = |a: &ComplexMatrix, b: &ComplexMatrix| {
        for i in 0..n {
            for k in 0..n {
                let aik = a[(i, k)];
                if aik == ZERO {
                    continue;
                }
                for l in 0..n {
                    for j in 0..n {
                        let blj = b[(l, j)];
                        if blj != ZERO {
                            sup[(i * n + j, k * n + l)] += aik * blj;
                        }
                    }
                }
            }
        }
    };
    let i = C64::new(0.0, 1.0);
    add(&h.scale(-i), &id);
    add(&id, &h.scale(i));
    for l in ops {
        let ld = l.adjoint();
        let k = (&ld * l).scale_real(-0.5);
        add(l, &ld);
        add(&k, &id);
        add(&id, &k);
    }
    sup
}

/// Collapse operators the integrator uses for `settings`.
pub fn all_collapse_ops(model: &LevelModel, settings: &EvolutionSettings) -> Vec<ComplexMatrix> {
    let mut ops = model.collapse_ops.clone();
    if settings.dephasing_rate > 0.0 {
        ops.push(dephasing_operator(settings.dephasing_rate));
    }
    ops
}

pub fn matvec(m: &ComplexMatrix, v: &[C64]) -> Vec<C64> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|k| m[(i, k)] * v[k]).sum()).collect()
}

/// `exp(A)·v` by Taylor series, for `‖A‖` of order one or less.
pub fn taylor_expmv(a: &ComplexMatrix, v: &[C64]) -> Vec<C64> {
    let mut out = v.to_vec();
    let mut term = v.to_vec();
    for k in 1..60 {
        term = matvec(a, &term).into_iter().map(|z| z / k as f64).collect();
        let size = term.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for (o, t) in out.iter_mut().zip(&term) {
            *o += t;
        }
        if size < 1e-18 {
            break;
        }
    }
    out
}

/// Piecewise-constant propagation of `vec(ρ)` under
/// `L(t) = L₀ + cos(2π f t)·L₁`, sampling the drive at segment midpoints.
pub fn piecewise_propagate(l0: &ComplexMatrix, l1: &ComplexMatrix, f: f64, t: f64, segments: usize, v0: &[C64]) -> Vec<C64> {
    let dt = t / segments as f64;
    let mut v = v0.to_vec();
    for s in 0..segments {
        let c = (2.0 * std::f64::consts::PI * f * (s as f64 + 0.5) * dt).cos();
        let a = (l0 + &l1.scale_real(c)).scale_real(dt);
        v = taylor_expmv(&a, &v);
    }
    v
}

/// Least-squares line: (slope, intercept, R²).
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, intercept, r2)
}
