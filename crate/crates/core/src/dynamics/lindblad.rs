use num_complex::Complex64 as C64;

use crate::algebra::ComplexMatrix;
use crate::{Error, Result};

const ZERO: C64 = C64::new(0.0, 0.0);

/// Dense Lindblad right-hand side
/// `−i[H, ρ] + Σ_k (L_k ρ L_k† − ½{L_k†L_k, ρ})`.
pub fn lindblad_rhs(rho: &ComplexMatrix, h_t: &ComplexMatrix, collapse_ops: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let n = rho.rows();
    if !rho.is_square() || h_t.rows() != n || h_t.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "rho {}x{}, H {}x{}",
            rho.rows(),
            rho.cols(),
            h_t.rows(),
            h_t.cols()
        )));
    }
    let mut out = h_t.commutator(rho).scale(C64::new(0.0, -1.0));
    for l in collapse_ops {
        if l.rows() != n || l.cols() != n {
            return Err(Error::DimensionMismatch(format!("collapse operator {}x{}", l.rows(), l.cols())));
        }
        let ld = l.adjoint();
        out += &(&(l * rho) * &ld);
        out -= &(&ld * l).anticommutator(rho).scale_real(0.5);
    }
    Ok(out)
}

/// Compressed row storage of a square matrix.
#[derive(Debug, Clone)]
struct SparseRows {
    offsets: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
}

impl SparseRows {
    fn from_dense(m: &ComplexMatrix) -> Self {
        let mut offsets = vec![0];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m[(i, j)];
                if v != ZERO {
                    cols.push(j);
                    vals.push(v);
                }
            }
            offsets.push(cols.len());
        }
        Self { offsets, cols, vals }
    }

    fn nnz(&self) -> usize {
        self.vals.len()
    }
}

/// One collapse operator as its list of non-zero entries, flattened into
/// the quadratic terms `l_ia · conj(l_jb)` of `L ρ L†`.
#[derive(Debug, Clone)]
struct JumpTerms {
    /// (i, j, a, b, coefficient): out[i][j] += coefficient · ρ[a][b]
    terms: Vec<(usize, usize, usize, usize, C64)>,
}

/// Sparse Lindblad generator for `H(t) = H₀ + c(t)·H₁`.
///
/// With `H_eff = H − (i/2) Σ L†L`, the right-hand side is
/// `−i(A − A†) + Σ L ρ L†` where `A = H_eff ρ`; only one sparse product per
/// evaluation is needed and the result is Hermitian by construction.
#[derive(Debug, Clone)]
pub struct Generator {
    dim: usize,
    h_static: SparseRows,
    h_drive: SparseRows,
    jumps: JumpTerms,
    scratch: Vec<C64>,
}

impl Generator {
    pub fn new(h_static: &ComplexMatrix, h_drive: &ComplexMatrix, collapse_ops: &[ComplexMatrix]) -> Result<Self> {
        let dim = h_static.rows();
        if !h_static.is_square() || h_drive.rows() != dim || h_drive.cols() != dim {
            return Err(Error::DimensionMismatch("generator Hamiltonian shapes".into()));
        }
        let mut decay = ComplexMatrix::zeros(dim, dim);
        let mut terms = Vec::new();
        for l in collapse_ops {
            if l.rows() != dim || l.cols() != dim {
                return Err(Error::DimensionMismatch(format!("collapse operator {}x{}", l.rows(), l.cols())));
            }
            decay += &(&l.adjoint() * l);
            let nz: Vec<(usize, usize, C64)> = (0..dim)
                .flat_map(|i| (0..dim).map(move |a| (i, a)))
                .filter_map(|(i, a)| (l[(i, a)] != ZERO).then(|| (i, a, l[(i, a)])))
                .collect();
            for &(i, a, v) in &nz {
                for &(j, b, w) in &nz {
                    terms.push((i, j, a, b, v * w.conj()));
                }
            }
        }
        let h_eff = h_static - &decay.scale(C64::new(0.0, 0.5));
        Ok(Self {
            dim,
            h_static: SparseRows::from_dense(&h_eff),
            h_drive: SparseRows::from_dense(h_drive),
            jumps: JumpTerms { terms },
            scratch: vec![ZERO; dim * dim],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.h_static.nnz() + self.h_drive.nnz()
    }

    /// Writes `dρ/dt` for drive factor `c` into `out` (row-major, dim²).
    pub fn apply(&mut self, rho: &[C64], c: f64, out: &mut [C64]) {
        let n = self.dim;
        let a = &mut self.scratch;
        a.iter_mut().for_each(|z| *z = ZERO);

        for (rows, scale) in [(&self.h_static, None), (&self.h_drive, Some(c))] {
            if scale == Some(0.0) {
                continue;
            }
            for i in 0..n {
                let dst = &mut a[i * n..(i + 1) * n];
                for idx in rows.offsets[i]..rows.offsets[i + 1] {
                    let h = match scale {
                        Some(s) => rows.vals[idx] * s,
                        None => rows.vals[idx],
                    };
                    let k = rows.cols[idx];
                    let src = &rho[k * n..(k + 1) * n];
                    for (d, &r) in dst.iter_mut().zip(src) {
                        *d += h * r;
                    }
                }
            }
        }

        // −i(A − A†)
        for i in 0..n {
            for j in 0..n {
                let d = a[i * n + j] - a[j * n + i].conj();
                out[i * n + j] = C64::new(d.im, -d.re);
            }
        }
        for &(i, j, p, q, coeff) in &self.jumps.terms {
            out[i * n + j] += coeff * rho[p * n + q];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_level_model, dephasing_operator, DriveConfig, NvParameters};

    fn random_state(n: usize, seed: u64) -> ComplexMatrix {
        // deterministic pseudo-random positive matrix with unit trace
        let mut s = seed;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let g = ComplexMatrix::from_fn(n, n, |_, _| C64::new(next(), next()));
        let rho = &g * &g.adjoint();
        let tr = rho.trace().re;
        rho.scale_real(1.0 / tr)
    }

    #[test]
    fn stationary_eigenprojector() {
        let h = ComplexMatrix::from_row_major(
            2,
            2,
            vec![C64::new(1.0, 0.0), C64::new(0.3, 0.2), C64::new(0.3, -0.2), C64::new(-0.5, 0.0)],
        )
        .unwrap();
        let (_, v) = h.eigh().unwrap();
        let psi = v.block(0, 1, 2, 1);
        let proj = &psi * &psi.adjoint();
        let d = lindblad_rhs(&proj, &h, &[]).unwrap();
        assert!(d.max_abs() < 1e-14);
    }

    #[test]
    fn trace_preserving() {
        let m = build_level_model(&NvParameters::default().with_strain(2e6), &DriveConfig::default());
        for seed in 0..4 {
            let rho = random_state(19, seed);
            let d = lindblad_rhs(&rho, &m.h_drift, &m.collapse_ops).unwrap();
            // rates up to ~1e8/s: normalise to the generator scale
            assert!(d.trace().norm() < 1e-12 * 1e8, "{}", d.trace());
        }
    }

    #[test]
    fn amplitude_damping_rate() {
        let gamma: f64 = 3.7e6;
        let mut l = ComplexMatrix::zeros(2, 2);
        l[(0, 1)] = C64::new(gamma.sqrt(), 0.0);
        let p = 0.35;
        let rho = ComplexMatrix::from_real_diagonal(&[1.0 - p, p]);
        let d = lindblad_rhs(&rho, &ComplexMatrix::zeros(2, 2), &[l]).unwrap();
        assert!((d[(1, 1)].re + gamma * p).abs() < 1e-6);
        assert!((d[(0, 0)].re - gamma * p).abs() < 1e-6);
    }

    #[test]
    fn dimension_mismatch() {
        let rho = ComplexMatrix::identity(3);
        assert!(lindblad_rhs(&rho, &ComplexMatrix::identity(2), &[]).is_err());
    }

    #[test]
    fn sparse_generator_matches_dense() {
        let p = NvParameters::default().with_strain(3e6);
        let m = build_level_model(&p, &DriveConfig::default().at_mw(2.868e9));
        let mut ops = m.collapse_ops.clone();
        ops.push(dephasing_operator(2e6));
        let mut gen = Generator::new(&m.h_drift, &m.h_rf_coupling, &ops).unwrap();
        for (seed, c) in [(1u64, 0.0), (2, 0.7), (3, -1.0)] {
            let rho = random_state(19, seed);
            let h = &m.h_drift + &m.h_rf_coupling.scale_real(c);
            let dense = lindblad_rhs(&rho, &h, &ops).unwrap();
            let mut out = vec![ZERO; 361];
            gen.apply(rho.as_slice(), c, &mut out);
            let sparse = ComplexMatrix::from_row_major(19, 19, out).unwrap();
            assert!(sparse.max_abs_diff(&dense) < 1e-12 * dense.max_abs(), "{}", sparse.max_abs_diff(&dense));
            assert_eq!(sparse.hermiticity_error(), 0.0);
        }
    }
}
