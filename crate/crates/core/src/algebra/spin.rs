use num_complex::Complex64 as C64;

use super::{kron, ComplexMatrix};

/// Spin-1 operators in the `|+1⟩, |0⟩, |−1⟩` basis.
#[derive(Debug, Clone)]
pub struct SpinOperators {
    pub sx: ComplexMatrix,
    pub sy: ComplexMatrix,
    pub sz: ComplexMatrix,
    pub splus: ComplexMatrix,
    pub sminus: ComplexMatrix,
}

pub fn spin1_operators() -> SpinOperators {
    let r = std::f64::consts::SQRT_2;
    let mut splus = ComplexMatrix::zeros(3, 3);
    splus[(0, 1)] = C64::new(r, 0.0);
    splus[(1, 2)] = C64::new(r, 0.0);
    let sminus = splus.adjoint();
    let sx = (&splus + &sminus).scale_real(0.5);
    let sy = (&splus - &sminus).scale(C64::new(0.0, -0.5));
    let sz = ComplexMatrix::from_real_diagonal(&[1.0, 0.0, -1.0]);
    SpinOperators { sx, sy, sz, splus, sminus }
}

impl SpinOperators {
    pub fn sx2(&self) -> ComplexMatrix {
        &self.sx * &self.sx
    }

    pub fn sy2(&self) -> ComplexMatrix {
        &self.sy * &self.sy
    }

    pub fn sz2(&self) -> ComplexMatrix {
        &self.sz * &self.sz
    }

    /// `S²` (equals `2·I` for spin 1).
    pub fn casimir(&self) -> ComplexMatrix {
        &(&self.sx2() + &self.sy2()) + &self.sz2()
    }
}

/// Electron ⊗ nuclear product operators on the 9-dimensional hyperfine space.
///
/// Index of `|m_s, m_I⟩` is `3·e + n`, with `e, n` counting `+1, 0, −1`.
#[derive(Debug, Clone)]
pub struct HyperfineOperators {
    pub s: [ComplexMatrix; 3],
    pub i: [ComplexMatrix; 3],
    pub identity: ComplexMatrix,
}

impl HyperfineOperators {
    pub fn new() -> Self {
        let ops = spin1_operators();
        let id3 = ComplexMatrix::identity(3);
        let s = [kron(&ops.sx, &id3), kron(&ops.sy, &id3), kron(&ops.sz, &id3)];
        let i = [kron(&id3, &ops.sx), kron(&id3, &ops.sy), kron(&id3, &ops.sz)];
        Self { s, i, identity: ComplexMatrix::identity(9) }
    }
}

impl Default for HyperfineOperators {
    fn default() -> Self {
        Self::new()
    }
}

/// Hyperfine index of `|m_s, m_I⟩`.
pub fn hyperfine_index(m_s: i32, m_i: i32) -> usize {
    assert!(m_s.abs() <= 1 && m_i.abs() <= 1, "spin projections must be in {{-1, 0, 1}}");
    (3 * (1 - m_s) + (1 - m_i)) as usize
}

/// Inverse of [`hyperfine_index`].
pub fn hyperfine_labels(index: usize) -> (i32, i32) {
    assert!(index < 9);
    (1 - (index / 3) as i32, 1 - (index % 3) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn basis_conventions() {
        let s = spin1_operators();
        assert_eq!(s.sz[(0, 0)], C64::new(1.0, 0.0));
        assert_eq!(s.sz[(2, 2)], C64::new(-1.0, 0.0));
        assert!((s.sx[(1, 2)] - C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn su2_commutators() {
        let s = spin1_operators();
        let i = C64::new(0.0, 1.0);
        assert!((&s.sx.commutator(&s.sy) - &s.sz.scale(i)).max_abs() < TOL);
        assert!((&s.sy.commutator(&s.sz) - &s.sx.scale(i)).max_abs() < TOL);
        assert!((&s.sz.commutator(&s.sx) - &s.sy.scale(i)).max_abs() < TOL);
    }

    #[test]
    fn casimir_is_two() {
        let s = spin1_operators();
        assert!(s.casimir().max_abs_diff(&ComplexMatrix::identity(3).scale_real(2.0)) < TOL);
    }

    #[test]
    fn ladder_operators_consistent() {
        let s = spin1_operators();
        let sp = &s.sx + &s.sy.scale(C64::new(0.0, 1.0));
        assert!(sp.max_abs_diff(&s.splus) < TOL);
        assert!(s.sminus.max_abs_diff(&s.splus.adjoint()) < TOL);
    }

    #[test]
    fn hermitian() {
        let s = spin1_operators();
        for m in [&s.sx, &s.sy, &s.sz] {
            assert!(m.is_hermitian(TOL));
        }
    }

    #[test]
    fn kron_block_structure() {
        let s = spin1_operators();
        let id3 = ComplexMatrix::identity(3);
        let d: Vec<f64> = kron(&s.sz, &id3).diagonal().iter().map(|z| z.re).collect();
        assert_eq!(d, vec![1.0, 1.0, 1.0, 0.0, 0.0, 0.0, -1.0, -1.0, -1.0]);
        let d: Vec<f64> = kron(&s.sz, &s.sz).diagonal().iter().map(|z| z.re).collect();
        assert_eq!(d, vec![1.0, 0.0, -1.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0]);
    }

    #[test]
    fn index_round_trip() {
        for k in 0..9 {
            let (ms, mi) = hyperfine_labels(k);
            assert_eq!(hyperfine_index(ms, mi), k);
        }
        assert_eq!(hyperfine_index(1, 1), 0);
        assert_eq!(hyperfine_index(0, 0), 4);
    }
}
