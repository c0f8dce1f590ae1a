use num_complex::Complex64 as C64;

use super::{FieldVector, NvParameters};
use crate::algebra::{hyperfine_labels, ComplexMatrix, HyperfineOperators};
use crate::TWO_PI;

/// Spin-1 triplet Hamiltonian constants, Hz. Shared by the ground and the
/// excited manifold.
#[derive(Debug, Clone, Copy)]
pub(crate) struct TripletConstants {
    pub zfs: f64,
    pub e_x: f64,
    pub e_y: f64,
    pub a_par: f64,
    pub a_perp: f64,
    pub p_quad: f64,
    pub electron_gyro: f64,
    pub nuclear_gyro: f64,
}

impl TripletConstants {
    pub fn ground(p: &NvParameters) -> Self {
        Self {
            zfs: p.d_gs,
            e_x: p.e_x,
            e_y: p.e_y,
            a_par: p.a_par,
            a_perp: p.a_perp,
            p_quad: p.p_quad,
            electron_gyro: p.g_s * p.mu_b,
            nuclear_gyro: p.g_i * p.mu_n,
        }
    }

    pub fn excited(p: &NvParameters) -> Self {
        Self {
            zfs: p.d_es,
            e_x: p.e_es,
            e_y: 0.0,
            a_par: p.a_par * p.es_hyperfine_scale,
            ..Self::ground(p)
        }
    }

    /// Lab-frame 9×9 Hamiltonian in rad/s.
    pub fn hamiltonian(&self, b: &FieldVector) -> ComplexMatrix {
        let ops = HyperfineOperators::new();
        let [sx, sy, sz] = &ops.s;
        let [ix, iy, iz] = &ops.i;

        let sx2 = sx * sx;
        let sy2 = sy * sy;
        let s_sq = &(&sx2 + &sy2) + &(sz * sz);

        let mut h = (&(sz * sz) - &s_sq.scale_real(1.0 / 3.0)).scale_real(self.zfs);
        h -= &(&sx2 - &sy2).scale_real(self.e_x);
        h += &(&(sx * sy) + &(sy * sx)).scale_real(self.e_y);

        let field = b.as_array();
        for (k, &bk) in field.iter().enumerate() {
            if bk != 0.0 {
                h += &ops.s[k].scale_real(self.electron_gyro * bk);
                h -= &ops.i[k].scale_real(self.nuclear_gyro * bk);
            }
        }

        h += &(sz * iz).scale_real(self.a_par);
        h += &(&(sx * ix) + &(sy * iy)).scale_real(self.a_perp);
        h += &(iz * iz).scale_real(self.p_quad);
        // ensure exact Hermiticity; products above are Hermitian only up to round-off
        let h = (&h + &h.adjoint()).scale_real(0.5);
        h.scale_real(TWO_PI)
    }
}

/// Ground-state spin Hamiltonian on the electron ⊗ ¹⁴N space, rad/s:
///
/// `2π·[D(Sz² − S²/3) − Ex(Sx² − Sy²) + Ey(SxSy + SySx) + g_s μ_B B·S
///      + A∥ Sz Iz + A⊥(Sx Ix + Sy Iy) + P Iz² − g_I μ_N B·I]`
pub fn build_ground_hamiltonian(p: &NvParameters, b: &FieldVector) -> ComplexMatrix {
    TripletConstants::ground(p).hamiltonian(b)
}

/// Projector diagonal on the m_s = ±1 manifold of the 9-dim hyperfine space.
pub(crate) fn bright_manifold_mask() -> [bool; 9] {
    let mut mask = [false; 9];
    for (k, m) in mask.iter_mut().enumerate() {
        *m = hyperfine_labels(k).0 != 0;
    }
    mask
}

/// Reduces a lab-frame triplet Hamiltonian to a frame rotating at
/// `frame_hz` on the m_s = ±1 manifold.
///
/// Terms coupling m_s = 0 to m_s = ±1 (transverse hyperfine, transverse
/// field) oscillate at the frame frequency and are removed; their effect is
/// retained to second order as a static shift `±V·V / (2π zfs)` within each
/// manifold. The constant `2π·(2/3)·zfs` is added so the m_s = 0 manifold sits
/// near zero.
pub(crate) fn rotating_frame_block(h_lab: &ComplexMatrix, zfs: f64, frame_hz: f64) -> ComplexMatrix {
    let mask = bright_manifold_mask();
    let same = |i: usize, j: usize| mask[i] == mask[j];

    let diag_blocks = ComplexMatrix::from_fn(9, 9, |i, j| if same(i, j) { h_lab[(i, j)] } else { C64::new(0.0, 0.0) });
    let v = ComplexMatrix::from_fn(9, 9, |i, j| if same(i, j) { C64::new(0.0, 0.0) } else { h_lab[(i, j)] });
    let vv = &v * &v;
    let gap = TWO_PI * zfs;
    let shift = ComplexMatrix::from_fn(9, 9, |i, j| {
        if !same(i, j) {
            C64::new(0.0, 0.0)
        } else if mask[i] {
            vv[(i, j)] / gap
        } else {
            -vv[(i, j)] / gap
        }
    });

    let mut h = &diag_blocks + &shift;
    for k in 0..9 {
        h[(k, k)] += TWO_PI * (2.0 / 3.0) * zfs;
        if mask[k] {
            h[(k, k)] -= TWO_PI * frame_hz;
        }
    }
    (&h + &h.adjoint()).scale_real(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hyperfine_index;

    fn levels_mhz(h: &ComplexMatrix) -> Vec<f64> {
        h.eigvalsh().unwrap().into_iter().map(|e| e / TWO_PI / 1e6).collect()
    }

    #[test]
    fn hermitian_for_generic_inputs() {
        let p = NvParameters { e_x: 3e6, e_y: -1.2e6, ..Default::default() };
        let h = build_ground_hamiltonian(&p, &FieldVector::new(2e-4, -1e-4, 7e-4));
        assert!(h.hermiticity_error() < 1e-12);
    }

    #[test]
    fn trace_is_six_p() {
        // Tr[D(Sz²−S²/3)] = 0 and Tr[Iz²]·Tr[1_S] = 6.
        let p = NvParameters { e_x: 2e6, ..Default::default() };
        let h = build_ground_hamiltonian(&p, &FieldVector::new(1e-4, 2e-4, 3e-4));
        let tr = h.trace();
        assert!((tr.re - TWO_PI * 6.0 * p.p_quad).abs() < 1e-3);
        assert!(tr.im.abs() < 1e-3);
    }

    #[test]
    fn zero_field_gaps_cluster_at_d() {
        let p = NvParameters::default();
        let e = levels_mhz(&build_ground_hamiltonian(&p, &FieldVector::ZERO));
        // three m_s = 0 levels at the bottom, six m_s = ±1 levels ~D above
        let gap = e[3] - e[2];
        assert!((gap - 2870.0).abs() < 10.0, "gap {gap}");
        assert!(e[8] - e[3] < 10.0);
        assert!(e[2] - e[0] < 10.0);
    }

    #[test]
    fn strain_splits_mi_zero_branch_by_two_e() {
        let p = NvParameters::default().with_strain(2e6);
        let h = build_ground_hamiltonian(&p, &FieldVector::ZERO);
        let rot = rotating_frame_block(&h, p.d_gs, p.d_gs);
        // m_I = 0 block {|+1,0>, |-1,0>}
        let i = hyperfine_index(1, 0);
        let j = hyperfine_index(-1, 0);
        let blk = ComplexMatrix::from_fn(2, 2, |a, b| rot[([i, j][a], [i, j][b])]);
        let e = levels_mhz(&blk);
        assert!((e[1] - e[0] - 4.0).abs() < 1e-3);
        // m_I = +1 block
        let i = hyperfine_index(1, 1);
        let j = hyperfine_index(-1, 1);
        let blk = ComplexMatrix::from_fn(2, 2, |a, b| rot[([i, j][a], [i, j][b])]);
        let e = levels_mhz(&blk);
        let expect = 2.0 * (2.16f64.powi(2) + 4.0).sqrt();
        assert!((e[1] - e[0] - expect).abs() < 1e-2, "{}", e[1] - e[0]);
    }

    #[test]
    fn axial_field_zeeman_gap() {
        let p = NvParameters::default();
        let h = build_ground_hamiltonian(&p, &FieldVector::axial(1e-3));
        let (i, j) = (hyperfine_index(1, 0), hyperfine_index(-1, 0));
        let gap = (h[(i, i)] - h[(j, j)]).re / TWO_PI / 1e6;
        assert!((gap - 56.068).abs() < 1e-2, "{gap}");
    }

    /// The second-order rotating-frame reduction must reproduce the lab-frame
    /// transition frequencies; keeping the m_s-changing hyperfine terms as
    /// static couplings would not.
    #[test]
    fn rotating_frame_reduction_matches_lab_frame() {
        let p = NvParameters::default().with_strain(2e6);
        for b in [FieldVector::ZERO, FieldVector::new(3e-4, 1e-4, 2e-4), FieldVector::new(9e-4, 0.0, 1e-4)] {
            let lab = levels_mhz(&build_ground_hamiltonian(&p, &b));
            let h = build_ground_hamiltonian(&p, &b);
            let rot = rotating_frame_block(&h, p.d_gs, 0.0);
            let red = levels_mhz(&rot);
            let offset = 2870.0 * 2.0 / 3.0;
            for (a, r) in lab.iter().zip(&red) {
                assert!((a + offset - r).abs() < 5e-3, "lab {a} vs reduced {r} (B = {b:?})");
            }

            // naive variant: keep the off-diagonal terms unchanged in the rotating frame
            let mut naive = h.clone();
            for k in 0..9 {
                if hyperfine_labels(k).0 != 0 {
                    naive[(k, k)] -= TWO_PI * p.d_gs;
                }
            }
            let naive = levels_mhz(&naive);
            let mut lab_shifted: Vec<f64> = lab
                .iter()
                .enumerate()
                .map(|(k, e)| if k >= 3 { e - 2870.0 } else { *e })
                .collect();
            lab_shifted.sort_by(f64::total_cmp);
            let worst = naive.iter().zip(&lab_shifted).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(worst > 0.5, "static transverse hyperfine should distort levels, got {worst} MHz");
        }
    }
}
