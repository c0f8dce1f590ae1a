use crate::algebra::{hyperfine_labels, ComplexMatrix};
use crate::error::invalid;
use crate::model::{build_ground_hamiltonian, FieldVector, NvParameters};
use crate::{Result, TWO_PI};

/// Column order of [`LevelCurves::transitions`]: `(m_I, branch)` where
/// branch 0 is the lower and 1 the upper m_s = ±1 level of that m_I.
pub const TRANSITION_LABELS: [(i32, usize); 6] = [(1, 0), (1, 1), (0, 0), (0, 1), (-1, 0), (-1, 1)];

/// Ground-state levels along an axial-field sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelCurves {
    /// Axial field, T.
    pub fields: Vec<f64>,
    /// Nine eigenvalues per field, ascending, Hz.
    pub energies: Vec<[f64; 9]>,
    /// Nuclear-spin-preserving transition frequencies from the m_s = 0
    /// manifold, Hz, ordered as [`TRANSITION_LABELS`].
    pub transitions: Vec<[f64; 6]>,
    /// Energy of the eigenstate attached to each basis state `|m_s, m_I⟩`
    /// (hyperfine index order), Hz. Follows levels through crossings.
    pub by_basis_state: Vec<[f64; 9]>,
}

/// Eigenvalues with the m_I-resolved m_s = 0 and m_s = ±1 assignments.
struct Classified {
    energies: [f64; 9],
    by_basis: [f64; 9],
    /// energy of the m_s = 0 level for m_I = +1, 0, −1
    zero: [f64; 3],
    /// lower/upper m_s = ±1 level for m_I = +1, 0, −1
    pair: [[f64; 2]; 3],
}

fn classify(h: &ComplexMatrix) -> Result<Classified> {
    let (vals, vecs) = h.eigh()?;
    let n = vals.len();
    let energies: [f64; 9] = std::array::from_fn(|k| vals[k] / TWO_PI);

    // weight[state][(zero?, m_I slot)]
    let mut w_zero = vec![0.0; n];
    let mut w_mi = vec![[0.0; 3]; n];
    for s in 0..n {
        for b in 0..n {
            let p = vecs[(b, s)].norm_sqr();
            let (m_s, m_i) = hyperfine_labels(b);
            if m_s == 0 {
                w_zero[s] += p;
            }
            w_mi[s][(1 - m_i) as usize] += p;
        }
    }
    // one-to-one eigenstate/basis-state pairing, largest overlaps first
    let mut overlaps: Vec<(f64, usize, usize)> =
        (0..n).flat_map(|s| (0..n).map(move |b| (s, b))).map(|(s, b)| (vecs[(b, s)].norm_sqr(), s, b)).collect();
    overlaps.sort_by(|x, y| y.0.total_cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut by_basis = [f64::NAN; 9];
    let mut used = vec![false; n];
    for (_, s, b) in overlaps {
        if !used[s] && by_basis[b].is_nan() {
            used[s] = true;
            by_basis[b] = vals[s] / TWO_PI;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| w_zero[b].total_cmp(&w_zero[a]).then(a.cmp(&b)));
    let (zero_states, pm_states) = order.split_at(3);

    let w_mi = &w_mi;
    let assign = |states: &[usize], capacity: usize| -> Vec<Vec<usize>> {
        let mut cand: Vec<(f64, usize, usize)> =
            states.iter().flat_map(|&s| (0..3).map(move |slot| (w_mi[s][slot], s, slot))).collect();
        cand.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut taken = vec![false; n];
        let mut slots = vec![Vec::new(); 3];
        for (_, s, slot) in cand {
            if !taken[s] && slots[slot].len() < capacity {
                taken[s] = true;
                slots[slot].push(s);
            }
        }
        slots
    };

    let zs = assign(zero_states, 1);
    let ps = assign(pm_states, 2);
    let zero = std::array::from_fn(|slot| vals[zs[slot][0]] / TWO_PI);
    let pair = std::array::from_fn(|slot| {
        let (a, b) = (vals[ps[slot][0]] / TWO_PI, vals[ps[slot][1]] / TWO_PI);
        [a.min(b), a.max(b)]
    });
    Ok(Classified { energies, by_basis, zero, pair })
}

/// Diagonalises the ground Hamiltonian with strain `e_strain` (Hz, along x)
/// over axial fields `b_axial` (T).
pub fn eigenlevels_vs_field(p: &NvParameters, e_strain: f64, b_axial: &[f64]) -> Result<LevelCurves> {
    let p = p.with_strain(e_strain);
    let mut out = LevelCurves {
        fields: b_axial.to_vec(),
        energies: Vec::new(),
        transitions: Vec::new(),
        by_basis_state: Vec::new(),
    };
    for &b in b_axial {
        if !b.is_finite() {
            return Err(invalid("b_axial", "must be finite"));
        }
        let c = classify(&build_ground_hamiltonian(&p, &FieldVector::axial(b)))?;
        out.energies.push(c.energies);
        out.by_basis_state.push(c.by_basis);
        out.transitions.push(std::array::from_fn(|k| {
            let (m_i, branch) = TRANSITION_LABELS[k];
            let slot = (1 - m_i) as usize;
            c.pair[slot][branch] - c.zero[slot]
        }));
    }
    Ok(out)
}

/// Gap between the two m_s = ±1 levels of nuclear projection `m_i` at axial
/// field `b` (T), Hz.
pub fn pair_gap(p: &NvParameters, e_strain: f64, m_i: i32, b: f64) -> Result<f64> {
    if !(-1..=1).contains(&m_i) {
        return Err(invalid("m_i", "must be -1, 0 or 1"));
    }
    let c = classify(&build_ground_hamiltonian(&p.with_strain(e_strain), &FieldVector::axial(b)))?;
    let [lo, hi] = c.pair[(1 - m_i) as usize];
    Ok(hi - lo)
}

/// Field (T) and size (Hz) of the smallest ±1 pair gap for `m_i` on
/// `[b_lo, b_hi]`, by golden-section search.
pub fn anticrossing(p: &NvParameters, e_strain: f64, m_i: i32, b_lo: f64, b_hi: f64) -> Result<(f64, f64)> {
    if !(b_lo < b_hi) {
        return Err(invalid("b_lo", "must be below b_hi"));
    }
    let g = |b: f64| pair_gap(p, e_strain, m_i, b);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (b_lo, b_hi);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (g(x1)?, g(x2)?);
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (b_hi - b_lo).abs().max(1e-12) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = g(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = g(x2)?;
        }
    }
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    for edge in [b_lo, b_hi] {
        let fe = g(edge)?;
        if fe < best.1 {
            best = (edge, fe);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn secular() -> NvParameters {
        NvParameters { a_perp: 0.0, ..Default::default() }
    }

    #[test]
    fn zero_field_pair_gaps() {
        let p = secular();
        let e = 2e6;
        let g0 = pair_gap(&p, e, 0, 0.0).unwrap();
        assert!((g0 - 4e6).abs() < 1e-6 * 4e6, "{g0}");
        let want = 2.0 * (2.16e6f64).hypot(e);
        for m in [1, -1] {
            let g = pair_gap(&p, e, m, 0.0).unwrap();
            assert!((g - want).abs() < 1e-6 * want, "{g}");
        }
    }

    #[test]
    fn transverse_hyperfine_shifts_are_small() {
        let full = pair_gap(&NvParameters::default(), 2e6, 1, 0.0).unwrap();
        let want = 2.0 * (2.16e6f64).hypot(2e6);
        assert!((full - want).abs() < 1e4, "{}", full - want);
    }

    #[test]
    fn field_tuned_anticrossing_is_two_e() {
        // the m_I = +1 pair crosses where g_s μ_B B = −A∥
        let p = secular();
        let (b, gap) = anticrossing(&p, 2e6, 1, 0.0, 1e-3).unwrap();
        let b_c = -p.a_par / p.electron_gyro();
        assert!((b - b_c).abs() < 1e-9, "{b} vs {b_c}");
        assert!((gap - 4e6).abs() < 1e-6 * 4e6);
        // the m_I = −1 pair is closest at zero field on B ≥ 0
        let (b, gap) = anticrossing(&p, 2e6, -1, 0.0, 1e-3).unwrap();
        assert!(b < 1e-12);
        assert!((gap - 2.0 * (2.16e6f64).hypot(2e6)).abs() < 1.0);
    }

    #[test]
    fn unstrained_levels_are_affine() {
        let p = secular();
        let fields: Vec<f64> = (0..11).map(|k| k as f64 * 1e-4).collect();
        let curves = eigenlevels_vs_field(&p, 0.0, &fields).unwrap();
        // transitions of m_I = 0: D ± g_s μ_B B
        let gyro = p.electron_gyro();
        for (k, &b) in fields.iter().enumerate() {
            let t = curves.transitions[k];
            let want_hi = p.d_gs + gyro * b;
            let want_lo = p.d_gs - gyro * b;
            assert!((t[3] - want_hi).abs() < 1e-9 * want_hi, "{} vs {}", t[3], want_hi);
            assert!((t[2] - want_lo).abs() < 1e-9 * want_lo);
        }
    }

    #[test]
    fn shapes() {
        let c = eigenlevels_vs_field(&NvParameters::default(), 2e6, &[0.0, 5e-4]).unwrap();
        assert_eq!(c.energies.len(), 2);
        assert_eq!(c.transitions.len(), 2);
        for e in &c.energies {
            assert!(e.windows(2).all(|w| w[0] <= w[1]));
        }
        for t in &c.transitions {
            assert!(t.iter().all(|f| (f - 2.87e9).abs() < 50e6));
        }
        assert!(pair_gap(&NvParameters::default(), 0.0, 2, 0.0).is_err());
    }
}
