use nv_odmr::algebra::unitary_propagator;
use nv_odmr::analytic::{bessel_j, bessel_j_series, quasi_energy_gap, TwoLevelParams};
use nv_odmr::model::{build_level_model_in_field, DriveConfig, FieldVector, NvParameters};
use nv_odmr::{build_ground_hamiltonian, expm, kron, lindblad_rhs, spin1_operators, ComplexMatrix};
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
        .prop_map(move |v| ComplexMatrix::from_row_major(n, n, v.into_iter().map(|(a, b)| C64::new(a, b)).collect()).unwrap())
}

fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(n).prop_map(|m| (&m + &m.adjoint()).scale_real(0.5))
}

/// Random density matrix `G G† / Tr`.
fn state(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix(n).prop_map(|g| {
        let r = &g * &g.adjoint();
        let tr = r.trace().re;
        r.scale_real(1.0 / tr)
    })
}

fn params() -> impl Strategy<Value = (NvParameters, FieldVector)> {
    (0.0f64..10e6, -3e6f64..3e6, -1e-3f64..1e-3, -1e-3f64..1e-3, -1e-3f64..1e-3).prop_map(|(e, a, bx, by, bz)| {
        (NvParameters { a_par: a, ..NvParameters::default().with_strain(e) }, FieldVector::new(bx, by, bz))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn expm_inverse(a in matrix(5)) {
        let p = expm(&a, 1e-15).unwrap();
        let q = expm(&a.scale_real(-1.0), 1e-15).unwrap();
        prop_assert!((&p * &q).max_abs_diff(&ComplexMatrix::identity(5)) < 1e-11);
    }

    #[test]
    fn expm_respects_block_structure(a in matrix(3), b in matrix(2)) {
        let whole = expm(&a.direct_sum(&b), 1e-15).unwrap();
        let parts = expm(&a, 1e-15).unwrap().direct_sum(&expm(&b, 1e-15).unwrap());
        prop_assert!(whole.max_abs_diff(&parts) < 1e-12);
    }

    #[test]
    fn expm_of_kron_sum_factorises(a in matrix(3), b in matrix(2)) {
        let sum = &kron(&a, &ComplexMatrix::identity(2)) + &kron(&ComplexMatrix::identity(3), &b);
        let lhs = expm(&sum, 1e-15).unwrap();
        let rhs = kron(&expm(&a, 1e-15).unwrap(), &expm(&b, 1e-15).unwrap());
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-10 * rhs.max_abs().max(1.0));
    }

    #[test]
    fn propagator_is_unitary(h in hermitian(6), t in 0.0f64..5.0) {
        let u = unitary_propagator(&h, t).unwrap();
        prop_assert!((&u * &u.adjoint()).max_abs_diff(&ComplexMatrix::identity(6)) < 1e-12);
    }

    #[test]
    fn ground_hamiltonian_is_hermitian((p, b) in params()) {
        let h = build_ground_hamiltonian(&p, &b);
        prop_assert_eq!(h.rows(), 9);
        prop_assert!(h.hermiticity_error() <= 1e-9 * h.max_abs());
        let eig = h.eigvalsh().unwrap();
        prop_assert!(eig.iter().all(|x| x.is_finite()));
    }

    #[test]
    fn level_model_parts_are_hermitian((p, b) in params(), f_mw in 2.85e9f64..2.89e9) {
        let m = build_level_model_in_field(&p, &DriveConfig::default().at_mw(f_mw), &b);
        prop_assert!(m.h_drift.hermiticity_error() <= 1e-9 * m.h_drift.max_abs());
        prop_assert_eq!(m.h_rf_coupling.hermiticity_error(), 0.0);
    }

    #[test]
    fn lindblad_rhs_is_traceless_and_hermitian(rho in state(4), h in hermitian(4), l in matrix(4)) {
        let d = lindblad_rhs(&rho, &h, &[l]).unwrap();
        prop_assert!(d.trace().norm() < 1e-12);
        prop_assert!(d.hermiticity_error() < 1e-12);
    }

    #[test]
    fn bessel_routes_agree(n in 0i32..8, x in 0.0f64..6.0) {
        let a = bessel_j(n, x);
        let b = bessel_j_series(n, x);
        prop_assert!((a - b).abs() < 1e-11, "J_{}({}) {} vs {}", n, x, a, b);
    }

    #[test]
    fn bessel_addition_theorem(x in 0.0f64..10.0, y in 0.0f64..10.0) {
        // J₀(x + y) = Σ_k J_k(x) J_{−k}(y)
        let s: f64 = (-40..=40).map(|k| bessel_j(k, x) * bessel_j(-k, y)).sum();
        prop_assert!((s - bessel_j(0, x + y)).abs() < 1e-10);
    }

    #[test]
    fn static_two_level_gap(e in 0.5e6f64..5e6, a in -3e6f64..3e6) {
        // no drive: quasi-energies are ±Δ folded into one zone
        let p = TwoLevelParams { e_strain: e, a_par: a, omega_rf: 0.0, f_rf: 50e6 };
        let gap = quasi_energy_gap(&p, 200).unwrap();
        let expect = (2.0 * p.delta()).min(50e6 - 2.0 * p.delta());
        prop_assert!((gap - expect).abs() < 1e-6 * expect);
    }
}

#[test]
fn spin_one_algebra() {
    let s = spin1_operators();
    let i = C64::new(0.0, 1.0);
    assert!(s.sx.commutator(&s.sy).max_abs_diff(&s.sz.scale(i)) < 1e-15);
    assert!(s.sy.commutator(&s.sz).max_abs_diff(&s.sx.scale(i)) < 1e-15);
    assert!(s.sz.commutator(&s.sx).max_abs_diff(&s.sy.scale(i)) < 1e-15);
    assert!(s.casimir().max_abs_diff(&ComplexMatrix::identity(3).scale_real(2.0)) < 1e-15);
}
