use std::f64::consts::FRAC_PI_4;
use std::ops::Range;

use num_complex::Complex64 as C64;

use super::hamiltonian::{rotating_frame_block, TripletConstants};
use super::{DriveConfig, FieldVector, NvParameters};
use crate::algebra::{hyperfine_index, hyperfine_labels, ComplexMatrix};
use crate::TWO_PI;

/// Total number of levels: 9 ground + 9 excited hyperfine levels + singlet.
pub const DIM: usize = 19;
pub const GROUND: Range<usize> = 0..9;
pub const EXCITED: Range<usize> = 9..18;
pub const SINGLET: usize = 18;

/// Dissipative channel behind one collapse operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Channel {
    /// Spin-conserving optical decay from excited hyperfine level `level`.
    Radiative { level: usize },
    /// Intersystem crossing from an excited level into the singlet.
    Isc { level: usize },
    /// Singlet decay into ground hyperfine level `level`.
    SingletDecay { level: usize },
}

/// The 19-level system in the microwave rotating frame.
///
/// `H(t) = h_drift + cos(2π f_rf t)·h_rf_coupling`, both in rad/s.
#[derive(Debug, Clone)]
pub struct LevelModel {
    pub h_drift: ComplexMatrix,
    pub h_rf_coupling: ComplexMatrix,
    pub collapse_ops: Vec<ComplexMatrix>,
    pub channels: Vec<Channel>,
    pub fluorescence_projector: ComplexMatrix,
}

/// Zero-field model.
pub fn build_level_model(p: &NvParameters, d: &DriveConfig) -> LevelModel {
    build_level_model_in_field(p, d, &FieldVector::ZERO)
}

/// Assembles the 19-level model with static field `b` given in the NV frame.
///
/// * Ground block: the spin Hamiltonian reduced to the frame rotating at
///   `f_mw` on m_s = ±1, plus the MW drive under the rotating-wave
///   approximation. The MW field is linearly polarised at 45° to the strain
///   axis, so both strain eigenstates are driven with equal strength.
/// * Excited block: the same spin structure with `d_es`; its m_s = ±1
///   manifold is taken in the frame `f_mw + d_es − d_gs`, which makes the
///   laser resonant on every spin-conserving ground/excited pair.
/// * Singlet: a single level without coherent couplings.
pub fn build_level_model_in_field(p: &NvParameters, d: &DriveConfig, b: &FieldVector) -> LevelModel {
    let ground_consts = TripletConstants::ground(p);
    let excited_consts = TripletConstants::excited(p);

    let ground = rotating_frame_block(&ground_consts.hamiltonian(b), p.d_gs, d.f_mw);
    let excited = rotating_frame_block(&excited_consts.hamiltonian(b), p.d_es, d.f_mw + p.d_es - p.d_gs);

    let mut h = ComplexMatrix::zeros(DIM, DIM);
    h.set_block(GROUND.start, GROUND.start, &ground);
    h.set_block(EXCITED.start, EXCITED.start, &excited);

    // MW: <±1,m|H|0,m> = 2π·(Ω/2)·e^{∓iπ/4}
    let mw = TWO_PI * d.omega_mw / 2.0;
    if mw != 0.0 {
        for m_i in [1, 0, -1] {
            let zero = hyperfine_index(0, m_i);
            for (m_s, phase) in [(1, -FRAC_PI_4), (-1, FRAC_PI_4)] {
                let k = hyperfine_index(m_s, m_i);
                let c = C64::from_polar(mw, phase);
                h[(k, zero)] += c;
                h[(zero, k)] += c.conj();
            }
        }
    }

    let opt = TWO_PI * d.omega_opt / 2.0;
    if opt != 0.0 {
        for k in 0..9 {
            h[(EXCITED.start + k, k)] += C64::new(opt, 0.0);
            h[(k, EXCITED.start + k)] += C64::new(opt, 0.0);
        }
    }

    let mut h_rf = ComplexMatrix::zeros(DIM, DIM);
    for k in 0..9 {
        let m_s = hyperfine_labels(k).0 as f64;
        let v = C64::new(TWO_PI * d.omega_rf * m_s, 0.0);
        h_rf[(k, k)] = v;
        h_rf[(EXCITED.start + k, EXCITED.start + k)] = v;
    }

    let (collapse_ops, channels) = collapse_operators(p);

    let mut proj = ComplexMatrix::zeros(DIM, DIM);
    for k in EXCITED {
        proj[(k, k)] = C64::new(1.0, 0.0);
    }

    LevelModel { h_drift: h, h_rf_coupling: h_rf, collapse_ops, channels, fluorescence_projector: proj }
}

fn jump(to: usize, from: usize, rate: f64) -> ComplexMatrix {
    let mut l = ComplexMatrix::zeros(DIM, DIM);
    l[(to, from)] = C64::new(rate.sqrt(), 0.0);
    l
}

fn collapse_operators(p: &NvParameters) -> (Vec<ComplexMatrix>, Vec<Channel>) {
    let mut ops = Vec::new();
    let mut channels = Vec::new();

    for k in 0..9 {
        if p.gamma_rad > 0.0 {
            ops.push(jump(k, EXCITED.start + k, p.gamma_rad));
            channels.push(Channel::Radiative { level: k });
        }
    }
    for k in 0..9 {
        let rate = if hyperfine_labels(k).0 == 0 { p.gamma_isc_0 } else { p.gamma_isc_pm1 };
        if rate > 0.0 {
            ops.push(jump(SINGLET, EXCITED.start + k, rate));
            channels.push(Channel::Isc { level: k });
        }
    }
    // Singlet exit: branching b into m_s = 0, (1 − b)/2 into each of m_s = ±1,
    // spread equally over the three nuclear projections.
    for k in 0..9 {
        let b = p.singlet_branching_to_0;
        let share = if hyperfine_labels(k).0 == 0 { b } else { (1.0 - b) / 2.0 };
        let rate = p.gamma_singlet * share / 3.0;
        if rate > 0.0 {
            ops.push(jump(k, SINGLET, rate));
            channels.push(Channel::SingletDecay { level: k });
        }
    }
    (ops, channels)
}

/// Ground-state pure dephasing `√(2γ)·(Sz ⊗ 1)` on the ground block, `γ` in 1/s.
pub fn dephasing_operator(rate: f64) -> ComplexMatrix {
    let mut l = ComplexMatrix::zeros(DIM, DIM);
    let amp = (2.0 * rate).sqrt();
    for k in GROUND {
        l[(k, k)] = C64::new(amp * hyperfine_labels(k).0 as f64, 0.0);
    }
    l
}

impl LevelModel {
    pub fn dim(&self) -> usize {
        self.h_drift.rows()
    }

    /// `H(t)` in rad/s.
    pub fn hamiltonian_at(&self, t: f64, f_rf: f64) -> ComplexMatrix {
        let c = (TWO_PI * f_rf * t).cos();
        &self.h_drift + &self.h_rf_coupling.scale_real(c)
    }

    /// `Σ L†L`.
    pub fn decay_generator(&self) -> ComplexMatrix {
        let mut k = ComplexMatrix::zeros(self.dim(), self.dim());
        for l in &self.collapse_ops {
            k += &(&l.adjoint() * l);
        }
        k
    }
}
