//! Multi-photon sideband couplings `E·J_n(Ω/f)` against drive strength.

use nv_odmr::analytic::{bessel_j, sideband_model, TwoLevelParams};

fn main() -> nv_odmr::Result<()> {
    let f_rf = 5e6;
    println!("{:>10} {:>8} {:>10} {:>10} {:>10}", "Omega MHz", "Omega/f", "n=1 MHz", "n=2 MHz", "n=3 MHz");
    for omega in [1e6, 2.5e6, 5e6, 10e6, 15e6] {
        let p = TwoLevelParams { omega_rf: omega, f_rf, ..Default::default() };
        let c: Vec<f64> = (1..=3).map(|n| sideband_model(&p, n).map(|(_, g)| g)).collect::<nv_odmr::Result<_>>()?;
        println!("{:10.1} {:8.2} {:10.4} {:10.4} {:10.4}", omega / 1e6, omega / f_rf, c[0] / 1e6, c[1] / 1e6, c[2] / 1e6);
    }
    // first zero of J_0: the carrier vanishes
    println!("J0(2.4048) = {:.2e}", bessel_j(0, 2.404825557695773));
    Ok(())
}
