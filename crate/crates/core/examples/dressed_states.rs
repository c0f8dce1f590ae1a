//! Reduced two-level picture of one hyperfine pair: Landau-Zener resonance,
//! dressed coupling and the exact Floquet quasi-energy gap.

use nv_odmr::analytic::{dressed_model, lzt_resonance, predicted_splitting, quasi_energy_gap, TwoLevelParams, FLOQUET_SEGMENTS};

fn main() -> nv_odmr::Result<()> {
    let base = TwoLevelParams::default();
    let f_rf = lzt_resonance(&base);
    println!(
        "Delta {:.3} MHz, theta {:.3} rad, resonance f_rf = 2 Delta = {:.3} MHz",
        base.delta() / 1e6,
        base.theta(),
        f_rf / 1e6
    );
    println!("{:>10} {:>12} {:>14} {:>12}", "Omega MHz", "Omega~0 MHz", "2|Omega~0| MHz", "Floquet MHz");
    for k in 1..=8 {
        let p = TwoLevelParams { omega_rf: 0.25e6 * k as f64, f_rf, ..base };
        let d = dressed_model(&p, 0)?;
        println!(
            "{:10.2} {:12.4} {:14.4} {:12.4}",
            p.omega_rf / 1e6,
            d.coupling(0).unwrap_or(0.0) / 1e6,
            predicted_splitting(&p)? / 1e6,
            quasi_energy_gap(&p, FLOQUET_SEGMENTS)? / 1e6
        );
    }
    Ok(())
}
