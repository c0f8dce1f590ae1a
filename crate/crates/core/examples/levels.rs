//! Ground-state hyperfine levels of a strained NV centre in a weak axial
//! field, with the anti-crossing gaps of each nuclear-spin branch.

use nv_odmr::analytic::{anticrossing, eigenlevels_vs_field, TRANSITION_LABELS};
use nv_odmr::NvParameters;

fn main() -> nv_odmr::Result<()> {
    let p = NvParameters::default();
    let e = 2e6;
    let fields: Vec<f64> = (0..=10).map(|k| k as f64 * 0.1e-3).collect();
    let curves = eigenlevels_vs_field(&p, e, &fields)?;

    print!("{:>8}", "B (mT)");
    for (m_i, branch) in TRANSITION_LABELS {
        print!("  mI{:+} {}", m_i, if branch == 0 { "lo" } else { "hi" });
    }
    println!("   (MHz from D)");
    for (b, t) in fields.iter().zip(&curves.transitions) {
        print!("{:8.2}", b * 1e3);
        for f in t {
            print!("{:10.3}", (f - p.d_gs) / 1e6);
        }
        println!();
    }

    for m_i in [1, 0, -1] {
        let (b, gap) = anticrossing(&p, e, m_i, -1e-3, 1e-3)?;
        println!("m_I = {m_i:+}: smallest gap {:.3} MHz at {:+.4} mT", gap / 1e6, b * 1e3);
    }
    Ok(())
}
