//! Bessel functions of the first kind and integer order.

/// `J_n(x)` for integer `n` and real `x`.
///
/// Miller's downward recurrence normalised with `J₀ + 2ΣJ₂ₖ = 1`; stable for
/// every order, including `n ≫ |x|` where upward recurrence loses all digits.
pub fn bessel_j(n: i32, x: f64) -> f64 {
    let order = n.unsigned_abs() as usize;
    let mut sign = 1.0;
    // J_{−n} = (−1)ⁿ J_n and J_n(−x) = (−1)ⁿ J_n(x)
    if n < 0 && order % 2 == 1 {
        sign = -sign;
    }
    if x < 0.0 && order % 2 == 1 {
        sign = -sign;
    }
    sign * bessel_j_orders(order, x.abs())[order]
}

/// `J_0(x) … J_{n_max}(x)` for `x ≥ 0` from one downward recurrence.
pub fn bessel_j_orders(n_max: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; n_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if !x.is_finite() {
        return vec![f64::NAN; n_max + 1];
    }
    // Start well above both the order and the argument; must be even.
    let start = {
        let m = n_max.max(x as usize) + 20 + (40.0 * (n_max.max(x as usize) as f64 + 1.0)).sqrt() as usize;
        m + (m % 2)
    };
    let mut j_next = 0.0;
    let mut j_cur = 1e-300;
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let j_prev = 2.0 * k as f64 / x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        let idx = k - 1;
        if idx <= n_max {
            out[idx] = j_cur;
        }
        if idx % 2 == 0 && idx > 0 {
            norm += 2.0 * j_cur;
        }
        if j_cur.abs() > 1e250 {
            j_cur *= 1e-250;
            j_next *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    norm += j_cur;
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// Ascending power series `Σ (−1)ᵏ (x/2)^{2k+n} / (k!(k+n)!)`.
///
/// Accurate for moderate `|x|` (cancellation grows like `e^{|x|}`); used as an
/// independent cross-check of [`bessel_j`].
pub fn bessel_j_series(n: i32, x: f64) -> f64 {
    let order = n.unsigned_abs();
    let half = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=order {
        term *= half / k as f64;
    }
    let mut sum = term;
    let q = half * half;
    let mut k = 1u32;
    while k < 500 {
        term *= -q / (k as f64 * (k + order) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) {
            break;
        }
        k += 1;
    }
    if n < 0 && order % 2 == 1 {
        -sum
    } else {
        sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // scipy.special.jv
    const REFERENCE: [(i32, f64, f64); 10] = [
        (0, 1.0, 0.7651976865579666),
        (1, 1.0, 0.44005058574493355),
        (0, 0.3, 0.9776262465382961),
        (1, 0.3, 0.148318816273104),
        (2, 5.0, 0.04656511627775229),
        (1, 10.0, 0.0434727461688616),
        (5, 10.0, -0.2340615281867936),
        (3, 2.0, 0.12894324947440208),
        (0, 25.0, 0.09626678327595811),
        (20, 3.0, 1.2275946737992997e-15),
    ];

    #[test]
    fn matches_reference_values() {
        for (n, x, want) in REFERENCE {
            let got = bessel_j(n, x);
            assert!((got - want).abs() <= 1e-13 + 1e-12 * want.abs(), "J_{n}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn tiny_high_order() {
        let got = bessel_j(7, 0.01);
        assert!((got / 1.5500943622959135e-20 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn series_agrees_with_recurrence() {
        for n in -6..=6 {
            for x in [0.0, 0.05, 0.3, 1.0, 2.7, 6.0, 9.5] {
                let a = bessel_j(n, x);
                let b = bessel_j_series(n, x);
                assert!((a - b).abs() < 1e-12, "n={n} x={x}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn symmetry_relations() {
        for n in 0..5 {
            let x = 1.7;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(bessel_j(-n, x), sign * bessel_j(n, x));
            assert_eq!(bessel_j(n, -x), sign * bessel_j(n, x));
        }
    }

    #[test]
    fn sum_of_squares_is_one() {
        for x in [0.0, 0.3, 0.5, 1.0, 2.4, 5.0, 8.0] {
            let s: f64 = (-20..=20).map(|n| bessel_j(n, x).powi(2)).sum();
            assert!((s - 1.0).abs() < 1e-10, "x={x}: {s}");
        }
    }

    #[test]
    fn zero_argument() {
        assert_eq!(bessel_j(0, 0.0), 1.0);
        assert_eq!(bessel_j(3, 0.0), 0.0);
        assert_eq!(bessel_j(-2, 0.0), 0.0);
    }
}
