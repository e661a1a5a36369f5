//! Small scalar helpers used by the geometry and kernel code.

/// Quintic smoothstep w(x) = 6x^5 - 15x^4 + 10x^3 clamped to [0,1],
/// with first and second derivatives. w matches (0,0,0) at x=0 and (1,0,0)
/// at x=1, so blending two C^2 functions with it is C^2.
pub fn smoothstep5(x: f64) -> (f64, f64, f64) {
    if x <= 0.0 {
        return (0.0, 0.0, 0.0);
    }
    if x >= 1.0 {
        return (1.0, 0.0, 0.0);
    }
    let x2 = x * x;
    let x3 = x2 * x;
    let w = x3 * (10.0 + x * (-15.0 + 6.0 * x));
    let dw = 30.0 * x2 * (1.0 - x) * (1.0 - x);
    let d2w = 60.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
    (w, dw, d2w)
}

/// x / sinh(x), stable through x = 0.
pub fn x_over_sinh(x: f64) -> f64 {
    let ax = x.abs();
    if ax < 1e-4 {
        // sinh x = x (1 + x^2/6 + x^4/120)
        let x2 = x * x;
        1.0 / (1.0 + x2 / 6.0 + x2 * x2 / 120.0)
    } else {
        x / x.sinh()
    }
}

/// acosh(1 + u) for u >= 0, accurate for small u where the naive form
/// loses all digits.
pub fn acosh1p(u: f64) -> f64 {
    debug_assert!(u >= 0.0);
    if u < 1e-8 {
        // acosh(1+u) = sqrt(2u) (1 - u/12 + 3u^2/160)
        let s = (2.0 * u).sqrt();
        s * (1.0 - u / 12.0 + 3.0 * u * u / 160.0)
    } else {
        // ln(1 + u + sqrt(u (u + 2))) via ln_1p
        (u + (u * (u + 2.0)).sqrt()).ln_1p()
    }
}

/// n logarithmically spaced points from a to b inclusive (a, b > 0).
pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(a > 0.0 && b > 0.0 && n >= 2);
    let la = a.ln();
    let lb = b.ln();
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Quintic Hermite interpolant on [0,1] matching value, first and second
/// derivative at both ends (derivatives with respect to the unit variable).
/// Returns (p, p', p'') at x.
pub fn hermite5(
    x: f64,
    (f0, d0, s0): (f64, f64, f64),
    (f1, d1, s1): (f64, f64, f64),
) -> (f64, f64, f64) {
    // Basis polynomials h_{jk}: value/1st/2nd derivative cardinality at ends.
    let x2 = x * x;
    let x3 = x2 * x;
    let x4 = x3 * x;
    let x5 = x4 * x;

    let h00 = 1.0 - 10.0 * x3 + 15.0 * x4 - 6.0 * x5;
    let h10 = x - 6.0 * x3 + 8.0 * x4 - 3.0 * x5;
    let h20 = 0.5 * x2 - 1.5 * x3 + 1.5 * x4 - 0.5 * x5;
    let h01 = 10.0 * x3 - 15.0 * x4 + 6.0 * x5;
    let h11 = -4.0 * x3 + 7.0 * x4 - 3.0 * x5;
    let h21 = 0.5 * x3 - x4 + 0.5 * x5;

    let dh00 = -30.0 * x2 + 60.0 * x3 - 30.0 * x4;
    let dh10 = 1.0 - 18.0 * x2 + 32.0 * x3 - 15.0 * x4;
    let dh20 = x - 4.5 * x2 + 6.0 * x3 - 2.5 * x4;
    let dh01 = 30.0 * x2 - 60.0 * x3 + 30.0 * x4;
    let dh11 = -12.0 * x2 + 28.0 * x3 - 15.0 * x4;
    let dh21 = 1.5 * x2 - 4.0 * x3 + 2.5 * x4;

    let d2h00 = -60.0 * x + 180.0 * x2 - 120.0 * x3;
    let d2h10 = -36.0 * x + 96.0 * x2 - 60.0 * x3;
    let d2h20 = 1.0 - 9.0 * x + 18.0 * x2 - 10.0 * x3;
    let d2h01 = 60.0 * x - 180.0 * x2 + 120.0 * x3;
    let d2h11 = -24.0 * x + 84.0 * x2 - 60.0 * x3;
    let d2h21 = 3.0 * x - 12.0 * x2 + 10.0 * x3;

    let p = f0 * h00 + d0 * h10 + s0 * h20 + f1 * h01 + d1 * h11 + s1 * h21;
    let dp = f0 * dh00 + d0 * dh10 + s0 * dh20 + f1 * dh01 + d1 * dh11 + s1 * dh21;
    let d2p = f0 * d2h00 + d0 * d2h10 + s0 * d2h20 + f1 * d2h01 + d1 * d2h11 + s1 * d2h21;
    (p, dp, d2p)
}
