//! Ordinary least squares for y = intercept + slope * x.

/// Result of a 1-D least-squares fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope (0 when n <= 2 or the fit is exact).
    pub slope_stderr: f64,
    /// Root-mean-square of the residuals.
    pub rms_residual: f64,
    pub n: usize,
}

/// Fit `y = a + b x`. Panics if fewer than two points or degenerate x.
pub fn linear_fit(x: &[f64], y: &[f64]) -> LinearFit {
    assert_eq!(x.len(), y.len(), "x/y length mismatch");
    let n = x.len();
    assert!(n >= 2, "need at least two points for a line");
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..n {
        let dx = x[i] - mx;
        sxx += dx * dx;
        sxy += dx * (y[i] - my);
    }
    assert!(sxx > 0.0, "all x identical");
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ssr = 0.0;
    for i in 0..n {
        let r = y[i] - intercept - slope * x[i];
        ssr += r * r;
    }
    let rms = (ssr / nf).sqrt();
    let stderr = if n > 2 {
        (ssr / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    LinearFit {
        slope,
        intercept,
        slope_stderr: stderr,
        rms_residual: rms,
        n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line_recovered() {
        let x: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|&v| 3.0 - 2.5 * v).collect();
        let f = linear_fit(&x, &y);
        assert!((f.slope + 2.5).abs() < 1e-12);
        assert!((f.intercept - 3.0).abs() < 1e-12);
        assert!(f.rms_residual < 1e-12);
        assert!(f.slope_stderr < 1e-12);
    }

    #[test]
    fn stderr_scales_with_noise() {
        // deterministic pseudo-noise
        let x: Vec<f64> = (0..50).map(|i| i as f64 / 10.0).collect();
        let y: Vec<f64> = x
            .iter()
            .enumerate()
            .map(|(i, &v)| 2.0 * v + if i % 2 == 0 { 0.1 } else { -0.1 })
            .collect();
        let f = linear_fit(&x, &y);
        assert!((f.slope - 2.0).abs() < 0.02);
        assert!(f.slope_stderr > 0.0 && f.slope_stderr < 0.02);
        assert!((f.rms_residual - 0.1).abs() < 1e-3);
    }
}
