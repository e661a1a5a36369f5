use crate::error::{PropError, Result};
use crate::oscillatory;
use num_complex::Complex64;
use std::f64::consts::PI;
use trapwave_numeric::special::x_over_sinh;

/// One evaluation of a free-space kernel at (t, rho).
#[derive(Debug, Clone, Copy)]
pub struct KernelSample {
    pub t: f64,
    pub rho: f64,
    pub value: Complex64,
    /// Estimated quadrature error (0 for closed forms).
    pub quad_error: f64,
}

/// (4 pi i t)^(-3/2) on the principal branch.
fn prefactor_3_2(t: f64) -> Complex64 {
    let modulus = (4.0 * PI * t.abs()).powf(-1.5);
    let phase = -0.75 * PI * t.signum();
    Complex64::from_polar(modulus, phase)
}

/// Kernel on the 3-dimensional space (boundary dimension n = 2), in closed
/// form:
///   K(t, rho) = (4 pi i t)^(-3/2) (rho / sinh rho) exp(i (rho^2 / 4t - t)).
/// Normalized so the rho -> 0, t -> 0 modulus matches the flat 3-d free
/// propagator (4 pi |t|)^(-3/2); then i dK/dt = -(d^2/drho^2 + 2 coth rho
/// d/drho) K, which the tests verify by finite differences.
pub fn kernel_h3(t: f64, rho: f64) -> Result<KernelSample> {
    if t == 0.0 {
        return Err(PropError::ZeroTime);
    }
    if !(rho >= 0.0) {
        return Err(PropError::UnsupportedRegime(format!("negative rho {rho}")));
    }
    let amp = x_over_sinh(rho);
    let phase = Complex64::new(0.0, rho * rho / (4.0 * t) - t).exp();
    let value = prefactor_3_2(t) * amp * phase;
    Ok(KernelSample {
        t,
        rho,
        value,
        quad_error: 0.0,
    })
}

/// Kernel on the 2-dimensional space (n = 1):
///   K(t, rho) = sqrt(2) (4 pi i t)^(-3/2) e^{-it/4}
///               int_rho^inf e^{i s^2/4t} s / sqrt(cosh s - cosh rho) ds,
/// normalized so the rho -> 0, small-t modulus matches the flat 2-d free
/// propagator (4 pi |t|)^(-1). The integral is evaluated by the scheme in
/// `oscillatory`.
pub fn kernel_h2(t: f64, rho: f64) -> Result<KernelSample> {
    if t == 0.0 {
        return Err(PropError::ZeroTime);
    }
    if !(rho >= 0.0) {
        return Err(PropError::UnsupportedRegime(format!("negative rho {rho}")));
    }
    let pref = prefactor_3_2(t) * 2.0f64.sqrt() * Complex64::new(0.0, -t / 4.0).exp();
    let pref_abs = 2.0f64.sqrt() * (4.0 * PI * t.abs()).powf(-1.5);
    let target = 1e-8 / pref_abs;
    let integral = oscillatory::tail_integral(t, rho, target)?;
    let quad_error = integral.error * pref_abs;
    if quad_error >= 1e-8 {
        return Err(PropError::QuadratureFailure {
            achieved: quad_error,
        });
    }
    Ok(KernelSample {
        t,
        rho,
        value: pref * integral.value,
        quad_error,
    })
}

// Calibrated envelope constants (see tests::calibrate_envelopes for the
// measurement): the small-time H2 ratio |K| 4 pi |t| / sqrt(rho/sinh rho)
// stays below 1.10, the large-time ratio below 0.62 of the stated shape.
const ENV_H3: f64 = 1.000_001;
const ENV_H2_SMALL: f64 = 1.10;
const ENV_H2_LARGE: f64 = 0.62;

/// Modulus envelope for the kernels: time-decay prefactor times
/// (rho/sinh rho)^{n/2}, with the module's calibrated constants (the
/// large-time n = 1 branch carries the extra (1+rho)^{1/2} allowed by
/// rho/sinh rho <= (1+rho) e^{-rho}).
pub fn bound_envelope(t: f64, rho: f64, n: u8) -> f64 {
    let at = t.abs();
    match n {
        2 => ENV_H3 * (4.0 * PI * at).powf(-1.5) * x_over_sinh(rho),
        1 => {
            if at <= 1.0 {
                ENV_H2_SMALL / (4.0 * PI * at) * x_over_sinh(rho).sqrt()
            } else {
                ENV_H2_LARGE * at.powf(-1.5) * (x_over_sinh(rho) * (1.0 + rho)).sqrt()
            }
        }
        _ => panic!("boundary dimension must be 1 or 2"),
    }
}
