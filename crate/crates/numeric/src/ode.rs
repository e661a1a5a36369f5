//! Adaptive 8th-order explicit ODE stepping: Gragg's modified midpoint rule
//! with Neville extrapolation in h^2 over the substep sequence {2, 4, 6, 8}.
//! The extrapolated column is order 8; the step controller uses the
//! difference of the last two diagonal entries as the error estimate.

const SEQ: [usize; 4] = [2, 4, 6, 8];

/// One modified-midpoint transit of length `big_h` with `n` substeps.
fn midpoint<const N: usize, F>(rhs: &F, t: f64, y: &[f64; N], big_h: f64, n: usize) -> [f64; N]
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let h = big_h / n as f64;
    let mut zm = *y;
    let f0 = rhs(t, y);
    let mut zk = std::array::from_fn(|i| y[i] + h * f0[i]);
    for m in 1..n {
        let fk = rhs(t + m as f64 * h, &zk);
        let znext = std::array::from_fn(|i| zm[i] + 2.0 * h * fk[i]);
        zm = zk;
        zk = znext;
    }
    let fn_ = rhs(t + big_h, &zk);
    std::array::from_fn(|i| 0.5 * (zk[i] + zm[i] + h * fn_[i]))
}

/// Result of one attempted macro step.
pub struct StepResult<const N: usize> {
    pub y: [f64; N],
    /// Estimated local error (scaled max-norm).
    pub error: f64,
}

/// Attempt a single extrapolated step of size `big_h`.
pub fn gbs_step<const N: usize, F>(
    rhs: &F,
    t: f64,
    y: &[f64; N],
    big_h: f64,
    scale: &[f64; N],
) -> StepResult<N>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    // row[k] = T_{j,k} after processing sequence entry j
    let mut row: Vec<[f64; N]> = Vec::with_capacity(SEQ.len());
    for (j, &nsub) in SEQ.iter().enumerate() {
        let mut cur = midpoint(rhs, t, y, big_h, nsub); // T_{j,0}
        let mut new_row: Vec<[f64; N]> = Vec::with_capacity(j + 1);
        new_row.push(cur);
        for k in 1..=j {
            // T_{j,k} from T_{j,k-1} and T_{j-1,k-1}, h^2 expansion
            let denom = (SEQ[j] as f64 / SEQ[j - k] as f64).powi(2) - 1.0;
            let prev = row[k - 1];
            cur = std::array::from_fn(|i| cur[i] + (cur[i] - prev[i]) / denom);
            new_row.push(cur);
        }
        row = new_row;
    }
    let best = row[row.len() - 1]; // order 8
    let second = row[row.len() - 2]; // order 6
    let mut err: f64 = 0.0;
    for i in 0..N {
        err = err.max(((best[i] - second[i]) / scale[i]).abs());
    }
    StepResult { y: best, error: err }
}

/// Integrate from `t0` to `t1`, invoking `on_step(t, y)` after each accepted
/// step (including the final time). `dt_max` caps the step size, `tol` is a
/// relative local-error target. Returns the final state, or `Err` on step
/// underflow.
#[allow(clippy::too_many_arguments)]
pub fn integrate<const N: usize, F, Obs>(
    rhs: &F,
    t0: f64,
    y0: [f64; N],
    t1: f64,
    dt_max: f64,
    tol: f64,
    on_step: &mut Obs,
) -> Result<[f64; N], StepUnderflow>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
    Obs: FnMut(f64, &[f64; N]) -> bool,
{
    assert!(t1 >= t0 && dt_max > 0.0);
    let total = t1 - t0;
    let dt_min = 1e-14 * total.max(1.0);
    let mut t = t0;
    let mut y = y0;
    let mut dt = dt_max.min(total);
    while t < t1 {
        dt = dt.min(t1 - t);
        let scale: [f64; N] = std::array::from_fn(|i| 1.0_f64.max(y[i].abs()));
        let attempt = gbs_step(rhs, t, &y, dt, &scale);
        if attempt.error <= tol || dt <= dt_min * 2.0 {
            t += dt;
            y = attempt.y;
            if !on_step(t, &y) {
                return Ok(y);
            }
            // grow cautiously (error estimate tracks the order-6 column)
            let factor = if attempt.error > 0.0 {
                0.9 * (tol / attempt.error).powf(1.0 / 7.0)
            } else {
                4.0
            };
            dt = (dt * factor.clamp(0.2, 4.0)).min(dt_max);
        } else {
            let factor = 0.9 * (tol / attempt.error).powf(1.0 / 7.0);
            dt *= factor.clamp(0.1, 0.7);
            if dt < dt_min {
                return Err(StepUnderflow { t });
            }
        }
    }
    Ok(y)
}

/// Step size fell below the representable minimum (stiff or singular spot).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepUnderflow {
    pub t: f64,
}

impl std::fmt::Display for StepUnderflow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "step size underflow at t = {}", self.t)
    }
}
impl std::error::Error for StepUnderflow {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eighth_order_convergence_on_rotation() {
        // y'' = -y as a 2-system; exact solution rotates.
        let rhs = |_t: f64, y: &[f64; 2]| [y[1], -y[0]];
        let y0 = [1.0, 0.0];
        let scale = [1.0, 1.0];
        let t_end = 0.8;
        let err_of = |nsteps: usize| {
            let h = t_end / nsteps as f64;
            let mut y = y0;
            let mut t = 0.0;
            for _ in 0..nsteps {
                y = gbs_step(&rhs, t, &y, h, &scale).y;
                t += h;
            }
            ((y[0] - t_end.cos()).powi(2) + (y[1] + t_end.sin()).powi(2)).sqrt()
        };
        let e1 = err_of(4);
        let e2 = err_of(8);
        let order = (e1 / e2).log2();
        assert!(order > 7.0, "observed order {order} (e1={e1:.3e}, e2={e2:.3e})");
    }

    #[test]
    fn adaptive_hits_tight_tolerance() {
        let rhs = |_t: f64, y: &[f64; 2]| [y[1], -y[0]];
        let mut noop = |_t: f64, _y: &[f64; 2]| true;
        let y = integrate(&rhs, 0.0, [1.0, 0.0], 10.0, 0.5, 1e-12, &mut noop).unwrap();
        assert!((y[0] - 10.0f64.cos()).abs() < 1e-9);
        assert!((y[1] + 10.0f64.sin()).abs() < 1e-9);
    }

    #[test]
    fn observer_can_stop_early() {
        let rhs = |_t: f64, y: &[f64; 1]| [y[0]];
        let mut last_t = 0.0;
        let mut obs = |t: f64, _y: &[f64; 1]| {
            last_t = t;
            t < 1.0
        };
        let _ = integrate(&rhs, 0.0, [1.0], 5.0, 0.1, 1e-10, &mut obs).unwrap();
        assert!(last_t < 1.2);
    }
}
