use crate::error::{HypError, Result};
use crate::group::{enumerate_orbit, GroupKind, GroupSpec, OrbitElement};
use crate::point::{hyp_distance, HPoint};
use trapwave_numeric::linear_fit;

/// Partial orbit sum value and a bound on the omitted mass.
#[derive(Debug, Clone, Copy)]
pub struct PartialSum {
    pub value: f64,
    pub tail_bound: f64,
}

/// Truncated sum of exp(-s rho(z, gamma z')) over the identity and all orbit
/// elements with basepoint displacement r_gamma <= radius.
///
/// The tail bound extrapolates the empirical shell masses geometrically at
/// the fitted orbit growth rate; it is infinite when s does not exceed that
/// rate.
pub fn poincare_partial_sum(
    group: &GroupSpec,
    s: f64,
    z: &HPoint,
    zp: &HPoint,
    radius: f64,
) -> Result<PartialSum> {
    if !(s >= 0.0) {
        return Err(HypError::InvalidGroup(format!("exponent s = {s} must be >= 0")));
    }
    let orbit = enumerate_orbit(group, radius)?;
    let identity_term = (-s * hyp_distance(z, zp)?).exp();
    let mut value = identity_term;
    let weights: Vec<(f64, f64)> = orbit
        .iter()
        .map(|el| {
            let img = el.element.apply(zp)?;
            let rho = hyp_distance(z, &img)?;
            Ok((el.displacement, (-s * rho).exp()))
        })
        .collect::<Result<_>>()?;
    for &(_, w) in &weights {
        value += w;
    }
    let growth = growth_rate(group, &orbit);
    let tail_bound = shell_tail(&weights, radius, group.min_displacement(), growth, s);
    Ok(PartialSum { value, tail_bound })
}

/// Empirical exponential growth rate of the orbit-count function (0 for
/// cyclic groups, where the count grows linearly).
fn growth_rate(group: &GroupSpec, orbit: &[OrbitElement]) -> f64 {
    if group.kind() == GroupKind::Cyclic || orbit.len() < 8 {
        return 0.0;
    }
    let (x, y): (Vec<f64>, Vec<f64>) = orbit
        .iter()
        .enumerate()
        .map(|(j, el)| (el.displacement, ((j + 1) as f64).ln()))
        .unzip();
    let half = x.last().unwrap() / 2.0;
    let idx: Vec<usize> = (0..x.len()).filter(|&i| x[i] >= half).collect();
    if idx.len() < 3 {
        return 0.0;
    }
    let xs: Vec<f64> = idx.iter().map(|&i| x[i]).collect();
    let ys: Vec<f64> = idx.iter().map(|&i| y[i]).collect();
    if xs.last().unwrap() - xs[0] < 1e-9 {
        return 0.0;
    }
    linear_fit(&xs, &ys).slope.max(0.0)
}

/// Geometric extrapolation of the omitted mass from the last populated
/// shells of width `w`. Shell k covers displacements [k w, (k+1) w).
fn shell_tail(weights: &[(f64, f64)], radius: f64, w: f64, growth: f64, s: f64) -> f64 {
    if s <= growth {
        return f64::INFINITY;
    }
    if weights.is_empty() || !(w > 0.0) {
        return 0.0;
    }
    let n_shells = (radius / w).ceil() as usize + 1;
    let mut mass = vec![0.0f64; n_shells];
    for &(r, wt) in weights {
        let k = ((r / w).floor() as usize).min(n_shells - 1);
        mass[k] += wt;
    }
    let q = ((growth - s) * w).exp();
    let last = mass.iter().rposition(|&m| m > 0.0).unwrap_or(0);
    let prev = mass[..last].iter().rposition(|&m| m > 0.0);
    let mut m_star = mass[last];
    if let Some(p) = prev {
        // guard against an anomalously thin final shell
        m_star = m_star.max(mass[p] * q.powi((last - p) as i32));
    }
    2.0 * m_star * q / (1.0 - q)
}

/// Slope-based estimate of the orbit growth exponent with its standard
/// error. Cyclic groups return (0, 0) exactly.
pub fn estimate_delta(group: &GroupSpec, r_max: f64) -> Result<(f64, f64)> {
    if group.kind() == GroupKind::Cyclic {
        return Ok((0.0, 0.0));
    }
    let orbit = enumerate_orbit(group, r_max)?;
    const REQUIRED: usize = 50;
    if orbit.len() < REQUIRED {
        return Err(HypError::DataInsufficiency {
            required: REQUIRED,
            found: orbit.len(),
        });
    }
    // fit log N(r) against r over the upper half of the radius range
    let (x, y): (Vec<f64>, Vec<f64>) = orbit
        .iter()
        .enumerate()
        .map(|(j, el)| (el.displacement, ((j + 1) as f64).ln()))
        .unzip();
    let half = x.last().unwrap() / 2.0;
    let idx: Vec<usize> = (0..x.len()).filter(|&i| x[i] >= half).collect();
    if idx.len() < 8 {
        return Err(HypError::DataInsufficiency {
            required: 8,
            found: idx.len(),
        });
    }
    let xs: Vec<f64> = idx.iter().map(|&i| x[i]).collect();
    let ys: Vec<f64> = idx.iter().map(|&i| y[i]).collect();
    let fit = linear_fit(&xs, &ys);
    Ok((fit.slope, fit.slope_stderr))
}
