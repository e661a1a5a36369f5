use crate::automorphic::AutomorphicEngine;
use crate::error::{PropError, Result};
use serde::Serialize;
use trapwave_hyperbolic::{GroupSpec, HPoint};
use trapwave_numeric::linear_fit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    SmallTime,
    LargeTime,
}

/// Fitted power law |K|_max ~ constant * t^exponent over one time regime.
#[derive(Debug, Clone, Serialize)]
pub struct DecayFit {
    pub regime: Regime,
    pub exponent: f64,
    pub constant: f64,
    pub residual: f64,
    pub n_points: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DispersiveRow {
    pub t: f64,
    pub max_abs: f64,
    pub tail_max: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DispersiveScan {
    pub rows: Vec<DispersiveRow>,
    pub small: DecayFit,
    pub large: DecayFit,
}

/// Twelve fixed evaluation pairs: on the axis of the standard dilation at
/// several heights, mid-range offsets, and far offsets.
pub fn default_sample_pairs(dim: u8) -> Vec<(HPoint, HPoint)> {
    let mk = |x: f64, h: f64| -> HPoint {
        if dim == 2 {
            HPoint::h2(x, h).expect("valid point")
        } else {
            HPoint::h3(x, 0.0, h).expect("valid point")
        }
    };
    let e5 = 0.5f64.exp();
    let e1 = 1.0f64.exp();
    vec![
        (mk(0.0, 1.0), mk(0.0, 1.0)),
        (mk(0.0, 1.0), mk(0.0, e5)),
        (mk(0.0, 1.0), mk(0.0, e1)),
        (mk(0.0, e5), mk(0.0, e5)),
        (mk(0.2, 1.0), mk(0.0, 1.0)),
        (mk(0.2, 1.0), mk(0.2, 1.0)),
        (mk(0.5, 1.0), mk(-0.5, 1.0)),
        (mk(1.0, 1.0), mk(0.0, e5)),
        (mk(1.0, 1.0), mk(1.0, 1.0)),
        (mk(2.5, 1.0), mk(0.0, 1.0)),
        (mk(2.5, 1.0), mk(2.5, 1.0)),
        (mk(1.0, e5), mk(-1.0, e5)),
    ]
}

/// Scan max-over-pairs kernel modulus over a time grid and fit log-log decay
/// exponents separately on t <= 1 and t > 1.
pub fn dispersive_scan(
    group: &GroupSpec,
    t_grid: &[f64],
    sample_pairs: &[(HPoint, HPoint)],
    radius: f64,
) -> Result<DispersiveScan> {
    if t_grid.iter().any(|&t| t <= 0.0) {
        return Err(PropError::UnsupportedRegime(
            "time grid must be positive".into(),
        ));
    }
    let engine = AutomorphicEngine::new(group, radius)?;
    let rows: Vec<DispersiveRow> = {
        let results = trapwave_par::map_slice(t_grid, |&t| -> Result<DispersiveRow> {
            let mut max_abs = 0.0f64;
            let mut tail_max = 0.0f64;
            for (z, zp) in sample_pairs {
                let s = engine.evaluate(t, z, zp)?;
                max_abs = max_abs.max(s.value.norm());
                tail_max = tail_max.max(s.tail_estimate);
            }
            Ok(DispersiveRow { t, max_abs, tail_max })
        });
        results.into_iter().collect::<Result<_>>()?
    };
    let fit_regime = |regime: Regime| -> Result<DecayFit> {
        let sel: Vec<&DispersiveRow> = rows
            .iter()
            .filter(|r| match regime {
                Regime::SmallTime => r.t <= 1.0,
                Regime::LargeTime => r.t > 1.0,
            })
            .collect();
        if sel.len() < 4 {
            return Err(PropError::DataInsufficiency(format!(
                "{} points in {:?} regime, need at least 4",
                sel.len(),
                regime
            )));
        }
        let x: Vec<f64> = sel.iter().map(|r| r.t.ln()).collect();
        let y: Vec<f64> = sel.iter().map(|r| r.max_abs.ln()).collect();
        let f = linear_fit(&x, &y);
        Ok(DecayFit {
            regime,
            exponent: f.slope,
            constant: f.intercept.exp(),
            residual: f.rms_residual,
            n_points: sel.len(),
        })
    };
    Ok(DispersiveScan {
        small: fit_regime(Regime::SmallTime)?,
        large: fit_regime(Regime::LargeTime)?,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use trapwave_hyperbolic::{GroupKind, Isometry};
    use trapwave_numeric::special::logspace;

    #[test]
    fn h3_cyclic_exponents_match_decay_law() {
        let g = GroupSpec::new(
            GroupKind::Cyclic,
            3,
            vec![Isometry::dilation(3, 2.0)],
            None,
        )
        .unwrap();
        let mut grid = logspace(0.05, 1.0, 12);
        grid.extend(logspace(1.3, 60.0, 14));
        let pairs = default_sample_pairs(3);
        let scan = dispersive_scan(&g, &grid, &pairs, 9.0).unwrap();
        assert!(
            (scan.small.exponent + 1.5).abs() < 0.1,
            "small-time exponent {}",
            scan.small.exponent
        );
        assert!(
            (scan.large.exponent + 1.5).abs() < 0.1,
            "large-time exponent {}",
            scan.large.exponent
        );
    }

    #[test]
    fn too_few_points_in_regime_errors() {
        let g = GroupSpec::new(
            GroupKind::Cyclic,
            3,
            vec![Isometry::dilation(3, 2.0)],
            None,
        )
        .unwrap();
        let grid = [0.2, 0.5, 0.8, 0.9, 2.0, 3.0];
        let pairs = default_sample_pairs(3);
        assert!(matches!(
            dispersive_scan(&g, &grid, &pairs, 8.0),
            Err(PropError::DataInsufficiency(_))
        ));
    }
}
