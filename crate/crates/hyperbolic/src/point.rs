use crate::error::{HypError, Result};
use serde::{Deserialize, Serialize};
use trapwave_numeric::special::acosh1p;

/// A point of the upper half-space model, dimension 2 or 3.
///
/// For dim 2 the coordinates are (x, y) with y > 0; for dim 3 they are
/// (x1, x2, y). Internally the boundary part is `x = [x1, x2]` (x2 = 0 in
/// dimension 2) and `y` is the height.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HPoint {
    dim: u8,
    x: [f64; 2],
    y: f64,
}

impl HPoint {
    pub fn h2(x: f64, y: f64) -> Result<Self> {
        Self::check(&[x, y])?;
        Ok(HPoint {
            dim: 2,
            x: [x, 0.0],
            y,
        })
    }

    pub fn h3(x1: f64, x2: f64, y: f64) -> Result<Self> {
        Self::check(&[x1, x2, y])?;
        Ok(HPoint {
            dim: 3,
            x: [x1, x2],
            y,
        })
    }

    /// Default basepoint: i in H2, (0,0,1) in H3.
    pub fn basepoint(dim: u8) -> Self {
        match dim {
            2 => HPoint {
                dim: 2,
                x: [0.0, 0.0],
                y: 1.0,
            },
            3 => HPoint {
                dim: 3,
                x: [0.0, 0.0],
                y: 1.0,
            },
            _ => panic!("dimension must be 2 or 3"),
        }
    }

    fn check(coords: &[f64]) -> Result<()> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(HypError::InvalidPoint("non-finite coordinate".into()));
        }
        let y = *coords.last().unwrap();
        if y <= 0.0 {
            return Err(HypError::InvalidPoint(format!("height {y} not positive")));
        }
        Ok(())
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    /// Boundary dimension n (manifold dimension is n + 1).
    pub fn n(&self) -> u8 {
        self.dim - 1
    }

    pub fn x(&self) -> [f64; 2] {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub(crate) fn from_parts(dim: u8, x: [f64; 2], y: f64) -> Result<Self> {
        if !x[0].is_finite() || !x[1].is_finite() || !y.is_finite() {
            return Err(HypError::InvalidPoint("non-finite coordinate".into()));
        }
        if y <= 0.0 {
            return Err(HypError::InvalidPoint(format!("height {y} not positive")));
        }
        Ok(HPoint { dim, x, y })
    }
}

/// Hyperbolic distance between two points of the same model.
///
/// cosh(rho) = 1 + (|x - x'|^2 + (y - y')^2) / (2 y y'), evaluated
/// cancellation-free through rho = 0.
pub fn hyp_distance(a: &HPoint, b: &HPoint) -> Result<f64> {
    if a.dim != b.dim {
        return Err(HypError::DimensionMismatch(a.dim, b.dim));
    }
    let dx0 = a.x[0] - b.x[0];
    let dx1 = a.x[1] - b.x[1];
    let dy = a.y - b.y;
    let q = (dx0 * dx0 + dx1 * dx1 + dy * dy) / (2.0 * a.y * b.y);
    Ok(acosh1p(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertical_geodesic_h2() {
        let a = HPoint::h2(0.0, 1.0).unwrap();
        let b = HPoint::h2(0.0, 2.0).unwrap();
        let d = hyp_distance(&a, &b).unwrap();
        assert!((d - 2.0f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn vertical_geodesic_h3() {
        let a = HPoint::h3(0.0, 0.0, 1.0).unwrap();
        let b = HPoint::h3(0.0, 0.0, std::f64::consts::E).unwrap();
        let d = hyp_distance(&a, &b).unwrap();
        assert!((d - 1.0).abs() < 1e-14);
    }

    #[test]
    fn symmetric_and_zero_iff_equal() {
        let a = HPoint::h2(0.3, 0.7).unwrap();
        let b = HPoint::h2(-1.2, 2.5).unwrap();
        assert_eq!(
            hyp_distance(&a, &b).unwrap(),
            hyp_distance(&b, &a).unwrap()
        );
        assert_eq!(hyp_distance(&a, &a).unwrap(), 0.0);
        assert!(hyp_distance(&a, &b).unwrap() > 0.0);
    }

    #[test]
    fn rejects_bad_points_and_mismatched_dims() {
        assert!(HPoint::h2(0.0, 0.0).is_err());
        assert!(HPoint::h2(f64::NAN, 1.0).is_err());
        let a = HPoint::h2(0.0, 1.0).unwrap();
        let b = HPoint::h3(0.0, 0.0, 1.0).unwrap();
        assert!(matches!(
            hyp_distance(&a, &b),
            Err(HypError::DimensionMismatch(2, 3))
        ));
    }
}
