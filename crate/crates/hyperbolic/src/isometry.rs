use crate::error::{HypError, Result};
use crate::point::HPoint;
use num_complex::Complex64;

const DET_TOL: f64 = 1e-12;

/// A 2x2 unit-determinant matrix acting on the upper half-space by Mobius
/// transformation: real entries for H2 (SL(2,R)), complex for H3 (SL(2,C)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    dim: u8,
    m: [[Complex64; 2]; 2],
}

impl Isometry {
    /// Real matrix [[a, b], [c, d]] acting on H2. Must have det = 1 within 1e-12.
    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let m = [
            [Complex64::new(a, 0.0), Complex64::new(b, 0.0)],
            [Complex64::new(c, 0.0), Complex64::new(d, 0.0)],
        ];
        Self::from_matrix(2, m)
    }

    /// Complex matrix acting on H3. Must have det = 1 within 1e-12.
    pub fn complex(m: [[Complex64; 2]; 2]) -> Result<Self> {
        Self::from_matrix(3, m)
    }

    fn from_matrix(dim: u8, m: [[Complex64; 2]; 2]) -> Result<Self> {
        for row in &m {
            for z in row {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(HypError::InvalidIsometry("non-finite entry".into()));
                }
            }
        }
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if (det - Complex64::new(1.0, 0.0)).norm() > DET_TOL {
            return Err(HypError::InvalidIsometry(format!(
                "determinant {det} differs from 1 by more than {DET_TOL}"
            )));
        }
        Ok(Isometry { dim, m })
    }

    pub fn identity(dim: u8) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Isometry {
            dim,
            m: [[one, zero], [zero, one]],
        }
    }

    /// Dilation z -> e^l z (translation by l along the vertical axis).
    pub fn dilation(dim: u8, l: f64) -> Self {
        let s = (0.5 * l).exp();
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        m[0][0] = Complex64::new(s, 0.0);
        m[1][1] = Complex64::new(1.0 / s, 0.0);
        Isometry { dim, m }
    }

    /// Hyperbolic element of SL(2,R) with axis endpoints p < q on the
    /// boundary and translation length l.
    pub fn with_axis(p: f64, q: f64, l: f64) -> Result<Self> {
        if !(q > p) {
            return Err(HypError::InvalidIsometry("axis endpoints must satisfy p < q".into()));
        }
        // conjugate the dilation by the map sending (0, inf) -> (p, q)
        let s = (q - p).sqrt();
        let conj = Isometry::real(q / s, p / s, 1.0 / s, 1.0 / s)?;
        Ok(conj
            .compose(&Isometry::dilation(2, l))
            .compose(&conj.inverse()))
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        self.m
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    /// Hyperbolic (loxodromic) classification: in the real case |tr| > 2; in
    /// the complex case the trace must lie off the real segment [-2, 2].
    pub fn is_hyperbolic(&self) -> bool {
        let tr = self.trace();
        if self.dim == 2 || tr.im.abs() <= DET_TOL {
            tr.re.abs() > 2.0 + DET_TOL
        } else {
            true
        }
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        debug_assert_eq!(self.dim, other.dim);
        let a = &self.m;
        let b = &other.m;
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        // renormalize to unit determinant (PSL sign/branch irrelevant)
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let s = det.sqrt();
        if s.norm() > 0.0 {
            for row in m.iter_mut() {
                for z in row.iter_mut() {
                    *z /= s;
                }
            }
        }
        Isometry { dim: self.dim, m }
    }

    pub fn inverse(&self) -> Isometry {
        let [[a, b], [c, d]] = self.m;
        Isometry {
            dim: self.dim,
            m: [[d, -b], [-c, a]],
        }
    }

    /// Entrywise proximity up to overall sign (PSL representatives).
    pub fn close_to(&self, other: &Isometry, tol: f64) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let dist = |sign: f64| -> f64 {
            let mut worst: f64 = 0.0;
            for i in 0..2 {
                for j in 0..2 {
                    worst = worst.max((self.m[i][j] - sign * other.m[i][j]).norm());
                }
            }
            worst
        };
        dist(1.0).min(dist(-1.0)) <= tol
    }

    /// Apply the Mobius action to a point of the matching model.
    pub fn apply(&self, p: &HPoint) -> Result<HPoint> {
        if self.dim != p.dim() {
            return Err(HypError::DimensionMismatch(self.dim, p.dim()));
        }
        let [[a, b], [c, d]] = self.m;
        let z = Complex64::new(p.x()[0], p.x()[1]);
        let y = p.y();
        // quaternion form of the action on (z, y); for real matrices in H2
        // (x2 = 0) this reduces to the usual complex Mobius map
        let cz_d = c * z + d;
        let denom = cz_d.norm_sqr() + c.norm_sqr() * y * y;
        if denom == 0.0 || !denom.is_finite() {
            return Err(HypError::InvalidIsometry("singular action".into()));
        }
        let num = (a * z + b) * cz_d.conj() + a * c.conj() * y * y;
        let zp = num / denom;
        let yp = y / denom;
        if self.dim == 2 {
            // the boundary coordinate stays real; the height is Im of the
            // complex Mobius image, which equals y / |cz + d|^2 here
            HPoint::from_parts(2, [zp.re, 0.0], yp)
        } else {
            HPoint::from_parts(3, [zp.re, zp.im], yp)
        }
    }
}

/// Binary group operation selector for the public entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOp {
    Compose,
    Invert,
}

/// compose(g, h) or invert(g) (the second argument is ignored for Invert).
pub fn group_op(g: &Isometry, h: &Isometry, mode: GroupOp) -> Result<Isometry> {
    match mode {
        GroupOp::Compose => {
            if g.dim() != h.dim() {
                return Err(HypError::DimensionMismatch(g.dim(), h.dim()));
            }
            Ok(g.compose(h))
        }
        GroupOp::Invert => Ok(g.inverse()),
    }
}
