use serde::Serialize;

/// Which admissibility rule to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibleFamily {
    /// Scaling identity 2/p + d/q = d/2 with d = n + 1, excluding (2, inf).
    EuclideanLine,
    /// (1/p, 1/q) in (0, 1/2] x (0, 1/2) with 2/p >= (n+1)/2 - (n+1)/q,
    /// plus the isolated point (0, 1/2).
    HyperbolicTriangle,
}

const EQ_TOL: f64 = 1e-9;

/// Exponent-pair admissibility. `p` and `q` may be infinite.
pub fn admissible(p: f64, q: f64, n: u8, family: AdmissibleFamily) -> bool {
    if !(p >= 2.0) || !(q >= 2.0) {
        return false;
    }
    let ip = if p.is_infinite() { 0.0 } else { 1.0 / p };
    let iq = if q.is_infinite() { 0.0 } else { 1.0 / q };
    let nf = n as f64;
    match family {
        AdmissibleFamily::EuclideanLine => {
            let d = nf + 1.0;
            if p == 2.0 && q.is_infinite() {
                return false;
            }
            (2.0 * ip + d * iq - d / 2.0).abs() <= EQ_TOL
        }
        AdmissibleFamily::HyperbolicTriangle => {
            if ip == 0.0 && (iq - 0.5).abs() <= EQ_TOL {
                return true; // the isolated point (0, 1/2)
            }
            let in_box = ip > 0.0 && ip <= 0.5 + EQ_TOL && iq > 0.0 && iq < 0.5 - EQ_TOL / 2.0;
            in_box && 2.0 * ip + EQ_TOL >= (nf + 1.0) / 2.0 - (nf + 1.0) * iq
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_points() {
        assert!(admissible(4.0, 4.0, 1, AdmissibleFamily::EuclideanLine));
        assert!(admissible(4.0, 4.0, 1, AdmissibleFamily::HyperbolicTriangle));
        assert!(admissible(
            f64::INFINITY,
            2.0,
            1,
            AdmissibleFamily::HyperbolicTriangle
        ));
        assert!(admissible(
            f64::INFINITY,
            2.0,
            2,
            AdmissibleFamily::HyperbolicTriangle
        ));
        // interior point of the triangle for n = 1: (1/p,1/q) = (1/2, 1/3)
        assert!(admissible(2.0, 3.0, 1, AdmissibleFamily::HyperbolicTriangle));
        // outside: too little time integrability
        assert!(!admissible(10.0, 3.0, 1, AdmissibleFamily::HyperbolicTriangle));
        // q = 2 boundary is excluded except at the isolated point
        assert!(!admissible(4.0, 2.0, 1, AdmissibleFamily::HyperbolicTriangle));
        // (2, inf) excluded on the scaling line for d = 2
        assert!(!admissible(2.0, f64::INFINITY, 1, AdmissibleFamily::EuclideanLine));
        // d = 3 endpoint (2, 6) allowed by the line rule
        assert!(admissible(2.0, 6.0, 2, AdmissibleFamily::EuclideanLine));
    }

    #[test]
    fn perturbing_q_flips_the_line_test() {
        assert!(admissible(4.0, 4.0, 1, AdmissibleFamily::EuclideanLine));
        assert!(!admissible(4.0, 4.0 + 1e-3, 1, AdmissibleFamily::EuclideanLine));
        assert!(!admissible(4.0, 4.0 - 1e-3, 1, AdmissibleFamily::EuclideanLine));
    }
}
