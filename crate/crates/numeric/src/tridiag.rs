//! Symmetric tridiagonal eigen tools (Sturm bisection + inverse iteration),
//! a complex Thomas solve, and Lanczos-based bilinear forms v* g(A) v.

use num_complex::Complex64;

/// Real symmetric tridiagonal matrix: diagonal `d` (n), off-diagonal `e` (n-1).
#[derive(Debug, Clone)]
pub struct SymTridiag {
    pub d: Vec<f64>,
    pub e: Vec<f64>,
}

impl SymTridiag {
    pub fn new(d: Vec<f64>, e: Vec<f64>) -> Self {
        assert_eq!(e.len() + 1, d.len());
        SymTridiag { d, e }
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    /// y = T x
    pub fn apply(&self, x: &[f64], y: &mut [f64]) {
        let n = self.n();
        for i in 0..n {
            let mut s = self.d[i] * x[i];
            if i > 0 {
                s += self.e[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                s += self.e[i] * x[i + 1];
            }
            y[i] = s;
        }
    }

    /// Gershgorin bounds (lo, hi) containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.n();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.e[i - 1].abs();
            }
            if i + 1 < n {
                r += self.e[i].abs();
            }
            lo = lo.min(self.d[i] - r);
            hi = hi.max(self.d[i] + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (Sturm / LDL^T sign count).
    pub fn count_below(&self, x: f64) -> usize {
        let n = self.n();
        let mut count = 0usize;
        let mut q = self.d[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..n {
            let e2 = self.e[i - 1] * self.e[i - 1];
            let denom = if q == 0.0 {
                f64::MIN_POSITIVE.sqrt()
            } else {
                q
            };
            q = self.d[i] - x - e2 / denom;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// All eigenvalues in [lo, hi), each bisected to absolute tolerance `tol`.
    pub fn eigenvalues_in(&self, lo: f64, hi: f64, tol: f64) -> Vec<f64> {
        let k_lo = self.count_below(lo);
        let k_hi = self.count_below(hi);
        let mut out = Vec::with_capacity(k_hi.saturating_sub(k_lo));
        for k in k_lo..k_hi {
            // bisect for the (k+1)-th smallest eigenvalue
            let mut a = lo;
            let mut b = hi;
            while b - a > tol {
                let m = 0.5 * (a + b);
                if self.count_below(m) > k {
                    b = m;
                } else {
                    a = m;
                }
            }
            out.push(0.5 * (a + b));
        }
        out
    }

    /// Solve (T - shift I) x = rhs with partial pivoting. `rhs` is consumed.
    pub fn shifted_solve(&self, shift: f64, mut rhs: Vec<f64>) -> Vec<f64> {
        let n = self.n();
        let tiny = f64::EPSILON * self.gershgorin_scale();
        let mut udiag = vec![0.0; n];
        let mut u1 = vec![0.0; n];
        let mut u2 = vec![0.0; n];
        // working row at columns (i, i+1, i+2)
        let mut p = self.d[0] - shift;
        let mut q = if n > 1 { self.e[0] } else { 0.0 };
        let mut r = 0.0;
        for i in 0..n - 1 {
            let sub = self.e[i];
            let np = self.d[i + 1] - shift;
            let nq = if i + 2 < n { self.e[i + 1] } else { 0.0 };
            if sub.abs() > p.abs() {
                // pivot with the row below
                udiag[i] = sub;
                u1[i] = np;
                u2[i] = nq;
                let m = p / sub;
                rhs.swap(i, i + 1);
                rhs[i + 1] -= m * rhs[i];
                p = q - m * np;
                q = r - m * nq;
                r = 0.0;
            } else {
                let piv = if p.abs() < tiny {
                    tiny.copysign(if p == 0.0 { 1.0 } else { p })
                } else {
                    p
                };
                udiag[i] = piv;
                u1[i] = q;
                u2[i] = r;
                let m = sub / piv;
                rhs[i + 1] -= m * rhs[i];
                p = np - m * q;
                q = nq - m * r;
                r = 0.0;
            }
        }
        udiag[n - 1] = if p.abs() < tiny {
            tiny.copysign(if p == 0.0 { 1.0 } else { p })
        } else {
            p
        };
        // back substitution
        let mut x = rhs;
        x[n - 1] /= udiag[n - 1];
        if n >= 2 {
            let i = n - 2;
            x[i] = (x[i] - u1[i] * x[i + 1]) / udiag[i];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - u1[i] * x[i + 1] - u2[i] * x[i + 2]) / udiag[i];
        }
        x
    }

    fn gershgorin_scale(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(1.0)
    }

    /// Eigenpairs with eigenvalue in [lo, hi): (values, vectors), vectors
    /// normalized and re-orthogonalized within tight clusters.
    pub fn eigenpairs_in(&self, lo: f64, hi: f64) -> (Vec<f64>, Vec<Vec<f64>>) {
        let n = self.n();
        let scale = self.gershgorin_scale();
        let tol = 1e-13 * scale;
        let vals = self.eigenvalues_in(lo, hi, tol);
        let mut vecs: Vec<Vec<f64>> = Vec::with_capacity(vals.len());
        let cluster_tol = 1e-8 * scale;
        for (j, &lam) in vals.iter().enumerate() {
            // deterministic start vector
            let mut v: Vec<f64> = (0..n)
                .map(|i| 1.0 + 0.3 * ((i * 2654435761usize) % 1024) as f64 / 1024.0)
                .collect();
            normalize(&mut v);
            for _ in 0..3 {
                // orthogonalize against earlier members of the same cluster
                for (k, prev) in vecs.iter().enumerate() {
                    if (vals[k] - lam).abs() < cluster_tol && k < j {
                        let c = dot(&v, prev);
                        for i in 0..n {
                            v[i] -= c * prev[i];
                        }
                    }
                }
                v = self.shifted_solve(lam, v);
                normalize(&mut v);
            }
            for (k, prev) in vecs.iter().enumerate() {
                if (vals[k] - lam).abs() < cluster_tol && k < j {
                    let c = dot(&v, prev);
                    for i in 0..n {
                        v[i] -= c * prev[i];
                    }
                }
            }
            normalize(&mut v);
            vecs.push(v);
        }
        (vals, vecs)
    }

    /// v^T g(T) v for a real vector via Lanczos with full reorthogonalization.
    pub fn bilinear_form<G: Fn(f64) -> f64>(&self, v: &[f64], g: &G, steps: usize) -> f64 {
        let n = self.n();
        let beta0 = norm(v);
        if beta0 == 0.0 {
            return 0.0;
        }
        let k_max = steps.min(n);
        let mut qs: Vec<Vec<f64>> = Vec::with_capacity(k_max);
        let mut alpha = Vec::with_capacity(k_max);
        let mut beta = Vec::with_capacity(k_max);
        let mut q: Vec<f64> = v.iter().map(|x| x / beta0).collect();
        let mut q_prev = vec![0.0; n];
        let mut b_prev = 0.0;
        let mut w = vec![0.0; n];
        for _ in 0..k_max {
            qs.push(q.clone());
            self.apply(&q, &mut w);
            let a = dot(&q, &w);
            alpha.push(a);
            for i in 0..n {
                w[i] -= a * q[i] + b_prev * q_prev[i];
            }
            // full reorthogonalization
            for qq in &qs {
                let c = dot(&w, qq);
                for i in 0..n {
                    w[i] -= c * qq[i];
                }
            }
            let b = norm(&w);
            if b < 1e-14 * self.gershgorin_scale() {
                break;
            }
            beta.push(b);
            q_prev = std::mem::replace(&mut q, w.iter().map(|x| x / b).collect());
            b_prev = b;
        }
        let k = alpha.len();
        beta.truncate(k.saturating_sub(1));
        let small = SymTridiag::new(alpha, beta);
        let (glo, ghi) = small.gershgorin();
        let margin = 1e-8 * small.gershgorin_scale() + 1e-300;
        let (thetas, uvecs) = small.eigenpairs_in(glo - margin, ghi + margin);
        let mut acc = 0.0;
        for (theta, u) in thetas.iter().zip(uvecs.iter()) {
            let w0 = u[0];
            acc += w0 * w0 * g(*theta);
        }
        beta0 * beta0 * acc
    }

    /// v* g(T) v for a complex vector (T real symmetric, so the cross terms
    /// cancel and the form is real).
    pub fn bilinear_form_complex<G: Fn(f64) -> f64>(
        &self,
        v: &[Complex64],
        g: &G,
        steps: usize,
    ) -> f64 {
        let re: Vec<f64> = v.iter().map(|z| z.re).collect();
        let im: Vec<f64> = v.iter().map(|z| z.im).collect();
        self.bilinear_form(&re, g, steps) + self.bilinear_form(&im, g, steps)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn normalize(a: &mut [f64]) {
    let n = norm(a);
    if n > 0.0 {
        for x in a.iter_mut() {
            *x /= n;
        }
    }
}

/// Solve a complex tridiagonal system in place (Thomas, no pivoting; callers
/// must supply diagonally dominant systems).
pub fn thomas_complex(
    lower: &[Complex64],
    diag: &[Complex64],
    upper: &[Complex64],
    rhs: &mut [Complex64],
) {
    let n = diag.len();
    assert!(n >= 1 && lower.len() == n - 1 && upper.len() == n - 1 && rhs.len() == n);
    let mut cp = vec![Complex64::new(0.0, 0.0); n - 1];
    let mut denom = diag[0];
    rhs[0] /= denom;
    for i in 1..n {
        cp[i - 1] = upper[i - 1] / denom;
        denom = diag[i] - lower[i - 1] * cp[i - 1];
        rhs[i] = (rhs[i] - lower[i - 1] * rhs[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        let t = cp[i] * rhs[i + 1];
        rhs[i] -= t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Discrete 1-D Laplacian (Dirichlet): eigenvalues 4 sin^2(k pi / (2(n+1))) / h^2.
    fn laplacian(n: usize, h: f64) -> SymTridiag {
        SymTridiag::new(vec![2.0 / (h * h); n], vec![-1.0 / (h * h); n - 1])
    }

    #[test]
    fn sturm_count_matches_analytic() {
        let n = 50;
        let t = laplacian(n, 1.0);
        let analytic: Vec<f64> = (1..=n)
            .map(|k| 4.0 * (k as f64 * PI / (2.0 * (n as f64 + 1.0))).sin().powi(2))
            .collect();
        for &x in &[0.5, 1.0, 2.0, 3.5] {
            let expected = analytic.iter().filter(|&&l| l < x).count();
            assert_eq!(t.count_below(x), expected);
        }
    }

    #[test]
    fn eigenpairs_match_analytic_laplacian() {
        let n = 64;
        let t = laplacian(n, 1.0);
        let (vals, vecs) = t.eigenpairs_in(0.0, 0.5);
        let analytic: Vec<f64> = (1..=n)
            .map(|k| 4.0 * (k as f64 * PI / (2.0 * (n as f64 + 1.0))).sin().powi(2))
            .filter(|&l| l < 0.5)
            .collect();
        assert_eq!(vals.len(), analytic.len());
        for (a, b) in vals.iter().zip(&analytic) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
        // residual check T v = lambda v
        let mut w = vec![0.0; n];
        for (lam, v) in vals.iter().zip(&vecs) {
            t.apply(v, &mut w);
            let res: f64 = w
                .iter()
                .zip(v)
                .map(|(wi, vi)| (wi - lam * vi).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-9, "residual {res}");
        }
        // orthogonality
        for i in 0..vecs.len() {
            for j in 0..i {
                assert!(dot(&vecs[i], &vecs[j]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn thomas_solves_manufactured_system() {
        let n = 40;
        let lower: Vec<Complex64> = (0..n - 1)
            .map(|i| Complex64::new(-0.3 + 0.01 * i as f64, 0.1))
            .collect();
        let upper: Vec<Complex64> = (0..n - 1)
            .map(|i| Complex64::new(-0.2, 0.05 * i as f64))
            .collect();
        let diag: Vec<Complex64> = (0..n).map(|i| Complex64::new(3.0 + 0.1 * i as f64, 1.0)).collect();
        let x_true: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new((i as f64).sin(), (i as f64 * 0.5).cos()))
            .collect();
        // rhs = T x
        let mut rhs = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut s = diag[i] * x_true[i];
            if i > 0 {
                s += lower[i - 1] * x_true[i - 1];
            }
            if i + 1 < n {
                s += upper[i] * x_true[i + 1];
            }
            rhs[i] = s;
        }
        thomas_complex(&lower, &diag, &upper, &mut rhs);
        for i in 0..n {
            assert!((rhs[i] - x_true[i]).norm() < 1e-12);
        }
    }

    #[test]
    fn lanczos_bilinear_matches_direct_eigensum() {
        let n = 80;
        let d: Vec<f64> = (0..n).map(|i| 2.0 + (i as f64 * 0.7).sin()).collect();
        let e: Vec<f64> = (0..n - 1).map(|i| -0.8 + 0.01 * i as f64).collect();
        let t = SymTridiag::new(d, e);
        let v: Vec<f64> = (0..n).map(|i| ((i as f64) * 0.13).cos()).collect();
        let g = |x: f64| (1.0 + x.abs()).sqrt();
        let approx = t.bilinear_form(&v, &g, 60);
        // direct: full eigendecomposition over the whole spectrum
        let (lo, hi) = t.gershgorin();
        let (vals, vecs) = t.eigenpairs_in(lo - 1.0, hi + 1.0);
        assert_eq!(vals.len(), n);
        let direct: f64 = vals
            .iter()
            .zip(&vecs)
            .map(|(lam, u)| {
                let c = dot(u, &v);
                c * c * g(*lam)
            })
            .sum();
        assert!(
            (approx - direct).abs() < 1e-8 * direct.abs().max(1.0),
            "{approx} vs {direct}"
        );
    }
}
