//! Adaptive panel quadrature on a 7-point Gauss / 15-point Kronrod pair,
//! for complex-valued integrands, plus composite Simpson for sampled data.

use num_complex::Complex64;
use std::collections::BinaryHeap;

// Kronrod-15 abscissae on [0,1] (symmetric about 0), Kronrod weights and
// embedded Gauss-7 weights.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// One Gauss-Kronrod pass over [a, b]: returns (kronrod, |kronrod - gauss|).
fn gk15<F>(f: &F, a: f64, b: f64) -> (Complex64, f64)
where
    F: Fn(f64) -> Complex64,
{
    let c = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let fsum = f(c - dx) + f(c + dx);
        kron += WGK[j] * fsum;
        if j % 2 == 1 {
            // odd XGK indices are the Gauss-7 nodes
            gauss += WG[j / 2] * fsum;
        }
    }
    kron *= half;
    gauss *= half;
    ((kron), (kron - gauss).norm())
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: Complex64,
    /// Estimated absolute error.
    pub error: f64,
    /// Whether the absolute-error target was met within the panel budget.
    pub converged: bool,
    pub panels: usize,
}

#[derive(Debug)]
struct Panel {
    err: f64,
    a: f64,
    b: f64,
    val: Complex64,
    id: u64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.id == other.id
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // max-heap on error; break ties by id so the split order is
        // deterministic regardless of float quirks
        self.err
            .total_cmp(&other.err)
            .then(self.id.cmp(&other.id))
    }
}

/// Adaptively integrate `f` over [a, b] to absolute tolerance `tol`,
/// splitting at most `max_panels` panels.
pub fn adaptive_complex<F>(f: F, a: f64, b: f64, tol: f64, max_panels: usize) -> QuadResult
where
    F: Fn(f64) -> Complex64,
{
    if a == b {
        return QuadResult {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            converged: true,
            panels: 0,
        };
    }
    let mut heap = BinaryHeap::new();
    let mut next_id = 0u64;
    let (v, e) = gk15(&f, a, b);
    heap.push(Panel {
        err: e,
        a,
        b,
        val: v,
        id: next_id,
    });
    let mut total_err = e;
    let mut panels = 1usize;
    while total_err > tol && panels < max_panels {
        let worst = heap.pop().expect("heap nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval no longer splittable in f64; give up on it
            total_err -= worst.err;
            heap.push(Panel { err: 0.0, ..worst });
            continue;
        }
        total_err -= worst.err;
        for (lo, hi) in [(worst.a, mid), (mid, worst.b)] {
            let (v, e) = gk15(&f, lo, hi);
            next_id += 1;
            total_err += e;
            heap.push(Panel {
                err: e,
                a: lo,
                b: hi,
                val: v,
                id: next_id,
            });
        }
        panels += 1;
    }
    let mut value = Complex64::new(0.0, 0.0);
    // drain in deterministic (sorted) order
    let mut items: Vec<Panel> = heap.into_vec();
    items.sort_by(|p, q| p.a.total_cmp(&q.a));
    for p in &items {
        value += p.val;
    }
    QuadResult {
        value,
        error: total_err,
        converged: total_err <= tol,
        panels,
    }
}

/// Composite Simpson on uniformly spaced samples with spacing `dx`.
/// Handles an odd number of intervals by finishing with the 3/8 rule.
pub fn simpson_uniform(y: &[f64], dx: f64) -> f64 {
    let n = y.len();
    assert!(n >= 2, "need at least two samples");
    if n == 2 {
        return 0.5 * dx * (y[0] + y[1]);
    }
    let intervals = n - 1;
    let (simpson_end, mut total) = if intervals % 2 == 0 {
        (n - 1, 0.0)
    } else {
        // last three intervals by Simpson 3/8
        let m = n - 4;
        let tail = 3.0 * dx / 8.0 * (y[m] + 3.0 * y[m + 1] + 3.0 * y[m + 2] + y[m + 3]);
        (m, tail)
    };
    let mut s = 0.0;
    let mut i = 0;
    while i + 2 <= simpson_end {
        s += y[i] + 4.0 * y[i + 1] + y[i + 2];
        i += 2;
    }
    total += s * dx / 3.0;
    total
}
