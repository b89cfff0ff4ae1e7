//! Gauss–Legendre nodes and weights on [-1, 1] by Newton iteration on the
//! Legendre recurrence. Used by the sphere-surface rules and the adaptive
//! integrator; exactness is pinned down by the moment tests in `quadrature`.

use alloc::vec::Vec;

use crate::math;

/// Legendre P_m and its derivative at x.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=m {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Nodes (ascending) and weights of the m-point rule; exact through degree
/// 2m−1. Symmetric pairs are mirrored exactly so the rule is bitwise even.
pub(crate) fn gauss_legendre(m: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = alloc::vec![0.0; m];
    let mut weights = alloc::vec![0.0; m];
    let half = m / 2;
    for i in 0..half {
        // Tricomi-style initial guess, then Newton.
        let theta = core::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5);
        let mut x = math::cos(theta);
        for _ in 0..60 {
            let (p, d) = legendre(m, x);
            let dx = p / d;
            x -= dx;
            if math::abs(dx) < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(m, x);
        let w = 2.0 / ((1.0 - x * x) * d * d);
        nodes[i] = -math::abs(x);
        nodes[m - 1 - i] = math::abs(x);
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        let (_, d) = legendre(m, 0.0);
        nodes[half] = 0.0;
        weights[half] = 2.0 / (d * d);
    }
    (nodes, weights)
}
