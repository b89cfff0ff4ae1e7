//! Adaptive 1-D quadrature with an embedded Gauss 7/15 pair: the worst panel
//! (largest |G15 − G7| discrepancy) is bisected until the summed error
//! estimate meets the requested tolerance.

use alloc::vec::Vec;

use crate::error::Error;
use crate::gauss::gauss_legendre;
use crate::math;
use crate::Result;

const MAX_PANELS: usize = 4096;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

fn eval_panel<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    g7: &([f64; 7], [f64; 7]),
    g15: &([f64; 15], [f64; 15]),
) -> Panel {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut lo = 0.0;
    for i in 0..7 {
        lo += g7.1[i] * f(mid + half * g7.0[i]);
    }
    let mut hi = 0.0;
    for i in 0..15 {
        hi += g15.1[i] * f(mid + half * g15.0[i]);
    }
    Panel {
        a,
        b,
        value: hi * half,
        err: math::abs((hi - lo) * half),
    }
}

/// ∫_a^b f, refined until total_error ≤ abs_tol + rel_tol·|integral|.
pub fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    let has_tolerance = abs_tol > 0.0 || rel_tol > 0.0;
    if !has_tolerance {
        return Err(Error::InvalidInput("quadrature tolerance must be positive"));
    }
    if a == b {
        return Ok(0.0);
    }
    let (n7, w7) = gauss_legendre(7);
    let (n15, w15) = gauss_legendre(15);
    let mut a7 = ([0.0; 7], [0.0; 7]);
    let mut a15 = ([0.0; 15], [0.0; 15]);
    a7.0.copy_from_slice(&n7);
    a7.1.copy_from_slice(&w7);
    a15.0.copy_from_slice(&n15);
    a15.1.copy_from_slice(&w15);

    let mut panels: Vec<Panel> = alloc::vec![eval_panel(f, a, b, &a7, &a15)];
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        if err <= abs_tol + rel_tol * math::abs(total) {
            return Ok(total);
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::QuadratureFailure);
        }
        // Split the worst panel; ties resolve to the lowest index, so the
        // refinement path is deterministic.
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            if p.err > panels[worst].err {
                worst = i;
            }
        }
        let Panel { a: pa, b: pb, .. } = panels[worst];
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            // Interval no longer splittable at double precision.
            return Err(Error::QuadratureFailure);
        }
        panels[worst] = eval_panel(f, pa, mid, &a7, &a15);
        panels.push(eval_panel(f, mid, pb, &a7, &a15));
    }
}
