//! Gap-region asymptotics of the rescaled singular potential v: the
//! 2/(2δ+ρ²) profile, the transverse-gradient envelope, and the agreement
//! between the series gradient and the integral comparison field v₀.

use bisphere_core::analysis::residual_eta;
use bisphere_core::calibration as cal;
use bisphere_core::singular::{eval_singular, eval_v0_dx};
use bisphere_core::{build_sequence, rho, SphereConfig, Vec3};

/// Gap-region sample: radial fractions × axial fractions × two azimuths.
fn gap_grid(config: &SphereConfig) -> Vec<Vec3> {
    let rmax = config.gap_radius() * (1.0 - 1e-12);
    let mut pts = Vec::new();
    for fr in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let r = fr * rmax;
        let xmax = 1.0 + config.delta - (1.0 - r * r).sqrt();
        for fx in [0.0, 0.5, 0.9] {
            let x1 = fx * xmax;
            for phi in [0.0f64, core::f64::consts::FRAC_PI_4] {
                pts.push(Vec3::new(x1, r * phi.cos(), r * phi.sin()));
            }
        }
    }
    pts
}

#[test]
fn gap_profile_residual_constant() {
    // ‖(2δ+ρ²)/2 ∇v − e₁‖·|ln δ| over the gap grid; measured max 0.197.
    let mut worst = 0f64;
    for k in 2..=6 {
        let delta = 10f64.powi(-k);
        let config = SphereConfig::from_half_gap(delta).unwrap();
        let seq = build_sequence(delta, 1e-10).unwrap();
        let l = delta.ln().abs();
        for x in gap_grid(&config) {
            let eta = residual_eta(&config, &seq, x).unwrap();
            worst = worst.max(eta.norm() * l);
        }
    }
    println!("gap profile constant: measured {worst:.3}");
    assert!(worst <= cal::GAP_PROFILE_CONST_MAX);
}

#[test]
fn transverse_gradient_envelope_constant() {
    // (|∂y v|+|∂z v|)(√δ+ρ)/(1+ln(1+ρ²/δ)) over the grid; measured max 1.04.
    let mut worst = 0f64;
    for k in 2..=6 {
        let delta = 10f64.powi(-k);
        let config = SphereConfig::from_half_gap(delta).unwrap();
        let seq = build_sequence(delta, 1e-10).unwrap();
        for x in gap_grid(&config) {
            let fe = eval_singular(&config, &seq, x).unwrap();
            let r = rho(x);
            let envelope = (1.0 + (r * r / delta).ln_1p()) / (delta.sqrt() + r);
            worst = worst.max((fe.grad_v.y.abs() + fe.grad_v.z.abs()) / envelope);
        }
    }
    println!("transverse envelope constant: measured {worst:.3}");
    assert!(worst <= cal::TRANSVERSE_ENVELOPE_MAX);
}

#[test]
fn series_gradient_matches_integral_field() {
    // |∂x v / ∂x v₀ − 1|·|ln δ| over a reduced grid; measured max 0.059.
    let mut worst = 0f64;
    for k in 2..=6 {
        let delta = 10f64.powi(-k);
        let config = SphereConfig::from_half_gap(delta).unwrap();
        let seq = build_sequence(delta, 1e-10).unwrap();
        let l = delta.ln().abs();
        let rmax = config.gap_radius() * (1.0 - 1e-12);
        for fr in [0.0, 0.5, 1.0] {
            let r = fr * rmax;
            let xmax = 1.0 + delta - (1.0 - r * r).sqrt();
            for fx in [0.0, 0.5] {
                let x = Vec3::new(fx * xmax, r, 0.0);
                let dv = eval_singular(&config, &seq, x).unwrap().grad_v.x;
                let dv0 = eval_v0_dx(&config, x).unwrap().dx;
                worst = worst.max((dv / dv0 - 1.0).abs() * l);
            }
        }
    }
    println!("series vs integral constant: measured {worst:.3}");
    assert!(worst <= cal::SERIES_VS_INTEGRAL_MAX);
}

#[test]
fn axial_integral_model_constant() {
    // |δ·∂x v₀(0) − 1|·|ln δ| across the sweep; measured max 0.069.
    let mut worst = 0f64;
    for k in 2..=6 {
        let delta = 10f64.powi(-k);
        let config = SphereConfig::from_half_gap(delta).unwrap();
        let g = eval_v0_dx(&config, Vec3::ZERO).unwrap();
        worst = worst.max((g.dx * delta - 1.0).abs() * delta.ln().abs());
    }
    println!("axial model constant: measured {worst:.3}");
    assert!(worst <= cal::AXIAL_MODEL_CONST_MAX);
}

#[test]
fn gradient_norm_follows_profile_and_sharpens() {
    // At δ = 1e-4 every sampled gap point has ‖∇v‖(2δ+ρ²)/2 within 25% of 1;
    // the worst deviation shrinks when δ drops to 1e-6.
    let mut devs = Vec::new();
    for &delta in &[1e-4, 1e-6] {
        let config = SphereConfig::from_half_gap(delta).unwrap();
        let seq = build_sequence(delta, 1e-10).unwrap();
        let rmax = config.gap_radius() * (1.0 - 1e-12);
        let mut worst = 0f64;
        for fr in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let r = fr * rmax;
            let x = Vec3::new(0.0, r, 0.0);
            let fe = eval_singular(&config, &seq, x).unwrap();
            let dev = (fe.grad_v.norm() * (2.0 * delta + r * r) / 2.0 - 1.0).abs();
            assert!(dev <= 0.25, "delta {delta} rho {r}: dev {dev}");
            worst = worst.max(dev);
        }
        devs.push(worst);
    }
    assert!(
        devs[1] < devs[0],
        "profile residual did not shrink: {devs:?}"
    );
}

#[test]
fn axis_direction_locks_onto_axis() {
    for &delta in &[1e-4, 1e-5] {
        let config = SphereConfig::from_half_gap(delta).unwrap();
        let seq = build_sequence(delta, 1e-10).unwrap();
        let g = eval_singular(&config, &seq, Vec3::ZERO).unwrap().grad_v;
        let cosine = g.x / g.norm();
        assert!(cosine >= 1.0 - 1e-3, "delta {delta}: cos {cosine}");
    }
}
