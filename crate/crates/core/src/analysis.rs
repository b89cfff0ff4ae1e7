//! Asymptotic experiments: gap-profile residuals, blow-up sweeps over a list
//! of gap widths, and log-log rate fits.

use alloc::vec::Vec;

use crate::background::HarmonicPolynomial;
use crate::coefficients::{c_h_eps, c_h_limit, potential_difference};
use crate::error::Error;
use crate::geometry::{rho, SphereConfig, Vec3};
use crate::math;
use crate::sequences::build_sequence;
use crate::singular::eval_singular;
use crate::Result;

/// Limit-series length used inside sweeps.
const SWEEP_LIMIT_TERMS: u64 = 1_000_000;

/// Gap-field residual at x: (2δ + ρ²)/2 · ∇v(x) − (1, 0, 0). Shrinks like
/// 1/|ln δ| throughout the gap region.
pub fn residual_eta(config: &SphereConfig, seq: &crate::ImageSequence, x: Vec3) -> Result<Vec3> {
    if !config.in_gap_region(x) {
        return Err(Error::OutsideGapRegion);
    }
    let fe = eval_singular(config, seq, x)?;
    let r = rho(x);
    let scale = (2.0 * config.delta + r * r) / 2.0;
    Ok(fe.grad_v.scale(scale) - Vec3::new(1.0, 0.0, 0.0))
}

/// Sample grid for gap-region maxima: radial levels {0, ¼, ½, ¾, 1} of the
/// gap radius × 8 azimuths (a single point on the axis), all on the mid-gap
/// plane x = 0.
pub fn gap_sample_points(config: &SphereConfig) -> Vec<Vec3> {
    // The outermost level backs off the region boundary by one part in 1e12
    // so cos/sin rounding cannot push rho(x) past the membership test.
    let rmax = config.gap_radius() * (1.0 - 1e-12);
    let mut pts = Vec::new();
    for level in 0..=4 {
        let r = rmax * level as f64 / 4.0;
        if level == 0 {
            pts.push(Vec3::ZERO);
            continue;
        }
        for k in 0..8 {
            let phi = 2.0 * core::f64::consts::PI * k as f64 / 8.0;
            pts.push(Vec3::new(0.0, r * math::cos(phi), r * math::sin(phi)));
        }
    }
    pts
}

/// One row of a blow-up sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub eps: f64,
    pub delta: f64,
    pub q_sum: f64,
    pub q_tail: f64,
    pub c_h_eps: f64,
    pub c_h_eps_tail: f64,
    pub c_h: f64,
    pub c_h_tail: f64,
    pub potential_diff: f64,
    /// ∇v at the gap centre.
    pub grad_axis: Vec3,
    pub grad_axis_norm: f64,
    /// ε |ln ε| · ‖singular part of ∇u at the gap centre‖.
    pub blowup_product: f64,
    /// max over the gap sample grid of ‖residual_eta‖.
    pub eta_max: f64,
    /// max over the grid of (|∂y v|+|∂z v|)(√δ+ρ)/(1+ln(1+ρ²/δ)).
    pub transverse_max: f64,
}

/// Sweep output: rows sorted by ε descending plus the fitted rates.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticReport {
    pub records: Vec<SweepRecord>,
    /// max over rows of |c_h_eps − c_h| / (√ε |ln ε|).
    pub limit_rate_const: f64,
    /// Least-squares slope of ln(eta_max) against ln(1/|ln ε|).
    pub eta_decay_slope: f64,
}

/// Compute one sweep row for gap width ε.
pub fn sweep_row(background: &HarmonicPolynomial, eps: f64, tol: f64) -> Result<SweepRecord> {
    if eps.is_nan() || eps <= 0.0 || eps > 0.1 {
        return Err(Error::InvalidInput("eps must lie in (0, 0.1]"));
    }
    let delta = eps / 2.0;
    let config = SphereConfig::from_half_gap(delta)?;
    let seq = build_sequence(delta, tol)?;
    if seq.q_tail_bound > tol {
        return Err(Error::ConvergenceFailure);
    }
    let (ce, ce_tail) = c_h_eps(&seq, background);
    let (cl, cl_tail) = c_h_limit(background, SWEEP_LIMIT_TERMS)?;
    let pd = potential_difference(&seq, background);

    let origin = eval_singular(&config, &seq, Vec3::ZERO)?;
    let grad_axis = origin.grad_v;
    let blowup = eps * math::abs(math::ln(eps)) * math::abs(0.5 * pd) * grad_axis.norm();

    let mut eta_max: f64 = 0.0;
    let mut transverse_max: f64 = 0.0;
    for x in gap_sample_points(&config) {
        let eta = residual_eta(&config, &seq, x)?;
        eta_max = eta_max.max(eta.norm());
        let fe = eval_singular(&config, &seq, x)?;
        let r = rho(x);
        let envelope = (1.0 + math::ln_1p(r * r / delta)) / (math::sqrt(delta) + r);
        transverse_max =
            transverse_max.max((math::abs(fe.grad_v.y) + math::abs(fe.grad_v.z)) / envelope);
    }

    Ok(SweepRecord {
        eps,
        delta,
        q_sum: seq.q_sum,
        q_tail: seq.q_tail_bound,
        c_h_eps: ce,
        c_h_eps_tail: ce_tail,
        c_h: cl,
        c_h_tail: cl_tail,
        potential_diff: pd,
        grad_axis,
        grad_axis_norm: grad_axis.norm(),
        blowup_product: blowup,
        eta_max,
        transverse_max,
    })
}

/// Sort rows by ε descending and fit the asymptotic rates.
pub fn assemble_report(mut records: Vec<SweepRecord>) -> AsymptoticReport {
    records.sort_by(|a, b| {
        b.eps
            .partial_cmp(&a.eps)
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let limit_rate_const = records
        .iter()
        .map(|r| math::abs(r.c_h_eps - r.c_h) / (math::sqrt(r.eps) * math::abs(math::ln(r.eps))))
        .fold(0.0, f64::max);
    let xs: Vec<f64> = records
        .iter()
        .map(|r| 1.0 / math::abs(math::ln(r.eps)))
        .collect();
    let ys: Vec<f64> = records.iter().map(|r| r.eta_max).collect();
    let eta_decay_slope = match fit_rate(&xs, &ys) {
        Ok((slope, _)) => slope,
        Err(_) => f64::NAN,
    };
    AsymptoticReport {
        records,
        limit_rate_const,
        eta_decay_slope,
    }
}

/// Full sweep over a decreasing list of gap widths.
pub fn blowup_sweep(
    background: &HarmonicPolynomial,
    eps_list: &[f64],
    tol: f64,
) -> Result<AsymptoticReport> {
    if eps_list.is_empty() {
        return Err(Error::InvalidInput("eps list must not be empty"));
    }
    for w in eps_list.windows(2) {
        if w[1] >= w[0] {
            return Err(Error::InvalidInput("eps list must be strictly decreasing"));
        }
    }
    let mut records = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        records.push(sweep_row(background, eps, tol)?);
    }
    Ok(assemble_report(records))
}

/// Least-squares line through (ln x, ln y): returns (slope, intercept).
pub fn fit_rate(xs: &[f64], ys: &[f64]) -> Result<(f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 3 {
        return Err(Error::DegenerateFit);
    }
    if xs.iter().chain(ys).any(|&v| v.is_nan() || v <= 0.0) {
        return Err(Error::DegenerateFit);
    }
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|&v| math::ln(v)).collect();
    let ly: Vec<f64> = ys.iter().map(|&v| math::ln(v)).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|&v| (v - mx) * (v - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit);
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(&a, &b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}
