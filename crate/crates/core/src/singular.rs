//! Evaluation of the singular potentials from the truncated image series.
//!
//! With images at (±p_n, 0, 0) and weights q_n:
//!   h1 = Σ_k q_{2k}/|x + p_{2k}e₁| − q_{2k+1}/|x − p_{2k+1}e₁|   (1 on ∂D1, 0 on ∂D2)
//!   h2 = its mirror                                              (0 on ∂D1, 1 on ∂D2)
//!   v  = Σ_n q_n (1/|x − p_n e₁| − 1/|x + p_n e₁|)
//!   h  = (h2 − h1)/(4π Σ q_n) = v/(4π Σ q_n)
//!
//! v and ∇v are accumulated pairwise: each ±p_n pair is combined analytically
//! before accumulation (1/a − 1/b = (b²−a²)/(ab(a+b)) with b²−a² = 4 x₁ p_n),
//! so there is no catastrophic cancellation on the axis, where both kernels
//! almost coincide. h1/h2 sum their alternating terms directly under
//! compensated accumulation.
//!
//! `eval_v0_dx` evaluates ∂x of the integral comparison field v₀, whose
//! kernel weight 1/√(t²−p²) has an integrable endpoint singularity removed by
//! the substitution t = √(s²+p²).

use crate::adaptive;
use crate::error::Error;
use crate::geometry::{rho, SphereConfig, Vec3};
use crate::math;
use crate::sequences::{fixed_point, ImageSequence};
use crate::sum::CompensatedSum;
use crate::Result;

const FOUR_PI: f64 = 4.0 * core::f64::consts::PI;

/// Certified truncation-tail bounds for one evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationError {
    /// Bound on the discarded tail of |h|.
    pub value: f64,
    /// Bound on the discarded tail of |∇h|.
    pub gradient: f64,
}

/// Values and gradients of the singular potentials at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldEvaluation {
    pub point: Vec3,
    pub h1: f64,
    pub h2: f64,
    pub h: f64,
    pub v: f64,
    pub grad_h1: Vec3,
    pub grad_h2: Vec3,
    pub grad_h: Vec3,
    pub grad_v: Vec3,
    pub trunc_err: TruncationError,
}

impl FieldEvaluation {
    /// Truncation bound on |v| (v = 4π Σq · h).
    pub fn trunc_err_v(&self, seq: &ImageSequence) -> f64 {
        self.trunc_err.value * FOUR_PI * seq.q_sum
    }

    /// Truncation bound on |∇v|.
    pub fn trunc_err_grad_v(&self, seq: &ImageSequence) -> f64 {
        self.trunc_err.gradient * FOUR_PI * seq.q_sum
    }
}

/// Distance from x to the two axis segments ±[p, p_M] that carry the
/// discarded tail images.
fn tail_distance(seq: &ImageSequence, x: Vec3) -> f64 {
    let p_last = seq.p_n[seq.truncation_index()];
    let rho2 = x.y * x.y + x.z * x.z;
    let clamp = |t: f64| t.max(seq.p).min(p_last);
    let tp = clamp(x.x);
    let tm = clamp(-x.x);
    let dp = math::sqrt((x.x - tp) * (x.x - tp) + rho2);
    let dm = math::sqrt((x.x + tm) * (x.x + tm) + rho2);
    dp.min(dm)
}

/// Evaluate h1, h2, h, v and their gradients at an exterior point.
pub fn eval_singular(
    config: &SphereConfig,
    seq: &ImageSequence,
    x: Vec3,
) -> Result<FieldEvaluation> {
    if !config.is_exterior(x) {
        return Err(Error::PointInsideInclusion);
    }
    let x1 = x.x;
    let rho2 = x.y * x.y + x.z * x.z;

    let mut h1 = CompensatedSum::new();
    let mut h2 = CompensatedSum::new();
    let mut v = CompensatedSum::new();
    let mut g1 = [
        CompensatedSum::new(),
        CompensatedSum::new(),
        CompensatedSum::new(),
    ];
    let mut g2 = [
        CompensatedSum::new(),
        CompensatedSum::new(),
        CompensatedSum::new(),
    ];
    let mut gv = [
        CompensatedSum::new(),
        CompensatedSum::new(),
        CompensatedSum::new(),
    ];

    for (n, (&t, &q)) in seq.p_n.iter().zip(&seq.q_n).enumerate() {
        // Distances to the +t and −t images.
        let a2 = (x1 - t) * (x1 - t) + rho2;
        let b2 = (x1 + t) * (x1 + t) + rho2;
        let a = math::sqrt(a2);
        let b = math::sqrt(b2);
        let a3 = a2 * a;
        let b3 = b2 * b;

        // Pair value: 1/a − 1/b = 4 x₁ t / (a b (a + b)).
        v.add(q * 4.0 * x1 * t / (a * b * (a + b)));

        // Pair gradient; ∂x splits into a cancellation-free kernel-sum part
        // and the stable difference d3 = 1/b³ − 1/a³.
        let d3 = (a - b) * (a2 + a * b + b2) / (a3 * b3);
        gv[0].add(q * (t * (1.0 / a3 + 1.0 / b3) + x1 * d3));
        gv[1].add(q * x.y * d3);
        gv[2].add(q * x.z * d3);

        // Alternating single-image sums for h1/h2 and their gradients.
        // ∇(1/|x − t e₁|) = −(x − t e₁)/a³, ∇(1/|x + t e₁|) = −(x + t e₁)/b³.
        if n % 2 == 0 {
            h1.add(q / b);
            g1[0].add(-q * (x1 + t) / b3);
            g1[1].add(-q * x.y / b3);
            g1[2].add(-q * x.z / b3);
            h2.add(q / a);
            g2[0].add(-q * (x1 - t) / a3);
            g2[1].add(-q * x.y / a3);
            g2[2].add(-q * x.z / a3);
        } else {
            h1.add(-q / a);
            g1[0].add(q * (x1 - t) / a3);
            g1[1].add(q * x.y / a3);
            g1[2].add(q * x.z / a3);
            h2.add(-q / b);
            g2[0].add(q * (x1 + t) / b3);
            g2[1].add(q * x.y / b3);
            g2[2].add(q * x.z / b3);
        }
    }

    let norm = FOUR_PI * seq.q_sum;
    let h1v = h1.value();
    let h2v = h2.value();
    let vv = v.value();
    let grad_h1 = Vec3::new(g1[0].value(), g1[1].value(), g1[2].value());
    let grad_h2 = Vec3::new(g2[0].value(), g2[1].value(), g2[2].value());
    let grad_v = Vec3::new(gv[0].value(), gv[1].value(), gv[2].value());

    // Tail bounds: discarded images sit on ±[p, p_M] with total weight at
    // most q_tail_bound; each value kernel is ≤ 1/d there and each gradient
    // kernel ≤ 1/d², plus the effect of the missing tail in the 1/Σq
    // normalization itself.
    let d = tail_distance(seq, x);
    let tail = seq.q_tail_bound;
    let value_bound = (tail / d + math::abs(vv) * tail / seq.q_sum) / norm;
    let grad_bound = (2.0 * tail / (d * d) + grad_v.norm() * tail / seq.q_sum) / norm;

    Ok(FieldEvaluation {
        point: x,
        h1: h1v,
        h2: h2v,
        h: vv / norm,
        v: vv,
        grad_h1,
        grad_h2,
        grad_h: (grad_h2 - grad_h1).scale(1.0 / norm),
        grad_v,
        trunc_err: TruncationError {
            value: value_bound,
            gradient: grad_bound,
        },
    })
}

/// Central-difference gradient oracle (test instrument: independent of the
/// analytic gradients above).
pub fn grad_fd<F: Fn(Vec3) -> f64>(f: F, x: Vec3, step: f64) -> Vec3 {
    let e = [
        Vec3::new(step, 0.0, 0.0),
        Vec3::new(0.0, step, 0.0),
        Vec3::new(0.0, 0.0, step),
    ];
    Vec3::new(
        (f(x + e[0]) - f(x - e[0])) / (2.0 * step),
        (f(x + e[1]) - f(x - e[1])) / (2.0 * step),
        (f(x + e[2]) - f(x - e[2])) / (2.0 * step),
    )
}

/// ∂x of the integral comparison field v₀ at x, plus the closed form of the
/// truncated model integral used to cross-check the integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct V0Gradient {
    /// ∂x v₀(x) by adaptive quadrature after the singularity-removing
    /// substitution.
    pub dx: f64,
    /// Closed form of ∫_p^T t (t²+ρ²)^{−3/2} (t²−p²)^{−1/2} dt with
    /// T = |ln δ|⁻¹, namely √((T²−p²)/(T²+ρ²)) / (p²+ρ²); zero when T ≤ p
    /// (empty range, only possible for very wide gaps).
    pub inner_truncated: f64,
}

/// Tolerance of the v₀ integration: err ≤ V0_TOL·(1 + |integral|).
pub const V0_TOL: f64 = 1e-10;

/// Evaluate ∂x v₀ where v₀(x) = ∫_p^1 (1/|x−te₁| − 1/|x+te₁|) dt/√(t²−p²).
pub fn eval_v0_dx(config: &SphereConfig, x: Vec3) -> Result<V0Gradient> {
    if !config.is_exterior(x) {
        return Err(Error::PointInsideInclusion);
    }
    let p = fixed_point(config.delta)?;
    let x1 = x.x;
    let rho2 = x.y * x.y + x.z * x.z;

    // t = √(s²+p²) turns dt/√(t²−p²) into ds/√(s²+p²).
    let integrand = |s: f64| {
        let t = math::sqrt(s * s + p * p);
        let a2 = (x1 - t) * (x1 - t) + rho2;
        let b2 = (x1 + t) * (x1 + t) + rho2;
        let dx_kernel = -(x1 - t) / (a2 * math::sqrt(a2)) + (x1 + t) / (b2 * math::sqrt(b2));
        dx_kernel / t
    };
    let upper = math::sqrt(1.0 - p * p);
    let dx = adaptive::integrate(&integrand, 0.0, upper, V0_TOL, V0_TOL)?;

    let l = math::abs(math::ln(config.delta));
    let t_cut = 1.0 / l;
    let rho_v = rho(x);
    let inner = if t_cut > p {
        math::sqrt((t_cut * t_cut - p * p) / (t_cut * t_cut + rho_v * rho_v))
            / (p * p + rho_v * rho_v)
    } else {
        0.0
    };

    Ok(V0Gradient {
        dx,
        inner_truncated: inner,
    })
}
