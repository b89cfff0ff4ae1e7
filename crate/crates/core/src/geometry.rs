//! Normalized two-sphere geometry: unit balls centred at (±(1+δ), 0, 0),
//! sphere inversions, axis distance, and the gap region.
//!
//! Every kernel in the crate works in this frame. A configuration built from a
//! physical radius r and gap keeps `scale = r` so callers can map points in
//! (x → x/r) and gradients back out (divide by r); nothing else ever sees r.

use crate::error::Error;
use crate::math;
use crate::Result;

/// Slack for "on the boundary counts as outside": quadrature nodes are placed
/// exactly on the spheres and must not be rejected by rounding.
pub(crate) const BOUNDARY_SLACK: f64 = 1e-12;

/// Plain 3-vector / point in the normalized frame.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        math::sqrt(self.norm_sq())
    }

    pub fn scale(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).norm()
    }
}

impl core::ops::Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl core::ops::Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl core::ops::Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Which of the two balls: D1 sits on the negative x side, D2 on the positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereId {
    D1,
    D2,
}

/// Normalized two-sphere configuration (unit radius, half-gap δ, ε = 2δ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereConfig {
    /// Half-gap δ > 0.
    pub delta: f64,
    /// Full gap ε = 2δ, kept explicitly so the two conventions never drift.
    pub eps: f64,
    /// Centre of D1: (−1−δ, 0, 0).
    pub c1: Vec3,
    /// Centre of D2: (1+δ, 0, 0).
    pub c2: Vec3,
    /// Sphere radius in the internal frame; always 1.
    pub radius: f64,
    /// Original radius r of the input frame; used only by the in/out mapping.
    pub scale: f64,
}

impl SphereConfig {
    /// Normalize a physical configuration of two radius-`radius` spheres
    /// separated by `gap`: δ = gap / (2·radius), centres on the x-axis.
    pub fn new(radius: f64, gap: f64) -> Result<Self> {
        if radius.is_nan() || radius <= 0.0 {
            return Err(Error::NonPositiveGeometry {
                what: "radius",
                value: radius,
            });
        }
        if gap.is_nan() || gap <= 0.0 {
            return Err(Error::NonPositiveGeometry {
                what: "gap",
                value: gap,
            });
        }
        let delta = gap / (2.0 * radius);
        let mut cfg = Self::from_half_gap(delta)?;
        cfg.scale = radius;
        Ok(cfg)
    }

    /// Configuration already in the normalized frame (scale 1).
    pub fn from_half_gap(delta: f64) -> Result<Self> {
        if delta.is_nan() || delta <= 0.0 {
            return Err(Error::NonPositiveGeometry {
                what: "delta",
                value: delta,
            });
        }
        Ok(SphereConfig {
            delta,
            eps: 2.0 * delta,
            c1: Vec3::new(-(1.0 + delta), 0.0, 0.0),
            c2: Vec3::new(1.0 + delta, 0.0, 0.0),
            radius: 1.0,
            scale: 1.0,
        })
    }

    pub fn center(&self, j: SphereId) -> Vec3 {
        match j {
            SphereId::D1 => self.c1,
            SphereId::D2 => self.c2,
        }
    }

    /// Inversion in the unit sphere ∂D_j: y ↦ c_j + (y − c_j)/|y − c_j|².
    /// An involution that swaps the interior and exterior of the ball and
    /// fixes its boundary.
    pub fn reflect(&self, j: SphereId, y: Vec3) -> Result<Vec3> {
        let d = y - self.center(j);
        let n2 = d.norm_sq();
        if n2 == 0.0 {
            return Err(Error::SingularPoint);
        }
        Ok(self.center(j) + d.scale(1.0 / n2))
    }

    /// True iff x is outside both open balls (boundary counts as outside).
    pub fn is_exterior(&self, x: Vec3) -> bool {
        let lim = 1.0 - BOUNDARY_SLACK;
        (x - self.c1).norm_sq() >= lim && (x - self.c2).norm_sq() >= lim
    }

    /// Radius of the gap region: ρ ≤ |ln δ|⁻² (natural log).
    pub fn gap_radius(&self) -> f64 {
        let l = math::abs(math::ln(self.delta));
        1.0 / (l * l)
    }

    /// True iff x is exterior to both balls and within the gap cylinder
    /// ρ(x) ≤ |ln δ|⁻².
    pub fn in_gap_region(&self, x: Vec3) -> bool {
        self.is_exterior(x) && rho(x) <= self.gap_radius()
    }

    /// Map a point of the input frame into the normalized frame (x → x/r).
    pub fn normalize_point(&self, x: Vec3) -> Vec3 {
        x.scale(1.0 / self.scale)
    }

    /// Map a gradient computed in the normalized frame back to the input
    /// frame (chain rule: one factor 1/r).
    pub fn gradient_to_input_frame(&self, g: Vec3) -> Vec3 {
        g.scale(1.0 / self.scale)
    }
}

/// Distance from x to the axis through the sphere centres: √(y² + z²).
pub fn rho(x: Vec3) -> f64 {
    math::sqrt(x.y * x.y + x.z * x.z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_normalizes_gap() {
        let cfg = SphereConfig::new(1.0, 0.01).unwrap();
        assert_eq!(cfg.delta, 0.005);
        assert_eq!(cfg.eps, 0.01);
        assert_eq!(cfg.c2, Vec3::new(1.005, 0.0, 0.0));
        assert_eq!(cfg.radius, 1.0);
    }

    #[test]
    fn new_is_scale_invariant() {
        // gap/(2r) identical in bits: doubling both inputs keeps the frame.
        let a = SphereConfig::new(1.0, 0.01).unwrap();
        let b = SphereConfig::new(2.0, 0.02).unwrap();
        assert_eq!(a.delta.to_bits(), b.delta.to_bits());
        assert_eq!(a.c1, b.c1);
        assert_eq!(b.scale, 2.0);
    }

    #[test]
    fn new_rejects_degenerate_input() {
        assert!(matches!(
            SphereConfig::new(1.0, 0.0),
            Err(Error::NonPositiveGeometry { what: "gap", .. })
        ));
        assert!(matches!(
            SphereConfig::new(-1.0, 0.1),
            Err(Error::NonPositiveGeometry { what: "radius", .. })
        ));
        assert!(SphereConfig::from_half_gap(f64::NAN).is_err());
    }

    #[test]
    fn reflect_fixes_boundary_points() {
        let cfg = SphereConfig::from_half_gap(0.005).unwrap();
        let y = cfg.c1 + Vec3::new(0.6, 0.8, 0.0);
        let r = cfg.reflect(SphereId::D1, y).unwrap();
        assert!(r.distance(y) < 1e-15);
    }

    #[test]
    fn reflect_center_of_other_sphere_gives_first_image() {
        // R2(c1) is the first odd image point (0.5074876…, 0, 0).
        let cfg = SphereConfig::from_half_gap(0.005).unwrap();
        let p1 = cfg.reflect(SphereId::D2, cfg.c1).unwrap();
        let expect = 1.005 - 1.0 / 2.01;
        assert!((p1.x - expect).abs() < 1e-15, "p1 = {}", p1.x);
        assert!((p1.x - 0.507_487_562_189_054_7).abs() < 1e-12);
        assert_eq!((p1.y, p1.z), (0.0, 0.0));
    }

    #[test]
    fn reflect_rejects_center() {
        let cfg = SphereConfig::from_half_gap(0.005).unwrap();
        assert_eq!(cfg.reflect(SphereId::D1, cfg.c1), Err(Error::SingularPoint));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(Vec3::new(0.1, 0.0, 0.0)), 0.0);
        assert_eq!(rho(Vec3::new(0.0, 3.0, 4.0)), 5.0);
    }

    #[test]
    fn gap_region_examples() {
        let cfg = SphereConfig::from_half_gap(1e-4).unwrap();
        assert!(cfg.in_gap_region(Vec3::ZERO));
        assert!(!cfg.in_gap_region(cfg.c2));
        // |ln 1e-4|^-2 = 0.0117882…, so rho = 0.012 is just outside.
        assert!(!cfg.in_gap_region(Vec3::new(0.0, 0.012, 0.0)));
        assert!(cfg.in_gap_region(Vec3::new(0.0, 0.0117, 0.0)));
    }

    #[test]
    fn gradient_maps_back_with_one_scale_factor() {
        let phys = SphereConfig::new(2.0, 0.02).unwrap();
        let g = phys.gradient_to_input_frame(Vec3::new(2.0, 4.0, 6.0));
        assert_eq!(g, Vec3::new(1.0, 2.0, 3.0));
    }

    #[test]
    fn normalization_is_bit_for_bit() {
        let phys = SphereConfig::new(2.0, 0.02).unwrap();
        let norm = SphereConfig::from_half_gap(0.005).unwrap();
        let x_phys = Vec3::new(0.5, -0.25, 1.25);
        let x_norm = phys.normalize_point(x_phys);
        assert_eq!(x_norm, Vec3::new(0.25, -0.125, 0.625));
        assert_eq!(phys.delta.to_bits(), norm.delta.to_bits());
        // Same normalized evaluation point → identical downstream bits.
        assert_eq!(
            rho(x_norm).to_bits(),
            rho(Vec3::new(0.25, -0.125, 0.625)).to_bits()
        );
    }
}
