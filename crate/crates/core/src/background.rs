//! Background potentials: exact multivariate polynomials in x, y, z with a
//! symbolic harmonicity gate.
//!
//! Polynomials are stored as a map from exponent triples to coefficients, so
//! the Laplacian is an exact coefficient shift and "harmonic" means every
//! coefficient of Δ(poly) cancels to exactly zero — no numerical tolerance.
//! [`HarmonicPolynomial`] wraps a [`Polynomial`] that passed the gate and
//! caches its three partial derivatives for gradient evaluation.

mod parser;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::error::Error;
use crate::geometry::Vec3;
use crate::math;
use crate::sum::CompensatedSum;
use crate::Result;

/// Largest total degree accepted by the parser. All shipped experiments use
/// degree ≤ 4; the cap keeps exponent arithmetic far from overflow.
pub const MAX_DEGREE: u32 = 12;

/// Exponent triple (a, b, c) for the monomial x^a y^b z^c.
pub type MultiIndex = [u32; 3];

/// Sparse polynomial in x, y, z with f64 coefficients.
///
/// The map never stores exact-zero coefficients, so structural equality is
/// semantic equality.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    terms: BTreeMap<MultiIndex, f64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Parse and expand an expression without the harmonicity gate.
    pub fn parse(text: &str) -> Result<Self> {
        parser::parse(text)
    }

    pub fn constant(c: f64) -> Self {
        let mut p = Self::zero();
        p.add_term([0, 0, 0], c);
        p
    }

    /// The coordinate polynomial for axis 0 (x), 1 (y) or 2 (z).
    pub fn variable(axis: usize) -> Self {
        let mut idx = [0u32; 3];
        idx[axis] = 1;
        let mut p = Self::zero();
        p.add_term(idx, 1.0);
        p
    }

    /// Add `coeff`·x^a y^b z^c, pruning the entry if it cancels to zero.
    pub fn add_term(&mut self, idx: MultiIndex, coeff: f64) {
        let slot = self.terms.entry(idx).or_insert(0.0);
        *slot += coeff;
        if *slot == 0.0 {
            self.terms.remove(&idx);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &f64)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|k| k[0] + k[1] + k[2])
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (&idx, &c) in &other.terms {
            out.add_term(idx, c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (&idx, &c) in &self.terms {
            out.add_term(idx, -c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (&ia, &ca) in &self.terms {
            for (&ib, &cb) in &other.terms {
                out.add_term([ia[0] + ib[0], ia[1] + ib[1], ia[2] + ib[2]], ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::constant(1.0);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact partial derivative along `axis`.
    pub fn partial(&self, axis: usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (&idx, &c) in &self.terms {
            let e = idx[axis];
            if e > 0 {
                let mut lowered = idx;
                lowered[axis] = e - 1;
                out.add_term(lowered, c * e as f64);
            }
        }
        out
    }

    /// Exact symbolic Laplacian: each term (a,b,c) contributes
    /// a(a−1) x^{a−2} y^b z^c and the two analogues.
    pub fn laplacian(&self) -> Polynomial {
        let mut out = Polynomial::zero();
        for (&idx, &c) in &self.terms {
            for axis in 0..3 {
                let e = idx[axis];
                if e >= 2 {
                    let mut lowered = idx;
                    lowered[axis] = e - 2;
                    out.add_term(lowered, c * (e as f64) * ((e - 1) as f64));
                }
            }
        }
        out
    }

    /// Evaluate at a point via per-axis power tables and compensated
    /// accumulation.
    pub fn eval(&self, at: Vec3) -> f64 {
        let mut acc = CompensatedSum::new();
        for (&idx, &c) in &self.terms {
            acc.add(
                c * math::powi(at.x, idx[0]) * math::powi(at.y, idx[1]) * math::powi(at.z, idx[2]),
            );
        }
        acc.value()
    }

    /// Substitute (x, y, z) → (s·x, s·y, s·z): coefficients pick up s^degree.
    /// This is how a background given in a radius-r frame is pulled into the
    /// unit-radius frame.
    pub fn scale_coordinates(&self, s: f64) -> Polynomial {
        let mut out = Polynomial::zero();
        for (&idx, &c) in &self.terms {
            out.add_term(idx, c * math::powi(s, idx[0] + idx[1] + idx[2]));
        }
        out
    }
}

/// Graded-lexicographic formatting: highest total degree first, then
/// lexicographic on (a, b, c) descending; `format(parse(s))` re-parses to an
/// identical coefficient map because coefficients print in shortest
/// round-trip form.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<MultiIndex> = self.terms.keys().copied().collect();
        keys.sort_by(|a, b| {
            let (da, db) = (a[0] + a[1] + a[2], b[0] + b[1] + b[2]);
            db.cmp(&da).then(b.cmp(a))
        });
        let mut first = true;
        for idx in keys {
            let c = self.terms[&idx];
            let mag = math::abs(c);
            if first {
                if c < 0.0 {
                    f.write_str("-")?;
                }
                first = false;
            } else if c < 0.0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let is_const = idx == [0, 0, 0];
            if mag != 1.0 || is_const {
                write!(f, "{mag}")?;
                if !is_const {
                    f.write_str("*")?;
                }
            }
            let mut need_star = false;
            for (axis, name) in ["x", "y", "z"].iter().enumerate() {
                let e = idx[axis];
                if e > 0 {
                    if need_star {
                        f.write_char('*')?;
                    }
                    f.write_str(name)?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                    need_star = true;
                }
            }
        }
        Ok(())
    }
}

/// A polynomial background potential whose Laplacian vanishes identically.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicPolynomial {
    poly: Polynomial,
    partials: [Polynomial; 3],
}

impl HarmonicPolynomial {
    /// Parse an expression in x, y, z (+, -, *, ^ with nonnegative integer
    /// powers, real literals, parentheses), expand it, and gate on Δ ≡ 0.
    pub fn parse(text: &str) -> Result<Self> {
        let poly = parser::parse(text)?;
        if poly.degree() > MAX_DEGREE {
            return Err(Error::Parse(alloc::format!(
                "degree {} exceeds the supported maximum {}",
                poly.degree(),
                MAX_DEGREE
            )));
        }
        Self::from_polynomial(poly)
    }

    /// Wrap an already expanded polynomial, rejecting it if Δ(poly) ≠ 0.
    pub fn from_polynomial(poly: Polynomial) -> Result<Self> {
        let residual = poly.laplacian();
        if !residual.is_zero() {
            return Err(Error::NonHarmonic {
                residual: alloc::format!("{residual}"),
            });
        }
        let partials = [poly.partial(0), poly.partial(1), poly.partial(2)];
        Ok(HarmonicPolynomial { poly, partials })
    }

    pub fn as_polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree()
    }

    pub fn eval(&self, at: Vec3) -> f64 {
        self.poly.eval(at)
    }

    pub fn grad(&self, at: Vec3) -> Vec3 {
        Vec3::new(
            self.partials[0].eval(at),
            self.partials[1].eval(at),
            self.partials[2].eval(at),
        )
    }

    /// Odd part of the axis restriction: pairs (k, c_k) with k odd such that
    /// H(t,0,0) − H(−t,0,0) = 2 Σ c_k t^k. This is the only trace of H the
    /// blow-up coefficients see.
    pub fn axis_odd_coefficients(&self) -> Vec<(u32, f64)> {
        self.poly
            .terms()
            .filter(|(idx, _)| idx[1] == 0 && idx[2] == 0 && idx[0] % 2 == 1)
            .map(|(idx, &c)| (idx[0], c))
            .collect()
    }

    /// Pull a background given in a radius-`s` frame into the unit frame.
    pub fn scale_coordinates(&self, s: f64) -> Result<Self> {
        Self::from_polynomial(self.poly.scale_coordinates(s))
    }

    /// Canonical graded-lexicographic form.
    pub fn canonical_form(&self) -> String {
        alloc::format!("{}", self.poly)
    }
}
