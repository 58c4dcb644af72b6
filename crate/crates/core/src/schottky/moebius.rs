use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Fractional linear map `z ↦ (az + b)/(cz + d)` normalized to `ad − bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

pub const DET_TOLERANCE: f64 = 1e-12;

impl MoebiusMap {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() < 1e-300 || !det.is_finite() {
            return Err(Error::InvalidParameter(format!("degenerate Moebius matrix (det = {det})")));
        }
        let s = det.sqrt();
        Ok(Self { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub fn identity() -> Self {
        let (one, zero) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        Self { a: one, b: zero, c: zero, d: one }
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, z: C64) -> C64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let m = Self {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        };
        m.renormalized()
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    fn renormalized(self) -> Self {
        let s = self.det().sqrt();
        Self { a: self.a / s, b: self.b / s, c: self.c / s, d: self.d / s }
    }

    /// Equality in PSL(2, ℂ): matrices agree up to an overall sign.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let diff = |s: f64| {
            (self.a - other.a * s).norm()
                .max((self.b - other.b * s).norm())
                .max((self.c - other.c * s).norm())
                .max((self.d - other.d * s).norm())
        };
        diff(1.0) < tol || diff(-1.0) < tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: C64,
    pub radius: f64,
}

/// Image of the closed disk `|z − p| ≤ r` under `m`, which must keep its
/// pole outside the disk.
pub fn circle_image(m: &MoebiusMap, center: C64, radius: f64) -> Result<Circle> {
    let w = m.c * center + m.d;
    let delta = w.norm_sqr() - m.c.norm_sqr() * radius * radius;
    if !(delta > 0.0) {
        return Err(Error::PoleInsideDisk { delta });
    }
    let c = ((m.a * center + m.b) * w.conj() - m.a * m.c.conj() * radius * radius) / delta;
    // det is 1 after normalization
    Ok(Circle { center: c, radius: radius * m.det().norm() / delta })
}
