//! Orthonormal coframes and the self-dual / anti-self-dual split of 2-forms.

use nalgebra::SMatrix;

use crate::chart::{Mat4, Orientation, Point};
use crate::curvature::tensor::invert;
use crate::error::{Error, Result};

pub type Mat6 = SMatrix<f64, 6, 6>;

/// Gram matrix tolerance for [`TwoFormBasis`].
pub const GRAM_TOLERANCE: f64 = 1e-8;

/// Orthonormal coframe at a point: rows of `e` are the covectors.
#[derive(Debug, Clone, Copy)]
pub struct Coframe {
    pub e: Mat4,
    pub volume_density: f64,
}

impl Coframe {
    /// Gram–Schmidt on `∂_1..∂_4` in index order (equivalently the upper
    /// Cholesky factor of `g`); the last two covectors are swapped when the
    /// chart orientation is negative.
    pub fn new(g: &Mat4, orientation: Orientation, x: &Point) -> Result<Self> {
        let chol = g.cholesky().ok_or(Error::NonPositiveDefinite {
            point: *x,
            det: g.determinant(),
        })?;
        let mut e = chol.l().transpose();
        if orientation == Orientation::Negative {
            e.swap_rows(2, 3);
        }
        Ok(Self {
            e,
            volume_density: g.determinant().sqrt(),
        })
    }

    /// Dual frame: vectors are the columns.
    pub fn frame(&self) -> Mat4 {
        self.e.try_inverse().expect("coframe is invertible")
    }
}

/// `e^a ∧ e^b` in coordinate components.
fn wedge(e: &Mat4, a: usize, b: usize) -> Mat4 {
    let mut w = Mat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            w[(i, j)] = e[(a, i)] * e[(b, j)] - e[(b, i)] * e[(a, j)];
        }
    }
    w
}

/// Six 2-forms `(ω₁⁺, ω₂⁺, ω₃⁺, ω₁⁻, ω₂⁻, ω₃⁻)` in coordinate components,
/// together with the inverse metric needed to raise their indices.
#[derive(Debug, Clone)]
pub struct TwoFormBasis {
    pub forms: [Mat4; 6],
    pub metric_inv: Mat4,
}

impl TwoFormBasis {
    pub fn from_coframe(coframe: &Coframe, metric_inv: Mat4) -> Self {
        let e = &coframe.e;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let (e01, e23) = (wedge(e, 0, 1), wedge(e, 2, 3));
        let (e02, e13) = (wedge(e, 0, 2), wedge(e, 1, 3));
        let (e03, e12) = (wedge(e, 0, 3), wedge(e, 1, 2));
        let forms = [
            (e01 + e23) * s,
            (e02 - e13) * s,
            (e03 + e12) * s,
            (e01 - e23) * s,
            (e02 + e13) * s,
            (e03 - e12) * s,
        ];
        Self { forms, metric_inv }
    }

    pub fn at(g: &Mat4, orientation: Orientation, x: &Point) -> Result<Self> {
        let coframe = Coframe::new(g, orientation, x)?;
        Ok(Self::from_coframe(&coframe, invert(g, x)?))
    }

    pub fn raised(&self, a: usize) -> Mat4 {
        self.metric_inv * self.forms[a] * self.metric_inv
    }

    /// `⟨φ, ψ⟩ = ½ φ_ij ψ^ij`.
    pub fn inner(&self, phi: &Mat4, psi: &Mat4) -> f64 {
        0.5 * (self.metric_inv * phi * self.metric_inv).component_mul(psi).sum()
    }

    pub fn gram(&self) -> Mat6 {
        Mat6::from_fn(|a, b| self.inner(&self.forms[a], &self.forms[b]))
    }

    pub fn check_orthonormal(&self) -> Result<()> {
        let deviation = (self.gram() - Mat6::identity()).abs().max();
        if deviation > GRAM_TOLERANCE {
            Err(Error::NonOrthonormalBasis { deviation })
        } else {
            Ok(())
        }
    }
}

fn levi_civita(i: usize, j: usize, k: usize, l: usize) -> f64 {
    let p = [i, j, k, l];
    let mut sign = 1.0;
    for a in 0..4 {
        for b in (a + 1)..4 {
            if p[a] == p[b] {
                return 0.0;
            }
            if p[a] > p[b] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Hodge star of a 2-form given in coordinate components.
pub fn hodge(phi: &Mat4, g: &Mat4, orientation: Orientation) -> Mat4 {
    let g_inv = g.try_inverse().expect("metric is invertible");
    let raised = g_inv * phi * g_inv;
    let vol = g.determinant().sqrt() * orientation.sign();
    Mat4::from_fn(|i, j| {
        let mut acc = 0.0;
        for k in 0..4 {
            for l in 0..4 {
                acc += levi_civita(i, j, k, l) * raised[(k, l)];
            }
        }
        0.5 * vol * acc
    })
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Matrix of `½(1 ± ⋆)` on the coordinate basis `dxⁱ ∧ dxʲ` (i < j).
pub fn projector(g: &Mat4, orientation: Orientation, self_dual: bool) -> Mat6 {
    let sign = if self_dual { 1.0 } else { -1.0 };
    let mut p = Mat6::zeros();
    for (col, &(i, j)) in PAIRS.iter().enumerate() {
        let mut basis = Mat4::zeros();
        basis[(i, j)] = 1.0;
        basis[(j, i)] = -1.0;
        let image = (basis + hodge(&basis, g, orientation) * sign) * 0.5;
        for (row, &(k, l)) in PAIRS.iter().enumerate() {
            p[(row, col)] = image[(k, l)];
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn skewed_metric() -> Mat4 {
        let a = Mat4::new(
            1.0, 0.2, 0.0, 0.1, //
            0.0, 1.5, 0.3, 0.0, //
            0.1, 0.0, 0.8, 0.2, //
            0.0, 0.4, 0.0, 1.2,
        );
        a.transpose() * a + Mat4::identity() * 0.1
    }

    #[test]
    fn coframe_is_orthonormal_and_oriented() {
        let g = skewed_metric();
        for orientation in [Orientation::Positive, Orientation::Negative] {
            let c = Coframe::new(&g, orientation, &[0.0; 4]).unwrap();
            let check = c.e * g.try_inverse().unwrap() * c.e.transpose();
            assert!((check - Mat4::identity()).abs().max() < 1e-12);
            assert_eq!(c.e.determinant().signum(), orientation.sign());
        }
    }

    #[test]
    fn basis_is_orthonormal_and_split_by_star() {
        let g = skewed_metric();
        for orientation in [Orientation::Positive, Orientation::Negative] {
            let basis = TwoFormBasis::at(&g, orientation, &[0.0; 4]).unwrap();
            basis.check_orthonormal().unwrap();
            for (a, form) in basis.forms.iter().enumerate() {
                let expected = if a < 3 { *form } else { -form };
                let star = hodge(form, &g, orientation);
                assert!((star - expected).abs().max() < 1e-12, "form {a}");
                let star2 = hodge(&star, &g, orientation);
                assert!((star2 - form).abs().max() < 1e-12);
            }
        }
    }

    #[test]
    fn bad_basis_rejected() {
        let g = skewed_metric();
        let mut basis = TwoFormBasis::at(&g, Orientation::Positive, &[0.0; 4]).unwrap();
        basis.forms[0] *= 1.01;
        assert!(matches!(basis.check_orthonormal(), Err(Error::NonOrthonormalBasis { .. })));
    }

    #[test]
    fn projectors_are_complementary_idempotents() {
        let g = skewed_metric();
        let p = projector(&g, Orientation::Positive, true);
        let q = projector(&g, Orientation::Positive, false);
        assert!((p + q - Mat6::identity()).abs().max() < 1e-12);
        assert!((p * p - p).abs().max() < 1e-12);
        assert!((p * q).abs().max() < 1e-12);
        assert!((p.trace() - 3.0).abs() < 1e-12);
    }
}
