//! Closed-form principal Biot stresses for the one-parameter Neo-Hooke
//! family, their Jacobian with respect to the stretches, determinants and
//! principal minors (general, equitriaxial, and two-equal-stretch forms),
//! plus the matrix-level Biot and first Piola–Kirchhoff stresses.

use crate::material::PrincipalStretches;
use crate::tensor::{Definiteness, Mat3, SymMat3};
use crate::{Error, Result};

/// Principal Biot stresses (mu-normalized).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressTriple {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
}

impl StressTriple {
    pub fn as_array(&self) -> [f64; 3] {
        [self.t1, self.t2, self.t3]
    }

    /// Largest |T_i - alpha| over the three components.
    pub fn max_residual(&self, alpha: f64) -> f64 {
        self.as_array()
            .iter()
            .map(|t| (t - alpha).abs())
            .fold(0.0, f64::max)
    }
}

/// `T_i = l_i - 1/l_i + (M/2 - 1/3)(J^2/l_i - 1/l_i)` with `J = l1 l2 l3`.
///
/// Vanishes at the identity for every admissible `M`; bit-exactly
/// permutation equivariant (the volume ratio is accumulated in sorted
/// order).
pub fn principal_biot(m: f64, s: &PrincipalStretches) -> StressTriple {
    let [l1, l2, l3] = s.as_array();
    let c = (3.0 * m - 2.0) / 6.0;
    let j = s.volume_ratio();
    let w = c * (j * j - 1.0) - 1.0;
    StressTriple {
        t1: l1 + w / l1,
        t2: l2 + w / l2,
        t3: l3 + w / l3,
    }
}

/// Derivative of the principal stress map with respect to the stretches,
/// which equals the Hessian of the principal-stretch energy and is therefore
/// symmetric by construction.
pub fn stress_jacobian(m: f64, s: &PrincipalStretches) -> SymMat3 {
    let [l1, l2, l3] = s.as_array();
    let c = (3.0 * m - 2.0) / 6.0;
    let j = s.volume_ratio();
    let j2 = j * j;
    let diag = |l: f64| {
        let inv2 = 1.0 / (l * l);
        inv2 + 1.0 + c * (inv2 + j2 * inv2)
    };
    let off = |la: f64, lb: f64| 2.0 * c * j2 / (la * lb);
    SymMat3::new(
        diag(l1),
        diag(l2),
        diag(l3),
        off(l1, l2),
        off(l1, l3),
        off(l2, l3),
    )
}

/// Closed form of `det DT` on the equitriaxial line:
/// `[(2-3M) l^6 + 6 l^2 + 4 + 3M]^2 [5(3M-2) l^6 + 6 l^2 + 4 + 3M] / (216 l^6)`.
pub fn det_jacobian_radial(m: f64, l: f64) -> f64 {
    let l2 = l * l;
    let l6 = l2 * l2 * l2;
    let a = (2.0 - 3.0 * m) * l6 + 6.0 * l2 + 4.0 + 3.0 * m;
    let b = 5.0 * (3.0 * m - 2.0) * l6 + 6.0 * l2 + 4.0 + 3.0 * m;
    a * a * b / (216.0 * l6)
}

/// Closed-form leading principal minors of the stress Jacobian on the
/// equitriaxial line. The sign pattern flips exactly at the stretch where the
/// radial Biot map loses differentiable invertibility: all three positive
/// below it, `m2 = m3 = 0` at it, `m2 < 0` beyond it.
pub fn minors_radial(m: f64, l: f64) -> [f64; 3] {
    let l2 = l * l;
    let l4 = l2 * l2;
    let l6 = l4 * l2;
    let m1 = ((3.0 * m - 2.0) / 6.0 * (l6 + 1.0) + l2 + 1.0) / l2;
    let m2 = (3.0 * (3.0 * m - 2.0) * l6 + 6.0 * l2 + 4.0 + 3.0 * m)
        * ((2.0 - 3.0 * m) * l6 + 6.0 * l2 + 4.0 + 3.0 * m)
        / (36.0 * l4);
    [m1, m2, det_jacobian_radial(m, l)]
}

/// Closed-form first and second leading minors of the stress Jacobian at a
/// two-equal-stretch point (l1, l1, l2).
pub fn minors_two_equal(m: f64, l1: f64, l2: f64) -> [f64; 2] {
    let l1sq = l1 * l1;
    let l1q = l1sq * l1sq;
    let m1 = (m / 4.0 - 1.0 / 6.0) * (2.0 * l1sq * l2 * l2 + 2.0 / l1sq) + 1.0 / l1sq + 1.0;
    let p = (3.0 * m - 2.0) * l1q * l2 * l2;
    let m2 =
        -(p - 3.0 * m - 6.0 * l1sq - 4.0) * (3.0 * p + 3.0 * m + 6.0 * l1sq + 4.0) / (36.0 * l1q);
    [m1, m2]
}

/// Matrix-level Biot stress
/// `T(U) = U + [(M/2 - 1/3)(det U - 1/det U) - 1/det U] · det U · U⁻¹`,
/// eigen-consistent with [`principal_biot`] applied to the eigenvalues of U.
pub fn biot_matrix(m: f64, u: &SymMat3) -> Result<SymMat3> {
    let (evals, _) = u.eigen();
    if evals[2] <= 0.0 {
        return Err(Error::NotPositiveDefinite { smallest: evals[2] });
    }
    let d = u.det();
    let coef = ((m / 2.0 - 1.0 / 3.0) * (d - 1.0 / d) - 1.0 / d) * d;
    let inv = u.inverse().expect("positive definite matrix is invertible");
    Ok(u.add(&inv.scale(coef)))
}

/// Deformation gradient: an arbitrary 3×3 matrix with positive determinant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeformationGradient {
    f: Mat3,
}

impl DeformationGradient {
    pub fn new(f: Mat3) -> Result<Self> {
        let det = f.det();
        if !(det.is_finite() && det > 0.0) {
            return Err(Error::NonPositiveDeterminant { det });
        }
        Ok(Self { f })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.f
    }

    pub fn det(&self) -> f64 {
        self.f.det()
    }
}

/// First Piola–Kirchhoff stress
/// `S1 = F + [(M/2 - 1/3)(J - 1/J) - 1/J] · Cof F` with `J = det F`.
///
/// For a symmetric positive definite F this coincides with [`biot_matrix`];
/// in general `Rᵀ S1(R U)` recovers the Biot stress of U for any rotation R.
pub fn first_piola(m: f64, f: &DeformationGradient) -> Mat3 {
    let j = f.det();
    let coef = (m / 2.0 - 1.0 / 3.0) * (j - 1.0 / j) - 1.0 / j;
    let cof = f.matrix().cofactor();
    let mut out = *f.matrix();
    for i in 0..3 {
        for k in 0..3 {
            out.rows[i][k] += coef * cof.rows[i][k];
        }
    }
    out
}

/// Convenience check that `u` (symmetric) is positive definite within `tol`.
pub fn is_admissible_stretch_tensor(u: &SymMat3, tol: f64) -> bool {
    crate::tensor::definiteness(u, tol) == Definiteness::PositiveDefinite
}
