//! Minimal symmetric 3×3 matrix algebra: eigendecomposition, rotations,
//! conjugation and definiteness tests.
//!
//! Everything here is specific to 3×3; there is no ambition toward general
//! linear algebra. Eigenvalues are computed by cyclic Jacobi sweeps, which for
//! a 3×3 symmetric matrix reach machine precision in a handful of sweeps and
//! keep eigenvalue signs trustworthy near definiteness boundaries.

use crate::{Error, Result};

/// A real symmetric 3×3 matrix stored as its six independent entries, so the
/// representation is symmetric by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymMat3 {
    pub xx: f64,
    pub yy: f64,
    pub zz: f64,
    pub xy: f64,
    pub xz: f64,
    pub yz: f64,
}

impl SymMat3 {
    pub const fn new(xx: f64, yy: f64, zz: f64, xy: f64, xz: f64, yz: f64) -> Self {
        Self {
            xx,
            yy,
            zz,
            xy,
            xz,
            yz,
        }
    }

    pub const fn diag(a: f64, b: f64, c: f64) -> Self {
        Self::new(a, b, c, 0.0, 0.0, 0.0)
    }

    pub const fn identity() -> Self {
        Self::diag(1.0, 1.0, 1.0)
    }

    pub const fn zero() -> Self {
        Self::diag(0.0, 0.0, 0.0)
    }

    /// Symmetrizes an arbitrary 3×3 matrix: (A + Aᵀ)/2.
    pub fn from_mat3_symmetrized(m: &Mat3) -> Self {
        let a = &m.rows;
        Self::new(
            a[0][0],
            a[1][1],
            a[2][2],
            0.5 * (a[0][1] + a[1][0]),
            0.5 * (a[0][2] + a[2][0]),
            0.5 * (a[1][2] + a[2][1]),
        )
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match (i.min(j), i.max(j)) {
            (0, 0) => self.xx,
            (1, 1) => self.yy,
            (2, 2) => self.zz,
            (0, 1) => self.xy,
            (0, 2) => self.xz,
            (1, 2) => self.yz,
            _ => panic!("index out of range for 3x3 matrix: ({i}, {j})"),
        }
    }

    pub fn to_mat3(&self) -> Mat3 {
        Mat3::from_rows([
            [self.xx, self.xy, self.xz],
            [self.xy, self.yy, self.yz],
            [self.xz, self.yz, self.zz],
        ])
    }

    pub fn trace(&self) -> f64 {
        self.xx + self.yy + self.zz
    }

    pub fn det(&self) -> f64 {
        self.leading_minors()[2]
    }

    /// Leading principal minors `[m1, m2, m3]`; `m3` is the determinant.
    pub fn leading_minors(&self) -> [f64; 3] {
        let m1 = self.xx;
        let m2 = self.xx * self.yy - self.xy * self.xy;
        let m3 = self.xx * (self.yy * self.zz - self.yz * self.yz)
            - self.xy * (self.xy * self.zz - self.yz * self.xz)
            + self.xz * (self.xy * self.yz - self.yy * self.xz);
        [m1, m2, m3]
    }

    pub fn frobenius_norm(&self) -> f64 {
        (self.xx * self.xx
            + self.yy * self.yy
            + self.zz * self.zz
            + 2.0 * (self.xy * self.xy + self.xz * self.xz + self.yz * self.yz))
            .sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.xx + other.xx,
            self.yy + other.yy,
            self.zz + other.zz,
            self.xy + other.xy,
            self.xz + other.xz,
            self.yz + other.yz,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.xx - other.xx,
            self.yy - other.yy,
            self.zz - other.zz,
            self.xy - other.xy,
            self.xz - other.xz,
            self.yz - other.yz,
        )
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(
            s * self.xx,
            s * self.yy,
            s * self.zz,
            s * self.xy,
            s * self.xz,
            s * self.yz,
        )
    }

    /// Inverse via the adjugate; `None` when the determinant vanishes.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        let c00 = self.yy * self.zz - self.yz * self.yz;
        let c11 = self.xx * self.zz - self.xz * self.xz;
        let c22 = self.xx * self.yy - self.xy * self.xy;
        let c01 = -(self.xy * self.zz - self.yz * self.xz);
        let c02 = self.xy * self.yz - self.yy * self.xz;
        let c12 = -(self.xx * self.yz - self.xy * self.xz);
        Some(Self::new(
            c00 / d,
            c11 / d,
            c22 / d,
            c01 / d,
            c02 / d,
            c12 / d,
        ))
    }

    /// Eigendecomposition by cyclic Jacobi sweeps.
    ///
    /// Returns `(e, q)` with eigenvalues sorted descending (ties keep the
    /// order in which the diagonalization produced them) and a rotation `q`
    /// such that `conjugate(&q, &SymMat3::diag(e[0], e[1], e[2]))`
    /// reconstructs `self`.
    #[allow(clippy::needless_range_loop)]
    pub fn eigen(&self) -> ([f64; 3], Rotation3) {
        let mut a = [
            [self.xx, self.xy, self.xz],
            [self.xy, self.yy, self.yz],
            [self.xz, self.yz, self.zz],
        ];
        // v accumulates the eigenvector columns: self = v * diag * v^T
        let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let scale = self.frobenius_norm().max(f64::MIN_POSITIVE);
        let stop = (f64::EPSILON * scale).powi(2);

        for _sweep in 0..32 {
            let off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
            if off <= stop {
                break;
            }
            for &(p, q) in &[(0usize, 1usize), (0, 2), (1, 2)] {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                let app = a[p][p];
                let aqq = a[q][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for r in 0..3 {
                    if r != p && r != q {
                        let arp = a[r][p];
                        let arq = a[r][q];
                        a[r][p] = arp - s * (arq + tau * arp);
                        a[p][r] = a[r][p];
                        a[r][q] = arq + s * (arp - tau * arq);
                        a[q][r] = a[r][q];
                    }
                }
                for r in 0..3 {
                    let vrp = v[r][p];
                    let vrq = v[r][q];
                    v[r][p] = c * vrp - s * vrq;
                    v[r][q] = s * vrp + c * vrq;
                }
            }
        }

        let mut order = [0usize, 1, 2];
        order.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).unwrap());
        let evals = [
            a[order[0]][order[0]],
            a[order[1]][order[1]],
            a[order[2]][order[2]],
        ];
        // rows of q are the eigenvectors, so self = q^T diag q
        let mut q = [[0.0; 3]; 3];
        for (row, &k) in order.iter().enumerate() {
            for i in 0..3 {
                q[row][i] = v[i][k];
            }
        }
        let mut q = Mat3::from_rows(q);
        if q.det() < 0.0 {
            for i in 0..3 {
                q.rows[2][i] = -q.rows[2][i];
            }
        }
        (evals, Rotation3 { m: q })
    }
}

/// Outcome of a definiteness test with an absolute eigenvalue tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefiniteBoundary,
    Indefinite,
}

/// Classifies `s` by its smallest eigenvalue: greater than `tol` is positive
/// definite, within `±tol` is on the semidefinite boundary, below `-tol` is
/// indefinite. `tol` must be nonnegative.
pub fn definiteness(s: &SymMat3, tol: f64) -> Definiteness {
    debug_assert!(tol >= 0.0);
    let (evals, _) = s.eigen();
    let smallest = evals[2];
    if smallest > tol {
        Definiteness::PositiveDefinite
    } else if smallest >= -tol {
        Definiteness::PositiveSemidefiniteBoundary
    } else {
        Definiteness::Indefinite
    }
}

/// Returns QᵀDQ, exactly symmetrized.
pub fn conjugate(q: &Rotation3, d: &SymMat3) -> SymMat3 {
    let qt = q.m.transpose();
    let out = qt.mul(&d.to_mat3()).mul(&q.m);
    SymMat3::from_mat3_symmetrized(&out)
}

/// A plain 3×3 matrix with row-major storage. Just enough operations for
/// polar/rotation bookkeeping; not a general linear-algebra type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3 {
    pub rows: [[f64; 3]; 3],
}

impl Mat3 {
    pub const fn from_rows(rows: [[f64; 3]; 3]) -> Self {
        Self { rows }
    }

    pub const fn identity() -> Self {
        Self::from_rows([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn transpose(&self) -> Self {
        let a = &self.rows;
        Self::from_rows([
            [a[0][0], a[1][0], a[2][0]],
            [a[0][1], a[1][1], a[2][1]],
            [a[0][2], a[1][2], a[2][2]],
        ])
    }

    #[allow(clippy::needless_range_loop)]
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.rows[i][0] * other.rows[0][j]
                    + self.rows[i][1] * other.rows[1][j]
                    + self.rows[i][2] * other.rows[2][j];
            }
        }
        Self::from_rows(out)
    }

    #[allow(clippy::needless_range_loop)]
    pub fn sub(&self, other: &Self) -> Self {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = self.rows[i][j] - other.rows[i][j];
            }
        }
        Self::from_rows(out)
    }

    pub fn det(&self) -> f64 {
        let a = &self.rows;
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    }

    /// Cofactor matrix from 2×2 minors (Cof A = det(A)·A⁻ᵀ for invertible A),
    /// computed directly so it stays accurate near small determinants.
    pub fn cofactor(&self) -> Self {
        let a = &self.rows;
        Self::from_rows([
            [
                a[1][1] * a[2][2] - a[1][2] * a[2][1],
                -(a[1][0] * a[2][2] - a[1][2] * a[2][0]),
                a[1][0] * a[2][1] - a[1][1] * a[2][0],
            ],
            [
                -(a[0][1] * a[2][2] - a[0][2] * a[2][1]),
                a[0][0] * a[2][2] - a[0][2] * a[2][0],
                -(a[0][0] * a[2][1] - a[0][1] * a[2][0]),
            ],
            [
                a[0][1] * a[1][2] - a[0][2] * a[1][1],
                -(a[0][0] * a[1][2] - a[0][2] * a[1][0]),
                a[0][0] * a[1][1] - a[0][1] * a[1][0],
            ],
        ])
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.rows
            .iter()
            .flatten()
            .map(|x| x * x)
            .sum::<f64>()
            .sqrt()
    }
}

/// A proper rotation (QᵀQ = 𝟙, det Q = 1, both within 1e-12 when checked).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3 {
    m: Mat3,
}

const ROTATION_TOL: f64 = 1e-12;

impl Rotation3 {
    pub const fn identity() -> Self {
        Self {
            m: Mat3::identity(),
        }
    }

    /// Validates orthonormality and orientation before accepting the matrix.
    pub fn from_matrix(m: Mat3) -> Result<Self> {
        let gram = m.transpose().mul(&m);
        let ortho_err = gram.sub(&Mat3::identity()).frobenius_norm();
        let det = m.det();
        if ortho_err > ROTATION_TOL || (det - 1.0).abs() > ROTATION_TOL {
            return Err(Error::NotARotation { ortho_err, det });
        }
        Ok(Self { m })
    }

    /// Rodrigues rotation about `axis` (not necessarily normalized) by
    /// `angle` radians. Fails for a zero axis.
    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Result<Self> {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        if n == 0.0 || !n.is_finite() || !angle.is_finite() {
            return Err(Error::ParameterDomain(
                "rotation axis must be nonzero and finite".into(),
            ));
        }
        let (x, y, z) = (axis[0] / n, axis[1] / n, axis[2] / n);
        let (s, c) = angle.sin_cos();
        let t = 1.0 - c;
        let m = Mat3::from_rows([
            [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
            [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
            [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
        ]);
        Ok(Self { m })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn transpose(&self) -> Self {
        Self {
            m: self.m.transpose(),
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self {
            m: self.m.mul(&other.m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
        assert!((a - b).abs() <= tol, "{what}: {a} vs {b} (tol {tol})");
    }

    #[test]
    fn eigen_identity() {
        let (e, q) = SymMat3::identity().eigen();
        assert_eq!(e, [1.0, 1.0, 1.0]);
        let back = conjugate(&q, &SymMat3::diag(e[0], e[1], e[2]));
        assert!(back.sub(&SymMat3::identity()).frobenius_norm() <= 1e-14);
    }

    #[test]
    fn eigen_already_diagonal() {
        let (e, q) = SymMat3::diag(3.0, 2.0, 1.0).eigen();
        assert_eq!(e, [3.0, 2.0, 1.0]);
        let back = conjugate(&q, &SymMat3::diag(3.0, 2.0, 1.0));
        assert!(back.sub(&SymMat3::diag(3.0, 2.0, 1.0)).frobenius_norm() <= 1e-14);
    }

    #[test]
    fn eigen_recovers_conjugated_spectrum() {
        let q = Rotation3::from_axis_angle([1.0, 2.0, -0.5], 0.83).unwrap();
        let s = conjugate(&q, &SymMat3::diag(5.0, 2.0, 1.0));
        let (e, qe) = s.eigen();
        assert_close(e[0], 5.0, 1e-10, "largest eigenvalue");
        assert_close(e[1], 2.0, 1e-10, "middle eigenvalue");
        assert_close(e[2], 1.0, 1e-10, "smallest eigenvalue");
        let back = conjugate(&qe, &SymMat3::diag(e[0], e[1], e[2]));
        assert!(back.sub(&s).frobenius_norm() <= 1e-10);
    }

    #[test]
    fn conjugate_identity_cases() {
        let s = SymMat3::new(1.0, 2.0, 3.0, 0.1, -0.2, 0.3);
        assert_eq!(conjugate(&Rotation3::identity(), &s), s);
        let q = Rotation3::from_axis_angle([0.3, -1.0, 0.7], 2.1).unwrap();
        let iso = conjugate(&q, &SymMat3::identity());
        assert!(iso.sub(&SymMat3::identity()).frobenius_norm() <= 1e-14);
    }

    #[test]
    fn conjugate_preserves_eigenvalues() {
        let q = Rotation3::from_axis_angle([0.2, 0.9, -1.3], 1.234).unwrap();
        let (e, _) = conjugate(&q, &SymMat3::diag(1.0, 2.0, 3.0)).eigen();
        assert_close(e[0], 3.0, 1e-10, "e0");
        assert_close(e[1], 2.0, 1e-10, "e1");
        assert_close(e[2], 1.0, 1e-10, "e2");
    }

    #[test]
    fn definiteness_trivial_cases() {
        assert_eq!(
            definiteness(&SymMat3::identity(), 1e-9),
            Definiteness::PositiveDefinite
        );
        assert_eq!(
            definiteness(&SymMat3::diag(1.0, 1.0, 0.0), 1e-9),
            Definiteness::PositiveSemidefiniteBoundary
        );
        assert_eq!(
            definiteness(&SymMat3::diag(1.0, 1.0, -1.0), 1e-9),
            Definiteness::Indefinite
        );
    }

    #[test]
    fn rotation_validation_rejects_non_orthogonal() {
        let m = Mat3::from_rows([[1.0, 0.1, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(matches!(
            Rotation3::from_matrix(m),
            Err(Error::NotARotation { .. })
        ));
        // orthogonal but orientation-reversing
        let r = Mat3::from_rows([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, -1.0]]);
        assert!(matches!(
            Rotation3::from_matrix(r),
            Err(Error::NotARotation { .. })
        ));
    }

    #[test]
    fn inverse_of_diagonal() {
        let inv = SymMat3::diag(2.0, 4.0, 8.0).inverse().unwrap();
        assert_eq!(inv, SymMat3::diag(0.5, 0.25, 0.125));
        assert!(SymMat3::diag(1.0, 0.0, 1.0).inverse().is_none());
    }

    #[test]
    fn leading_minors_match_det() {
        let s = SymMat3::new(2.0, 3.0, 4.0, 0.5, -0.25, 0.75);
        let m = s.leading_minors();
        assert_close(m[2], s.to_mat3().det(), 1e-14, "minor3 vs det");
        assert_eq!(m[0], 2.0);
    }
}
