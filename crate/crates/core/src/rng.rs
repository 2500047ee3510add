//! Small deterministic PRNG (SplitMix64) plus sampling helpers used by the
//! randomized scans and the verification suite. Kept in-crate so that seeded
//! output is bit-stable across builds and dependency bumps.

use crate::material::PrincipalStretches;
use crate::tensor::{conjugate, Rotation3, SymMat3};

/// SplitMix64: tiny, full-period, well-mixed 64-bit generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// Random proper rotation from a uniform axis direction and angle.
pub fn random_rotation(rng: &mut SplitMix64) -> Rotation3 {
    loop {
        let axis = [
            rng.uniform(-1.0, 1.0),
            rng.uniform(-1.0, 1.0),
            rng.uniform(-1.0, 1.0),
        ];
        let n2 = axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2];
        if !(1e-6..=1.0).contains(&n2) {
            continue;
        }
        let angle = rng.uniform(0.0, 2.0 * std::f64::consts::PI);
        if let Ok(q) = Rotation3::from_axis_angle(axis, angle) {
            return q;
        }
    }
}

/// Random symmetric matrix with entries in [-1, 1], scaled by `scale`.
pub fn random_symmetric(rng: &mut SplitMix64, scale: f64) -> SymMat3 {
    SymMat3::new(
        scale * rng.uniform(-1.0, 1.0),
        scale * rng.uniform(-1.0, 1.0),
        scale * rng.uniform(-1.0, 1.0),
        scale * rng.uniform(-1.0, 1.0),
        scale * rng.uniform(-1.0, 1.0),
        scale * rng.uniform(-1.0, 1.0),
    )
}

/// Random symmetric positive definite matrix with eigenvalues in [lo, hi].
pub fn random_spd(rng: &mut SplitMix64, lo: f64, hi: f64) -> SymMat3 {
    let q = random_rotation(rng);
    let d = SymMat3::diag(
        rng.uniform(lo, hi),
        rng.uniform(lo, hi),
        rng.uniform(lo, hi),
    );
    conjugate(&q, &d)
}

/// Random stretch triple with each component uniform in [lo, hi].
pub fn random_stretches(rng: &mut SplitMix64, lo: f64, hi: f64) -> PrincipalStretches {
    PrincipalStretches::new(
        rng.uniform(lo, hi),
        rng.uniform(lo, hi),
        rng.uniform(lo, hi),
    )
    .expect("positive bounds yield positive stretches")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn uniform_stays_in_range() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..1000 {
            let x = rng.uniform(0.3, 3.0);
            assert!((0.3..3.0).contains(&x));
        }
    }

    #[test]
    fn random_rotation_is_orthonormal() {
        let mut rng = SplitMix64::new(1);
        for _ in 0..20 {
            let q = random_rotation(&mut rng);
            let gram = q.matrix().transpose().mul(q.matrix());
            let err = gram.sub(&crate::tensor::Mat3::identity()).frobenius_norm();
            assert!(err <= 1e-12, "orthogonality error {err}");
            assert!((q.matrix().det() - 1.0).abs() <= 1e-12);
        }
    }
}
