//! The compressible Neo-Hooke energy family `W = mu/2 ||F||^2 + h(det F)`,
//! its Ciarlet–Geymonat volumetric part, the principal-stretch energy, and
//! sampled admissibility checks for a unique equitriaxial response.
//!
//! All energies are mu-normalized: the one-parameter family is driven by the
//! stiffness ratio `M = (lambda + 2*mu/3)/mu > 2/3` alone, and physical units
//! are recovered by multiplying by mu at the application boundary.

use crate::{Error, Result};

/// Shear modulus, second Lamé parameter and the derived stiffness ratio
/// `M = (lambda + 2*mu/3)/mu`. Both moduli must be positive, which forces
/// `M > 2/3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaterialParams {
    mu: f64,
    lambda: f64,
    m: f64,
}

impl MaterialParams {
    pub fn from_lame(mu: f64, lambda: f64) -> Result<Self> {
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::ParameterDomain(format!(
                "shear modulus mu must be positive and finite (got {mu})"
            )));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::ParameterDomain(format!(
                "Lame parameter lambda must be positive and finite (got {lambda})"
            )));
        }
        let m = (lambda + 2.0 * mu / 3.0) / mu;
        Ok(Self { mu, lambda, m })
    }

    /// Builds the normalized material (mu = 1) directly from the stiffness
    /// ratio. Fails unless `m > 2/3`.
    pub fn from_stiffness_ratio(m: f64) -> Result<Self> {
        check_stiffness_ratio(m)?;
        Ok(Self {
            mu: 1.0,
            lambda: m - 2.0 / 3.0,
            m,
        })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn stiffness_ratio(&self) -> f64 {
        self.m
    }
}

/// Guard used by every operation that takes a bare stiffness ratio.
pub fn check_stiffness_ratio(m: f64) -> Result<()> {
    if m.is_finite() && m > 2.0 / 3.0 {
        Ok(())
    } else {
        Err(Error::ParameterDomain(format!(
            "stiffness ratio M = (lambda + 2*mu/3)/mu must exceed 2/3 (got {m})"
        )))
    }
}

/// Ordered triple of positive principal stretches (the singular values of the
/// right stretch tensor).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalStretches {
    l1: f64,
    l2: f64,
    l3: f64,
}

impl PrincipalStretches {
    pub fn new(l1: f64, l2: f64, l3: f64) -> Result<Self> {
        for (name, v) in [("l1", l1), ("l2", l2), ("l3", l3)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::ParameterDomain(format!(
                    "principal stretch {name} must be positive and finite (got {v})"
                )));
            }
        }
        Ok(Self { l1, l2, l3 })
    }

    /// Equitriaxial state (l, l, l).
    pub fn radial(l: f64) -> Result<Self> {
        Self::new(l, l, l)
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    pub fn l2(&self) -> f64 {
        self.l2
    }

    pub fn l3(&self) -> f64 {
        self.l3
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.l1, self.l2, self.l3]
    }

    pub fn from_array(a: [f64; 3]) -> Result<Self> {
        Self::new(a[0], a[1], a[2])
    }

    /// Applies an index permutation; handy for symmetry tests.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        let a = self.as_array();
        Self {
            l1: a[perm[0]],
            l2: a[perm[1]],
            l3: a[perm[2]],
        }
    }

    pub fn sum(&self) -> f64 {
        self.l1 + self.l2 + self.l3
    }

    /// The volume ratio `J = l1 l2 l3`, multiplied in sorted order so the
    /// result is bit-identical under any permutation of the stretches.
    pub fn volume_ratio(&self) -> f64 {
        let mut a = self.as_array();
        a.sort_by(|x, y| y.partial_cmp(x).unwrap());
        a[0] * a[1] * a[2]
    }
}

/// A differentiable volumetric energy `h` on (0, ∞), mu-normalized, with
/// analytic first and second derivatives. Analytic derivatives (rather than
/// numerical ones) are required because the bifurcation analysis depends on
/// exact sign decisions.
pub trait VolumetricEnergy {
    fn value(&self, x: f64) -> f64;
    fn d1(&self, x: f64) -> f64;
    fn d2(&self, x: f64) -> f64;
}

/// The mu-normalized Ciarlet–Geymonat volumetric function
/// `h(x) = -ln x + (M/4 - 1/6) (x^2 - 2 ln x - 1)`.
///
/// Convex on (0, ∞) for every admissible `M`, with `h'(1) = -1` so the
/// reference configuration is stress free.
#[derive(Debug, Clone, Copy)]
pub struct CiarletGeymonat {
    /// M/4 - 1/6, positive for M > 2/3.
    coeff: f64,
}

impl CiarletGeymonat {
    pub fn new(m: f64) -> Result<Self> {
        check_stiffness_ratio(m)?;
        Ok(Self {
            coeff: m / 4.0 - 1.0 / 6.0,
        })
    }
}

impl VolumetricEnergy for CiarletGeymonat {
    fn value(&self, x: f64) -> f64 {
        -x.ln() + self.coeff * (x * x - 2.0 * x.ln() - 1.0)
    }

    fn d1(&self, x: f64) -> f64 {
        -1.0 / x + 2.0 * self.coeff * (x - 1.0 / x)
    }

    fn d2(&self, x: f64) -> f64 {
        1.0 / (x * x) + 2.0 * self.coeff * (1.0 + 1.0 / (x * x))
    }
}

/// The mu-normalized energy in principal stretches,
/// `g = 1/2 [ (3M-2)/6 (J^2 - 2 ln J - 1) - 2 ln J + l1^2 + l2^2 + l3^2 ]`
/// with `J = l1 l2 l3`. Permutation symmetric to the bit (the volume ratio
/// is accumulated in sorted order); `g(1,1,1) = 3/2`.
pub fn energy_principal(m: f64, s: &PrincipalStretches) -> f64 {
    let mut a = s.as_array();
    a.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let j = a[0] * a[1] * a[2];
    let log_j = j.ln();
    0.5 * ((3.0 * m - 2.0) / 6.0 * (j * j - 2.0 * log_j - 1.0) - 2.0 * log_j
        + a[0] * a[0]
        + a[1] * a[1]
        + a[2] * a[2])
}

/// The scalar equitriaxial response `x^(1/3) + h'(x) x^(2/3)` whose level sets
/// in the load give the radial solutions (x = det F).
pub fn radial_scalar_response(h: &dyn VolumetricEnergy, x: f64) -> f64 {
    let c = x.cbrt();
    c + h.d1(x) * c * c
}

/// Analytic derivative of [`radial_scalar_response`] with respect to x.
pub fn radial_response_slope(h: &dyn VolumetricEnergy, x: f64) -> f64 {
    let c = x.cbrt();
    1.0 / (3.0 * c * c) + h.d2(x) * c * c + 2.0 / 3.0 * h.d1(x) / c
}

/// Sampled evidence for the conditions guaranteeing a unique radial solution
/// at every load: positive slope of the scalar response everywhere, and
/// divergence of the response toward both ends of the domain.
///
/// The divergence flags are heuristic by design: they report a monotone trend
/// of the response over the outermost decade of samples, not a proof.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniqueRadialReport {
    pub derivative_positive_everywhere: bool,
    pub lower_divergence: bool,
    pub upper_divergence: bool,
    pub samples: usize,
    pub domain: (f64, f64),
}

/// Samples the response slope on a log-spaced grid over `domain` and fills a
/// [`UniqueRadialReport`]. Fails when `h` evaluates to a non-finite value.
pub fn check_unique_radial_conditions(
    h: &dyn VolumetricEnergy,
    domain: (f64, f64),
    n_samples: usize,
) -> Result<UniqueRadialReport> {
    let (lo, hi) = domain;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
        return Err(Error::ParameterDomain(format!(
            "sampling domain must satisfy 0 < lo < hi (got [{lo}, {hi}])"
        )));
    }
    if n_samples < 2 {
        return Err(Error::ParameterDomain(format!(
            "need at least 2 samples (got {n_samples})"
        )));
    }

    let log_lo = lo.ln();
    let log_hi = hi.ln();
    let mut xs = Vec::with_capacity(n_samples);
    let mut responses = Vec::with_capacity(n_samples);
    let mut all_slopes_positive = true;
    for i in 0..n_samples {
        let t = i as f64 / (n_samples - 1) as f64;
        let x = (log_lo + t * (log_hi - log_lo)).exp();
        let value = radial_scalar_response(h, x);
        let slope = radial_response_slope(h, x);
        if !value.is_finite() || !slope.is_finite() {
            return Err(Error::NonFiniteEvaluation { x });
        }
        all_slopes_positive &= slope > 0.0;
        xs.push(x);
        responses.push(value);
    }

    // monotone trend across the outermost decade of samples at each end
    let increasing_on = |idx: &[usize]| idx.windows(2).all(|w| responses[w[1]] > responses[w[0]]);
    let lower_idx: Vec<usize> = (0..n_samples).filter(|&i| xs[i] <= lo * 10.0).collect();
    let upper_idx: Vec<usize> = (0..n_samples).filter(|&i| xs[i] >= hi / 10.0).collect();
    let lower_divergence = lower_idx.len() >= 2 && increasing_on(&lower_idx);
    let upper_divergence = upper_idx.len() >= 2 && increasing_on(&upper_idx);

    Ok(UniqueRadialReport {
        derivative_positive_everywhere: all_slopes_positive,
        lower_divergence,
        upper_divergence,
        samples: n_samples,
        domain,
    })
}
