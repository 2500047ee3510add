//! Pointwise classification of the stress–stretch map: strong/semi
//! monotonicity via the eigenvalues of the stress Jacobian, energetic
//! stability via the pairwise ratio conditions plus Hessian semidefiniteness,
//! detection of the equitriaxial invertibility-loss stretch, and grid scans
//! over stretch space.

use crate::material::{check_stiffness_ratio, PrincipalStretches};
use crate::stress::{principal_biot, stress_jacobian};
use crate::{Error, Result};

/// Default absolute eigenvalue tolerance for classifications.
pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;

/// Relative stretch gap below which a pairwise difference quotient is
/// replaced by its analytic coincidence limit.
pub const COINCIDENCE_REL_TOL: f64 = 1e-8;

/// Monotonicity class of the stress–stretch map at a point, decided by the
/// smallest eigenvalue of the (symmetric) stress Jacobian against `±tol`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    StronglyMonotone,
    SemidefiniteBoundary,
    NotMonotone,
}

impl Monotonicity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Monotonicity::StronglyMonotone => "strongly_monotone",
            Monotonicity::SemidefiniteBoundary => "semidefinite_boundary",
            Monotonicity::NotMonotone => "not_monotone",
        }
    }
}

/// Sign attached to an ordered index pair in the stability ratio conditions:
/// +1 for (1,2), (2,3), (3,1) and -1 for the reversed pairs, so each
/// unordered pair contributes one difference quotient and one sum quotient.
pub fn epsilon_sign(i: usize, j: usize) -> f64 {
    debug_assert!(i < 3 && j < 3 && i != j);
    match (i, j) {
        (0, 1) | (1, 2) | (2, 0) => 1.0,
        _ => -1.0,
    }
}

/// Classifies the stress Jacobian at `s` by its smallest eigenvalue.
pub fn classify_monotonicity(m: f64, s: &PrincipalStretches, tol: f64) -> Monotonicity {
    debug_assert!(tol >= 0.0);
    let (evals, _) = stress_jacobian(m, s).eigen();
    let smallest = evals[2];
    if smallest > tol {
        Monotonicity::StronglyMonotone
    } else if smallest >= -tol {
        Monotonicity::SemidefiniteBoundary
    } else {
        Monotonicity::NotMonotone
    }
}

/// Energetic stability under dead loads: all six pairwise ratio conditions
/// `(T_i - eps_ij T_j)/(l_i - eps_ij l_j) >= 0` hold within `tol`, and the
/// Hessian of the principal-stretch energy is positive semidefinite within
/// `tol`. When two stretches coincide (relative gap below
/// [`COINCIDENCE_REL_TOL`]) the difference quotient is replaced by its
/// analytic limit, the difference of the corresponding Hessian entries.
pub fn energetic_stability(m: f64, s: &PrincipalStretches, tol: f64) -> bool {
    let l = s.as_array();
    let t = principal_biot(m, s).as_array();
    let jac = stress_jacobian(m, s);

    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let eps = epsilon_sign(i, j);
            let quotient =
                if eps > 0.0 && (l[i] - l[j]).abs() < COINCIDENCE_REL_TOL * l[i].max(l[j]) {
                    // coincidence limit of the difference quotient
                    jac.get(i, i) - jac.get(i, j)
                } else {
                    // for eps = -1 the denominator l_i + l_j never vanishes
                    (t[i] - eps * t[j]) / (l[i] - eps * l[j])
                };
            if quotient < -tol {
                return false;
            }
        }
    }

    let (evals, _) = jac.eigen();
    evals[2] >= -tol
}

/// The unique equitriaxial stretch at which the Biot stress map loses
/// differentiable invertibility: the positive root of
/// `(2 - 3M) l^6 + 6 l^2 + 4 + 3M = 0` beyond the stationary point of the
/// associated cubic in `x = l^2`.
///
/// Bracketing (geometric growth from the stationary point until a sign
/// change) followed by bisection and a Newton polish; the returned root has
/// |sextic residual| <= 1e-12 for moderate `M`.
pub fn invertibility_loss_radial(m: f64) -> Result<f64> {
    check_stiffness_ratio(m)?;
    let sextic = |l: f64| {
        let l2 = l * l;
        (2.0 - 3.0 * m) * l2 * l2 * l2 + 6.0 * l2 + 4.0 + 3.0 * m
    };
    let sextic_d = |l: f64| {
        let l2 = l * l;
        6.0 * (2.0 - 3.0 * m) * l2 * l2 * l + 12.0 * l
    };

    // stationary point of s(x) = (2-3M)x^3 + 6x + 4 + 3M in x = l^2
    let x0 = (2.0 / (3.0 * m - 2.0)).sqrt();
    let mut lo = x0.sqrt();
    debug_assert!(sextic(lo) > 0.0);
    let mut hi = lo;
    for _ in 0..200 {
        hi *= 2.0;
        if sextic(hi) < 0.0 {
            break;
        }
    }
    if sextic(hi) >= 0.0 {
        return Err(Error::Numerical(
            "failed to bracket the invertibility-loss stretch".into(),
        ));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-14 * mid {
            break;
        }
        if sextic(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut root = 0.5 * (lo + hi);
    for _ in 0..3 {
        let f = sextic(root);
        let df = sextic_d(root);
        if f == 0.0 || df == 0.0 {
            break;
        }
        let next = root - f / df;
        if !next.is_finite() || next <= 0.0 {
            break;
        }
        root = next;
    }
    Ok(root)
}

/// Full pointwise classification: monotonicity class, energetic stability,
/// and the numeric determinant and leading minors of the stress Jacobian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointClassification {
    pub monotonicity: Monotonicity,
    pub energetically_stable: bool,
    pub jacobian_det: f64,
    pub minors: [f64; 3],
}

pub fn classify_point(m: f64, s: &PrincipalStretches, tol: f64) -> PointClassification {
    let jac = stress_jacobian(m, s);
    let minors = jac.leading_minors();
    PointClassification {
        monotonicity: classify_monotonicity(m, s, tol),
        energetically_stable: energetic_stability(m, s, tol),
        jacobian_det: minors[2],
        minors,
    }
}

/// What a region scan classifies at each grid point. All fields of
/// [`PointClassification`] are always computed; the mode tags which family of
/// region figures the scan belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    Monotonicity,
    Stability,
    JacobianSign,
}

impl ScanMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScanMode::Monotonicity => "monotonicity",
            ScanMode::Stability => "stability",
            ScanMode::JacobianSign => "jacobian_sign",
        }
    }
}

/// Scan domain: either the (l1, l1, l2) plane slice used by the
/// two-equal-stretch analysis, or a full 3D box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScanDomain {
    TwoEqualSlice {
        l1: (f64, f64),
        l2: (f64, f64),
        resolution: (usize, usize),
    },
    Box3 {
        l1: (f64, f64),
        l2: (f64, f64),
        l3: (f64, f64),
        resolution: (usize, usize, usize),
    },
}

/// Hard cap on the number of grid points a single scan may produce.
pub const MAX_SCAN_POINTS: usize = 10_000_000;

fn check_axis(name: &str, range: (f64, f64), res: usize) -> Result<()> {
    let (lo, hi) = range;
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
        return Err(Error::ParameterDomain(format!(
            "{name} range must satisfy 0 < lo < hi (got [{lo}, {hi}])"
        )));
    }
    if res < 2 {
        return Err(Error::ParameterDomain(format!(
            "{name} resolution must be at least 2 (got {res})"
        )));
    }
    Ok(())
}

fn check_grid_size(total: Option<usize>) -> Result<usize> {
    match total {
        Some(n) if n <= MAX_SCAN_POINTS => Ok(n),
        _ => Err(Error::ParameterDomain(format!(
            "scan grid exceeds {MAX_SCAN_POINTS} points"
        ))),
    }
}

fn axis_value(range: (f64, f64), res: usize, i: usize) -> f64 {
    range.0 + (range.1 - range.0) * i as f64 / (res - 1) as f64
}

/// One classified grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionSample {
    pub stretches: PrincipalStretches,
    pub point: PointClassification,
}

/// A deterministic row-major grid of classified points.
#[derive(Debug, Clone)]
pub struct RegionScan {
    pub mode: ScanMode,
    pub tolerance: f64,
    pub samples: Vec<RegionSample>,
}

/// Classifies every grid point of `domain`, row-major (outer axis first).
pub fn region_scan(m: f64, domain: &ScanDomain, mode: ScanMode, tol: f64) -> Result<RegionScan> {
    check_stiffness_ratio(m)?;
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Error::ParameterDomain(format!(
            "classification tolerance must be nonnegative (got {tol})"
        )));
    }
    let mut samples = Vec::new();
    match *domain {
        ScanDomain::TwoEqualSlice { l1, l2, resolution } => {
            check_axis("l1", l1, resolution.0)?;
            check_axis("l2", l2, resolution.1)?;
            samples.reserve(check_grid_size(resolution.0.checked_mul(resolution.1))?);
            for i in 0..resolution.0 {
                let a = axis_value(l1, resolution.0, i);
                for j in 0..resolution.1 {
                    let b = axis_value(l2, resolution.1, j);
                    let s = PrincipalStretches::new(a, a, b)?;
                    samples.push(RegionSample {
                        stretches: s,
                        point: classify_point(m, &s, tol),
                    });
                }
            }
        }
        ScanDomain::Box3 {
            l1,
            l2,
            l3,
            resolution,
        } => {
            check_axis("l1", l1, resolution.0)?;
            check_axis("l2", l2, resolution.1)?;
            check_axis("l3", l3, resolution.2)?;
            samples.reserve(check_grid_size(
                resolution
                    .0
                    .checked_mul(resolution.1)
                    .and_then(|n| n.checked_mul(resolution.2)),
            )?);
            for i in 0..resolution.0 {
                let a = axis_value(l1, resolution.0, i);
                for j in 0..resolution.1 {
                    let b = axis_value(l2, resolution.1, j);
                    for k in 0..resolution.2 {
                        let c = axis_value(l3, resolution.2, k);
                        let s = PrincipalStretches::new(a, b, c)?;
                        samples.push(RegionSample {
                            stretches: s,
                            point: classify_point(m, &s, tol),
                        });
                    }
                }
            }
        }
    }
    Ok(RegionScan {
        mode,
        tolerance: tol,
        samples,
    })
}
