//! Equilibrium branches of the dead-loaded cube for the one-parameter
//! Neo-Hooke family: the always-present equitriaxial (radial) branch, the two
//! non-radial branches with two equal stretches, the bifurcation and onset
//! thresholds, a damped Newton solver for the full nonlinear system, branch
//! tracing over the load, and total-energy comparison.
//!
//! Notation: `alpha` is the (mu-normalized) magnitude of the equal normal
//! dead loads; `beta` denotes an equitriaxial stretch.

use crate::criteria::{
    classify_monotonicity, energetic_stability, invertibility_loss_radial, Monotonicity,
    DEFAULT_CLASSIFY_TOL,
};
use crate::material::{check_stiffness_ratio, energy_principal, PrincipalStretches};
use crate::rng::SplitMix64;
use crate::stress::{principal_biot, stress_jacobian};
use crate::{Error, Result};

/// Tolerance on |alpha - alpha_flat| inside which the onset is treated as the
/// single-solution case.
pub const ONSET_TOL: f64 = 1e-8;

/// Two solution triples are matched to the same branch when their descending
/// stretch triples agree within this tolerance.
pub const CLUSTER_TOL: f64 = 1e-4;

/// Hard cap on the number of load values a single trace may visit.
pub const MAX_TRACE_POINTS: usize = 1_000_000;

/// Radial stress response `f(beta) = ((3M-2) beta^6 + 6 beta^2 - 4 - 3M)/(6 beta)`:
/// the common principal Biot stress of the equitriaxial state. Strictly
/// increasing and surjective onto the reals, with `f(1) = 0`.
pub fn f_biot(m: f64, beta: f64) -> f64 {
    let b2 = beta * beta;
    ((3.0 * m - 2.0) * b2 * b2 * b2 + 6.0 * b2 - 4.0 - 3.0 * m) / (6.0 * beta)
}

fn f_biot_d(m: f64, beta: f64) -> f64 {
    let b2 = beta * beta;
    5.0 * (3.0 * m - 2.0) / 6.0 * b2 * b2 + 1.0 + (4.0 + 3.0 * m) / (6.0 * b2)
}

/// The unique equitriaxial stretch with `f_biot(m, beta) = alpha`, for any
/// real load. Bracketing by doubling/halving from 1, bisection, then Newton
/// polish; the residual is driven to ~1e-15 relative.
pub fn radial_solution(m: f64, alpha: f64) -> Result<f64> {
    check_stiffness_ratio(m)?;
    if !alpha.is_finite() {
        return Err(Error::ParameterDomain(format!(
            "load magnitude must be finite (got {alpha})"
        )));
    }
    if alpha == 0.0 {
        return Ok(1.0);
    }
    let (mut lo, mut hi) = if alpha > 0.0 {
        let mut hi = 1.0;
        for _ in 0..200 {
            hi *= 2.0;
            if f_biot(m, hi) >= alpha {
                break;
            }
        }
        (1.0, hi)
    } else {
        let mut lo = 1.0;
        for _ in 0..200 {
            lo *= 0.5;
            if f_biot(m, lo) <= alpha {
                break;
            }
        }
        (lo, 1.0)
    };
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-14 * mid {
            break;
        }
        if f_biot(m, mid) < alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut beta = 0.5 * (lo + hi);
    for _ in 0..4 {
        let r = f_biot(m, beta) - alpha;
        if r == 0.0 {
            break;
        }
        let next = beta - r / f_biot_d(m, beta);
        if !next.is_finite() || next <= 0.0 {
            break;
        }
        beta = next;
    }
    Ok(beta)
}

/// The companion stretch of a two-equal-stretch equilibrium: for a given l1,
/// the positive root of `(3M-2) l1^4 l2^2 - 6 l1 l2 - (3M + 4) = 0`, in
/// closed form
/// `l2 = (sqrt((9M^2 + 6M - 8) l1^4 + 9 l1^2) + 3 l1) / ((3M-2) l1^4)`.
pub fn branch_lambda2(m: f64, l1: f64) -> f64 {
    let a = 9.0 * m * m + 6.0 * m - 8.0;
    let b = 3.0 * m - 2.0;
    let l1sq = l1 * l1;
    let l1q = l1sq * l1sq;
    ((a * l1q + 9.0 * l1sq).sqrt() + 3.0 * l1) / (b * l1q)
}

/// The load carried by the two-equal-stretch branch as a function of l1:
/// `ell(l1) = (sqrt((9M^2 + 6M - 8) l1^4 + 9 l1^2) + (3M-2) l1^5 + 3 l1) / ((3M-2) l1^4)`,
/// which equals `l1 + branch_lambda2(m, l1)`. Convex, diverging at both ends
/// of (0, inf).
pub fn ell(m: f64, l1: f64) -> f64 {
    let a = 9.0 * m * m + 6.0 * m - 8.0;
    let b = 3.0 * m - 2.0;
    let l1sq = l1 * l1;
    let l1q = l1sq * l1sq;
    ((a * l1q + 9.0 * l1sq).sqrt() + b * l1q * l1 + 3.0 * l1) / (b * l1q)
}

/// Analytic derivative of [`ell`].
pub fn ell_slope(m: f64, l1: f64) -> f64 {
    let a = 9.0 * m * m + 6.0 * m - 8.0;
    let b = 3.0 * m - 2.0;
    let l1sq = l1 * l1;
    let l1q = l1sq * l1sq;
    let s = (a * l1q + 9.0 * l1sq).sqrt();
    let s_d = (2.0 * a * l1sq * l1 + 9.0 * l1) / s;
    s_d / (b * l1q) - 4.0 * s / (b * l1q * l1) + 1.0 - 9.0 / (b * l1q)
}

/// Minimizer of the convex branch-load function: `(lambda_flat, alpha_flat)`.
/// Golden-section search on a geometric bracket, then Newton polish on the
/// slope until |ell'(lambda_flat)| <= 1e-10.
pub fn ell_min(m: f64) -> Result<(f64, f64)> {
    check_stiffness_ratio(m)?;

    // geometric walk to bracket the minimum of a convex function
    let grow = 1.5f64;
    let mut center = 1.0f64;
    let mut f_center = ell(m, center);
    for _ in 0..400 {
        let left = center / grow;
        let right = center * grow;
        let f_left = ell(m, left);
        let f_right = ell(m, right);
        if f_left < f_center {
            center = left;
            f_center = f_left;
        } else if f_right < f_center {
            center = right;
            f_center = f_right;
        } else {
            break;
        }
    }
    let (mut lo, mut hi) = (center / grow, center * grow);

    let inv_phi = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = ell(m, c);
    let mut fd = ell(m, d);
    for _ in 0..200 {
        if hi - lo <= 1e-12 * hi {
            break;
        }
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = ell(m, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = ell(m, d);
        }
    }
    let mut flat = 0.5 * (lo + hi);
    for _ in 0..8 {
        let slope = ell_slope(m, flat);
        if slope.abs() <= 1e-12 {
            break;
        }
        let h = 1e-6 * flat;
        let curv = (ell_slope(m, flat + h) - ell_slope(m, flat - h)) / (2.0 * h);
        if !(curv.is_finite() && curv > 0.0) {
            break;
        }
        let next = flat - slope / curv;
        if !next.is_finite() || next <= 0.0 {
            break;
        }
        flat = next;
    }
    let slope = ell_slope(m, flat);
    if slope.abs() > 1e-10 {
        return Err(Error::Numerical(format!(
            "branch-onset minimizer did not flatten (|ell'| = {slope:.3e})"
        )));
    }
    Ok((flat, ell(m, flat)))
}

/// Which of the two non-radial branches a solution belongs to: the branch on
/// the side of the onset minimizer that contains the bifurcation stretch
/// (and so meets the radial line), or the branch on the other side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchSide {
    TowardBifurcation,
    AwayFromBifurcation,
}

/// A two-equal-stretch equilibrium triple tagged with its branch side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonRadialSolution {
    pub side: BranchSide,
    pub stretches: PrincipalStretches,
}

fn solve_ell_equals(m: f64, alpha: f64, mut lo: f64, mut hi: f64, decreasing: bool) -> f64 {
    // bisection on a monotone side of the convex branch-load function
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= 1e-14 * mid {
            break;
        }
        let above = ell(m, mid) > alpha;
        if above == decreasing {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut root = 0.5 * (lo + hi);
    for _ in 0..4 {
        let r = ell(m, root) - alpha;
        let d = ell_slope(m, root);
        if r == 0.0 || d == 0.0 {
            break;
        }
        let next = root - r / d;
        if !next.is_finite() || next <= 0.0 {
            break;
        }
        root = next;
    }
    root
}

/// The non-radial equilibria at load `alpha`: empty below the onset, one
/// triple at the onset (within [`ONSET_TOL`]), two triples above it. Every
/// returned triple satisfies the full three-equation system to ~1e-12.
pub fn nonradial_solutions(m: f64, alpha: f64) -> Result<Vec<NonRadialSolution>> {
    check_stiffness_ratio(m)?;
    if !alpha.is_finite() {
        return Err(Error::ParameterDomain(format!(
            "load magnitude must be finite (got {alpha})"
        )));
    }
    let (flat, alpha_flat) = ell_min(m)?;
    if alpha < alpha_flat - ONSET_TOL {
        return Ok(Vec::new());
    }
    let lstar = invertibility_loss_radial(m)?;
    let toward_is_left = lstar < flat;

    let make = |l1: f64, side: BranchSide| -> Result<NonRadialSolution> {
        let l2 = branch_lambda2(m, l1);
        let stretches = PrincipalStretches::new(l1, l1, l2)?;
        Ok(NonRadialSolution { side, stretches })
    };

    if alpha <= alpha_flat + ONSET_TOL {
        // the two branches coincide at the onset point
        return Ok(vec![make(flat, BranchSide::TowardBifurcation)?]);
    }

    // left side: ell decreases toward the minimizer
    let mut left_lo = flat;
    for _ in 0..400 {
        left_lo *= 0.5;
        if ell(m, left_lo) > alpha {
            break;
        }
    }
    let left = solve_ell_equals(m, alpha, left_lo, flat, true);

    // right side: ell increases away from the minimizer
    let mut right_hi = flat;
    for _ in 0..400 {
        right_hi *= 2.0;
        if ell(m, right_hi) > alpha {
            break;
        }
    }
    let right = solve_ell_equals(m, alpha, flat, right_hi, false);

    let (toward_l1, away_l1) = if toward_is_left {
        (left, right)
    } else {
        (right, left)
    };
    Ok(vec![
        make(toward_l1, BranchSide::TowardBifurcation)?,
        make(away_l1, BranchSide::AwayFromBifurcation)?,
    ])
}

/// The two critical loads of the cube problem for a given material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BifurcationReport {
    /// Equitriaxial stretch where differentiable invertibility is lost.
    pub lambda_star: f64,
    /// Load at which the non-radial branch crosses the radial one.
    pub alpha_star: f64,
    /// Stretch minimizing the branch-load function.
    pub lambda_flat: f64,
    /// Onset load: smallest load with a non-radial equilibrium.
    pub alpha_flat: f64,
    /// |sextic residual| at `lambda_star`.
    pub sextic_residual: f64,
    /// |ell(lambda_star) - alpha_star|: branch-crossing consistency.
    pub crossing_residual: f64,
    /// |ell'(lambda_flat)|: flatness of the onset minimizer.
    pub flat_slope: f64,
}

/// Assembles the bifurcation thresholds and enforces `alpha_flat <= alpha_star`.
pub fn bifurcation_point(m: f64) -> Result<BifurcationReport> {
    let lambda_star = invertibility_loss_radial(m)?;
    let alpha_star = f_biot(m, lambda_star);
    let (lambda_flat, alpha_flat) = ell_min(m)?;
    if alpha_flat > alpha_star {
        return Err(Error::Numerical(format!(
            "onset load {alpha_flat} exceeds bifurcation load {alpha_star}"
        )));
    }
    let l2 = lambda_star * lambda_star;
    let sextic_residual = ((2.0 - 3.0 * m) * l2 * l2 * l2 + 6.0 * l2 + 4.0 + 3.0 * m).abs();
    Ok(BifurcationReport {
        lambda_star,
        alpha_star,
        lambda_flat,
        alpha_flat,
        sextic_residual,
        crossing_residual: (ell(m, lambda_star) - alpha_star).abs(),
        flat_slope: ell_slope(m, lambda_flat).abs(),
    })
}

const NEWTON_MAX_ITER: usize = 100;
const NEWTON_TOL: f64 = 1e-12;
const NEWTON_ACCEPT: f64 = 1e-10;

fn solve_linear3(jac: &crate::tensor::SymMat3, rhs: [f64; 3]) -> Option<[f64; 3]> {
    let det = jac.det();
    let scale = jac.frobenius_norm().max(1.0);
    let (a, d) = if det.abs() < 1e-12 * scale * scale * scale {
        // near-singular: retry with a small diagonal shift
        let bump = 1e-8 * jac.trace().abs().max(1.0);
        let shifted = jac.add(&crate::tensor::SymMat3::diag(bump, bump, bump));
        let d = shifted.det();
        if d == 0.0 {
            return None;
        }
        (shifted, d)
    } else {
        (*jac, det)
    };
    let inv = [
        [
            a.yy * a.zz - a.yz * a.yz,
            a.xz * a.yz - a.xy * a.zz,
            a.xy * a.yz - a.xz * a.yy,
        ],
        [
            a.xz * a.yz - a.xy * a.zz,
            a.xx * a.zz - a.xz * a.xz,
            a.xy * a.xz - a.xx * a.yz,
        ],
        [
            a.xy * a.yz - a.xz * a.yy,
            a.xy * a.xz - a.xx * a.yz,
            a.xx * a.yy - a.xy * a.xy,
        ],
    ];
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = (inv[i][0] * rhs[0] + inv[i][1] * rhs[1] + inv[i][2] * rhs[2]) / d;
        if !out[i].is_finite() {
            return None;
        }
    }
    Some(out)
}

/// Damped Newton iteration on the residual `(T1 - alpha, T2 - alpha, T3 - alpha)`
/// using the analytic stress Jacobian. Steps that would leave the positive
/// octant are halved, as are steps that fail to reduce the residual. Reports
/// (rather than panics on) non-convergence after 100 iterations.
pub fn solve_full_system(
    m: f64,
    alpha: f64,
    initial: &PrincipalStretches,
) -> Result<PrincipalStretches> {
    check_stiffness_ratio(m)?;
    if !alpha.is_finite() {
        return Err(Error::ParameterDomain(format!(
            "load magnitude must be finite (got {alpha})"
        )));
    }
    let mut current = *initial;
    let mut residual_norm = principal_biot(m, &current).max_residual(alpha);

    for iteration in 0..NEWTON_MAX_ITER {
        if residual_norm <= NEWTON_TOL {
            return Ok(current);
        }
        let t = principal_biot(m, &current).as_array();
        let rhs = [alpha - t[0], alpha - t[1], alpha - t[2]];
        let jac = stress_jacobian(m, &current);
        let Some(step) = solve_linear3(&jac, rhs) else {
            return Err(Error::NoConvergence {
                iterations: iteration,
                residual: residual_norm,
            });
        };

        let base = current.as_array();
        let mut damping = 1.0f64;
        // keep the iterate strictly inside the positive octant
        for _ in 0..64 {
            let ok = (0..3).all(|i| base[i] + damping * step[i] > 0.0);
            if ok {
                break;
            }
            damping *= 0.5;
        }
        // backtrack until the residual decreases
        let mut accepted = None;
        while damping > 1e-12 {
            let candidate = [
                base[0] + damping * step[0],
                base[1] + damping * step[1],
                base[2] + damping * step[2],
            ];
            if candidate.iter().all(|&v| v > 0.0 && v.is_finite()) {
                let s =
                    PrincipalStretches::from_array(candidate).expect("candidate checked positive");
                let r = principal_biot(m, &s).max_residual(alpha);
                if r < residual_norm * (1.0 - 1e-4 * damping) || r <= NEWTON_TOL {
                    accepted = Some((s, r));
                    break;
                }
            }
            damping *= 0.5;
        }
        match accepted {
            Some((s, r)) => {
                current = s;
                residual_norm = r;
            }
            None => {
                return Err(Error::NoConvergence {
                    iterations: iteration,
                    residual: residual_norm,
                });
            }
        }
    }
    if residual_norm <= NEWTON_ACCEPT {
        Ok(current)
    } else {
        Err(Error::NoConvergence {
            iterations: NEWTON_MAX_ITER,
            residual: residual_norm,
        })
    }
}

/// Tally of a randomized search for equilibria with three distinct stretches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistinctScanReport {
    pub m: f64,
    pub alpha: f64,
    pub trials: usize,
    pub seed: u64,
    pub converged: usize,
    /// Converged solutions whose pairwise stretch gaps all exceed 1e-6.
    pub all_distinct_solutions: usize,
    pub radial_matches: usize,
    pub toward_matches: usize,
    pub away_matches: usize,
    pub unmatched: usize,
}

fn sorted_desc(s: &PrincipalStretches) -> [f64; 3] {
    let mut a = s.as_array();
    a.sort_by(|x, y| y.partial_cmp(x).unwrap());
    a
}

fn triples_match(a: [f64; 3], b: [f64; 3], tol: f64) -> bool {
    (0..3).all(|i| (a[i] - b[i]).abs() <= tol)
}

/// Runs [`solve_full_system`] from seeded random all-distinct starting points
/// in [0.3, 3]^3 and clusters the converged solutions against the known
/// radial and non-radial branches (triples compared sorted descending, so
/// permutations of one solution count as the same state).
pub fn distinct_stretch_scan(
    m: f64,
    alpha: f64,
    trials: usize,
    seed: u64,
) -> Result<DistinctScanReport> {
    check_stiffness_ratio(m)?;
    if trials == 0 {
        return Err(Error::ParameterDomain("need at least one trial".into()));
    }
    let radial = sorted_desc(&PrincipalStretches::radial(radial_solution(m, alpha)?)?);
    let nonradial = nonradial_solutions(m, alpha)?;
    let toward = nonradial
        .iter()
        .find(|s| s.side == BranchSide::TowardBifurcation)
        .map(|s| sorted_desc(&s.stretches));
    let away = nonradial
        .iter()
        .find(|s| s.side == BranchSide::AwayFromBifurcation)
        .map(|s| sorted_desc(&s.stretches));

    let mut rng = SplitMix64::new(seed);
    let mut report = DistinctScanReport {
        m,
        alpha,
        trials,
        seed,
        converged: 0,
        all_distinct_solutions: 0,
        radial_matches: 0,
        toward_matches: 0,
        away_matches: 0,
        unmatched: 0,
    };

    for _ in 0..trials {
        // draw an all-distinct starting point
        let start = loop {
            let a = rng.uniform(0.3, 3.0);
            let b = rng.uniform(0.3, 3.0);
            let c = rng.uniform(0.3, 3.0);
            if (a - b).abs() > 1e-3 && (b - c).abs() > 1e-3 && (a - c).abs() > 1e-3 {
                break PrincipalStretches::new(a, b, c).expect("in-range stretches");
            }
        };
        let Ok(solution) = solve_full_system(m, alpha, &start) else {
            continue;
        };
        report.converged += 1;
        let s = sorted_desc(&solution);
        let min_gap = (s[0] - s[1]).min(s[1] - s[2]);
        if min_gap > 1e-6 {
            report.all_distinct_solutions += 1;
        }
        if triples_match(s, radial, CLUSTER_TOL) {
            report.radial_matches += 1;
        } else if toward.is_some_and(|t| triples_match(s, t, CLUSTER_TOL)) {
            report.toward_matches += 1;
        } else if away.is_some_and(|t| triples_match(s, t, CLUSTER_TOL)) {
            report.away_matches += 1;
        } else {
            report.unmatched += 1;
        }
    }
    Ok(report)
}

/// Total potential energy per unit reference volume of a homogeneous state
/// under the equal normal dead loads: `g(l1,l2,l3) - alpha (l1 + l2 + l3)`.
pub fn total_energy_homogeneous(m: f64, s: &PrincipalStretches, alpha: f64) -> f64 {
    energy_principal(m, s) - alpha * s.sum()
}

/// A solved equilibrium with its classification and energy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionRecord {
    pub stretches: PrincipalStretches,
    /// max_i |T_i - alpha| at the recorded triple.
    pub residual: f64,
    pub monotonicity: Monotonicity,
    pub energetically_stable: bool,
    pub total_energy: f64,
    /// mu-normalized internal energy g at the triple.
    pub internal_energy: f64,
}

fn record(m: f64, alpha: f64, s: PrincipalStretches, tol: f64) -> SolutionRecord {
    SolutionRecord {
        stretches: s,
        residual: principal_biot(m, &s).max_residual(alpha),
        monotonicity: classify_monotonicity(m, &s, tol),
        energetically_stable: energetic_stability(m, &s, tol),
        total_energy: total_energy_homogeneous(m, &s, alpha),
        internal_energy: energy_principal(m, &s),
    }
}

/// All homogeneous equilibria at one load: the radial solution plus zero,
/// one, or two non-radial solutions (up to permutation).
#[derive(Debug, Clone, PartialEq)]
pub struct CubeSolutionSet {
    pub alpha: f64,
    pub radial: SolutionRecord,
    pub nonradial: Vec<(BranchSide, SolutionRecord)>,
}

/// Solves the cube problem at a single load and classifies every solution.
pub fn solve_cube(m: f64, alpha: f64, tol: f64) -> Result<CubeSolutionSet> {
    let beta = radial_solution(m, alpha)?;
    let radial = record(m, alpha, PrincipalStretches::radial(beta)?, tol);
    let nonradial = nonradial_solutions(m, alpha)?
        .into_iter()
        .map(|nr| (nr.side, record(m, alpha, nr.stretches, tol)))
        .collect();
    Ok(CubeSolutionSet {
        alpha,
        radial,
        nonradial,
    })
}

/// Solution sets over a strictly increasing load grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchTrace {
    pub records: Vec<CubeSolutionSet>,
}

/// Traces all branches over `alpha_min..=alpha_max` with the given step.
/// Grid values are computed as `alpha_min + k*step`, so the trace is
/// deterministic and the load column strictly increasing.
pub fn trace_branches(m: f64, alpha_min: f64, alpha_max: f64, step: f64) -> Result<BranchTrace> {
    trace_branches_with_tol(m, alpha_min, alpha_max, step, DEFAULT_CLASSIFY_TOL)
}

/// [`trace_branches`] with an explicit classification tolerance.
pub fn trace_branches_with_tol(
    m: f64,
    alpha_min: f64,
    alpha_max: f64,
    step: f64,
    tol: f64,
) -> Result<BranchTrace> {
    check_stiffness_ratio(m)?;
    if !(alpha_min.is_finite() && alpha_max.is_finite() && alpha_min < alpha_max) {
        return Err(Error::ParameterDomain(format!(
            "need alpha_min < alpha_max (got [{alpha_min}, {alpha_max}])"
        )));
    }
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::ParameterDomain(format!(
            "step must be positive (got {step})"
        )));
    }
    if (alpha_max - alpha_min) / step > MAX_TRACE_POINTS as f64 {
        return Err(Error::ParameterDomain(format!(
            "trace grid exceeds {MAX_TRACE_POINTS} points"
        )));
    }
    let mut records: Vec<CubeSolutionSet> = Vec::new();
    let mut k = 0u64;
    loop {
        let alpha = alpha_min + k as f64 * step;
        if alpha > alpha_max + 0.5 * step {
            break;
        }
        // a step below the float resolution of the range would repeat grid
        // values and break the strictly-increasing load contract
        if records.last().is_some_and(|r| r.alpha >= alpha) {
            return Err(Error::ParameterDomain(format!(
                "step {step} does not resolve the load range near alpha = {alpha}"
            )));
        }
        records.push(solve_cube(m, alpha, tol)?);
        k += 1;
    }
    Ok(BranchTrace { records })
}
