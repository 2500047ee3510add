//! Self-check suite behind the CLI `verify` command: runs the module
//! invariants (reconstruction, closed-form vs numeric agreement, oracle
//! consistency via finite differences, branch identities, containment
//! relations) at configurable sample counts with a fixed seed.

use crate::criteria::{
    classify_monotonicity, energetic_stability, epsilon_sign, invertibility_loss_radial,
    Monotonicity,
};
use crate::material::{
    check_unique_radial_conditions, energy_principal, CiarletGeymonat, PrincipalStretches,
    VolumetricEnergy,
};
use crate::rng::{random_rotation, random_spd, random_stretches, random_symmetric, SplitMix64};
use crate::solver::{
    bifurcation_point, distinct_stretch_scan, ell, f_biot, nonradial_solutions, radial_solution,
    BranchSide,
};
use crate::stress::{
    biot_matrix, first_piola, minors_radial, minors_two_equal, principal_biot, stress_jacobian,
    DeformationGradient,
};
use crate::tensor::{conjugate, definiteness, Definiteness, SymMat3};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub m: f64,
    pub seed: u64,
    pub quick: bool,
    pub tol: f64,
}

impl VerifyConfig {
    fn count(&self, full: usize) -> usize {
        if self.quick {
            (full / 10).max(5)
        } else {
            full
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub m: f64,
    pub seed: u64,
    pub quick: bool,
    pub tol: f64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_names(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect()
    }
}

fn scaled_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

/// Runs the whole suite. Every check is deterministic for a fixed config.
pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    let m = config.m;
    crate::material::check_stiffness_ratio(m)?;
    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool, detail: String| {
        checks.push(CheckResult {
            name,
            passed,
            detail,
        });
    };

    // eigendecomposition reconstructs random symmetric matrices
    {
        let mut rng = SplitMix64::new(config.seed);
        let n = config.count(1000);
        let mut worst = 0.0f64;
        for _ in 0..n {
            let s = random_symmetric(&mut rng, 2.0);
            let (e, q) = s.eigen();
            let back = conjugate(&q, &SymMat3::diag(e[0], e[1], e[2]));
            let err = back.sub(&s).frobenius_norm() / s.frobenius_norm().max(1.0);
            worst = worst.max(err);
        }
        push(
            "eigen_reconstruction",
            worst <= 1e-10,
            format!("worst relative reconstruction error {worst:.3e} over {n} matrices"),
        );
    }

    // conjugation preserves eigenvalues
    {
        let mut rng = SplitMix64::new(config.seed.wrapping_add(1));
        let n = config.count(100);
        let mut worst = 0.0f64;
        for _ in 0..n {
            let q = random_rotation(&mut rng);
            let d = SymMat3::diag(
                rng.uniform(-2.0, 2.0),
                rng.uniform(-2.0, 2.0),
                rng.uniform(-2.0, 2.0),
            );
            let mut want = [d.xx, d.yy, d.zz];
            want.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let (got, _) = conjugate(&q, &d).eigen();
            for i in 0..3 {
                worst = worst.max((got[i] - want[i]).abs());
            }
        }
        push(
            "conjugation_preserves_spectrum",
            worst <= 1e-10,
            format!("worst eigenvalue drift {worst:.3e} over {n} conjugations"),
        );
    }

    // eigenvalue definiteness test agrees with the Sylvester minor test
    {
        let mut rng = SplitMix64::new(config.seed.wrapping_add(2));
        let n = config.count(1000);
        let mut decisive = 0usize;
        let mut agree = true;
        for _ in 0..n {
            let s = random_symmetric(&mut rng, 2.0);
            let minors = s.leading_minors();
            if minors.iter().any(|v| v.abs() <= 1e-6) {
                continue;
            }
            decisive += 1;
            let sylvester_pd = minors.iter().all(|&v| v > 0.0);
            let eig_pd = definiteness(&s, 1e-9) == Definiteness::PositiveDefinite;
            agree &= sylvester_pd == eig_pd;
        }
        push(
            "definiteness_matches_sylvester",
            agree,
            format!("{decisive} decisive samples out of {n}"),
        );
    }

    // analytic volumetric derivatives match central differences
    {
        let h = CiarletGeymonat::new(m)?;
        let n = config.count(100);
        let mut worst = 0.0f64;
        for i in 0..n {
            let x = (1e-3f64.ln() + i as f64 / (n - 1) as f64 * (1e3f64 / 1e-3).ln()).exp();
            let step = 1e-6 * x;
            let fd1 = (h.value(x + step) - h.value(x - step)) / (2.0 * step);
            let fd2 = (h.d1(x + step) - h.d1(x - step)) / (2.0 * step);
            worst = worst.max(scaled_err(fd1, h.d1(x)));
            worst = worst.max(scaled_err(fd2, h.d2(x)));
        }
        push(
            "volumetric_derivatives",
            worst <= 1e-6,
            format!("worst scaled FD error {worst:.3e} at {n} log-spaced points"),
        );
    }

    // convexity of the volumetric part and unique-radial-response conditions
    {
        let h = CiarletGeymonat::new(m)?;
        let n = config.count(1000);
        let convex = (0..n).all(|i| {
            let x = (1e-3f64.ln() + i as f64 / (n - 1) as f64 * (1e3f64 / 1e-3).ln()).exp();
            h.d2(x) > 0.0
        });
        let report = check_unique_radial_conditions(&h, (1e-6, 1e6), n.max(100))?;
        push(
            "unique_radial_response",
            convex
                && report.derivative_positive_everywhere
                && report.lower_divergence
                && report.upper_divergence,
            format!(
                "h'' > 0: {convex}, slope > 0: {}, divergence: {}/{}",
                report.derivative_positive_everywhere,
                report.lower_divergence,
                report.upper_divergence
            ),
        );
    }

    // permutation symmetry of the energy and equivariance of the stresses
    {
        let perms = [
            [0usize, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut rng = SplitMix64::new(config.seed.wrapping_add(3));
        let n = config.count(100);
        let mut worst = 0.0f64;
        for _ in 0..n {
            let s = random_stretches(&mut rng, 0.4, 2.5);
            let g = energy_principal(m, &s);
            let t = principal_biot(m, &s).as_array();
            for p in perms {
                let sp = s.permuted(p);
                worst = worst.max(scaled_err(energy_principal(m, &sp), g));
                let tp = principal_biot(m, &sp).as_array();
                for i in 0..3 {
                    worst = worst.max(scaled_err(tp[i], t[p[i]]));
                }
            }
        }
        push(
            "permutation_symmetry",
            worst <= 1e-12,
            format!("worst scaled deviation {worst:.3e} over {n} points x 6 permutations"),
        );
    }

    // principal stresses are the gradient of the energy
    {
        let mut rng = SplitMix64::new(config.seed.wrapping_add(4));
        let n = config.count(100);
        let mut worst = 0.0f64;
        for _ in 0..n {
            let s = random_stretches(&mut rng, 0.5, 2.0);
            let t = principal_biot(m, &s).as_array();
            let a = s.as_array();
            for i in 0..3 {
                let h = 1e-6 * a[i].abs().max(1.0);
                let mut up = a;
                let mut dn = a;
                up[i] += h;
                dn[i] -= h;
                let fd = (energy_principal(m, &PrincipalStretches::from_array(up)?)
                    - energy_principal(m, &PrincipalStretches::from_array(dn)?))
                    / (2.0 * h);
                worst = worst.max(scaled_err(fd, t[i]));
            }
        }
        push(
            "stress_is_energy_gradient",
            worst <= 1e-6,
            format!("worst scaled FD error {worst:.3e} at {n} points"),
        );
    }

    // the stress Jacobian is the Hessian of the energy (differences of the
    // verified gradient, which the previous check ties to the energy)
    {
        let mut rng = SplitMix64::new(config.seed.wrapping_add(5));
        let n = config.count(100);
        let mut worst = 0.0f64;
        for _ in 0..n {
            let s = random_stretches(&mut rng, 0.5, 2.0);
            let jac = stress_jacobian(m, &s);
            let a = s.as_array();
            for j in 0..3 {
                let h = 1e-6 * a[j].abs().max(1.0);
                let mut up = a;
                let mut dn = a;
                up[j] += h;
                dn[j] -= h;
                let tu = principal_biot(m, &PrincipalStretches::from_array(up)?).as_array();
                let td = principal_biot(m, &PrincipalStretches::from_array(dn)?).as_array();
                for i in 0..3 {
                    let fd = (tu[i] - td[i]) / (2.0 * h);
                    worst = worst.max(scaled_err(fd, jac.get(i, j)));
                }
            }
        }
        push(
            "jacobian_is_energy_hessian",
            worst <= 1e-5,
            format!("worst scaled FD error {worst:.3e} at {n} points"),
        );
    }

    // isotropy of the matrix-level Biot stress
    {
        let mut rng = SplitMix64::new(config.seed.wrapping_add(6));
        let n = config.count(100);
        let mut worst = 0.0f64;
        for _ in 0..n {
            let q = random_rotation(&mut rng);
            let u = random_spd(&mut rng, 0.5, 2.5);
            let lhs = biot_matrix(m, &conjugate(&q, &u))?;
            let rhs = conjugate(&q, &biot_matrix(m, &u)?);
            worst = worst.max(lhs.sub(&rhs).frobenius_norm());
        }
        push(
            "biot_isotropy",
            worst <= 1e-10,
            format!("worst Frobenius deviation {worst:.3e} over {n} conjugations"),
        );
    }

    // polar consistency of the first Piola-Kirchhoff stress
    {
        let mut rng = SplitMix64::new(config.seed.wrapping_add(7));
        let n = config.count(100);
        let mut worst = 0.0f64;
        for _ in 0..n {
            let r = random_rotation(&mut rng);
            let u = random_spd(&mut rng, 0.5, 2.5);
            let f = DeformationGradient::new(r.matrix().mul(&u.to_mat3()))?;
            let recovered = r.matrix().transpose().mul(&first_piola(m, &f));
            let expected = biot_matrix(m, &u)?.to_mat3();
            worst = worst.max(recovered.sub(&expected).frobenius_norm());
        }
        push(
            "piola_polar_consistency",
            worst <= 1e-10,
            format!("worst Frobenius deviation {worst:.3e} over {n} decompositions"),
        );
    }

    // closed-form minors agree with numeric leading minors
    {
        let mut rng = SplitMix64::new(config.seed.wrapping_add(8));
        let n = config.count(100);
        let mut worst = 0.0f64;
        for _ in 0..n {
            let l = rng.uniform(0.4, 2.8);
            let closed = minors_radial(m, l);
            let numeric = stress_jacobian(m, &PrincipalStretches::radial(l)?).leading_minors();
            for i in 0..3 {
                worst = worst.max(scaled_err(closed[i], numeric[i]));
            }
            let l2 = rng.uniform(0.4, 2.8);
            let closed2 = minors_two_equal(m, l, l2);
            let numeric2 = stress_jacobian(m, &PrincipalStretches::new(l, l, l2)?).leading_minors();
            for i in 0..2 {
                worst = worst.max(scaled_err(closed2[i], numeric2[i]));
            }
        }
        push(
            "closed_form_minors",
            worst <= 1e-9,
            format!("worst scaled deviation {worst:.3e} over {n} points"),
        );
    }

    // epsilon sign table
    {
        let expected = [
            ((0usize, 1usize), 1.0),
            ((1, 2), 1.0),
            ((2, 0), 1.0),
            ((1, 0), -1.0),
            ((2, 1), -1.0),
            ((0, 2), -1.0),
        ];
        let ok = expected.iter().all(|&((i, j), v)| epsilon_sign(i, j) == v);
        push("epsilon_sign_table", ok, "6 ordered pairs".into());
    }

    // bifurcation identities: residuals and crossing
    {
        let report = bifurcation_point(m)?;
        let crossing = (ell(m, report.lambda_star) - f_biot(m, report.lambda_star)).abs();
        let ok = report.sextic_residual <= 1e-12
            && crossing <= 1e-6
            && report.alpha_flat <= report.alpha_star
            && report.flat_slope <= 1e-10;
        push(
            "bifurcation_identities",
            ok,
            format!(
                "sextic residual {:.3e}, crossing {:.3e}, onset {:.6} <= bifurcation {:.6}",
                report.sextic_residual, crossing, report.alpha_flat, report.alpha_star
            ),
        );
    }

    // convexity of the branch-load function on a log grid
    {
        let n = config.count(1000);
        let mut ok = true;
        let mut min_second = f64::INFINITY;
        for i in 0..n {
            let l = 0.1 * (10.0f64 / 0.1).powf(i as f64 / (n - 1) as f64);
            let h = 1e-4 * l;
            let second = (ell(m, l + h) - 2.0 * ell(m, l) + ell(m, l - h)) / (h * h);
            min_second = min_second.min(second);
            ok &= second > 0.0;
        }
        push(
            "branch_load_convexity",
            ok,
            format!("min finite-difference curvature {min_second:.3e} over {n} points"),
        );
    }

    // radial solution map is strictly increasing and residual-tight
    {
        let n = config.count(100);
        let mut ok = true;
        let mut prev = f64::NEG_INFINITY;
        let mut worst = 0.0f64;
        for i in 0..n {
            let alpha = -5.0 + 12.0 * i as f64 / (n - 1) as f64;
            let beta = radial_solution(m, alpha)?;
            ok &= beta > prev;
            prev = beta;
            worst = worst.max((f_biot(m, beta) - alpha).abs());
        }
        push(
            "radial_map_increasing",
            ok && worst <= 1e-12,
            format!("worst residual {worst:.3e} over {n} loads"),
        );
    }

    // non-radial solutions satisfy the full system; counts transition at onset
    {
        let report = bifurcation_point(m)?;
        let below = nonradial_solutions(m, report.alpha_flat - 0.1)?;
        let above = nonradial_solutions(m, report.alpha_flat + 0.1)?;
        let mut worst = 0.0f64;
        for s in &above {
            worst =
                worst.max(principal_biot(m, &s.stretches).max_residual(report.alpha_flat + 0.1));
        }
        push(
            "nonradial_residuals",
            below.is_empty() && above.len() == 2 && worst <= 1e-9,
            format!(
                "{} below onset, {} above, worst residual {worst:.3e}",
                below.len(),
                above.len()
            ),
        );
    }

    // stability region is contained in the monotone region (plane slice)
    {
        let res = if config.quick { 15 } else { 40 };
        let report = bifurcation_point(m)?;
        let hi = (report.lambda_flat * 1.5).max(3.0);
        let mut ok = true;
        let mut stable_points = 0usize;
        for i in 0..res {
            let a = 0.5 + (hi - 0.5) * i as f64 / (res - 1) as f64;
            for j in 0..res {
                let b = 0.5 + (hi - 0.5) * j as f64 / (res - 1) as f64;
                let s = PrincipalStretches::new(a, a, b)?;
                if energetic_stability(m, &s, config.tol) {
                    stable_points += 1;
                    ok &= classify_monotonicity(m, &s, config.tol) != Monotonicity::NotMonotone;
                }
            }
        }
        push(
            "stability_inside_monotonicity",
            ok && stable_points > 0,
            format!("{stable_points} stable points on a {res}x{res} slice grid"),
        );
    }

    // radial stability interval is [1, lambda_star] within 1e-3
    {
        let lstar = invertibility_loss_radial(m)?;
        let delta = 1e-3;
        let n = config.count(500);
        let mut ok = true;
        for i in 0..n {
            let l = 0.5 + (lstar + 0.5) * i as f64 / (n - 1) as f64;
            let stable = energetic_stability(m, &PrincipalStretches::radial(l)?, config.tol);
            if l < 1.0 - delta || l > lstar + delta {
                ok &= !stable;
            } else if l > 1.0 + delta && l < lstar - delta {
                ok &= stable;
            }
        }
        push(
            "radial_stability_interval",
            ok,
            format!("interval [1, {lstar:.6}] resolved at {n} samples"),
        );
    }

    // monotonicity dichotomy and stability equivalence on the two branches
    {
        let report = bifurcation_point(m)?;
        let mut ok = true;
        let n = if config.quick { 5 } else { 15 };
        for i in 0..n {
            let alpha = report.alpha_flat + 0.05 + 1.5 * i as f64 / (n - 1) as f64;
            for s in nonradial_solutions(m, alpha)? {
                let class = classify_monotonicity(m, &s.stretches, config.tol);
                let stable = energetic_stability(m, &s.stretches, config.tol);
                match s.side {
                    BranchSide::TowardBifurcation => {
                        ok &= class == Monotonicity::NotMonotone && !stable;
                    }
                    BranchSide::AwayFromBifurcation => {
                        ok &= class == Monotonicity::StronglyMonotone && stable;
                    }
                }
                ok &= stable == (class == Monotonicity::StronglyMonotone);
            }
        }
        push(
            "branch_dichotomy",
            ok,
            format!("{n} loads above onset, both branches classified"),
        );
    }

    // no all-distinct equilibria in a randomized search
    {
        let report = bifurcation_point(m)?;
        let trials = if config.quick { 20 } else { 60 };
        let scan = distinct_stretch_scan(m, report.alpha_star + 1.0, trials, config.seed)?;
        push(
            "distinct_stretch_exclusion",
            scan.all_distinct_solutions == 0 && scan.converged > 0 && scan.unmatched == 0,
            format!(
                "{} converged, {} all-distinct, {} unmatched over {trials} trials",
                scan.converged, scan.all_distinct_solutions, scan.unmatched
            ),
        );
    }

    Ok(VerifyReport {
        m,
        seed: config.seed,
        quick: config.quick,
        tol: config.tol,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes_at_reference_material() {
        let report = run(&VerifyConfig {
            m: 1.0,
            seed: 42,
            quick: true,
            tol: 1e-9,
        })
        .unwrap();
        assert!(
            report.all_passed(),
            "failed checks: {:?}",
            report.failed_names()
        );
        assert!(report.checks.len() >= 15);
    }

    #[test]
    fn suite_is_deterministic_for_fixed_seed() {
        let config = VerifyConfig {
            m: 2.0,
            seed: 7,
            quick: true,
            tol: 1e-9,
        };
        let a = run(&config).unwrap();
        let b = run(&config).unwrap();
        assert_eq!(a.checks.len(), b.checks.len());
        for (x, y) in a.checks.iter().zip(b.checks.iter()) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn suite_rejects_inadmissible_material() {
        assert!(run(&VerifyConfig {
            m: 0.6,
            seed: 42,
            quick: true,
            tol: 1e-9
        })
        .is_err());
    }
}
