//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured quantities when it succeeds (run with `-- --nocapture` to see
//! the lines). Tolerances are pinned in the assertions.

use rivlin_cube::criteria::{
    classify_monotonicity, energetic_stability, invertibility_loss_radial, region_scan,
    Monotonicity, ScanDomain, ScanMode,
};
use rivlin_cube::material::{energy_principal, PrincipalStretches};
use rivlin_cube::rng::{random_rotation, random_spd, random_stretches, SplitMix64};
use rivlin_cube::solver::{
    bifurcation_point, distinct_stretch_scan, ell, f_biot, nonradial_solutions, radial_solution,
    trace_branches, BranchSide,
};
use rivlin_cube::stress::{
    biot_matrix, first_piola, minors_radial, principal_biot, stress_jacobian, DeformationGradient,
};
use rivlin_cube::tensor::conjugate;

fn scaled_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

#[test]
fn criterion_01_identity_jacobian_determinant() {
    let mut worst = 0.0f64;
    for &m in &[0.7, 1.0, 2.0, 10.0, 100.0] {
        let s = PrincipalStretches::radial(1.0).unwrap();
        let det = stress_jacobian(m, &s).det();
        let rel = (det - 12.0 * m).abs() / (12.0 * m);
        worst = worst.max(rel);
        assert!(rel <= 1e-12, "M={m}: det {det}, relative error {rel:.3e}");
    }
    println!("PASS criterion 1: det DT(1,1,1) = 12M for M in {{0.7,1,2,10,100}}, worst rel err {worst:.3e}");
}

#[test]
fn criterion_02_reference_radial_solutions() {
    let b28 = radial_solution(1.0, 2.8).unwrap();
    let b34 = radial_solution(1.0, 3.4).unwrap();
    assert!(
        (b28 - 1.62561).abs() <= 1e-3,
        "radial_solution(2.8) = {b28}"
    );
    assert!(
        (b34 - 1.70237).abs() <= 1e-3,
        "radial_solution(3.4) = {b34}"
    );
    println!(
        "PASS criterion 2: radial_solution(2.8) = {b28:.6} (ref 1.62561), radial_solution(3.4) = {b34:.6} (ref 1.70237)"
    );
}

#[test]
fn criterion_03_branch_onset_load() {
    let report = bifurcation_point(1.0).unwrap();
    assert!(
        (report.alpha_flat - 3.09675).abs() <= 1e-3,
        "alpha_flat = {}",
        report.alpha_flat
    );
    println!(
        "PASS criterion 3: alpha_flat = {:.6} (ref 3.09675)",
        report.alpha_flat
    );
}

#[test]
fn criterion_04_bifurcation_consistency_across_materials() {
    for &m in &[0.7, 1.0, 2.0, 10.0] {
        let report = bifurcation_point(m).unwrap();
        assert!(
            report.sextic_residual <= 1e-12,
            "M={m}: sextic residual {:.3e}",
            report.sextic_residual
        );
        let crossing = (ell(m, report.lambda_star) - f_biot(m, report.lambda_star)).abs();
        assert!(crossing <= 1e-6, "M={m}: crossing residual {crossing:.3e}");
        assert!(
            (ell(m, report.lambda_star) - report.alpha_star).abs() <= 1e-6,
            "M={m}"
        );
        assert!(
            report.alpha_flat <= report.alpha_star,
            "M={m}: onset {} vs bifurcation {}",
            report.alpha_flat,
            report.alpha_star
        );
    }
    println!("PASS criterion 4: sextic residual <= 1e-12, ell(l*) = f(l*) = alpha* to 1e-6, alpha_flat <= alpha* for M in {{0.7,1,2,10}}");
}

#[test]
fn criterion_05_solution_count_transitions() {
    for &alpha in &[-2.0, 0.0, 2.8, 3.0] {
        let sols = nonradial_solutions(1.0, alpha).unwrap();
        assert!(
            sols.is_empty(),
            "alpha={alpha}: expected 0, got {}",
            sols.len()
        );
    }
    for &alpha in &[3.2, 3.4, 5.0] {
        let sols = nonradial_solutions(1.0, alpha).unwrap();
        assert_eq!(sols.len(), 2, "alpha={alpha}");
        for s in &sols {
            let r = principal_biot(1.0, &s.stretches).max_residual(alpha);
            assert!(r <= 1e-9, "alpha={alpha}: residual {r:.3e}");
        }
    }
    println!("PASS criterion 5: 0 non-radial solutions at alpha in {{-2,0,2.8,3.0}}, 2 at {{3.2,3.4,5}} with residual <= 1e-9");
}

#[test]
fn criterion_06_radial_minor_signs() {
    let below = minors_radial(1.0, 1.5);
    assert!(
        below.iter().all(|&v| v > 0.0),
        "all minors must be positive at l = 1.5: {below:?}"
    );
    let beyond = minors_radial(1.0, 2.0);
    assert!(
        beyond[1] < 0.0,
        "m2 must be negative at l = 2.0: {}",
        beyond[1]
    );
    let lstar = invertibility_loss_radial(1.0).unwrap();
    let at_star = minors_radial(1.0, lstar);
    assert!(at_star[1].abs() <= 1e-6, "m2 at l* = {:.3e}", at_star[1]);
    assert!(at_star[2].abs() <= 1e-6, "m3 at l* = {:.3e}", at_star[2]);
    println!(
        "PASS criterion 6: minors (+,+,+) at 1.5, m2 = {:.3} < 0 at 2.0, |m2|,|m3| <= 1e-6 at l* = {lstar:.6}",
        beyond[1]
    );
}

#[test]
fn criterion_07_derivative_consistency() {
    let mut worst_grad = 0.0f64;
    let mut worst_hess = 0.0f64;
    for &m in &[1.0, 2.0] {
        let mut rng = SplitMix64::new(2024);
        for _ in 0..100 {
            let s = random_stretches(&mut rng, 0.5, 2.0);
            let a = s.as_array();
            let t = principal_biot(m, &s).as_array();
            let jac = stress_jacobian(m, &s);
            for j in 0..3 {
                let h = 1e-6 * a[j].abs().max(1.0);
                let mut up = a;
                let mut dn = a;
                up[j] += h;
                dn[j] -= h;
                let su = PrincipalStretches::from_array(up).unwrap();
                let sd = PrincipalStretches::from_array(dn).unwrap();
                // gradient of the energy vs the closed-form stress
                let fd_grad = (energy_principal(m, &su) - energy_principal(m, &sd)) / (2.0 * h);
                worst_grad = worst_grad.max(scaled_err(fd_grad, t[j]));
                // Hessian of the energy (differences of the verified gradient)
                let tu = principal_biot(m, &su).as_array();
                let td = principal_biot(m, &sd).as_array();
                for i in 0..3 {
                    let fd_hess = (tu[i] - td[i]) / (2.0 * h);
                    worst_hess = worst_hess.max(scaled_err(fd_hess, jac.get(i, j)));
                }
            }
        }
    }
    assert!(worst_grad <= 1e-6, "gradient error {worst_grad:.3e}");
    assert!(worst_hess <= 1e-5, "Hessian error {worst_hess:.3e}");
    println!(
        "PASS criterion 7: 100 seeded points x M in {{1,2}}; gradient err {worst_grad:.3e} <= 1e-6, Hessian err {worst_hess:.3e} <= 1e-5"
    );
}

#[test]
fn criterion_08_isotropy_and_polar_consistency() {
    let mut rng = SplitMix64::new(4242);
    let mut worst_iso = 0.0f64;
    let mut worst_polar = 0.0f64;
    for _ in 0..100 {
        let q = random_rotation(&mut rng);
        let u = random_spd(&mut rng, 0.5, 2.5);
        let lhs = biot_matrix(1.0, &conjugate(&q, &u)).unwrap();
        let rhs = conjugate(&q, &biot_matrix(1.0, &u).unwrap());
        worst_iso = worst_iso.max(lhs.sub(&rhs).frobenius_norm());

        let r = random_rotation(&mut rng);
        let f = DeformationGradient::new(r.matrix().mul(&u.to_mat3())).unwrap();
        let recovered = r.matrix().transpose().mul(&first_piola(1.0, &f));
        let expected = biot_matrix(1.0, &u).unwrap().to_mat3();
        worst_polar = worst_polar.max(recovered.sub(&expected).frobenius_norm());
    }
    assert!(worst_iso <= 1e-10, "isotropy deviation {worst_iso:.3e}");
    assert!(worst_polar <= 1e-10, "polar deviation {worst_polar:.3e}");
    println!(
        "PASS criterion 8: 100 seeded cases; isotropy {worst_iso:.3e} <= 1e-10, polar {worst_polar:.3e} <= 1e-10"
    );
}

#[test]
fn criterion_09_stability_containment_and_radial_interval() {
    // containment on the 100x100 plane slice
    let scan = region_scan(
        1.0,
        &ScanDomain::TwoEqualSlice {
            l1: (0.5, 3.0),
            l2: (0.5, 3.0),
            resolution: (100, 100),
        },
        ScanMode::Stability,
        1e-9,
    )
    .unwrap();
    let mut stable_points = 0usize;
    for s in &scan.samples {
        if s.point.energetically_stable {
            stable_points += 1;
            assert_ne!(
                s.point.monotonicity,
                Monotonicity::NotMonotone,
                "stable but non-monotone at {:?}",
                s.stretches
            );
        }
    }
    assert!(stable_points > 0);

    // radial segment: stable exactly on [1, lambda*] within 1e-3
    let lstar = invertibility_loss_radial(1.0).unwrap();
    let delta = 1e-3;
    for i in 0..2000 {
        let l = 0.5 + 2.5 * i as f64 / 1999.0;
        let stable = energetic_stability(1.0, &PrincipalStretches::radial(l).unwrap(), 1e-9);
        if l < 1.0 - delta || l > lstar + delta {
            assert!(!stable, "l = {l} outside [1, {lstar:.6}] must be unstable");
        } else if l > 1.0 + delta && l < lstar - delta {
            assert!(stable, "l = {l} inside [1, {lstar:.6}] must be stable");
        }
    }
    println!(
        "PASS criterion 9: {stable_points} stable slice points all monotone; radial stability = [1, {lstar:.6}] within 1e-3"
    );
}

#[test]
fn criterion_10_branch_monotonicity_dichotomy() {
    let trace = trace_branches(1.0, 3.2, 5.0, 0.1).unwrap();
    let mut toward = 0usize;
    let mut away = 0usize;
    for r in &trace.records {
        assert_eq!(r.nonradial.len(), 2, "alpha={}", r.alpha);
        for (side, nr) in &r.nonradial {
            match side {
                BranchSide::TowardBifurcation => {
                    toward += 1;
                    assert_eq!(
                        nr.monotonicity,
                        Monotonicity::NotMonotone,
                        "toward-branch at alpha={}",
                        r.alpha
                    );
                }
                BranchSide::AwayFromBifurcation => {
                    away += 1;
                    assert_eq!(
                        nr.monotonicity,
                        Monotonicity::StronglyMonotone,
                        "away-branch at alpha={}",
                        r.alpha
                    );
                }
            }
        }
    }
    println!(
        "PASS criterion 10: alpha in [3.2, 5] step 0.1; {toward} toward-branch points all NotMonotone, {away} away-branch points all StronglyMonotone"
    );
}

#[test]
fn criterion_11_distinct_stretch_exclusion() {
    for &alpha in &[3.4, 5.0] {
        let report = distinct_stretch_scan(1.0, alpha, 200, 42).unwrap();
        assert_eq!(
            report.all_distinct_solutions, 0,
            "alpha={alpha}: {report:?}"
        );
        assert!(report.converged > 0, "alpha={alpha}: nothing converged");
        assert_eq!(report.unmatched, 0, "alpha={alpha}: {report:?}");
        println!(
            "PASS criterion 11 (alpha={alpha}): {}/{} converged, 0 all-distinct, clusters radial/toward/away = {}/{}/{}",
            report.converged, report.trials, report.radial_matches, report.toward_matches, report.away_matches
        );
    }
}

#[test]
fn criterion_12_branch_load_convexity() {
    for &m in &[0.7, 1.0, 2.0, 10.0] {
        let mut min_second = f64::INFINITY;
        for i in 0..1000 {
            let l = 0.1 * (10.0f64 / 0.1).powf(i as f64 / 999.0);
            let h = 1e-4 * l;
            let second = (ell(m, l + h) - 2.0 * ell(m, l) + ell(m, l - h)) / (h * h);
            min_second = min_second.min(second);
            assert!(second > 0.0, "M={m}, l={l}: ell'' = {second:.3e}");
        }
        println!("PASS criterion 12 (M={m}): min finite-difference ell'' = {min_second:.3e} > 0 at 1000 log-spaced points");
    }
}

#[test]
fn classification_matches_monotonicity_by_construction() {
    // tie the traced classifications back to the raw predicates at a few points
    let trace = trace_branches(1.0, 3.3, 3.6, 0.1).unwrap();
    for r in &trace.records {
        for (_, nr) in &r.nonradial {
            let direct = classify_monotonicity(1.0, &nr.stretches, 1e-9);
            assert_eq!(direct, nr.monotonicity);
        }
    }
}
