mod common;

use common::{instance, rng, small_instance, uniform_vec, CenteredOracle};
use logqp::instances::{analytic_instance, AnalyticKind};
use logqp::solvers::{barrier_longstep, longstep, shortstep};
use logqp::{
    center, divergence, initial_mu, newton_direction, select_shortstep_params, AlgorithmKind,
    AlgorithmRegistry, QpInstance, SolveReport, SolveStatus, SolverConfig,
};
use nalgebra::{DMatrix, DVector};

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn zeros(m: usize) -> DVector<f64> {
    DVector::zeros(m)
}

/// Exact optimum of a tiny strictly convex QP by enumerating active sets.
fn brute_force_optimum(qp: &QpInstance) -> f64 {
    let (n, m) = (qp.n(), qp.m());
    let mut best = f64::INFINITY;
    for mask in 0u32..(1 << m) {
        let active: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        if active.len() > n {
            continue;
        }
        let k = active.len();
        // [W  −A_Sᵀ; A_S  0] [x; λ_S] = [−c; −b_S]
        let mut kkt = DMatrix::zeros(n + k, n + k);
        let mut rhs = DVector::zeros(n + k);
        kkt.view_mut((0, 0), (n, n)).copy_from(qp.w());
        for i in 0..n {
            rhs[i] = -qp.c()[i];
        }
        for (j, &row) in active.iter().enumerate() {
            for i in 0..n {
                kkt[(i, n + j)] = -qp.a()[(row, i)];
                kkt[(n + j, i)] = qp.a()[(row, i)];
            }
            rhs[n + j] = -qp.b()[row];
        }
        let Some(sol) = kkt.lu().solve(&rhs) else {
            continue;
        };
        let x = sol.rows(0, n).into_owned();
        let slack = qp.a() * &x + qp.b();
        if slack.min() >= -1e-12 {
            best = best.min(qp.objective(&x));
        }
    }
    best
}

fn assert_certificate(qp: &QpInstance, report: &SolveReport, optimum: Option<f64>) {
    assert_eq!(report.status, SolveStatus::Solved, "{:?}", report.message);
    let slack = qp.a() * &report.x + qp.b();
    assert!(slack.min() >= -1e-9, "Ax + b has entry {}", slack.min());
    let predicted = report.final_mu * (qp.m() as f64 - report.d_norm_sq);
    assert!((report.gap - predicted).abs() <= 1e-8 * (1.0 + report.gap));
    assert!(report.d_inf <= 1.0);
    if let Some(v_star) = optimum {
        let bound = v_star + report.final_mu * qp.m() as f64 + 1e-8;
        assert!(report.objective(qp) <= bound, "{} > {bound}", report.objective(qp));
    }
}

#[test]
fn longstep_on_anchor_reaches_target_accuracy() {
    let (qp, path) = analytic_instance(AnalyticKind::Anchor);
    let report = longstep(&qp, &zeros(1), 1.0, &cfg()).unwrap();
    assert_certificate(&qp, &report, Some(path.optimal_value()));
    assert!(report.x[0].abs() <= (2e-3f64).sqrt());
    assert!(report.final_mu <= 1e-3);
}

#[test]
fn longstep_from_a_centered_start_finishes_quickly() {
    let cfg = cfg();
    let (qp, path) = analytic_instance(AnalyticKind::Shifted);
    let v0 = DVector::from_element(1, path.v(cfg.mu_f));
    let report = longstep(&qp, &v0, cfg.mu_f * 1.0001, &cfg).unwrap();
    assert!(report.newton_steps <= 2);
    assert_certificate(&qp, &report, Some(path.optimal_value()));

    let qp = instance(10, 25, 4, 5);
    let v0 = center(&qp, &zeros(25), cfg.mu_f, 1e-10).unwrap();
    let report = longstep(&qp, &v0, cfg.mu_f * 1.0001, &cfg).unwrap();
    assert!(report.newton_steps <= 2);
    assert_certificate(&qp, &report, None);
}

#[test]
fn longstep_on_a_benchmark_instance() {
    let qp = instance(100, 200, 0, 7);
    let v0 = zeros(200);
    let mu0 = initial_mu(&qp, &v0).unwrap();
    let report = longstep(&qp, &v0, mu0, &cfg()).unwrap();
    assert_certificate(&qp, &report, None);
    assert!((6..=12).contains(&report.newton_steps), "{} steps", report.newton_steps);
    assert_eq!(report.trace.len(), report.newton_steps);
}

#[test]
fn certificate_holds_against_brute_force_optimum() {
    let mut rng = rng(301);
    let registry = AlgorithmRegistry::builtin();
    for seed in 0..20 {
        let qp = instance(2, 5, 2, seed);
        let v_star = brute_force_optimum(&qp);
        assert!(v_star.is_finite());
        let v0 = uniform_vec(&mut rng, 5, 1.0);
        let mu0 = initial_mu(&qp, &v0).unwrap();
        for kind in [AlgorithmKind::LogDomainLong, AlgorithmKind::PrimalBarrier, AlgorithmKind::DualBarrier] {
            let report = registry.solve(&qp, &v0, mu0, &cfg().with_algorithm(kind)).unwrap();
            assert_certificate(&qp, &report, Some(v_star));
        }
    }
}

#[test]
fn mu_is_monotone_in_every_long_step_variant() {
    let mut rng = rng(302);
    let registry = AlgorithmRegistry::builtin();
    for _ in 0..10 {
        let qp = small_instance(&mut rng);
        let v0 = uniform_vec(&mut rng, qp.m(), 2.0);
        let mu0 = initial_mu(&qp, &v0).unwrap();
        for kind in [AlgorithmKind::LogDomainLong, AlgorithmKind::PrimalBarrier, AlgorithmKind::DualBarrier] {
            let report = registry.solve(&qp, &v0, mu0, &cfg().with_algorithm(kind)).unwrap();
            assert!(report.is_solved());
            let mut prev = mu0;
            for entry in &report.trace {
                assert!(entry.mu <= prev, "{kind}: μ rose from {prev:e} to {:e}", entry.mu);
                prev = entry.mu;
            }
            assert!(report.final_mu <= prev);
        }
    }
}

#[test]
fn gap_identity_holds_along_the_path() {
    let mut rng = rng(303);
    for _ in 0..10 {
        let qp = small_instance(&mut rng);
        let v0 = uniform_vec(&mut rng, qp.m(), 1.0);
        let report = longstep(&qp, &v0, initial_mu(&qp, &v0).unwrap(), &cfg()).unwrap();
        // Every accepted iterate has ‖d‖∞ ≤ 1, so each one recovers a certificate.
        let mut v = v0.clone();
        for entry in &report.trace {
            let step = newton_direction(&qp, &v, entry.mu).unwrap();
            if step.d_inf() <= 1.0 {
                let rec = logqp::recover_solution(&qp, &step).unwrap();
                let predicted = entry.mu * (qp.m() as f64 - step.d.norm_squared());
                assert!((rec.gap - predicted).abs() <= 1e-8 * (1.0 + rec.gap));
            }
            v += &step.d / logqp::step_size(&step.d, 0.5);
        }
        assert!((&v - &report.v).amax() <= 1e-9);
    }
}

#[test]
fn barrier_variants_finish_on_the_anchor() {
    let (qp, path) = analytic_instance(AnalyticKind::Anchor);
    for kind in [AlgorithmKind::PrimalBarrier, AlgorithmKind::DualBarrier] {
        let report = barrier_longstep(&qp, &zeros(1), 1.0, &cfg().with_algorithm(kind)).unwrap();
        assert_certificate(&qp, &report, Some(path.optimal_value()));
    }
    assert!(barrier_longstep(&qp, &zeros(1), 1.0, &cfg()).is_err());
}

#[test]
fn barrier_methods_need_at_least_as_many_iterations() {
    let registry = AlgorithmRegistry::builtin();
    let mut totals = [0usize; 3];
    let kinds = [AlgorithmKind::LogDomainLong, AlgorithmKind::DualBarrier, AlgorithmKind::PrimalBarrier];
    for seed in 7..37 {
        let qp = instance(100, 200, 50, seed);
        let v0 = zeros(200);
        let mu0 = initial_mu(&qp, &v0).unwrap();
        for (total, kind) in totals.iter_mut().zip(kinds) {
            let report = registry.solve(&qp, &v0, mu0, &cfg().with_algorithm(kind)).unwrap();
            assert!(report.is_solved());
            *total += report.newton_steps;
        }
    }
    assert!(totals[0] <= totals[1] && totals[0] <= totals[2], "{totals:?}");
}

#[test]
fn shortstep_on_anchor_takes_twelve_steps() {
    let (qp, _) = analytic_instance(AnalyticKind::Anchor);
    let params = select_shortstep_params(0.5, 0.25, 1).unwrap();
    let cfg = SolverConfig {
        mu_f: 1e-2,
        ..cfg()
    };
    let report = shortstep(&qp, &zeros(1), 1.0, &cfg, &params).unwrap();
    assert!(report.is_solved());
    assert_eq!(report.newton_steps, 12);
    assert_eq!(report.centering_steps, 0);
    assert!(report.v[0].abs() <= 1e-8);
    assert!(report.newton_steps as u64 <= params.step_bound(1.0, 1e-2));
}

#[test]
fn shortstep_below_target_does_nothing() {
    let (qp, _) = analytic_instance(AnalyticKind::Anchor);
    let params = select_shortstep_params(0.5, 0.25, 1).unwrap();
    let report = shortstep(&qp, &zeros(1), 1e-3, &cfg(), &params).unwrap();
    assert!(report.is_solved());
    assert_eq!(report.newton_steps, 0);
    assert_eq!(report.final_mu, 1e-3);
    assert_eq!(report.v[0], 0.0);
}

#[test]
fn shortstep_respects_its_step_bound() {
    let cfg = cfg();
    let params = select_shortstep_params(0.5, 0.25, 40).unwrap();
    for seed in 3..13 {
        let qp = instance(20, 40, 5, seed);
        let v0 = zeros(40);
        let mu0 = 10.0;
        let report = shortstep(&qp, &v0, mu0, &cfg, &params).unwrap();
        assert!(report.is_solved(), "{:?}", report.message);
        assert!(report.newton_steps as u64 <= params.step_bound(mu0, cfg.mu_f));
        let oracle = CenteredOracle::from_start(&qp, report.final_mu, &report.v, 1e-9);
        assert!((&report.v - &oracle.vhat).norm() <= params.epsilon);
    }
}

#[test]
fn shortstep_stays_in_the_quadratic_region() {
    // Replays the outer loop and checks the divergence right after each μ cut.
    let cfg = cfg();
    let qp = instance(8, 16, 3, 17);
    let params = select_shortstep_params(0.5, 0.25, 16).unwrap();
    let mu0 = 2.0;
    let mut v = center(&qp, &zeros(16), mu0, cfg.d_tol_center).unwrap();
    let mut mu = mu0;
    while mu > cfg.mu_f {
        mu /= params.k;
        let oracle = CenteredOracle::new(&qp, mu);
        assert!(divergence(&oracle.vhat, &v).unwrap() <= params.theta + 1e-6);
        for _ in 0..params.n_steps {
            v += newton_direction(&qp, &v, mu).unwrap().d;
        }
    }
    let report = shortstep(&qp, &zeros(16), mu0, &cfg, &params).unwrap();
    assert!((&report.v - &v).amax() <= 1e-8);
    assert_eq!(report.final_mu, mu);
}

#[test]
fn iteration_limit_is_reported_not_raised() {
    let qp = instance(10, 20, 0, 1);
    let cfg = SolverConfig {
        max_newton_steps: 1,
        ..cfg()
    };
    let report = longstep(&qp, &zeros(20), 1e3, &cfg).unwrap();
    assert_eq!(report.status, SolveStatus::IterationLimit);
    assert_eq!(report.newton_steps, 1);
    assert!(report.message.is_some());
}
