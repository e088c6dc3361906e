use std::f64::consts::PI;

use num_complex::Complex64;
use qtheta::identity::{
    f_ratio_probe, numeric_residual, numeric_verify, reports_to_csv, reports_to_json,
    run_suite_with_order, Constraint, IdentityId, Inputs, Mode, SamplePlan,
};
use qtheta::{make_param, qtrig_theta, QTrigKind, TruncationPolicy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn policy() -> TruncationPolicy {
    TruncationPolicy::default()
}

#[test]
fn thm1_tan_default_plan_passes() {
    let r = numeric_verify(
        IdentityId::Thm1Tan,
        &SamplePlan::default(),
        1e-10,
        &policy(),
    )
    .unwrap();
    assert!(r.passed(), "{:?}", r.failures.first());
    assert_eq!(r.samples, 1500);
    assert!(r.max_abs_residual.unwrap() <= 1e-10);
}

#[test]
fn tolerance_below_rounding_floor_fails() {
    let plan = SamplePlan {
        count: 50,
        ..SamplePlan::default()
    };
    let r = numeric_verify(IdentityId::Thm1Tan, &plan, 1e-18, &policy()).unwrap();
    assert!(!r.passed());
    assert!(r.max_abs_residual.unwrap() > 1e-18);
    assert!(r.failure_count > 0 && !r.failures.is_empty());
}

#[test]
fn pinned_normalization_point_passes() {
    let q4 = Complex64::new(PI / 4.0, 0.0);
    let plan = SamplePlan {
        count: 1,
        pin_x: Some(q4),
        pin_y: Some(q4),
        ..SamplePlan::default()
    };
    let r = numeric_verify(IdentityId::Thm2, &plan, 1e-13, &policy()).unwrap();
    assert!(r.passed());
    assert_eq!(r.samples, 3);
}

#[test]
fn overriding_the_constraint_breaks_the_identity() {
    let plan = SamplePlan {
        count: 20,
        constraint: Some(Constraint::SumHalfPi),
        ..SamplePlan::default()
    };
    let r = numeric_verify(IdentityId::Thm1Tan, &plan, 1e-10, &policy()).unwrap();
    assert!(!r.passed());
}

#[test]
fn division_relation_between_the_two_forms() {
    let tau = Complex64::new(0.3, 1.1);
    let p = make_param(tau).unwrap();
    let p2 = p.scaled(2.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for _ in 0..500 {
        let x = Complex64::new(rng.random_range(0.05..1.5), rng.random_range(-0.4..0.4));
        let y = Complex64::new(rng.random_range(0.05..1.5), rng.random_range(-0.4..0.4));
        let z = Complex64::new(PI, 0.0) - x - y;
        let t = |w, q| qtrig_theta(QTrigKind::TanQ, w, q, &policy());
        let (Ok(a), Ok(b), Ok(c)) = (t(x, &p2), t(y, &p2), t(z, &p)) else {
            continue;
        };
        let prod = (a * b * c).norm();
        if !(prod > 1e-6 && prod < 1e6) {
            continue;
        }
        let inp = Inputs::new(x, y, tau);
        let (Ok(r6), Ok(r7)) = (
            numeric_residual(IdentityId::Thm1Tan, &inp, &policy()),
            numeric_residual(IdentityId::Thm1Cot, &inp, &policy()),
        ) else {
            continue;
        };
        assert!(r7 <= r6 / prod + 1e-12, "r6={r6} r7={r7} prod={prod}");
        checked += 1;
    }
    assert!(checked > 400);
}

#[test]
fn probe_is_constant_at_fixed_y() {
    let tau = Complex64::new(0.0, 1.2);
    let y = Complex64::new(0.7, 0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut vals = Vec::new();
    while vals.len() < 50 {
        let x = Complex64::new(rng.random_range(0.05..3.0), rng.random_range(-1.0..1.0));
        if let Ok(f) = f_ratio_probe(x, y, tau, &policy()) {
            vals.push(f);
        }
    }
    let n = vals.len() as f64;
    let mean: Complex64 = vals.iter().sum::<Complex64>() / n;
    let sd = (vals.iter().map(|v| (v - mean).norm_sqr()).sum::<f64>() / (n - 1.0)).sqrt();
    assert!((mean - 1.0).norm() <= 1e-10);
    assert!(sd <= 1e-10);
}

#[test]
fn low_precision_regime_is_recorded_and_suite_continues() {
    let mut plan = SamplePlan {
        count: 10,
        ..SamplePlan::default()
    };
    plan.tau_set.push(Complex64::new(0.0, 0.005));
    let reports = run_suite_with_order(&plan, 1e-10, Some(4)).unwrap();
    assert_eq!(
        reports.len(),
        IdentityId::all().len()
            + IdentityId::all()
                .iter()
                .filter(|i| i.supports_formal())
                .count()
    );
    let triple: Vec<_> = reports
        .iter()
        .filter(|r| r.mode == Mode::Numeric && matches!(r.id, IdentityId::TripleProduct(_)))
        .collect();
    for r in triple {
        assert!(!r.passed());
        assert!(
            r.failures.iter().any(|f| f
                .error
                .as_deref()
                .is_some_and(|e| e.contains("convergence"))),
            "{:?}",
            r.failures
        );
        // The three regular taus still contributed their samples.
        assert!(r.samples >= 30);
    }
    let thm1 = reports
        .iter()
        .find(|r| r.id == IdentityId::Thm1Tan)
        .unwrap();
    assert!(thm1.passed());
}

#[test]
fn reports_are_deterministic() {
    let plan = SamplePlan {
        count: 20,
        seed: 7,
        ..SamplePlan::default()
    };
    let a = run_suite_with_order(&plan, 1e-10, Some(6)).unwrap();
    let b = run_suite_with_order(&plan, 1e-10, Some(6)).unwrap();
    assert_eq!(reports_to_json(&a).unwrap(), reports_to_json(&b).unwrap());
    assert_eq!(reports_to_csv(&a).unwrap(), reports_to_csv(&b).unwrap());
    let other = run_suite_with_order(&SamplePlan { seed: 8, ..plan }, 1e-10, Some(6)).unwrap();
    assert_ne!(
        reports_to_json(&a).unwrap(),
        reports_to_json(&other).unwrap()
    );
}

#[test]
fn csv_has_one_row_per_report() {
    let plan = SamplePlan {
        count: 5,
        ..SamplePlan::default()
    };
    let reports = run_suite_with_order(&plan, 1e-10, Some(3)).unwrap();
    let csv = reports_to_csv(&reports).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "id,mode,samples,certified_order,max_abs_residual,status,failures"
    );
    assert_eq!(lines.len(), reports.len() + 1);
    assert!(lines[1].starts_with("quasi_period_1,formal,2,3,,pass,0"));
}

#[test]
fn json_fields() {
    let plan = SamplePlan {
        count: 3,
        ..SamplePlan::default()
    };
    let r = numeric_verify(IdentityId::CosqShift, &plan, 1e-10, &policy()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&reports_to_json(&[r]).unwrap()).unwrap();
    let o = &v[0];
    for key in [
        "id",
        "mode",
        "params",
        "samples",
        "max_abs_residual",
        "certified_order",
        "status",
        "failures",
    ] {
        assert!(o.get(key).is_some(), "{key}");
    }
    assert_eq!(o["id"], "cosq_shift");
    assert_eq!(o["status"], "pass");
    assert_eq!(o["params"]["taus"][1][0], 0.3);
}

#[test]
fn invalid_plans_are_rejected() {
    assert!(numeric_verify(
        IdentityId::Thm2,
        &SamplePlan {
            count: 0,
            ..SamplePlan::default()
        },
        1e-10,
        &policy()
    )
    .is_err());
    let bad_tau = SamplePlan {
        tau_set: vec![Complex64::new(0.0, -1.0)],
        ..SamplePlan::default()
    };
    assert!(numeric_verify(IdentityId::Thm2, &bad_tau, 1e-10, &policy()).is_err());
}
