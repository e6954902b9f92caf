use horn_kernel::catalog::{
    catalog, check, check_k_induction, lookup, registry_json, Family, FreeValues, Instance, RegistryStatus,
};
use horn_kernel::error::HornError;
use horn_kernel::harness::TolerancePolicy;
use horn_kernel::series::{EvalPoint, HornFunctionId, SeriesConfig};

fn cfg() -> SeriesConfig {
    SeriesConfig::default()
}

fn inst(params: &[f64], x: f64, y: f64, free: FreeValues) -> Instance {
    Instance::new(params, x, y, free)
}

#[test]
fn catalog_covers_every_family() {
    let all = catalog();
    assert!(all.len() >= 70);
    for f in Family::ALL {
        assert!(all.iter().any(|r| r.family == f), "{f:?} missing");
    }
    for id in HornFunctionId::ALL {
        assert!(all.iter().any(|r| r.function == id), "{id} missing");
    }
    assert!(all.iter().all(|r| !r.paper_anchor.is_empty()));
}

#[test]
fn lookup_by_id() {
    assert_eq!(lookup("H1.CONTIG.2.3").unwrap().function, HornFunctionId::H1);
    assert_eq!(lookup("H3.INT.IxIy_s").unwrap().family, Family::Int);
    assert_eq!(lookup("H6.SUM.beta").unwrap().family, Family::Sum);
    assert_eq!(lookup("H5.DIFF.dx_s").unwrap().family, Family::DiffDeriv);
    assert!(lookup("H9.NOPE").is_none());
}

#[test]
fn registry_entries_have_schema_fields() {
    let reg = registry_json(&catalog());
    for e in reg.as_array().unwrap() {
        for key in [
            "identity_id",
            "family",
            "function",
            "paper_anchor",
            "free_integers",
            "status",
        ] {
            assert!(e.get(key).is_some(), "{key} missing in {e}");
        }
    }
}

#[test]
fn contiguous_example_passes_tightly() {
    let rec = lookup("H1.CONTIG.2.3").unwrap();
    let o = check(
        &rec,
        &inst(&[0.3, 0.7, 1.1, 1.9], 0.1, 0.1, FreeValues::default()),
        &cfg(),
        &TolerancePolicy::default(),
    )
    .unwrap();
    assert!(o.pass);
    assert!(o.rel_err <= 1e-8, "{}", o.rel_err);
}

#[test]
fn recursion_at_k_zero_is_exact() {
    let rec = lookup("H1.REC.alpha").unwrap();
    let o = check(
        &rec,
        &inst(&[0.3, 0.7, 1.1, 1.9], 0.1, -0.1, FreeValues::default()),
        &cfg(),
        &TolerancePolicy::default(),
    )
    .unwrap();
    assert_eq!(o.lhs, o.rhs);
}

#[test]
fn sum_at_t_zero_is_exact() {
    let rec = lookup("H1.SUM.alpha").unwrap();
    let free = FreeValues {
        r_trunc: 40,
        ..FreeValues::default()
    };
    let o = check(
        &rec,
        &inst(&[0.3, 0.7, 1.1, 1.9], 0.1, 0.1, free),
        &cfg(),
        &TolerancePolicy::default(),
    )
    .unwrap();
    assert_eq!(o.lhs, o.rhs);
    assert_eq!(o.tail_allowance, 0.0);
}

#[test]
fn shifted_parameter_exclusions_are_enforced() {
    // H1.REC.alpha divides by α+r−1 and α+r−2 for r ≤ k
    let rec = lookup("H1.REC.alpha").unwrap();
    let free = FreeValues {
        k: 3,
        ..FreeValues::default()
    };
    let err = check(
        &rec,
        &inst(&[-1.0, 0.7, 1.1, 1.9], 0.1, 0.1, free),
        &cfg(),
        &TolerancePolicy::default(),
    )
    .unwrap_err();
    assert!(matches!(err, HornError::Admissibility(_)));
    // δ at an excluded integer
    let rec = lookup("H1.CONTIG.2.15").unwrap();
    let err = check(
        &rec,
        &inst(&[0.3, 0.7, 1.1, 1.0], 0.1, 0.1, FreeValues::default()),
        &cfg(),
        &TolerancePolicy::default(),
    )
    .unwrap_err();
    assert!(matches!(err, HornError::Admissibility(_)));
}

#[test]
fn k_induction_single_step_matches_contiguous_relation() {
    let rec = lookup("H1.REC.alpha").unwrap();
    let params = [0.3, 0.7, 1.1, 1.9];
    let point = EvalPoint::new(0.1, 0.1);
    let ind = check_k_induction(&rec, &params, point, 1, &cfg(), &TolerancePolicy::default()).unwrap();
    assert_eq!(ind.per_k.len(), 1);
    assert!(ind.per_k[0].pass);
    assert!(ind.telescoping.iter().all(|o| o.pass));
}

#[test]
fn k_induction_three_steps() {
    let rec = lookup("H1.REC.delta").unwrap();
    let ind = check_k_induction(
        &rec,
        &[0.3, 0.7, 1.1, 2.7],
        EvalPoint::new(0.1, 0.1),
        3,
        &cfg(),
        &TolerancePolicy::default(),
    )
    .unwrap();
    assert_eq!(ind.per_k.len(), 3);
    for o in ind.per_k.iter().chain(&ind.telescoping) {
        assert!(o.pass, "{o:?}");
        assert!(o.rel_err <= 1e-8, "{}", o.rel_err);
    }
}

#[test]
fn k_induction_rejects_non_recursions() {
    let rec = lookup("H1.CONTIG.2.3").unwrap();
    assert!(check_k_induction(
        &rec,
        &[0.3, 0.7, 1.1, 1.9],
        EvalPoint::new(0.1, 0.1),
        2,
        &cfg(),
        &TolerancePolicy::default()
    )
    .is_err());
}

#[test]
fn first_order_derivative_has_three_way_agreement() {
    let rec = lookup("H1.DIFF_DERIV.3.19").unwrap();
    let o = check(
        &rec,
        &inst(&[0.3, 0.7, 1.1, 1.9], 0.12, -0.08, FreeValues::default()),
        &cfg(),
        &TolerancePolicy::default(),
    )
    .unwrap();
    assert!(o.pass, "{o:?}");
    assert_eq!(o.legs.len(), 1);
    assert!(o.legs[0].pass);
}

#[test]
fn h3_derivative_in_y() {
    let rec = lookup("H3.DIFF.dy_s").unwrap();
    let free = FreeValues {
        s: 1,
        ..FreeValues::default()
    };
    let o = check(
        &rec,
        &inst(&[0.45, -1.3, 2.2], 0.05, 0.15, free),
        &cfg(),
        &TolerancePolicy::default(),
    )
    .unwrap();
    assert!(o.pass);
    assert!(o.rel_err <= 1e-9);
}

#[test]
fn disputed_records_are_marked() {
    let all = catalog();
    for r in &all {
        if r.status == RegistryStatus::Disputed {
            assert!(r.note.is_some(), "{} disputed without a note", r.identity_id);
        }
    }
    assert_eq!(lookup("H2.REC.alpha").unwrap().status, RegistryStatus::Disputed);
}

#[test]
fn integral_record_fails_with_boundary_terms_missing() {
    let rec = lookup("H1.INT.Ix_s").unwrap();
    let free = FreeValues {
        s: 1,
        ..FreeValues::default()
    };
    let o = check(
        &rec,
        &inst(&[0.3, 0.7, 1.1, 1.9], 0.1, 0.1, free),
        &cfg(),
        &TolerancePolicy::default(),
    )
    .unwrap();
    assert!(!o.pass);
    // the quadrature leg still agrees with the term-wise side
    assert!(o.legs.iter().all(|l| l.pass), "{o:?}");
}
