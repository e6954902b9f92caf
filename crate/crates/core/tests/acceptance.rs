//! Acceptance suite A1–A9: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary under `cargo test`. A failed criterion is reported
//! but does not fail the build unless `ACCEPTANCE_STRICT=1` is set.

use std::time::{Duration, Instant};

use horn_kernel::catalog::{catalog, check_unchecked, lookup, Family, IdentityRecord, LegTarget, LegTol};
use horn_kernel::harness::{
    render_json, run, sample_instance, SamplePlan, Status, TolerancePolicy, VerificationReport,
};
use horn_kernel::parallel::Execution;
use horn_kernel::pochhammer::pochhammer;
use horn_kernel::series::{eval, eval_reduction_2f1, EvalPoint, HornFunctionId, SeriesConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn a1() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut worst, mut checked) = (0.0f64, 0usize);
    for _ in 0..10_000 {
        let mu: f64 = rng.gen_range(-8.0..8.0);
        let k: i64 = rng.gen_range(0..50);
        let n: i64 = rng.gen_range(0..30);
        let p = |b: f64, i: i64| pochhammer(b, i).unwrap();
        let recurrence = (p(mu, k + 1), (mu + k as f64) * p(mu, k));
        let splitting = (p(mu, n + k), p(mu, n) * p(mu + n as f64, k));
        let mut pairs = vec![recurrence, splitting];
        if (mu - mu.round()).abs() > 1e-3 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            pairs.push((p(mu, -k) * p(1.0 - mu, k), sign));
        }
        for (a, b) in pairs {
            checked += 1;
            if !(a == 0.0 && b == 0.0) {
                worst = worst.max(rel(a, b));
            }
        }
    }
    let t = start.elapsed();
    verdict(
        worst <= 1e-12 && t < Duration::from_secs(1),
        format!(
            "{checked} identities on 10000 draws, max rel {worst:.2e} (≤ 1e-12), {} (< 1s)",
            secs(t)
        ),
    )
}

/// `Σ (a)_{−n} (b)_n (c)_n zⁿ/n!`
fn negative_index_series(a: f64, b: f64, c: f64, z: f64) -> f64 {
    let (mut sum, mut term) = (0.0, 1.0);
    for n in 0..400i64 {
        if n > 0 {
            term *= z / n as f64;
        }
        let t = pochhammer(a, -n).unwrap() * pochhammer(b, n).unwrap() * pochhammer(c, n).unwrap() * term;
        sum += t;
        if n > 10 && t.abs() < 1e-18 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

fn a2() -> Verdict {
    use HornFunctionId::*;
    let start = Instant::now();
    let cfg = SeriesConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let draw = |rng: &mut ChaCha8Rng| loop {
        let v: f64 = rng.gen_range(-3.5..3.5);
        if (v - v.round()).abs() >= 0.1 {
            return v;
        }
    };
    let mut worst = 0.0f64;
    let mut n = 0;
    for _ in 0..50 {
        let [a, b, c, d, e] = [(); 5].map(|_| draw(&mut rng));
        for _ in 0..10 {
            let z: f64 = rng.gen_range(-0.4..0.4);
            let on_x = EvalPoint::new(z, 0.0);
            let on_y = EvalPoint::new(0.0, z);
            let v = |id: HornFunctionId, p: &[f64], at| eval(id, p, at, &cfg).unwrap().value;
            let f = |a, b, c| eval_reduction_2f1(a, b, c, z).unwrap();
            let cases = [
                (v(H1, &[a, b, c, d], on_x), f(a, b, d)),
                (v(H2, &[a, b, c, d, e], on_x), f(a, b, e)),
                (v(H2, &[a, b, c, d, e], on_y), negative_index_series(a, c, d, z)),
                (v(H3, &[a, b, c], on_y), f(a, b, c)),
                (v(H4, &[a, b, c, d], on_y), f(a, b, d)),
                (v(H5, &[a, b, c], on_y), f(a, b, c)),
                (v(H6, &[a, b, c], on_y), negative_index_series(a, b, c, z)),
                (v(H7, &[a, b, c, d], on_y), negative_index_series(a, b, c, z)),
            ];
            for (l, r) in cases {
                worst = worst.max(rel(l, r));
                n += 1;
            }
        }
    }
    let t = start.elapsed();
    verdict(
        worst <= 1e-10 && t < Duration::from_secs(10),
        format!(
            "{n} reductions, max rel {worst:.2e} (≤ 1e-10), {} (< 10s)",
            secs(t)
        ),
    )
}

fn records_of(pred: impl Fn(&IdentityRecord) -> bool) -> Vec<IdentityRecord> {
    catalog().into_iter().filter(|r| pred(r)).collect()
}

fn verify(records: &[IdentityRecord], n: usize) -> VerificationReport {
    let plan = SamplePlan {
        n_samples: n,
        ..SamplePlan::default()
    };
    run(
        records,
        &plan,
        &TolerancePolicy::default(),
        &SeriesConfig::default(),
        Execution::Parallel,
    )
    .unwrap()
}

fn not_verified(report: &VerificationReport) -> Vec<String> {
    report
        .identities
        .iter()
        .filter(|r| r.status != Status::Verified)
        .map(|r| format!("{} {}/{}", r.identity_id, r.samples_passed, r.samples_run))
        .collect()
}

fn list(v: &[String]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.join(", ")
    }
}

fn a3() -> Verdict {
    let start = Instant::now();
    let records = records_of(|r| matches!(r.family, Family::Contig | Family::DiffTheta));
    let report = verify(&records, 200);
    let t = start.elapsed();
    let bad = not_verified(&report);
    verdict(
        bad.is_empty() && t < Duration::from_secs(60),
        format!(
            "{} records × 200 samples at r_tol 1e-7, not verified: {}, {} (< 60s)",
            records.len(),
            list(&bad),
            secs(t)
        ),
    )
}

fn a4() -> Verdict {
    let tol = TolerancePolicy::default();
    let records = records_of(|r| r.family == Family::DiffDeriv);
    let report = verify(&records, 100);
    let bad = not_verified(&report);
    let fd_legs = records.iter().all(|r| {
        r.legs
            .iter()
            .any(|l| l.tol == LegTol::FiniteDifference && l.target == LegTarget::Rhs)
    });
    verdict(
        bad.is_empty() && fd_legs && tol.for_family(Family::DiffDeriv).1 <= 1e-9 && tol.fd_r_tol <= 1e-5,
        format!(
            "{} closed forms × 100 samples, series at 1e-9 and finite differences (s ≤ 2) at 1e-5, not verified: {}",
            records.len(),
            list(&bad)
        ),
    )
}

/// Exempt records must still end VERIFIED or DISPUTED with a witness, and
/// identically on a second run.
fn adjudicated(records: &[IdentityRecord], n: usize) -> (Vec<String>, bool) {
    let a = verify(records, n);
    let b = verify(records, n);
    let undecided = a
        .identities
        .iter()
        .filter(|r| {
            !(r.status == Status::Verified || (r.status == Status::Disputed && r.failure_witness.is_some()))
        })
        .map(|r| format!("{} {}", r.identity_id, r.status.as_str()))
        .collect();
    (undecided, render_json(&a) == render_json(&b))
}

fn a5() -> Verdict {
    let recs = records_of(|r| r.family == Family::Rec);
    let (exempt, required): (Vec<_>, Vec<_>) = recs.into_iter().partition(|r| r.open_question);
    let report = verify(&required, 100);
    let bad = not_verified(&report);
    let (undecided, stable) = adjudicated(&exempt, 100);
    let tol = TolerancePolicy::default().for_family(Family::Rec).1;
    verdict(
        bad.is_empty() && undecided.is_empty() && stable && tol <= 1e-6,
        format!(
            "{} required × k∈{{1,2,3}} × 100 at r_tol 1e-6, not verified: {}; {} exempt, undecided: {}, deterministic: {stable}",
            required.len(),
            list(&bad),
            exempt.len(),
            list(&undecided)
        ),
    )
}

fn a6() -> Verdict {
    const REQUIRED: [&str; 4] = ["H1.INT.Ix_s", "H1.INT.Iy_s", "H1.INT.IxIy_s", "H1.INT.I2"];
    let cfg = SeriesConfig::default();
    let tol = TolerancePolicy::default();
    let required: Vec<IdentityRecord> = REQUIRED.iter().map(|id| lookup(id).unwrap()).collect();
    let report = verify(&required, 100);
    let bad = not_verified(&report);

    // quadrature against the term-wise operator, order 1, on the same draws
    let plan = SamplePlan {
        n_samples: 100,
        ..SamplePlan::default()
    };
    let (mut legs, mut legs_ok) = (0, 0);
    for rec in &required[..2] {
        for i in 0..plan.n_samples {
            let Ok(inst) = sample_instance(rec, &plan, &cfg, i) else {
                continue;
            };
            for l in check_unchecked(rec, &inst, &cfg, &tol).legs {
                legs += 1;
                legs_ok += usize::from(l.pass);
            }
        }
    }

    let others = records_of(|r| r.family == Family::Int && !REQUIRED.contains(&r.identity_id.as_str()));
    let (undecided, stable) = adjudicated(&others, 100);
    verdict(
        bad.is_empty() && legs > 0 && legs_ok == legs && undecided.is_empty() && stable,
        format!(
            "H1 Ix, Iy, IxIy, I² × 100, not verified: {}; quadrature legs {legs_ok}/{legs} at 1e-8; {} adjudicated, undecided: {}, deterministic: {stable}",
            list(&bad),
            others.len(),
            list(&undecided)
        ),
    )
}

fn a7() -> Verdict {
    let plan = SamplePlan::default();
    let records = records_of(|r| r.family == Family::Sum);
    let report = verify(&records, 100);
    let bad = not_verified(&report);
    let t_ok = plan.t_range.0 >= -0.3 && plan.t_range.1 <= 0.3 && plan.r_trunc == 40;
    verdict(
        bad.is_empty() && t_ok,
        format!(
            "{} sums × 100, |t| ≤ 0.3, R = 40, r_tol 1e-7, not verified: {}",
            records.len(),
            list(&bad)
        ),
    )
}

fn a8_a9() -> (Verdict, Verdict) {
    let records = catalog();
    let start = Instant::now();
    let first = verify(&records, SamplePlan::default().n_samples);
    let t = start.elapsed();
    let second = verify(&records, SamplePlan::default().n_samples);
    let (ja, jb) = (render_json(&first), render_json(&second));
    let a8 = verdict(
        ja == jb,
        format!(
            "two full default runs, {} bytes of canonical JSON, identical: {}",
            ja.len(),
            ja == jb
        ),
    );

    let unaccounted: Vec<String> = first
        .identities
        .iter()
        .filter(|r| match r.status {
            Status::Verified => false,
            Status::Disputed => r.failure_witness.is_none(),
            Status::Skipped => r.skip_example.is_none(),
            Status::Inconclusive => true,
        })
        .map(|r| format!("{} {}", r.identity_id, r.status.as_str()))
        .collect();
    let a9 = verdict(
        records.len() >= 70 && unaccounted.is_empty() && t < Duration::from_secs(600),
        format!(
            "{} identities: {} verified, {} disputed, {} skipped; unaccounted: {}; {} (< 600s)",
            records.len(),
            first.count(Status::Verified),
            first.count(Status::Disputed),
            first.count(Status::Skipped),
            list(&unaccounted),
            secs(t)
        ),
    );
    (a8, a9)
}

fn main() {
    // `cargo test -- <filter>` passes arguments; only run on an empty or matching filter
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !filter.is_empty() && !filter.iter().any(|f| "acceptance".contains(f.as_str())) {
        return;
    }
    let (a8, a9) = a8_a9();
    let results = [
        ("A1", a1()),
        ("A2", a2()),
        ("A3", a3()),
        ("A4", a4()),
        ("A5", a5()),
        ("A6", a6()),
        ("A7", a7()),
        ("A8", a8),
        ("A9", a9),
    ];
    let mut failed = 0;
    for (name, v) in &results {
        println!("{name} {} {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.pass);
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 && std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
