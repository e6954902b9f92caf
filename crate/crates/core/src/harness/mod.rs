//! Sampling-based verification of the identity catalog.

mod report;
mod sampling;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use report::{
    canonical_json, config_hash, format_float, render_csv, render_json, render_text, report_value,
};
pub use sampling::{fnv1a64, rng_for, sample_instance, sample_instance_counted, SamplePlan, MAX_REJECTIONS};

use crate::catalog::{
    check, check_unchecked, Family, IdentityCheckOutcome, IdentityRecord, Instance, RegistryStatus,
};
use crate::error::{HornError, Result};
use crate::parallel::{self, Execution};
use crate::series::SeriesConfig;

/// Share of failed samples above which an identity is declared disputed.
pub const DISPUTE_FRACTION: f64 = 0.9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    pub a_tol: f64,
    pub r_tol: f64,
    pub overrides: BTreeMap<Family, (f64, f64)>,
    /// Relative tolerance of finite-difference legs.
    pub fd_r_tol: f64,
    /// Relative tolerance of quadrature legs.
    pub quad_r_tol: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        let mut overrides = BTreeMap::new();
        overrides.insert(Family::Rec, (1e-10, 1e-6));
        overrides.insert(Family::DiffDeriv, (1e-10, 1e-9));
        TolerancePolicy {
            a_tol: 1e-10,
            r_tol: 1e-7,
            overrides,
            fd_r_tol: 1e-5,
            quad_r_tol: 1e-8,
        }
    }
}

impl TolerancePolicy {
    /// `(a_tol, r_tol)` for `family`.
    pub fn for_family(&self, family: Family) -> (f64, f64) {
        self.overrides
            .get(&family)
            .copied()
            .unwrap_or((self.a_tol, self.r_tol))
    }

    /// Replace both defaults and every override.
    pub fn uniform(a_tol: f64, r_tol: f64) -> Self {
        TolerancePolicy {
            a_tol,
            r_tol,
            overrides: BTreeMap::new(),
            ..TolerancePolicy::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.a_tol, self.r_tol, self.fd_r_tol, self.quad_r_tol]
            .into_iter()
            .chain(self.overrides.values().flat_map(|&(a, r)| [a, r]));
        for t in all {
            if !(t > 0.0 && t.is_finite()) {
                return Err(HornError::Config(format!("tolerance {t} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Verified,
    Disputed,
    Skipped,
    /// Some but fewer than [`DISPUTE_FRACTION`] of the samples fail.
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "VERIFIED",
            Status::Disputed => "DISPUTED",
            Status::Skipped => "SKIPPED",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// A failing instance that reproduces from its stored parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub draw_index: usize,
    pub outcome: IdentityCheckOutcome,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ComboStats {
    pub run: usize,
    pub passed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub family: Family,
    pub function: String,
    pub paper_anchor: String,
    pub registry_status: RegistryStatus,
    pub open_question: bool,
    pub note: Option<String>,
    pub samples_planned: usize,
    pub samples_run: usize,
    pub samples_passed: usize,
    pub samples_skipped: usize,
    /// Skip counts by error kind.
    pub skip_reasons: BTreeMap<String, usize>,
    /// Full message of the first skip.
    pub skip_example: Option<String>,
    pub max_rel_err: f64,
    pub mean_rel_err: f64,
    pub worst_witness: Option<Witness>,
    /// First failing draw, kept for replay.
    pub failure_witness: Option<Witness>,
    pub by_free: BTreeMap<String, ComboStats>,
    pub status: Status,
}

impl IdentityReport {
    pub fn failed(&self) -> usize {
        self.samples_run - self.samples_passed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub n_samples: usize,
    pub config_hash: String,
    pub wall_time_s: Option<f64>,
    pub identities: Vec<IdentityReport>,
}

impl VerificationReport {
    pub fn get(&self, identity_id: &str) -> Option<&IdentityReport> {
        self.identities.iter().find(|r| r.identity_id == identity_id)
    }

    pub fn count(&self, status: Status) -> usize {
        self.identities.iter().filter(|r| r.status == status).count()
    }
}

fn status_of(run: usize, passed: usize, has_witness: bool) -> Status {
    if run == 0 {
        Status::Skipped
    } else if passed == run {
        Status::Verified
    } else if (run - passed) as f64 >= DISPUTE_FRACTION * run as f64 && has_witness {
        Status::Disputed
    } else {
        Status::Inconclusive
    }
}

fn free_label(record: &IdentityRecord, inst: &Instance) -> String {
    match record.free {
        crate::catalog::FreeKind::None => "-".into(),
        crate::catalog::FreeKind::K => format!("k={}", inst.free.k),
        crate::catalog::FreeKind::S => format!("s={}", inst.free.s),
        crate::catalog::FreeKind::SumR => format!("R={}", inst.free.r_trunc),
    }
}

enum Draw {
    Checked(IdentityCheckOutcome),
    /// error kind and full message
    Skipped(&'static str, String),
}

fn run_draw(
    record: &IdentityRecord,
    plan: &SamplePlan,
    tol: &TolerancePolicy,
    cfg: &SeriesConfig,
    i: usize,
) -> Draw {
    let inst = match sample_instance(record, plan, cfg, i) {
        Ok(inst) => inst,
        Err(e) => return Draw::Skipped(e.kind(), e.to_string()),
    };
    match check(record, &inst, cfg, tol) {
        Ok(o) => Draw::Checked(o),
        Err(e) => Draw::Skipped(e.kind(), e.to_string()),
    }
}

fn aggregate(record: &IdentityRecord, planned: usize, draws: Vec<(usize, Draw)>) -> IdentityReport {
    let mut run = 0;
    let mut passed = 0;
    let mut skip_reasons = BTreeMap::new();
    let mut max_rel = 0.0f64;
    let mut sum_rel = 0.0;
    let mut worst: Option<Witness> = None;
    let mut first_fail: Option<Witness> = None;
    let mut by_free: BTreeMap<String, ComboStats> = BTreeMap::new();
    let mut skip_example = None;
    for (i, d) in draws {
        match d {
            Draw::Skipped(kind, msg) => {
                *skip_reasons.entry(kind.to_string()).or_insert(0) += 1;
                skip_example.get_or_insert(msg);
            }
            Draw::Checked(o) => {
                run += 1;
                let combo = by_free.entry(free_label(record, &o.witness)).or_default();
                combo.run += 1;
                if o.pass {
                    passed += 1;
                    combo.passed += 1;
                }
                // a failed evaluation has no finite error; count it as total disagreement
                let rel = if o.rel_err.is_finite() {
                    o.rel_err
                } else {
                    f64::INFINITY
                };
                sum_rel += rel;
                if worst.is_none() || rel > max_rel {
                    max_rel = rel;
                    worst = Some(Witness {
                        draw_index: i,
                        outcome: o.clone(),
                    });
                }
                if !o.pass && first_fail.is_none() {
                    first_fail = Some(Witness {
                        draw_index: i,
                        outcome: o,
                    });
                }
            }
        }
    }
    let skipped = skip_reasons.values().sum();
    IdentityReport {
        identity_id: record.identity_id.clone(),
        family: record.family,
        function: record.function.name().to_string(),
        paper_anchor: record.paper_anchor.clone(),
        registry_status: record.status,
        open_question: record.open_question,
        note: record.note.clone(),
        samples_planned: planned,
        samples_run: run,
        samples_passed: passed,
        samples_skipped: skipped,
        skip_reasons,
        skip_example,
        max_rel_err: max_rel,
        mean_rel_err: if run > 0 { sum_rel / run as f64 } else { 0.0 },
        status: status_of(run, passed, first_fail.is_some()),
        worst_witness: worst,
        failure_witness: first_fail,
        by_free,
    }
}

/// Check every record on `plan.n_samples` draws per free-integer combination.
///
/// Work is spread over `(record, draw)` pairs; the merge is ordered by
/// identity id and draw index, so the result does not depend on `exec`.
pub fn run(
    records: &[IdentityRecord],
    plan: &SamplePlan,
    tol: &TolerancePolicy,
    cfg: &SeriesConfig,
    exec: Execution,
) -> Result<VerificationReport> {
    plan.validate()?;
    tol.validate()?;
    cfg.validate()?;
    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by(|&a, &b| records[a].identity_id.cmp(&records[b].identity_id));
    let jobs: Vec<(usize, usize)> = order
        .iter()
        .flat_map(|&r| (0..plan.draws(&records[r])).map(move |i| (r, i)))
        .collect();
    let results = parallel::map(exec, &jobs, |&(r, i)| run_draw(&records[r], plan, tol, cfg, i));

    let mut per_record: BTreeMap<usize, Vec<(usize, Draw)>> = BTreeMap::new();
    for (&(r, i), d) in jobs.iter().zip(results) {
        per_record.entry(r).or_default().push((i, d));
    }
    let identities = order
        .iter()
        .map(|&r| {
            let draws = per_record.remove(&r).unwrap_or_default();
            aggregate(&records[r], plan.draws(&records[r]), draws)
        })
        .collect();
    Ok(VerificationReport {
        seed: plan.seed,
        n_samples: plan.n_samples,
        config_hash: config_hash(plan, tol, cfg),
        wall_time_s: None,
        identities,
    })
}

/// Re-run a stored witness; a reproducible failure gives an identical outcome.
pub fn replay(
    record: &IdentityRecord,
    witness: &Witness,
    tol: &TolerancePolicy,
    cfg: &SeriesConfig,
) -> IdentityCheckOutcome {
    check_unchecked(record, &witness.outcome.witness, cfg, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_rules() {
        assert_eq!(status_of(0, 0, false), Status::Skipped);
        assert_eq!(status_of(10, 10, false), Status::Verified);
        assert_eq!(status_of(10, 1, true), Status::Disputed);
        assert_eq!(status_of(10, 0, false), Status::Inconclusive);
        assert_eq!(status_of(10, 5, true), Status::Inconclusive);
    }

    #[test]
    fn family_tolerances() {
        let t = TolerancePolicy::default();
        assert_eq!(t.for_family(Family::Rec), (1e-10, 1e-6));
        assert_eq!(t.for_family(Family::Contig), (1e-10, 1e-7));
        assert!(t.validate().is_ok());
        assert!(TolerancePolicy::uniform(0.0, 1e-7).validate().is_err());
    }
}
