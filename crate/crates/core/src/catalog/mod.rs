//! Registry of executable identities.
//!
//! Every record carries two sides written against [`Ctx`], so the same code
//! yields both the numbers and the admissibility of an instance.

mod contig_rec;
mod ctx;
mod diff;
mod integral;
mod sums;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use ctx::{Ctx, Mode};

use crate::error::{HornError, Result};
use crate::harness::TolerancePolicy;
use crate::pochhammer::POLE_EPS;
use crate::series::{EvalPoint, HornFunctionId, SeriesConfig};

/// Denominator floor of the relative error.
pub const REL_FLOOR: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Contig,
    Rec,
    DiffTheta,
    DiffDeriv,
    Int,
    Sum,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Contig,
        Family::Rec,
        Family::DiffTheta,
        Family::DiffDeriv,
        Family::Int,
        Family::Sum,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Contig => "CONTIG",
            Family::Rec => "REC",
            Family::DiffTheta => "DIFF_THETA",
            Family::DiffDeriv => "DIFF_DERIV",
            Family::Int => "INT",
            Family::Sum => "SUM",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RegistryStatus {
    Active,
    Disputed,
}

impl RegistryStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RegistryStatus::Active => "ACTIVE",
            RegistryStatus::Disputed => "DISPUTED",
        }
    }
}

/// Which free integers an identity is quantified over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FreeKind {
    None,
    /// shift count `k` of a recursion
    K,
    /// operator order `s`
    S,
    /// truncation `R` of the outer sum, with continuous `t`
    SumR,
}

impl FreeKind {
    pub fn names(self) -> &'static [&'static str] {
        match self {
            FreeKind::None => &[],
            FreeKind::K => &["k"],
            FreeKind::S => &["s"],
            FreeKind::SumR => &["R"],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FreeValues {
    pub k: u32,
    pub s: u32,
    pub r_trunc: u32,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub params: Vec<f64>,
    pub point: EvalPoint,
    pub free: FreeValues,
}

impl Instance {
    pub fn new(params: &[f64], x: f64, y: f64, free: FreeValues) -> Self {
        Instance {
            params: params.to_vec(),
            point: EvalPoint::new(x, y),
            free,
        }
    }

    pub fn x(&self) -> f64 {
        self.point.x
    }

    pub fn y(&self) -> f64 {
        self.point.y
    }

    pub fn k(&self) -> u32 {
        self.free.k
    }

    pub fn s(&self) -> usize {
        self.free.s as usize
    }

    pub fn to_json(&self) -> Value {
        json!({
            "params": self.params,
            "point": {"x": self.point.x, "y": self.point.y},
            "free": {"k": self.free.k, "s": self.free.s, "R": self.free.r_trunc, "t": self.free.t},
        })
    }
}

pub type SideFn = Arc<dyn Fn(&Ctx, &Instance) -> Result<f64> + Send + Sync>;

pub(crate) fn side<F>(f: F) -> SideFn
where
    F: Fn(&Ctx, &Instance) -> Result<f64> + Send + Sync + 'static,
{
    Arc::new(f)
}

/// Copy of `p` with `p[i] += d` for each `(i, d)`.
pub(crate) fn sh(p: &[f64], d: &[(usize, f64)]) -> Vec<f64> {
    let mut q = p.to_vec();
    for &(i, v) in d {
        q[i] += v;
    }
    q
}

pub(crate) fn sign_pow(s: usize) -> f64 {
    if s.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LegTarget {
    Lhs,
    Rhs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LegTol {
    FiniteDifference,
    Quadrature,
}

/// An independent oracle compared against one side of the identity.
#[derive(Clone)]
pub struct Leg {
    pub label: &'static str,
    pub eval: SideFn,
    pub target: LegTarget,
    pub tol: LegTol,
    pub applies: fn(&Instance) -> bool,
}

/// A recursion's shifted parameter: index and direction of the `k`-fold shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecShift {
    pub param: usize,
    pub sign: i32,
}

#[derive(Clone)]
pub struct IdentityRecord {
    pub identity_id: String,
    pub family: Family,
    pub function: HornFunctionId,
    pub paper_anchor: String,
    pub free: FreeKind,
    pub status: RegistryStatus,
    pub note: Option<String>,
    pub open_question: bool,
    pub lhs: SideFn,
    pub rhs: SideFn,
    pub legs: Vec<Leg>,
    pub rec_shift: Option<RecShift>,
    pub contig_link: Option<&'static str>,
}

impl std::fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("identity_id", &self.identity_id)
            .field("family", &self.family)
            .field("function", &self.function)
            .field("status", &self.status)
            .finish_non_exhaustive()
    }
}

impl IdentityRecord {
    pub(crate) fn new(
        function: HornFunctionId,
        family: Family,
        tag: &str,
        anchor: &str,
        free: FreeKind,
        lhs: SideFn,
        rhs: SideFn,
    ) -> Self {
        IdentityRecord {
            identity_id: format!("{}.{}.{}", function.name(), family.as_str(), tag),
            family,
            function,
            paper_anchor: anchor.to_string(),
            free,
            status: RegistryStatus::Active,
            note: None,
            open_question: false,
            lhs,
            rhs,
            legs: Vec::new(),
            rec_shift: None,
            contig_link: None,
        }
    }

    pub(crate) fn disputed(mut self, note: &str) -> Self {
        self.status = RegistryStatus::Disputed;
        self.note = Some(note.to_string());
        self
    }

    pub(crate) fn noted(mut self, note: &str) -> Self {
        self.note = Some(note.to_string());
        self
    }

    pub(crate) fn open_question(mut self) -> Self {
        self.open_question = true;
        self
    }

    pub(crate) fn leg(mut self, leg: Leg) -> Self {
        self.legs.push(leg);
        self
    }

    pub(crate) fn rec(mut self, param: usize, sign: i32, contig: Option<&'static str>) -> Self {
        self.rec_shift = Some(RecShift { param, sign });
        self.contig_link = contig;
        self
    }

    fn structural_violations(&self, inst: &Instance) -> Vec<String> {
        let mut out = Vec::new();
        if inst.params.len() != self.function.param_arity() {
            out.push(format!(
                "{} takes {} parameters, got {}",
                self.function,
                self.function.param_arity(),
                inst.params.len()
            ));
        }
        if !inst.point.x.is_finite() || !inst.point.y.is_finite() {
            out.push("point is not finite".into());
        }
        match self.free {
            FreeKind::S if inst.free.s < 1 => out.push("operator order s must be at least 1".into()),
            FreeKind::SumR if !(inst.free.t.abs() < 1.0) => out.push("|t| must be below 1".into()),
            _ => {}
        }
        out
    }

    /// Everything that makes `inst` unsafe to evaluate, including every
    /// shifted-parameter evaluation either side performs. Empty means admissible.
    pub fn admissibility(
        &self,
        inst: &Instance,
        cfg: &SeriesConfig,
        margin: f64,
        coord_margin: f64,
    ) -> Vec<String> {
        let mut out = self.structural_violations(inst);
        if !out.is_empty() {
            return out;
        }
        let ctx = Ctx::probe(cfg, margin, coord_margin);
        let _ = (self.lhs)(&ctx, inst);
        let _ = (self.rhs)(&ctx, inst);
        for leg in &self.legs {
            if (leg.applies)(inst) {
                let _ = (leg.eval)(&ctx, inst);
            }
        }
        out.extend(ctx.into_violations());
        out.sort();
        out.dedup();
        out
    }

    pub fn registry_entry(&self) -> Value {
        json!({
            "identity_id": self.identity_id,
            "family": self.family.as_str(),
            "function": self.function.name(),
            "paper_anchor": self.paper_anchor,
            "free_integers": self.free.names(),
            "status": self.status.as_str(),
            "open_question": self.open_question,
            "note": self.note,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LegOutcome {
    pub label: String,
    pub value: f64,
    pub target: f64,
    pub rel_err: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheckOutcome {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub pass: bool,
    pub witness: Instance,
    /// Extra absolute allowance from truncated outer sums.
    pub tail_allowance: f64,
    pub legs: Vec<LegOutcome>,
    /// Why the check failed when it could not be completed or a leg disagreed.
    pub reason: Option<String>,
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(REL_FLOOR)
}

fn failed(inst: &Instance, lhs: f64, rhs: f64, reason: String) -> IdentityCheckOutcome {
    let abs_err = (lhs - rhs).abs();
    IdentityCheckOutcome {
        lhs,
        rhs,
        abs_err,
        rel_err: rel_err(lhs, rhs),
        pass: false,
        witness: inst.clone(),
        tail_allowance: 0.0,
        legs: Vec::new(),
        reason: Some(reason),
    }
}

/// Evaluate one instance of `record`.
///
/// Inadmissible instances are rejected with [`HornError::Admissibility`];
/// evaluation failures are reported inside the outcome.
pub fn check(
    record: &IdentityRecord,
    inst: &Instance,
    cfg: &SeriesConfig,
    tol: &TolerancePolicy,
) -> Result<IdentityCheckOutcome> {
    let bad = record.admissibility(inst, cfg, POLE_EPS, 0.0);
    if !bad.is_empty() {
        return Err(HornError::Admissibility(bad));
    }
    Ok(check_unchecked(record, inst, cfg, tol))
}

/// Accepted relative truncation estimate of an evaluation, as a fraction of
/// the family's relative tolerance.
pub const TRUNCATION_BAR_FRACTION: f64 = 0.1;

/// [`check`] without the admissibility gate.
pub fn check_unchecked(
    record: &IdentityRecord,
    inst: &Instance,
    cfg: &SeriesConfig,
    tol: &TolerancePolicy,
) -> IdentityCheckOutcome {
    let (a_tol, r_tol) = tol.for_family(record.family);
    let bar = TRUNCATION_BAR_FRACTION * r_tol;
    let ctx = Ctx::full(cfg).with_truncation_bar(bar);
    let lhs = match (record.lhs)(&ctx, inst) {
        Ok(v) => v,
        Err(e) => return failed(inst, f64::NAN, f64::NAN, format!("lhs: {e}")),
    };
    let rhs = match (record.rhs)(&ctx, inst) {
        Ok(v) => v,
        Err(e) => return failed(inst, lhs, f64::NAN, format!("rhs: {e}")),
    };
    if !lhs.is_finite() || !rhs.is_finite() {
        return failed(inst, lhs, rhs, "non-finite side".into());
    }
    let tail = ctx.tail();
    let abs_err = (lhs - rhs).abs();
    let scale = lhs.abs().max(rhs.abs());
    let mut pass = abs_err <= a_tol + tail + r_tol * scale;
    let mut reason = None;
    let mut legs = Vec::new();
    for leg in &record.legs {
        if !(leg.applies)(inst) {
            continue;
        }
        let target = match leg.target {
            LegTarget::Lhs => lhs,
            LegTarget::Rhs => rhs,
        };
        let r = match leg.tol {
            LegTol::FiniteDifference => tol.fd_r_tol,
            LegTol::Quadrature => tol.quad_r_tol,
        };
        let leg_ctx = Ctx::full(cfg).with_truncation_bar(bar);
        match (leg.eval)(&leg_ctx, inst) {
            Ok(v) => {
                let allowed = a_tol + leg_ctx.tail() + r * v.abs().max(target.abs());
                let ok = v.is_finite() && (v - target).abs() <= allowed;
                if !ok {
                    pass = false;
                    reason.get_or_insert_with(|| format!("{} leg disagrees", leg.label));
                }
                legs.push(LegOutcome {
                    label: leg.label.to_string(),
                    value: v,
                    target,
                    rel_err: rel_err(v, target),
                    pass: ok,
                });
            }
            Err(e) => {
                pass = false;
                reason.get_or_insert_with(|| format!("{} leg: {e}", leg.label));
            }
        }
    }
    IdentityCheckOutcome {
        lhs,
        rhs,
        abs_err,
        rel_err: rel_err(lhs, rhs),
        pass,
        witness: inst.clone(),
        tail_allowance: tail,
        legs,
        reason,
    }
}

/// Per-`k` checks of a recursion plus the telescoping consistency
/// `RHS(k) − RHS(k−1) = H(p±k) − H(p±(k−1))`, the single step being taken
/// from the matching contiguous relation when one exists.
#[derive(Debug, Clone)]
pub struct KInduction {
    pub per_k: Vec<IdentityCheckOutcome>,
    pub telescoping: Vec<IdentityCheckOutcome>,
}

pub fn check_k_induction(
    record: &IdentityRecord,
    params: &[f64],
    point: EvalPoint,
    k_max: u32,
    cfg: &SeriesConfig,
    tol: &TolerancePolicy,
) -> Result<KInduction> {
    let shift = record
        .rec_shift
        .ok_or_else(|| HornError::Config(format!("{} is not a recursion", record.identity_id)))?;
    let contig = record.contig_link.and_then(lookup);
    let inst_k = |k: u32| Instance {
        params: params.to_vec(),
        point,
        free: FreeValues {
            k,
            ..FreeValues::default()
        },
    };
    for k in 1..=k_max {
        let bad = record.admissibility(&inst_k(k), cfg, POLE_EPS, 0.0);
        if !bad.is_empty() {
            return Err(HornError::Admissibility(bad));
        }
    }
    let mut per_k = Vec::new();
    let mut telescoping = Vec::new();
    let (a_tol, r_tol) = tol.for_family(Family::Rec);
    let ctx = Ctx::full(cfg).with_truncation_bar(TRUNCATION_BAR_FRACTION * r_tol);
    for k in 1..=k_max {
        per_k.push(check_unchecked(record, &inst_k(k), cfg, tol));

        let base = inst_k(k);
        let prev = inst_k(k - 1);
        let step_params = sh(params, &[(shift.param, f64::from(shift.sign) * f64::from(k - 1))]);
        let step_inst = Instance {
            params: step_params.clone(),
            point,
            free: FreeValues {
                k: 1,
                ..FreeValues::default()
            },
        };
        let outcome = (|| -> Result<(f64, f64)> {
            let delta = (record.rhs)(&ctx, &base)? - (record.rhs)(&ctx, &prev)?;
            let here = ctx.h(record.function, &step_params, point.x, point.y)?;
            let step = match &contig {
                Some(c) => (c.rhs)(&ctx, &step_inst)? - here,
                None => (record.rhs)(&ctx, &step_inst)? - here,
            };
            Ok((delta, step))
        })();
        telescoping.push(match outcome {
            Ok((delta, step)) => {
                let abs_err = (delta - step).abs();
                IdentityCheckOutcome {
                    lhs: delta,
                    rhs: step,
                    abs_err,
                    rel_err: rel_err(delta, step),
                    pass: abs_err <= a_tol + r_tol * delta.abs().max(step.abs()),
                    witness: base,
                    tail_allowance: 0.0,
                    legs: Vec::new(),
                    reason: None,
                }
            }
            Err(e) => failed(&base, f64::NAN, f64::NAN, format!("telescoping: {e}")),
        });
    }
    Ok(KInduction { per_k, telescoping })
}

/// The complete registry, in a fixed order.
pub fn catalog() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    out.extend(contig_rec::records());
    out.extend(diff::theta_records());
    out.extend(diff::derivative_records());
    out.extend(integral::records());
    out.extend(sums::records());
    out
}

pub fn lookup(identity_id: &str) -> Option<IdentityRecord> {
    catalog().into_iter().find(|r| r.identity_id == identity_id)
}

/// Registry dump as a JSON array, in catalog order.
pub fn registry_json(records: &[IdentityRecord]) -> Value {
    Value::Array(records.iter().map(IdentityRecord::registry_entry).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn ids_are_unique_and_anchored() {
        let cat = catalog();
        let ids: BTreeSet<_> = cat.iter().map(|r| r.identity_id.clone()).collect();
        assert_eq!(ids.len(), cat.len());
        assert!(cat.iter().all(|r| !r.paper_anchor.is_empty()));
    }

    #[test]
    fn family_counts() {
        let cat = catalog();
        let count = |f| cat.iter().filter(|r| r.family == f).count();
        assert_eq!(count(Family::Contig), 4);
        assert_eq!(count(Family::Rec), 19);
        assert_eq!(count(Family::DiffTheta), 26);
        assert_eq!(count(Family::DiffDeriv), 15);
        assert_eq!(count(Family::Int), 35);
        assert_eq!(count(Family::Sum), 17);
    }

    #[test]
    fn shift_helper() {
        assert_eq!(sh(&[1.0, 2.0, 3.0], &[(0, 1.0), (2, -2.0)]), vec![2.0, 2.0, 1.0]);
    }
}
