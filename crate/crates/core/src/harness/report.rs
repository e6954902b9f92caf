//! Canonical JSON, CSV and text renderings of a [`VerificationReport`].
//!
//! Canonical JSON: object keys sorted, no insignificant whitespace, floats in
//! shortest round-trip form, non-finite floats as `null`.

use std::fmt::Write as _;

use serde_json::{json, Value};

use super::{fnv1a64, IdentityReport, SamplePlan, Status, TolerancePolicy, VerificationReport};
use crate::series::SeriesConfig;

fn write_canonical(v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(k.clone()).to_string());
                out.push(':');
                write_canonical(&map[k], out);
            }
            out.push('}');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_canonical(item, out);
            }
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Shortest round-trip decimal, with an exponent for very large or small
/// magnitudes; the same digits as the JSON output.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        Value::from(x).to_string()
    } else {
        x.to_string()
    }
}

pub fn canonical_json(v: &Value) -> String {
    let mut s = String::new();
    write_canonical(v, &mut s);
    s
}

/// FNV-1a over the canonical form of everything that determines a run.
pub fn config_hash(plan: &SamplePlan, tol: &TolerancePolicy, cfg: &SeriesConfig) -> String {
    let v = json!({
        "plan": serde_json::to_value(plan).unwrap_or(Value::Null),
        "tolerance": tolerance_value(tol),
        "series": serde_json::to_value(cfg).unwrap_or(Value::Null),
    });
    format!("{:016x}", fnv1a64(canonical_json(&v).as_bytes()))
}

fn tolerance_value(tol: &TolerancePolicy) -> Value {
    let overrides: serde_json::Map<String, Value> = tol
        .overrides
        .iter()
        .map(|(f, (a, r))| (f.as_str().to_string(), json!({"a_tol": a, "r_tol": r})))
        .collect();
    json!({
        "a_tol": tol.a_tol,
        "r_tol": tol.r_tol,
        "fd_r_tol": tol.fd_r_tol,
        "quad_r_tol": tol.quad_r_tol,
        "overrides": overrides,
    })
}

fn discrepancy(r: &IdentityReport) -> Value {
    json!({
        "identity_id": r.identity_id,
        "paper_anchor": r.paper_anchor,
        "status": r.status.as_str(),
        "registry_status": r.registry_status.as_str(),
        "open_question": r.open_question,
        "note": r.note,
        "samples_failed": r.failed(),
        "samples_run": r.samples_run,
        "witness": serde_json::to_value(&r.failure_witness).unwrap_or(Value::Null),
    })
}

pub fn report_value(report: &VerificationReport) -> Value {
    let identities: Vec<Value> = report
        .identities
        .iter()
        .map(|r| serde_json::to_value(r).unwrap_or(Value::Null))
        .collect();
    let discrepancies: Vec<Value> = report
        .identities
        .iter()
        .filter(|r| r.failed() > 0)
        .map(discrepancy)
        .collect();
    let mut meta = json!({
        "seed": report.seed,
        "n_samples": report.n_samples,
        "config_hash": report.config_hash,
    });
    if let Some(t) = report.wall_time_s {
        meta["wall_time_s"] = json!(t);
    }
    let summary = json!({
        "total": report.identities.len(),
        "VERIFIED": report.count(Status::Verified),
        "DISPUTED": report.count(Status::Disputed),
        "SKIPPED": report.count(Status::Skipped),
        "INCONCLUSIVE": report.count(Status::Inconclusive),
    });
    json!({
        "meta": meta,
        "summary": summary,
        "identities": identities,
        "discrepancies": discrepancies,
    })
}

pub fn render_json(report: &VerificationReport) -> String {
    let mut s = canonical_json(&report_value(report));
    s.push('\n');
    s
}

/// One row per identity.
pub fn render_csv(report: &VerificationReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let _ = w.write_record([
        "identity_id",
        "family",
        "function",
        "status",
        "registry_status",
        "open_question",
        "samples_planned",
        "samples_run",
        "samples_passed",
        "samples_skipped",
        "max_rel_err",
        "mean_rel_err",
        "paper_anchor",
    ]);
    for r in &report.identities {
        let _ = w.write_record([
            r.identity_id.clone(),
            r.family.as_str().to_string(),
            r.function.clone(),
            r.status.as_str().to_string(),
            r.registry_status.as_str().to_string(),
            r.open_question.to_string(),
            r.samples_planned.to_string(),
            r.samples_run.to_string(),
            r.samples_passed.to_string(),
            r.samples_skipped.to_string(),
            format_float(r.max_rel_err),
            format_float(r.mean_rel_err),
            r.paper_anchor.clone(),
        ]);
    }
    w.into_inner()
        .ok()
        .and_then(|b| String::from_utf8(b).ok())
        .unwrap_or_default()
}

pub fn render_text(report: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "seed {}  samples {}  config {}",
        report.seed, report.n_samples, report.config_hash
    );
    for r in &report.identities {
        let _ = writeln!(
            s,
            "{:<13} {:<18} {:>5}/{:<5} skipped {:<4} max_rel {:.3e}{}",
            r.status.as_str(),
            r.identity_id,
            r.samples_passed,
            r.samples_run,
            r.samples_skipped,
            r.max_rel_err,
            if r.open_question { "  (open question)" } else { "" }
        );
    }
    let bad: Vec<&IdentityReport> = report.identities.iter().filter(|r| r.failed() > 0).collect();
    if !bad.is_empty() {
        let _ = writeln!(s, "\ndiscrepancies:");
        for r in bad {
            let _ = writeln!(s, "  {}  {}/{} failed", r.identity_id, r.failed(), r.samples_run);
            let _ = writeln!(s, "    {}", r.paper_anchor);
            if let Some(n) = &r.note {
                let _ = writeln!(s, "    note: {n}");
            }
            if let Some(w) = &r.failure_witness {
                let o = &w.outcome;
                let _ = writeln!(
                    s,
                    "    witness #{}: params {:?} point ({}, {}) lhs {} rhs {}{}",
                    w.draw_index,
                    o.witness.params,
                    o.witness.point.x,
                    o.witness.point.y,
                    o.lhs,
                    o.rhs,
                    o.reason.as_deref().map(|r| format!(" [{r}]")).unwrap_or_default()
                );
            }
        }
    }
    let _ = writeln!(
        s,
        "\n{} identities: {} verified, {} disputed, {} skipped, {} inconclusive",
        report.identities.len(),
        report.count(Status::Verified),
        report.count(Status::Disputed),
        report.count(Status::Skipped),
        report.count(Status::Inconclusive)
    );
    if let Some(t) = report.wall_time_s {
        let _ = writeln!(s, "wall time {t:.2} s");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_sorts_and_nulls() {
        let v = json!({"b": [1.5, f64::NAN], "a": {"z": 1, "y": 1e-10}});
        assert_eq!(format_float(6.8e-13), "6.8e-13");
        assert_eq!(format_float(f64::INFINITY), "inf");
        assert_eq!(canonical_json(&v), r#"{"a":{"y":1e-10,"z":1},"b":[1.5,null]}"#);
    }
}
