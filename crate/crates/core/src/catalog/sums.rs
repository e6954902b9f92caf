//! Generating-function sums over one parameter.
//!
//! `Σ_{r≥0} (p)_r tʳ/r!·H(p+r; x, y) = (1−t)^{−p}·H(p; x(1−t)^{−ax}, y(1−t)^{−ay})`.
//! The left side is truncated at `R` and a geometric estimate of the dropped
//! tail is added to the absolute tolerance.

use super::{sh, side, Ctx, Family, FreeKind, IdentityRecord, Instance};
use crate::error::{HornError, Result};
use crate::series::HornFunctionId::{self, H1, H2, H3, H4, H5, H6, H7};

const ENVELOPE_BLOCK: usize = 4;

/// Largest factor by which `(1−t)^{−a}` can scale a coordinate for `|t'| ≤ |t|`.
fn majorant(a: i32, t: f64) -> f64 {
    if a >= 0 {
        (1.0 - t.abs()).powi(-a)
    } else {
        (1.0 + t.abs()).powi(-a)
    }
}

fn truncated_sum(c: &Ctx, id: HornFunctionId, idx: usize, ax: i32, ay: i32, i: &Instance) -> Result<f64> {
    let (x, y, t) = (i.x(), i.y(), i.free.t);
    let p = i.params[idx];
    // the outer sum converges only if its majorant stays inside the box
    c.require_in_box(id, x * majorant(ax, t), y * majorant(ay, t));
    let big_r = i.free.r_trunc as usize;
    let mut coef = 1.0;
    let mut acc = 0.0;
    let mut mags = Vec::with_capacity(big_r + 1);
    for r in 0..=big_r {
        if r > 0 {
            coef *= (p + r as f64 - 1.0) / r as f64 * t;
        }
        let term = c.h_weighted(id, &sh(&i.params, &[(idx, r as f64)]), x, y, coef)?;
        acc += term;
        mags.push(term.abs());
    }
    if !c.is_probe() && t != 0.0 {
        c.add_tail(tail_estimate(&mags)?);
    }
    Ok(acc)
}

/// Geometric tail from the decay of the term envelope over the last two
/// blocks; a single ratio is useless because `H(p+r)` changes sign in `r`.
fn tail_estimate(mags: &[f64]) -> Result<f64> {
    let n = mags.len();
    if n < 2 * ENVELOPE_BLOCK {
        return Ok(mags.iter().copied().fold(0.0, f64::max));
    }
    let top = |lo: usize| mags[lo..lo + ENVELOPE_BLOCK].iter().copied().fold(0.0, f64::max);
    let last = top(n - ENVELOPE_BLOCK);
    let before = top(n - 2 * ENVELOPE_BLOCK);
    if last == 0.0 {
        return Ok(0.0);
    }
    let q = (last / before).powf(1.0 / ENVELOPE_BLOCK as f64);
    if !(q < 1.0) {
        return Err(HornError::NonConvergence(format!(
            "outer sum envelope ratio {q:.3} at R = {}",
            n - 1
        )));
    }
    Ok(last * q / (1.0 - q))
}

fn closed(c: &Ctx, id: HornFunctionId, idx: usize, ax: i32, ay: i32, i: &Instance) -> Result<f64> {
    let u = 1.0 - i.free.t;
    let p = i.params[idx];
    Ok(u.powf(-p) * c.h(id, &i.params, i.x() * u.powi(-ax), i.y() * u.powi(-ay))?)
}

fn arg(v: &str, a: i32) -> String {
    match a {
        0 => v.to_string(),
        1 => format!("{v}/(1−t)"),
        -1 => format!("{v}(1−t)"),
        a if a > 0 => format!("{v}/(1−t)^{a}"),
        a => format!("{v}(1−t)^{}", -a),
    }
}

const GREEK: [&str; 5] = ["α", "β", "γ", "δ", "ε"];

fn sum(id: HornFunctionId, idx: usize, ax: i32, ay: i32) -> IdentityRecord {
    let g = GREEK[idx];
    let anchor = format!(
        "Σ_{{r≥0}} ({g})ᵣ tʳ/r!·{id}({g}+r; x, y) = (1−t)^(−{g})·{id}({}, {})",
        arg("x", ax),
        arg("y", ay)
    );
    IdentityRecord::new(
        id,
        Family::Sum,
        id.param_names()[idx],
        &anchor,
        FreeKind::SumR,
        side(move |c, i: &Instance| truncated_sum(c, id, idx, ax, ay, i)),
        side(move |c, i: &Instance| closed(c, id, idx, ax, ay, i)),
    )
}

pub(super) fn records() -> Vec<IdentityRecord> {
    vec![
        sum(H1, 0, 1, -1),
        sum(H1, 1, 1, 1),
        sum(H1, 2, 0, 1),
        sum(H2, 2, 0, 1).noted("printed H1 on the right read as H2"),
        sum(H2, 3, 0, 1).noted("printed H1 on the right read as H2"),
        sum(H3, 0, 2, 1),
        sum(H3, 1, 0, 1),
        sum(H4, 0, 2, 1),
        sum(H4, 1, 0, 1),
        sum(H5, 0, 2, 1),
        sum(H5, 1, -1, 1),
        sum(H6, 0, 2, -1),
        sum(H6, 1, -1, 1),
        sum(H6, 2, 0, 1),
        sum(H7, 0, 2, -1),
        sum(H7, 1, 0, 1),
        sum(H7, 2, 0, 1),
    ]
}
