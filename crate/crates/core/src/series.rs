//! Truncated double-series evaluation of the Horn functions H1–H7.
//!
//! Terms are generated by ratio recurrences along a diagonal sweep
//! (increasing `m + n`), with the monomials folded into the ratios so large
//! coefficients never appear on their own.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{HornError, Result};
use crate::pochhammer::{pochhammer, pochhammer_mixed, POLE_EPS};
use crate::summation::{Accumulator, NeumaierSum, SummationMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HornFunctionId {
    H1,
    H2,
    H3,
    H4,
    H5,
    H6,
    H7,
}

/// One Pochhammer factor `(params[param])_{dm·m + dn·n}` of a term law.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PochFactor {
    pub param: usize,
    pub dm: i64,
    pub dn: i64,
    pub numerator: bool,
}

const fn num(param: usize, dm: i64, dn: i64) -> PochFactor {
    PochFactor {
        param,
        dm,
        dn,
        numerator: true,
    }
}

const fn den(param: usize, dm: i64, dn: i64) -> PochFactor {
    PochFactor {
        param,
        dm,
        dn,
        numerator: false,
    }
}

const H1_LAW: [PochFactor; 4] = [num(0, 1, -1), num(1, 1, 1), num(2, 0, 1), den(3, 1, 0)];
const H2_LAW: [PochFactor; 5] = [
    num(0, 1, -1),
    num(1, 1, 0),
    num(2, 0, 1),
    num(3, 0, 1),
    den(4, 1, 0),
];
const H3_LAW: [PochFactor; 3] = [num(0, 2, 1), num(1, 0, 1), den(2, 1, 1)];
const H4_LAW: [PochFactor; 4] = [num(0, 2, 1), num(1, 0, 1), den(2, 1, 0), den(3, 0, 1)];
const H5_LAW: [PochFactor; 3] = [num(0, 2, 1), num(1, -1, 1), den(2, 0, 1)];
const H6_LAW: [PochFactor; 3] = [num(0, 2, -1), num(1, -1, 1), num(2, 0, 1)];
const H7_LAW: [PochFactor; 4] = [num(0, 2, -1), num(1, 0, 1), num(2, 0, 1), den(3, 1, 0)];

impl HornFunctionId {
    pub const ALL: [HornFunctionId; 7] = [
        HornFunctionId::H1,
        HornFunctionId::H2,
        HornFunctionId::H3,
        HornFunctionId::H4,
        HornFunctionId::H5,
        HornFunctionId::H6,
        HornFunctionId::H7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HornFunctionId::H1 => "H1",
            HornFunctionId::H2 => "H2",
            HornFunctionId::H3 => "H3",
            HornFunctionId::H4 => "H4",
            HornFunctionId::H5 => "H5",
            HornFunctionId::H6 => "H6",
            HornFunctionId::H7 => "H7",
        }
    }

    pub fn param_arity(self) -> usize {
        self.term_law().len()
    }

    /// Parameter names in their conventional order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            HornFunctionId::H1 => &["alpha", "beta", "gamma", "delta"],
            HornFunctionId::H2 => &["alpha", "beta", "gamma", "delta", "epsilon"],
            HornFunctionId::H3 => &["alpha", "beta", "gamma"],
            HornFunctionId::H4 => &["alpha", "beta", "gamma", "delta"],
            HornFunctionId::H5 => &["alpha", "beta", "gamma"],
            HornFunctionId::H6 => &["alpha", "beta", "gamma"],
            HornFunctionId::H7 => &["alpha", "beta", "gamma", "delta"],
        }
    }

    pub fn term_law(self) -> &'static [PochFactor] {
        match self {
            HornFunctionId::H1 => &H1_LAW,
            HornFunctionId::H2 => &H2_LAW,
            HornFunctionId::H3 => &H3_LAW,
            HornFunctionId::H4 => &H4_LAW,
            HornFunctionId::H5 => &H5_LAW,
            HornFunctionId::H6 => &H6_LAW,
            HornFunctionId::H7 => &H7_LAW,
        }
    }

    /// Half-widths `(bx, by)` of the conservative convergence box.
    pub fn safe_box(self) -> (f64, f64) {
        match self {
            HornFunctionId::H1 | HornFunctionId::H2 => (0.25, 0.25),
            HornFunctionId::H5 => (0.04, 0.25),
            _ => (0.12, 0.25),
        }
    }

    pub fn check_arity(self, params: &[f64]) -> Result<()> {
        if params.len() != self.param_arity() {
            return Err(HornError::Arity {
                function: self.name(),
                expected: self.param_arity(),
                got: params.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for HornFunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HornFunctionId {
    type Err = HornError;

    fn from_str(s: &str) -> Result<Self> {
        HornFunctionId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| HornError::Config(format!("unknown function `{s}` (expected h1..h7)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    pub x: f64,
    pub y: f64,
}

impl EvalPoint {
    pub fn new(x: f64, y: f64) -> Self {
        EvalPoint { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesConfig {
    pub max_m: usize,
    pub max_n: usize,
    pub tail_tol: f64,
    pub summation_mode: SummationMode,
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig {
            max_m: 160,
            max_n: 160,
            tail_tol: 1e-12,
            summation_mode: SummationMode::Compensated,
        }
    }
}

impl SeriesConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_m < 1 || self.max_n < 1 {
            return Err(HornError::Config("max_m and max_n must be at least 1".into()));
        }
        if !(self.tail_tol > 0.0) {
            return Err(HornError::Config("tail_tol must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: f64,
    pub err_estimate: f64,
    pub terms_used: usize,
    pub in_domain: bool,
    pub truncated_cleanly: bool,
}

/// Whether `p` lies in the conservative box where the series is summed reliably.
pub fn in_domain(id: HornFunctionId, p: EvalPoint) -> bool {
    let (bx, by) = id.safe_box();
    p.x.abs() <= bx && p.y.abs() <= by
}

/// Coefficient of `x^m y^n`, computed directly from Pochhammer products.
pub fn term(id: HornFunctionId, params: &[f64], m: u64, n: u64) -> Result<f64> {
    id.check_arity(params)?;
    let mut value = 1.0;
    for f in id.term_law() {
        let p = params[f.param];
        let pos = f.dm.max(0) as u64 * m + f.dn.max(0) as u64 * n;
        let neg = (-f.dm).max(0) as u64 * m + (-f.dn).max(0) as u64 * n;
        let v = if neg == 0 {
            pochhammer(p, pos as i64)?
        } else {
            pochhammer_mixed(p, pos, neg)?
        };
        if f.numerator {
            value *= v;
        } else {
            if v.abs() < POLE_EPS {
                return Err(HornError::Pole(format!("{id}: denominator ({p})_{pos} vanishes")));
            }
            value /= v;
        }
    }
    for i in 1..=m {
        value /= i as f64;
    }
    for i in 1..=n {
        value /= i as f64;
    }
    Ok(value)
}

fn near_integer(p: f64, margin: f64) -> Option<i64> {
    let k = p.round();
    ((p - k).abs() < margin).then_some(k as i64)
}

/// Parameter values that make some term of the rectangle `[0,m_hi]×[0,n_hi]`
/// singular, or that would make the ratio recurrence divide by zero.
///
/// Each message names the offending parameter. An empty list means admissible.
pub fn param_violations(
    id: HornFunctionId,
    params: &[f64],
    m_hi: usize,
    n_hi: usize,
    margin: f64,
) -> Vec<String> {
    let mut out = Vec::new();
    if params.len() != id.param_arity() {
        out.push(format!(
            "{id} takes {} parameters, got {}",
            id.param_arity(),
            params.len()
        ));
        return out;
    }
    let names = id.param_names();
    for f in id.term_law() {
        let p = params[f.param];
        if !p.is_finite() {
            out.push(format!("{id}: {} is not finite", names[f.param]));
            continue;
        }
        let corners = [
            0,
            f.dm * m_hi as i64,
            f.dn * n_hi as i64,
            f.dm * m_hi as i64 + f.dn * n_hi as i64,
        ];
        let j_min = *corners.iter().min().unwrap();
        let j_max = *corners.iter().max().unwrap();
        let Some(k) = near_integer(p, margin) else {
            continue;
        };
        let bad = if f.numerator {
            if j_min >= 0 {
                false
            } else if j_max > 0 {
                // the walk crosses index zero in both directions: any zero factor breaks it
                k <= -j_min
            } else {
                (1..=-j_min).contains(&k)
            }
        } else {
            j_max > 0 && (1 - j_max..=0).contains(&k)
        };
        if bad {
            out.push(format!(
                "{id}: {} = {p} is at an excluded integer {k}",
                names[f.param]
            ));
        }
    }
    out
}

/// Term weighting for [`weighted_sum`].
///
/// The scaled term for `(m, n)` carries `x^(m-offset_x)` and `y^(n-offset_y)`
/// (exponents clamped at zero), so derivative-type weights that vanish for
/// `m < offset_x` can be summed at `x = 0`.
pub struct TermWeights<W: Fn(u64, u64) -> f64> {
    pub offset_x: usize,
    pub offset_y: usize,
    /// Lowest total degree that can carry a nonzero weight; early stopping is
    /// not considered before two diagonals past it.
    pub first_live_degree: usize,
    pub weight: W,
}

pub fn unit_weights() -> TermWeights<fn(u64, u64) -> f64> {
    fn one(_: u64, _: u64) -> f64 {
        1.0
    }
    TermWeights {
        offset_x: 0,
        offset_y: 0,
        first_live_degree: 0,
        weight: one,
    }
}

/// Multiplier turning the scaled term at `(m, n)` into the one at `(m+a_m, n+a_n)`
/// where exactly one of the steps is 1. Returns `(num, den)`.
#[inline]
fn step_ratio(law: &[PochFactor], params: &[f64], m: i64, n: i64, along_x: bool) -> (f64, f64) {
    let mut nu = 1.0;
    let mut de = 1.0;
    for f in law {
        let a = if along_x { f.dm } else { f.dn };
        if a == 0 {
            continue;
        }
        let p = params[f.param];
        let j = f.dm * m + f.dn * n;
        let mut prod = 1.0;
        let grows = a > 0;
        let (lo, hi) = if grows { (j, j + a) } else { (j + a, j) };
        for i in lo..hi {
            prod *= p + i as f64;
        }
        if grows == f.numerator {
            nu *= prod;
        } else {
            de *= prod;
        }
    }
    let idx = if along_x { m } else { n };
    de *= (idx + 1) as f64;
    (nu, de)
}

/// `Σ w(m,n) c(m,n) x^(m-ox) y^(n-oy)` over the truncation rectangle.
pub fn weighted_sum<W: Fn(u64, u64) -> f64>(
    id: HornFunctionId,
    params: &[f64],
    p: EvalPoint,
    cfg: &SeriesConfig,
    weights: &TermWeights<W>,
) -> Result<EvalResult> {
    id.check_arity(params)?;
    cfg.validate()?;
    if !p.x.is_finite() || !p.y.is_finite() {
        return Err(HornError::Domain(format!("non-finite point ({}, {})", p.x, p.y)));
    }
    let ox = weights.offset_x;
    let oy = weights.offset_y;
    if ox > cfg.max_m || oy > cfg.max_n {
        return Err(HornError::Config(format!(
            "operator offset ({ox}, {oy}) exceeds truncation ({}, {})",
            cfg.max_m, cfg.max_n
        )));
    }
    let m_hi = if p.x == 0.0 { ox } else { cfg.max_m };
    let n_hi = if p.y == 0.0 { oy } else { cfg.max_n };

    let bad = param_violations(id, params, m_hi, n_hi, POLE_EPS);
    if !bad.is_empty() {
        return Err(HornError::Pole(bad.join("; ")));
    }

    let law = id.term_law();
    let mut row = vec![0.0f64; m_hi + 1];
    row[0] = 1.0;
    let mut acc = Accumulator::new(cfg.summation_mode);
    let mut diag_abs: Vec<f64> = Vec::with_capacity(m_hi + n_hi + 1);
    let mut last_complete = None;
    let mut terms_used = 0usize;
    let mut clean = false;
    let mut err = 0.0;

    for d in 0..=(m_hi + n_hi) {
        let m_top = d.min(m_hi);
        let m_bot = d.saturating_sub(n_hi);
        let mut abs_sum = NeumaierSum::new();
        for m in (m_bot..=m_top).rev() {
            let n = d - m;
            if d > 0 {
                let (mi, ni) = (m as i64, n as i64);
                let (prev, nu, de, grow) = if n == 0 {
                    let (nu, de) = step_ratio(law, params, mi - 1, 0, true);
                    (row[m - 1], nu, de, m > ox)
                } else {
                    let (nu, de) = step_ratio(law, params, mi, ni - 1, false);
                    (row[m], nu, de, n > oy)
                };
                if de == 0.0 {
                    return Err(HornError::Pole(format!(
                        "{id}: zero divisor in term recurrence at (m, n) = ({m}, {n})"
                    )));
                }
                let mut t = prev * (nu / de);
                if grow {
                    t *= if n == 0 { p.x } else { p.y };
                }
                row[m] = t;
            }
            let t = row[m];
            let w = (weights.weight)(m as u64, n as u64);
            let v = if w == 0.0 { 0.0 } else { w * t };
            if !v.is_finite() {
                return Err(HornError::NonConvergence(format!(
                    "{id}: term ({m}, {n}) is not finite"
                )));
            }
            acc.add(v);
            abs_sum.add(v.abs());
            terms_used += 1;
        }
        diag_abs.push(abs_sum.value());
        let complete = (p.x == 0.0 || d <= cfg.max_m) && (p.y == 0.0 || d <= cfg.max_n);
        if complete {
            last_complete = Some(d);
        }
        if complete && d > weights.first_live_degree {
            let tail = diag_abs[d - 1] + diag_abs[d];
            if tail <= cfg.tail_tol {
                clean = true;
                err = tail;
                break;
            }
        }
    }

    let value = acc.value();
    if !value.is_finite() {
        return Err(HornError::NonConvergence(format!("{id}: sum is not finite")));
    }
    if !clean {
        let n = diag_abs.len();
        if p.x == 0.0 && p.y == 0.0 {
            // the rectangle holds every nonzero term
            clean = true;
            err = 0.0;
        } else {
            err = diag_abs[n - 1] + if n > 1 { diag_abs[n - 2] } else { 0.0 };
            let end = last_complete.map_or(n, |d| d + 1);
            if end >= 5 {
                let w = &diag_abs[end - 5..end];
                if w.windows(2).all(|pair| pair[1] > pair[0]) {
                    return Err(HornError::NonConvergence(format!(
                        "{id}: diagonal sums grow ({:.3e} -> {:.3e})",
                        w[0], w[4]
                    )));
                }
            }
            if end >= 2 {
                err = err.max(diag_abs[end - 1] + diag_abs[end - 2]);
            }
        }
    }
    Ok(EvalResult {
        value,
        err_estimate: err,
        terms_used,
        in_domain: in_domain(id, p),
        truncated_cleanly: clean,
    })
}

/// Evaluate `Hi(params; x, y)`.
pub fn eval(id: HornFunctionId, params: &[f64], p: EvalPoint, cfg: &SeriesConfig) -> Result<EvalResult> {
    weighted_sum(id, params, p, cfg, &unit_weights())
}

/// Gauss `2F1(a, b; c; z)` by its single series; an independent oracle for
/// the one-variable reductions.
pub fn eval_reduction_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if !(z.abs() < 1.0) {
        return Err(HornError::NonConvergence(format!("2F1 needs |z| < 1, got {z}")));
    }
    if let Some(k) = near_integer(c, POLE_EPS) {
        if k <= 0 {
            return Err(HornError::Pole(format!("2F1: c = {c} is a nonpositive integer")));
        }
    }
    let mut sum = NeumaierSum::new();
    let mut t = 1.0;
    sum.add(t);
    for n in 0..100_000u32 {
        let nf = f64::from(n);
        let r = (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        t *= r;
        sum.add(t);
        if t == 0.0 {
            return Ok(sum.value());
        }
        let s = sum.value().abs().max(f64::MIN_POSITIVE);
        // once the ratio has settled below one, the tail is bounded geometrically
        if r.abs() < 0.99 && nf > (a.abs() + b.abs() + c.abs()) {
            let tail = t.abs() * r.abs() / (1.0 - r.abs());
            if tail <= 0.25 * f64::EPSILON * s {
                return Ok(sum.value());
            }
        }
        if !t.is_finite() {
            break;
        }
    }
    Err(HornError::NonConvergence(format!(
        "2F1({a}, {b}; {c}; {z}) did not settle"
    )))
}
