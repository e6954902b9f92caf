//! Pochhammer symbol arithmetic in double precision.
//!
//! `(μ)_k` is the rising factorial `μ(μ+1)…(μ+k-1)` for `k > 0`, `1` for
//! `k = 0`, and `(-1)^k / (1-μ)_k` for negative index `-k`. Products are
//! always formed directly; the Gamma ratio is only offered as a cross-check
//! for positive arguments.

use crate::error::{HornError, Result};

/// Distance below which a denominator factor counts as a pole.
pub const POLE_EPS: f64 = 1e-9;

/// Default bound on `|index|`.
pub const MAX_INDEX: usize = 4096;

/// A Pochhammer argument pair `(base)_index`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PochArg {
    pub base: f64,
    pub index: i64,
}

impl PochArg {
    pub fn new(base: f64, index: i64) -> Self {
        PochArg { base, index }
    }

    pub fn eval(&self) -> Result<f64> {
        pochhammer(self.base, self.index)
    }

    pub fn eval_with_limit(&self, max_index: usize) -> Result<f64> {
        pochhammer_with_limit(self.base, self.index, max_index)
    }
}

/// Sign and log-magnitude of a real number; `sign == 0` marks an exact zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub sign: i8,
    pub log_magnitude: f64,
}

impl SignedLog {
    pub fn value(&self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_magnitude.exp(),
        }
    }
}

fn check_index(k: i64, max_index: usize) -> Result<()> {
    if k.unsigned_abs() > max_index as u64 {
        return Err(HornError::IndexLimit {
            index: k,
            limit: max_index,
        });
    }
    Ok(())
}

/// `(base)_k` for any signed `k` with `|k| <= MAX_INDEX`.
pub fn pochhammer(base: f64, k: i64) -> Result<f64> {
    pochhammer_with_limit(base, k, MAX_INDEX)
}

pub fn pochhammer_with_limit(base: f64, k: i64, max_index: usize) -> Result<f64> {
    check_index(k, max_index)?;
    if k >= 0 {
        let mut acc = 1.0;
        for i in 0..k {
            acc *= base + i as f64;
        }
        if !acc.is_finite() {
            return Err(HornError::Overflow(format!("({base})_{k}")));
        }
        return Ok(acc);
    }
    // (μ)_{-k} = (-1)^k / (1-μ)_k
    let kk = -k;
    let mut den = 1.0;
    for i in 0..kk {
        let f = 1.0 - base + i as f64;
        if f.abs() < POLE_EPS {
            return Err(HornError::Pole(format!("({base})_{k}: factor 1-μ+{i} vanishes")));
        }
        den *= f;
    }
    let sign = if kk % 2 == 0 { 1.0 } else { -1.0 };
    let out = sign / den;
    if !out.is_finite() {
        return Err(HornError::Overflow(format!("({base})_{k}")));
    }
    Ok(out)
}

/// `(base)_{m-n}`. For `m >= n` this is the forward product; for `m < n` it
/// goes through `(ν)_{m-n} = (-1)^n (ν)_m / (1-ν-m)_n`, falling back to the
/// negative-index form when `(ν)_m` is itself an exact zero.
pub fn pochhammer_mixed(base: f64, m: u64, n: u64) -> Result<f64> {
    let (mi, ni) = (m as i64, n as i64);
    if m >= n {
        return pochhammer(base, mi - ni);
    }
    check_index(ni, MAX_INDEX)?;
    check_index(mi, MAX_INDEX)?;
    // base a nonpositive integer > -m makes (ν)_m vanish and the quotient 0/0
    let nearest = base.round();
    if (base - nearest).abs() < POLE_EPS && nearest <= 0.0 && nearest > -(m as f64) {
        return pochhammer(base, mi - ni);
    }
    let num = pochhammer(base, mi)?;
    let den = pochhammer(1.0 - base - m as f64, ni)?;
    if den.abs() < POLE_EPS {
        return Err(HornError::Pole(format!("({base})_{{{m}-{n}}}")));
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * num / den)
}

/// Overflow-safe `(base)_k` for `k >= 0`, as sign and `ln|(base)_k|`.
pub fn log_pochhammer(base: f64, k: u64) -> Result<SignedLog> {
    check_index(k as i64, MAX_INDEX)?;
    let mut sign: i8 = 1;
    let mut log_mag = 0.0;
    for i in 0..k {
        let f = base + i as f64;
        if f == 0.0 {
            return Ok(SignedLog {
                sign: 0,
                log_magnitude: f64::NEG_INFINITY,
            });
        }
        if f < 0.0 {
            sign = -sign;
        }
        log_mag += f.abs().ln();
    }
    Ok(SignedLog {
        sign,
        log_magnitude: log_mag,
    })
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7, nine terms).
pub fn gamma_ln(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(HornError::Domain(format!("ln Γ({x}) requires x > 0")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    if x < 0.5 {
        // Γ(x) = Γ(x+1)/x keeps the Lanczos argument in its accurate range
        return Ok(lanczos_ln(x + 1.0) - x.ln());
    }
    Ok(lanczos_ln(x))
}

fn lanczos_ln(x: f64) -> f64 {
    let z = x - 1.0;
    let mut a = LANCZOS_COEF[0];
    let t = z + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + a.ln()
}

/// `Γ(base+k)/Γ(base)` through `ln Γ`; defined only for `base > 0`, `k >= 0`.
pub fn pochhammer_via_gamma(base: f64, k: u64) -> Result<f64> {
    if !(base > 0.0) {
        return Err(HornError::Domain(format!(
            "Gamma-ratio form needs a positive base, got {base}"
        )));
    }
    Ok((gamma_ln(base + k as f64)? - gamma_ln(base)?).exp())
}
