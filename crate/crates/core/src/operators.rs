//! Theta, derivative and integral operators acting term-wise on the Horn
//! series, plus finite-difference and quadrature oracles.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use crate::error::{HornError, Result};
use crate::series::{
    eval, in_domain, weighted_sum, EvalPoint, EvalResult, HornFunctionId, SeriesConfig, TermWeights,
};

/// Highest derivative order accepted by the term-wise derivative.
pub const MAX_DERIVATIVE_ORDER: usize = 6;

/// Highest order accepted by the finite-difference stencils.
pub const MAX_FD_ORDER: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

impl Axis {
    pub fn coordinate(self, p: EvalPoint) -> f64 {
        match self {
            Axis::X => p.x,
            Axis::Y => p.y,
        }
    }

    pub fn with_coordinate(self, p: EvalPoint, c: f64) -> EvalPoint {
        match self {
            Axis::X => EvalPoint::new(c, p.y),
            Axis::Y => EvalPoint::new(p.x, c),
        }
    }
}

/// The operator `wx·θx + wy·θy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaWeights {
    pub wx: i32,
    pub wy: i32,
}

impl ThetaWeights {
    pub fn new(wx: i32, wy: i32) -> Result<Self> {
        if wx.abs() > 2 || wy.abs() > 2 {
            return Err(HornError::Config(format!(
                "theta weights ({wx}, {wy}) out of range [-2, 2]"
            )));
        }
        Ok(ThetaWeights { wx, wy })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OperatorKind {
    /// `∏_{k=1}^{s} (θx + θy − k + 1)`
    Theta,
    PartialX,
    PartialY,
    Ix,
    Iy,
    IxIy,
    IFull,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorApplication {
    pub kind: OperatorKind,
    pub order: usize,
}

impl OperatorApplication {
    pub fn new(kind: OperatorKind, order: usize) -> Result<Self> {
        if order < 1 {
            return Err(HornError::Config("operator order must be at least 1".into()));
        }
        Ok(OperatorApplication { kind, order })
    }
}

fn falling(v: u64, s: usize) -> f64 {
    let mut acc = 1.0;
    for k in 0..s as u64 {
        if v < k {
            return 0.0;
        }
        acc *= (v - k) as f64;
    }
    acc
}

fn binomial(s: usize, j: usize) -> f64 {
    let mut c = 1.0;
    for i in 0..j {
        c = c * (s - i) as f64 / (i + 1) as f64;
    }
    c
}

/// `Σ (wx·m + wy·n)·c(m,n)·x^m y^n`.
pub fn apply_theta(
    id: HornFunctionId,
    params: &[f64],
    p: EvalPoint,
    w: ThetaWeights,
    cfg: &SeriesConfig,
) -> Result<EvalResult> {
    let (wx, wy) = (f64::from(w.wx), f64::from(w.wy));
    let tw = TermWeights {
        offset_x: 0,
        offset_y: 0,
        first_live_degree: 1,
        weight: move |m: u64, n: u64| wx * m as f64 + wy * n as f64,
    };
    weighted_sum(id, params, p, cfg, &tw)
}

/// `∏_{k=1}^{s} (θx + θy − k + 1)` applied term-wise: weight `(m+n)(m+n−1)…(m+n−s+1)`.
pub fn apply_theta_falling(
    id: HornFunctionId,
    params: &[f64],
    p: EvalPoint,
    s: usize,
    cfg: &SeriesConfig,
) -> Result<EvalResult> {
    let tw = TermWeights {
        offset_x: 0,
        offset_y: 0,
        first_live_degree: s,
        weight: move |m: u64, n: u64| falling(m + n, s),
    };
    weighted_sum(id, params, p, cfg, &tw)
}

/// Term-wise `s`-th partial derivative along `axis`.
pub fn partial_derivative_series(
    id: HornFunctionId,
    params: &[f64],
    p: EvalPoint,
    axis: Axis,
    s: usize,
    cfg: &SeriesConfig,
) -> Result<EvalResult> {
    if s > MAX_DERIVATIVE_ORDER {
        return Err(HornError::Config(format!(
            "derivative order {s} exceeds {MAX_DERIVATIVE_ORDER}"
        )));
    }
    let tw = match axis {
        Axis::X => TermWeights {
            offset_x: s,
            offset_y: 0,
            first_live_degree: s,
            weight: Box::new(move |m: u64, _n: u64| falling(m, s)) as Box<dyn Fn(u64, u64) -> f64>,
        },
        Axis::Y => TermWeights {
            offset_x: 0,
            offset_y: s,
            first_live_degree: s,
            weight: Box::new(move |_m: u64, n: u64| falling(n, s)) as Box<dyn Fn(u64, u64) -> f64>,
        },
    };
    let mut r = weighted_sum(id, params, p, cfg, &tw)?;
    r.in_domain = in_domain(id, p);
    Ok(r)
}

fn integral_weight(kind: OperatorKind, s: usize) -> Result<Box<dyn Fn(u64, u64) -> f64 + Send + Sync>> {
    let si = s as i32;
    Ok(match kind {
        OperatorKind::Ix => Box::new(move |m, _| 1.0 / ((m + 1) as f64).powi(si)),
        OperatorKind::Iy => Box::new(move |_, n| 1.0 / ((n + 1) as f64).powi(si)),
        OperatorKind::IxIy => Box::new(move |m, n| 1.0 / (((m + 1) * (n + 1)) as f64).powi(si)),
        OperatorKind::IFull => {
            let coef: Vec<f64> = (0..=s).map(|j| binomial(s, j)).collect();
            Box::new(move |m, n| {
                let (a, b) = (1.0 / (m + 1) as f64, 1.0 / (n + 1) as f64);
                coef.iter()
                    .enumerate()
                    .map(|(j, c)| c * a.powi(j as i32) * b.powi(si - j as i32))
                    .sum()
            })
        }
        other => {
            return Err(HornError::Config(format!(
                "{other:?} is not an integral operator"
            )))
        }
    })
}

/// Averaged antiderivatives `Îx = (1/x)∫₀^x`, `Îy`, their product, and
/// `Î = Îx + Îy`, raised to `op.order`, acting on monomials.
///
/// At `x = 0` (or `y = 0`) the operator takes its continuous extension.
pub fn apply_integral(
    id: HornFunctionId,
    params: &[f64],
    p: EvalPoint,
    op: OperatorApplication,
    cfg: &SeriesConfig,
) -> Result<EvalResult> {
    let w = integral_weight(op.kind, op.order)?;
    let tw = TermWeights {
        offset_x: 0,
        offset_y: 0,
        first_live_degree: 0,
        weight: w,
    };
    weighted_sum(id, params, p, cfg, &tw)
}

/// Dispatch any [`OperatorApplication`].
pub fn apply_operator(
    id: HornFunctionId,
    params: &[f64],
    p: EvalPoint,
    op: OperatorApplication,
    cfg: &SeriesConfig,
) -> Result<EvalResult> {
    match op.kind {
        OperatorKind::Theta => apply_theta_falling(id, params, p, op.order, cfg),
        OperatorKind::PartialX => partial_derivative_series(id, params, p, Axis::X, op.order, cfg),
        OperatorKind::PartialY => partial_derivative_series(id, params, p, Axis::Y, op.order, cfg),
        _ => apply_integral(id, params, p, op, cfg),
    }
}

/// Default step for a central difference of order `s` around `c`.
pub fn default_step(c: f64, s: usize) -> f64 {
    let base = if s >= 2 { 2e-4 } else { 1e-5 };
    base * c.abs().max(1.0)
}

/// Central difference of order 1 or 2 of a scalar function.
pub fn central_difference<F>(f: F, c: f64, s: usize, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(h > 0.0) {
        return Err(HornError::Config(format!(
            "finite-difference step {h} must be positive"
        )));
    }
    match s {
        1 => Ok((f(c + h)? - f(c - h)?) / (2.0 * h)),
        2 => Ok((f(c + h)? - 2.0 * f(c)? + f(c - h)?) / (h * h)),
        _ => Err(HornError::Config(format!(
            "finite differences support orders 1..={MAX_FD_ORDER}, got {s}"
        ))),
    }
}

/// Central finite difference of the series along `axis`; the stencil must
/// stay inside the safe box. The result is Richardson-extrapolated from
/// steps `h` and `h/2`.
pub fn finite_difference(
    id: HornFunctionId,
    params: &[f64],
    p: EvalPoint,
    axis: Axis,
    s: usize,
    h: Option<f64>,
    cfg: &SeriesConfig,
) -> Result<f64> {
    Ok(finite_difference_with_noise(id, params, p, axis, s, h, cfg)?.0)
}

/// Relative accuracy assumed for each stencil evaluation.
pub const FD_EVAL_EPS: f64 = 8.0 * f64::EPSILON;

/// [`finite_difference`] together with a bound on its rounding noise,
/// `FD_EVAL_EPS·max|H|·Σ|wᵢ|` over the stencil.
pub fn finite_difference_with_noise(
    id: HornFunctionId,
    params: &[f64],
    p: EvalPoint,
    axis: Axis,
    s: usize,
    h: Option<f64>,
    cfg: &SeriesConfig,
) -> Result<(f64, f64)> {
    let c = axis.coordinate(p);
    let h = h.unwrap_or_else(|| default_step(c, s));
    for q in [c - h, c + h] {
        if !in_domain(id, axis.with_coordinate(p, q)) {
            return Err(HornError::Domain(format!(
                "{id}: stencil point {q} along {axis:?} leaves the safe box"
            )));
        }
    }
    // sum to the rounding floor so the truncation point cannot jump between stencil nodes
    let fine = SeriesConfig {
        tail_tol: cfg.tail_tol.min(1e-18),
        ..*cfg
    };
    let peak = Cell::new(0.0f64);
    let f = |q| {
        let v = eval(id, params, axis.with_coordinate(p, q), &fine)?.value;
        peak.set(peak.get().max(v.abs()));
        Ok(v)
    };
    // both orders are truncation-limited at any step the rounding floor
    // allows, so take one Richardson step over h and h/2
    let coarse = central_difference(f, c, s, h)?;
    let half = central_difference(f, c, s, 0.5 * h)?;
    let v = (4.0 * half - coarse) / 3.0;
    let weights = if s == 2 {
        (4.0 * 16.0 + 4.0) / 3.0 / (h * h)
    } else {
        (4.0 * 2.0 + 1.0) / 3.0 / h
    };
    Ok((v, FD_EVAL_EPS * peak.get() * weights))
}

const SIMPSON_MAX_DEPTH: u32 = 20;

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm)?, f(rm)?);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth >= SIMPSON_MAX_DEPTH {
        return Err(HornError::Quadrature(format!(
            "no convergence on [{a}, {b}] after {SIMPSON_MAX_DEPTH} levels"
        )));
    }
    Ok(simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)?
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?)
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a)?, f(m)?, f(b)?);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 0)
}

/// `(1/x)∫₀^x H(t, y) dt` (or the `y` analogue) by adaptive quadrature on the
/// series evaluator, absolute tolerance `1e-10` on the average.
pub fn quadrature_cross_check(
    id: HornFunctionId,
    params: &[f64],
    p: EvalPoint,
    axis: Axis,
    cfg: &SeriesConfig,
) -> Result<f64> {
    let c = axis.coordinate(p);
    if c == 0.0 {
        return Ok(eval(id, params, p, cfg)?.value);
    }
    let fine = SeriesConfig {
        tail_tol: cfg.tail_tol.min(1e-16),
        ..*cfg
    };
    let f = |t: f64| Ok(eval(id, params, axis.with_coordinate(p, t), &fine)?.value);
    let integral = adaptive_simpson(f, 0.0, c, 1e-10 * c.abs())?;
    Ok(integral / c)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONES: [f64; 4] = [1.0, 1.0, 1.0, 1.0];

    fn cfg() -> SeriesConfig {
        SeriesConfig::default()
    }

    #[test]
    fn theta_on_geometric_series() {
        let w = ThetaWeights::new(1, 0).unwrap();
        let r = apply_theta(HornFunctionId::H1, &ONES, EvalPoint::new(0.2, 0.0), w, &cfg()).unwrap();
        assert!((r.value - 0.3125).abs() < 1e-13);
        let r = apply_theta(HornFunctionId::H1, &ONES, EvalPoint::new(0.0, 0.0), w, &cfg()).unwrap();
        assert_eq!(r.value, 0.0);
        let zero = ThetaWeights::new(0, 0).unwrap();
        let r = apply_theta(
            HornFunctionId::H3,
            &[0.3, 0.4, 0.5],
            EvalPoint::new(0.1, 0.2),
            zero,
            &cfg(),
        )
        .unwrap();
        assert_eq!(r.value, 0.0);
        assert!(ThetaWeights::new(3, 0).is_err());
    }

    #[test]
    fn derivative_on_geometric_series() {
        let r = partial_derivative_series(
            HornFunctionId::H1,
            &ONES,
            EvalPoint::new(0.2, 0.0),
            Axis::X,
            1,
            &cfg(),
        )
        .unwrap();
        assert!((r.value - 1.5625).abs() < 1e-13);
        // d²/dx² 1/(1-x) = 2/(1-x)³, also at x = 0 where only the offset terms survive
        let r = partial_derivative_series(
            HornFunctionId::H1,
            &ONES,
            EvalPoint::new(0.0, 0.0),
            Axis::X,
            2,
            &cfg(),
        )
        .unwrap();
        assert_eq!(r.value, 2.0);
        assert!(partial_derivative_series(
            HornFunctionId::H1,
            &ONES,
            EvalPoint::new(0.0, 0.0),
            Axis::X,
            7,
            &cfg()
        )
        .is_err());
    }

    #[test]
    fn integral_on_geometric_series() {
        let op = OperatorApplication::new(OperatorKind::Ix, 1).unwrap();
        let r = apply_integral(HornFunctionId::H1, &ONES, EvalPoint::new(0.2, 0.0), op, &cfg()).unwrap();
        let exact = -(0.8f64).ln() / 0.2;
        assert!((r.value - exact).abs() < 1e-13);
        let r = apply_integral(HornFunctionId::H1, &ONES, EvalPoint::new(0.0, 0.0), op, &cfg()).unwrap();
        assert_eq!(r.value, 1.0);
    }

    #[test]
    fn full_integral_is_binomial() {
        let params = [0.3, 0.7, 1.1, 1.9];
        let p = EvalPoint::new(0.1, 0.15);
        let get = |kind, s| {
            apply_integral(
                HornFunctionId::H1,
                &params,
                p,
                OperatorApplication::new(kind, s).unwrap(),
                &cfg(),
            )
            .unwrap()
            .value
        };
        let lhs = get(OperatorKind::IFull, 2);
        let rhs = get(OperatorKind::Ix, 2) + 2.0 * get(OperatorKind::IxIy, 1) + get(OperatorKind::Iy, 2);
        assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs());
        let lhs = get(OperatorKind::IFull, 1);
        let rhs = get(OperatorKind::Ix, 1) + get(OperatorKind::Iy, 1);
        assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs());
    }

    #[test]
    fn stencils_on_polynomials() {
        let d1 = central_difference(Ok, 0.3, 1, 1e-5).unwrap();
        assert!((d1 - 1.0).abs() < 1e-10);
        let d2 = central_difference(|x| Ok(x * x), 0.3, 2, 1e-3).unwrap();
        assert!((d2 - 2.0).abs() < 1e-8);
        assert!(central_difference(Ok, 0.3, 3, 1e-3).is_err());
    }

    #[test]
    fn stencil_must_stay_in_box() {
        let e = finite_difference(
            HornFunctionId::H5,
            &[0.3, 0.4, 0.5],
            EvalPoint::new(0.04, 0.0),
            Axis::X,
            1,
            None,
            &cfg(),
        );
        assert!(matches!(e, Err(HornError::Domain(_))));
    }

    #[test]
    fn simpson_on_smooth_integrands() {
        let v = adaptive_simpson(|t| Ok(t.exp()), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - (std::f64::consts::E - 1.0)).abs() < 1e-11);
        let v = adaptive_simpson(|_| Ok(1.0), 0.0, 0.3, 1e-12).unwrap();
        assert!((v - 0.3).abs() < 1e-15);
    }

    #[test]
    fn simpson_gives_up_on_singularity() {
        let e = adaptive_simpson(|t: f64| Ok(1.0 / t.abs().sqrt().max(1e-300)), -1.0, 1.0, 1e-14);
        assert!(matches!(e, Err(HornError::Quadrature(_))));
    }
}
