//! Evaluation context shared by every identity side.
//!
//! A side is written once against [`Ctx`]. In probe mode the same code is run
//! without touching any series: each call records why the instance would be
//! unsafe (shifted parameter near an excluded integer, point outside the safe
//! box, small divisor) and returns a placeholder. That gives admissibility of
//! all shifted evaluations an identity performs for free.

use std::cell::{Cell, RefCell};

use crate::error::{HornError, Result};
use crate::operators::{
    apply_integral, apply_theta, apply_theta_falling, finite_difference_with_noise,
    partial_derivative_series, quadrature_cross_check, Axis, OperatorApplication, OperatorKind, ThetaWeights,
    MAX_DERIVATIVE_ORDER,
};
use crate::pochhammer::pochhammer;
use crate::series::{eval, in_domain, param_violations, EvalPoint, EvalResult, HornFunctionId, SeriesConfig};

/// Default relative size of a truncation error estimate that is still
/// accepted when the tail criterion was not met.
pub const LOOSE_TRUNCATION: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mode {
    /// Collect admissibility violations; `margin` is the minimum distance of a
    /// shifted parameter from an excluded integer and of any divisor from
    /// zero, `coord_margin` the fraction of the safe box a divided-by
    /// coordinate must keep away from zero.
    Probe {
        margin: f64,
        coord_margin: f64,
    },
    Full,
}

pub struct Ctx<'a> {
    mode: Mode,
    cfg: &'a SeriesConfig,
    violations: RefCell<Vec<String>>,
    tail: Cell<f64>,
    truncation_bar: f64,
}

impl<'a> Ctx<'a> {
    pub fn probe(cfg: &'a SeriesConfig, margin: f64, coord_margin: f64) -> Self {
        Ctx {
            mode: Mode::Probe { margin, coord_margin },
            cfg,
            violations: RefCell::new(Vec::new()),
            tail: Cell::new(0.0),
            truncation_bar: LOOSE_TRUNCATION,
        }
    }

    pub fn full(cfg: &'a SeriesConfig) -> Self {
        Ctx {
            mode: Mode::Full,
            cfg,
            violations: RefCell::new(Vec::new()),
            tail: Cell::new(0.0),
            truncation_bar: LOOSE_TRUNCATION,
        }
    }

    /// Relative truncation estimate accepted from a series that did not meet
    /// its tail target; larger estimates are reported as non-convergence.
    pub fn with_truncation_bar(mut self, bar: f64) -> Self {
        self.truncation_bar = bar;
        self
    }

    pub fn is_probe(&self) -> bool {
        matches!(self.mode, Mode::Probe { .. })
    }

    pub fn config(&self) -> &SeriesConfig {
        self.cfg
    }

    pub fn into_violations(self) -> Vec<String> {
        self.violations.into_inner()
    }

    pub fn tail(&self) -> f64 {
        self.tail.get()
    }

    /// Add an absolute error allowance (truncated outer sums).
    pub fn add_tail(&self, t: f64) {
        self.tail.set(self.tail.get() + t);
    }

    fn flag(&self, msg: String) {
        self.violations.borrow_mut().push(msg);
    }

    /// Probe-mode check of one series evaluation of `id` at `(x, y)`.
    fn probe_eval(&self, id: HornFunctionId, params: &[f64], x: f64, y: f64, margin: f64) {
        let p = EvalPoint::new(x, y);
        if !in_domain(id, p) {
            self.flag(format!("{id}: point ({x}, {y}) outside the safe box"));
        }
        let m_hi = if x == 0.0 {
            MAX_DERIVATIVE_ORDER
        } else {
            self.cfg.max_m
        };
        let n_hi = if y == 0.0 {
            MAX_DERIVATIVE_ORDER
        } else {
            self.cfg.max_n
        };
        for v in param_violations(id, params, m_hi, n_hi, margin) {
            self.flag(v);
        }
    }

    fn settle(&self, id: HornFunctionId, r: EvalResult) -> Result<f64> {
        if !r.truncated_cleanly && r.err_estimate > self.truncation_bar * r.value.abs().max(1.0) {
            return Err(HornError::NonConvergence(format!(
                "{id}: truncation estimate {:.3e} for value {:.6e}",
                r.err_estimate, r.value
            )));
        }
        Ok(r.value)
    }

    pub fn h(&self, id: HornFunctionId, params: &[f64], x: f64, y: f64) -> Result<f64> {
        match self.mode {
            Mode::Probe { margin, .. } => {
                self.probe_eval(id, params, x, y, margin);
                Ok(1.0)
            }
            Mode::Full => self.settle(id, eval(id, params, EvalPoint::new(x, y), self.cfg)?),
        }
    }

    /// `w·H` for a term of an outer sum; the scaled truncation estimate is
    /// added to the tail allowance.
    pub fn h_weighted(&self, id: HornFunctionId, params: &[f64], x: f64, y: f64, w: f64) -> Result<f64> {
        match self.mode {
            Mode::Probe { margin, .. } => {
                self.probe_eval(id, params, x, y, margin);
                Ok(w)
            }
            Mode::Full => {
                let r = eval(id, params, EvalPoint::new(x, y), self.cfg)?;
                let (v, e) = (w * r.value, w.abs() * r.err_estimate);
                if !r.truncated_cleanly {
                    if e > self.truncation_bar * v.abs().max(1.0) {
                        return Err(HornError::NonConvergence(format!(
                            "{id}: weighted truncation estimate {e:.3e} for term {v:.6e}"
                        )));
                    }
                    self.add_tail(e);
                }
                Ok(v)
            }
        }
    }

    /// `(wx·θx + wy·θy) H`.
    pub fn theta(&self, id: HornFunctionId, params: &[f64], x: f64, y: f64, wx: i32, wy: i32) -> Result<f64> {
        match self.mode {
            Mode::Probe { margin, .. } => {
                self.probe_eval(id, params, x, y, margin);
                Ok(1.0)
            }
            Mode::Full => {
                let w = ThetaWeights::new(wx, wy)?;
                self.settle(id, apply_theta(id, params, EvalPoint::new(x, y), w, self.cfg)?)
            }
        }
    }

    /// `∏_{k=1}^{s} (θx + θy − k + 1) H`.
    pub fn theta_falling(&self, id: HornFunctionId, params: &[f64], x: f64, y: f64, s: usize) -> Result<f64> {
        match self.mode {
            Mode::Probe { margin, .. } => {
                self.probe_eval(id, params, x, y, margin);
                Ok(1.0)
            }
            Mode::Full => self.settle(
                id,
                apply_theta_falling(id, params, EvalPoint::new(x, y), s, self.cfg)?,
            ),
        }
    }

    pub fn partial(
        &self,
        id: HornFunctionId,
        params: &[f64],
        x: f64,
        y: f64,
        axis: Axis,
        s: usize,
    ) -> Result<f64> {
        match self.mode {
            Mode::Probe { margin, .. } => {
                self.probe_eval(id, params, x, y, margin);
                Ok(1.0)
            }
            Mode::Full => self.settle(
                id,
                partial_derivative_series(id, params, EvalPoint::new(x, y), axis, s, self.cfg)?,
            ),
        }
    }

    /// Central finite difference of order `s` along `axis`; its rounding
    /// noise goes to the tail allowance.
    pub fn fd(
        &self,
        id: HornFunctionId,
        params: &[f64],
        x: f64,
        y: f64,
        axis: Axis,
        s: usize,
    ) -> Result<f64> {
        match self.mode {
            Mode::Probe { margin, .. } => {
                self.probe_eval(id, params, x, y, margin);
                Ok(1.0)
            }
            Mode::Full => {
                let (v, noise) =
                    finite_difference_with_noise(id, params, EvalPoint::new(x, y), axis, s, None, self.cfg)?;
                self.add_tail(noise);
                Ok(v)
            }
        }
    }

    pub fn integral(
        &self,
        id: HornFunctionId,
        params: &[f64],
        x: f64,
        y: f64,
        kind: OperatorKind,
        s: usize,
    ) -> Result<f64> {
        match self.mode {
            Mode::Probe { margin, .. } => {
                self.probe_eval(id, params, x, y, margin);
                Ok(1.0)
            }
            Mode::Full => {
                let op = OperatorApplication::new(kind, s)?;
                self.settle(
                    id,
                    apply_integral(id, params, EvalPoint::new(x, y), op, self.cfg)?,
                )
            }
        }
    }

    /// Averaged antiderivative along `axis` by adaptive quadrature.
    pub fn quad(&self, id: HornFunctionId, params: &[f64], x: f64, y: f64, axis: Axis) -> Result<f64> {
        match self.mode {
            Mode::Probe { margin, .. } => {
                self.probe_eval(id, params, x, y, margin);
                Ok(1.0)
            }
            Mode::Full => quadrature_cross_check(id, params, EvalPoint::new(x, y), axis, self.cfg),
        }
    }

    /// `1/d` for a parameter-dependent divisor.
    pub fn inv(&self, d: f64) -> f64 {
        if let Mode::Probe { margin, .. } = self.mode {
            if !(d.abs() >= margin) {
                self.flag(format!("divisor {d} within {margin} of zero"));
            }
            return 1.0;
        }
        1.0 / d
    }

    /// `1/c` for a coordinate of `id`'s argument.
    pub fn inv_coord(&self, id: HornFunctionId, axis: Axis, c: f64) -> f64 {
        if let Mode::Probe { coord_margin, .. } = self.mode {
            let (bx, by) = id.safe_box();
            let b = match axis {
                Axis::X => bx,
                Axis::Y => by,
            };
            if c == 0.0 || !(c.abs() >= coord_margin * b) {
                self.flag(format!("{id}: coordinate {c} along {axis:?} too close to zero"));
            }
            return 1.0;
        }
        1.0 / c
    }

    /// `(base)_k` as a multiplier.
    pub fn poch(&self, base: f64, k: i64) -> Result<f64> {
        if self.is_probe() {
            return Ok(1.0);
        }
        pochhammer(base, k)
    }

    /// `1/(base)_k`, with each factor checked as a divisor.
    pub fn inv_poch(&self, base: f64, k: usize) -> Result<f64> {
        if self.is_probe() {
            for i in 0..k {
                self.inv(base + i as f64);
            }
            return Ok(1.0);
        }
        Ok(1.0 / pochhammer(base, k as i64)?)
    }

    /// Require `(x, y)` inside `id`'s safe box without evaluating anything.
    pub fn require_in_box(&self, id: HornFunctionId, x: f64, y: f64) {
        if self.is_probe() && !in_domain(id, EvalPoint::new(x, y)) {
            self.flag(format!("{id}: point ({x}, {y}) outside the safe box"));
        }
    }
}
