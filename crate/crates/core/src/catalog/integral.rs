//! Integral-operator formulas.
//!
//! Right-hand sides are encoded as printed. Every printed formula maps the full
//! double series onto shifted series divided by powers of `x`, `y`, which
//! cannot hold near `x = 0` where the left side tends to a finite limit;
//! these records are therefore registered as disputed and kept executable.

use super::{
    sh, side, sign_pow, Ctx, Family, FreeKind, IdentityRecord, Instance, Leg, LegTarget, LegTol, SideFn,
};
use crate::error::Result;
use crate::operators::{Axis, OperatorKind};
use crate::series::HornFunctionId::{self, H1, H2, H3, H4, H5, H6, H7};

const BOUNDARY_NOTE: &str =
    "right-hand side omits the m = 0 / n = 0 boundary terms and grows like 1/x or 1/y at the axes";

/// A Pochhammer base: the parameter itself or its reflection `1 − p`.
#[derive(Clone, Copy)]
enum B {
    P(usize),
    R(usize),
}

impl B {
    fn at(self, p: &[f64]) -> f64 {
        match self {
            B::P(i) => p[i],
            B::R(i) => 1.0 - p[i],
        }
    }
}

/// `(−1)^{s·alt} ∏(num)_{m s} / (x^{xp s} y^{yp s} ∏(den)_{m s})` and shift `s·shift`.
#[derive(Clone, Copy)]
struct Coef {
    alt: bool,
    num: &'static [(B, usize)],
    den: &'static [(B, usize)],
    xp: i32,
    yp: i32,
    shift: &'static [(usize, f64)],
}

impl Coef {
    fn value(&self, c: &Ctx, id: HornFunctionId, i: &Instance, s: usize) -> Result<f64> {
        let p = &i.params;
        let mut v = if self.alt { sign_pow(s) } else { 1.0 };
        for &(b, m) in self.num {
            v *= c.poch(b.at(p), (m * s) as i64)?;
        }
        for &(b, m) in self.den {
            v *= c.inv_poch(b.at(p), m * s)?;
        }
        if self.xp > 0 {
            v *= c.inv_coord(id, Axis::X, i.x()).powi(self.xp * s as i32);
        }
        if self.yp > 0 {
            v *= c.inv_coord(id, Axis::Y, i.y()).powi(self.yp * s as i32);
        }
        Ok(v)
    }

    fn params(&self, p: &[f64], s: usize) -> Vec<f64> {
        let d: Vec<(usize, f64)> = self.shift.iter().map(|&(k, m)| (k, m * s as f64)).collect();
        sh(p, &d)
    }
}

fn lhs(id: HornFunctionId, kind: OperatorKind, fixed: Option<usize>) -> SideFn {
    side(move |c, i: &Instance| {
        let s = fixed.unwrap_or_else(|| i.s());
        c.integral(id, &i.params, i.x(), i.y(), kind, s)
    })
}

fn plain(id: HornFunctionId, k: Coef) -> SideFn {
    side(move |c, i: &Instance| {
        let s = i.s();
        Ok(k.value(c, id, i, s)? * c.h(id, &k.params(&i.params, s), i.x(), i.y())?)
    })
}

fn with_theta(id: HornFunctionId, k: Coef) -> SideFn {
    side(move |c, i: &Instance| {
        let s = i.s();
        Ok(k.value(c, id, i, s)? * c.theta_falling(id, &k.params(&i.params, s), i.x(), i.y(), s)?)
    })
}

fn single_s(i: &Instance) -> bool {
    i.s() == 1
}

fn quad_leg(id: HornFunctionId, axis: Axis) -> Leg {
    Leg {
        label: "quadrature",
        eval: side(move |c, i: &Instance| c.quad(id, &i.params, i.x(), i.y(), axis)),
        target: LegTarget::Lhs,
        tol: LegTol::Quadrature,
        applies: single_s,
    }
}

fn record(
    id: HornFunctionId,
    tag: &str,
    anchor: &str,
    free: FreeKind,
    l: SideFn,
    r: SideFn,
) -> IdentityRecord {
    IdentityRecord::new(id, Family::Int, tag, anchor, free, l, r).disputed(BOUNDARY_NOTE)
}

/// `1/∏ d` with each factor checked.
fn inv_all(c: &Ctx, ds: &[f64]) -> f64 {
    ds.iter().map(|&d| c.inv(d)).product()
}

/// The five entries of one function: `Îxˢ`, `Îyˢ`, `(ÎxÎy)ˢ`, `Î²`, `Îˢ`.
struct Family5 {
    id: HornFunctionId,
    ix: (Coef, &'static str),
    iy: (Coef, &'static str),
    ixy: (Coef, &'static str),
    i2: (SideFn, &'static str),
    is: &'static str,
}

fn build(f: Family5) -> Vec<IdentityRecord> {
    let id = f.id;
    vec![
        record(
            id,
            "Ix_s",
            f.ix.1,
            FreeKind::S,
            lhs(id, OperatorKind::Ix, None),
            plain(id, f.ix.0),
        )
        .leg(quad_leg(id, Axis::X)),
        record(
            id,
            "Iy_s",
            f.iy.1,
            FreeKind::S,
            lhs(id, OperatorKind::Iy, None),
            plain(id, f.iy.0),
        )
        .leg(quad_leg(id, Axis::Y)),
        record(
            id,
            "IxIy_s",
            f.ixy.1,
            FreeKind::S,
            lhs(id, OperatorKind::IxIy, None),
            plain(id, f.ixy.0),
        ),
        record(
            id,
            "I2",
            f.i2.1,
            FreeKind::None,
            lhs(id, OperatorKind::IFull, Some(2)),
            f.i2.0,
        ),
        record(
            id,
            "I_s",
            f.is,
            FreeKind::S,
            lhs(id, OperatorKind::IFull, None),
            with_theta(id, f.ixy.0),
        ),
    ]
}

fn h1() -> Family5 {
    Family5 {
        id: H1,
        ix: (
            Coef {
                alt: true,
                num: &[(B::R(3), 1)],
                den: &[(B::R(0), 1), (B::R(1), 1)],
                xp: 1,
                yp: 0,
                shift: &[(0, -1.0), (1, -1.0), (3, -1.0)],
            },
            "Îxˢ H1 = (−1)ˢ(1−δ)ₛ/(xˢ(1−α)ₛ(1−β)ₛ)·H1(α−s,β−s,γ;δ−s)",
        ),
        iy: (
            Coef {
                alt: false,
                num: &[(B::P(0), 1)],
                den: &[(B::R(1), 1), (B::R(2), 1)],
                xp: 0,
                yp: 1,
                shift: &[(0, 1.0), (1, -1.0), (2, -1.0)],
            },
            "Îyˢ H1 = (α)ₛ/(yˢ(1−β)ₛ(1−γ)ₛ)·H1(α+s,β−s,γ−s;δ)",
        ),
        ixy: (
            Coef {
                alt: false,
                num: &[(B::R(3), 1)],
                den: &[(B::R(1), 2), (B::R(2), 1)],
                xp: 1,
                yp: 1,
                shift: &[(1, -2.0), (2, -1.0), (3, -1.0)],
            },
            "(ÎxÎy)ˢ H1 = (1−δ)ₛ/(xˢyˢ(1−β)₂ₛ(1−γ)ₛ)·H1(α,β−2s,γ−s;δ−s)",
        ),
        i2: (
            side(|c, i: &Instance| {
                let p = &i.params;
                let (a, b, g, d) = (p[0], p[1], p[2], p[3]);
                let (x, y) = (i.x(), i.y());
                let ix = c.inv_coord(H1, Axis::X, x);
                let iy = c.inv_coord(H1, Axis::Y, y);
                Ok((d - 1.0) * (d - 2.0) * ix * ix * inv_all(c, &[a - 1.0, a - 2.0, b - 1.0, b - 2.0])
                    * c.h(H1, &[a - 2.0, b - 2.0, g, d - 2.0], x, y)?
                    + 2.0 * (d - 1.0) * ix * iy * inv_all(c, &[b - 1.0, b - 2.0, g - 1.0])
                        * c.h(H1, &[a, b - 2.0, g - 1.0, d - 1.0], x, y)?
                    + a * (a + 1.0) * iy * iy * inv_all(c, &[b - 1.0, b - 2.0, g - 1.0, g - 2.0])
                        * c.h(H1, &[a + 2.0, b - 2.0, g - 2.0, d], x, y)?)
            }),
            "Î² H1 = (δ−1)(δ−2)/(x²(α−1)(α−2)(β−1)(β−2))·H1(α−2,β−2,γ;δ−2) + 2(δ−1)/(xy(β−1)(β−2)(γ−1))·H1(α,β−2,γ−1;δ−1) + α(α+1)/(y²(β−1)(β−2)(γ−1)(γ−2))·H1(α+2,β−2,γ−2;δ)",
        ),
        is: "Îˢ H1 = (1−δ)ₛ/(xˢyˢ(1−β)₂ₛ(1−γ)ₛ)·∏_{k=1}^{s}(θx+θy−k+1)·H1(α,β−2s,γ−s;δ−s)",
    }
}

fn h2() -> Family5 {
    Family5 {
        id: H2,
        ix: (
            Coef {
                alt: true,
                num: &[(B::R(4), 1)],
                den: &[(B::R(0), 1), (B::R(1), 1)],
                xp: 1,
                yp: 0,
                shift: &[(0, -1.0), (1, -1.0), (4, -1.0)],
            },
            "Îxˢ H2 = (−1)ˢ(1−ε)ₛ/(xˢ(1−α)ₛ(1−β)ₛ)·H2(α−s,β−s,γ,δ;ε−s)",
        ),
        iy: (
            Coef {
                alt: false,
                num: &[(B::P(0), 1)],
                den: &[(B::R(2), 1), (B::R(3), 1)],
                xp: 0,
                yp: 1,
                shift: &[(0, 1.0), (2, -1.0), (3, -1.0)],
            },
            "Îyˢ H2 = (α)ₛ/(yˢ(1−γ)ₛ(1−δ)ₛ)·H2(α+s,β,γ−s,δ−s;ε)",
        ),
        ixy: (
            Coef {
                alt: false,
                num: &[(B::R(4), 1)],
                den: &[(B::R(1), 1), (B::R(2), 1), (B::R(3), 1)],
                xp: 1,
                yp: 1,
                shift: &[(1, -1.0), (2, -1.0), (3, -1.0), (4, -1.0)],
            },
            "(ÎxÎy)ˢ H2 = (1−ε)ₛ/(xˢyˢ(1−β)ₛ(1−γ)ₛ(1−δ)ₛ)·H2(α,β−s,γ−s,δ−s;ε−s)",
        ),
        i2: (
            side(|c, i: &Instance| {
                let p = &i.params;
                let (a, b, g, d, e) = (p[0], p[1], p[2], p[3], p[4]);
                let (x, y) = (i.x(), i.y());
                let ix = c.inv_coord(H2, Axis::X, x);
                let iy = c.inv_coord(H2, Axis::Y, y);
                Ok((e - 1.0) * (e - 2.0) * ix * ix * inv_all(c, &[a - 1.0, a - 2.0, b - 1.0, b - 2.0])
                    * c.h(H2, &[a - 2.0, b - 2.0, g, d, e - 2.0], x, y)?
                    + 2.0 * (e - 1.0) * ix * iy * inv_all(c, &[b - 1.0, g - 1.0, d - 1.0])
                        * c.h(H2, &[a, b - 1.0, g - 1.0, d - 1.0, e - 1.0], x, y)?
                    + a * (a + 1.0) * iy * iy * inv_all(c, &[g - 1.0, g - 2.0, d - 1.0, d - 2.0])
                        * c.h(H2, &[a + 2.0, b, g - 2.0, d - 2.0, e], x, y)?)
            }),
            "Î² H2 = (ε−1)(ε−2)/(x²(α−1)(α−2)(β−1)(β−2))·H2(α−2,β−2,γ,δ;ε−2) + 2(ε−1)/(xy(β−1)(γ−1)(δ−1))·H2(α,β−1,γ−1,δ−1;ε−1) + α(α+1)/(y²(γ−1)(γ−2)(δ−1)(δ−2))·H2(α+2,β,γ−2,δ−2;ε)",
        ),
        is: "Îˢ H2 = (1−ε)ₛ/(xˢyˢ(1−β)ₛ(1−γ)ₛ(1−δ)ₛ)·∏_{k=1}^{s}(θx+θy−k+1)·H2(α,β−s,γ−s,δ−s;ε−s)",
    }
}

fn h3() -> Family5 {
    Family5 {
        id: H3,
        ix: (
            Coef {
                alt: true,
                num: &[(B::R(2), 1)],
                den: &[(B::R(0), 2)],
                xp: 1,
                yp: 0,
                shift: &[(0, -2.0), (2, -1.0)],
            },
            "Îxˢ H3 = (−1)ˢ(1−γ)ₛ/(xˢ(1−α)₂ₛ)·H3(α−2s,β;γ−s)",
        ),
        iy: (
            Coef {
                alt: true,
                num: &[(B::R(2), 1)],
                den: &[(B::R(0), 1), (B::R(1), 1)],
                xp: 0,
                yp: 1,
                shift: &[(0, -1.0), (1, -1.0), (2, -1.0)],
            },
            "Îyˢ H3 = (−1)ˢ(1−γ)ₛ/(yˢ(1−α)ₛ(1−β)ₛ)·H3(α−s,β−s;γ−s)",
        ),
        ixy: (
            Coef {
                alt: false,
                num: &[(B::R(2), 2)],
                den: &[(B::R(0), 3), (B::R(1), 1)],
                xp: 1,
                yp: 1,
                shift: &[(0, -3.0), (1, -1.0), (2, -2.0)],
            },
            "(ÎxÎy)ˢ H3 = (1−γ)₂ₛ/(xˢyˢ(1−α)₃ₛ(1−β)ₛ)·H3(α−3s,β−s;γ−2s)",
        ),
        i2: (
            side(|c, i: &Instance| {
                let p = &i.params;
                let (a, b, g) = (p[0], p[1], p[2]);
                let (x, y) = (i.x(), i.y());
                let ix = c.inv_coord(H3, Axis::X, x);
                let iy = c.inv_coord(H3, Axis::Y, y);
                let gg = (g - 1.0) * (g - 2.0);
                Ok(gg * ix * ix * inv_all(c, &[a - 1.0, a - 2.0, a - 3.0, a - 4.0])
                    * c.h(H3, &[a - 4.0, b, g - 2.0], x, y)?
                    + 2.0 * gg * ix * iy * inv_all(c, &[a - 1.0, a - 2.0, a - 3.0, b - 1.0])
                        * c.h(H3, &[a - 3.0, b - 1.0, g - 2.0], x, y)?
                    + gg * iy * iy * inv_all(c, &[a - 1.0, a - 2.0, b - 1.0, b - 2.0])
                        * c.h(H3, &[a - 2.0, b - 2.0, g - 2.0], x, y)?)
            }),
            "Î² H3 = (γ−1)(γ−2)/(x²(α−1)(α−2)(α−3)(α−4))·H3(α−4,β;γ−2) + 2(γ−1)(γ−2)/(xy(α−1)(α−2)(α−3)(β−1))·H3(α−3,β−1;γ−2) + (γ−1)(γ−2)/(y²(α−1)(α−2)(β−1)(β−2))·H3(α−2,β−2;γ−2)",
        ),
        is: "Îˢ H3 = (1−γ)₂ₛ/(xˢyˢ(1−α)₃ₛ(1−β)ₛ)·∏_{k=1}^{s}(θx+θy−k+1)·H3(α−3s,β−s;γ−2s)",
    }
}

fn h4() -> Family5 {
    Family5 {
        id: H4,
        ix: (
            Coef {
                alt: true,
                num: &[(B::R(2), 1)],
                den: &[(B::R(0), 2)],
                xp: 1,
                yp: 0,
                shift: &[(0, -2.0), (2, -1.0)],
            },
            "Îxˢ H4 = (−1)ˢ(1−γ)ₛ/(xˢ(1−α)₂ₛ)·H4(α−2s,β;γ−s,δ)",
        ),
        iy: (
            Coef {
                alt: true,
                num: &[(B::R(2), 1)],
                den: &[(B::R(0), 1), (B::R(1), 1)],
                xp: 0,
                yp: 1,
                shift: &[(0, -1.0), (1, -1.0), (3, -1.0)],
            },
            "Îyˢ H4 = (−1)ˢ(1−γ)ₛ/(yˢ(1−α)ₛ(1−β)ₛ)·H4(α−s,β−s;γ,δ−s)",
        ),
        ixy: (
            Coef {
                alt: false,
                num: &[(B::R(2), 1), (B::R(3), 1)],
                den: &[(B::R(0), 3), (B::R(1), 1)],
                xp: 1,
                yp: 1,
                shift: &[(0, -3.0), (1, -1.0), (2, -1.0), (3, -1.0)],
            },
            "(ÎxÎy)ˢ H4 = (1−γ)ₛ(1−δ)ₛ/(xˢyˢ(1−α)₃ₛ(1−β)ₛ)·H4(α−3s,β−s;γ−s,δ−s)",
        ),
        i2: (
            side(|c, i: &Instance| {
                let p = &i.params;
                let (a, b, g, d) = (p[0], p[1], p[2], p[3]);
                let (x, y) = (i.x(), i.y());
                let ix = c.inv_coord(H4, Axis::X, x);
                let iy = c.inv_coord(H4, Axis::Y, y);
                Ok((g - 1.0) * (g - 2.0) * ix * ix * inv_all(c, &[a - 1.0, a - 2.0, a - 3.0, a - 4.0])
                    * c.h(H4, &[a - 4.0, b, g - 2.0, d], x, y)?
                    + 2.0 * (g - 1.0) * (d - 1.0) * ix * iy
                        * inv_all(c, &[a - 1.0, a - 2.0, a - 3.0, b - 1.0])
                        * c.h(H4, &[a - 3.0, b - 1.0, g - 1.0, d - 1.0], x, y)?
                    + (d - 1.0) * (d - 2.0) * iy * iy * inv_all(c, &[a - 1.0, a - 2.0, b - 1.0, b - 2.0])
                        * c.h(H4, &[a - 2.0, b - 2.0, g, d - 2.0], x, y)?)
            }),
            "Î² H4 = (γ−1)(γ−2)/(x²(α−1)(α−2)(α−3)(α−4))·H4(α−4,β;γ−2,δ) + 2(γ−1)(δ−1)/(xy(α−1)(α−2)(α−3)(β−1))·H4(α−3,β−1;γ−1,δ−1) + (δ−1)(δ−2)/(y²(α−1)(α−2)(β−1)(β−2))·H4(α−2,β−2;γ,δ−2)",
        ),
        is: "Îˢ H4 = (1−γ)ₛ(1−δ)ₛ/(xˢyˢ(1−α)₃ₛ(1−β)ₛ)·∏_{k=1}^{s}(θx+θy−k+1)·H4(α−3s,β−s;γ−s,δ−s)",
    }
}

fn h5() -> Family5 {
    Family5 {
        id: H5,
        ix: (
            Coef {
                alt: false,
                num: &[(B::P(1), 1)],
                den: &[(B::R(0), 2)],
                xp: 1,
                yp: 0,
                shift: &[(0, -2.0), (1, 1.0)],
            },
            "Îxˢ H5 = (β)ₛ/(xˢ(1−α)₂ₛ)·H5(α−2s,β+s;γ)",
        ),
        iy: (
            Coef {
                alt: true,
                num: &[(B::R(2), 1)],
                den: &[(B::R(0), 1), (B::R(1), 1)],
                xp: 0,
                yp: 1,
                shift: &[(0, -1.0), (1, -1.0), (2, -1.0)],
            },
            "Îyˢ H5 = (−1)ˢ(1−γ)ₛ/(yˢ(1−α)ₛ(1−β)ₛ)·H5(α−s,β−s;γ−s)",
        ),
        ixy: (
            Coef {
                alt: false,
                num: &[(B::R(2), 1)],
                den: &[(B::R(0), 3)],
                xp: 1,
                yp: 1,
                shift: &[(0, -3.0), (2, -1.0)],
            },
            "(ÎxÎy)ˢ H5 = (1−γ)ₛ/(xˢyˢ(1−α)₃ₛ)·H5(α−3s,β;γ−s)",
        ),
        i2: (
            side(|c, i: &Instance| {
                let p = &i.params;
                let (a, b, g) = (p[0], p[1], p[2]);
                let (x, y) = (i.x(), i.y());
                let ix = c.inv_coord(H5, Axis::X, x);
                let iy = c.inv_coord(H5, Axis::Y, y);
                Ok(b * (b + 1.0) * ix * ix * inv_all(c, &[a - 1.0, a - 2.0, a - 3.0, a - 4.0])
                    * c.h(H5, &[a - 4.0, b + 2.0, g], x, y)?
                    + 2.0 * (g - 1.0) * ix * iy * inv_all(c, &[a - 1.0, a - 2.0, a - 3.0])
                        * c.h(H5, &[a - 3.0, b, g - 1.0], x, y)?
                    + (g - 1.0) * (g - 2.0) * iy * iy * inv_all(c, &[a - 1.0, a - 2.0, b - 1.0, b - 2.0])
                        * c.h(H5, &[a - 2.0, b - 2.0, g - 2.0], x, y)?)
            }),
            "Î² H5 = β(β+1)/(x²(α−1)(α−2)(α−3)(α−4))·H5(α−4,β+2;γ) + 2(γ−1)/(xy(α−1)(α−2)(α−3))·H5(α−3,β;γ−1) + (γ−1)(γ−2)/(y²(α−1)(α−2)(β−1)(β−2))·H5(α−2,β−2;γ−2)",
        ),
        is: "Îˢ H5 = (1−γ)ₛ/(xˢyˢ(1−α)₃ₛ)·∏_{k=1}^{s}(θx+θy−k+1)·H5(α−3s,β;γ−s)",
    }
}

fn h6() -> Family5 {
    Family5 {
        id: H6,
        ix: (
            Coef {
                alt: false,
                num: &[(B::P(1), 1)],
                den: &[(B::R(0), 2)],
                xp: 1,
                yp: 0,
                shift: &[(0, -2.0), (1, 1.0)],
            },
            "Îxˢ H6 = (β)ₛ/(xˢ(1−α)₂ₛ)·H6(α−2s,β+s,γ)",
        ),
        iy: (
            Coef {
                alt: false,
                num: &[(B::P(0), 1)],
                den: &[(B::R(1), 1), (B::R(2), 1)],
                xp: 0,
                yp: 1,
                shift: &[(0, 1.0), (1, -1.0), (2, -1.0)],
            },
            "Îyˢ H6 = (α)ₛ/(yˢ(1−β)ₛ(1−γ)ₛ)·H6(α+s,β−s,γ−s)",
        ),
        ixy: (
            Coef {
                alt: false,
                num: &[],
                den: &[(B::R(0), 1), (B::R(2), 1)],
                xp: 1,
                yp: 1,
                shift: &[(0, -1.0), (2, -1.0)],
            },
            "(ÎxÎy)ˢ H6 = 1/(xˢyˢ(1−α)ₛ(1−γ)ₛ)·H6(α−s,β,γ−s)",
        ),
        i2: (
            side(|c, i: &Instance| {
                let p = &i.params;
                let (a, b, g) = (p[0], p[1], p[2]);
                let (x, y) = (i.x(), i.y());
                let ix = c.inv_coord(H6, Axis::X, x);
                let iy = c.inv_coord(H6, Axis::Y, y);
                Ok(b * (b + 1.0) * ix * ix * inv_all(c, &[a - 1.0, a - 2.0, a - 3.0, a - 4.0])
                    * c.h(H6, &[a - 4.0, b + 2.0, g], x, y)?
                    + 2.0 * ix * iy * inv_all(c, &[a - 1.0, g - 1.0])
                        * c.h(H6, &[a - 1.0, b, g - 1.0], x, y)?
                    + a * (a + 1.0) * iy * iy * inv_all(c, &[b - 1.0, b - 2.0, g - 1.0, g - 2.0])
                        * c.h(H6, &[a + 2.0, b - 2.0, g - 2.0], x, y)?)
            }),
            "Î² H6 = β(β+1)/(x²(α−1)(α−2)(α−3)(α−4))·H6(α−4,β+2,γ) + 2/(xy(α−1)(γ−1))·H6(α−1,β,γ−1) + α(α+1)/(y²(β−1)(β−2)(γ−1)(γ−2))·H6(α+2,β−2,γ−2)",
        ),
        is: "Îˢ H6 = 1/(xˢyˢ(1−α)ₛ(1−γ)ₛ)·∏_{k=1}^{s}(θx+θy−k+1)·H6(α−s,β,γ−s)",
    }
}

fn h7() -> Family5 {
    Family5 {
        id: H7,
        ix: (
            Coef {
                alt: true,
                num: &[(B::R(3), 1)],
                den: &[(B::R(0), 2)],
                xp: 1,
                yp: 0,
                shift: &[(0, -2.0), (3, -1.0)],
            },
            "Îxˢ H7 = (−1)ˢ(1−δ)ₛ/(xˢ(1−α)₂ₛ)·H7(α−2s,β,γ;δ−s)",
        ),
        iy: (
            Coef {
                alt: false,
                num: &[(B::P(0), 1)],
                den: &[(B::R(1), 1), (B::R(2), 1)],
                xp: 0,
                yp: 1,
                shift: &[(0, 1.0), (1, -1.0), (2, -1.0)],
            },
            "Îyˢ H7 = (α)ₛ/(yˢ(1−β)ₛ(1−γ)ₛ)·H7(α+s,β−s,γ−s;δ)",
        ),
        ixy: (
            Coef {
                alt: false,
                num: &[(B::R(3), 1)],
                den: &[(B::R(0), 1), (B::R(1), 1), (B::R(2), 1)],
                xp: 1,
                yp: 1,
                shift: &[(0, -1.0), (1, -1.0), (2, -1.0), (3, -1.0)],
            },
            "(ÎxÎy)ˢ H7 = (1−δ)ₛ/(xˢyˢ(1−α)ₛ(1−β)ₛ(1−γ)ₛ)·H7(α−s,β−s,γ−s;δ−s)",
        ),
        i2: (
            side(|c, i: &Instance| {
                let p = &i.params;
                let (a, b, g, d) = (p[0], p[1], p[2], p[3]);
                let (x, y) = (i.x(), i.y());
                let ix = c.inv_coord(H7, Axis::X, x);
                let iy = c.inv_coord(H7, Axis::Y, y);
                Ok((d - 1.0) * (d - 2.0) * ix * ix * inv_all(c, &[a - 1.0, a - 2.0, a - 3.0, a - 4.0])
                    * c.h(H7, &[a - 4.0, b, g, d - 2.0], x, y)?
                    + 2.0 * (d - 1.0) * ix * iy * inv_all(c, &[a - 1.0, b - 1.0, g - 1.0])
                        * c.h(H7, &[a - 1.0, b - 1.0, g - 1.0, d - 1.0], x, y)?
                    + a * (a + 1.0) * iy * iy * inv_all(c, &[b - 1.0, b - 2.0, g - 1.0, g - 2.0])
                        * c.h(H7, &[a + 2.0, b - 2.0, g - 2.0, d], x, y)?)
            }),
            "Î² H7 = (δ−1)(δ−2)/(x²(α−1)(α−2)(α−3)(α−4))·H7(α−4,β,γ;δ−2) + 2(δ−1)/(xy(α−1)(β−1)(γ−1))·H7(α−1,β−1,γ−1;δ−1) + α(α+1)/(y²(β−1)(β−2)(γ−1)(γ−2))·H7(α+2,β−2,γ−2;δ)",
        ),
        is: "Îˢ H7 = (1−δ)ₛ/(xˢyˢ(1−α)ₛ(1−β)ₛ(1−γ)ₛ)·∏_{k=1}^{s}(θx+θy−k+1)·H7(α−s,β−s,γ−s;δ−s)",
    }
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    for (i, f) in [h1(), h2(), h3(), h4(), h5(), h6(), h7()].into_iter().enumerate() {
        let mut rs = build(f);
        for r in &mut rs {
            if i > 0 || r.identity_id.ends_with("I_s") {
                r.open_question = true;
            }
        }
        if i == 1 {
            rs[3].note = Some(format!(
                "{BOUNDARY_NOTE}; printed H1 in the middle term read as H2"
            ));
        }
        if i == 2 {
            rs[1].note = Some(format!("{BOUNDARY_NOTE}; printed δ read as γ"));
        }
        out.extend(rs);
    }
    out
}
