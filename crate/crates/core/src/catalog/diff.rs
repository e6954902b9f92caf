//! Theta-operator relations and derivative closed forms.

use super::{sh, side, sign_pow, Family, FreeKind, IdentityRecord, Instance, Leg, LegTarget, LegTol, SideFn};
use crate::operators::{Axis, MAX_FD_ORDER};
use crate::series::HornFunctionId::{self, H1, H2, H3, H4, H5, H6, H7};

/// `H(p_idx ± 1) = (1 + (wx·θx + wy·θy)/d) H` with `d = p` for `+1`, `p − 1` for `−1`.
fn theta(id: HornFunctionId, idx: usize, up: bool, wx: i32, wy: i32, anchor: &str) -> IdentityRecord {
    let step = if up { 1.0 } else { -1.0 };
    let lhs = side(move |c, i: &Instance| c.h(id, &sh(&i.params, &[(idx, step)]), i.x(), i.y()));
    let rhs = side(move |c, i: &Instance| {
        let (x, y) = (i.x(), i.y());
        let d = if up { i.params[idx] } else { i.params[idx] - 1.0 };
        Ok(c.h(id, &i.params, x, y)? + c.inv(d) * c.theta(id, &i.params, x, y, wx, wy)?)
    });
    let tag = id.param_names()[idx];
    IdentityRecord::new(id, Family::DiffTheta, tag, anchor, FreeKind::None, lhs, rhs)
}

pub(super) fn theta_records() -> Vec<IdentityRecord> {
    vec![
        theta(H1, 0, true, 1, -1, "H1(α+1,β,γ;δ) = (1 + (θx−θy)/α)·H1"),
        theta(H1, 1, true, 1, 1, "H1(α,β+1,γ;δ) = (1 + (θx+θy)/β)·H1"),
        theta(H1, 2, true, 0, 1, "H1(α,β,γ+1;δ) = (1 + θy/γ)·H1"),
        theta(H1, 3, false, 1, 0, "H1(α,β,γ;δ−1) = (1 + θx/(δ−1))·H1"),
        theta(H2, 0, true, 1, -1, "H2(α+1,β,γ,δ;ε) = (1 + (θx−θy)/α)·H2"),
        theta(H2, 1, true, 1, 0, "H2(α,β+1,γ,δ;ε) = (1 + θx/β)·H2"),
        theta(H2, 2, true, 0, 1, "H2(α,β,γ+1,δ;ε) = (1 + θy/γ)·H2"),
        theta(H2, 3, true, 0, 1, "H2(α,β,γ,δ+1;ε) = (1 + θy/δ)·H2"),
        theta(H2, 4, false, 1, 0, "H2(α,β,γ,δ;ε−1) = (1 + θx/(ε−1))·H2"),
        theta(H3, 0, true, 2, 1, "H3(α+1,β;γ) = (1 + (2θx+θy)/α)·H3"),
        theta(H3, 1, true, 0, 1, "H3(α,β+1;γ) = (1 + θy/β)·H3"),
        theta(H3, 2, false, 1, 1, "H3(α,β;γ−1) = (1 + (θx+θy)/(γ−1))·H3"),
        theta(H4, 0, true, 2, 1, "H4(α+1,β;γ,δ) = (1 + (2θx+θy)/α)·H4"),
        theta(H4, 1, true, 0, 1, "H4(α,β+1;γ,δ) = (1 + θy/β)·H4"),
        theta(H4, 2, false, 1, 0, "H4(α,β;γ−1,δ) = (1 + θx/(γ−1))·H4"),
        theta(H4, 3, false, 0, 1, "H4(α,β;γ,δ−1) = (1 + θy/(δ−1))·H4"),
        theta(H5, 0, true, 2, 1, "H5(α+1,β;γ) = (1 + (2θx+θy)/α)·H5"),
        theta(H5, 1, true, -1, 1, "H5(α,β+1;γ) = (1 + (θy−θx)/β)·H5"),
        theta(H5, 2, false, 0, 1, "H5(α,β;γ−1) = (1 + θy/(γ−1))·H5"),
        theta(H6, 0, true, 2, -1, "H6(α+1,β,γ) = (1 + (2θx−θy)/α)·H6"),
        theta(H6, 1, true, -1, 1, "H6(α,β+1,γ) = (1 + (θy−θx)/β)·H6"),
        theta(H6, 2, true, 0, 1, "H6(α,β,γ+1) = (1 + θy/γ)·H6"),
        theta(H7, 0, true, 2, -1, "H7(α+1,β,γ;δ) = (1 + (2θx−θy)/α)·H7"),
        theta(H7, 1, true, 0, 1, "H7(α,β+1,γ;δ) = (1 + θy/β)·H7"),
        theta(H7, 2, true, 0, 1, "H7(α,β,γ+1;δ) = (1 + θy/γ)·H7"),
        theta(H7, 3, false, 1, 0, "H7(α,β,γ;δ−1) = (1 + θx/(δ−1))·H7"),
    ]
}

/// Denominator Pochhammer `(p)_s`, or `(1−p)_s` when `reflect`.
#[derive(Clone, Copy)]
struct Den {
    idx: usize,
    reflect: bool,
}

/// Closed form `(−1)^{s·alt} ∏(p_i)_{m_i s} / ∏ den · H(p + s·shift)`.
#[derive(Clone, Copy)]
struct ClosedForm {
    alt: bool,
    num: &'static [(usize, i64)],
    den: &'static [Den],
    shift: &'static [(usize, f64)],
}

fn closed_form(id: HornFunctionId, f: ClosedForm, fixed_s: Option<usize>) -> SideFn {
    side(move |c, i: &Instance| {
        let s = fixed_s.unwrap_or_else(|| i.s());
        let p = &i.params;
        let mut coef = if f.alt { sign_pow(s) } else { 1.0 };
        for &(idx, mult) in f.num {
            coef *= c.poch(p[idx], mult * s as i64)?;
        }
        for den in f.den {
            let base = if den.reflect { 1.0 - p[den.idx] } else { p[den.idx] };
            coef *= c.inv_poch(base, s)?;
        }
        let shift: Vec<(usize, f64)> = f.shift.iter().map(|&(k, m)| (k, m * s as f64)).collect();
        Ok(coef * c.h(id, &sh(p, &shift), i.x(), i.y())?)
    })
}

fn fd_applies(i: &Instance) -> bool {
    i.s() <= MAX_FD_ORDER
}

fn always(_: &Instance) -> bool {
    true
}

fn derivative(id: HornFunctionId, axis: Axis, anchor: &str, f: ClosedForm) -> IdentityRecord {
    let tag = match axis {
        Axis::X => "dx_s",
        Axis::Y => "dy_s",
    };
    let lhs = side(move |c, i: &Instance| c.partial(id, &i.params, i.x(), i.y(), axis, i.s()));
    let fd = side(move |c, i: &Instance| c.fd(id, &i.params, i.x(), i.y(), axis, i.s()));
    let mut r = IdentityRecord::new(
        id,
        Family::DiffDeriv,
        tag,
        anchor,
        FreeKind::S,
        lhs,
        closed_form(id, f, None),
    )
    .leg(Leg {
        label: "finite_difference",
        eval: fd,
        target: LegTarget::Rhs,
        tol: LegTol::FiniteDifference,
        applies: fd_applies,
    });
    r.identity_id = format!("{}.DIFF.{tag}", id.name());
    r
}

pub(super) fn derivative_records() -> Vec<IdentityRecord> {
    let first = ClosedForm {
        alt: false,
        num: &[(0, 1), (1, 1)],
        den: &[Den {
            idx: 3,
            reflect: false,
        }],
        shift: &[(0, 1.0), (1, 1.0), (3, 1.0)],
    };
    let h1_first = IdentityRecord::new(
        H1,
        Family::DiffDeriv,
        "3.19",
        "∂/∂x H1(α,β,γ;δ) = (αβ/δ)·H1(α+1,β+1,γ;δ+1)",
        FreeKind::None,
        side(|c, i: &Instance| c.partial(H1, &i.params, i.x(), i.y(), Axis::X, 1)),
        closed_form(H1, first, Some(1)),
    )
    .leg(Leg {
        label: "finite_difference",
        eval: side(|c, i: &Instance| c.fd(H1, &i.params, i.x(), i.y(), Axis::X, 1)),
        target: LegTarget::Rhs,
        tol: LegTol::FiniteDifference,
        applies: always,
    });

    vec![
        derivative(
            H1,
            Axis::X,
            "∂ˢ/∂xˢ H1 = (α)ₛ(β)ₛ/(δ)ₛ·H1(α+s,β+s,γ;δ+s)",
            ClosedForm {
                alt: false,
                num: &[(0, 1), (1, 1)],
                den: &[Den {
                    idx: 3,
                    reflect: false,
                }],
                shift: &[(0, 1.0), (1, 1.0), (3, 1.0)],
            },
        )
        .open_question()
        .noted("printed δ+r read as δ+s"),
        derivative(
            H1,
            Axis::Y,
            "∂ˢ/∂yˢ H1 = (−1)ˢ(β)ₛ(γ)ₛ/(1−α)ₛ·H1(α−s,β+s,γ+s;δ)",
            ClosedForm {
                alt: true,
                num: &[(1, 1), (2, 1)],
                den: &[Den {
                    idx: 0,
                    reflect: true,
                }],
                shift: &[(0, -1.0), (1, 1.0), (2, 1.0)],
            },
        ),
        h1_first,
        derivative(
            H2,
            Axis::X,
            "∂ˢ/∂xˢ H2 = (α)ₛ(β)ₛ/(ε)ₛ·H2(α+s,β+s,γ,δ;ε+s)",
            ClosedForm {
                alt: false,
                num: &[(0, 1), (1, 1)],
                den: &[Den {
                    idx: 4,
                    reflect: false,
                }],
                shift: &[(0, 1.0), (1, 1.0), (4, 1.0)],
            },
        ),
        derivative(
            H2,
            Axis::Y,
            "∂ˢ/∂yˢ H2 = (−1)ˢ(γ)ₛ(δ)ₛ/(1−α)ₛ·H2(α−s,β,γ+s,δ+s;ε)",
            ClosedForm {
                alt: true,
                num: &[(2, 1), (3, 1)],
                den: &[Den {
                    idx: 0,
                    reflect: true,
                }],
                shift: &[(0, -1.0), (2, 1.0), (3, 1.0)],
            },
        ),
        derivative(
            H3,
            Axis::X,
            "∂ˢ/∂xˢ H3 = (α)₂ₛ/(γ)ₛ·H3(α+2s,β;γ+s)",
            ClosedForm {
                alt: false,
                num: &[(0, 2)],
                den: &[Den {
                    idx: 2,
                    reflect: false,
                }],
                shift: &[(0, 2.0), (2, 1.0)],
            },
        ),
        derivative(
            H3,
            Axis::Y,
            "∂ˢ/∂yˢ H3 = (α)ₛ(β)ₛ/(γ)ₛ·H3(α+s,β+s;γ+s)",
            ClosedForm {
                alt: false,
                num: &[(0, 1), (1, 1)],
                den: &[Den {
                    idx: 2,
                    reflect: false,
                }],
                shift: &[(0, 1.0), (1, 1.0), (2, 1.0)],
            },
        ),
        derivative(
            H4,
            Axis::X,
            "∂ˢ/∂xˢ H4 = (α)₂ₛ/(γ)ₛ·H4(α+2s,β;γ+s,δ)",
            ClosedForm {
                alt: false,
                num: &[(0, 2)],
                den: &[Den {
                    idx: 2,
                    reflect: false,
                }],
                shift: &[(0, 2.0), (2, 1.0)],
            },
        ),
        derivative(
            H4,
            Axis::Y,
            "∂ˢ/∂yˢ H4 = (α)ₛ(β)ₛ/(δ)ₛ·H4(α+s,β+s;γ,δ+s)",
            ClosedForm {
                alt: false,
                num: &[(0, 1), (1, 1)],
                den: &[Den {
                    idx: 3,
                    reflect: false,
                }],
                shift: &[(0, 1.0), (1, 1.0), (3, 1.0)],
            },
        ),
        derivative(
            H5,
            Axis::X,
            "∂ˢ/∂xˢ H5 = (−1)ˢ(α)₂ₛ/(1−β)ₛ·H5(α+2s,β−s;γ)",
            ClosedForm {
                alt: true,
                num: &[(0, 2)],
                den: &[Den {
                    idx: 1,
                    reflect: true,
                }],
                shift: &[(0, 2.0), (1, -1.0)],
            },
        ),
        derivative(
            H5,
            Axis::Y,
            "∂ˢ/∂yˢ H5 = (α)ₛ(β)ₛ/(γ)ₛ·H5(α+s,β+s;γ+s)",
            ClosedForm {
                alt: false,
                num: &[(0, 1), (1, 1)],
                den: &[Den {
                    idx: 2,
                    reflect: false,
                }],
                shift: &[(0, 1.0), (1, 1.0), (2, 1.0)],
            },
        ),
        derivative(
            H6,
            Axis::X,
            "∂ˢ/∂xˢ H6 = (−1)ˢ(α)₂ₛ/(1−β)ₛ·H6(α+2s,β−s,γ)",
            ClosedForm {
                alt: true,
                num: &[(0, 2)],
                den: &[Den {
                    idx: 1,
                    reflect: true,
                }],
                shift: &[(0, 2.0), (1, -1.0)],
            },
        ),
        derivative(
            H6,
            Axis::Y,
            "∂ˢ/∂yˢ H6 = (−1)ˢ(β)ₛ(γ)ₛ/(1−α)ₛ·H6(α−s,β+s,γ+s)",
            ClosedForm {
                alt: true,
                num: &[(1, 1), (2, 1)],
                den: &[Den {
                    idx: 0,
                    reflect: true,
                }],
                shift: &[(0, -1.0), (1, 1.0), (2, 1.0)],
            },
        ),
        derivative(
            H7,
            Axis::X,
            "∂ˢ/∂xˢ H7 = (α)₂ₛ/(δ)ₛ·H7(α+2s,β,γ;δ+s)",
            ClosedForm {
                alt: false,
                num: &[(0, 2)],
                den: &[Den {
                    idx: 3,
                    reflect: false,
                }],
                shift: &[(0, 2.0), (3, 1.0)],
            },
        ),
        derivative(
            H7,
            Axis::Y,
            "∂ˢ/∂yˢ H7 = (−1)ˢ(β)ₛ(γ)ₛ/(1−α)ₛ·H7(α−s,β+s,γ+s;δ)",
            ClosedForm {
                alt: true,
                num: &[(1, 1), (2, 1)],
                den: &[Den {
                    idx: 0,
                    reflect: true,
                }],
                shift: &[(0, -1.0), (1, 1.0), (2, 1.0)],
            },
        ),
    ]
}
