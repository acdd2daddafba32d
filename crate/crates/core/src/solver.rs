// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! Tangent angle to parameter inversion within one monotone interval.

use crate::angle::{angle_diff, Angle};
use crate::error::{Result, StrokeError};
use crate::geom::{bernstein2_to_power, solve_quadratic};
use crate::intervals::{Interval, IntervalKind};
use crate::segment::{Hodograph, PathSegment};

/// Angular slack when checking that an angle belongs to an interval.
pub const ANGLE_SLACK: f64 = 1e-9;
/// Roots this far outside the parameter range are still accepted (and clamped).
const T_SLACK: f64 = 1e-9;
/// Roots where `|H|` falls below this fraction of the hodograph scale carry
/// no direction (a `w = -1` conic's hodograph vanishes at its asymptote).
const H_ZERO: f64 = 1e-12;

/// Signed position of `psi` within the interval, measured from `psi_lo`.
fn offset_in(iv: &Interval, psi: Angle) -> Result<f64> {
    let u = angle_diff(psi, iv.psi_lo);
    if u.abs() <= ANGLE_SLACK {
        return Ok(0.0);
    }
    let inside = u.signum() == iv.delta.signum() && u.abs() <= iv.delta.abs() + ANGLE_SLACK;
    if inside {
        Ok(u.clamp(-iv.delta.abs(), iv.delta.abs()))
    } else {
        Err(StrokeError::AngleOutOfInterval { psi: psi.radians() })
    }
}

/// Solves `H(t) . N(psi) = 0` with `H(t)` pointing along `psi`, for `t` in
/// `[t_lo, t_hi]`, preferring the root nearest `predict`.
///
/// Roots where `H` vanishes are skipped. When no root qualifies the range
/// end with the smaller `|H . N|` wins.
pub fn solve_in_range(h: &Hodograph, t_lo: f64, t_hi: f64, psi: Angle, predict: f64) -> f64 {
    let n = psi.normal();
    let tan = psi.tangent();
    let [a0, a1, a2] = h.h.map(|v| v.dot(n));
    let (a, b, c) = bernstein2_to_power(a0, a1, a2);
    let floor = H_ZERO * h.scale();
    let mut best: Option<f64> = None;
    for r in solve_quadratic(a, b, c) {
        if r < t_lo - T_SLACK || r > t_hi + T_SLACK {
            continue;
        }
        let r = r.clamp(t_lo, t_hi);
        if h.eval(r).dot(tan) <= floor {
            continue;
        }
        if best.is_none_or(|b| (r - predict).abs() < (b - predict).abs()) {
            best = Some(r);
        }
    }
    best.unwrap_or_else(|| {
        let e_lo = h.eval(t_lo).dot(n).abs();
        let e_hi = h.eval(t_hi).dot(n).abs();
        if e_hi < e_lo {
            t_hi
        } else {
            t_lo
        }
    })
}

/// Parameter at which the segment's tangent angle equals `psi`, inside `iv`.
pub fn t_of_psi(seg: &PathSegment, iv: &Interval, psi: Angle) -> Result<f64> {
    let u = offset_in(iv, psi)?;
    if iv.kind != IntervalKind::Curve || u == 0.0 {
        return Ok(iv.t_lo);
    }
    if (u - iv.delta).abs() <= ANGLE_SLACK {
        return Ok(iv.t_hi);
    }
    let predict = iv.t_lo + u / iv.delta * (iv.t_hi - iv.t_lo);
    Ok(solve_in_range(&seg.hodograph(), iv.t_lo, iv.t_hi, psi, predict))
}

/// As [`t_of_psi`], clamped to be no smaller than `prev_t` for callers
/// stepping `psi` monotonically through the interval.
pub fn t_of_psi_monotone(seg: &PathSegment, iv: &Interval, psi: Angle, prev_t: f64) -> Result<f64> {
    Ok(t_of_psi(seg, iv, psi)?.max(prev_t).min(iv.t_hi))
}
