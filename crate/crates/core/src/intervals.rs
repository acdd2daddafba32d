// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! Decomposition of a segment's tangent-angle range into intervals on which
//! the tangent turns strictly one way by less than half a turn, so that the
//! angle-to-parameter map is single valued.

use core::f64::consts::{PI, TAU};

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

use crate::angle::{angle_add, angle_diff, Angle};
use crate::error::{Result, StrokeError};
use crate::geom::{bernstein2, bernstein2_to_power, solve_quadratic, Vec2};
use crate::segment::{Hodograph, PathSegment, SegmentEnd, SegmentForm};
use crate::solver;

/// Breakpoints this close to an end are dropped.
const END_EPS: f64 = 1e-9;
/// Relative size of `|H|` under which the hodograph counts as vanishing.
const CUSP_REL_TOL: f64 = 1e-7;
/// Intervals turning at least this much are split.
const SPLIT_THRESHOLD: f64 = PI - 1e-9;

/// What sits at an interval boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BreakKind {
    Start,
    End,
    /// Turning direction reverses; the tangent is continuous.
    Inflection,
    /// The gradient vanishes and the tangent flips by half a turn.
    Cusp,
    /// Conic denominator zero: the curve passes through infinity.
    Asymptote,
    /// Artificial split of an interval turning half a turn or more.
    Split,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalKind {
    /// Tangent turns strictly monotonically with `t`.
    Curve,
    /// Constant tangent.
    Flat,
    /// Fixed position, tangent sweeps (cusp pivot); `t_lo == t_hi`.
    Pivot,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub t_lo: f64,
    pub t_hi: f64,
    pub psi_lo: Angle,
    pub psi_hi: Angle,
    /// Signed turn from `psi_lo` to `psi_hi`, `|delta| < pi`.
    pub delta: f64,
    pub kind: IntervalKind,
    pub lo: BreakKind,
    pub hi: BreakKind,
}

/// Per-segment interval decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalTable {
    pub intervals: Vec<Interval>,
}

impl IntervalTable {
    /// Interval count `M`.
    pub fn m(&self) -> usize {
        self.intervals.len()
    }

    /// Parametric breakpoints, `M + 1` entries.
    pub fn p(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.intervals.iter().map(|iv| iv.t_lo).collect();
        out.extend(self.intervals.last().map(|iv| iv.t_hi));
        out
    }

    /// Tangent angles at the breakpoints, `M + 1` entries. Where an asymptote
    /// carries two one-sided tangents the outgoing one is reported.
    pub fn psi(&self) -> Vec<Angle> {
        let mut out: Vec<Angle> = self.intervals.iter().map(|iv| iv.psi_lo).collect();
        out.extend(self.intervals.last().map(|iv| iv.psi_hi));
        out
    }

    pub fn delta(&self) -> Vec<f64> {
        self.intervals.iter().map(|iv| iv.delta).collect()
    }

    /// Cumulative absolute turn, `M + 1` entries starting at zero.
    pub fn delta_sigma(&self) -> Vec<f64> {
        let mut acc = 0.0;
        let mut out = vec![0.0];
        for iv in &self.intervals {
            acc += iv.delta.abs();
            out.push(acc);
        }
        out
    }

    pub fn total_turn(&self) -> f64 {
        self.intervals.iter().map(|iv| iv.delta.abs()).sum()
    }
}

/// Loop–Blinn style classification of a cubic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CubicClass {
    Serpentine,
    Cusp,
    Loop,
    /// Inflection polynomial vanishes or is constant: quadratic-like, line-like,
    /// or a cusp at infinity.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Inflections {
    /// Parameters strictly inside `(0, 1)`, ascending. A cusp reports one value.
    pub params: ArrayVec<f64, 2>,
    pub class: CubicClass,
}

/// Where a cubic's curvature vanishes, plus its classification.
pub fn inflection_params(seg: &PathSegment) -> Inflections {
    let h = seg.hodograph();
    let scale = h.scale();
    let [x0, x1, x2] = h.turning_bernstein();
    let (a, b, c) = bernstein2_to_power(x0, x1, x2);
    let xs = x0.abs().max(x1.abs()).max(x2.abs());
    let mut params = ArrayVec::new();
    if scale == 0.0 || xs <= 1e-12 * scale * scale {
        return Inflections { params, class: CubicClass::Degenerate };
    }
    let coef = a.abs().max(b.abs()).max(c.abs());
    if a.abs() <= 1e-12 * coef {
        if b.abs() > 1e-12 * coef {
            let r = -c / b;
            if r > END_EPS && r < 1.0 - END_EPS {
                params.push(r);
            }
        }
        // One inflection at infinity: a serpentine whose second flex is out of reach.
        let class = if b.abs() > 1e-12 * coef { CubicClass::Serpentine } else { CubicClass::Degenerate };
        return Inflections { params, class };
    }
    let vertex = -b / (2.0 * a);
    let disc = b * b - 4.0 * a * c;
    let near_zero = disc.abs() <= 1e-9 * (b * b + (4.0 * a * c).abs());
    let cusp_here = (0.0..=1.0).contains(&vertex) && h.eval(vertex).hypot() <= CUSP_REL_TOL * scale;
    if near_zero || cusp_here {
        if vertex > END_EPS && vertex < 1.0 - END_EPS {
            params.push(vertex);
        }
        return Inflections { params, class: CubicClass::Cusp };
    }
    if disc < 0.0 {
        return Inflections { params, class: CubicClass::Loop };
    }
    for r in solve_quadratic(a, b, c) {
        if r > END_EPS && r < 1.0 - END_EPS {
            params.push(r);
        }
    }
    Inflections { params, class: CubicClass::Serpentine }
}

/// Parameters in `(0, 1)` where a conic's turning direction reverses, i.e.
/// where its denominator changes sign (external hyperbola, `w < -1`) or
/// touches zero (external parabola, `w = -1`).
pub fn conic_reversal_params(seg: &PathSegment) -> ArrayVec<f64, 2> {
    let mut out = ArrayVec::new();
    if seg.form() != SegmentForm::Conic {
        return out;
    }
    let w = seg.weight();
    if w > -1.0 {
        return out;
    }
    // (2 - 2w) t^2 + (2w - 2) t + 1 = 0  =>  t = 1/2 ± sqrt(w^2 - 1) / (2 (1 - w))
    let half_width = ((w * w - 1.0).max(0.0)).sqrt() / (2.0 * (1.0 - w));
    if half_width == 0.0 {
        out.push(0.5);
    } else {
        for r in [0.5 - half_width, 0.5 + half_width] {
            if r > 0.0 && r < 1.0 {
                out.push(r);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Breakpoint {
    t: f64,
    kind: BreakKind,
}

fn tangent_angle_right(seg: &PathSegment, h: &Hodograph, t: f64) -> Result<Angle> {
    if t <= 0.0 {
        return Ok(Angle::of(seg.endpoint_unit_gradient(SegmentEnd::Start)?));
    }
    one_sided(h, t, 1.0)
}

fn tangent_angle_left(seg: &PathSegment, h: &Hodograph, t: f64) -> Result<Angle> {
    if t >= 1.0 {
        return Ok(Angle::of(seg.endpoint_unit_gradient(SegmentEnd::Stop)?));
    }
    one_sided(h, t, -1.0)
}

/// Limit direction of `H` approaching `t` from the side `side` (+1 right, -1 left).
fn one_sided(h: &Hodograph, t: f64, side: f64) -> Result<Angle> {
    let scale = h.scale();
    let v = h.eval(t);
    if v.hypot() > CUSP_REL_TOL * scale {
        return Ok(Angle::of(v));
    }
    let d1 = h.deriv(t);
    if d1.hypot() > CUSP_REL_TOL * scale {
        return Ok(Angle::of(d1 * side));
    }
    let d2 = h.second_deriv();
    if d2.is_zero_length() {
        return Err(StrokeError::ZeroLengthSegment);
    }
    Ok(Angle::of(d2))
}

fn collinear_direction(h: &Hodograph) -> Option<Vec2> {
    let scale = h.scale();
    let [x0, x1, x2] = h.turning_bernstein();
    let xs = x0.abs().max(x1.abs()).max(x2.abs());
    if xs > 1e-12 * scale * scale {
        return None;
    }
    h.h.iter().copied().max_by(|a, b| a.hypot2().total_cmp(&b.hypot2()))?.try_normalize()
}

fn breakpoints(seg: &PathSegment, h: &Hodograph) -> Vec<Breakpoint> {
    let mut out = Vec::new();
    if seg.form() == SegmentForm::Conic {
        for t in conic_reversal_params(seg) {
            out.push(Breakpoint { t, kind: BreakKind::Asymptote });
        }
    }
    if let Some(dir) = collinear_direction(h) {
        // Straight: the only events are direction reversals along the line.
        let s = [h.h[0].dot(dir), h.h[1].dot(dir), h.h[2].dot(dir)];
        let (a, b, c) = bernstein2_to_power(s[0], s[1], s[2]);
        for r in solve_quadratic(a, b, c) {
            if r <= END_EPS || r >= 1.0 - END_EPS {
                continue;
            }
            let eps = 1e-7;
            let before = bernstein2(s[0], s[1], s[2], (r - eps).max(0.0));
            let after = bernstein2(s[0], s[1], s[2], (r + eps).min(1.0));
            let reverses = before * after < 0.0;
            let near_asymptote = out.iter().any(|bp| (bp.t - r).abs() < 1e-9);
            if reverses && !near_asymptote {
                out.push(Breakpoint { t: r, kind: BreakKind::Cusp });
            }
        }
    } else {
        match seg.form() {
            SegmentForm::Cubic => {
                let infl = inflection_params(seg);
                for t in infl.params {
                    let kind = if h.eval(t).hypot() <= CUSP_REL_TOL * h.scale() {
                        BreakKind::Cusp
                    } else {
                        BreakKind::Inflection
                    };
                    out.push(Breakpoint { t, kind });
                }
            }
            // Nondegenerate quadratics, conics and lines never flex.
            SegmentForm::Quadratic | SegmentForm::Conic | SegmentForm::Line => {}
        }
    }
    out.sort_by(|a, b| a.t.total_cmp(&b.t));
    out.dedup_by(|b, a| (b.t - a.t).abs() < 1e-12);
    out
}

fn turning_sign(h: &Hodograph, t_lo: f64, t_hi: f64) -> f64 {
    let scale = h.scale();
    let tm = 0.5 * (t_lo + t_hi);
    let s = h.turning(tm);
    if s.abs() <= 1e-14 * scale * scale {
        0.0
    } else {
        s.signum()
    }
}

/// Orients the short difference `d` to the turning sign `sign`.
fn orient(d: f64, sign: f64) -> f64 {
    if sign > 0.0 && d < 0.0 {
        if d > -1e-7 {
            0.0
        } else {
            d + TAU
        }
    } else if sign < 0.0 && d > 0.0 {
        if d < 1e-7 {
            0.0
        } else {
            d - TAU
        }
    } else {
        d
    }
}

fn curve_interval(
    seg: &PathSegment,
    h: &Hodograph,
    lo: Breakpoint,
    hi: Breakpoint,
) -> Result<Interval> {
    let psi_lo = tangent_angle_right(seg, h, lo.t)?;
    let psi_hi = tangent_angle_left(seg, h, hi.t)?;
    let sign = turning_sign(h, lo.t, hi.t);
    let mut delta = orient(angle_diff(psi_hi, psi_lo), sign);
    if delta.abs() < 1e-12 {
        delta = 0.0;
    }
    let kind = if delta == 0.0 { IntervalKind::Flat } else { IntervalKind::Curve };
    Ok(Interval { t_lo: lo.t, t_hi: hi.t, psi_lo, psi_hi, delta, kind, lo: lo.kind, hi: hi.kind })
}

/// Builds the interval table for a nonzero-length segment.
pub fn build_intervals(seg: &PathSegment) -> Result<IntervalTable> {
    if seg.is_zero_length() {
        return Err(StrokeError::ZeroLengthSegment);
    }
    let h = seg.hodograph();
    let mut bps = vec![Breakpoint { t: 0.0, kind: BreakKind::Start }];
    bps.extend(breakpoints(seg, &h));
    bps.push(Breakpoint { t: 1.0, kind: BreakKind::End });

    let mut raw: Vec<Interval> = Vec::with_capacity(bps.len() + 2);
    for pair in bps.windows(2) {
        raw.push(curve_interval(seg, &h, pair[0], pair[1])?);
    }

    // Insert a half-turn pivot at every cusp.
    let mut intervals = Vec::with_capacity(raw.len() * 2);
    for (i, iv) in raw.iter().enumerate() {
        intervals.push(*iv);
        if iv.hi == BreakKind::Cusp {
            let next = raw[i + 1];
            let mut sign = turning_sign(&h, iv.t_lo, iv.t_hi);
            if sign == 0.0 {
                sign = turning_sign(&h, next.t_lo, next.t_hi);
            }
            if sign == 0.0 {
                sign = 1.0;
            }
            let mut delta = orient(angle_diff(next.psi_lo, iv.psi_hi), sign);
            if delta == 0.0 {
                delta = sign * PI;
            }
            intervals.push(Interval {
                t_lo: iv.t_hi,
                t_hi: iv.t_hi,
                psi_lo: iv.psi_hi,
                psi_hi: next.psi_lo,
                delta,
                kind: IntervalKind::Pivot,
                lo: BreakKind::Cusp,
                hi: BreakKind::Cusp,
            });
        }
    }

    // Split anything turning half a turn or more.
    let mut out = Vec::with_capacity(intervals.len() + 2);
    for iv in intervals {
        if iv.delta.abs() < SPLIT_THRESHOLD {
            out.push(iv);
            continue;
        }
        let psi_mid = angle_add(iv.psi_lo, iv.delta / 2.0);
        let t_mid = match iv.kind {
            IntervalKind::Pivot => iv.t_lo,
            _ => solver::solve_in_range(&h, iv.t_lo, iv.t_hi, psi_mid, 0.5 * (iv.t_lo + iv.t_hi)),
        };
        let half = iv.delta / 2.0;
        out.push(Interval { t_hi: t_mid, psi_hi: psi_mid, delta: half, hi: BreakKind::Split, ..iv });
        out.push(Interval { t_lo: t_mid, psi_lo: psi_mid, delta: iv.delta - half, lo: BreakKind::Split, ..iv });
    }
    Ok(IntervalTable { intervals: out })
}
