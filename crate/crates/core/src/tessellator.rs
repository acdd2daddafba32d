// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! Uniform tangent-angle stepping over an interval table, producing ribs and
//! the quad strip between them.

use core::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::angle::{angle_add, Angle};
use crate::error::{Result, StrokeError};
use crate::geom::{segments_intersect, Point2, Vec2};
use crate::intervals::{build_intervals, BreakKind, Interval, IntervalKind, IntervalTable};
use crate::joins::{CapStyle, JoinStyle};
use crate::segment::PathSegment;
use crate::solver::{t_of_psi, t_of_psi_monotone};

/// Default maximum tangent-angle step: 4 degrees.
pub const DEFAULT_Q: f64 = 4.0 * core::f64::consts::PI / 180.0;

/// Multiple of the segment extent at which strokes running off to infinity
/// along a conic asymptote are cut.
const FAR_CLIP: f64 = 64.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TessellationParams {
    /// Maximum tangent-angle step in radians, in `(0, pi/2]`.
    pub q: f64,
    /// Stroke width.
    pub width: f64,
}

impl TessellationParams {
    pub fn new(q: f64, width: f64) -> Result<Self> {
        if !(q.is_finite() && q > 0.0 && q <= FRAC_PI_2) {
            return Err(StrokeError::InvalidParameter(format!("q = {q} rad is outside (0, pi/2]")));
        }
        if !(width.is_finite() && width > 0.0) {
            return Err(StrokeError::InvalidParameter(format!("width = {width} must be positive")));
        }
        Ok(TessellationParams { q, width })
    }

    pub fn half_width(&self) -> f64 {
        0.5 * self.width
    }
}

impl Default for TessellationParams {
    fn default() -> Self {
        TessellationParams { q: DEFAULT_Q, width: 1.0 }
    }
}

/// Steps per interval for a given `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepTable {
    pub delta: Vec<usize>,
    /// Cumulative steps, `M + 1` entries.
    pub delta_sigma: Vec<usize>,
    pub n: usize,
}

/// Number of `q`-sized steps needed to sweep `turn`, never fewer than one.
pub fn steps_for(turn: f64, q: f64) -> usize {
    // Guard against 90/4 landing a hair above 22.5 and similar.
    let x = turn.abs() / q;
    let r = x.round();
    let c = if (x - r).abs() <= 1e-9 * r.max(1.0) { r } else { x.ceil() };
    (c as usize).max(1)
}

pub fn build_step_table(tab: &IntervalTable, q: f64) -> StepTable {
    let delta: Vec<usize> = tab.intervals.iter().map(|iv| steps_for(iv.delta, q)).collect();
    let mut delta_sigma = Vec::with_capacity(delta.len() + 1);
    let mut acc = 0;
    delta_sigma.push(0);
    for d in &delta {
        acc += d;
        delta_sigma.push(acc);
    }
    StepTable { delta, delta_sigma, n: acc }
}

/// One cross-section of the stroke.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rib {
    pub position: Point2,
    /// Unit normal `(-sin psi, cos psi)`.
    pub normal: Vec2,
    pub t: f64,
    pub psi: Angle,
    pub j: usize,
    pub cum_length: f64,
    pub r_n: f64,
    pub r_p: f64,
    /// Replacement for the computed `N` vertex (miter geometry).
    pub n_override: Option<Point2>,
    /// Replacement for the computed `P` vertex.
    pub p_override: Option<Point2>,
    /// Signed curvature at the rib; infinite on cusp pivots.
    pub kappa: f64,
    /// Interval boundary at this rib, if any.
    pub brk: Option<BreakKind>,
    /// Rib sits on a position-fixed tangent sweep (cusp, join, cap).
    pub pivot: bool,
}

impl Rib {
    pub fn new(position: Point2, psi: Angle, t: f64, j: usize, half_width: f64) -> Rib {
        Rib {
            position,
            normal: psi.normal(),
            t,
            psi,
            j,
            cum_length: 0.0,
            r_n: half_width,
            r_p: half_width,
            n_override: None,
            p_override: None,
            kappa: 0.0,
            brk: None,
            pivot: false,
        }
    }

    pub fn vertex_n(&self) -> Point2 {
        self.n_override.unwrap_or(self.position - self.normal * self.r_n)
    }

    pub fn vertex_p(&self) -> Point2 {
        self.p_override.unwrap_or(self.position + self.normal * self.r_p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quad {
    pub rib_lo: usize,
    pub rib_hi: usize,
    /// Opposite edges `N_lo N_hi` and `P_lo P_hi` intersect.
    pub bowtie: bool,
    /// Crack-closing quad between the end ribs of adjoining links.
    pub stitch: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "style", rename_all = "snake_case")]
pub enum LinkKind {
    Segment,
    Join(JoinStyle),
    StartCap(CapStyle),
    StopCap(CapStyle),
}

/// A contiguous run of ribs and quads generated from one segment, join or cap.
#[derive(Clone, Debug, PartialEq)]
pub struct Link {
    pub kind: LinkKind,
    /// Generator of a segment link.
    pub segment: Option<PathSegment>,
    pub contour: usize,
    /// Index of the segment within its contour that the link belongs to or follows.
    pub index: usize,
    pub first_rib: usize,
    pub rib_count: usize,
    pub first_quad: usize,
    pub quad_count: usize,
    /// Step count known before tessellation (`N` or `J`).
    pub steps: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tessellation {
    pub ribs: Vec<Rib>,
    pub quads: Vec<Quad>,
    pub links: Vec<Link>,
}

impl Tessellation {
    pub fn is_empty(&self) -> bool {
        self.quads.is_empty() && self.ribs.is_empty()
    }

    /// Vertices `(N_lo, P_lo, N_hi, P_hi)` of a quad.
    pub fn quad_vertices(&self, q: &Quad) -> [Point2; 4] {
        let lo = &self.ribs[q.rib_lo];
        let hi = &self.ribs[q.rib_hi];
        [lo.vertex_n(), lo.vertex_p(), hi.vertex_n(), hi.vertex_p()]
    }

    /// Appends `other`, shifting its indices.
    pub fn append(&mut self, other: Tessellation) {
        let rib_base = self.ribs.len();
        let quad_base = self.quads.len();
        self.ribs.extend(other.ribs);
        self.quads.extend(other.quads.into_iter().map(|q| Quad {
            rib_lo: q.rib_lo + rib_base,
            rib_hi: q.rib_hi + rib_base,
            ..q
        }));
        self.links.extend(other.links.into_iter().map(|l| Link {
            first_rib: l.first_rib + rib_base,
            first_quad: l.first_quad + quad_base,
            ..l
        }));
    }

    /// Ribs and quads of one link.
    pub fn link_ribs(&self, link: &Link) -> &[Rib] {
        &self.ribs[link.first_rib..link.first_rib + link.rib_count]
    }

    pub fn link_quads(&self, link: &Link) -> &[Quad] {
        &self.quads[link.first_quad..link.first_quad + link.quad_count]
    }

    /// Recomputes every quad's bow-tie flag from current rib geometry.
    pub fn refresh_bowties(&mut self) {
        for i in 0..self.quads.len() {
            let q = self.quads[i];
            self.quads[i].bowtie = is_bowtie(&self.ribs[q.rib_lo], &self.ribs[q.rib_hi]);
        }
    }
}

pub(crate) fn is_bowtie(lo: &Rib, hi: &Rib) -> bool {
    segments_intersect(lo.vertex_n(), hi.vertex_n(), lo.vertex_p(), hi.vertex_p())
}

/// Tangent angle at step `j` of a link.
fn psi_at(iv: &Interval, i: usize, steps: usize) -> Angle {
    if i == 0 || iv.kind == IntervalKind::Flat {
        iv.psi_lo
    } else if i == steps {
        iv.psi_hi
    } else {
        angle_add(iv.psi_lo, iv.delta * i as f64 / steps as f64)
    }
}

/// `(t, psi, normal)` at rib `j` of a segment link.
///
/// At an asymptote the returned `t` is the asymptote itself, which cannot be
/// evaluated; the tessellator substitutes a far-clipped parameter there.
pub fn rib_params(
    seg: &PathSegment,
    tab: &IntervalTable,
    st: &StepTable,
    j: usize,
) -> Result<(f64, Angle, Vec2)> {
    if j > st.n {
        return Err(StrokeError::InvalidParameter(format!("rib index {j} exceeds N = {}", st.n)));
    }
    let k = match st.delta_sigma.binary_search(&j) {
        Ok(k) => k.min(tab.m() - 1),
        Err(k) => k - 1,
    };
    let iv = &tab.intervals[k];
    let i = j - st.delta_sigma[k];
    let psi = psi_at(iv, i, st.delta[k]);
    let t = if i == 0 {
        iv.t_lo
    } else if i == st.delta[k] {
        iv.t_hi
    } else {
        t_of_psi(seg, iv, psi)?
    };
    Ok((t, psi, psi.normal()))
}

/// Parameter between `t_anchor` and the asymptote `t_asym` where the curve
/// is `dist` away from `g(t_anchor)`.
fn far_clip(seg: &PathSegment, t_anchor: f64, t_asym: f64, dist: f64) -> Result<f64> {
    let anchor = seg.eval(t_anchor)?;
    let (mut near, mut far) = (t_anchor, t_asym);
    for _ in 0..200 {
        let mid = 0.5 * (near + far);
        if mid == near || mid == far {
            break;
        }
        let beyond = match seg.eval(mid) {
            Ok(p) => p.distance(anchor) >= dist,
            Err(_) => true,
        };
        if beyond {
            far = mid;
        } else {
            near = mid;
        }
    }
    // `near` is always evaluable and strictly on the anchor's side.
    Ok(near)
}

fn curvature_or_pivot(seg: &PathSegment, t: f64, pivot_sign: Option<f64>) -> f64 {
    match pivot_sign {
        Some(s) => f64::INFINITY.copysign(s),
        None => seg.curvature(t).unwrap_or(f64::INFINITY),
    }
}

/// Ribs and quads of one segment, with link-local indices.
///
/// Returns an empty tessellation for zero-length segments.
pub fn tessellate_segment(seg: &PathSegment, params: &TessellationParams) -> Result<Tessellation> {
    let tab = match build_intervals(seg) {
        Ok(tab) => tab,
        Err(StrokeError::ZeroLengthSegment) => return Ok(Tessellation::default()),
        Err(e) => return Err(e),
    };
    let st = build_step_table(&tab, params.q);
    let hw = params.half_width();
    let extent = seg.control_extent();

    let mut ribs: Vec<Rib> = Vec::with_capacity(st.n + 3);
    let mut quads: Vec<Quad> = Vec::with_capacity(st.n);

    for (k, iv) in tab.intervals.iter().enumerate() {
        let steps = st.delta[k];
        let base_j = st.delta_sigma[k];
        let is_last = k + 1 == tab.m();
        let pivot_sign = (iv.kind == IntervalKind::Pivot).then(|| iv.delta.signum());

        // (t, psi) for i = 0..=steps, with the monotone clamp.
        let mut ts = Vec::with_capacity(steps + 1);
        let mut prev = iv.t_lo;
        for i in 0..=steps {
            let psi = psi_at(iv, i, steps);
            let t = if i == 0 {
                iv.t_lo
            } else if i == steps {
                iv.t_hi
            } else if iv.kind == IntervalKind::Curve {
                t_of_psi_monotone(seg, iv, psi, prev)?
            } else {
                iv.t_lo
            };
            prev = t;
            ts.push((t, psi));
        }

        // Keep ribs finite where the interval meets an asymptote.
        let asym_lo = iv.lo == BreakKind::Asymptote;
        let asym_hi = iv.hi == BreakKind::Asymptote;
        if asym_lo || asym_hi {
            let interior: Vec<f64> = ts[1..steps].iter().map(|x| x.0).collect();
            let mid = 0.5 * (iv.t_lo + iv.t_hi);
            let mut reach = 0.0f64;
            let probe = |t: f64| seg.eval(t).map(|p| p.distance(seg.start()));
            if let Ok(d) = probe(mid) {
                reach = reach.max(d);
            }
            for &t in &interior {
                reach = reach.max(probe(t)?);
            }
            let dist = FAR_CLIP * (extent + reach).max(params.width);
            if asym_lo {
                let anchor = interior.first().copied().unwrap_or(mid);
                ts[0].0 = far_clip(seg, anchor, iv.t_lo, dist)?;
            }
            if asym_hi {
                let anchor = interior.last().copied().unwrap_or(mid);
                ts[steps].0 = far_clip(seg, anchor, iv.t_hi, dist)?;
            }
        }

        // The first rib of an interval is shared with the previous one unless
        // an asymptote separates them.
        let first = if k == 0 || asym_lo { 0 } else { 1 };
        for (i, &(t, psi)) in ts.iter().enumerate().skip(first) {
            let on_boundary = i == 0 || i == steps;
            // Interval-end ribs that the next interval re-emits are skipped.
            if i == steps && !is_last && !asym_hi {
                let next = &tab.intervals[k + 1];
                let psi_b = next.psi_lo;
                let mut rib = Rib::new(seg.eval(t)?, psi_b, t, base_j + i, hw);
                let pivot_here = iv.kind == IntervalKind::Pivot || next.kind == IntervalKind::Pivot;
                let sign = if iv.kind == IntervalKind::Pivot {
                    Some(iv.delta.signum())
                } else if next.kind == IntervalKind::Pivot {
                    Some(next.delta.signum())
                } else {
                    None
                };
                rib.kappa = curvature_or_pivot(seg, t, sign);
                rib.brk = Some(iv.hi);
                rib.pivot = pivot_here;
                push_rib(&mut ribs, &mut quads, rib, true);
                continue;
            }
            let mut rib = Rib::new(seg.eval(t)?, psi, t, base_j + i, hw);
            rib.kappa = curvature_or_pivot(seg, t, pivot_sign);
            rib.pivot = pivot_sign.is_some();
            if on_boundary {
                rib.brk = Some(if i == 0 { iv.lo } else { iv.hi });
            }
            // No quad into the first rib of a link or across an asymptote.
            push_rib(&mut ribs, &mut quads, rib, i > 0);
        }
    }

    debug_assert_eq!(quads.len(), st.n);
    let link = Link {
        kind: LinkKind::Segment,
        segment: Some(*seg),
        contour: 0,
        index: 0,
        first_rib: 0,
        rib_count: ribs.len(),
        first_quad: 0,
        quad_count: quads.len(),
        steps: st.n,
    };
    Ok(Tessellation { ribs, quads, links: vec![link] })
}

fn push_rib(ribs: &mut Vec<Rib>, quads: &mut Vec<Quad>, rib: Rib, connect: bool) {
    ribs.push(rib);
    if connect && ribs.len() >= 2 {
        let hi = ribs.len() - 1;
        let lo = hi - 1;
        quads.push(Quad {
            rib_lo: lo,
            rib_hi: hi,
            bowtie: is_bowtie(&ribs[lo], &ribs[hi]),
            stitch: false,
        });
    }
}
