// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! Joins and caps as zero-length links: the generator is a single point and
//! only the tangent angle sweeps, so they reuse rib stepping with one side's
//! radius collapsed to the pivot.

use core::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::angle::{angle_add, angle_diff, Angle};
use crate::error::{Result, StrokeError};
use crate::geom::{Point2, Vec2};
use crate::segment::{PathSegment, SegmentEnd};
use crate::tessellator::{is_bowtie, steps_for, Link, LinkKind, Quad, Rib, Tessellation, TessellationParams};

/// Endpoint mismatch tolerated between consecutive segments, relative to coordinate size.
pub const CONNECT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JoinKind {
    None,
    Bevel,
    /// Sharp corner; falls back to a bevel past the miter limit.
    Miter,
    /// Sharp corner clipped at the miter limit.
    MiterTruncate,
    /// Sharp corner; bevel past the miter limit.
    MiterRevert,
    Triangular,
    Round,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JoinStyle {
    pub kind: JoinKind,
    /// Largest allowed ratio of miter length to half the stroke width.
    pub miter_limit: f64,
}

impl JoinStyle {
    pub fn new(kind: JoinKind, miter_limit: f64) -> Result<Self> {
        if !(miter_limit.is_finite() && miter_limit >= 1.0) {
            return Err(StrokeError::InvalidParameter(format!("miter limit {miter_limit} must be >= 1")));
        }
        Ok(JoinStyle { kind, miter_limit })
    }

    pub fn round() -> Self {
        JoinStyle { kind: JoinKind::Round, miter_limit: 4.0 }
    }
}

impl Default for JoinStyle {
    fn default() -> Self {
        JoinStyle { kind: JoinKind::Miter, miter_limit: 4.0 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapStyle {
    /// Butt ends.
    #[default]
    None,
    Square,
    Round,
    Triangular,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PivotStyle {
    Join(JoinStyle),
    StartCap(CapStyle),
    StopCap(CapStyle),
}

/// A join or cap: fixed position, tangent sweeping from `psi_start` by `delta1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PivotLink {
    pub position: Point2,
    pub psi_start: Angle,
    pub psi_stop: Angle,
    pub delta1: f64,
    /// Quad count.
    pub j: usize,
    pub style: PivotStyle,
}

fn join_steps(kind: JoinKind, delta1: f64, q: f64) -> usize {
    match kind {
        JoinKind::None => 0,
        JoinKind::Bevel => 1,
        JoinKind::Triangular => 2,
        JoinKind::Miter | JoinKind::MiterTruncate | JoinKind::MiterRevert => 3,
        JoinKind::Round => steps_for(delta1, q),
    }
}

fn cap_steps(style: CapStyle, q: f64) -> usize {
    match style {
        CapStyle::None => 0,
        CapStyle::Triangular => 2,
        CapStyle::Square => 4,
        CapStyle::Round => steps_for(PI, q),
    }
}

/// Whether two points agree to within the connection tolerance.
pub fn points_connect(a: Point2, b: Point2) -> bool {
    let scale = 1f64.max(a.x.abs()).max(a.y.abs()).max(b.x.abs()).max(b.y.abs());
    a.distance(b) <= CONNECT_TOL * scale
}

pub fn build_join_link(
    incoming: &PathSegment,
    outgoing: &PathSegment,
    style: JoinStyle,
    q: f64,
) -> Result<PivotLink> {
    let (end, start) = (incoming.end(), outgoing.start());
    if !points_connect(end, start) {
        return Err(StrokeError::DisconnectedSegments { gap: end.distance(start) });
    }
    let psi_start = Angle::of(incoming.endpoint_unit_gradient(SegmentEnd::Stop)?);
    let psi_stop = Angle::of(outgoing.endpoint_unit_gradient(SegmentEnd::Start)?);
    let delta1 = angle_diff(psi_stop, psi_start);
    Ok(PivotLink {
        position: end,
        psi_start,
        psi_stop,
        delta1,
        j: join_steps(style.kind, delta1, q),
        style: PivotStyle::Join(style),
    })
}

/// Cap at one end of `seg`. Rib tangents sweep half a turn around the end
/// so that the swept side bulges away from the segment.
pub fn build_cap_link(seg: &PathSegment, end: SegmentEnd, style: CapStyle, q: f64) -> Result<PivotLink> {
    let tangent = Angle::of(seg.endpoint_unit_gradient(end)?);
    let position = match end {
        SegmentEnd::Start => seg.start(),
        SegmentEnd::Stop => seg.end(),
    };
    Ok(cap_at(position, tangent, end, style, q))
}

/// Cap at `position` for a path travelling along `tangent` there.
pub fn cap_at(position: Point2, tangent: Angle, end: SegmentEnd, style: CapStyle, q: f64) -> PivotLink {
    let (psi_start, delta1, pstyle) = match end {
        SegmentEnd::Start => (angle_add(tangent, PI), PI, PivotStyle::StartCap(style)),
        SegmentEnd::Stop => (tangent, -PI, PivotStyle::StopCap(style)),
    };
    PivotLink {
        position,
        psi_start,
        psi_stop: angle_add(psi_start, delta1),
        delta1,
        j: cap_steps(style, q),
        style: pstyle,
    }
}

/// Intersection of the lines `a + s da` and `b + s db`, if not parallel.
fn line_intersection(a: Point2, da: Vec2, b: Point2, db: Vec2) -> Option<Point2> {
    let den = da.cross(db);
    if den.abs() <= 1e-15 * da.hypot() * db.hypot() {
        return None;
    }
    let s = (b - a).cross(db) / den;
    Some(a + da * s)
}

/// Ribs and quads of a join or cap, with link-local indices.
pub fn tessellate_link(link: &PivotLink, params: &TessellationParams) -> Tessellation {
    let hw = params.half_width();
    let j_count = link.j;
    if j_count == 0 {
        return Tessellation::default();
    }
    // The outer side is the one the sweep bulges toward: turning left puts
    // it on the right (N side), turning right on the left (P side).
    let outer_is_n = link.delta1 >= 0.0;
    let mut ribs: Vec<Rib> = (0..=j_count)
        .map(|j| {
            let psi = if j == j_count {
                link.psi_stop
            } else {
                angle_add(link.psi_start, link.delta1 * j as f64 / j_count as f64)
            };
            let mut rib = Rib::new(link.position, psi, 0.0, j, hw);
            if outer_is_n {
                rib.r_p = 0.0;
            } else {
                rib.r_n = 0.0;
            }
            rib.pivot = true;
            rib.kappa = f64::INFINITY.copysign(link.delta1);
            rib
        })
        .collect();

    let set_outer = |rib: &mut Rib, v: Point2| {
        if outer_is_n {
            rib.n_override = Some(v);
        } else {
            rib.p_override = Some(v);
        }
    };
    let outer = |rib: &Rib| if outer_is_n { rib.vertex_n() } else { rib.vertex_p() };

    match link.style {
        PivotStyle::Join(style) => {
            if matches!(style.kind, JoinKind::Miter | JoinKind::MiterTruncate | JoinKind::MiterRevert) {
                let o0 = outer(&ribs[0]);
                let o3 = outer(&ribs[3]);
                let t_in = link.psi_start.tangent();
                let t_out = link.psi_stop.tangent();
                let ratio = 1.0 / (0.5 * link.delta1).cos();
                let tip = line_intersection(o0, t_in, o3, t_out);
                let (c1, c2) = match (tip, style.kind) {
                    (Some(tip), _) if ratio <= style.miter_limit => (tip, tip),
                    (_, JoinKind::MiterTruncate) => {
                        let reach = style.miter_limit * hw;
                        let s = (reach * reach - hw * hw).max(0.0).sqrt();
                        (o0 + t_in * s, o3 - t_out * s)
                    }
                    _ => (o0, o3),
                };
                set_outer(&mut ribs[1], c1);
                set_outer(&mut ribs[2], c2);
            }
        }
        PivotStyle::StartCap(CapStyle::Square) | PivotStyle::StopCap(CapStyle::Square) => {
            for j in [1, 3] {
                if outer_is_n {
                    ribs[j].r_n = SQRT_2 * hw;
                } else {
                    ribs[j].r_p = SQRT_2 * hw;
                }
            }
        }
        _ => {}
    }

    let quads = (0..j_count)
        .map(|j| Quad { rib_lo: j, rib_hi: j + 1, bowtie: is_bowtie(&ribs[j], &ribs[j + 1]), stitch: false })
        .collect::<Vec<_>>();
    let kind = match link.style {
        PivotStyle::Join(s) => LinkKind::Join(s),
        PivotStyle::StartCap(c) => LinkKind::StartCap(c),
        PivotStyle::StopCap(c) => LinkKind::StopCap(c),
    };
    let links = vec![Link {
        kind,
        segment: None,
        contour: 0,
        index: 0,
        first_rib: 0,
        rib_count: ribs.len(),
        first_quad: 0,
        quad_count: quads.len(),
        steps: j_count,
    }];
    Tessellation { ribs, quads, links }
}

/// Crack-closing quad from rib `a` (end of one link) to rib `b` (start of the next).
pub fn watertight_stitch(ribs: &[Rib], a: usize, b: usize) -> Quad {
    Quad { rib_lo: a, rib_hi: b, bowtie: is_bowtie(&ribs[a], &ribs[b]), stitch: true }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec2;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn line(a: Point2, b: Point2) -> PathSegment {
        PathSegment::line(a, b).unwrap()
    }

    fn q4() -> f64 {
        4f64.to_radians()
    }

    fn corner(kind: JoinKind, limit: f64) -> PivotLink {
        let a = line(p(0.0, 0.0), p(10.0, 0.0));
        let b = line(p(10.0, 0.0), p(10.0, 10.0));
        build_join_link(&a, &b, JoinStyle::new(kind, limit).unwrap(), q4()).unwrap()
    }

    fn point_line_distance(pt: Point2, a: Point2, dir: Vec2) -> f64 {
        (pt - a).cross(dir).abs() / dir.hypot()
    }

    #[test]
    fn join_step_counts() {
        assert_eq!(corner(JoinKind::Round, 4.0).j, 23);
        assert_eq!(corner(JoinKind::Triangular, 4.0).j, 2);
        assert_eq!(corner(JoinKind::Bevel, 4.0).j, 1);
        assert_eq!(corner(JoinKind::None, 4.0).j, 0);
        assert_eq!(corner(JoinKind::Miter, 4.0).j, 3);
        let a = line(p(0.0, 0.0), p(1.0, 0.0));
        let b = line(p(1.0, 0.0), p(2.0, 0.0));
        let link = build_join_link(&a, &b, JoinStyle::round(), q4()).unwrap();
        assert_eq!(link.delta1, 0.0);
    }

    #[test]
    fn disconnected_rejected() {
        let a = line(p(0.0, 0.0), p(1.0, 0.0));
        let b = line(p(1.0, 0.1), p(2.0, 0.0));
        assert!(matches!(
            build_join_link(&a, &b, JoinStyle::default(), q4()),
            Err(StrokeError::DisconnectedSegments { .. })
        ));
    }

    #[test]
    fn cap_step_counts() {
        let s = line(p(0.0, 0.0), p(1.0, 0.0));
        assert_eq!(build_cap_link(&s, SegmentEnd::Stop, CapStyle::Round, q4()).unwrap().j, 45);
        assert_eq!(build_cap_link(&s, SegmentEnd::Start, CapStyle::Triangular, q4()).unwrap().j, 2);
        assert_eq!(build_cap_link(&s, SegmentEnd::Start, CapStyle::Square, q4()).unwrap().j, 4);
        let start = build_cap_link(&s, SegmentEnd::Start, CapStyle::Round, q4()).unwrap();
        assert_eq!(start.delta1, PI);
        let stop = build_cap_link(&s, SegmentEnd::Stop, CapStyle::Round, q4()).unwrap();
        assert_eq!(stop.delta1, -PI);
    }

    #[test]
    fn miter_tip_on_both_offset_lines() {
        let w = 2.0;
        let params = TessellationParams::new(q4(), w).unwrap();
        let tess = tessellate_link(&corner(JoinKind::Miter, 4.0), &params);
        assert_eq!(tess.quads.len(), 3);
        // Left turn: outer side is the right, offset lines y = -1 and x = 11.
        let tip = tess.ribs[1].vertex_n();
        assert_eq!(tip, tess.ribs[2].vertex_n());
        assert!((tip.distance(p(10.0, 0.0)) - SQRT_2).abs() < 1e-9);
        assert!(point_line_distance(tip, p(0.0, -1.0), Vec2::new(1.0, 0.0)) < 1e-9);
        assert!(point_line_distance(tip, p(11.0, 0.0), Vec2::new(0.0, 1.0)) < 1e-9);
        for r in &tess.ribs {
            assert_eq!(r.position, p(10.0, 0.0));
            assert_eq!(r.vertex_p(), p(10.0, 0.0));
        }
    }

    #[test]
    fn miter_limit_variants() {
        let params = TessellationParams::new(q4(), 2.0).unwrap();
        let pivot = p(10.0, 0.0);
        // sqrt(2) > 1.2: over the limit.
        let rev = tessellate_link(&corner(JoinKind::MiterRevert, 1.2), &params);
        assert_eq!(rev.ribs[1].vertex_n(), rev.ribs[0].vertex_n());
        assert_eq!(rev.ribs[2].vertex_n(), rev.ribs[3].vertex_n());
        let plain = tessellate_link(&corner(JoinKind::Miter, 1.2), &params);
        assert_eq!(plain.ribs[1].vertex_n(), plain.ribs[0].vertex_n());
        let tr = tessellate_link(&corner(JoinKind::MiterTruncate, 1.2), &params);
        for r in &tr.ribs {
            assert!(r.vertex_n().distance(pivot) <= 1.2 + 1e-12);
        }
        assert!((tr.ribs[1].vertex_n().distance(pivot) - 1.2).abs() < 1e-12);
        assert!(point_line_distance(tr.ribs[1].vertex_n(), p(0.0, -1.0), Vec2::new(1.0, 0.0)) < 1e-12);
        assert!(point_line_distance(tr.ribs[2].vertex_n(), p(11.0, 0.0), Vec2::new(0.0, 1.0)) < 1e-12);
    }

    #[test]
    fn right_turn_uses_p_side() {
        let a = line(p(0.0, 0.0), p(10.0, 0.0));
        let b = line(p(10.0, 0.0), p(10.0, -10.0));
        let link = build_join_link(&a, &b, JoinStyle::default(), q4()).unwrap();
        let tess = tessellate_link(&link, &TessellationParams::new(q4(), 2.0).unwrap());
        let tip = tess.ribs[1].vertex_p();
        assert!(tip.distance(p(11.0, 1.0)) < 1e-9);
        assert!(tess.ribs.iter().all(|r| r.vertex_n() == p(10.0, 0.0)));
    }

    #[test]
    fn square_cap_corners() {
        let s = line(p(0.0, 0.0), p(10.0, 0.0));
        let params = TessellationParams::new(q4(), 2.0).unwrap();
        let stop = tessellate_link(&build_cap_link(&s, SegmentEnd::Stop, CapStyle::Square, q4()).unwrap(), &params);
        let outer: Vec<Point2> = stop.ribs.iter().map(|r| r.vertex_p()).collect();
        let expect = [p(10.0, 1.0), p(11.0, 1.0), p(11.0, 0.0), p(11.0, -1.0), p(10.0, -1.0)];
        for (a, b) in outer.iter().zip(expect) {
            assert!(a.distance(b) < 1e-9, "{a:?} vs {b:?}");
        }
        let start = tessellate_link(&build_cap_link(&s, SegmentEnd::Start, CapStyle::Square, q4()).unwrap(), &params);
        let outer: Vec<Point2> = start.ribs.iter().map(|r| r.vertex_n()).collect();
        let expect = [p(0.0, 1.0), p(-1.0, 1.0), p(-1.0, 0.0), p(-1.0, -1.0), p(0.0, -1.0)];
        for (a, b) in outer.iter().zip(expect) {
            assert!(a.distance(b) < 1e-9, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn round_cap_coarse() {
        let s = line(p(0.0, 0.0), p(10.0, 0.0));
        let q = 90f64.to_radians();
        let params = TessellationParams::new(q, 2.0).unwrap();
        let cap = tessellate_link(&build_cap_link(&s, SegmentEnd::Stop, CapStyle::Round, q).unwrap(), &params);
        assert_eq!(cap.quads.len(), 2);
        let outer: Vec<Point2> = cap.ribs.iter().map(|r| r.vertex_p()).collect();
        for (a, b) in outer.iter().zip([p(10.0, 1.0), p(11.0, 0.0), p(10.0, -1.0)]) {
            assert!(a.distance(b) < 1e-12);
        }
    }

    #[test]
    fn round_fan_steps_bounded() {
        let params = TessellationParams::new(q4(), 1.0).unwrap();
        let tess = tessellate_link(&corner(JoinKind::Round, 4.0), &params);
        for w in tess.ribs.windows(2) {
            let a = w[0].vertex_n() - w[0].position;
            let b = w[1].vertex_n() - w[1].position;
            let sub = a.cross(b).atan2(a.dot(b)).abs();
            assert!(sub <= q4() + 1e-9);
        }
    }
}
