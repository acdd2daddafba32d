// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! Chordal arc length over tessellation ribs, arc-length texture
//! coordinates, and dashing along the resulting polyline.

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Result, StrokeError};
use crate::geom::Point2;
use crate::joins::{cap_at, tessellate_link, CapStyle};
use crate::segment::{PathSegment, SegmentEnd};
use crate::stroke::{stroke_contours, Contour, StrokeStyle};
use crate::tessellator::{tessellate_segment, LinkKind, Tessellation, TessellationParams};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DashPattern {
    /// Alternating on and off lengths, starting with on.
    pub lengths: Vec<f64>,
    /// Distance into the pattern at which the path starts.
    #[serde(default)]
    pub offset: f64,
}

impl DashPattern {
    pub fn new(lengths: Vec<f64>, offset: f64) -> Result<Self> {
        let p = DashPattern { lengths, offset };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.offset.is_finite() || self.lengths.iter().any(|l| !l.is_finite()) {
            return Err(StrokeError::NonFinite("dash pattern"));
        }
        if self.lengths.iter().any(|&l| l < 0.0) || !self.lengths.iter().any(|&l| l > 0.0) {
            return Err(StrokeError::EmptyPattern);
        }
        Ok(())
    }

    /// Sum of one full on/off cycle. An odd-length list is repeated so that
    /// on and off alternate consistently.
    pub fn cycle(&self) -> f64 {
        let s: f64 = self.lengths.iter().sum();
        if self.lengths.len() % 2 == 1 {
            2.0 * s
        } else {
            s
        }
    }

    fn entries(&self) -> Vec<f64> {
        if self.lengths.len() % 2 == 1 {
            self.lengths.iter().chain(self.lengths.iter()).copied().collect()
        } else {
            self.lengths.clone()
        }
    }
}

/// Cumulative chordal length per rib.
#[derive(Clone, Debug, PartialEq)]
pub struct ArcLengthTable {
    pub cum_length: Vec<f64>,
}

/// Fills `cum_length` on every rib and returns the table.
///
/// Only strip quads of segment links contribute; joins, caps, stitches and
/// steps where `t` decreases add nothing. Lengths restart at zero on each
/// contour.
pub fn accumulate_arc_length(tess: &mut Tessellation) -> ArcLengthTable {
    let mut cum = 0.0;
    let mut contour = usize::MAX;
    for li in 0..tess.links.len() {
        let link = tess.links[li].clone();
        if link.contour != contour {
            contour = link.contour;
            cum = 0.0;
        }
        for r in link.first_rib..link.first_rib + link.rib_count {
            tess.ribs[r].cum_length = cum;
        }
        if link.kind != LinkKind::Segment {
            continue;
        }
        for qi in link.first_quad..link.first_quad + link.quad_count {
            let q = tess.quads[qi];
            let (lo, hi) = (tess.ribs[q.rib_lo], tess.ribs[q.rib_hi]);
            let step = if hi.t >= lo.t { hi.position.distance(lo.position) } else { 0.0 };
            tess.ribs[q.rib_hi].cum_length = lo.cum_length + step;
        }
        // Ribs after an asymptote gap carry the length reached before it.
        let mut run = cum;
        for r in link.first_rib..link.first_rib + link.rib_count {
            run = run.max(tess.ribs[r].cum_length);
            tess.ribs[r].cum_length = run;
        }
        cum = run;
    }
    ArcLengthTable { cum_length: tess.ribs.iter().map(|r| r.cum_length).collect() }
}

/// Per-rib texture coordinates `[(s, 0) at N, (s, 1) at P]`.
pub fn texture_coords(tess: &Tessellation, table: &ArcLengthTable) -> Vec<[(f64, f64); 2]> {
    debug_assert_eq!(table.cum_length.len(), tess.ribs.len());
    table.cum_length.iter().map(|&s| [(s, 0.0), (s, 1.0)]).collect()
}

/// A point of a dash polyline, traced back to its source segment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DashPoint {
    pub position: Point2,
    /// Segment index within the contour.
    pub segment: usize,
    pub t: f64,
}

/// One on or off piece of a dashed contour.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DashPiece {
    pub contour: usize,
    pub on: bool,
    pub start: f64,
    pub end: f64,
    pub points: Vec<DashPoint>,
}

impl DashPiece {
    pub fn length(&self) -> f64 {
        self.end - self.start
    }
}

/// The contour's chordal polyline: vertices with cumulative length, and
/// whether a vertex starts a new run (after an asymptote gap).
struct Polyline {
    pts: Vec<(DashPoint, f64, bool)>,
}

fn contour_polyline(c: &Contour, params: &TessellationParams) -> Result<Polyline> {
    let mut pts: Vec<(DashPoint, f64, bool)> = Vec::new();
    let mut cum = 0.0;
    for (si, seg) in c.segments.iter().enumerate() {
        let tess = tessellate_segment(seg, params)?;
        if tess.ribs.is_empty() {
            continue;
        }
        let mut connected = vec![false; tess.ribs.len()];
        for q in &tess.quads {
            connected[q.rib_hi] = true;
        }
        for (ri, rib) in tess.ribs.iter().enumerate() {
            let dp = DashPoint { position: rib.position, segment: si, t: rib.t };
            if ri == 0 {
                // Shared with the previous segment's end.
                if pts.is_empty() {
                    pts.push((dp, cum, true));
                }
                continue;
            }
            if connected[ri] {
                let (prev, _, _) = pts.last().copied().unwrap();
                let back = prev.segment == si && rib.t < prev.t;
                if !back {
                    cum += rib.position.distance(prev.position);
                }
                pts.push((dp, cum, false));
            } else {
                pts.push((dp, cum, true));
            }
        }
    }
    Ok(Polyline { pts })
}

impl Polyline {
    fn total(&self) -> f64 {
        self.pts.last().map_or(0.0, |p| p.1)
    }

    /// Point at cumulative length `s`, searching from vertex `hint`.
    /// Lands on the later side of a gap when `s` sits exactly on it.
    fn locate(&self, s: f64, hint: &mut usize) -> DashPoint {
        while *hint + 1 < self.pts.len() && self.pts[*hint + 1].1 < s {
            *hint += 1;
        }
        let a = self.pts[*hint];
        if *hint + 1 >= self.pts.len() {
            return a.0;
        }
        let b = self.pts[*hint + 1];
        if b.2 || b.1 <= a.1 {
            return if s >= b.1 { b.0 } else { a.0 };
        }
        let u = ((s - a.1) / (b.1 - a.1)).clamp(0.0, 1.0);
        let mut p = a.0;
        p.position = a.0.position.lerp(b.0.position, u);
        if a.0.segment == b.0.segment {
            p.t = a.0.t + (b.0.t - a.0.t) * u;
        } else if u >= 1.0 {
            p = b.0;
        }
        p
    }

    /// Piece from `s0` to `s1`, split at gaps.
    fn pieces(&self, contour: usize, on: bool, s0: f64, s1: f64, out: &mut Vec<DashPiece>) {
        let mut hint = 0;
        while hint + 1 < self.pts.len() && self.pts[hint + 1].1 <= s0 && !self.pts[hint + 1].2 {
            hint += 1;
        }
        let mut h = hint;
        let first = self.locate(s0, &mut h);
        let mut cur = DashPiece { contour, on, start: s0, end: s1, points: vec![first] };
        let mut i = h + 1;
        while i < self.pts.len() && self.pts[i].1 < s1 {
            let (dp, s, gap) = self.pts[i];
            if gap {
                cur.end = s;
                out.push(std::mem::replace(
                    &mut cur,
                    DashPiece { contour, on, start: s, end: s1, points: vec![dp] },
                ));
            } else if s > s0 {
                cur.points.push(dp);
            }
            i += 1;
        }
        let mut h2 = i.saturating_sub(1);
        let last = self.locate(s1, &mut h2);
        if s1 > s0 {
            cur.points.push(last);
        }
        out.push(cur);
    }
}

/// Splits every contour into alternating on and off pieces along its
/// chordal length. The pattern restarts on each contour.
pub fn dash_path(contours: &[Contour], pattern: &DashPattern, params: &TessellationParams) -> Result<Vec<DashPiece>> {
    pattern.validate()?;
    let entries = pattern.entries();
    let cycle = pattern.cycle();
    let mut out = Vec::new();
    for (ci, c) in contours.iter().enumerate() {
        let poly = contour_polyline(c, params)?;
        let total = poly.total();
        if poly.pts.is_empty() {
            continue;
        }
        // Find where the offset lands in the pattern.
        let mut idx = 0;
        let mut pos = pattern.offset.rem_euclid(cycle);
        if pos >= cycle {
            pos = 0.0;
        }
        // A zero-length entry right at the start still counts.
        while pos > entries[idx] || (pos == entries[idx] && entries[idx] > 0.0) {
            pos -= entries[idx];
            idx = (idx + 1) % entries.len();
        }
        let mut s = 0.0;
        let mut remaining = entries[idx] - pos;
        loop {
            let on = idx % 2 == 0;
            let end = (s + remaining).min(total);
            poly.pieces(ci, on, s, end, &mut out);
            if s + remaining >= total {
                break;
            }
            s += remaining;
            idx = (idx + 1) % entries.len();
            remaining = entries[idx];
        }
    }
    Ok(out)
}

/// Strokes only the on pieces, each as an open sub-path with caps.
pub fn dash_stroke(contours: &[Contour], pattern: &DashPattern, style: &StrokeStyle, q: f64) -> Result<Tessellation> {
    let params = TessellationParams::new(q, style.width)?;
    let pieces = dash_path(contours, pattern, &params)?;
    let mut out = Tessellation::default();
    for piece in pieces.iter().filter(|p| p.on) {
        let src = &contours[piece.contour].segments;
        if piece.length() <= 0.0 || piece.points.len() < 2 {
            if matches!(style.cap, CapStyle::Round | CapStyle::Square) {
                let at = piece.points[0];
                let seg = &src[at.segment];
                let dir = seg
                    .gradient(at.t)
                    .ok()
                    .and_then(|g| g.try_normalize())
                    .or_else(|| seg.endpoint_unit_gradient(SegmentEnd::Start).ok())
                    .unwrap_or(crate::geom::Vec2::new(1.0, 0.0));
                let tangent = Angle::of(dir);
                for end in [SegmentEnd::Start, SegmentEnd::Stop] {
                    let mut t = tessellate_link(&cap_at(at.position, tangent, end, style.cap, q), &params);
                    for l in &mut t.links {
                        l.contour = piece.contour;
                        l.index = at.segment;
                    }
                    out.append(t);
                }
            }
            continue;
        }
        let sub = piece_segments(src, piece)?;
        let mut t = stroke_contours(&[Contour::new(sub, false)], style, q)?;
        for l in &mut t.links {
            l.contour = piece.contour;
        }
        out.append(t);
    }
    Ok(out)
}

/// Sub-segments of the source curves covered by a piece.
fn piece_segments(src: &[PathSegment], piece: &DashPiece) -> Result<Vec<PathSegment>> {
    let first = piece.points[0];
    let last = *piece.points.last().unwrap();
    let mut out = Vec::new();
    for (si, seg) in src.iter().enumerate().take(last.segment + 1).skip(first.segment) {
        let t0 = if si == first.segment { first.t } else { 0.0 };
        let t1 = if si == last.segment { last.t } else { 1.0 };
        if t1 <= t0 {
            continue;
        }
        let mut sub = seg.subsegment(t0, t1)?;
        // Pin the ends to the dash polyline points to keep pieces connected.
        if si == first.segment && t0 > 0.0 {
            sub = sub.with_endpoints(seg.eval(t0)?, sub.end());
        }
        out.push(sub);
    }
    // Chain exactly.
    for i in 1..out.len() {
        let prev_end = out[i - 1].end();
        out[i] = out[i].with_endpoints(prev_end, out[i].end());
    }
    Ok(out)
}
