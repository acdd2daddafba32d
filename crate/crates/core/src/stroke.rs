// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! Whole-path stroking: contours are divided into segment, join and cap
//! links, tessellated independently and assembled in order with stitch
//! quads closing T-junction cracks between them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Result, StrokeError};
use crate::joins::{
    build_cap_link, build_join_link, cap_at, points_connect, tessellate_link, watertight_stitch, CapStyle,
    JoinStyle, PivotLink,
};
use crate::segment::{PathSegment, SegmentEnd};
use crate::tessellator::{tessellate_segment, Tessellation, TessellationParams};

/// A connected run of segments.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Contour {
    pub segments: Vec<PathSegment>,
    pub closed: bool,
}

impl Contour {
    pub fn new(segments: Vec<PathSegment>, closed: bool) -> Self {
        Contour { segments, closed }
    }

    /// Checks that consecutive segments meet (and the ends, when closed).
    pub fn validate(&self) -> Result<()> {
        for w in self.segments.windows(2) {
            if !points_connect(w[0].end(), w[1].start()) {
                return Err(StrokeError::DisconnectedSegments { gap: w[0].end().distance(w[1].start()) });
            }
        }
        if self.closed {
            if let (Some(first), Some(last)) = (self.segments.first(), self.segments.last()) {
                if !points_connect(last.end(), first.start()) {
                    return Err(StrokeError::DisconnectedSegments { gap: last.end().distance(first.start()) });
                }
            }
        }
        Ok(())
    }
}

/// Stroke styling independent of the tessellation quality.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrokeStyle {
    pub width: f64,
    pub join: JoinStyle,
    pub cap: CapStyle,
}

impl Default for StrokeStyle {
    fn default() -> Self {
        StrokeStyle { width: 1.0, join: JoinStyle::default(), cap: CapStyle::None }
    }
}

#[derive(Clone, Copy, Debug)]
enum Job {
    Segment(PathSegment),
    Pivot(PivotLink),
}

#[derive(Clone, Copy, Debug)]
struct Slot {
    job: Job,
    contour: usize,
    index: usize,
    /// Stitch the last rib of this link to the first rib of the contour's
    /// first segment link.
    closes: bool,
}

fn contour_jobs(c: &Contour, ci: usize, style: &StrokeStyle, q: f64, out: &mut Vec<Slot>) -> Result<()> {
    c.validate()?;
    let segs: Vec<(usize, PathSegment)> =
        c.segments.iter().copied().enumerate().filter(|(_, s)| !s.is_zero_length()).collect();
    let slot = |job, index, closes| Slot { job, contour: ci, index, closes };
    if segs.is_empty() {
        // Degenerate subpath: round and square caps still paint a dot.
        if let (Some(first), CapStyle::Round | CapStyle::Square) = (c.segments.first(), style.cap) {
            let at = first.start();
            out.push(slot(Job::Pivot(cap_at(at, Angle::ZERO, SegmentEnd::Start, style.cap, q)), 0, false));
            out.push(slot(Job::Pivot(cap_at(at, Angle::ZERO, SegmentEnd::Stop, style.cap, q)), 0, false));
        }
        return Ok(());
    }
    let closed = c.closed;
    if !closed {
        let (i, s) = segs[0];
        out.push(slot(Job::Pivot(build_cap_link(&s, SegmentEnd::Start, style.cap, q)?), i, false));
    }
    for (k, &(i, s)) in segs.iter().enumerate() {
        out.push(slot(Job::Segment(s), i, false));
        if k + 1 < segs.len() {
            let next = segs[k + 1].1;
            out.push(slot(Job::Pivot(build_join_link(&s, &next, style.join, q)?), i, false));
        } else if closed {
            let first = segs[0].1;
            out.push(slot(Job::Pivot(build_join_link(&s, &first, style.join, q)?), i, true));
        }
    }
    if !closed {
        let (i, s) = *segs.last().unwrap();
        out.push(slot(Job::Pivot(build_cap_link(&s, SegmentEnd::Stop, style.cap, q)?), i, false));
    }
    Ok(())
}

/// Tessellates every contour with the given style.
///
/// Links are tessellated in parallel and assembled in path order, so the
/// output does not depend on the thread count.
pub fn stroke_contours(contours: &[Contour], style: &StrokeStyle, q: f64) -> Result<Tessellation> {
    let params = TessellationParams::new(q, style.width)?;
    let mut slots = Vec::new();
    for (ci, c) in contours.iter().enumerate() {
        contour_jobs(c, ci, style, q, &mut slots)?;
    }
    let parts: Vec<Tessellation> = slots
        .par_iter()
        .map(|s| {
            let mut t = match s.job {
                Job::Segment(seg) => tessellate_segment(&seg, &params)?,
                Job::Pivot(link) => tessellate_link(&link, &params),
            };
            for l in &mut t.links {
                l.contour = s.contour;
                l.index = s.index;
            }
            Ok(t)
        })
        .collect::<Result<_>>()?;

    let mut out = Tessellation::default();
    // (contour, last rib of the previous link if it was non-empty, first rib of the contour's first segment)
    let mut prev: Option<(usize, Option<usize>)> = None;
    let mut contour_head: Option<usize> = None;
    for (slot, part) in slots.iter().zip(parts) {
        let new_contour = prev.is_none_or(|(c, _)| c != slot.contour);
        if new_contour {
            contour_head = None;
        }
        let is_segment = matches!(slot.job, Job::Segment(_));
        let empty = part.ribs.is_empty();
        let first_rib = out.ribs.len();
        out.append(part);
        if empty {
            prev = Some((slot.contour, None));
            continue;
        }
        let last_rib = out.ribs.len() - 1;
        if is_segment && contour_head.is_none() {
            contour_head = Some(first_rib);
        }
        if let Some((c, Some(prev_last))) = prev {
            if c == slot.contour {
                let q = watertight_stitch(&out.ribs, prev_last, first_rib);
                out.quads.push(q);
            }
        }
        if slot.closes {
            if let Some(head) = contour_head {
                let q = watertight_stitch(&out.ribs, last_rib, head);
                out.quads.push(q);
            }
        }
        prev = Some((slot.contour, Some(last_rib)));
    }
    Ok(out)
}
