// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! Brute-force references for checking tessellations: the uniform
//! parametric baseline, stroked-region membership by dense sampling,
//! point-in-quad tests and facet-angle statistics.

use core::f64::consts::{SQRT_2, TAU};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::angle::{angle_diff, Angle};
use crate::geom::{Point2, Vec2};
use crate::intervals::{build_intervals, BreakKind};
use crate::joins::{CapStyle, JoinKind};
use crate::segment::PathSegment;
use crate::stroke::{Contour, StrokeStyle};
use crate::tessellator::{is_bowtie, Link, LinkKind, Quad, Rib, Tessellation, TessellationParams};

/// Tangent angle at `t` from the hodograph, with one-sided limits where it
/// vanishes. `side` picks the limit (+1 from the right, -1 from the left).
fn tangent_at(seg: &PathSegment, t: f64, side: f64) -> Angle {
    let h = seg.hodograph();
    let v = h.eval(t);
    if v.hypot() > 1e-9 * h.scale() {
        return Angle::of(v);
    }
    let d = h.deriv(t);
    if d.hypot() > 1e-9 * h.scale() {
        return Angle::of(d * side);
    }
    Angle::of(h.second_deriv())
}

/// Quad strip from `n` uniform parameter steps with normals from the gradient.
///
/// No cusp pivots are inserted. Samples landing on a conic asymptote are
/// nudged off it.
pub fn uniform_tessellate(seg: &PathSegment, params: &TessellationParams, n: usize) -> Tessellation {
    if seg.is_zero_length() || n == 0 {
        return Tessellation::default();
    }
    let hw = params.half_width();
    let ribs: Vec<Rib> = (0..=n)
        .map(|j| {
            let mut t = j as f64 / n as f64;
            if seg.eval(t).is_err() {
                t = if t > 0.5 { t - 1e-6 } else { t + 1e-6 };
            }
            let side = if j == n { -1.0 } else { 1.0 };
            let psi = tangent_at(seg, t, side);
            let mut rib = Rib::new(seg.eval(t).unwrap_or(Point2::new(0.0, 0.0)), psi, t, j, hw);
            rib.kappa = seg.curvature(t).unwrap_or(f64::INFINITY);
            rib
        })
        .collect();
    let quads: Vec<Quad> = (0..n)
        .map(|j| Quad { rib_lo: j, rib_hi: j + 1, bowtie: is_bowtie(&ribs[j], &ribs[j + 1]), stitch: false })
        .collect();
    let links = vec![Link {
        kind: LinkKind::Segment,
        segment: Some(*seg),
        contour: 0,
        index: 0,
        first_rib: 0,
        rib_count: ribs.len(),
        first_quad: 0,
        quad_count: n,
        steps: n,
    }];
    Tessellation { ribs, quads, links }
}

/// Dense sampling of a segment's generator curve, split into runs that do
/// not cross a conic asymptote.
#[derive(Clone, Debug)]
pub struct CurveSampler {
    runs: Vec<Vec<Point2>>,
}

impl CurveSampler {
    /// At least `samples` parameter steps (and never fewer than `10^3`).
    pub fn new(seg: &PathSegment, samples: usize) -> CurveSampler {
        let n = samples.max(1000);
        let mut runs = Vec::new();
        let mut cur: Vec<Point2> = Vec::new();
        let mut prev_d = seg.denominator(0.0);
        for i in 0..=n {
            let t = i as f64 / n as f64;
            let d = seg.denominator(t);
            let crossed = d * prev_d <= 0.0 && i > 0;
            prev_d = d;
            match seg.eval(t) {
                Ok(p) if !crossed => cur.push(p),
                Ok(p) => {
                    runs.push(std::mem::take(&mut cur));
                    cur.push(p);
                }
                Err(_) => runs.push(std::mem::take(&mut cur)),
            }
        }
        runs.push(cur);
        runs.retain(|r| !r.is_empty());
        CurveSampler { runs }
    }

    /// Sample count suggested for a segment at quality `q`: `max(10^3, 64 ceil(turn / q))`.
    pub fn suggested_samples(seg: &PathSegment, q: f64) -> usize {
        let turn = build_intervals(seg).map(|t| t.total_turn()).unwrap_or(0.0);
        1000usize.max(64 * (turn / q).ceil() as usize)
    }

    /// Distance from `pt` to the sampled polyline.
    pub fn distance(&self, pt: Point2) -> f64 {
        let mut best = f64::INFINITY;
        for run in &self.runs {
            if run.len() == 1 {
                best = best.min(run[0].distance(pt));
            }
            for w in run.windows(2) {
                best = best.min(point_segment_distance(pt, w[0], w[1]));
            }
        }
        best
    }

    pub fn points(&self) -> impl Iterator<Item = &Point2> {
        self.runs.iter().flatten()
    }
}

pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.hypot2();
    if len2 == 0.0 {
        return p.distance(a);
    }
    let u = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * u)
}

/// Whether `pt` lies within `w / 2` of the generator curve: the union of
/// disks along a dense sampling, which includes cusp semicircles and round ends.
pub fn stroked_region_contains(seg: &PathSegment, w: f64, pt: Point2, samples: usize) -> bool {
    CurveSampler::new(seg, samples).distance(pt) <= 0.5 * w
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

fn on_segment(p: Point2, a: Point2, b: Point2) -> bool {
    orient(a, b, p) == 0.0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Boundary-inclusive point-in-triangle test.
pub fn point_in_triangle(p: Point2, a: Point2, b: Point2, c: Point2) -> bool {
    let area = orient(a, b, c);
    if area == 0.0 {
        return on_segment(p, a, b) || on_segment(p, b, c) || on_segment(p, c, a);
    }
    let d1 = orient(a, b, p);
    let d2 = orient(b, c, p);
    let d3 = orient(c, a, p);
    if area > 0.0 {
        d1 >= 0.0 && d2 >= 0.0 && d3 >= 0.0
    } else {
        d1 <= 0.0 && d2 <= 0.0 && d3 <= 0.0
    }
}

/// Whether `pt` lies in any quad, each split into triangles
/// `(N_lo, P_lo, P_hi)` and `(N_lo, P_hi, N_hi)`. Bow-tie quads are
/// over-covered by this split.
pub fn point_in_tessellation(tess: &Tessellation, pt: Point2) -> bool {
    tess.quads.iter().any(|q| {
        let [n0, p0, n1, p1] = tess.quad_vertices(q);
        let lo = Vec2::new(n0.x.min(p0.x).min(n1.x).min(p1.x), n0.y.min(p0.y).min(n1.y).min(p1.y));
        let hi = Vec2::new(n0.x.max(p0.x).max(n1.x).max(p1.x), n0.y.max(p0.y).max(n1.y).max(p1.y));
        if pt.x < lo.x || pt.x > hi.x || pt.y < lo.y || pt.y > hi.y {
            return false;
        }
        point_in_triangle(pt, n0, p0, p1) || point_in_triangle(pt, n0, p1, n1)
    })
}

/// Facet-angle summary in degrees.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FacetStats {
    pub max_deg: f64,
    pub mean_deg: f64,
    pub sd_deg: f64,
    pub count: usize,
    pub excluded: usize,
}

fn turn_between(a: Vec2, b: Vec2) -> f64 {
    a.cross(b).atan2(a.dot(b)).abs()
}

/// Offset factor `1 - kappa d` sign for signed offset `d`; pivots count as
/// infinite curvature.
fn offset_sign(kappa: f64, d: f64) -> f64 {
    let v = 1.0 - kappa * d;
    if v.is_nan() {
        0.0
    } else {
        v.signum()
    }
}

/// Facet angles at ribs shared by consecutive strip quads of segment links.
///
/// A facet is excluded (counted in `excluded`) when it touches an
/// inflection, cusp or asymptote rib, when either offset side changes
/// orientation (`1 -/+ kappa w/2` changes sign) across the adjacent ribs or
/// step midpoints, when an edge runs against the tangent while its
/// neighbour does not, or when an edge has zero length.
pub fn facet_stats(tess: &Tessellation, w: f64) -> FacetStats {
    let hw = 0.5 * w;
    let mut angles = Vec::new();
    let mut excluded = 0usize;
    for link in tess.links.iter().filter(|l| l.kind == LinkKind::Segment) {
        let quads: Vec<&Quad> = tess.link_quads(link).iter().filter(|q| !q.stitch).collect();
        for pair in quads.windows(2) {
            let (qa, qb) = (pair[0], pair[1]);
            if qa.rib_hi != qb.rib_lo {
                continue;
            }
            let r0 = &tess.ribs[qa.rib_lo];
            let r1 = &tess.ribs[qa.rib_hi];
            let r2 = &tess.ribs[qb.rib_hi];
            if matches!(r1.brk, Some(BreakKind::Inflection | BreakKind::Cusp | BreakKind::Asymptote)) {
                excluded += 1;
                continue;
            }
            let mid_kappa = |a: &Rib, b: &Rib| -> f64 {
                if a.pivot && b.pivot {
                    return a.kappa;
                }
                link.segment
                    .and_then(|s| s.curvature(0.5 * (a.t + b.t)).ok())
                    .unwrap_or(f64::NAN)
            };
            let kappas = [r0.kappa, mid_kappa(r0, r1), r1.kappa, mid_kappa(r1, r2), r2.kappa];
            let flips = [hw, -hw].iter().any(|&d| {
                let s0 = offset_sign(kappas[0], d);
                kappas.iter().any(|&k| offset_sign(k, d) != s0)
            });
            if flips {
                excluded += 1;
                continue;
            }
            let mut facet = 0.0f64;
            let mut bad = false;
            for (v0, v1, v2) in [
                (r0.vertex_p(), r1.vertex_p(), r2.vertex_p()),
                (r0.vertex_n(), r1.vertex_n(), r2.vertex_n()),
            ] {
                let (e0, e1) = (v1 - v0, v2 - v1);
                let scale = 1e-12 * (1.0 + v1.x.abs().max(v1.y.abs()));
                if e0.hypot() <= scale || e1.hypot() <= scale {
                    bad = true;
                    break;
                }
                let t0 = Angle::new(0.5 * (r0.psi.radians() + r1.psi.radians())).tangent();
                let t0 = if r0.psi.tangent().dot(t0) < 0.0 { -t0 } else { t0 };
                let t1 = Angle::new(0.5 * (r1.psi.radians() + r2.psi.radians())).tangent();
                let t1 = if r1.psi.tangent().dot(t1) < 0.0 { -t1 } else { t1 };
                if (e0.dot(t0) >= 0.0) != (e1.dot(t1) >= 0.0) {
                    bad = true;
                    break;
                }
                facet = facet.max(turn_between(e0, e1));
            }
            if bad {
                excluded += 1;
                continue;
            }
            angles.push(facet.to_degrees());
        }
    }
    let count = angles.len();
    if count == 0 {
        return FacetStats { excluded, ..Default::default() };
    }
    let mean = angles.iter().sum::<f64>() / count as f64;
    let var = angles.iter().map(|a| (a - mean) * (a - mean)).sum::<f64>() / count as f64;
    FacetStats {
        max_deg: angles.iter().copied().fold(0.0, f64::max),
        mean_deg: mean,
        sd_deg: var.sqrt(),
        count,
        excluded,
    }
}

/// Largest tangent sweep in degrees over a run of consecutive ribs of one
/// link that share a position (a pivot inserted at a cusp or join).
pub fn max_pivot_sweep(tess: &Tessellation) -> f64 {
    let mut best = 0.0f64;
    for link in &tess.links {
        let ribs = tess.link_ribs(link);
        let mut sweep = 0.0f64;
        for w in ribs.windows(2) {
            if w[0].position == w[1].position {
                sweep += angle_diff(w[1].psi, w[0].psi);
                best = best.max(sweep.abs());
            } else {
                sweep = 0.0;
            }
        }
    }
    best.to_degrees()
}

/// Points probed against the distance oracle and how many the
/// tessellation got wrong.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub inside_tested: usize,
    pub inside_missed: usize,
    pub outside_tested: usize,
    pub outside_hit: usize,
}

impl CoverageReport {
    /// Fraction of oracle-inside points covered.
    pub fn inside_rate(&self) -> f64 {
        rate(self.inside_tested - self.inside_missed, self.inside_tested)
    }

    /// Fraction of oracle-outside points left uncovered.
    pub fn outside_rate(&self) -> f64 {
        rate(self.outside_tested - self.outside_hit, self.outside_tested)
    }

    pub fn merge(&mut self, other: &CoverageReport) {
        self.inside_tested += other.inside_tested;
        self.inside_missed += other.inside_missed;
        self.outside_tested += other.outside_tested;
        self.outside_hit += other.outside_hit;
    }
}

fn rate(good: usize, total: usize) -> f64 {
    if total == 0 {
        1.0
    } else {
        good as f64 / total as f64
    }
}

/// Probes `tess`, the stroke of `contours` with `style`, with random points
/// near the generator curves.
///
/// Points within `(w/2) cos(q/2)` of a curve must be covered and points at
/// least `1.02 (w/2)` away must not be. Points whose expected status depends
/// on the join or cap shape are skipped: near joints unless joins are round
/// (or, for outside points, near miter tips), and near open ends unless
/// caps are round (or, for outside points, near square caps). Probes stay
/// within the control-point bounds grown by `2 w`.
pub fn check_coverage<R: Rng>(
    contours: &[Contour],
    style: &StrokeStyle,
    tess: &Tessellation,
    q: f64,
    samples: usize,
    rng: &mut R,
) -> CoverageReport {
    let hw = 0.5 * style.width;
    let margin = hw * (0.5 * q).cos();
    let far = 1.02 * hw;
    let mut segs = Vec::new();
    let mut joints = Vec::new();
    let mut ends = Vec::new();
    let (mut lo, mut hi) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for c in contours {
        let live: Vec<&PathSegment> = c.segments.iter().filter(|s| !s.is_zero_length()).collect();
        let (Some(first), Some(last)) = (live.first(), live.last()) else { continue };
        for s in &live {
            segs.push((**s, CurveSampler::new(s, CurveSampler::suggested_samples(s, q))));
            for p in s.points() {
                lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
                hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
            }
        }
        joints.extend(live.windows(2).map(|w| w[0].end()));
        if c.closed {
            joints.push(first.start());
        } else {
            ends.push(first.start());
            ends.push(last.end());
        }
    }
    let mut report = CoverageReport::default();
    if segs.is_empty() {
        return report;
    }
    let grow = Vec2::new(2.0 * style.width, 2.0 * style.width);
    let (lo, hi) = (lo - grow, hi + grow);

    let round_join = style.join.kind == JoinKind::Round;
    let round_cap = style.cap == CapStyle::Round;
    let join_reach = match style.join.kind {
        JoinKind::Miter | JoinKind::MiterTruncate | JoinKind::MiterRevert => style.join.miter_limit,
        _ => 1.0,
    } * far;
    let cap_reach = if style.cap == CapStyle::Square { SQRT_2 * far } else { far };
    let near = |p: Point2, set: &[Point2], r: f64| set.iter().any(|c| c.distance(p) <= r);

    let attempts = samples.saturating_mul(200);
    for _ in 0..attempts {
        if report.inside_tested >= samples && report.outside_tested >= samples {
            break;
        }
        let (seg, _) = &segs[rng.gen_range(0..segs.len())];
        let Ok(base) = seg.eval(rng.gen::<f64>()) else { continue };
        let r = 2.0 * hw * rng.gen::<f64>().sqrt();
        let pt = base + Vec2::from_angle(rng.gen::<f64>() * TAU) * r;
        if pt.x < lo.x || pt.x > hi.x || pt.y < lo.y || pt.y > hi.y {
            continue;
        }
        let d = segs.iter().map(|(_, s)| s.distance(pt)).fold(f64::INFINITY, f64::min);
        if d <= margin && report.inside_tested < samples {
            if (!round_join && near(pt, &joints, hw)) || (!round_cap && near(pt, &ends, hw)) {
                continue;
            }
            report.inside_tested += 1;
            if !point_in_tessellation(tess, pt) {
                report.inside_missed += 1;
            }
        } else if d >= far && report.outside_tested < samples {
            if near(pt, &joints, join_reach) || near(pt, &ends, cap_reach) {
                continue;
            }
            report.outside_tested += 1;
            if point_in_tessellation(tess, pt) {
                report.outside_hit += 1;
            }
        }
    }
    report
}
