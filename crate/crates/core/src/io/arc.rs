// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! Elliptical arcs in SVG endpoint form, converted to conic segments.

use core::f64::consts::{FRAC_PI_2, PI};

use crate::geom::{Point2, Vec2};
use crate::segment::PathSegment;

fn vec_angle(u: Vec2, v: Vec2) -> f64 {
    u.cross(v).atan2(u.dot(v))
}

/// Converts an SVG arc from `from` to `to` into conics of at most 90° each.
///
/// Coincident endpoints produce no segments; a zero radius produces a line.
pub fn arc_to_conics(
    from: Point2,
    rx: f64,
    ry: f64,
    x_rotation_deg: f64,
    large_arc: bool,
    sweep: bool,
    to: Point2,
) -> Vec<PathSegment> {
    if from == to {
        return Vec::new();
    }
    let (mut rx, mut ry) = (rx.abs(), ry.abs());
    if rx == 0.0 || ry == 0.0 {
        return PathSegment::line(from, to).into_iter().collect();
    }
    let (sin_phi, cos_phi) = x_rotation_deg.to_radians().sin_cos();
    let ex = Vec2::new(cos_phi, sin_phi);
    let ey = Vec2::new(-sin_phi, cos_phi);
    let half = (from - to) * 0.5;
    let x1 = Vec2::new(half.dot(ex), half.dot(ey));

    let lambda = (x1.x / rx).powi(2) + (x1.y / ry).powi(2);
    if lambda > 1.0 {
        let s = lambda.sqrt();
        rx *= s;
        ry *= s;
    }
    let (rx2, ry2) = (rx * rx, ry * ry);
    let num = rx2 * ry2 - rx2 * x1.y * x1.y - ry2 * x1.x * x1.x;
    let den = rx2 * x1.y * x1.y + ry2 * x1.x * x1.x;
    let mut coef = (num / den).max(0.0).sqrt();
    if large_arc == sweep {
        coef = -coef;
    }
    let c1 = Vec2::new(coef * rx * x1.y / ry, -coef * ry * x1.x / rx);
    let mid = (from + to) * 0.5;
    let center = ex * c1.x + ey * c1.y + mid;

    let u = Vec2::new((x1.x - c1.x) / rx, (x1.y - c1.y) / ry);
    let v = Vec2::new((-x1.x - c1.x) / rx, (-x1.y - c1.y) / ry);
    let theta1 = u.atan2();
    let mut dtheta = vec_angle(u, v);
    if !sweep && dtheta > 0.0 {
        dtheta -= 2.0 * PI;
    } else if sweep && dtheta < 0.0 {
        dtheta += 2.0 * PI;
    }

    let pieces = ((dtheta.abs() / FRAC_PI_2) - 1e-9).ceil().max(1.0) as usize;
    let step = dtheta / pieces as f64;
    let w = (step * 0.5).cos();
    let map = |a: f64, scale: f64| {
        let (s, c) = a.sin_cos();
        ex * (rx * c * scale) + ey * (ry * s * scale) + center
    };
    let mut out = Vec::with_capacity(pieces);
    let mut start = from;
    for i in 0..pieces {
        let a0 = theta1 + step * i as f64;
        let ctrl = map(a0 + step * 0.5, 1.0 / w);
        let end = if i + 1 == pieces { to } else { map(a0 + step, 1.0) };
        if let Ok(seg) = PathSegment::conic(start, ctrl, end, w) {
            out.push(seg);
        }
        start = end;
    }
    out
}
