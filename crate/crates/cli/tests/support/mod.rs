// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! Seeded segment suite shared by the acceptance and CLI tests.

#![allow(dead_code)]

use core::f64::consts::FRAC_1_SQRT_2;

use polarstroke::intervals::{inflection_params, CubicClass};
use polarstroke::{PathSegment, Point2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CONIC_WEIGHTS: [f64; 7] = [-2.0, -1.0, -0.5, 0.5, FRAC_1_SQRT_2, 1.0, 3.0];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Loop,
    Serpentine,
    Cusp,
    Quadratic,
    Conic,
    Line,
    Degenerate,
}

#[derive(Clone, Copy, Debug)]
pub struct Member {
    pub seg: PathSegment,
    pub family: Family,
}

fn pt<R: Rng>(rng: &mut R) -> Point2 {
    Point2::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0))
}

fn ipt<R: Rng>(rng: &mut R, r: i32) -> Point2 {
    Point2::new(rng.gen_range(-r..=r) as f64, rng.gen_range(-r..=r) as f64)
}

/// A random cubic of the requested class.
pub fn cubic_of_class<R: Rng>(rng: &mut R, class: CubicClass) -> PathSegment {
    loop {
        let s = PathSegment::cubic(pt(rng), pt(rng), pt(rng), pt(rng)).unwrap();
        if inflection_params(&s).class == class {
            return s;
        }
    }
}

/// A cubic whose hodograph vanishes exactly at `t0` in {1/4, 1/2, 3/4}.
/// Integer control points keep the cusp exact in floating point.
pub fn exact_cusp<R: Rng>(rng: &mut R) -> (PathSegment, f64) {
    loop {
        let p0 = ipt(rng, 6);
        let a = ipt(rng, 4);
        let b = ipt(rng, 4);
        if a.cross(b) == 0.0 {
            continue;
        }
        // Control-point differences d_i = P_{i+1} - P_i; the hodograph is 3 d.
        let which = rng.gen_range(0..3);
        let (d2, t0) = match which {
            0 => (-(a + b * 2.0), 0.5),
            _ => (-(a * 9.0 + b * 6.0), 0.25),
        };
        let p1 = p0 + a;
        let p2 = p1 + b;
        let p3 = p2 + d2;
        let s = PathSegment::cubic(p0, p1, p2, p3).unwrap();
        if which == 2 {
            return (PathSegment::cubic(p3, p2, p1, p0).unwrap(), 1.0 - t0);
        }
        return (s, t0);
    }
}

fn degenerate<R: Rng>(rng: &mut R, k: usize) -> PathSegment {
    let a = pt(rng);
    let b = pt(rng);
    let c = pt(rng);
    match k % 10 {
        // All points colocated.
        0 => PathSegment::cubic(a, a, a, a).unwrap(),
        1 => PathSegment::quadratic(a, a, a).unwrap(),
        2 => PathSegment::conic(a, a, a, 0.5).unwrap(),
        3 => PathSegment::line(a, a).unwrap(),
        // Colinear controls.
        4 => PathSegment::cubic(a, a.lerp(b, 0.3), a.lerp(b, 1.4), b).unwrap(),
        5 => PathSegment::quadratic(a, a.lerp(b, -0.5), b).unwrap(),
        // Coincident interior controls.
        6 => PathSegment::cubic(a, c, c, b).unwrap(),
        // Zero middle weight.
        7 => PathSegment::conic(a, c, b, 0.0).unwrap(),
        // Control point on an endpoint.
        8 => PathSegment::cubic(a, a, c, b).unwrap(),
        _ => PathSegment::cubic(a, c, b, b).unwrap(),
    }
}

/// The seeded suite: loop, serpentine and cusp cubics, quadratics, conics
/// at each of [`CONIC_WEIGHTS`], lines and degenerate variants.
pub fn suite(seed: u64) -> Vec<Member> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut push = |seg, family| out.push(Member { seg, family });
    for _ in 0..80 {
        push(cubic_of_class(&mut rng, CubicClass::Loop), Family::Loop);
    }
    for _ in 0..80 {
        push(cubic_of_class(&mut rng, CubicClass::Serpentine), Family::Serpentine);
    }
    for _ in 0..40 {
        push(exact_cusp(&mut rng).0, Family::Cusp);
    }
    for _ in 0..60 {
        push(PathSegment::quadratic(pt(&mut rng), pt(&mut rng), pt(&mut rng)).unwrap(), Family::Quadratic);
    }
    for w in CONIC_WEIGHTS {
        for _ in 0..20 {
            push(PathSegment::conic(pt(&mut rng), pt(&mut rng), pt(&mut rng), w).unwrap(), Family::Conic);
        }
    }
    for _ in 0..40 {
        push(PathSegment::line(pt(&mut rng), pt(&mut rng)).unwrap(), Family::Line);
    }
    for k in 0..100 {
        push(degenerate(&mut rng, k), Family::Degenerate);
    }
    out
}

/// Stroke width proportional to the segment's size.
pub fn width_for(seg: &PathSegment) -> f64 {
    let e = seg.control_extent();
    if e > 0.0 {
        0.25 * e
    } else {
        1.0
    }
}
