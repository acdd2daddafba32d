// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! Tangent angles normalized to `(-pi, pi]`.

use core::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::geom::Vec2;

/// An angle in radians, always normalized to `(-pi, pi]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub fn new(radians: f64) -> Angle {
        Angle(normalize(radians))
    }

    pub fn from_degrees(deg: f64) -> Angle {
        Angle::new(deg.to_radians())
    }

    /// Direction angle of `v`.
    pub fn of(v: Vec2) -> Angle {
        Angle::new(v.atan2())
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    /// Unit tangent `(cos, sin)`.
    pub fn tangent(self) -> Vec2 {
        Vec2::from_angle(self.0)
    }

    /// Unit normal `(-sin, cos)`, the tangent rotated +90 degrees.
    pub fn normal(self) -> Vec2 {
        let (s, c) = self.0.sin_cos();
        Vec2::new(-s, c)
    }
}

fn normalize(x: f64) -> f64 {
    if (-PI..=PI).contains(&x) && x != -PI {
        return x;
    }
    let r = (x + PI).rem_euclid(TAU) - PI;
    if r <= -PI {
        PI
    } else {
        r
    }
}

/// Shortest signed difference `a ⊖ b`, in `[-pi, pi]`.
pub fn angle_diff(a: Angle, b: Angle) -> f64 {
    let d = a.0 - b.0;
    if d > PI {
        d - TAU
    } else if d < -PI {
        d + TAU
    } else {
        d
    }
}

/// `a ⊕ b`, normalized.
pub fn angle_add(a: Angle, b: f64) -> Angle {
    Angle::new(a.0 + b)
}

/// Midpoint angle opposite the short way between `a` and `b`: the point
/// halfway along the long way around.
pub fn split_angle(a: Angle, b: Angle) -> Angle {
    angle_add(angle_add(a, angle_diff(b, a) / 2.0), PI)
}
