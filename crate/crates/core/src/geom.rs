// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! Plane vectors and a few small numeric helpers.

use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

/// Squared norm below which a vector counts as zero length.
pub const ZERO_LENGTH_SQ: f64 = 1e-24;

/// A 2D vector or point in path units.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

/// Positions share the vector representation.
pub type Point2 = Vec2;

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Vec2 {
        Vec2 { x, y }
    }

    /// Unit vector at `angle` radians from the +x axis.
    #[inline]
    pub fn from_angle(angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c, s)
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Scalar (z component of the) cross product.
    #[inline]
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn hypot2(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn hypot(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn atan2(self) -> f64 {
        self.y.atan2(self.x)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn is_zero_length(self) -> bool {
        self.hypot2() < ZERO_LENGTH_SQ
    }

    /// Normalized copy, or `None` for a zero-length vector.
    pub fn try_normalize(self) -> Option<Vec2> {
        if self.is_zero_length() {
            None
        } else {
            Some(self * (1.0 / self.hypot()))
        }
    }

    /// Rotated +90 degrees.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    #[inline]
    pub fn lerp(self, other: Vec2, t: f64) -> Vec2 {
        self + (other - self) * t
    }

    #[inline]
    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).hypot()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Real roots of `a t^2 + b t + c = 0`, ascending.
///
/// Uses the cancellation-free form: the larger-magnitude root comes from
/// `-(b + sgn(b) sqrt(disc)) / 2`, the other from the product of roots.
/// A nearly-vanishing discriminant (relative to the coefficient scale) is
/// reported as a double root.
pub fn solve_quadratic(a: f64, b: f64, c: f64) -> ArrayVec<f64, 2> {
    let mut out = ArrayVec::new();
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return out;
    }
    let (a, b, c) = (a / scale, b / scale, c / scale);
    if a.abs() < 1e-12 {
        if b.abs() > 1e-15 {
            out.push(-c / b);
        }
        return out;
    }
    let disc = b * b - 4.0 * a * c;
    let disc_tol = 1e-12 * (b * b + (4.0 * a * c).abs());
    if disc < -disc_tol {
        return out;
    }
    if disc <= disc_tol {
        out.push(-b / (2.0 * a));
        return out;
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let r0 = q / a;
    let r1 = if q != 0.0 { c / q } else { -r0 };
    if r0 <= r1 {
        out.push(r0);
        out.push(r1);
    } else {
        out.push(r1);
        out.push(r0);
    }
    out
}

/// Converts quadratic Bernstein coefficients to power-basis `(a, b, c)`.
#[inline]
pub(crate) fn bernstein2_to_power(b0: f64, b1: f64, b2: f64) -> (f64, f64, f64) {
    (b0 - 2.0 * b1 + b2, 2.0 * (b1 - b0), b0)
}

/// Evaluates `b0 (1-t)^2 + 2 b1 (1-t) t + b2 t^2`.
#[inline]
pub(crate) fn bernstein2(b0: f64, b1: f64, b2: f64, t: f64) -> f64 {
    let mt = 1.0 - t;
    b0 * mt * mt + 2.0 * b1 * mt * t + b2 * t * t
}

/// Whether segments `a0-a1` and `b0-b1` intersect (touching counts).
pub fn segments_intersect(a0: Vec2, a1: Vec2, b0: Vec2, b1: Vec2) -> bool {
    let d1 = (a1 - a0).cross(b0 - a0);
    let d2 = (a1 - a0).cross(b1 - a0);
    let d3 = (b1 - b0).cross(a0 - b0);
    let d4 = (b1 - b0).cross(a1 - b0);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |p: Vec2, q: Vec2, r: Vec2, d: f64| {
        d == 0.0
            && r.x >= p.x.min(q.x)
            && r.x <= p.x.max(q.x)
            && r.y >= p.y.min(q.y)
            && r.y <= p.y.max(q.y)
    };
    on(a0, a1, b0, d1) || on(a0, a1, b1, d2) || on(b0, b1, a0, d3) || on(b0, b1, a1, d4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_roots_stable() {
        let r = solve_quadratic(1.0, -3.0, 2.0);
        assert!((r[0] - 1.0).abs() < 1e-15 && (r[1] - 2.0).abs() < 1e-15);
        // Tiny root next to a huge one.
        let r = solve_quadratic(1.0, -1e8, 1.0);
        assert!((r[0] - 1e-8).abs() < 1e-20);
        assert!((r[1] - 1e8).abs() < 1e-4);
        assert!(solve_quadratic(1.0, 0.0, 1.0).is_empty());
        assert_eq!(solve_quadratic(0.0, 2.0, -1.0).as_slice(), &[0.5]);
        assert_eq!(solve_quadratic(4.0, -4.0, 1.0).as_slice(), &[0.5]);
        assert!(solve_quadratic(0.0, 0.0, 0.0).is_empty());
    }

    #[test]
    fn crossing_segments() {
        let o = Vec2::ZERO;
        assert!(segments_intersect(o, Vec2::new(1.0, 1.0), Vec2::new(0.0, 1.0), Vec2::new(1.0, 0.0)));
        assert!(!segments_intersect(o, Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0), Vec2::new(1.0, 1.0)));
        assert!(segments_intersect(o, Vec2::new(2.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0)));
    }
}
