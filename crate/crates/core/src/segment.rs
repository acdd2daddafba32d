// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! The four generator forms a path segment can take: cubic and quadratic
//! Bézier, rational quadratic (conic) in normal form, and line.

use serde::{Deserialize, Serialize};

use crate::error::{Result, StrokeError};
use crate::geom::{Point2, Vec2};

/// Conic denominators smaller than this are treated as zero.
pub const CONIC_DENOM_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentForm {
    Cubic,
    Quadratic,
    Conic,
    Line,
}

impl SegmentForm {
    pub fn point_count(self) -> usize {
        match self {
            SegmentForm::Cubic => 4,
            SegmentForm::Quadratic | SegmentForm::Conic => 3,
            SegmentForm::Line => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentEnd {
    /// `t = 0`
    Start,
    /// `t = 1`
    Stop,
}

/// One path segment. Control points are validated finite on construction.
///
/// Conics use the normal parameterization (unit end weights); the middle
/// weight may be zero or negative, which selects the external branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathSegment {
    form: SegmentForm,
    pts: [Point2; 4],
    weight: f64,
}

/// Tangent-direction polynomial of a segment.
///
/// `H(t) = h0 (1-t)^2 + 2 h1 (1-t) t + h2 t^2` points along `g'(t)` with a
/// strictly positive factor wherever `g'` is defined, so every question about
/// tangent *direction* (angles, turning sense, cusps) can be asked of `H`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hodograph {
    pub h: [Vec2; 3],
}

impl Hodograph {
    pub fn eval(&self, t: f64) -> Vec2 {
        let mt = 1.0 - t;
        self.h[0] * (mt * mt) + self.h[1] * (2.0 * mt * t) + self.h[2] * (t * t)
    }

    pub fn deriv(&self, t: f64) -> Vec2 {
        ((self.h[1] - self.h[0]) * (1.0 - t) + (self.h[2] - self.h[1]) * t) * 2.0
    }

    pub fn second_deriv(&self) -> Vec2 {
        (self.h[0] - self.h[1] * 2.0 + self.h[2]) * 2.0
    }

    /// `cross(H, H') / 2` as quadratic Bernstein coefficients. Its sign is
    /// the turning sense of the curve.
    pub fn turning_bernstein(&self) -> [f64; 3] {
        let [h0, h1, h2] = self.h;
        // Expanded and factored: X01 (1-t)^2 + X02 (1-t) t + X12 t^2, written
        // as Bernstein with middle coefficient X02 / 2.
        [h0.cross(h1), 0.5 * h0.cross(h2), h1.cross(h2)]
    }

    pub fn turning(&self, t: f64) -> f64 {
        self.eval(t).cross(self.deriv(t))
    }

    /// Largest coefficient magnitude, used to scale tolerances.
    pub fn scale(&self) -> f64 {
        self.h.iter().map(|v| v.hypot()).fold(0.0, f64::max)
    }
}

fn check_points(pts: &[Point2]) -> Result<()> {
    if pts.iter().all(|p| p.is_finite()) {
        Ok(())
    } else {
        Err(StrokeError::NonFinite("control point"))
    }
}

impl PathSegment {
    pub fn cubic(a: Point2, b: Point2, c: Point2, d: Point2) -> Result<Self> {
        check_points(&[a, b, c, d])?;
        Ok(PathSegment { form: SegmentForm::Cubic, pts: [a, b, c, d], weight: 1.0 })
    }

    pub fn quadratic(a: Point2, b: Point2, c: Point2) -> Result<Self> {
        check_points(&[a, b, c])?;
        Ok(PathSegment { form: SegmentForm::Quadratic, pts: [a, b, c, c], weight: 1.0 })
    }

    pub fn conic(a: Point2, b: Point2, c: Point2, weight: f64) -> Result<Self> {
        check_points(&[a, b, c])?;
        if !weight.is_finite() {
            return Err(StrokeError::NonFinite("conic weight"));
        }
        Ok(PathSegment { form: SegmentForm::Conic, pts: [a, b, c, c], weight })
    }

    pub fn line(a: Point2, b: Point2) -> Result<Self> {
        check_points(&[a, b])?;
        Ok(PathSegment { form: SegmentForm::Line, pts: [a, b, b, b], weight: 1.0 })
    }

    pub fn form(&self) -> SegmentForm {
        self.form
    }

    /// Control points: 4 for cubics, 3 for quadratics and conics, 2 for lines.
    pub fn points(&self) -> &[Point2] {
        &self.pts[..self.form.point_count()]
    }

    /// Middle weight of a conic (1 for the other forms).
    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn start(&self) -> Point2 {
        self.pts[0]
    }

    pub fn end(&self) -> Point2 {
        self.pts[self.form.point_count() - 1]
    }

    /// Applies the affine map `p -> m * p + offset` (`m` given column-wise as
    /// images of the x and y axes) to the control points.
    pub fn transform(&self, ex: Vec2, ey: Vec2, offset: Vec2) -> Result<Self> {
        let mut out = *self;
        for p in out.pts.iter_mut() {
            *p = ex * p.x + ey * p.y + offset;
        }
        check_points(&out.pts)?;
        Ok(out)
    }

    /// Same curve with its first and last control points replaced.
    pub fn with_endpoints(&self, start: Point2, end: Point2) -> Self {
        let mut out = *self;
        out.pts[0] = start;
        let last = self.form.point_count() - 1;
        out.pts[last] = end;
        if last == 2 {
            out.pts[3] = end;
        }
        out
    }

    /// Diameter of the control polygon's bounding box.
    pub fn control_extent(&self) -> f64 {
        let pts = self.points();
        let (mut lo, mut hi) = (pts[0], pts[0]);
        for p in pts {
            lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (hi - lo).hypot()
    }

    /// Whether the segment traces a single point (its stroked region is empty).
    pub fn is_zero_length(&self) -> bool {
        let p = self.points();
        let a = p[0];
        match self.form {
            SegmentForm::Conic => {
                (p[2] - a).is_zero_length() && (self.weight == 0.0 || (p[1] - a).is_zero_length())
            }
            _ => p.iter().all(|q| (*q - a).is_zero_length()),
        }
    }

    /// Conic denominator `(1-t)^2 + 2 (1-t) t w + t^2` (1 for the polynomial forms).
    pub fn denominator(&self, t: f64) -> f64 {
        match self.form {
            SegmentForm::Conic => {
                let mt = 1.0 - t;
                mt * mt + 2.0 * mt * t * self.weight + t * t
            }
            _ => 1.0,
        }
    }

    fn checked_denominator(&self, t: f64) -> Result<f64> {
        let d = self.denominator(t);
        if d.abs() < CONIC_DENOM_EPS {
            Err(StrokeError::DegenerateEvaluation { t })
        } else {
            Ok(d)
        }
    }

    /// Position `g(t)`.
    pub fn eval(&self, t: f64) -> Result<Point2> {
        let [a, b, c, d] = self.pts;
        let mt = 1.0 - t;
        Ok(match self.form {
            SegmentForm::Cubic => {
                a * (mt * mt * mt) + b * (3.0 * mt * mt * t) + c * (3.0 * mt * t * t) + d * (t * t * t)
            }
            SegmentForm::Quadratic => a * (mt * mt) + b * (2.0 * mt * t) + c * (t * t),
            SegmentForm::Conic => {
                let den = self.checked_denominator(t)?;
                // Exact endpoint interpolation.
                if t == 0.0 {
                    return Ok(a);
                }
                if t == 1.0 {
                    return Ok(c);
                }
                let num = a * (mt * mt) + b * (2.0 * mt * t * self.weight) + c * (t * t);
                num * (1.0 / den)
            }
            SegmentForm::Line => {
                if t == 1.0 {
                    b
                } else {
                    a + (b - a) * t
                }
            }
        })
    }

    /// Exact derivative `g'(t)`.
    pub fn gradient(&self, t: f64) -> Result<Vec2> {
        let h = self.hodograph().eval(t);
        Ok(match self.form {
            SegmentForm::Cubic => h * 3.0,
            SegmentForm::Quadratic => h * 2.0,
            SegmentForm::Conic => {
                let den = self.checked_denominator(t)?;
                h * (2.0 / (den * den))
            }
            SegmentForm::Line => h,
        })
    }

    /// Second derivative `g''(t)`; the conic uses the quotient rule on
    /// numerator and denominator directly.
    pub fn second_derivative(&self, t: f64) -> Result<Vec2> {
        let [a, b, c, d] = self.pts;
        Ok(match self.form {
            SegmentForm::Cubic => ((c - b * 2.0 + a) * (1.0 - t) + (d - c * 2.0 + b) * t) * 6.0,
            SegmentForm::Quadratic => (c - b * 2.0 + a) * 2.0,
            SegmentForm::Line => Vec2::ZERO,
            SegmentForm::Conic => {
                let w = self.weight;
                let mt = 1.0 - t;
                let den = self.checked_denominator(t)?;
                let num = a * (mt * mt) + b * (2.0 * mt * t * w) + c * (t * t);
                let num1 = a * (-2.0 * mt) + b * (2.0 * w * (1.0 - 2.0 * t)) + c * (2.0 * t);
                let num2 = (a - b * (2.0 * w) + c) * 2.0;
                let den1 = -2.0 * mt + 2.0 * w * (1.0 - 2.0 * t) + 2.0 * t;
                let den2 = 2.0 - 4.0 * w + 2.0;
                let first = (num1 * den - num * den1) * (1.0 / (den * den));
                (num2 * den - num * den2) * (1.0 / (den * den)) - first * (2.0 * den1 / den)
            }
        })
    }

    /// Signed curvature `cross(g', g'') / |g'|^3`. Positive means the tangent
    /// turns counterclockwise, toward the normal `(-sin, cos)`.
    pub fn curvature(&self, t: f64) -> Result<f64> {
        let g1 = self.gradient(t)?;
        let speed = g1.hypot();
        if g1.is_zero_length() || speed == 0.0 {
            return Err(StrokeError::UndefinedCurvature { t });
        }
        let g2 = self.second_derivative(t)?;
        Ok(g1.cross(g2) / (speed * speed * speed))
    }

    /// The tangent-direction polynomial; see [`Hodograph`].
    pub fn hodograph(&self) -> Hodograph {
        let [a, b, c, d] = self.pts;
        let h = match self.form {
            SegmentForm::Cubic => [b - a, c - b, d - c],
            SegmentForm::Quadratic => {
                let (l0, l1) = (b - a, c - b);
                [l0, (l0 + l1) * 0.5, l1]
            }
            SegmentForm::Conic => {
                let w = self.weight;
                [(b - a) * w, (c - a) * 0.5, (c - b) * w]
            }
            SegmentForm::Line => [b - a; 3],
        };
        Hodograph { h }
    }

    /// Unit tangent at an end, differencing successive control points until a
    /// nonzero difference is found.
    pub fn endpoint_unit_gradient(&self, end: SegmentEnd) -> Result<Vec2> {
        if self.is_zero_length() {
            return Err(StrokeError::ZeroLengthSegment);
        }
        let [a, b, c, d] = self.pts;
        let cascade: &[Vec2] = match (self.form, end) {
            (SegmentForm::Cubic, SegmentEnd::Start) => &[b - a, c - a, d - a],
            (SegmentForm::Cubic, SegmentEnd::Stop) => &[d - c, d - b, d - a],
            (SegmentForm::Quadratic, SegmentEnd::Start) => &[b - a, c - a],
            (SegmentForm::Quadratic, SegmentEnd::Stop) => &[c - b, c - a],
            (SegmentForm::Conic, end) => {
                let (first, fallback) = match end {
                    SegmentEnd::Start => (b - a, c - a),
                    SegmentEnd::Stop => (c - b, c - a),
                };
                if self.weight != 0.0 {
                    if let Some(u) = first.try_normalize() {
                        return Ok(u * self.weight.signum());
                    }
                }
                return fallback.try_normalize().ok_or(StrokeError::ZeroLengthSegment);
            }
            (SegmentForm::Line, _) => &[b - a],
        };
        cascade
            .iter()
            .find_map(|v| v.try_normalize())
            .ok_or(StrokeError::ZeroLengthSegment)
    }

    /// The piece of this segment over `[t0, t1]`, reparameterized to `[0, 1]`.
    ///
    /// For conics the range must not contain a zero of the denominator.
    pub fn subsegment(&self, t0: f64, t1: f64) -> Result<Self> {
        let [a, b, c, d] = self.pts;
        match self.form {
            SegmentForm::Line => {
                let (p0, p1) = (self.eval(t0)?, self.eval(t1)?);
                PathSegment::line(p0, p1)
            }
            SegmentForm::Quadratic => {
                let blossom = |u: f64, v: f64| {
                    let l0 = a.lerp(b, u);
                    let l1 = b.lerp(c, u);
                    l0.lerp(l1, v)
                };
                PathSegment::quadratic(blossom(t0, t0), blossom(t0, t1), blossom(t1, t1))
            }
            SegmentForm::Cubic => {
                let blossom = |u: f64, v: f64, s: f64| {
                    let l0 = a.lerp(b, u);
                    let l1 = b.lerp(c, u);
                    let l2 = c.lerp(d, u);
                    let m0 = l0.lerp(l1, v);
                    let m1 = l1.lerp(l2, v);
                    m0.lerp(m1, s)
                };
                PathSegment::cubic(
                    blossom(t0, t0, t0),
                    blossom(t0, t0, t1),
                    blossom(t0, t1, t1),
                    blossom(t1, t1, t1),
                )
            }
            SegmentForm::Conic => {
                // Homogeneous blossom of (P, w) with weights (1, w, 1).
                let w = self.weight;
                let hp = [(a, 1.0), (b * w, w), (c, 1.0)];
                let blossom = |u: f64, v: f64| {
                    let lerp3 = |p: (Vec2, f64), q: (Vec2, f64), s: f64| {
                        (p.0.lerp(q.0, s), p.1 + (q.1 - p.1) * s)
                    };
                    let l0 = lerp3(hp[0], hp[1], u);
                    let l1 = lerp3(hp[1], hp[2], u);
                    lerp3(l0, l1, v)
                };
                let (q0, w0) = blossom(t0, t0);
                let (q1, w1) = blossom(t0, t1);
                let (q2, w2) = blossom(t1, t1);
                if w0.abs() < CONIC_DENOM_EPS || w2.abs() < CONIC_DENOM_EPS || w0 * w2 < 0.0 {
                    return Err(StrokeError::DegenerateEvaluation { t: if w0.abs() < w2.abs() { t0 } else { t1 } });
                }
                let p0 = q0 * (1.0 / w0);
                let p2 = q2 * (1.0 / w2);
                let norm = (w0 * w2).sqrt();
                let mid_w = w1 / norm * w0.signum();
                let p1 = if w1.abs() < 1e-300 { p0.lerp(p2, 0.5) } else { q1 * (1.0 / w1) };
                PathSegment::conic(p0, p1, p2, mid_w)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_1_SQRT_2;
    use proptest::prelude::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn quarter_circle() -> PathSegment {
        PathSegment::conic(p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0), FRAC_1_SQRT_2).unwrap()
    }

    #[test]
    fn line_midpoint_and_gradient() {
        let l = PathSegment::line(p(0.0, 0.0), p(10.0, 0.0)).unwrap();
        assert_eq!(l.eval(0.5).unwrap(), p(5.0, 0.0));
        for t in [0.0, 0.3, 1.0] {
            assert_eq!(l.gradient(t).unwrap(), Vec2::new(10.0, 0.0));
            assert_eq!(l.curvature(t).unwrap(), 0.0);
        }
    }

    #[test]
    fn conic_quarter_circle_midpoint() {
        let k = quarter_circle();
        let m = k.eval(0.5).unwrap();
        assert!((m.x - FRAC_1_SQRT_2).abs() < 1e-15 && (m.y - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((m.hypot() - 1.0).abs() < 1e-15);
        assert!((k.curvature(0.5).unwrap().abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unit_weight_conic_is_quadratic() {
        let (a, b, c) = (p(0.3, -1.0), p(2.0, 4.0), p(5.0, 0.5));
        let k = PathSegment::conic(a, b, c, 1.0).unwrap();
        let q = PathSegment::quadratic(a, b, c).unwrap();
        for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
            assert!(k.eval(t).unwrap().distance(q.eval(t).unwrap()) < 1e-12);
            assert!((k.gradient(t).unwrap() - q.gradient(t).unwrap()).hypot() < 1e-12);
        }
    }

    #[test]
    fn quadratic_gradient_example() {
        let q = PathSegment::quadratic(p(0.0, 0.0), p(1.0, 0.0), p(2.0, 1.0)).unwrap();
        assert_eq!(q.gradient(0.5).unwrap(), Vec2::new(2.0, 1.0));
    }

    #[test]
    fn cusp_gradient_vanishes() {
        let c = PathSegment::cubic(p(0.0, 0.0), p(2.0, 2.0), p(0.0, 2.0), p(2.0, 0.0)).unwrap();
        assert!(c.gradient(0.5).unwrap().hypot() < 1e-15);
        assert!(matches!(c.curvature(0.5), Err(StrokeError::UndefinedCurvature { .. })));
    }

    #[test]
    fn endpoint_gradient_fallbacks() {
        let c = PathSegment::cubic(p(0.0, 0.0), p(0.0, 0.0), p(3.0, 4.0), p(5.0, 5.0)).unwrap();
        let u = c.endpoint_unit_gradient(SegmentEnd::Start).unwrap();
        assert!((u.x - 0.6).abs() < 1e-15 && (u.y - 0.8).abs() < 1e-15);

        let k = PathSegment::conic(p(0.0, 0.0), p(1.0, 0.0), p(2.0, 2.0), -1.0).unwrap();
        assert_eq!(k.endpoint_unit_gradient(SegmentEnd::Start).unwrap(), Vec2::new(-1.0, 0.0));

        let l = PathSegment::line(p(0.0, 0.0), p(10.0, 0.0)).unwrap();
        assert_eq!(l.endpoint_unit_gradient(SegmentEnd::Start).unwrap(), Vec2::new(1.0, 0.0));
        assert_eq!(l.endpoint_unit_gradient(SegmentEnd::Stop).unwrap(), Vec2::new(1.0, 0.0));

        // w = 0 skips straight to the chord.
        let k0 = PathSegment::conic(p(0.0, 0.0), p(0.0, 5.0), p(3.0, 4.0), 0.0).unwrap();
        let u = k0.endpoint_unit_gradient(SegmentEnd::Stop).unwrap();
        assert!((u - Vec2::new(0.6, 0.8)).hypot() < 1e-15);
    }

    #[test]
    fn zero_length_detection() {
        let z = p(1.0, 1.0);
        let c = PathSegment::cubic(z, z, z, z).unwrap();
        assert!(c.is_zero_length());
        assert_eq!(c.endpoint_unit_gradient(SegmentEnd::Start), Err(StrokeError::ZeroLengthSegment));
        // Conic with coincident ends but an off-curve control point still has length.
        let k = PathSegment::conic(z, p(3.0, 1.0), z, 0.5).unwrap();
        assert!(!k.is_zero_length());
        let k0 = PathSegment::conic(z, p(3.0, 1.0), z, 0.0).unwrap();
        assert!(k0.is_zero_length());
    }

    #[test]
    fn rejects_non_finite() {
        assert!(PathSegment::line(p(f64::NAN, 0.0), p(1.0, 0.0)).is_err());
        assert!(PathSegment::conic(p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), f64::INFINITY).is_err());
    }

    #[test]
    fn conic_denominator_zero_is_error() {
        let k = PathSegment::conic(p(0.0, 0.0), p(1.0, 0.0), p(2.0, 2.0), -1.0).unwrap();
        assert!(matches!(k.eval(0.5), Err(StrokeError::DegenerateEvaluation { .. })));
    }

    #[test]
    fn subsegment_matches_parent() {
        let segs = [
            PathSegment::cubic(p(0.0, 0.0), p(3.0, 3.0), p(-1.0, 3.0), p(2.0, 0.0)).unwrap(),
            PathSegment::quadratic(p(0.0, 0.0), p(1.0, 2.0), p(2.0, 0.0)).unwrap(),
            PathSegment::conic(p(0.0, 0.0), p(1.0, 2.0), p(2.0, 0.0), 0.3).unwrap(),
            PathSegment::conic(p(0.0, 0.0), p(1.0, 2.0), p(2.0, 0.0), -2.5).unwrap(),
        ];
        for s in segs {
            let (t0, t1) = (0.05, 0.12);
            let sub = s.subsegment(t0, t1).unwrap();
            for i in 0..=8 {
                let u = i as f64 / 8.0;
                let expect = s.eval(t0 + (t1 - t0) * u).unwrap();
                let got = sub.eval(u).unwrap();
                // Rational reparameterization keeps the locus, not the speed;
                // check the endpoints exactly and interior points against the locus.
                if i == 0 || i == 8 {
                    assert!(got.distance(expect) < 1e-12, "{:?}", s.form());
                }
                let mut best = f64::MAX;
                for k in 0..=40_000 {
                    let tt = t0 + (t1 - t0) * k as f64 / 40_000.0;
                    best = best.min(s.eval(tt).unwrap().distance(got));
                }
                assert!(best < 1e-3, "{:?} {}", s.form(), best);
            }
        }
    }

    fn arb_point() -> impl Strategy<Value = Point2> {
        (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(x, y)| Point2::new(x, y))
    }

    fn arb_segment() -> impl Strategy<Value = PathSegment> {
        prop_oneof![
            (arb_point(), arb_point(), arb_point(), arb_point())
                .prop_map(|(a, b, c, d)| PathSegment::cubic(a, b, c, d).unwrap()),
            (arb_point(), arb_point(), arb_point())
                .prop_map(|(a, b, c)| PathSegment::quadratic(a, b, c).unwrap()),
            (arb_point(), arb_point(), arb_point(), 0.05f64..4.0)
                .prop_map(|(a, b, c, w)| PathSegment::conic(a, b, c, w).unwrap()),
            (arb_point(), arb_point()).prop_map(|(a, b)| PathSegment::line(a, b).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn gradient_matches_central_differences(seg in arb_segment(), t in 0.01f64..0.99) {
            for h in [1e-4, 1e-5] {
                let fd = (seg.eval(t + h).unwrap() - seg.eval(t - h).unwrap()) * (0.5 / h);
                let g = seg.gradient(t).unwrap();
                let scale = 1.0 + seg.control_extent() * 100.0;
                prop_assert!((g - fd).hypot() <= scale * 1e3 * h * h + 1e-7 * scale,
                    "h={h} g={g:?} fd={fd:?}");
            }
        }

        #[test]
        fn second_derivative_matches_differences(seg in arb_segment(), t in 0.01f64..0.99) {
            let h = 1e-5;
            let fd = (seg.gradient(t + h).unwrap() - seg.gradient(t - h).unwrap()) * (0.5 / h);
            let g2 = seg.second_derivative(t).unwrap();
            let scale = 1.0 + g2.hypot() + seg.control_extent() * 100.0;
            prop_assert!((g2 - fd).hypot() <= 1e-4 * scale);
        }

        #[test]
        fn hodograph_is_parallel_to_gradient(seg in arb_segment(), t in 0.0f64..=1.0) {
            let g = seg.gradient(t).unwrap();
            let h = seg.hodograph().eval(t);
            prop_assert!(g.cross(h).abs() <= 1e-9 * (1.0 + g.hypot() * h.hypot()));
            prop_assert!(g.dot(h) >= 0.0);
        }

        #[test]
        fn affine_invariance(seg in arb_segment(), t in 0.0f64..=1.0,
                             m in proptest::array::uniform4(-3.0f64..3.0), o in arb_point()) {
            let (ex, ey) = (Vec2::new(m[0], m[1]), Vec2::new(m[2], m[3]));
            let moved = seg.transform(ex, ey, o).unwrap();
            let p0 = seg.eval(t).unwrap();
            let expect = ex * p0.x + ey * p0.y + o;
            prop_assert!(moved.eval(t).unwrap().distance(expect) < 1e-9 * (1.0 + expect.hypot()));
        }

        #[test]
        fn endpoint_gradient_is_unit(seg in arb_segment()) {
            for end in [SegmentEnd::Start, SegmentEnd::Stop] {
                if let Ok(u) = seg.endpoint_unit_gradient(end) {
                    prop_assert!((u.hypot() - 1.0).abs() < 1e-12);
                }
            }
        }
    }
}
