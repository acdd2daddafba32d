// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! SVG path-data parser with one extension, `K x1 y1 w x2 y2`, for a conic
//! with control point `(x1, y1)`, middle weight `w` and end point `(x2, y2)`.
//! The relative form `k` offsets both points; the weight is never offset.

use std::fmt::Write as _;

use thiserror::Error;

use super::arc::arc_to_conics;
use crate::geom::Point2;
use crate::segment::{PathSegment, SegmentForm};
use crate::stroke::Contour;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum PathError {
    #[error("parse error at byte {offset}: expected {expected}")]
    Parse { offset: usize, expected: String },
    #[error("invalid value at byte {offset}: {message}")]
    Validation { offset: usize, message: String },
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && matches!(self.src[self.pos], b' ' | b'\t' | b'\n' | b'\r' | b'\x0c') {
            self.pos += 1;
        }
    }

    fn skip_ws_comma(&mut self) {
        self.skip_ws();
        if self.peek() == Some(b',') {
            self.pos += 1;
            self.skip_ws();
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn at_number(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some(b'0'..=b'9' | b'.' | b'-' | b'+'))
    }

    fn err(&self, expected: &str) -> PathError {
        PathError::Parse { offset: self.pos, expected: expected.to_string() }
    }

    fn number(&mut self) -> Result<f64, PathError> {
        self.skip_ws_comma();
        let start = self.pos;
        let bytes = self.src;
        let mut i = self.pos;
        if matches!(bytes.get(i), Some(b'+' | b'-')) {
            i += 1;
        }
        let int_start = i;
        while matches!(bytes.get(i), Some(b'0'..=b'9')) {
            i += 1;
        }
        let mut digits = i - int_start;
        if bytes.get(i) == Some(&b'.') {
            i += 1;
            let frac_start = i;
            while matches!(bytes.get(i), Some(b'0'..=b'9')) {
                i += 1;
            }
            digits += i - frac_start;
        }
        if digits == 0 {
            return Err(self.err("number"));
        }
        if matches!(bytes.get(i), Some(b'e' | b'E')) {
            let mut k = i + 1;
            if matches!(bytes.get(k), Some(b'+' | b'-')) {
                k += 1;
            }
            let exp_start = k;
            while matches!(bytes.get(k), Some(b'0'..=b'9')) {
                k += 1;
            }
            if k > exp_start {
                i = k;
            }
        }
        let text = std::str::from_utf8(&bytes[start..i]).expect("ascii");
        let v: f64 = text.parse().map_err(|_| self.err("number"))?;
        if !v.is_finite() {
            return Err(PathError::Validation { offset: start, message: format!("non-finite number {text}") });
        }
        self.pos = i;
        Ok(v)
    }

    fn flag(&mut self) -> Result<bool, PathError> {
        self.skip_ws_comma();
        match self.peek() {
            Some(b'0') => {
                self.pos += 1;
                Ok(false)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(true)
            }
            _ => Err(self.err("flag 0 or 1")),
        }
    }

    fn pair(&mut self) -> Result<Point2, PathError> {
        let x = self.number()?;
        let y = self.number()?;
        Ok(Point2::new(x, y))
    }
}

struct Builder {
    contours: Vec<Contour>,
    current: Vec<PathSegment>,
    start: Point2,
    pen: Point2,
    open: bool,
}

impl Builder {
    fn finish(&mut self, closed: bool) {
        if self.open {
            let segs = std::mem::take(&mut self.current);
            self.contours.push(Contour::new(segs, closed));
        }
        self.open = false;
    }

    fn push(&mut self, seg: PathSegment) {
        if !self.open {
            self.open = true;
            self.start = self.pen;
        }
        self.pen = seg.end();
        self.current.push(seg);
    }
}

fn validated(seg: crate::error::Result<PathSegment>, offset: usize) -> Result<PathSegment, PathError> {
    seg.map_err(|e| PathError::Validation { offset, message: e.to_string() })
}

/// Parses SVG path data (plus the `K` conic command) into contours.
pub fn parse_path(text: &str) -> Result<Vec<Contour>, PathError> {
    let mut lx = Lexer { src: text.as_bytes(), pos: 0 };
    let mut b = Builder {
        contours: Vec::new(),
        current: Vec::new(),
        start: Point2::new(0.0, 0.0),
        pen: Point2::new(0.0, 0.0),
        open: false,
    };
    let mut moved = false;
    // Reflection source for S and T.
    let mut last_cubic_ctrl: Option<Point2> = None;
    let mut last_quad_ctrl: Option<Point2> = None;
    let mut cmd: Option<u8> = None;

    loop {
        lx.skip_ws();
        let Some(c) = lx.peek() else { break };
        let at = lx.pos;
        let op = if c.is_ascii_alphabetic() {
            lx.pos += 1;
            c
        } else if lx.at_number() {
            match cmd {
                Some(b'M') => b'L',
                Some(b'm') => b'l',
                Some(b'Z' | b'z') | None => return Err(lx.err("command")),
                Some(prev) => prev,
            }
        } else {
            return Err(lx.err("command or number"));
        };
        if !moved && !matches!(op, b'M' | b'm') {
            return Err(PathError::Parse { offset: at, expected: "moveto".into() });
        }
        let rel = op.is_ascii_lowercase();
        let base = if rel { b.pen } else { Point2::new(0.0, 0.0) };
        let pen = b.pen;
        let mut cubic_ctrl = None;
        let mut quad_ctrl = None;
        match op.to_ascii_uppercase() {
            b'M' => {
                let p = lx.pair()? + base;
                b.finish(false);
                b.pen = p;
                b.start = p;
                moved = true;
                // A bare moveto still yields a (possibly empty) subpath.
                b.open = true;
            }
            b'Z' => {
                if b.pen != b.start {
                    let s = b.start;
                    b.push(validated(PathSegment::line(pen, s), at)?);
                }
                b.finish(true);
                b.pen = b.start;
                b.open = false;
            }
            b'L' => {
                let p = lx.pair()? + base;
                b.push(validated(PathSegment::line(pen, p), at)?);
            }
            b'H' => {
                let x = lx.number()? + base.x;
                b.push(validated(PathSegment::line(pen, Point2::new(x, pen.y)), at)?);
            }
            b'V' => {
                let y = lx.number()? + base.y;
                b.push(validated(PathSegment::line(pen, Point2::new(pen.x, y)), at)?);
            }
            b'C' => {
                let c1 = lx.pair()? + base;
                let c2 = lx.pair()? + base;
                let p = lx.pair()? + base;
                b.push(validated(PathSegment::cubic(pen, c1, c2, p), at)?);
                cubic_ctrl = Some(c2);
            }
            b'S' => {
                let c1 = last_cubic_ctrl.map_or(pen, |c| pen + (pen - c));
                let c2 = lx.pair()? + base;
                let p = lx.pair()? + base;
                b.push(validated(PathSegment::cubic(pen, c1, c2, p), at)?);
                cubic_ctrl = Some(c2);
            }
            b'Q' => {
                let c1 = lx.pair()? + base;
                let p = lx.pair()? + base;
                b.push(validated(PathSegment::quadratic(pen, c1, p), at)?);
                quad_ctrl = Some(c1);
            }
            b'T' => {
                let c1 = last_quad_ctrl.map_or(pen, |c| pen + (pen - c));
                let p = lx.pair()? + base;
                b.push(validated(PathSegment::quadratic(pen, c1, p), at)?);
                quad_ctrl = Some(c1);
            }
            b'K' => {
                let c1 = lx.pair()? + base;
                let w = lx.number()?;
                let p = lx.pair()? + base;
                b.push(validated(PathSegment::conic(pen, c1, p, w), at)?);
            }
            b'A' => {
                let rx = lx.number()?;
                let ry = lx.number()?;
                let rot = lx.number()?;
                let large = lx.flag()?;
                let sweep = lx.flag()?;
                let p = lx.pair()? + base;
                for seg in arc_to_conics(pen, rx, ry, rot, large, sweep, p) {
                    b.push(seg);
                }
            }
            _ => return Err(PathError::Parse { offset: at, expected: "path command".into() }),
        }
        last_cubic_ctrl = cubic_ctrl;
        last_quad_ctrl = quad_ctrl;
        cmd = Some(op);
        lx.skip_ws_comma();
    }
    b.finish(false);
    // Drop subpaths that were only a moveto.
    b.contours.retain(|c| !c.segments.is_empty());
    Ok(b.contours)
}

fn fmt_pt(out: &mut String, p: Point2) {
    let _ = write!(out, " {} {}", p.x, p.y);
}

/// Serializes contours as absolute path data that [`parse_path`] reads back
/// to the same structure.
pub fn write_path(contours: &[Contour]) -> String {
    let mut out = String::new();
    for c in contours {
        let Some(first) = c.segments.first() else { continue };
        if !out.is_empty() {
            out.push(' ');
        }
        out.push('M');
        fmt_pt(&mut out, first.start());
        for (i, s) in c.segments.iter().enumerate() {
            let pts = s.points();
            // A closing line is implied by Z.
            if c.closed && i + 1 == c.segments.len() && s.form() == SegmentForm::Line && s.end() == first.start() {
                break;
            }
            match s.form() {
                SegmentForm::Line => out.push_str(" L"),
                SegmentForm::Quadratic => out.push_str(" Q"),
                SegmentForm::Cubic => out.push_str(" C"),
                SegmentForm::Conic => {
                    out.push_str(" K");
                    fmt_pt(&mut out, pts[1]);
                    let _ = write!(out, " {}", s.weight());
                    fmt_pt(&mut out, pts[2]);
                    continue;
                }
            }
            for p in &pts[1..] {
                fmt_pt(&mut out, *p);
            }
        }
        if c.closed {
            out.push_str(" Z");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::{inflection_params, CubicClass};
    use core::f64::consts::FRAC_1_SQRT_2;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn line_path() {
        let c = parse_path("M 0 0 L 10 0").unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].segments, vec![PathSegment::line(p(0.0, 0.0), p(10.0, 0.0)).unwrap()]);
        assert!(!c[0].closed);
    }

    #[test]
    fn conic_extension() {
        let c = parse_path("M 1 0 K 1 1 0.7071067811865476 0 1").unwrap();
        let s = c[0].segments[0];
        assert_eq!(s.form(), SegmentForm::Conic);
        assert_eq!(s.weight(), FRAC_1_SQRT_2);
        assert_eq!(s.points(), &[p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]);
        let r = parse_path("m 1 0 k 0 1 -2 -1 1").unwrap();
        assert_eq!(r[0].segments[0].points(), &[p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)]);
        assert_eq!(r[0].segments[0].weight(), -2.0);
    }

    #[test]
    fn cusp_cubic() {
        let c = parse_path("M 0 0 C 2 2 0 2 2 0").unwrap();
        assert_eq!(inflection_params(&c[0].segments[0]).class, CubicClass::Cusp);
    }

    #[test]
    fn compact_syntax() {
        let c = parse_path("M0,0l10-5.5.5 1e1h-3v2zm1 1 2 2").unwrap();
        assert_eq!(c.len(), 2);
        let s = &c[0].segments;
        assert_eq!(s[0].end(), p(10.0, -5.5));
        assert_eq!(s[1].end(), p(10.5, 4.5));
        assert_eq!(s[2].end(), p(7.5, 4.5));
        assert_eq!(s[3].end(), p(7.5, 6.5));
        assert_eq!(s[4].end(), p(0.0, 0.0));
        assert!(c[0].closed);
        // After Z, m is relative to the subpath start; extra pairs are lines.
        assert_eq!(c[1].segments[0].start(), p(1.0, 1.0));
        assert_eq!(c[1].segments[0].end(), p(3.0, 3.0));
    }

    #[test]
    fn smooth_reflections() {
        let c = parse_path("M 0 0 C 1 1 2 1 3 0 S 5 -1 6 0 Q 7 1 8 0 T 10 0").unwrap();
        let s = &c[0].segments;
        assert_eq!(s[1].points()[1], p(4.0, -1.0));
        assert_eq!(s[3].points()[1], p(9.0, -1.0));
        // Without a preceding cubic the reflected point is the pen.
        let c = parse_path("M 0 0 S 1 1 2 0").unwrap();
        assert_eq!(c[0].segments[0].points()[1], p(0.0, 0.0));
    }

    #[test]
    fn arc_flags_packed() {
        let c = parse_path("M 0 0 A 1 1 0 1 0 2 0").unwrap();
        let d = parse_path("M0 0A1 1 0 102 0").unwrap();
        assert_eq!(c, d);
        assert_eq!(c[0].segments.len(), 2);
    }

    #[test]
    fn errors_carry_offsets() {
        match parse_path("M 0 0 L 10") {
            Err(PathError::Parse { offset, .. }) => assert_eq!(offset, 10),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_path("L 1 1"), Err(PathError::Parse { offset: 0, .. })));
        assert!(matches!(parse_path("M 0 0 X 1"), Err(PathError::Parse { offset: 6, .. })));
        assert!(matches!(parse_path("M 0 0 L 1e400 0"), Err(PathError::Validation { .. })));
        assert!(matches!(parse_path("M 0 0 A 1 1 0 2 0 1 1"), Err(PathError::Parse { .. })));
    }

    #[test]
    fn round_trip() {
        let text = "M 0 0 C 2 2 0 2 2 0 Q 3 1 4 0 K 5 1 -0.5 6 0 L 0 0 Z M 1 1 L 2 2";
        let c = parse_path(text).unwrap();
        let back = parse_path(&write_path(&c)).unwrap();
        assert_eq!(c, back);
    }

    #[test]
    fn deleting_a_coordinate_fails() {
        let corpus = ["M 0 0 L 10 0", "M 1 0 K 1 1 0.5 0 1", "M 0 0 C 2 2 0 2 2 0", "M 0 0 Q 1 1 2 0"];
        for text in corpus {
            let tokens: Vec<&str> = text.split(' ').collect();
            for (i, tok) in tokens.iter().enumerate() {
                if tok.parse::<f64>().is_err() {
                    continue;
                }
                let mut t = tokens.clone();
                t.remove(i);
                let mutated = t.join(" ");
                assert!(parse_path(&mutated).is_err(), "{mutated}");
            }
        }
    }
}
