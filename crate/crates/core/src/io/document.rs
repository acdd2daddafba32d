// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! Serializable tessellation documents (JSON) and SVG overlays.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dash::DashPattern;
use crate::geom::{Point2, Vec2};
use crate::joins::{CapStyle, JoinKind, JoinStyle};
use crate::oracle::FacetStats;
use crate::stroke::StrokeStyle;
use crate::tessellator::{LinkKind, Quad, Tessellation};

pub const SCHEMA_VERSION: u32 = 1;

/// Parameters echoed into a document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DocParams {
    /// Tangent step in degrees.
    pub q_deg: f64,
    pub width: f64,
    pub join: JoinKind,
    pub cap: CapStyle,
    pub miter_limit: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dash: Option<DashPattern>,
}

impl DocParams {
    pub fn new(q_deg: f64, style: &StrokeStyle, dash: Option<DashPattern>) -> Self {
        DocParams {
            q_deg,
            width: style.width,
            join: style.join.kind,
            cap: style.cap,
            miter_limit: style.join.miter_limit,
            dash,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DocRib {
    pub position: Point2,
    pub normal: Vec2,
    pub t: f64,
    /// Tangent angle in radians.
    pub psi: f64,
    pub cum_length: f64,
    pub r_n: f64,
    pub r_p: f64,
    /// Offset vertices on the normal and opposite sides.
    pub vertices: [Point2; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DocLink {
    #[serde(flatten)]
    pub kind: LinkKind,
    pub contour: usize,
    pub index: usize,
    pub first_rib: usize,
    pub rib_count: usize,
    pub first_quad: usize,
    pub quad_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TessellationDocument {
    pub schema: u32,
    pub params: DocParams,
    pub ribs: Vec<DocRib>,
    pub quads: Vec<Quad>,
    pub links: Vec<DocLink>,
    pub stats: FacetStats,
}

impl TessellationDocument {
    pub fn new(tess: &Tessellation, params: DocParams, stats: FacetStats) -> Self {
        let ribs = tess
            .ribs
            .iter()
            .map(|r| DocRib {
                position: r.position,
                normal: r.normal,
                t: r.t,
                psi: r.psi.radians(),
                cum_length: r.cum_length,
                r_n: r.r_n,
                r_p: r.r_p,
                vertices: [r.vertex_n(), r.vertex_p()],
            })
            .collect();
        let links = tess
            .links
            .iter()
            .map(|l| DocLink {
                kind: l.kind,
                contour: l.contour,
                index: l.index,
                first_rib: l.first_rib,
                rib_count: l.rib_count,
                first_quad: l.first_quad,
                quad_count: l.quad_count,
            })
            .collect();
        TessellationDocument { schema: SCHEMA_VERSION, params, ribs, quads: tess.quads.clone(), links, stats }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    fn quad_vertices(&self, q: &Quad) -> [Point2; 4] {
        let a = &self.ribs[q.rib_lo].vertices;
        let b = &self.ribs[q.rib_hi].vertices;
        [a[0], b[0], b[1], a[1]]
    }

    /// Bounds of all rib vertices, or `None` when empty.
    pub fn bounds(&self) -> Option<(Point2, Point2)> {
        let mut it = self.ribs.iter().flat_map(|r| r.vertices);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), p| {
            (Vec2::new(lo.x.min(p.x), lo.y.min(p.y)), Vec2::new(hi.x.max(p.x), hi.y.max(p.y)))
        }))
    }
}

/// JSON style sidecar accepted by the CLI.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StyleSidecar {
    pub width: f64,
    pub join: JoinKind,
    pub cap: CapStyle,
    pub miter_limit: f64,
    pub dash: Option<DashPattern>,
}

impl Default for StyleSidecar {
    fn default() -> Self {
        let s = StrokeStyle::default();
        StyleSidecar { width: s.width, join: s.join.kind, cap: s.cap, miter_limit: s.join.miter_limit, dash: None }
    }
}

impl StyleSidecar {
    pub fn stroke_style(&self) -> crate::error::Result<StrokeStyle> {
        Ok(StrokeStyle { width: self.width, join: JoinStyle::new(self.join, self.miter_limit)?, cap: self.cap })
    }
}

fn polygon(out: &mut String, pts: &[Point2]) {
    out.push_str("  <polygon points=\"");
    for (i, p) in pts.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{},{}", p.x, p.y);
    }
    out.push_str("\"/>\n");
}

/// Renders the quads as SVG polygons, bow-ties as two triangles, over an
/// optional polyline through `generator`.
pub fn write_svg(doc: &TessellationDocument, generator: &[Point2]) -> String {
    let w = doc.params.width;
    let (lo, hi) = doc.bounds().unwrap_or((Vec2::ZERO, Vec2::ZERO));
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        lo.x - w,
        lo.y - w,
        hi.x - lo.x + 2.0 * w,
        hi.y - lo.y + 2.0 * w
    );
    let _ = writeln!(
        out,
        "<g fill=\"#4a90d9\" fill-opacity=\"0.5\" stroke=\"#1b3d6b\" stroke-width=\"{}\">",
        w * 0.01
    );
    for q in &doc.quads {
        let v = doc.quad_vertices(q);
        if q.bowtie {
            // Same split as `point_in_tessellation`, so overlaps are visible.
            polygon(&mut out, &[v[0], v[3], v[2]]);
            polygon(&mut out, &[v[0], v[2], v[1]]);
        } else {
            polygon(&mut out, &v);
        }
    }
    out.push_str("</g>\n");
    if generator.len() > 1 {
        out.push_str("<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"");
        let _ = write!(out, "{}\" points=\"", w * 0.02);
        for (i, p) in generator.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "{},{}", p.x, p.y);
        }
        out.push_str("\"/>\n");
    }
    out.push_str("</svg>\n");
    out
}
