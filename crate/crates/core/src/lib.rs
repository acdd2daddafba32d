// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! Stroke tessellation by uniform stepping in tangent angle.
//!
//! Each path segment (cubic, quadratic, rational quadratic or line) is cut at
//! its inflections, cusps and conic asymptotes into intervals of monotone
//! tangent angle. The step count of every interval is known before any
//! geometry is generated, and the resulting quad strip turns by at most `q`
//! between consecutive ribs.

pub mod angle;
pub mod dash;
pub mod error;
pub mod geom;
pub mod intervals;
pub mod io;
pub mod joins;
pub mod oracle;
pub mod segment;
pub mod solver;
pub mod stroke;
pub mod tessellator;

pub use angle::Angle;
pub use dash::{dash_path, dash_stroke, DashPattern, DashPiece};
pub use error::{Result, StrokeError};
pub use geom::{Point2, Vec2};
pub use intervals::{build_intervals, IntervalTable};
pub use joins::{CapStyle, JoinKind, JoinStyle};
pub use segment::{PathSegment, SegmentForm};
pub use stroke::{stroke_contours, Contour, StrokeStyle};
pub use tessellator::{tessellate_segment, Tessellation, TessellationParams};
