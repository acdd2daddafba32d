// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by segment construction, evaluation and tessellation.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum StrokeError {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("conic denominator vanishes at t = {t}")]
    DegenerateEvaluation { t: f64 },
    #[error("segment has zero length")]
    ZeroLengthSegment,
    #[error("curvature undefined where the gradient vanishes (t = {t})")]
    UndefinedCurvature { t: f64 },
    #[error("tangent angle {psi} lies outside the interval's swept range")]
    AngleOutOfInterval { psi: f64 },
    #[error("segments do not share an endpoint (gap {gap})")]
    DisconnectedSegments { gap: f64 },
    #[error("dash pattern must contain a positive length")]
    EmptyPattern,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = StrokeError> = core::result::Result<T, E>;
