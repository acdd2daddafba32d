// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

//! Path text input, elliptical arc conversion, and tessellation output.

mod arc;
mod document;
mod parse;

pub use arc::arc_to_conics;
pub use document::{
    write_svg, DocLink, DocParams, DocRib, StyleSidecar, TessellationDocument, SCHEMA_VERSION,
};
pub use parse::{parse_path, write_path, PathError};
