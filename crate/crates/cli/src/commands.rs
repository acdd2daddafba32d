// Copyright 2026 the Polarstroke Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use polarstroke::dash::accumulate_arc_length;
use polarstroke::io::{parse_path, write_svg, DocParams, StyleSidecar, TessellationDocument};
use polarstroke::oracle::{check_coverage, facet_stats, max_pivot_sweep, uniform_tessellate, CoverageReport, FacetStats};
use polarstroke::{
    dash_stroke, stroke_contours, tessellate_segment, Contour, DashPattern, Point2, StrokeStyle, TessellationParams,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::{Format, StrokeArgs};

/// Smallest fraction of probes the oracle check must classify correctly.
const COVERAGE_THRESHOLD: f64 = 0.995;

pub enum Outcome {
    Pass,
    Violation,
}

struct Setup {
    contours: Vec<Contour>,
    style: StrokeStyle,
    dash: Option<DashPattern>,
    q_deg: f64,
    q: f64,
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn setup(a: &StrokeArgs) -> Result<Setup> {
    if !(a.q.is_finite() && a.q > 0.0 && a.q <= 90.0) {
        bail!("--q must be in (0, 90] degrees, got {}", a.q);
    }
    let mut side = match &a.style {
        Some(p) => serde_json::from_str::<StyleSidecar>(&read_input(p)?)
            .with_context(|| format!("parsing style sidecar {}", p.display()))?,
        None => StyleSidecar::default(),
    };
    if let Some(w) = a.width {
        side.width = w;
    }
    if let Some(j) = a.join {
        side.join = j.into();
    }
    if let Some(c) = a.cap {
        side.cap = c.into();
    }
    if let Some(m) = a.miter_limit {
        side.miter_limit = m;
    }
    if let Some(lengths) = &a.dash {
        let offset = a.dash_offset.or(side.dash.as_ref().map(|d| d.offset)).unwrap_or(0.0);
        side.dash = Some(DashPattern { lengths: lengths.clone(), offset });
    } else if let (Some(d), Some(off)) = (side.dash.as_mut(), a.dash_offset) {
        d.offset = off;
    }
    if !(side.width.is_finite() && side.width > 0.0) {
        bail!("width must be positive, got {}", side.width);
    }
    let style = side.stroke_style()?;
    if let Some(d) = &side.dash {
        d.validate()?;
    }
    let contours = parse_path(&read_input(&a.input)?)?;
    Ok(Setup { contours, style, dash: side.dash, q_deg: a.q, q: a.q.to_radians() })
}

fn generator_polyline(contours: &[Contour]) -> Vec<Point2> {
    let mut pts = Vec::new();
    for c in contours {
        for s in &c.segments {
            for i in 0..=32 {
                if let Ok(p) = s.eval(i as f64 / 32.0) {
                    pts.push(p);
                }
            }
        }
    }
    pts
}

pub fn tess(a: &StrokeArgs, dashed: bool) -> Result<Outcome> {
    let s = setup(a)?;
    let mut t = match (&s.dash, dashed) {
        (Some(d), true) => dash_stroke(&s.contours, d, &s.style, s.q)?,
        (None, true) => bail!("dash requires --dash or a sidecar dash pattern"),
        _ => stroke_contours(&s.contours, &s.style, s.q)?,
    };
    accumulate_arc_length(&mut t);
    let stats = facet_stats(&t, s.style.width);
    let doc = TessellationDocument::new(&t, DocParams::new(s.q_deg, &s.style, s.dash.clone()), stats);
    let bytes = match a.format.unwrap_or(Format::Json) {
        Format::Json => doc.to_json() + "\n",
        Format::Svg => write_svg(&doc, &generator_polyline(&s.contours)),
        Format::Text => bail!("tess writes json or svg"),
    };
    write_output(a.output.as_deref(), bytes.as_bytes())?;
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct StatsReport {
    q_deg: f64,
    width: f64,
    quads: usize,
    ribs: usize,
    facets: FacetStats,
}

fn stats_text(label: &str, f: &FacetStats) -> String {
    format!(
        "{label:<8} max {:>8.3}  mean {:>8.3}  sd {:>8.3}  facets {:>6}  excluded {:>4}",
        f.max_deg, f.mean_deg, f.sd_deg, f.count, f.excluded
    )
}

pub fn stats(a: &StrokeArgs) -> Result<Outcome> {
    let s = setup(a)?;
    let t = stroke_contours(&s.contours, &s.style, s.q)?;
    let r = StatsReport {
        q_deg: s.q_deg,
        width: s.style.width,
        quads: t.quads.len(),
        ribs: t.ribs.len(),
        facets: facet_stats(&t, s.style.width),
    };
    let out = match a.format.unwrap_or(Format::Text) {
        Format::Json => serde_json::to_string_pretty(&r)? + "\n",
        Format::Text => format!(
            "q {} deg, width {}, {} quads, {} ribs\n{}\n",
            r.q_deg,
            r.width,
            r.quads,
            r.ribs,
            stats_text("polar", &r.facets)
        ),
        Format::Svg => bail!("stats writes text or json"),
    };
    write_output(a.output.as_deref(), out.as_bytes())?;
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct CompareRow {
    contour: usize,
    segment: usize,
    quads: usize,
    polar: FacetStats,
    uniform: FacetStats,
    polar_pivot_sweep_deg: f64,
    uniform_pivot_sweep_deg: f64,
}

pub fn compare(a: &StrokeArgs) -> Result<Outcome> {
    let s = setup(a)?;
    let params = TessellationParams::new(s.q, s.style.width)?;
    let mut rows = Vec::new();
    for (ci, c) in s.contours.iter().enumerate() {
        for (si, seg) in c.segments.iter().enumerate() {
            let polar = tessellate_segment(seg, &params)?;
            let uniform = uniform_tessellate(seg, &params, polar.quads.len());
            rows.push(CompareRow {
                contour: ci,
                segment: si,
                quads: polar.quads.len(),
                polar: facet_stats(&polar, s.style.width),
                uniform: facet_stats(&uniform, s.style.width),
                polar_pivot_sweep_deg: max_pivot_sweep(&polar),
                uniform_pivot_sweep_deg: max_pivot_sweep(&uniform),
            });
        }
    }
    let out = match a.format.unwrap_or(Format::Text) {
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
        Format::Text => {
            let mut o = String::new();
            for r in &rows {
                let _ = writeln!(o, "contour {} segment {}: {} quads", r.contour, r.segment, r.quads);
                let _ = writeln!(o, "  {}", stats_text("polar", &r.polar));
                let _ = writeln!(o, "  {}", stats_text("uniform", &r.uniform));
                let _ = writeln!(
                    o,
                    "  pivot sweep: polar {:.3} deg, uniform {:.3} deg",
                    r.polar_pivot_sweep_deg, r.uniform_pivot_sweep_deg
                );
            }
            o
        }
        Format::Svg => bail!("compare writes text or json"),
    };
    write_output(a.output.as_deref(), out.as_bytes())?;
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct OracleReport {
    seed: u64,
    q_deg: f64,
    width: f64,
    #[serde(flatten)]
    coverage: CoverageReport,
    inside_rate: f64,
    outside_rate: f64,
    threshold: f64,
    pass: bool,
}

pub fn oracle_check(a: &StrokeArgs) -> Result<Outcome> {
    let s = setup(a)?;
    let t = stroke_contours(&s.contours, &s.style, s.q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let coverage = check_coverage(&s.contours, &s.style, &t, s.q, a.samples, &mut rng);
    let (inside_rate, outside_rate) = (coverage.inside_rate(), coverage.outside_rate());
    let pass = inside_rate >= COVERAGE_THRESHOLD && outside_rate >= COVERAGE_THRESHOLD;
    let r = OracleReport {
        seed: a.seed,
        q_deg: s.q_deg,
        width: s.style.width,
        coverage,
        inside_rate,
        outside_rate,
        threshold: COVERAGE_THRESHOLD,
        pass,
    };
    let out = match a.format.unwrap_or(Format::Text) {
        Format::Json => serde_json::to_string_pretty(&r)? + "\n",
        Format::Text => format!(
            "seed {}\ninside: {} tested, {} missed ({:.4})\noutside: {} tested, {} covered ({:.4})\n{}\n",
            r.seed,
            coverage.inside_tested,
            coverage.inside_missed,
            inside_rate,
            coverage.outside_tested,
            coverage.outside_hit,
            outside_rate,
            if pass { "PASS" } else { "FAIL" }
        ),
        Format::Svg => bail!("oracle-check writes text or json"),
    };
    write_output(a.output.as_deref(), out.as_bytes())?;
    Ok(if pass { Outcome::Pass } else { Outcome::Violation })
}
