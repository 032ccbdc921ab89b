//! Serialization of configurations and reports.
//!
//! Documents are JSON with a fixed key order and every float printed with 17
//! significant digits (`{:.16e}`), which round-trips `f64` exactly; reports
//! from seeded runs are therefore byte-stable. Writing is done by direct
//! string building so the byte layout is under our control; reading goes
//! through `serde_json`, which also serves as the round-trip validity check.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::forms::FormsEvaluation;
use crate::geometry::{PointConfig, SphereConfig};
use crate::optimize::{SearchConfig, SearchReport};
use crate::scalar::Real;
use crate::systems::{SignMatrix, SpectrumReport};

/// 17-significant-digit float formatting (exact `f64` round-trip).
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Format any scalar through `f64`.
pub fn fmt_scalar<S: Real>(x: S) -> String {
    fmt_f64(x.to_f64_lossy())
}

fn float_array<S: Real>(xs: &[S]) -> String {
    let mut out = String::from("[");
    for (i, &x) in xs.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&fmt_scalar(x));
    }
    out.push(']');
    out
}

fn point_rows<S: Real>(points: &[Vec<S>]) -> String {
    let mut out = String::from("[");
    for (i, row) in points.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&float_array(row));
    }
    out.push(']');
    out
}

/// Serialize a point configuration (`p`, `m`, row-major `points`).
pub fn config_document<S: Real>(config: &PointConfig<S>) -> String {
    format!(
        "{{\"p\":{},\"m\":{},\"points\":{}}}",
        config.p(),
        config.m(),
        point_rows(config.points())
    )
}

/// Serialize a sphere configuration; `m` is the sphere dimension, points
/// have `m + 1` coordinates.
pub fn sphere_document<S: Real>(config: &SphereConfig<S>) -> String {
    format!(
        "{{\"p\":{},\"m\":{},\"points\":{}}}",
        config.p(),
        config.m(),
        point_rows(config.points())
    )
}

/// A parsed configuration document: Euclidean when the point width equals
/// `m`, spherical when it equals `m + 1`.
#[derive(Debug, Clone)]
pub enum ParsedConfig<S> {
    Euclidean(PointConfig<S>),
    Sphere(SphereConfig<S>),
}

/// Parse a configuration document written by [`config_document`] or
/// [`sphere_document`].
pub fn parse_config<S: Real>(text: &str) -> Result<ParsedConfig<S>> {
    let value = parse_document(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| malformed("top level must be an object"))?;
    let p = get_usize(obj, "p")?;
    let m = get_usize(obj, "m")?;
    let rows = obj
        .get("points")
        .and_then(|v| v.as_array())
        .ok_or_else(|| malformed("missing points array"))?;
    if rows.len() != p {
        return Err(malformed("points count does not match p"));
    }
    let mut points: Vec<Vec<S>> = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| malformed("point must be an array"))?;
        let mut coords = Vec::with_capacity(row.len());
        for c in row {
            let x = c
                .as_f64()
                .ok_or_else(|| malformed("coordinate must be a number"))?;
            coords.push(S::of(x));
        }
        points.push(coords);
    }
    let width = points.first().map_or(0, |r| r.len());
    if width == m {
        Ok(ParsedConfig::Euclidean(PointConfig::new(points)?))
    } else if width == m + 1 {
        Ok(ParsedConfig::Sphere(SphereConfig::new(points)?))
    } else {
        Err(malformed("point width matches neither m nor m+1"))
    }
}

/// Forms evaluation report.
pub fn forms_document<S: Real>(ev: &FormsEvaluation<S>) -> String {
    format!(
        "{{\"i1\":{},\"i2\":{},\"ratio\":{},\"sup_index\":{},\"sup_value\":{}}}",
        fmt_scalar(ev.i1),
        fmt_scalar(ev.i2),
        fmt_scalar(ev.ratio),
        ev.sup_index,
        fmt_scalar(ev.sup_value)
    )
}

/// Spectrum report.
pub fn spectrum_document<S: Real>(report: &SpectrumReport<S>) -> String {
    format!(
        "{{\"singular_values\":{},\"sigma_min\":{},\"residual_norm\":{}}}",
        float_array(&report.singular_values),
        fmt_scalar(report.sigma_min),
        fmt_scalar(report.residual_norm)
    )
}

/// Sign matrix report; `det` is the exact integer as a string.
pub fn sign_matrix_document(s: &SignMatrix) -> String {
    format!(
        "{{\"p\":{},\"det\":\"{}\",\"rank\":{}}}",
        s.p, s.det, s.rank
    )
}

/// Critical residual report.
pub fn residual_document<S: Real>(r1: &[S], r2: &[Vec<S>], total_norm: S) -> String {
    format!(
        "{{\"r1\":{},\"r2\":{},\"total_norm\":{}}}",
        float_array(r1),
        point_rows(r2),
        fmt_scalar(total_norm)
    )
}

/// Single-value report (augmented quotient evaluation).
pub fn value_document<S: Real>(value: S) -> String {
    format!("{{\"value\":{}}}", fmt_scalar(value))
}

/// Minimization outcome without configuration provenance.
pub fn minimize_document<S: Real>(seed: u64, best_value: S, best_weights: &[S]) -> String {
    format!(
        "{{\"seed\":{seed},\"best_value\":{},\"best_weights\":{}}}",
        fmt_scalar(best_value),
        float_array(best_weights)
    )
}

/// Full search report.
pub fn search_report_document<S: Real>(report: &SearchReport<S>) -> String {
    let config = match &report.best_config {
        SearchConfig::Euclidean(c) => config_document(c),
        SearchConfig::Sphere(c) => sphere_document(c),
    };
    let weights = match &report.best_weights {
        Some(w) => float_array(w),
        None => "null".to_string(),
    };
    let mut history = String::from("[");
    for (i, &(iter, value)) in report.history.iter().enumerate() {
        if i > 0 {
            history.push(',');
        }
        let _ = write!(history, "[{},{}]", iter, fmt_scalar(value));
    }
    history.push(']');
    format!(
        "{{\"seed\":{},\"objective_kind\":\"{}\",\"best_value\":{},\"best_config\":{},\"best_weights\":{},\"iterations_used\":{},\"history\":{}}}",
        report.seed,
        report.objective_kind.as_str(),
        fmt_scalar(report.best_value),
        config,
        weights,
        report.iterations_used,
        history,
    )
}

/// Improvement history as CSV (`iteration,best_value`).
pub fn history_csv<S: Real>(history: &[(usize, S)]) -> String {
    let mut out = String::from("iteration,best_value\n");
    for &(iter, value) in history {
        let _ = writeln!(out, "{},{}", iter, fmt_scalar(value));
    }
    out
}

/// CSV table with a fixed header; both columns printed with 17 significant
/// digits.
pub fn csv_table<S: Real>(header: &str, rows: &[(S, S)]) -> String {
    let mut out = String::with_capacity(rows.len() * 48 + header.len() + 1);
    out.push_str(header);
    out.push('\n');
    for &(a, b) in rows {
        out.push_str(&fmt_scalar(a));
        out.push(',');
        out.push_str(&fmt_scalar(b));
        out.push('\n');
    }
    out
}

/// Parse any toolkit document; errors map to `MALFORMED_DOCUMENT`.
pub fn parse_document(text: &str) -> Result<serde_json::Value> {
    serde_json::from_str(text).map_err(|e| malformed(&e.to_string()))
}

fn malformed(why: &str) -> Error {
    Error::MalformedDocument(why.to_string())
}

fn get_usize(obj: &serde_json::Map<String, serde_json::Value>, key: &str) -> Result<usize> {
    obj.get(key)
        .and_then(|v| v.as_u64())
        .map(|v| v as usize)
        .ok_or_else(|| malformed(&format!("missing integer field '{key}'")))
}
