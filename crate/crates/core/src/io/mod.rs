//! JSON spec documents, geometry documents and OBJ export.
//!
//! Floating-point values are written with 17 significant digits in
//! scientific notation, so output is byte-stable and round-trips exactly.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::error::{Error, Result};
use crate::kinematics::AxisTip;
use crate::net::{FlexionState, Grid, NetSpec};
use crate::validation::ValidationReport;

/// Parses and validates a spec document.
pub fn parse_spec(text: &str) -> Result<NetSpec> {
    let spec: NetSpec = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    spec.validate().map_err(|e| match e {
        Error::Invariant(m) => Error::Invariant(m),
        other => Error::Invariant(other.to_string()),
    })?;
    Ok(spec)
}

/// Reads a spec document from disk.
pub fn load_spec(path: impl AsRef<Path>) -> Result<NetSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_spec(&text)
}

/// Serializes a spec with the stable number format.
pub fn spec_to_json(spec: &NetSpec) -> Result<String> {
    to_stable_json(spec)
}

/// Writes `{:.16e}` for every float.
#[derive(Debug, Clone, Default)]
pub struct StableFormatter {
    pretty: serde_json::ser::PrettyFormatter<'static>,
}

impl StableFormatter {
    pub fn new() -> Self {
        StableFormatter { pretty: serde_json::ser::PrettyFormatter::with_indent(b"  ") }
    }
}

impl Formatter for StableFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> std::io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> std::io::Result<()> {
        write!(w, "{:.16e}", value as f64)
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.pretty.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.pretty.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        self.pretty.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.pretty.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.pretty.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.pretty.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> std::io::Result<()> {
        self.pretty.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.pretty.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> std::io::Result<()> {
        self.pretty.end_object_value(w)
    }
}

/// Serializes any value with [`StableFormatter`].
pub fn to_stable_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, StableFormatter::new());
    value.serialize(&mut ser).map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}

/// A state ready for export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryDocument {
    pub a: f64,
    pub rows: Grid,
    /// Tip heights; `null` marks an ideal tip.
    pub tips: Vec<Option<f64>>,
    /// The state lies on (or was nudged off) an end of the flexion range.
    #[serde(default)]
    pub boundary: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ValidationReport>,
}

impl GeometryDocument {
    pub fn new(state: &FlexionState, report: Option<ValidationReport>) -> Self {
        GeometryDocument {
            a: state.a,
            rows: state.vertices.clone(),
            tips: state.tips.iter().map(AxisTip::height).collect(),
            boundary: false,
            report,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Obj,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "obj" => Ok(Format::Obj),
            other => Err(Error::InvalidInput(format!("unknown format {other:?}"))),
        }
    }
}

/// OBJ text with one vertex record per grid vertex (row-major) and one quad
/// per grid cell, wound `(r, c) → (r, c+1) → (r+1, c+1) → (r+1, c)`.
pub fn to_obj(g: &Grid) -> Result<String> {
    if g.rows() < 2 || g.cols() < 2 {
        return Err(Error::InvalidInput(format!("a {}x{} grid has no quads to export", g.rows(), g.cols())));
    }
    let mut out = String::new();
    for p in g.points() {
        out.push_str(&format!("v {:.16e} {:.16e} {:.16e}\n", p.x, p.y, p.z));
    }
    let idx = |r: usize, c: usize| r * g.cols() + c + 1;
    for r in 0..g.rows() - 1 {
        for c in 0..g.cols() - 1 {
            out.push_str(&format!("f {} {} {} {}\n", idx(r, c), idx(r, c + 1), idx(r + 1, c + 1), idx(r + 1, c)));
        }
    }
    Ok(out)
}

/// Deterministic bytes for a geometry document.
pub fn export_geometry(doc: &GeometryDocument, format: Format) -> Result<Vec<u8>> {
    if doc.rows.is_empty() {
        return Err(Error::InvalidInput("empty net".into()));
    }
    match format {
        Format::Json => to_stable_json(doc).map(String::into_bytes),
        Format::Obj => to_obj(&doc.rows).map(String::into_bytes),
    }
}

pub fn parse_geometry(bytes: &[u8]) -> Result<GeometryDocument> {
    serde_json::from_slice(bytes).map_err(|e| Error::Schema(e.to_string()))
}
