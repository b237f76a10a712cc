//! Verification reports and their JSON encoding.
//!
//! Every check in the crate returns a [`VerificationReport`]: a named verdict plus
//! the numeric defects it was based on, so that tolerance policy stays auditable.
//! Reports serialize as
//! `{"schema":"rtp/1","check":..,"pass":..,"defects":[{"where":..,"value":..}],"tol":..,"ms":..,"info":{..}}`
//! with every float written to 17 significant digits.

use std::collections::BTreeMap;
use std::io;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

pub const SCHEMA: &str = "rtp/1";

fn schema_tag() -> String {
    SCHEMA.to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Defect {
    #[serde(rename = "where")]
    pub location: String,
    pub value: f64,
    /// Threshold for this entry when it differs from the report tolerance.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<f64>,
}

impl Defect {
    pub fn passes(&self, tol: f64) -> bool {
        self.value.is_finite() && self.value <= self.limit.unwrap_or(tol)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    #[serde(default = "schema_tag")]
    pub schema: String,
    pub check: String,
    pub pass: bool,
    pub defects: Vec<Defect>,
    pub tol: f64,
    pub ms: Option<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub info: BTreeMap<String, Value>,
}

impl VerificationReport {
    pub fn max_defect(&self) -> f64 {
        self.defects
            .iter()
            .filter(|d| d.limit.is_none())
            .map(|d| d.value)
            .fold(0.0, f64::max)
    }

    /// Entries that exceed their threshold.
    pub fn failures(&self) -> Vec<&Defect> {
        self.defects.iter().filter(|d| !d.passes(self.tol)).collect()
    }

    pub fn defect(&self, location: &str) -> Option<f64> {
        self.defects.iter().find(|d| d.location == location).map(|d| d.value)
    }

    pub fn info_f64(&self, key: &str) -> Option<f64> {
        self.info.get(key).and_then(Value::as_f64)
    }

    pub fn info_usize(&self, key: &str) -> Option<usize> {
        self.info.get(key).and_then(Value::as_u64).map(|v| v as usize)
    }

    /// Clears the wall-clock field so that reports compare byte for byte.
    pub fn without_timing(mut self) -> Self {
        self.ms = None;
        self
    }
}

/// Accumulates defects for one check and decides the verdict.
///
/// The verdict is the conjunction of every entry against its threshold and any
/// explicit requirements; nothing is decided from booleans alone.
pub struct ReportBuilder {
    check: String,
    tol: f64,
    start: Instant,
    defects: Vec<Defect>,
    info: BTreeMap<String, Value>,
}

impl ReportBuilder {
    pub fn new(check: impl Into<String>, tol: f64) -> Self {
        ReportBuilder {
            check: check.into(),
            tol,
            start: Instant::now(),
            defects: Vec::new(),
            info: BTreeMap::new(),
        }
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// A numeric defect checked against the report tolerance.
    pub fn defect(&mut self, location: impl Into<String>, value: f64) -> &mut Self {
        self.defects.push(Defect { location: location.into(), value, limit: None });
        self
    }

    /// A numeric defect with its own threshold.
    pub fn defect_within(&mut self, location: impl Into<String>, value: f64, limit: f64) -> &mut Self {
        self.defects.push(Defect { location: location.into(), value, limit: Some(limit) });
        self
    }

    /// A discrete condition, recorded as 0 (holds) or 1 (violated) against limit 0.
    pub fn require(&mut self, location: impl Into<String>, holds: bool) -> &mut Self {
        self.defect_within(location, if holds { 0.0 } else { 1.0 }, 0.0)
    }

    /// Integer mismatch `|got − expected|`, required to be zero.
    pub fn require_eq(&mut self, location: impl Into<String>, got: usize, expected: usize) -> &mut Self {
        self.defect_within(location, got.abs_diff(expected) as f64, 0.0)
    }

    pub fn info(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.info.insert(key.into(), value.into());
        self
    }

    /// Folds a sub-report in, prefixing its locations.
    pub fn absorb(&mut self, prefix: &str, sub: &VerificationReport) -> &mut Self {
        for d in &sub.defects {
            let limit = d.limit.or(if (sub.tol - self.tol).abs() > 0.0 { Some(sub.tol) } else { None });
            self.defects.push(Defect {
                location: format!("{prefix}/{}", d.location),
                value: d.value,
                limit,
            });
        }
        for (k, v) in &sub.info {
            self.info.insert(format!("{prefix}/{k}"), v.clone());
        }
        self
    }

    pub fn is_passing(&self) -> bool {
        self.defects.iter().all(|d| d.passes(self.tol))
    }

    pub fn finish(self) -> VerificationReport {
        let pass = self.is_passing();
        VerificationReport {
            schema: schema_tag(),
            check: self.check,
            pass,
            defects: self.defects,
            tol: self.tol,
            ms: Some(self.start.elapsed().as_secs_f64() * 1e3),
            info: self.info,
        }
    }
}

/// Pretty JSON with floats printed as `{:.16e}` (17 significant digits).
pub struct FixedDigits {
    inner: PrettyFormatter<'static>,
}

impl Default for FixedDigits {
    fn default() -> Self {
        FixedDigits { inner: PrettyFormatter::with_indent(b"  ") }
    }
}

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }
    fn end_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_key(w)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits::default());
    value.serialize(&mut ser).expect("in-memory serialization cannot fail");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}
