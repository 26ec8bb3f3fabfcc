//! Text serialization of form fields.
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "shape": [N0, N1, N2, N3],
//!   "coeffs": [ [[re, im], ... 16 pairs by blade mask], ... one entry per site ]
//! }
//! ```
//!
//! Sites are listed in lexicographic order (`k₀` outermost). Numbers are
//! written in shortest round-trip decimal form, so reading a written file
//! reproduces every coefficient bit for bit.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::clifford::BLADES;
use crate::error::{Error, Result};
use crate::forms::FormField;
use crate::lattice::LatticeShape;

pub const FORMAT_VERSION: u64 = 1;

pub fn to_value(form: &FormField) -> Value {
    let coeffs: Vec<Value> = form
        .coeffs()
        .chunks_exact(BLADES)
        .map(|site| Value::Array(site.iter().map(|c| json!([c.re, c.im])).collect()))
        .collect();
    json!({
        "format_version": FORMAT_VERSION,
        "shape": form.shape().extents(),
        "coeffs": coeffs,
    })
}

/// One site per line, deterministic for identical input.
pub fn to_string(form: &FormField) -> String {
    let value = to_value(form);
    let mut out = String::new();
    out.push_str(&format!("{{\n  \"format_version\": {},\n", value["format_version"]));
    out.push_str(&format!("  \"shape\": {},\n", value["shape"]));
    out.push_str("  \"coeffs\": [\n");
    let sites = value["coeffs"].as_array().expect("array");
    for (i, site) in sites.iter().enumerate() {
        let sep = if i + 1 == sites.len() { "" } else { "," };
        out.push_str(&format!("    {site}{sep}\n"));
    }
    out.push_str("  ]\n}\n");
    out
}

fn number(v: &Value, location: impl Fn() -> String) -> Result<f64> {
    let x = v
        .as_f64()
        .ok_or_else(|| Error::format(location(), format!("expected a number, found {v}")))?;
    if !x.is_finite() {
        return Err(Error::format(location(), "number is not finite"));
    }
    Ok(x)
}

pub fn from_value(value: &Value) -> Result<FormField> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::format("$", "expected a JSON object"))?;

    let version = obj
        .get("format_version")
        .ok_or_else(|| Error::format("format_version", "missing"))?;
    if version.as_u64() != Some(FORMAT_VERSION) {
        return Err(Error::format(
            "format_version",
            format!("unsupported version {version}, expected {FORMAT_VERSION}"),
        ));
    }

    let shape = obj
        .get("shape")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::format("shape", "missing or not an array"))?;
    if shape.len() != 4 {
        return Err(Error::format("shape", format!("expected 4 extents, found {}", shape.len())));
    }
    let mut extents = [0usize; 4];
    for (mu, v) in shape.iter().enumerate() {
        extents[mu] = v
            .as_u64()
            .and_then(|n| usize::try_from(n).ok())
            .ok_or_else(|| Error::format(format!("shape[{mu}]"), format!("expected a non-negative integer, found {v}")))?;
    }
    let shape = LatticeShape::new(extents).map_err(|e| Error::format("shape", e.to_string()))?;

    let coeffs = obj
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::format("coeffs", "missing or not an array"))?;
    if coeffs.len() != shape.site_count() {
        return Err(Error::format(
            "coeffs",
            format!("expected {} sites, found {}", shape.site_count(), coeffs.len()),
        ));
    }
    let mut out = Vec::with_capacity(BLADES * coeffs.len());
    for (i, site) in coeffs.iter().enumerate() {
        let site = site
            .as_array()
            .ok_or_else(|| Error::format(format!("coeffs[{i}]"), "expected an array of 16 pairs"))?;
        if site.len() != BLADES {
            return Err(Error::format(
                format!("coeffs[{i}]"),
                format!("expected 16 pairs, found {}", site.len()),
            ));
        }
        for (b, pair) in site.iter().enumerate() {
            let loc = || format!("coeffs[{i}][{b}]");
            let pair = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::format(loc(), "expected a [re, im] pair"))?;
            let re = number(&pair[0], || format!("coeffs[{i}][{b}][0]"))?;
            let im = number(&pair[1], || format!("coeffs[{i}][{b}][1]"))?;
            out.push(Complex64::new(re, im));
        }
    }
    FormField::from_coeffs(shape, out)
}

pub fn from_str(text: &str) -> Result<FormField> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        Error::format(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    from_value(&value)
}

pub fn save(form: &FormField, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, to_string(form))?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<FormField> {
    from_str(&fs::read_to_string(path)?)
}
