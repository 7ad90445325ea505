use serde::Serialize;

use crate::Format;

/// A finished report: its JSON form, its text form, and whether a
/// mathematical check failed.
#[derive(Debug)]
pub struct Report {
    json: serde_json::Value,
    text: String,
    pub failed: bool,
}

impl Report {
    pub fn new<T: Serialize>(data: &T, text: String, failed: bool) -> Self {
        Report {
            json: serde_json::to_value(data).expect("reports serialize"),
            text,
            failed,
        }
    }

    pub fn schema(name: &str) -> Self {
        let raw = schema_source(name).expect("schema names are validated by clap");
        let json: serde_json::Value = serde_json::from_str(raw).expect("shipped schemas parse");
        Report {
            text: raw.to_string(),
            json,
            failed: false,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("value serializes"),
        }
    }
}

pub fn schema_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "roots" => include_str!("../schemas/roots.json"),
        "grade" => include_str!("../schemas/grade.json"),
        "verify" => include_str!("../schemas/verify.json"),
        "hypersurface" => include_str!("../schemas/hypersurface.json"),
        "atypical" => include_str!("../schemas/atypical.json"),
        "nl" => include_str!("../schemas/nl.json"),
        "correction" => include_str!("../schemas/correction.json"),
        _ => return None,
    })
}

/// Tuple notation `(a,b,c)`.
pub fn tuple<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}
