//! Report serialization. The document is emitted by a dedicated writer so
//! that every floating-point value carries 17 significant digits (exact
//! f64 round trips) and two runs of the same configuration produce
//! byte-identical bytes apart from the `wall_ms` fields.

use std::fmt::Write as _;

use crate::suite::SuiteReport;

pub const SCHEMA_VERSION: u32 = 1;

/// One JSON value; floats are rendered as `{:.16e}` (17 significant digits).
pub enum Json {
    Null,
    Bool(bool),
    UInt(u64),
    Float(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(Vec<(&'static str, Json)>),
}

fn escape_into(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

impl Json {
    fn write_into(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::UInt(v) => {
                let _ = write!(out, "{v}");
            }
            Json::Float(x) => {
                debug_assert!(x.is_finite(), "non-finite float in report");
                let _ = write!(out, "{x:.16e}");
            }
            Json::Str(s) => escape_into(out, s),
            Json::Arr(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    item.write_into(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            Json::Obj(fields) => {
                if fields.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (i, (key, value)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    out.push_str(&"  ".repeat(indent + 1));
                    escape_into(out, key);
                    out.push_str(": ");
                    value.write_into(out, indent + 1);
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write_into(&mut out, 0);
        out.push('\n');
        out
    }
}

fn opt_str(v: &Option<String>) -> Json {
    match v {
        Some(s) => Json::Str(s.clone()),
        None => Json::Null,
    }
}

/// The report document.
pub fn report_document(report: &SuiteReport) -> Json {
    let cfg = &report.config;
    let config = Json::Obj(vec![
        (
            "checks",
            match &cfg.checks {
                None => Json::Null,
                Some(v) => Json::Arr(v.iter().map(|s| Json::Str(s.clone())).collect()),
            },
        ),
        ("q", Json::UInt(cfg.q as u64)),
        ("k", Json::UInt(cfg.k as u64)),
        ("n", Json::UInt(cfg.n as u64)),
        ("trials", Json::UInt(cfg.trials as u64)),
        ("seed", Json::UInt(cfg.seed)),
        ("tol", Json::Float(cfg.tol)),
        (
            "spectrum",
            Json::Arr(vec![Json::Float(cfg.spectrum.m), Json::Float(cfg.spectrum.max)]),
        ),
        ("jobs", Json::UInt(cfg.jobs as u64)),
    ]);

    let checks = report
        .entries
        .iter()
        .map(|entry| {
            let mut fields: Vec<(&'static str, Json)> = vec![
                ("name", Json::Str(entry.name.clone())),
                (
                    "holds",
                    entry
                        .result
                        .as_ref()
                        .map(|r| Json::Bool(r.holds))
                        .unwrap_or(Json::Bool(false)),
                ),
            ];
            match &entry.result {
                Some(r) => {
                    fields.push(("worst_margin", Json::Float(r.worst_margin)));
                    fields.push(("worst_margin_raw", Json::Float(r.worst_margin_raw)));
                    fields.push(("scale", Json::Float(r.scale)));
                    fields.push(("trials", Json::UInt(r.trials as u64)));
                    fields.push(("seed", Json::UInt(r.seed)));
                }
                None => {
                    fields.push(("worst_margin", Json::Null));
                    fields.push(("worst_margin_raw", Json::Null));
                    fields.push(("scale", Json::Null));
                    fields.push(("trials", Json::UInt(0)));
                    fields.push(("seed", Json::UInt(cfg.seed)));
                }
            }
            fields.push(("wall_ms", Json::UInt(entry.wall_ms)));
            fields.push(("witness_ref", opt_str(&entry.witness_ref)));
            fields.push(("expected_violation", Json::Bool(entry.expected_violation)));
            fields.push(("ok", Json::Bool(entry.ok)));
            fields.push(("error", opt_str(&entry.error)));
            Json::Obj(fields)
        })
        .collect();

    Json::Obj(vec![
        ("schema_version", Json::UInt(SCHEMA_VERSION as u64)),
        ("version", Json::Str(env!("CARGO_PKG_VERSION").to_string())),
        ("config", config),
        ("checks", Json::Arr(checks)),
        ("aggregate", Json::Bool(report.aggregate)),
    ])
}

/// Renders and writes the report; `None` writes to stdout.
pub fn emit_report(report: &SuiteReport, path: Option<&std::path::Path>) -> std::io::Result<()> {
    let text = report_document(report).render();
    match path {
        Some(p) => std::fs::write(p, text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(text.as_bytes())
        }
    }
}
