//! Table emission: RFC-4180 CSV or JSON-lines over a shared column schema.

use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

/// JSON typing of a column; CSV treats everything as text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Int,
    Float,
    Bool,
    Text,
}

pub fn report_field_kind(name: &str) -> FieldKind {
    match name {
        "n" => FieldKind::Int,
        "psi" | "beta" | "p" | "status" | "reason" => FieldKind::Text,
        name if name.starts_with("hyp_") && name != "hyp_ratio" => FieldKind::Bool,
        "enclosure_ok" | "tail_check_ok" | "certified" | "alternation_ok" | "sandwich_ok" => {
            FieldKind::Bool
        }
        _ => FieldKind::Float,
    }
}

/// One table: header + rows. Every row must match the header length.
pub fn write_table(
    out: &mut dyn Write,
    format: Format,
    header: &[&str],
    kinds: &dyn Fn(&str) -> FieldKind,
    rows: &[Vec<String>],
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(&mut *out);
            writer.write_record(header)?;
            for row in rows {
                debug_assert_eq!(row.len(), header.len());
                writer.write_record(row)?;
            }
            writer.flush()?;
            Ok(())
        }
        Format::Jsonl => {
            for row in rows {
                let mut object = serde_json::Map::new();
                for (name, value) in header.iter().zip(row) {
                    object.insert((*name).to_string(), typed_value(kinds(name), value));
                }
                serde_json::to_writer(&mut *out, &serde_json::Value::Object(object))?;
                out.write_all(b"\n")?;
            }
            Ok(())
        }
    }
}

fn typed_value(kind: FieldKind, raw: &str) -> serde_json::Value {
    if raw.is_empty() {
        return serde_json::Value::Null;
    }
    match kind {
        FieldKind::Int => raw
            .parse::<i64>()
            .map(serde_json::Value::from)
            .unwrap_or_else(|_| serde_json::Value::String(raw.to_string())),
        FieldKind::Float => raw
            .parse::<f64>()
            .ok()
            .and_then(serde_json::Number::from_f64)
            .map(serde_json::Value::Number)
            .unwrap_or_else(|| serde_json::Value::String(raw.to_string())),
        FieldKind::Bool => match raw {
            "true" => serde_json::Value::Bool(true),
            "false" => serde_json::Value::Bool(false),
            _ => serde_json::Value::String(raw.to_string()),
        },
        FieldKind::Text => serde_json::Value::String(raw.to_string()),
    }
}
