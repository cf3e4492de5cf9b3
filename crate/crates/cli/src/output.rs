//! Output rendering: 17-significant-digit numeric formatting (round-trip
//! exact for binary64), JSON through a formatter that applies it to every
//! float, and RFC-4180-style CSV with LF line endings.

use std::io;

use serde::Serialize;

/// A finite f64 with 17 significant digits; non-finite values keep their
/// debug spelling for text/CSV contexts.
pub fn fmt17(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.16e}")
    } else {
        value.to_string()
    }
}

/// serde_json formatter printing every finite float with 17 significant
/// digits. serde_json itself writes `null` for non-finite floats before
/// this hook is reached.
struct SigDigits17;

impl serde_json::ser::Formatter for SigDigits17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// One compact JSON document, deterministic for identical inputs.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigits17);
    value
        .serialize(&mut ser)
        .expect("output documents always serialize");
    String::from_utf8(buf).expect("serializer emits utf-8")
}

/// Quotes a CSV field only when RFC 4180 requires it.
fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

/// Header plus rows, comma-delimited, LF endings.
pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let encoded: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        out.push_str(&encoded.join(","));
        out.push('\n');
    }
    out
}
