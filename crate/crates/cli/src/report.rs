//! Output in two flavors: human-readable lines, or `#R` records with one
//! `key=value` group per line. Records never carry timings, so identical
//! arguments give byte-identical records.

use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Records,
}

pub struct Report {
    format: Format,
    out: String,
}

/// Values with whitespace or quotes are double-quoted with `\` escapes.
fn quote(v: &str) -> String {
    if !v.is_empty() && !v.contains(|c: char| c.is_whitespace() || c == '"' || c == '\\') {
        return v.to_string();
    }
    let mut s = String::from("\"");
    for c in v.chars() {
        if c == '"' || c == '\\' {
            s.push('\\');
        }
        s.push(c);
    }
    s.push('"');
    s
}

impl Report {
    pub fn new(format: Format) -> Self {
        Report {
            format,
            out: String::new(),
        }
    }

    /// A human-readable line, shown in text mode only.
    pub fn text(&mut self, line: impl AsRef<str>) {
        if self.format == Format::Text {
            writeln!(self.out, "{}", line.as_ref()).unwrap();
        }
    }

    /// A machine-readable record, shown in records mode only.
    pub fn record(&mut self, kind: &str, fields: &[(&str, String)]) {
        if self.format == Format::Records {
            write!(self.out, "#R record={kind}").unwrap();
            for (k, v) in fields {
                write!(self.out, " {k}={}", quote(v)).unwrap();
            }
            self.out.push('\n');
        }
    }

    pub fn finish(self) -> String {
        self.out
    }
}
