//! Tabular product serialization: comma-delimited text with a `#`-prefixed
//! header block (provenance, the fully-resolved command, parameter echo,
//! column names), or the same content as a JSON object.
//!
//! Everything below the `generated_unix` line is deterministic, so re-running
//! the echoed command reproduces a file byte-for-byte modulo that line.

use crate::config::{ParameterSource, ResolvedParameters};
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct Product {
    /// Canonical argument list (after the program name) that regenerates this
    /// product's content.
    pub command_echo: String,
    /// Resolved parameters for the echo block.
    pub resolved: ResolvedParameters,
    /// Extra `key: value` echo lines specific to the command.
    pub extra: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

fn timestamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl Product {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn header_pairs(&self) -> Vec<(String, String)> {
        let p = self.resolved.parameters;
        let mut pairs = vec![
            ("s".to_string(), format!("{}", p.s)),
            ("w".to_string(), format!("{}", p.w)),
            ("alpha".to_string(), format!("{}", p.alpha)),
            ("beta".to_string(), format!("{}", p.beta)),
            ("theta".to_string(), format!("{}", p.theta)),
        ];
        match &self.resolved.source {
            // Defaults materialize as explicit dimensionless values in the
            // echoed command, so the header says so: re-running the echo then
            // reproduces this block byte-for-byte.
            ParameterSource::Defaults | ParameterSource::Dimensionless => {
                pairs.push(("parameter_source".into(), "dimensionless".into()))
            }
            ParameterSource::Raw(raw) => {
                pairs.push(("parameter_source".into(), "raw".into()));
                pairs.push((
                    "raw".into(),
                    format!(
                        "{},{},{},{},{},{},{},{}",
                        raw.r, raw.k, raw.p, raw.q, raw.a, raw.h, raw.b, raw.c
                    ),
                ));
            }
        }
        pairs.extend(self.extra.iter().cloned());
        pairs
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str("# alleemap\n");
        out.push_str(&format!("# generated_unix: {}\n", timestamp()));
        out.push_str(&format!("# command: alleemap {}\n", self.command_echo));
        for (key, value) in self.header_pairs() {
            out.push_str(&format!("# {key}: {value}\n"));
        }
        out.push_str(&format!("# columns: {}\n", self.columns.join(",")));
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        fn json_string(s: &str) -> String {
            let mut out = String::with_capacity(s.len() + 2);
            out.push('"');
            for ch in s.chars() {
                match ch {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
                    c => out.push(c),
                }
            }
            out.push('"');
            out
        }
        fn json_cell(s: &str) -> String {
            // numeric cells stay numeric; everything else is a string
            match s.parse::<f64>() {
                Ok(v) if v.is_finite() => s.to_string(),
                _ => json_string(s),
            }
        }
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"generated_unix\": {},\n", timestamp()));
        out.push_str(&format!(
            "  \"command\": {},\n",
            json_string(&format!("alleemap {}", self.command_echo))
        ));
        out.push_str("  \"config\": {");
        let pairs = self.header_pairs();
        let body: Vec<String> = pairs
            .iter()
            .map(|(k, v)| format!("{}: {}", json_string(k), json_cell(v)))
            .collect();
        out.push_str(&body.join(", "));
        out.push_str("},\n");
        out.push_str(&format!(
            "  \"columns\": [{}],\n",
            self.columns
                .iter()
                .map(|c| json_string(c))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        out.push_str("  \"rows\": [\n");
        for (i, row) in self.rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|c| json_cell(c)).collect();
            out.push_str(&format!("    [{}]", cells.join(", ")));
            out.push_str(if i + 1 == self.rows.len() {
                "\n"
            } else {
                ",\n"
            });
        }
        out.push_str("  ]\n}\n");
        out
    }
}
