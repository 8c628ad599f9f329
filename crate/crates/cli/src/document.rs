//! Problem documents: a versioned envelope around a kind-specific payload.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

pub const SCHEMA: &str = "gcot/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    MasterCheck,
    Q3Check,
    Bracket,
    Twist,
    DiracCheck,
    NambuCheck,
    QuadrupleCheck,
    RuthCheck,
    LkCheck,
    CorrespondenceCheck,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().expect("string"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Human,
    Json,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub format: Option<Format>,
    /// Worker threads; only meaningful for corpus runs.
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub schema: String,
    pub kind: Kind,
    pub name: Option<String>,
    #[serde(default)]
    pub options: Options,
    pub payload: serde_json::Value,
}

impl Document {
    /// Parses JSON, or TOML when `toml` is set, and validates the envelope.
    pub fn parse(text: &str, toml: bool) -> Result<Document> {
        let value: serde_json::Value = if toml {
            let t: toml::Value =
                toml::from_str(text).map_err(|e| CliError::Syntax(e.to_string()))?;
            serde_json::to_value(t).map_err(|e| CliError::Syntax(e.to_string()))?
        } else {
            serde_json::from_str(text).map_err(|e| CliError::Syntax(e.to_string()))?
        };
        let version = value.get("schema").and_then(|s| s.as_str());
        match version {
            Some(SCHEMA) => {}
            Some(v) => {
                return Err(CliError::Schema(format!(
                    "unsupported schema `{v}`, expected `{SCHEMA}`"
                )))
            }
            None => return Err(CliError::Schema("missing string field `schema`".into())),
        }
        serde_json::from_value(value).map_err(|e| CliError::Schema(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Document> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Document::parse(&text, is_toml(path))
    }
}

pub fn is_toml(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "toml")
}

pub fn is_document(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "toml" || e == "json")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_and_toml_agree() {
        let json = r#"{"schema": "gcot/1", "kind": "master-check", "options": {"seed": 3},
            "payload": {"cases": [{"algebroid": {"catalog": "so3"}, "k": 4, "h": "1/2*alpha1"}]}}"#;
        let toml = r#"
            schema = "gcot/1"
            kind = "master-check"
            options = { seed = 3 }
            [[payload.cases]]
            algebroid = { catalog = "so3" }
            k = 4
            h = "1/2*alpha1"
        "#;
        let a = Document::parse(json, false).unwrap();
        let b = Document::parse(toml, true).unwrap();
        assert_eq!(a.payload, b.payload);
        assert_eq!(a.kind, Kind::MasterCheck);
        assert_eq!(b.options.seed, Some(3));
    }

    #[test]
    fn envelope_errors() {
        let cases = [
            ("{", "malformed"),
            (r#"{"kind": "twist", "payload": {}}"#, "schema"),
            (
                r#"{"schema": "gcot/9", "kind": "twist", "payload": {}}"#,
                "unsupported",
            ),
            (
                r#"{"schema": "gcot/1", "kind": "nope", "payload": {}}"#,
                "unknown variant",
            ),
            (
                r#"{"schema": "gcot/1", "kind": "twist", "payload": {}, "x": 1}"#,
                "unknown field",
            ),
            (r#"{"schema": "gcot/1", "kind": "twist"}"#, "payload"),
        ];
        for (doc, needle) in cases {
            let e = Document::parse(doc, false).unwrap_err().to_string();
            assert!(e.contains(needle), "{doc}: {e}");
        }
    }

    #[test]
    fn kind_names() {
        assert_eq!(Kind::Q3Check.to_string(), "q3-check");
        assert_eq!(Kind::LkCheck.to_string(), "lk-check");
    }
}
