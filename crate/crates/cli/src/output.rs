use std::collections::BTreeMap;

use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1";

/// Fixed float rendering: 17 significant digits, lowercase e-notation.
pub fn fmt_f64(x: f64) -> String {
    let s = format!("{x:.16e}");
    match s.split_once('e') {
        Some((m, e)) if !e.starts_with('-') => format!("{m}e+{e}"),
        _ => s,
    }
}

/// JSON number carrying exactly the [`fmt_f64`] digits; non-finite values
/// become `null`.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        serde_json::from_str(&fmt_f64(x)).expect("formatted float is valid JSON")
    } else {
        Value::Null
    }
}

pub fn obj<const N: usize>(fields: [(&str, Value); N]) -> Value {
    Value::Object(fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

/// What a command produced, before it is rendered as text or as the JSON
/// envelope.
#[derive(Debug, Default)]
pub struct Report {
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
    /// Human-readable (or CSV) rendering.
    pub text: String,
    pub warnings: Vec<String>,
    /// A verification step failed; the process exits with status 3.
    pub failed: bool,
}

impl Report {
    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn line(&mut self, line: impl AsRef<str>) {
        self.text.push_str(line.as_ref());
        self.text.push('\n');
    }

    /// The `--json` envelope; `serde_json` maps keep keys sorted.
    pub fn envelope(&self, command: &str, meta: Option<Value>) -> String {
        let mut env = Map::new();
        env.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        env.insert("command".into(), Value::from(command));
        env.insert(
            "parameters".into(),
            Value::Object(self.parameters.clone().into_iter().collect()),
        );
        env.insert("results".into(), self.results.clone());
        env.insert("warnings".into(), Value::from(self.warnings.clone()));
        if let Some(m) = meta {
            env.insert("meta".into(), m);
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(env)).expect("JSON values serialize");
        s.push('\n');
        s
    }
}
