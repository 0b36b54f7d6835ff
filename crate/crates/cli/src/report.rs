//! Line-oriented reports with a JSON mirror.

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Line {
    Field(String, String),
    Text(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<Line>,
}

impl Report {
    pub fn field(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.lines.push(Line::Field(key.into(), value.into()));
    }

    pub fn text(&mut self, text: impl Into<String>) {
        self.lines.push(Line::Text(text.into()));
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            match line {
                Line::Field(k, v) => out.push_str(&format!("{k}: {v}\n")),
                Line::Text(t) => {
                    out.push_str(t);
                    out.push('\n');
                }
            }
        }
        out
    }

    /// One JSON object per line: `{"key", "value"}` or `{"text"}`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.lines
                .iter()
                .map(|line| match line {
                    Line::Field(k, v) => json!({ "key": k, "value": v }),
                    Line::Text(t) => json!({ "text": t }),
                })
                .collect(),
        )
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            format!("{}\n", serde_json::to_string_pretty(&self.to_json()).expect("strings serialize"))
        } else {
            self.to_text()
        }
    }
}
