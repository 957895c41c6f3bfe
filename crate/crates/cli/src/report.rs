use anyhow::{bail, Result};
use serde_json::Value;

use crate::Format;

/// Output of one command in every format it supports.
pub struct Report {
    pub ok: bool,
    pub text: String,
    pub json: Value,
    pub csv: Option<String>,
    pub dot: Option<String>,
}

impl Report {
    pub fn new(ok: bool, text: String, json: Value) -> Self {
        Report {
            ok,
            text,
            json,
            csv: None,
            dot: None,
        }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Table => self.text.clone(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                s
            }
            Format::Csv => match &self.csv {
                Some(c) => c.clone(),
                None => bail!("this command has no CSV output"),
            },
            Format::Dot => match &self.dot {
                Some(d) => d.clone(),
                None => bail!("this command has no DOT output"),
            },
        })
    }
}

pub fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
