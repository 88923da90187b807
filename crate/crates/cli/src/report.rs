use serde::Serialize;
use serde_json::Value;

use crate::fail::Result;

/// Command output in both renderings, plus a note when nothing was found.
#[derive(Debug)]
pub struct Report {
    pub text: String,
    pub json: Value,
    /// Set when the command produced no result; `--strict` turns this into exit 3.
    pub empty: Option<String>,
}

impl Report {
    pub fn new(text: String, json: impl Serialize) -> Result<Report> {
        Ok(Report {
            text,
            json: serde_json::to_value(json)?,
            empty: None,
        })
    }

    pub fn empty_if(mut self, cond: bool, why: &str) -> Report {
        if cond {
            self.empty = Some(why.to_string());
        }
        self
    }
}

/// Tab-joined cells with a trailing newline.
#[macro_export]
macro_rules! row {
    ($out:expr, $($cell:expr),+ $(,)?) => {{
        let cells: Vec<String> = vec![$($cell.to_string()),+];
        $out.push_str(&cells.join("\t"));
        $out.push('\n');
    }};
}
