use std::sync::LazyLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::parse::SectionReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidatorKind {
    None,
    CodeFunction,
    UserRecord,
    CompanyRecord,
    LatexEquation,
}

pub const USER_FIELDS: [&str; 6] = ["name", "age", "gender", "address", "email", "phone"];
pub const COMPANY_FIELDS: [&str; 5] =
    ["company_name", "industry", "year_established", "company_address", "contact_number"];

static DEF: LazyLock<Regex> =
    LazyLock::new(|| Regex::new(r"(?m)^[ \t]*def[ \t]+[A-Za-z_]\w*[ \t]*\([^)]*\)[ \t]*(?:->[^:\n]+)?:").unwrap());

/// Structural stand-in for executing generated content.
pub fn verify_structured(section: &SectionReport, kind: ValidatorKind) -> bool {
    let text = format!("{}{}", section.header_text, section.body_text);
    match kind {
        ValidatorKind::None => true,
        ValidatorKind::CodeFunction => code_function(&text),
        ValidatorKind::UserRecord => record_has_fields(&text, &USER_FIELDS),
        ValidatorKind::CompanyRecord => record_has_fields(&text, &COMPANY_FIELDS),
        ValidatorKind::LatexEquation => latex_equation(&text),
    }
}

fn code_function(text: &str) -> bool {
    let Some(def) = DEF.find(text) else {
        return false;
    };
    let rest = &text[def.end()..];
    ["\"\"\"", "'''"].iter().any(|q| {
        rest.find(q).and_then(|open| {
            let inner = &rest[open + 3..];
            inner.find(q).map(|close| !inner[..close].trim().is_empty())
        }) == Some(true)
    })
}

/// First balanced `{...}` in `text`, skipping braces inside JSON strings.
fn first_object(text: &str) -> Option<&str> {
    let start = text.find('{')?;
    let mut depth = 0usize;
    let mut in_string = false;
    let mut escaped = false;
    for (i, c) in text[start..].char_indices() {
        if in_string {
            match c {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => in_string = false,
                _ => {}
            }
            continue;
        }
        match c {
            '"' => in_string = true,
            '{' => depth += 1,
            '}' => {
                depth -= 1;
                if depth == 0 {
                    return Some(&text[start..start + i + 1]);
                }
            }
            _ => {}
        }
    }
    None
}

fn record_has_fields(text: &str, fields: &[&str]) -> bool {
    let Some(obj) = first_object(text) else {
        return false;
    };
    match serde_json::from_str::<serde_json::Value>(obj) {
        Ok(serde_json::Value::Object(map)) => fields.iter().all(|f| map.get(*f).is_some_and(|v| !v.is_null())),
        _ => false,
    }
}

fn latex_equation(text: &str) -> bool {
    const BEGIN: &str = "\\begin{equation}";
    const END: &str = "\\end{equation}";
    let Some(first_begin) = text.find(BEGIN) else {
        return false;
    };
    let commented = text[..first_begin].lines().any(|l| l.trim_start().starts_with('%') && l.trim().len() > 1);
    if !commented {
        return false;
    }
    let mut rest = &text[first_begin..];
    let mut found = false;
    while let Some(b) = rest.find(BEGIN) {
        let after = &rest[b + BEGIN.len()..];
        let Some(e) = after.find(END) else {
            return false;
        };
        let content = &after[..e];
        if content.trim().is_empty() || content.contains(BEGIN) {
            return false;
        }
        found = true;
        rest = &after[e + END.len()..];
    }
    found && !rest.contains(END)
}
