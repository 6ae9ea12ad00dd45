//! Splits generated documents into labeled sections, counts words, checks
//! per-section requirements, and tags the usual long-form failure patterns.

mod constraints;
mod failure;
mod parse;
mod validate;
mod words;

use serde::{Deserialize, Serialize};

pub use constraints::{
    contains_word, verify_constraint, Constraint, ConstraintOutcome, ConstraintSpec, DEFAULT_THEME_MIN_MATCHES,
};
pub use failure::{classify_failure, has_skip, tail_repetition, FailureTag, LOOP_THRESHOLD, TAIL_FRACTION};
pub use parse::{parse_sections, HeaderFamily, ParsedDocument, SectionReport, END_MARKER};
pub use validate::{verify_structured, ValidatorKind, COMPANY_FIELDS, USER_FIELDS};
pub use words::{word_count, words, Language};

/// Everything needed to parse and validate one task's output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TaskProfile {
    pub family: HeaderFamily,
    pub validator: ValidatorKind,
    pub language: Language,
}

impl TaskProfile {
    pub fn parse(&self, text: &str) -> ParsedDocument {
        parse_sections(text, self.family, self.language)
    }
}
