use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::engine::GenerationOutput;
use super::matrix::PromptSpec;
use crate::metrics::{ngram_repetition, ttr};
use crate::sections::{
    classify_failure, verify_constraint, verify_structured, word_count, ConstraintOutcome, FailureTag, TaskProfile,
    ValidatorKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    Failed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionStat {
    pub label: u64,
    pub words: usize,
}

/// Which summary row a run belongs to.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupKey {
    pub spec_id: String,
    pub engine: String,
    pub guided: bool,
}

/// One persisted generation sample with its analysis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub spec_id: String,
    pub spec: PromptSpec,
    pub engine: String,
    pub guided: bool,
    /// 1-based within the batch.
    pub run_index: usize,
    pub seed: u64,
    pub status: RunStatus,
    #[serde(default)]
    pub error: Option<String>,
    /// Profile the text was parsed with.
    pub profile: TaskProfile,
    pub text: String,
    pub token_count: Option<usize>,
    pub word_count: usize,
    pub sections: Vec<SectionStat>,
    pub end_marker_present: bool,
    pub failure_tags: BTreeSet<FailureTag>,
    pub stop_reason: Option<String>,
    /// Required sections that pass the structural validator.
    pub structured_passed: usize,
    pub constraint_outcomes: Vec<ConstraintOutcome>,
    pub rep3: Option<f64>,
    pub ttr: Option<f64>,
    pub duration_ms: u64,
}

impl RunRecord {
    #[allow(clippy::too_many_arguments)]
    pub fn analyze(
        spec: &PromptSpec,
        profile: TaskProfile,
        engine: &str,
        guided: bool,
        run_index: usize,
        seed: u64,
        output: GenerationOutput,
        duration_ms: u64,
    ) -> Self {
        let doc = profile.parse(&output.text);
        let required = spec.num_sections as u64;
        let structured_passed = if profile.validator == ValidatorKind::None {
            0
        } else {
            let mut passed = BTreeSet::new();
            for s in &doc.sections {
                if (1..=required).contains(&s.index_as_labeled) && verify_structured(s, profile.validator) {
                    passed.insert(s.index_as_labeled);
                }
            }
            passed.len()
        };
        let words = doc.content_words();
        RunRecord {
            spec_id: spec.id(),
            spec: spec.clone(),
            engine: engine.to_string(),
            guided,
            run_index,
            seed,
            status: RunStatus::Ok,
            error: None,
            profile,
            token_count: output.token_count,
            word_count: word_count(&output.text, profile.language),
            sections: doc
                .sections
                .iter()
                .map(|s| SectionStat { label: s.index_as_labeled, words: s.word_count })
                .collect(),
            end_marker_present: doc.end_marker_present,
            failure_tags: classify_failure(&doc, spec.num_sections),
            stop_reason: output.stop_reason,
            structured_passed,
            constraint_outcomes: spec.constraints.iter().map(|c| verify_constraint(&doc, c)).collect(),
            rep3: ngram_repetition(&words, 3).ok(),
            ttr: ttr(&words).ok(),
            duration_ms,
            text: output.text,
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn failed(
        spec: &PromptSpec,
        profile: TaskProfile,
        engine: &str,
        guided: bool,
        run_index: usize,
        seed: u64,
        error: String,
        duration_ms: u64,
    ) -> Self {
        RunRecord {
            spec_id: spec.id(),
            spec: spec.clone(),
            engine: engine.to_string(),
            guided,
            run_index,
            seed,
            status: RunStatus::Failed,
            error: Some(error),
            profile,
            text: String::new(),
            token_count: None,
            word_count: 0,
            sections: Vec::new(),
            end_marker_present: false,
            failure_tags: BTreeSet::new(),
            stop_reason: None,
            structured_passed: 0,
            constraint_outcomes: Vec::new(),
            rep3: None,
            ttr: None,
            duration_ms,
        }
    }

    /// Checks that the stored analysis agrees with a fresh parse of the stored text.
    pub fn check_invariants(&self) -> Result<(), String> {
        if self.run_index == 0 {
            return Err(format!("{}: run_index must be 1-based", self.spec_id));
        }
        if self.spec_id != self.spec.id() {
            return Err(format!("{}: spec id does not match spec {}", self.spec_id, self.spec.id()));
        }
        if !self.is_ok() {
            return Ok(());
        }
        let words = word_count(&self.text, self.profile.language);
        if words != self.word_count {
            return Err(format!(
                "{} run {}: stored word_count {} but text has {words}",
                self.spec_id, self.run_index, self.word_count
            ));
        }
        let doc = self.profile.parse(&self.text);
        let labels: Vec<u64> = doc.sections.iter().map(|s| s.index_as_labeled).collect();
        let stored: Vec<u64> = self.sections.iter().map(|s| s.label).collect();
        if labels != stored {
            return Err(format!("{} run {}: stored sections disagree with the text", self.spec_id, self.run_index));
        }
        Ok(())
    }

    pub fn is_ok(&self) -> bool {
        self.status == RunStatus::Ok
    }

    pub fn group_key(&self) -> GroupKey {
        GroupKey { spec_id: self.spec_id.clone(), engine: self.engine.clone(), guided: self.guided }
    }
}
