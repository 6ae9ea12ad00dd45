use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::judge::JudgeRecord;
use super::matrix::{Complexity, Task};
use super::record::{GroupKey, RunRecord};
use crate::metrics::{fsd, lsd, lvc, mean_of, mla, sca};
use crate::sections::{FailureTag, Language};

/// Aggregate metrics for one (prompt, engine, guidance) cell.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub spec_id: String,
    pub task: Task,
    pub language: Language,
    pub complexity: Complexity,
    pub engine: String,
    pub guided: bool,
    /// Successful runs the length metrics are computed over.
    pub runs: usize,
    pub failed_runs: usize,
    pub target_words: usize,
    pub required_sections: usize,
    pub mean_length: Option<f64>,
    pub lsd: Option<f64>,
    pub lvc: Option<f64>,
    pub mla: Option<f64>,
    pub fsd: Option<f64>,
    pub mean_sections: Option<f64>,
    /// Structured tasks only.
    pub sca: Option<f64>,
    pub uca: Option<f64>,
    pub rep3: Option<f64>,
    pub ttr: Option<f64>,
    /// Share of fine-grained constraints satisfied, in percent.
    pub constraint_pass: Option<f64>,
    pub failure_counts: BTreeMap<FailureTag, usize>,
}

fn mean_opt(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let v: Vec<f64> = xs.collect();
    mean_of(&v).ok()
}

/// Section count used for FSD: distinct labels a run produced.
fn section_count(run: &RunRecord) -> usize {
    run.sections.iter().map(|s| s.label).collect::<BTreeSet<_>>().len()
}

fn summarize_group(key: &GroupKey, runs: &[&RunRecord], judgments: &[&JudgeRecord]) -> MetricSummary {
    let spec = &runs[0].spec;
    let ok: Vec<&RunRecord> = runs.iter().copied().filter(|r| r.is_ok()).collect();
    let lengths: Vec<f64> = ok.iter().map(|r| r.word_count as f64).collect();
    let counts: Vec<f64> = ok.iter().map(|r| section_count(r) as f64).collect();
    let mean_length = mean_of(&lengths).ok();
    let sd = lsd(&lengths).ok();
    let target = spec.target_words();

    let sca_value = if spec.task.is_structured() {
        mean_opt(ok.iter().filter_map(|r| sca(r.structured_passed, spec.num_sections).ok()))
    } else {
        None
    };

    let outcomes: Vec<bool> = ok.iter().flat_map(|r| r.constraint_outcomes.iter().map(|o| o.passed())).collect();
    let constraint_pass =
        (!outcomes.is_empty()).then(|| outcomes.iter().filter(|&&p| p).count() as f64 / outcomes.len() as f64 * 100.0);

    let mut failure_counts = BTreeMap::new();
    for tag in ok.iter().flat_map(|r| r.failure_tags.iter()) {
        *failure_counts.entry(*tag).or_insert(0) += 1;
    }

    MetricSummary {
        spec_id: key.spec_id.clone(),
        task: spec.task,
        language: spec.language,
        complexity: spec.complexity,
        engine: key.engine.clone(),
        guided: key.guided,
        runs: ok.len(),
        failed_runs: runs.len() - ok.len(),
        target_words: target,
        required_sections: spec.num_sections,
        mean_length,
        lsd: sd,
        lvc: sd.zip(mean_length).and_then(|(s, m)| lvc(s, m).ok()),
        mla: mean_length.and_then(|m| mla(m, target as f64).ok()),
        fsd: fsd(&counts).ok(),
        mean_sections: mean_of(&counts).ok(),
        sca: sca_value,
        uca: mean_opt(judgments.iter().filter_map(|j| j.uca)),
        rep3: mean_opt(ok.iter().filter_map(|r| r.rep3)),
        ttr: mean_opt(ok.iter().filter_map(|r| r.ttr)),
        constraint_pass,
        failure_counts,
    }
}

/// One summary per (spec, engine, guided) group, sorted by key. Judgments
/// without a matching run group are ignored.
pub fn summarize(runs: &[RunRecord], judgments: &[JudgeRecord]) -> Vec<MetricSummary> {
    let mut groups: BTreeMap<GroupKey, Vec<&RunRecord>> = BTreeMap::new();
    for r in runs {
        groups.entry(r.group_key()).or_default().push(r);
    }
    let mut judged: BTreeMap<GroupKey, Vec<&JudgeRecord>> = BTreeMap::new();
    for j in judgments {
        judged.entry(j.group_key()).or_default().push(j);
    }
    groups.iter().map(|(key, rs)| summarize_group(key, rs, judged.get(key).map(Vec::as_slice).unwrap_or(&[]))).collect()
}
