use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::engine::{HttpEndpoint, Transport};
use super::prompts::{render_judge_prompt, render_prompt};
use super::record::{GroupKey, RunRecord, RunStatus};

pub const JUDGE_DIMENSIONS: [&str; 6] =
    ["Relevance", "Accuracy", "Coherence", "Clarity", "Breadth and Depth", "Reading Experience"];

/// Extra attempts after the first malformed or failed response.
pub const JUDGE_RETRIES: usize = 2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JudgeScores {
    pub analysis: String,
    /// In `JUDGE_DIMENSIONS` order, each 1..=5.
    pub scores: [u8; 6],
}

impl JudgeScores {
    /// Mean of the six scores as a percentage of the maximum.
    pub fn uca(&self) -> f64 {
        let sum: u32 = self.scores.iter().map(|&s| u32::from(s)).sum();
        f64::from(sum) / 6.0 / 5.0 * 100.0
    }
}

fn score(value: &Value) -> Option<u8> {
    let n = value.as_u64().or_else(|| value.as_f64().filter(|f| f.fract() == 0.0).map(|f| f as u64))?;
    (1..=5).contains(&n).then_some(n as u8)
}

/// Reads the judge's JSON object, tolerating prose or code fences around it.
pub fn parse_judge_response(text: &str) -> Result<JudgeScores, String> {
    let trimmed = text.trim();
    let object: Value = serde_json::from_str(trimmed).or_else(|_| {
        let start = trimmed.find('{').ok_or("no JSON object in response")?;
        let end = trimmed.rfind('}').ok_or("no JSON object in response")?;
        serde_json::from_str(&trimmed[start..=end]).map_err(|e| format!("malformed JSON: {e}"))
    })?;
    let map = object.as_object().ok_or("response is not a JSON object")?;
    let mut scores = [0u8; 6];
    for (slot, dim) in scores.iter_mut().zip(JUDGE_DIMENSIONS) {
        let v = map.get(dim).ok_or_else(|| format!("missing `{dim}`"))?;
        *slot = score(v).ok_or_else(|| format!("`{dim}` is not an integer in 1..=5: {v}"))?;
    }
    let analysis = match map.get("Analysis") {
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
        None => String::new(),
    };
    Ok(JudgeScores { analysis, scores })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JudgeRecord {
    pub spec_id: String,
    pub engine: String,
    pub guided: bool,
    pub run_index: usize,
    pub seed: u64,
    pub status: RunStatus,
    pub scores: Option<JudgeScores>,
    pub uca: Option<f64>,
    pub attempts: usize,
    pub error: Option<String>,
}

impl JudgeRecord {
    pub fn group_key(&self) -> GroupKey {
        GroupKey { spec_id: self.spec_id.clone(), engine: self.engine.clone(), guided: self.guided }
    }
}

/// Scores one run. The request template gets the filled judge prompt as both
/// `{judge_prompt}` and `{prompt}`, so a plain chat endpoint works unchanged.
pub fn judge_score(record: &RunRecord, endpoint: &HttpEndpoint, transport: &dyn Transport) -> JudgeRecord {
    let mut out = JudgeRecord {
        spec_id: record.spec_id.clone(),
        engine: record.engine.clone(),
        guided: record.guided,
        run_index: record.run_index,
        seed: record.seed,
        status: RunStatus::Failed,
        scores: None,
        uca: None,
        attempts: 0,
        error: None,
    };
    let request = match render_prompt(&record.spec) {
        Ok(p) => p,
        Err(e) => {
            out.error = Some(e.to_string());
            return out;
        }
    };
    let prompt = render_judge_prompt(&request, &record.text);
    let vars = [("judge_prompt", Value::from(prompt.clone())), ("prompt", Value::from(prompt))];
    for _ in 0..=JUDGE_RETRIES {
        out.attempts += 1;
        let parsed = endpoint
            .call(transport, &vars)
            .and_then(|resp| endpoint.extract_text(&resp))
            .map_err(|e| e.to_string())
            .and_then(|text| parse_judge_response(&text));
        match parsed {
            Ok(scores) => {
                out.status = RunStatus::Ok;
                out.uca = Some(scores.uca());
                out.scores = Some(scores);
                out.error = None;
                return out;
            }
            Err(e) => out.error = Some(e),
        }
    }
    out
}
