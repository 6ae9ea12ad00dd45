use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::matrix::PromptSpec;
use super::BenchError;
use crate::sections::HeaderFamily;
use crate::toy::{run_generation, StopReason, ToyConfig, ToyVocab};

/// Words-to-tokens factor for external runtimes.
pub const DEFAULT_WORDS_TO_TOKENS: f64 = 1.3;

/// Section plan handed to an engine when guidance is on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuidancePlan {
    pub total_sections: usize,
    pub section_token_budget: usize,
}

impl GuidancePlan {
    pub fn for_spec(spec: &PromptSpec, words_to_tokens: f64) -> Self {
        GuidancePlan {
            total_sections: spec.num_sections,
            section_token_budget: ((spec.words_per_section as f64 * words_to_tokens).ceil() as usize).max(1),
        }
    }
}

pub struct GenerationRequest<'a> {
    pub spec: &'a PromptSpec,
    pub prompt: &'a str,
    pub seed: u64,
    pub plan: Option<GuidancePlan>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationOutput {
    pub text: String,
    pub token_count: Option<usize>,
    pub stop_reason: Option<String>,
}

/// A text generator. Engines are shared across worker threads.
pub trait Engine: Sync {
    fn name(&self) -> String;

    fn words_to_tokens(&self) -> f64 {
        DEFAULT_WORDS_TO_TOKENS
    }

    /// Header style the engine writes regardless of task, if any.
    fn header_family(&self) -> Option<HeaderFamily> {
        None
    }

    fn generate(&self, request: &GenerationRequest<'_>) -> Result<GenerationOutput, BenchError>;
}

/// Toy model as an engine. It always writes chapter headers, whatever the task.
#[derive(Clone, Debug)]
pub struct ToyEngine {
    pub config: ToyConfig,
    /// Step cap; defaults to three times the requested length plus slack.
    pub max_steps: Option<usize>,
}

impl ToyEngine {
    pub fn new(config: ToyConfig) -> Self {
        ToyEngine { config, max_steps: None }
    }
}

impl Engine for ToyEngine {
    fn name(&self) -> String {
        let mode = serde_json::to_value(self.config.failure_mode).expect("unit enum serializes");
        format!("toy-{}", mode.as_str().unwrap_or_default())
    }

    fn header_family(&self) -> Option<HeaderFamily> {
        Some(HeaderFamily::Chapter)
    }

    /// One toy token is one word.
    fn words_to_tokens(&self) -> f64 {
        1.0
    }

    fn generate(&self, request: &GenerationRequest<'_>) -> Result<GenerationOutput, BenchError> {
        let spec = request.spec;
        let config = self.config.clone().with_seed(request.seed).with_target_sections(spec.num_sections);
        let vocab = ToyVocab::new();
        let guidance = request.plan.map(|p| vocab.guidance_config(p.total_sections, p.section_token_budget));
        let max_steps = self.max_steps.unwrap_or(3 * spec.target_words() + 1000);
        let generation =
            run_generation(&config, guidance.as_ref(), max_steps).map_err(|e| BenchError::Engine(e.to_string()))?;
        Ok(GenerationOutput {
            token_count: Some(generation.generated().len()),
            stop_reason: Some(
                match generation.stop_reason {
                    StopReason::Eos => "eos",
                    StopReason::MaxSteps => "max_steps",
                }
                .to_string(),
            ),
            text: generation.text,
        })
    }
}

/// Minimal JSON-over-HTTP client interface.
pub trait Transport {
    fn post_json(&self, url: &str, bearer: Option<&str>, body: &Value) -> Result<Value, String>;
}

/// A JSON HTTP endpoint whose request and response shapes are configuration.
///
/// String leaves of `request_template` may contain `{name}` placeholders. A
/// leaf that is exactly one placeholder takes the variable's JSON type.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HttpEndpoint {
    pub url: String,
    pub request_template: Value,
    /// JSON pointer to the generated text in the response.
    pub response_pointer: String,
    #[serde(default)]
    pub token_count_pointer: Option<String>,
    /// Environment variable holding a bearer token.
    #[serde(default)]
    pub key_env: Option<String>,
}

fn fill(template: &Value, vars: &[(&str, Value)]) -> Value {
    match template {
        Value::String(s) => {
            let whole = s.strip_prefix('{').and_then(|r| r.strip_suffix('}'));
            if let Some((_, v)) = vars.iter().find(|(k, _)| whole == Some(*k)) {
                return v.clone();
            }
            let mut out = s.clone();
            for (k, v) in vars {
                let text = match v {
                    Value::String(t) => t.clone(),
                    other => other.to_string(),
                };
                out = out.replace(&format!("{{{k}}}"), &text);
            }
            Value::String(out)
        }
        Value::Array(items) => Value::Array(items.iter().map(|v| fill(v, vars)).collect()),
        Value::Object(map) => Value::Object(map.iter().map(|(k, v)| (k.clone(), fill(v, vars))).collect()),
        other => other.clone(),
    }
}

impl HttpEndpoint {
    /// A chat-completion shaped endpoint taking `{prompt}` as the user message.
    pub fn chat(url: impl Into<String>, model: &str) -> Self {
        HttpEndpoint {
            url: url.into(),
            request_template: serde_json::json!({
                "model": model,
                "messages": [{"role": "user", "content": "{prompt}"}],
            }),
            response_pointer: "/choices/0/message/content".into(),
            token_count_pointer: Some("/usage/completion_tokens".into()),
            key_env: None,
        }
    }

    pub fn render(&self, vars: &[(&str, Value)]) -> Value {
        fill(&self.request_template, vars)
    }

    pub fn bearer(&self) -> Result<Option<String>, BenchError> {
        match &self.key_env {
            None => Ok(None),
            Some(var) => std::env::var(var)
                .map(Some)
                .map_err(|_| BenchError::InvalidConfig(format!("environment variable `{var}` is not set"))),
        }
    }

    pub fn call(&self, transport: &dyn Transport, vars: &[(&str, Value)]) -> Result<Value, BenchError> {
        let bearer = self.bearer()?;
        transport.post_json(&self.url, bearer.as_deref(), &self.render(vars)).map_err(BenchError::Transport)
    }

    pub fn extract_text(&self, response: &Value) -> Result<String, BenchError> {
        response
            .pointer(&self.response_pointer)
            .and_then(Value::as_str)
            .map(String::from)
            .ok_or_else(|| BenchError::Transport(format!("response has no string at `{}`", self.response_pointer)))
    }
}

/// Generation through an external runtime. The runtime applies guidance itself
/// (via the bridge); the plan travels as `{num_sections}` and `{section_token_budget}`.
pub struct ExternalEngine<T> {
    pub endpoint: HttpEndpoint,
    pub transport: T,
    pub words_to_tokens: f64,
}

impl<T: Transport + Sync> Engine for ExternalEngine<T> {
    fn name(&self) -> String {
        format!("external:{}", self.endpoint.url)
    }

    fn words_to_tokens(&self) -> f64 {
        self.words_to_tokens
    }

    fn generate(&self, request: &GenerationRequest<'_>) -> Result<GenerationOutput, BenchError> {
        let plan = request.plan;
        let vars = [
            ("prompt", Value::from(request.prompt)),
            ("seed", Value::from(request.seed)),
            ("guided", Value::from(plan.is_some())),
            ("num_sections", Value::from(request.spec.num_sections)),
            ("section_token_budget", Value::from(plan.map_or(0, |p| p.section_token_budget))),
            (
                "max_tokens",
                Value::from((request.spec.target_words() as f64 * self.words_to_tokens * 2.0).ceil() as u64),
            ),
        ];
        let response = self.endpoint.call(&self.transport, &vars)?;
        let text = self.endpoint.extract_text(&response)?;
        let token_count = self
            .endpoint
            .token_count_pointer
            .as_deref()
            .and_then(|p| response.pointer(p))
            .and_then(Value::as_u64)
            .map(|n| n as usize);
        Ok(GenerationOutput { text, token_count, stop_reason: None })
    }
}
