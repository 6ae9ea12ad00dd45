//! Benchmark matrix expansion, prompt rendering, generation runs, judging, and reporting.

mod engine;
mod judge;
mod matrix;
mod prompts;
mod record;
mod report;
mod runner;
mod store;
mod summary;
mod templates_ch;
mod templates_en;

pub use engine::{
    Engine, ExternalEngine, GenerationOutput, GenerationRequest, GuidancePlan, HttpEndpoint, ToyEngine, Transport,
    DEFAULT_WORDS_TO_TOKENS,
};
pub use judge::{judge_score, parse_judge_response, JudgeRecord, JudgeScores, JUDGE_DIMENSIONS, JUDGE_RETRIES};
pub use matrix::{
    designated_sections, draw_constraints, expand_matrix, Complexity, MatrixConfig, PromptSpec, Task,
    DEFAULT_WORDS_PER_SECTION, SCALES,
};
pub use prompts::{prompt_seed, render_judge_prompt, render_prompt};
pub use record::{GroupKey, RunRecord, RunStatus, SectionStat};
pub use report::{emit_report, plot_data, PlotPoint, ReportFormat, REPORT_COLUMNS};
pub use runner::{engine_profile, execute, RunOptions};
pub use store::{RunStore, StoreContents, StoreEntry};
pub use summary::{summarize, MetricSummary};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("template missing: {0}")]
    TemplateMissing(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("engine failed: {0}")]
    Engine(String),
    #[error("transport failed: {0}")]
    Transport(String),
    #[error("run store: {0}")]
    Store(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
