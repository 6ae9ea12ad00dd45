mod commands;
mod http;
mod serve;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use longform_core::bench::{Complexity, MatrixConfig, Task, DEFAULT_WORDS_PER_SECTION, SCALES};
use longform_core::sections::Language;

#[derive(Parser)]
#[command(name = "longform", version, about = "Long-form generation benchmark, guidance bridge, and attention probe")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the prompt specs of a benchmark matrix, one JSON object per line.
    Expand(ExpandArgs),
    /// Generate N samples per spec and append them to the run store.
    Run(RunArgs),
    /// Recompute metric summaries from the run store.
    Summarize(SummarizeArgs),
    /// Emit the summary table and optional plot data.
    Report(ReportArgs),
    /// Score stored runs with a remote judge and append the judgments.
    Judge(JudgeArgs),
    /// Serve guidance sessions over stdio or a local TCP socket.
    Bridge(BridgeArgs),
    /// Constraint-attention series, collapse onset, and spikes for a trace dump.
    Probe(ProbeArgs),
}

#[derive(Args, Clone)]
struct MatrixArgs {
    /// Task ids, comma separated [default: all]
    #[arg(long, value_delimiter = ',')]
    tasks: Vec<Task>,
    /// EN, CH [default: both]
    #[arg(long, value_delimiter = ',')]
    languages: Vec<Language>,
    /// simple, complex, fine_grained [default: all]
    #[arg(long, value_delimiter = ',')]
    complexity: Vec<Complexity>,
    /// Section counts [default: 5,10,20,50,100,200,500]
    #[arg(long, value_delimiter = ',')]
    scales: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_WORDS_PER_SECTION)]
    words_per_section: usize,
    /// Seeds constraint draws and, for `run`, the first sample.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl MatrixArgs {
    fn config(&self) -> MatrixConfig {
        let d = MatrixConfig::default();
        fn or<T: Clone>(v: &[T], d: Vec<T>) -> Vec<T> {
            if v.is_empty() {
                d
            } else {
                v.to_vec()
            }
        }
        MatrixConfig {
            tasks: or(&self.tasks, d.tasks),
            languages: or(&self.languages, d.languages),
            complexities: or(&self.complexity, d.complexities),
            scales: or(&self.scales, SCALES.iter().map(|&(s, _)| s).collect()),
            words_per_section: self.words_per_section,
            seed: self.seed,
        }
    }
}

#[derive(Args)]
struct ExpandArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    /// Include the rendered prompt in each line.
    #[arg(long)]
    prompts: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineKind {
    Toy,
    External,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ToyMode {
    None,
    EosRamp,
    Loop,
    Skip,
    Filler,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Guidance {
    On,
    Off,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Lines,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    matrix: MatrixArgs,
    /// Samples per spec.
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, value_enum, default_value_t = EngineKind::Toy)]
    engine: EngineKind,
    #[arg(long, value_enum, default_value_t = ToyMode::None)]
    toy_mode: ToyMode,
    /// Toy step cap per run [default: 3 x target words + 1000]
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long, value_enum, default_value_t = Guidance::On)]
    guidance: Guidance,
    #[arg(long, default_value = "runs.jsonl")]
    store: PathBuf,
    /// Generation endpoint URL (chat-completion shaped) for --engine external.
    #[arg(long)]
    endpoint: Option<String>,
    #[arg(long, default_value = "default")]
    model: String,
    /// JSON file describing the endpoint's request template and response pointers.
    #[arg(long)]
    endpoint_config: Option<PathBuf>,
    /// Environment variable holding the endpoint's bearer token.
    #[arg(long)]
    endpoint_key_env: Option<String>,
    /// Words-to-tokens factor for the guidance plan [default: engine's own]
    #[arg(long)]
    words_to_tokens: Option<f64>,
    #[arg(long, default_value_t = 600)]
    timeout_secs: u64,
    /// Parallel workers [default: available cores]
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Lines)]
    format: Format,
}

#[derive(Args)]
struct SummarizeArgs {
    #[arg(long, default_value = "runs.jsonl")]
    store: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Lines)]
    format: Format,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, default_value = "runs.jsonl")]
    store: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Also write target-vs-length plot points, one JSON object per line.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct JudgeArgs {
    #[arg(long, default_value = "runs.jsonl")]
    store: PathBuf,
    /// Chat-completion shaped judge URL.
    #[arg(long)]
    judge_endpoint: Option<String>,
    #[arg(long, default_value = "default")]
    judge_model: String,
    /// JSON endpoint description; the request template receives `{judge_prompt}`.
    #[arg(long)]
    judge_config: Option<PathBuf>,
    /// Environment variable holding the judge's bearer token.
    #[arg(long)]
    judge_key_env: Option<String>,
    #[arg(long, default_value_t = 300)]
    timeout_secs: u64,
    /// Score runs that already have a judgment.
    #[arg(long)]
    rescore: bool,
}

#[derive(Args)]
struct BridgeArgs {
    /// Address such as 127.0.0.1:7070; stdio when absent.
    #[arg(long)]
    listen: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    All,
    SkipLast,
}

#[derive(Args)]
struct ProbeArgs {
    /// Attention trace dump.
    #[arg(long)]
    trace: PathBuf,
    /// Constraint span sidecar.
    #[arg(long)]
    spans: PathBuf,
    /// Restrict to one labeled span group.
    #[arg(long)]
    group: Option<String>,
    #[arg(long, value_enum, default_value_t = Convention::All)]
    convention: Convention,
    #[arg(long, default_value_t = 500)]
    baseline_span: usize,
    #[arg(long, default_value_t = 0.1)]
    eps_rel: f64,
    #[arg(long, default_value_t = 200)]
    persistence: usize,
    #[arg(long, default_value_t = 3.0)]
    k: f64,
    #[arg(long, default_value_t = 200)]
    median_window: usize,
    /// Include the per-step series in the output.
    #[arg(long)]
    series: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Expand(a) => commands::expand(&a),
        Command::Run(a) => commands::run(&a),
        Command::Summarize(a) => commands::summarize(&a),
        Command::Report(a) => commands::report(&a),
        Command::Judge(a) => commands::judge(&a),
        Command::Bridge(a) => match a.listen {
            Some(addr) => serve::listen(&addr).map(|_| true),
            None => serve::stdio().map(|_| true),
        },
        Command::Probe(a) => commands::probe(&a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
