use std::collections::BTreeSet;
use std::io::{self, Write};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use anyhow::{bail, Context};
use longform_core::attention::{
    constraint_attention_for, detect_collapse, detect_instability, AttentionTrace, CollapseParams, ConstraintSpan,
    InstabilityParams, LayerConvention,
};
use longform_core::bench::{
    emit_report, execute, expand_matrix, judge_score, plot_data, render_prompt, summarize as summarize_runs, Engine,
    ExternalEngine, HttpEndpoint, PromptSpec, ReportFormat, RunOptions, RunRecord, RunStore, StoreEntry, ToyEngine,
    DEFAULT_WORDS_TO_TOKENS,
};
use longform_core::toy::{FailureMode, ToyConfig};
use serde_json::json;

use super::http::UreqTransport;
use super::{
    Convention, EngineKind, ExpandArgs, Format, Guidance, JudgeArgs, ProbeArgs, ReportArgs, RunArgs, SummarizeArgs,
    ToyMode,
};

fn report_format(f: Format) -> ReportFormat {
    match f {
        Format::Csv => ReportFormat::Csv,
        Format::Lines => ReportFormat::Lines,
    }
}

fn load_endpoint(
    config: Option<&std::path::Path>,
    url: Option<&str>,
    model: &str,
    key_env: Option<&str>,
    flag: &str,
) -> anyhow::Result<HttpEndpoint> {
    let mut endpoint = match (config, url) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let mut ep: HttpEndpoint =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
            if let Some(u) = url {
                ep.url = u.to_string();
            }
            ep
        }
        (None, Some(u)) => HttpEndpoint::chat(u, model),
        (None, None) => bail!("{flag} or its config file is required"),
    };
    if let Some(var) = key_env {
        endpoint.key_env = Some(var.to_string());
    }
    Ok(endpoint)
}

pub fn expand(args: &ExpandArgs) -> anyhow::Result<bool> {
    let specs = expand_matrix(&args.matrix.config())?;
    let mut out = io::stdout().lock();
    for spec in &specs {
        let mut line = json!({"id": spec.id(), "spec": spec});
        if args.prompts {
            line["prompt"] = json!(render_prompt(spec)?);
        }
        writeln!(out, "{line}")?;
    }
    Ok(true)
}

fn toy_mode(mode: ToyMode) -> FailureMode {
    match mode {
        ToyMode::None => FailureMode::None,
        ToyMode::EosRamp => FailureMode::EosRamp,
        ToyMode::Loop => FailureMode::Loop,
        ToyMode::Skip => FailureMode::Skip,
        ToyMode::Filler => FailureMode::Filler,
    }
}

/// Invariant violations in one batch of records for a spec.
fn batch_violations(records: &[RunRecord], options: &RunOptions) -> Vec<String> {
    let mut problems: Vec<String> = records.iter().filter_map(|r| r.check_invariants().err()).collect();
    let indices: Vec<usize> = records.iter().map(|r| r.run_index).collect();
    let seeds: Vec<u64> = records.iter().map(|r| r.seed).collect();
    let expected_seeds: Vec<u64> = (0..options.n as u64).map(|i| options.base_seed + i).collect();
    if indices != (1..=options.n).collect::<Vec<_>>() || seeds != expected_seeds {
        let id = records.first().map_or("?", |r| r.spec_id.as_str());
        problems.push(format!("{id}: run indices or seeds are not 1..=n / base_seed.."));
    }
    problems
}

pub fn run(args: &RunArgs) -> anyhow::Result<bool> {
    let specs = expand_matrix(&args.matrix.config())?;
    let engine: Box<dyn Engine> = match args.engine {
        EngineKind::Toy => Box::new(ToyEngine {
            config: ToyConfig::default().with_mode(toy_mode(args.toy_mode)),
            max_steps: args.max_steps,
        }),
        EngineKind::External => Box::new(ExternalEngine {
            endpoint: load_endpoint(
                args.endpoint_config.as_deref(),
                args.endpoint.as_deref(),
                &args.model,
                args.endpoint_key_env.as_deref(),
                "--endpoint",
            )?,
            transport: UreqTransport::new(Duration::from_secs(args.timeout_secs)),
            words_to_tokens: args.words_to_tokens.unwrap_or(DEFAULT_WORDS_TO_TOKENS),
        }),
    };
    let guided: &[bool] = match args.guidance {
        Guidance::On => &[true],
        Guidance::Off => &[false],
        Guidance::Both => &[false, true],
    };
    let work: Vec<(&PromptSpec, RunOptions)> = specs
        .iter()
        .flat_map(|spec| {
            guided.iter().map(move |&g| {
                (
                    spec,
                    RunOptions {
                        n: args.n,
                        base_seed: args.matrix.seed,
                        guided: g,
                        words_to_tokens: args.words_to_tokens,
                    },
                )
            })
        })
        .collect();

    let store = RunStore::new(&args.store);
    let jobs = args
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .clamp(1, work.len().max(1));
    let next = AtomicUsize::new(0);
    let results = Mutex::new(Vec::with_capacity(work.len()));
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some((spec, options)) = work.get(i) else { break };
                let outcome = execute(spec, engine.as_ref(), options, Some(&store));
                if let Ok(records) = &outcome {
                    eprintln!("{} guided={} done ({} runs)", spec.id(), options.guided, records.len());
                }
                results.lock().expect("no worker panics while holding the lock").push((i, outcome));
            });
        }
    });
    let mut results = results.into_inner().expect("workers joined");
    results.sort_by_key(|(i, _)| *i);

    let mut records = Vec::new();
    let mut ok = true;
    for (i, outcome) in results {
        let batch = outcome.with_context(|| format!("running {}", work[i].0.id()))?;
        for problem in batch_violations(&batch, &work[i].1) {
            eprintln!("invariant violated: {problem}");
            ok = false;
        }
        records.extend(batch);
    }
    let failed = records.iter().filter(|r| !r.is_ok()).count();
    if failed > 0 {
        eprintln!("{failed} of {} runs failed; see the store for errors", records.len());
    }
    emit_report(&summarize_runs(&records, &[]), report_format(args.format), &mut io::stdout().lock())?;
    Ok(ok)
}

fn load_checked(store: &RunStore) -> anyhow::Result<(longform_core::bench::StoreContents, bool)> {
    let contents = store.load()?;
    if contents.skipped_lines > 0 {
        eprintln!("skipped {} unreadable store lines", contents.skipped_lines);
    }
    let mut ok = true;
    for r in &contents.runs {
        if let Err(problem) = r.check_invariants() {
            eprintln!("invariant violated: {problem}");
            ok = false;
        }
    }
    Ok((contents, ok))
}

pub fn summarize(args: &SummarizeArgs) -> anyhow::Result<bool> {
    let (contents, ok) = load_checked(&RunStore::new(&args.store))?;
    let summaries = summarize_runs(&contents.runs, &contents.judgments);
    emit_report(&summaries, report_format(args.format), &mut io::stdout().lock())?;
    Ok(ok)
}

pub fn report(args: &ReportArgs) -> anyhow::Result<bool> {
    let (contents, ok) = load_checked(&RunStore::new(&args.store))?;
    let summaries = summarize_runs(&contents.runs, &contents.judgments);
    emit_report(&summaries, report_format(args.format), &mut io::stdout().lock())?;
    if let Some(path) = &args.plot {
        let mut file =
            io::BufWriter::new(std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?);
        for point in plot_data(&summaries) {
            writeln!(file, "{}", serde_json::to_string(&point)?)?;
        }
        file.flush()?;
    }
    Ok(ok)
}

pub fn judge(args: &JudgeArgs) -> anyhow::Result<bool> {
    let endpoint = load_endpoint(
        args.judge_config.as_deref(),
        args.judge_endpoint.as_deref(),
        &args.judge_model,
        args.judge_key_env.as_deref(),
        "--judge-endpoint",
    )?;
    if endpoint.key_env.is_some() {
        endpoint.bearer()?;
    }
    let transport = UreqTransport::new(Duration::from_secs(args.timeout_secs));
    let store = RunStore::new(&args.store);
    let contents = store.load()?;
    let done: BTreeSet<_> =
        contents.judgments.iter().filter(|j| j.uca.is_some()).map(|j| (j.group_key(), j.run_index)).collect();
    let (mut scored, mut failed) = (0, 0);
    for run in contents.runs.iter().filter(|r| r.is_ok()) {
        if !args.rescore && done.contains(&(run.group_key(), run.run_index)) {
            continue;
        }
        let record = judge_score(run, &endpoint, &transport);
        match &record.error {
            Some(e) if record.uca.is_none() => {
                eprintln!("{} run {}: judge failed: {e}", run.spec_id, run.run_index);
                failed += 1;
            }
            _ => scored += 1,
        }
        store.append(&StoreEntry::Judge(record))?;
    }
    eprintln!("judged {scored} runs, {failed} judge failures");
    Ok(true)
}

pub fn probe(args: &ProbeArgs) -> anyhow::Result<bool> {
    let trace = AttentionTrace::load(&args.trace)?;
    let span = ConstraintSpan::load(&args.spans)?;
    let indices = match &args.group {
        Some(g) => span.get(g).cloned().with_context(|| format!("no span group `{g}`"))?,
        None => span.all(),
    };
    let convention = match args.convention {
        Convention::All => LayerConvention::All,
        Convention::SkipLast => LayerConvention::SkipLast,
    };
    let series = constraint_attention_for(&trace, &indices, convention)?;
    let collapse =
        CollapseParams { baseline_span: args.baseline_span, eps_rel: args.eps_rel, persistence: args.persistence };
    let instability = InstabilityParams { k: args.k, median_window: args.median_window };
    let mut out = json!({
        "steps": series.len(),
        "convention": convention,
        "collapse_onset": detect_collapse(&series, &collapse),
        "spikes": detect_instability(&series, &instability),
    });
    if args.series {
        out["series"] = json!(series);
    }
    println!("{out}");
    Ok(true)
}
