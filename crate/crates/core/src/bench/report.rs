use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::summary::MetricSummary;
use super::BenchError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Csv,
    /// One JSON object per line.
    Lines,
}

impl FromStr for ReportFormat {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "lines" | "jsonl" => Ok(ReportFormat::Lines),
            _ => Err(BenchError::InvalidConfig(format!("unknown report format `{s}`"))),
        }
    }
}

/// Column order: identity, then the headline length and structure metrics, then extras.
pub const REPORT_COLUMNS: [&str; 20] = [
    "spec_id",
    "task",
    "language",
    "complexity",
    "engine",
    "guided",
    "runs",
    "failed_runs",
    "target_words",
    "lsd",
    "mean_length",
    "lvc",
    "mla",
    "fsd",
    "mean_sections",
    "sca",
    "uca",
    "rep3_pct",
    "ttr",
    "constraint_pass",
];

fn num(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.2}")).unwrap_or_default()
}

fn row(s: &MetricSummary) -> Vec<String> {
    vec![
        s.spec_id.clone(),
        s.task.id().to_string(),
        s.language.to_string(),
        s.complexity.id().to_string(),
        s.engine.clone(),
        s.guided.to_string(),
        s.runs.to_string(),
        s.failed_runs.to_string(),
        s.target_words.to_string(),
        num(s.lsd),
        num(s.mean_length),
        num(s.lvc),
        num(s.mla),
        num(s.fsd),
        num(s.mean_sections),
        num(s.sca),
        num(s.uca),
        num(s.rep3.map(|r| r * 100.0)),
        num(s.ttr),
        num(s.constraint_pass),
    ]
}

pub fn emit_report(summaries: &[MetricSummary], format: ReportFormat, out: &mut dyn Write) -> Result<(), BenchError> {
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(REPORT_COLUMNS).map_err(|e| BenchError::Store(e.to_string()))?;
            for s in summaries {
                w.write_record(row(s)).map_err(|e| BenchError::Store(e.to_string()))?;
            }
            w.flush()?;
        }
        ReportFormat::Lines => {
            for s in summaries {
                let line = serde_json::to_string(s).map_err(|e| BenchError::Store(e.to_string()))?;
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(())
}

/// A point for a target-versus-achieved length plot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlotPoint {
    pub engine: String,
    pub guided: bool,
    pub target_words: usize,
    pub mean_length: f64,
    pub lsd: f64,
}

pub fn plot_data(summaries: &[MetricSummary]) -> Vec<PlotPoint> {
    let mut points: Vec<PlotPoint> = summaries
        .iter()
        .filter_map(|s| {
            Some(PlotPoint {
                engine: s.engine.clone(),
                guided: s.guided,
                target_words: s.target_words,
                mean_length: s.mean_length?,
                lsd: s.lsd?,
            })
        })
        .collect();
    points.sort_by(|a, b| (&a.engine, a.guided, a.target_words).cmp(&(&b.engine, b.guided, b.target_words)));
    points
}
