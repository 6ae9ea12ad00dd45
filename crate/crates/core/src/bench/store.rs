use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::judge::JudgeRecord;
use super::record::RunRecord;
use super::BenchError;

/// One line of the run store.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StoreEntry {
    Run(RunRecord),
    Judge(JudgeRecord),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct StoreContents {
    pub runs: Vec<RunRecord>,
    pub judgments: Vec<JudgeRecord>,
    /// Lines that did not parse, e.g. a write torn by a crash.
    pub skipped_lines: usize,
}

/// Append-only JSON-lines file. Appends from one handle are serialized.
#[derive(Debug)]
pub struct RunStore {
    path: PathBuf,
    lock: Mutex<()>,
}

impl RunStore {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        RunStore { path: path.into(), lock: Mutex::new(()) }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Writes one entry and syncs it before returning.
    pub fn append(&self, entry: &StoreEntry) -> Result<(), BenchError> {
        let mut line = serde_json::to_string(entry).map_err(|e| BenchError::Store(e.to_string()))?;
        line.push('\n');
        let _guard = self.lock.lock().unwrap_or_else(|p| p.into_inner());
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.write_all(line.as_bytes())?;
        file.sync_data()?;
        Ok(())
    }

    /// Reads every entry. A missing file is an empty store.
    pub fn load(&self) -> Result<StoreContents, BenchError> {
        let mut contents = StoreContents::default();
        let file = match std::fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(contents),
            Err(e) => return Err(e.into()),
        };
        for line in BufReader::new(file).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str(&line) {
                Ok(StoreEntry::Run(r)) => contents.runs.push(r),
                Ok(StoreEntry::Judge(j)) => contents.judgments.push(j),
                Err(_) => contents.skipped_lines += 1,
            }
        }
        Ok(contents)
    }
}
