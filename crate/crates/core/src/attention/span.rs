use std::collections::{BTreeMap, BTreeSet};

use super::AttentionError;

/// Prompt positions (1-based) holding constraint text, grouped by constraint.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstraintSpan {
    groups: BTreeMap<String, BTreeSet<usize>>,
}

impl ConstraintSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, label: impl Into<String>, indices: impl IntoIterator<Item = usize>) {
        self.groups.entry(label.into()).or_default().extend(indices);
    }

    pub fn groups(&self) -> &BTreeMap<String, BTreeSet<usize>> {
        &self.groups
    }

    pub fn get(&self, label: &str) -> Option<&BTreeSet<usize>> {
        self.groups.get(label)
    }

    /// Union over every constraint.
    pub fn all(&self) -> BTreeSet<usize> {
        self.groups.values().flatten().copied().collect()
    }

    /// Parses the sidecar format: one `label: 3-7, 12` line per constraint.
    /// Unlabeled lines get `c1`, `c2`, ...; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, AttentionError> {
        let mut span = ConstraintSpan::new();
        let mut unnamed = 0;
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |what: &str| AttentionError::Format(format!("span line {}: {what}", n + 1));
            let (label, ranges) = match line.split_once(':') {
                Some((l, r)) => (l.trim().to_string(), r),
                None => {
                    unnamed += 1;
                    (format!("c{unnamed}"), line)
                }
            };
            if label.is_empty() {
                return Err(bad("empty label"));
            }
            let mut indices = Vec::new();
            for part in ranges.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let (lo, hi) = match part.split_once('-') {
                    Some((a, b)) => (a.trim(), b.trim()),
                    None => (part, part),
                };
                let lo: usize = lo.parse().map_err(|_| bad(&format!("bad index `{lo}`")))?;
                let hi: usize = hi.parse().map_err(|_| bad(&format!("bad index `{hi}`")))?;
                if lo == 0 || lo > hi {
                    return Err(bad(&format!("bad range `{part}`")));
                }
                indices.extend(lo..=hi);
            }
            span.insert(label, indices);
        }
        Ok(span)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self, AttentionError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}
