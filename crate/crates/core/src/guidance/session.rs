use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::adjustment::{Bias, Event, LogitAdjustment};
use super::config::{freeform_checkpoints, GuidanceConfig, GuidanceMode};
use super::matcher::SeqMatcher;
use super::GuidanceError;
use crate::TokenId;

/// A closed section and the step at which its successor's header (or EOS) completed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundary {
    pub section: usize,
    pub step: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationState {
    /// Current section, 1-based.
    pub section: usize,
    pub section_tokens: usize,
    pub step: usize,
    /// Budget reached but no header started yet.
    pub waiting: bool,
    pub title_cursor: Option<usize>,
    pub banned_suffix_len: usize,
    pub end_marker_cursor: usize,
    pub end_marker_done: bool,
    pub finished: bool,
    pub boundaries: Vec<Boundary>,
    pub checkpoints_remaining: Vec<usize>,
    pub last_token: Option<TokenId>,
}

/// One guided generation. Feed it every emitted token and apply the adjustment it returns.
#[derive(Clone, Debug)]
pub struct GuidanceSession {
    config: GuidanceConfig,
    state: GenerationState,
    title: Option<SeqMatcher>,
    end_marker: SeqMatcher,
    recent: VecDeque<TokenId>,
    recent_cap: usize,
    interruption: Vec<TokenId>,
    pending: Vec<Event>,
}

impl GuidanceSession {
    pub fn new(config: GuidanceConfig) -> Result<Self, GuidanceError> {
        config.validate()?;
        let mut interruption = config.interruption_tokens.clone();
        interruption.sort_unstable();
        interruption.dedup();
        let checkpoints_remaining = match config.mode {
            GuidanceMode::FreeForm => {
                freeform_checkpoints(config.freeform_target_tokens.unwrap_or(1), config.checkpoint_bounds)
            }
            GuidanceMode::Sectioned => Vec::new(),
        };
        let title = match config.mode {
            GuidanceMode::Sectioned if config.total_sections > 1 => config.title_template.title(2).map(SeqMatcher::new),
            _ => None,
        };
        let recent_cap = config.banned_phrases.iter().map(|p| p.len() - 1).max().unwrap_or(0);
        let state = GenerationState {
            section: 1,
            section_tokens: 0,
            step: 0,
            waiting: false,
            title_cursor: None,
            banned_suffix_len: 0,
            end_marker_cursor: 0,
            end_marker_done: config.end_marker.is_empty(),
            finished: false,
            boundaries: Vec::new(),
            checkpoints_remaining,
            last_token: None,
        };
        Ok(GuidanceSession {
            end_marker: SeqMatcher::new(config.end_marker.clone()),
            config,
            state,
            title,
            recent: VecDeque::with_capacity(recent_cap),
            recent_cap,
            interruption,
            pending: Vec::new(),
        })
    }

    pub fn config(&self) -> &GuidanceConfig {
        &self.config
    }

    pub fn state(&self) -> &GenerationState {
        &self.state
    }

    pub fn is_finished(&self) -> bool {
        self.state.finished
    }

    fn is_interruption(&self, token: TokenId) -> bool {
        self.interruption.binary_search(&token).is_ok()
    }

    /// Soft trigger (budget reached and `last` is a natural break) or hard trigger
    /// (budget plus grace reached). In free-form mode the next checkpoint stands in for the budget.
    pub fn struct_condition(&self, last: Option<TokenId>) -> bool {
        let s = &self.state;
        let (progress, budget) = match self.config.mode {
            GuidanceMode::Sectioned => (s.section_tokens, self.config.section_token_budget),
            GuidanceMode::FreeForm => match s.checkpoints_remaining.first() {
                Some(&cp) => (s.step, cp),
                None => return false,
            },
        };
        let natural = last.is_some_and(|t| self.is_interruption(t));
        (progress >= budget && natural) || progress >= budget + self.config.grace
    }

    fn trigger_event(&self) -> Event {
        if self.state.last_token.is_some_and(|t| self.is_interruption(t)) {
            Event::SoftTrigger
        } else {
            Event::HardTrigger
        }
    }

    /// Structural boost for the next token, ignoring the failure mask.
    pub fn struct_adjust(&self) -> LogitAdjustment {
        let s = &self.state;
        let mut adj = LogitAdjustment::default();
        if s.finished {
            return adj;
        }
        let boost = Bias::Add(self.config.boost);
        match self.config.mode {
            GuidanceMode::Sectioned => {
                let Some(title) = self.title.as_ref() else {
                    return adj;
                };
                if title.matched() > 0 {
                    if s.section_tokens >= self.config.section_token_budget {
                        adj.entries.push((title.expected().expect("cursor inside title"), boost));
                        adj.events.push(Event::TitleInProgress);
                    }
                } else if self.struct_condition(s.last_token) {
                    adj.entries.push((title.pattern()[0], boost));
                    adj.events.push(self.trigger_event());
                }
            }
            GuidanceMode::FreeForm => {
                if self.struct_condition(s.last_token) {
                    adj.entries = self.interruption.iter().map(|&t| (t, boost)).collect();
                    adj.events.push(self.trigger_event());
                }
            }
        }
        adj
    }

    fn eos_masked(&self) -> bool {
        let s = &self.state;
        match self.config.mode {
            GuidanceMode::Sectioned => s.section < self.config.total_sections || !s.end_marker_done,
            GuidanceMode::FreeForm => s.step < self.config.freeform_target_tokens.unwrap_or(0),
        }
    }

    /// EOS ban plus a mask on every token that would complete a banned phrase.
    pub fn fail_mask(&self) -> LogitAdjustment {
        let mut adj = LogitAdjustment::default();
        if self.state.finished {
            return adj;
        }
        let mut masked = Vec::new();
        if self.eos_masked() {
            masked.push(self.config.eos_token);
        } else {
            adj.events.push(Event::EosUnbanned);
        }
        for phrase in &self.config.banned_phrases {
            let (head, last) = phrase.split_at(phrase.len() - 1);
            if self.recent_ends_with(head) {
                masked.push(last[0]);
            }
        }
        masked.sort_unstable();
        masked.dedup();
        adj.entries = masked.into_iter().map(|t| (t, Bias::Mask)).collect();
        adj
    }

    fn recent_ends_with(&self, head: &[TokenId]) -> bool {
        head.len() <= self.recent.len() && self.recent.iter().rev().zip(head.iter().rev()).all(|(a, b)| a == b)
    }

    fn banned_suffix_len(&self) -> usize {
        self.config
            .banned_phrases
            .iter()
            .flat_map(|p| (1..p.len()).rev().find(|&k| self.recent_ends_with(&p[..k])))
            .max()
            .unwrap_or(0)
    }

    /// Records a token the runtime emitted.
    pub fn observe(&mut self, token: TokenId) -> Result<(), GuidanceError> {
        if self.state.finished {
            return Err(GuidanceError::SessionClosed);
        }
        let was_triggered = self.struct_condition(self.state.last_token);
        let s = &mut self.state;
        s.step += 1;
        s.section_tokens += 1;
        s.last_token = Some(token);
        if token == self.config.eos_token {
            s.finished = true;
            s.waiting = false;
            s.title_cursor = None;
            s.boundaries.push(Boundary { section: s.section, step: s.step });
            return Ok(());
        }

        if self.recent_cap > 0 {
            if self.recent.len() == self.recent_cap {
                self.recent.pop_front();
            }
            self.recent.push_back(token);
        }
        let marker_done = self.end_marker.advance(token);

        match self.config.mode {
            GuidanceMode::Sectioned => {
                let total = self.config.total_sections;
                if marker_done && self.state.section == total {
                    self.state.end_marker_done = true;
                }
                let title_done = self.title.as_mut().is_some_and(|m| m.advance(token));
                if title_done {
                    self.close_section();
                    self.title = if self.state.section < total {
                        self.config.title_template.title(self.state.section + 1).map(SeqMatcher::new)
                    } else {
                        None
                    };
                }
                let cursor = self.title.as_ref().map_or(0, |m| m.matched());
                self.state.title_cursor = (cursor > 0).then_some(cursor);
                self.state.waiting = self.title.is_some()
                    && cursor == 0
                    && self.state.section_tokens >= self.config.section_token_budget;
            }
            GuidanceMode::FreeForm => {
                if was_triggered && self.is_interruption(token) {
                    self.state.checkpoints_remaining.remove(0);
                    self.close_section();
                }
                self.state.waiting = self.state.checkpoints_remaining.first().is_some_and(|&cp| self.state.step >= cp);
            }
        }
        self.state.end_marker_cursor = self.end_marker.matched();
        self.state.banned_suffix_len = self.banned_suffix_len();
        Ok(())
    }

    fn close_section(&mut self) {
        let s = &mut self.state;
        s.boundaries.push(Boundary { section: s.section, step: s.step });
        s.section += 1;
        s.section_tokens = 0;
        s.waiting = false;
        self.pending.push(Event::SectionAdvanced);
    }

    /// Observes `last` (None at the start of generation) and returns the adjustment for the next token.
    ///
    /// If `last` ends the generation the returned adjustment is empty and the session is finished.
    pub fn step(&mut self, last: Option<TokenId>) -> Result<LogitAdjustment, GuidanceError> {
        if self.state.finished {
            return Err(GuidanceError::SessionClosed);
        }
        if let Some(token) = last {
            self.observe(token)?;
        }
        let mut events = std::mem::take(&mut self.pending);
        if self.state.finished {
            return Ok(LogitAdjustment { entries: Vec::new(), events });
        }
        let structural = self.struct_adjust();
        let failure = self.fail_mask();
        let mut merged: BTreeMap<TokenId, Bias> = structural.entries.into_iter().collect();
        merged.extend(failure.entries);
        events.extend(structural.events);
        events.extend(failure.events);
        Ok(LogitAdjustment { entries: merged.into_iter().collect(), events })
    }
}
