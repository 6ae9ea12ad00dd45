use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::vocab::*;
use super::ToyError;
use crate::TokenId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureMode {
    None,
    /// EOS logit climbs linearly with the step count.
    EosRamp,
    /// Repeats the token from `loop_window` steps back once a section runs long.
    Loop,
    /// Header numbers drift toward the final section after `skip_after_section`.
    Skip,
    /// Opens each section with the filler phrase, which it likes to end on.
    Filler,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToyConfig {
    pub failure_mode: FailureMode,
    pub ramp_slope: f32,
    pub ramp_start: usize,
    pub loop_window: usize,
    pub loop_bonus: f32,
    /// Tokens into a section before the loop bonus kicks in.
    pub loop_onset: usize,
    pub skip_after_section: usize,
    pub skip_bonus: f32,
    pub filler_bonus: f32,
    /// Zero selects argmax decoding.
    pub base_temperature: f32,
    /// Sampling seed.
    pub seed: u64,
    /// Seed of the content transition table, i.e. which "model" this is.
    pub table_seed: u64,
    /// Number of sections the model is asked for.
    pub target_sections: usize,
    /// Section length the model drifts toward when left alone.
    pub natural_section_len: usize,
    /// Tokens the model writes in the final section before closing the document.
    pub finale_len: usize,
}

impl Default for ToyConfig {
    fn default() -> Self {
        ToyConfig {
            failure_mode: FailureMode::None,
            ramp_slope: 0.02,
            ramp_start: 0,
            loop_window: 3,
            loop_bonus: 6.0,
            loop_onset: 48,
            skip_after_section: 10,
            skip_bonus: 8.0,
            filler_bonus: 6.0,
            base_temperature: 1.0,
            seed: 0,
            table_seed: 7,
            target_sections: 100,
            natural_section_len: 60,
            finale_len: 12,
        }
    }
}

impl ToyConfig {
    pub fn with_mode(mut self, mode: FailureMode) -> Self {
        self.failure_mode = mode;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_target_sections(mut self, n: usize) -> Self {
        self.target_sections = n;
        self
    }

    pub fn validate(&self) -> Result<(), ToyError> {
        let bad = |field: &'static str| Err(ToyError::InvalidConfig { field });
        if !(self.ramp_slope.is_finite() && self.ramp_slope >= 0.0) {
            return bad("ramp_slope");
        }
        if self.loop_window == 0 {
            return bad("loop_window");
        }
        if self.skip_after_section == 0 {
            return bad("skip_after_section");
        }
        if !(self.base_temperature.is_finite() && self.base_temperature >= 0.0) {
            return bad("base_temperature");
        }
        if self.target_sections == 0 {
            return bad("target_sections");
        }
        Ok(())
    }
}

pub const BASE_EOS_LOGIT: f32 = -10.0;
const FLOOR: f32 = -12.0;
const CONTINUE: f32 = 10.0;
const NUMBER_FOLLOW: f32 = 6.0;
const START_ROW: usize = CONTENT_COUNT;

#[derive(Clone, Debug, PartialEq, Eq)]
enum HeaderPhase {
    Idle,
    Mark,
    Word,
    Space,
    Digits(String),
}

/// What the toy model has written so far, as far as its own logits care.
#[derive(Clone, Debug)]
pub struct ToyState {
    history: Vec<TokenId>,
    steps: usize,
    since_header: usize,
    last_label: usize,
    phase: HeaderPhase,
    target_sections: usize,
}

impl ToyState {
    pub fn new(target_sections: usize) -> Self {
        ToyState {
            history: Vec::new(),
            steps: 0,
            since_header: 0,
            last_label: 0,
            phase: HeaderPhase::Idle,
            target_sections,
        }
    }

    /// Appends prompt-side tokens that do not count as generation steps.
    pub fn prime(&mut self, tokens: &[TokenId]) {
        for &t in tokens {
            self.track(t);
        }
    }

    /// Appends a generated token.
    pub fn push(&mut self, token: TokenId) {
        self.steps += 1;
        self.track(token);
    }

    fn track(&mut self, token: TokenId) {
        self.history.push(token);
        self.since_header += 1;
        let phase = std::mem::replace(&mut self.phase, HeaderPhase::Idle);
        self.phase = match (phase, token) {
            (_, HEADER_MARK) => HeaderPhase::Mark,
            (HeaderPhase::Mark, CHAPTER) => HeaderPhase::Word,
            (HeaderPhase::Word, SPACE) => HeaderPhase::Space,
            (HeaderPhase::Space, t) if is_digit(t) => HeaderPhase::Digits(digit_char(t).to_string()),
            (HeaderPhase::Digits(mut s), t) if is_digit(t) => {
                s.push(digit_char(t));
                HeaderPhase::Digits(s)
            }
            (HeaderPhase::Digits(s), COLON) => {
                self.last_label = s.parse().unwrap_or(self.last_label);
                self.since_header = 0;
                HeaderPhase::Idle
            }
            _ => HeaderPhase::Idle,
        };
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn history(&self) -> &[TokenId] {
        &self.history
    }

    /// Number in the most recent complete header the model has written or been given.
    pub fn last_label(&self) -> usize {
        self.last_label
    }

    fn in_final_section(&self) -> bool {
        self.last_label >= self.target_sections
    }
}

fn digit_char(t: TokenId) -> char {
    char::from(b'0' + (t - DIGIT_0) as u8)
}

/// Toy language model: an order-1 content table plus scripted structure and failure perturbations.
#[derive(Clone, Debug)]
pub struct ToyModel {
    config: ToyConfig,
    vocab: ToyVocab,
    table: Vec<[f32; CONTENT_COUNT]>,
}

impl ToyModel {
    pub fn new(config: ToyConfig) -> Result<Self, ToyError> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.table_seed);
        let table = (0..=CONTENT_COUNT).map(|_| std::array::from_fn(|_| rng.random_range(-3.0f32..=3.0))).collect();
        Ok(ToyModel { config, vocab: ToyVocab::new(), table })
    }

    pub fn config(&self) -> &ToyConfig {
        &self.config
    }

    pub fn vocab(&self) -> &ToyVocab {
        &self.vocab
    }

    pub fn new_state(&self) -> ToyState {
        ToyState::new(self.config.target_sections)
    }

    /// Dense logits for the next token.
    pub fn logits(&self, state: &ToyState) -> Vec<f32> {
        let cfg = &self.config;
        let mut l = vec![FLOOR; self.vocab.len()];
        l[EOS as usize] = BASE_EOS_LOGIT;
        let last = state.history.last().copied();
        let at = |id: TokenId| id as usize;

        match &state.phase {
            HeaderPhase::Mark => l[at(CHAPTER)] = CONTINUE,
            HeaderPhase::Word => l[at(SPACE)] = CONTINUE,
            HeaderPhase::Space | HeaderPhase::Digits(_) => self.number_logits(state, &mut l),
            HeaderPhase::Idle => match last {
                Some(STARS) => l[at(FINISHED)] = CONTINUE,
                Some(FINISHED) => l[at(CLOSING_STARS)] = CONTINUE,
                Some(CLOSING_STARS) => l[at(EOS)] = CONTINUE + 2.0,
                _ => self.text_logits(state, last, &mut l),
            },
        }

        match cfg.failure_mode {
            FailureMode::EosRamp => {
                l[at(EOS)] += cfg.ramp_slope * state.steps.saturating_sub(cfg.ramp_start) as f32;
            }
            FailureMode::Loop => {
                let h = &state.history;
                if state.since_header >= cfg.loop_onset && h.len() >= cfg.loop_window {
                    l[at(h[h.len() - cfg.loop_window])] += cfg.loop_bonus;
                }
            }
            FailureMode::Filler if last == Some(COLON) && state.phase == HeaderPhase::Idle => {
                l[at(FILLER_I)] += cfg.filler_bonus;
            }
            _ => {}
        }
        l
    }

    fn text_logits(&self, state: &ToyState, last: Option<TokenId>, l: &mut [f32]) {
        let cfg = &self.config;
        let row = match last {
            Some(t) if is_content(t) => (t - FIRST_CONTENT) as usize,
            _ => START_ROW,
        };
        for (i, &v) in self.table[row].iter().enumerate() {
            l[FIRST_CONTENT as usize + i] = v;
        }
        let finale = state.in_final_section() && state.since_header >= cfg.finale_len;
        let long_section = state.since_header >= cfg.natural_section_len;
        let at = |id: TokenId| id as usize;
        match last {
            Some(t) if is_content(t) => {
                l[at(PERIOD)] = 3.5;
                l[at(NEWLINE)] = -2.0;
            }
            Some(PERIOD) => {
                l[at(NEWLINE)] = if finale {
                    4.0
                } else if long_section {
                    3.0
                } else {
                    -1.0
                };
                l[at(PARAGRAPH)] = -2.0;
            }
            Some(NEWLINE) | Some(PARAGRAPH) => {
                l[at(HEADER_MARK)] = if state.in_final_section() {
                    FLOOR
                } else if long_section {
                    6.0
                } else {
                    -3.0
                };
                if finale {
                    l[at(STARS)] = CONTINUE;
                }
            }
            Some(COLON) => {
                l[at(FILLER_I)] = if cfg.failure_mode == FailureMode::Filler { 0.0 } else { -8.0 };
            }
            Some(FILLER_I) => l[at(FILLER_HOPE)] = 8.0,
            Some(FILLER_HOPE) => l[at(FILLER_THESE)] = 8.0,
            Some(FILLER_THESE) => l[at(EOS)] = 8.0,
            _ => {}
        }
    }

    /// Digits and colon of a header number. The model aims for the next section,
    /// and in skip mode also for the final one.
    fn number_logits(&self, state: &ToyState, l: &mut [f32]) {
        let cfg = &self.config;
        let prefix = match &state.phase {
            HeaderPhase::Digits(s) => s.as_str(),
            _ => "",
        };
        for d in 0..10 {
            l[digit(d) as usize] = -2.0;
        }
        if !prefix.is_empty() {
            l[COLON as usize] = -2.0;
        }
        let next = state.last_label + 1;
        let mut goals = vec![(next, NUMBER_FOLLOW)];
        if cfg.failure_mode == FailureMode::Skip
            && state.last_label >= cfg.skip_after_section
            && cfg.target_sections > next
        {
            goals.push((cfg.target_sections, cfg.skip_bonus));
        }
        let mut on_track = false;
        for (number, bonus) in goals {
            let s = number.to_string();
            if let Some(rest) = s.strip_prefix(prefix) {
                on_track = true;
                match rest.bytes().next() {
                    Some(b) => l[digit(b - b'0') as usize] += bonus,
                    None => l[COLON as usize] += bonus,
                }
            }
        }
        // A garbled number gets closed rather than extended.
        if !on_track {
            l[COLON as usize] += NUMBER_FOLLOW;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state_after(model: &ToyModel, prefix: &[TokenId], generated: &[TokenId]) -> ToyState {
        let mut s = model.new_state();
        s.prime(prefix);
        for &t in generated {
            s.push(t);
        }
        s
    }

    #[test]
    fn eos_ramp_is_linear_in_steps() {
        let cfg = ToyConfig::default().with_mode(FailureMode::EosRamp);
        let model = ToyModel::new(cfg).unwrap();
        let word = FIRST_CONTENT;
        let s = state_after(&model, &[], &vec![word; 1000]);
        let l = model.logits(&s);
        assert!((l[EOS as usize] - 10.0).abs() < 1e-4, "{}", l[EOS as usize]);
    }

    #[test]
    fn eos_stays_at_base_without_failure_mode() {
        let model = ToyModel::new(ToyConfig::default()).unwrap();
        for n in [0, 10, 5000] {
            let s = state_after(&model, &[], &vec![FIRST_CONTENT + 1; n]);
            assert_eq!(model.logits(&s)[EOS as usize], BASE_EOS_LOGIT);
        }
    }

    #[test]
    fn loop_bonus_targets_token_k_back() {
        let cfg = ToyConfig { loop_onset: 0, ..ToyConfig::default() };
        let plain = ToyModel::new(cfg.clone()).unwrap();
        let looping = ToyModel::new(cfg.with_mode(FailureMode::Loop)).unwrap();
        let generated = [FIRST_CONTENT + 5, FIRST_CONTENT + 6, FIRST_CONTENT + 7];
        let a = plain.logits(&state_after(&plain, &[], &generated));
        let b = looping.logits(&state_after(&looping, &[], &generated));
        let target = (FIRST_CONTENT + 5) as usize;
        assert!((b[target] - a[target] - 6.0).abs() < 1e-6);
        let diff = a.iter().zip(&b).filter(|(x, y)| x != y).count();
        assert_eq!(diff, 1);
    }

    #[test]
    fn header_state_tracks_labels() {
        let model = ToyModel::new(ToyConfig::default()).unwrap();
        let v = model.vocab();
        let s = state_after(&model, &v.title(1), &v.title(27));
        assert_eq!(s.last_label(), 27);
        assert_eq!(s.steps(), v.title(27).len());
    }

    #[test]
    fn skip_mode_pulls_header_toward_final_number() {
        let cfg = ToyConfig { skip_after_section: 3, ..ToyConfig::default() }
            .with_mode(FailureMode::Skip)
            .with_target_sections(40);
        let model = ToyModel::new(cfg).unwrap();
        let v = model.vocab();
        let mut prefix = v.title(3);
        prefix.extend(&v.title(3)[..4]);
        let s = state_after(&model, &prefix, &[]);
        let l = model.logits(&s);
        assert_eq!(l[digit(4) as usize], -2.0 + 6.0 + 8.0);
        let s = state_after(&model, &v.title(2), &v.title(3)[..4]);
        assert_eq!(model.logits(&s)[digit(3) as usize], -2.0 + 6.0);
    }

    #[test]
    fn invalid_config_names_field() {
        let cfg = ToyConfig { loop_window: 0, ..ToyConfig::default() };
        assert!(matches!(ToyModel::new(cfg), Err(ToyError::InvalidConfig { field: "loop_window" })));
    }
}
