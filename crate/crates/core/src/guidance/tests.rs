use proptest::prelude::*;

use super::*;
use crate::TokenId;

const EOS: TokenId = 0;
const DOT: TokenId = 1;
const NL: TokenId = 2;
const NL2: TokenId = 3;
const HASH: TokenId = 10;
const COLON: TokenId = 11;
const WORD: TokenId = 30;
const END: [TokenId; 2] = [40, 41];
const BANNED: [TokenId; 3] = [50, 51, 52];
const ALWAYS_BANNED: TokenId = 53;

fn digits() -> [TokenId; 10] {
    std::array::from_fn(|i| 20 + i as TokenId)
}

fn config(total: usize, budget: usize, grace: usize) -> GuidanceConfig {
    GuidanceConfig::sectioned(
        total,
        budget,
        EOS,
        vec![DOT, NL, NL2],
        TitleTemplate::Numbered { prefix: vec![HASH], digits: digits(), suffix: vec![COLON] },
        END.to_vec(),
    )
    .with_grace(grace)
    .with_banned_phrases(vec![BANNED.to_vec(), vec![ALWAYS_BANNED]])
}

fn title(p: usize) -> Vec<TokenId> {
    vec![HASH, 20 + p as TokenId, COLON]
}

fn feed(session: &mut GuidanceSession, tokens: &[TokenId]) -> LogitAdjustment {
    let mut adj = session.step(None).unwrap();
    for &t in tokens {
        adj = session.step(Some(t)).unwrap();
    }
    adj
}

#[test]
fn fresh_session_starts_at_section_one() {
    let s = GuidanceSession::new(config(5, 200, 100)).unwrap();
    let st = s.state();
    assert_eq!((st.section, st.section_tokens, st.step), (1, 0, 0));
    assert!(!st.waiting && st.title_cursor.is_none() && !st.finished);
}

#[test]
fn zero_budget_is_rejected() {
    let err = GuidanceSession::new(config(5, 0, 100)).unwrap_err();
    assert!(matches!(err, GuidanceError::InvalidConfig { field: "section_token_budget", .. }));
}

#[test]
fn free_form_precomputes_checkpoints() {
    let s = GuidanceSession::new(GuidanceConfig::free_form(2000, EOS, vec![DOT])).unwrap();
    assert_eq!(s.state().checkpoints_remaining, vec![400, 800, 1200, 1600, 2000]);
}

#[test]
fn start_sentinel_gives_eos_ban_only() {
    let mut s = GuidanceSession::new(config(3, 4, 10)).unwrap();
    let adj = s.step(None).unwrap();
    assert_eq!(adj.entries, vec![(EOS, Bias::Mask), (ALWAYS_BANNED, Bias::Mask)]);
    assert!(adj.events.is_empty());
}

#[test]
fn soft_and_hard_conditions() {
    let mut s = GuidanceSession::new(config(3, 4, 10)).unwrap();
    feed(&mut s, &[WORD; 4]);
    assert!(s.struct_condition(Some(DOT)));
    assert!(!s.struct_condition(Some(WORD)));
    assert!(s.state().waiting);
    let mut s = GuidanceSession::new(config(3, 4, 10)).unwrap();
    feed(&mut s, &[WORD; 14]);
    assert!(s.struct_condition(Some(WORD)));
}

#[test]
fn soft_trigger_boosts_first_title_token() {
    let mut s = GuidanceSession::new(config(3, 4, 10)).unwrap();
    let adj = feed(&mut s, &[WORD, WORD, WORD, DOT]);
    assert_eq!(adj.get(HASH), Some(Bias::Add(15.0)));
    assert!(adj.is_masked(EOS));
    assert!(adj.has_event(Event::SoftTrigger));
    assert_eq!(s.struct_adjust().entries, vec![(HASH, Bias::Add(15.0))]);
}

#[test]
fn title_cursor_boosts_next_expected_token() {
    let mut s = GuidanceSession::new(config(3, 4, 10)).unwrap();
    let adj = feed(&mut s, &[WORD, WORD, WORD, DOT, HASH]);
    assert_eq!(s.state().title_cursor, Some(1));
    assert_eq!(s.struct_adjust().entries, vec![(title(2)[1], Bias::Add(15.0))]);
    assert!(adj.has_event(Event::TitleInProgress));
}

#[test]
fn off_path_token_resets_cursor() {
    let mut s = GuidanceSession::new(config(3, 4, 10)).unwrap();
    feed(&mut s, &[WORD, WORD, WORD, DOT, HASH, HASH]);
    assert_eq!(s.state().title_cursor, Some(1));
    s.step(Some(WORD)).unwrap();
    assert_eq!(s.state().title_cursor, None);
}

#[test]
fn completed_title_advances_section() {
    let mut s = GuidanceSession::new(config(3, 4, 10)).unwrap();
    let mut history = vec![WORD, WORD, WORD, DOT];
    history.extend(title(2));
    let adj = feed(&mut s, &history);
    let st = s.state();
    assert_eq!((st.section, st.section_tokens), (2, 0));
    assert_eq!(st.boundaries, vec![Boundary { section: 1, step: 7 }]);
    assert!(adj.has_event(Event::SectionAdvanced));
    assert!(s.struct_adjust().entries.is_empty());
}

#[test]
fn condition_false_gives_empty_structural_part() {
    let mut s = GuidanceSession::new(config(3, 4, 10)).unwrap();
    feed(&mut s, &[WORD, WORD]);
    assert!(s.struct_adjust().entries.is_empty());
}

#[test]
fn final_section_waits_for_end_marker() {
    let mut s = GuidanceSession::new(config(2, 2, 10)).unwrap();
    let mut history = vec![WORD, DOT];
    history.extend(title(2));
    history.extend([WORD, WORD, DOT]);
    let adj = feed(&mut s, &history);
    assert_eq!(s.state().section, 2);
    assert!(adj.is_masked(EOS), "EOS stays banned in the final section until the marker");
    assert!(s.struct_adjust().entries.is_empty());
    let adj = feed(&mut s, &END);
    assert!(!adj.is_masked(EOS));
    assert!(adj.has_event(Event::EosUnbanned));
    let adj = s.step(Some(EOS)).unwrap();
    assert!(adj.entries.is_empty());
    assert!(s.is_finished());
    assert_eq!(s.state().boundaries.len(), 2);
    assert_eq!(s.step(Some(WORD)), Err(GuidanceError::SessionClosed));
    assert_eq!(s.observe(WORD), Err(GuidanceError::SessionClosed));
}

#[test]
fn end_marker_before_final_section_does_not_release_eos() {
    let mut s = GuidanceSession::new(config(3, 2, 10)).unwrap();
    let adj = feed(&mut s, &END);
    assert!(adj.is_masked(EOS));
    assert!(!s.state().end_marker_done);
}

#[test]
fn banned_phrase_completion_is_masked() {
    let mut s = GuidanceSession::new(config(3, 50, 10)).unwrap();
    let adj = feed(&mut s, &[WORD, BANNED[0], BANNED[1]]);
    assert!(adj.is_masked(BANNED[2]));
    assert!(!adj.is_masked(BANNED[1]));
    assert_eq!(s.state().banned_suffix_len, 2);
    let adj = s.step(Some(WORD)).unwrap();
    assert!(!adj.is_masked(BANNED[2]));
}

#[test]
fn mask_beats_boost_on_same_token() {
    let mut cfg = config(3, 2, 10);
    cfg.banned_phrases.push(vec![HASH]);
    let mut s = GuidanceSession::new(cfg).unwrap();
    let adj = feed(&mut s, &[WORD, DOT]);
    assert_eq!(adj.get(HASH), Some(Bias::Mask));
    assert_eq!(adj.entries.iter().filter(|(id, _)| *id == HASH).count(), 1);
}

#[test]
fn free_form_milestones_follow_checkpoints() {
    let mut cfg = GuidanceConfig::free_form(40, EOS, vec![DOT, NL]);
    cfg.checkpoint_bounds = CheckpointBounds { low: 8, high: 12 };
    cfg.grace = 5;
    let mut s = GuidanceSession::new(cfg).unwrap();
    assert_eq!(s.state().checkpoints_remaining, vec![10, 20, 30, 40]);
    let adj = feed(&mut s, &[WORD; 9]);
    assert!(adj.boosted().next().is_none());
    let adj = feed(&mut s, &[WORD; 6]);
    assert!(adj.has_event(Event::HardTrigger));
    assert_eq!(adj.boosted().collect::<Vec<_>>(), vec![DOT, NL]);
    let adj = s.step(Some(DOT)).unwrap();
    assert!(adj.has_event(Event::SectionAdvanced));
    assert_eq!(s.state().section, 2);
    assert_eq!(s.state().checkpoints_remaining, vec![20, 30, 40]);
    assert!(adj.is_masked(EOS));
    let adj = feed(&mut s, &[WORD; 30]);
    assert!(!adj.is_masked(EOS));
}

#[test]
fn free_form_soft_trigger_needs_a_second_break() {
    let mut cfg = GuidanceConfig::free_form(100, EOS, vec![DOT, NL]);
    cfg.checkpoint_bounds = CheckpointBounds { low: 8, high: 12 };
    let mut s = GuidanceSession::new(cfg).unwrap();
    feed(&mut s, &[WORD; 10]);
    let adj = s.step(Some(DOT)).unwrap();
    assert!(adj.has_event(Event::SoftTrigger));
    assert_eq!(s.state().section, 1);
    s.step(Some(NL)).unwrap();
    assert_eq!(s.state().section, 2);
}

// Property harness: histories are produced by a sampler that honours masks and
// follows boosts with high probability, so sections actually advance.

const VOCAB: [TokenId; 20] = [EOS, DOT, NL, NL2, HASH, COLON, 21, 22, 23, 24, WORD, 31, 32, 33, 40, 41, 50, 51, 52, 53];

struct Trace {
    before: Vec<GenerationState>,
    adjustments: Vec<LogitAdjustment>,
    final_state: GenerationState,
}

fn drive(cfg: &GuidanceConfig, script: &[(u8, usize)]) -> Trace {
    let mut s = GuidanceSession::new(cfg.clone()).unwrap();
    let mut last = None;
    let mut before = Vec::new();
    let mut adjustments = Vec::new();
    for &(follow, pick) in script {
        let adj = s.step(last).unwrap();
        if s.is_finished() {
            break;
        }
        before.push(s.state().clone());
        let boosted: Vec<_> = adj.boosted().collect();
        let token = if follow < 220 && !boosted.is_empty() {
            boosted[pick % boosted.len()]
        } else {
            let allowed: Vec<_> = VOCAB.iter().copied().filter(|&t| !adj.is_masked(t)).collect();
            allowed[pick % allowed.len()]
        };
        adjustments.push(adj);
        last = Some(token);
    }
    Trace { before, adjustments, final_state: s.state().clone() }
}

fn arb_case() -> impl Strategy<Value = (GuidanceConfig, Vec<(u8, usize)>)> {
    (1usize..5, 1usize..8, 0usize..8, proptest::collection::vec((any::<u8>(), any::<usize>()), 0..120))
        .prop_map(|(total, budget, grace, script)| (config(total, budget, grace), script))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn no_boost_before_budget((cfg, script) in arb_case()) {
        let trace = drive(&cfg, &script);
        for (st, adj) in trace.before.iter().zip(&trace.adjustments) {
            if st.section_tokens < cfg.section_token_budget {
                prop_assert!(adj.boosted().next().is_none(), "boost at tau={}", st.section_tokens);
            }
        }
    }

    #[test]
    fn boost_present_by_budget_plus_grace((cfg, script) in arb_case()) {
        let trace = drive(&cfg, &script);
        for (st, adj) in trace.before.iter().zip(&trace.adjustments) {
            if st.section < cfg.total_sections
                && st.section_tokens >= cfg.section_token_budget + cfg.grace
            {
                prop_assert!(adj.boosted().next().is_some());
            }
        }
    }

    #[test]
    fn eos_masked_iff_plan_incomplete((cfg, script) in arb_case()) {
        let trace = drive(&cfg, &script);
        for (st, adj) in trace.before.iter().zip(&trace.adjustments) {
            let done = st.section == cfg.total_sections && st.end_marker_done;
            prop_assert_eq!(adj.is_masked(EOS), !done);
            if st.section < cfg.total_sections {
                prop_assert!(adj.is_masked(EOS));
            }
        }
    }

    #[test]
    fn identical_streams_identical_adjustments((cfg, script) in arb_case()) {
        let a = drive(&cfg, &script);
        let b = drive(&cfg, &script);
        prop_assert_eq!(a.adjustments, b.adjustments);
        prop_assert_eq!(a.final_state, b.final_state);
    }

    #[test]
    fn boosted_token_wins_argmax(
        (cfg, script) in arb_case(),
        logits in proptest::collection::vec(-5.0f32..=5.0, 60),
    ) {
        let trace = drive(&cfg, &script);
        for adj in &trace.adjustments {
            let boosted: Vec<_> = adj.boosted().collect();
            if boosted.len() != 1 {
                continue;
            }
            let mut l = logits.clone();
            adj.apply(&mut l);
            let argmax = (0..l.len()).fold(0, |best, i| if l[i] > l[best] { i } else { best });
            prop_assert_eq!(argmax as TokenId, boosted[0]);
        }
    }

    #[test]
    fn adjustment_stays_sparse((cfg, script) in arb_case()) {
        let trace = drive(&cfg, &script);
        let banned_next: std::collections::BTreeSet<_> =
            cfg.banned_phrases.iter().map(|p| *p.last().unwrap()).collect();
        let bound = cfg.interruption_tokens.len() + banned_next.len() + 2;
        for adj in &trace.adjustments {
            prop_assert!(adj.entries.len() <= bound);
            let mut ids: Vec<_> = adj.entries.iter().map(|e| e.0).collect();
            ids.dedup();
            prop_assert_eq!(ids.len(), adj.entries.len());
        }
    }

    #[test]
    fn boundaries_track_sections((cfg, script) in arb_case()) {
        let trace = drive(&cfg, &script);
        let st = &trace.final_state;
        prop_assert_eq!(st.boundaries.len(), st.section - 1 + usize::from(st.finished));
        prop_assert!(st.section >= 1 && st.section <= cfg.total_sections);
        prop_assert!(st.boundaries.windows(2).all(|w| w[0].step < w[1].step));
        for w in trace.before.windows(2) {
            if w[1].section > w[0].section {
                prop_assert_eq!(w[1].section_tokens, 0);
            }
        }
    }
}

#[test]
fn banned_phrases_never_complete_exhaustive() {
    // Every stream over a 4-token alphabet up to length 9 that honours the masks.
    let cfg = GuidanceConfig::sectioned(1, 100, 99, vec![0], TitleTemplate::Table { titles: vec![] }, vec![])
        .with_banned_phrases(vec![vec![1, 2, 1], vec![2, 2], vec![3, 1, 1, 3]]);

    fn walk(
        s: GuidanceSession,
        adj: LogitAdjustment,
        stream: &mut Vec<TokenId>,
        phrases: &[Vec<TokenId>],
        count: &mut usize,
    ) {
        for p in phrases {
            assert!(!stream.windows(p.len()).any(|w| w == p.as_slice()), "{stream:?} contains {p:?}");
        }
        *count += 1;
        if stream.len() == 9 {
            return;
        }
        for t in 0..4 {
            if adj.is_masked(t) {
                continue;
            }
            let mut next = s.clone();
            let next_adj = next.step(Some(t)).unwrap();
            stream.push(t);
            walk(next, next_adj, stream, phrases, count);
            stream.pop();
        }
    }

    let mut s = GuidanceSession::new(cfg.clone()).unwrap();
    let adj = s.step(None).unwrap();
    let mut count = 0;
    walk(s, adj, &mut Vec::new(), &cfg.banned_phrases, &mut count);
    assert!(count > 10_000);
}
