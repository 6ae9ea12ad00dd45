use serde_json::{json, Value};

use super::*;
use crate::guidance::{Bias, LogitAdjustment};
use crate::toy::{vocab::EOS, ToyVocab};

fn init_line(total: usize, budget: usize) -> String {
    let config = ToyVocab::new().guidance_config(total, budget);
    serde_json::to_string(&Request::Init { config: Box::new(config), tokens: TokenTable::default() }).unwrap()
}

fn exchange(lines: &[String]) -> Vec<Value> {
    let input = lines.join("\n") + "\n";
    let mut out = Vec::new();
    serve(input.as_bytes(), &mut out, 7).unwrap();
    String::from_utf8(out).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn first_step_masks_eos_with_sentinel() {
    let r = exchange(&[init_line(3, 10), r#"{"type":"step","last_token_id":null}"#.into()]);
    assert_eq!(r[0], json!({"type": "ready", "session_id": 7}));
    assert_eq!(r[1]["type"], "adjust");
    let entries = r[1]["entries"].as_array().unwrap();
    assert!(entries.contains(&json!([EOS, "-inf"])), "{entries:?}");
}

#[test]
fn step_before_init_tears_down() {
    let r = exchange(&[r#"{"type":"step","last_token_id":null}"#.into(), init_line(3, 10)]);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0]["type"], "error");
    assert_eq!(r[0]["code"], "not_initialized");
}

#[test]
fn malformed_line_keeps_session() {
    let r = exchange(&[
        init_line(3, 10),
        "{not json".into(),
        r#"{"type":"teleport"}"#.into(),
        r#"{"type":"step","last_token_id":null}"#.into(),
        r#"{"type":"close"}"#.into(),
    ]);
    let kinds: Vec<&str> = r.iter().map(|v| v["type"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["ready", "error", "error", "adjust", "done"]);
    assert_eq!(r[1]["code"], "malformed");
}

#[test]
fn second_init_is_an_order_violation() {
    let r = exchange(&[init_line(3, 10), init_line(3, 10), r#"{"type":"close"}"#.into()]);
    assert_eq!(r.len(), 2);
    assert_eq!(r[1]["code"], "already_initialized");
}

#[test]
fn invalid_config_leaves_connection_waiting() {
    let bad = init_line(0, 10);
    let r = exchange(&[bad, init_line(3, 10)]);
    assert_eq!(r[0]["code"], "invalid_config");
    assert_eq!(r[1]["type"], "ready");
}

#[test]
fn token_table_overrides_config() {
    let mut config = ToyVocab::new().guidance_config(2, 5);
    let table = TokenTable { end_marker: Some(vec![40, 41]), banned_phrases: Some(vec![]), title_template: None };
    table.apply(&mut config);
    assert_eq!(config.end_marker, vec![40, 41]);
    assert!(config.banned_phrases.is_empty());
}

#[test]
fn wire_entries_round_trip() {
    let adj =
        LogitAdjustment { entries: vec![(0, Bias::Mask), (5, Bias::Add(15.0)), (9, Bias::Add(-0.1))], events: vec![] };
    let line = Response::adjust(&adj).to_line();
    assert!(line.contains(r#"[0,"-inf"]"#), "{line}");
    let back: Response = serde_json::from_str(&line).unwrap();
    assert_eq!(back.into_adjustment().unwrap(), adj);
    assert!(serde_json::from_str::<WireEntry>(r#"[1,"+inf"]"#).is_err());
}
