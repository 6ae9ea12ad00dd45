use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::process::{Command, Output, Stdio};

use longform_core::attention::AttentionTrace;
use serde_json::Value;

fn longform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_longform")).args(args).output().expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8(out.stdout.clone()).unwrap().lines().map(str::to_string).collect()
}

#[test]
fn expand_is_a_cartesian_product() {
    let out = longform(&[
        "expand",
        "--tasks",
        "story,diary",
        "--languages",
        "EN,CH",
        "--complexity",
        "simple",
        "--scales",
        "5,10,20",
    ]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 12);
    let first: Value = serde_json::from_str(&lines[0]).unwrap();
    assert!(first["id"].as_str().unwrap().starts_with("story-"));
}

#[test]
fn expand_rejects_unknown_task() {
    let out = longform(&["expand", "--tasks", "poem"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("poem"));
}

#[test]
fn run_then_summarize_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("runs.jsonl");
    let store = store.to_str().unwrap();
    let common = ["--tasks", "story", "--languages", "EN", "--complexity", "simple", "--scales", "5"];
    let mut args = vec!["run"];
    args.extend(common);
    args.extend([
        "--words-per-section",
        "30",
        "--n",
        "3",
        "--guidance",
        "both",
        "--toy-mode",
        "eos-ramp",
        "--store",
        store,
    ]);
    let out = longform(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_lines(&out).len(), 2);
    assert_eq!(std::fs::read_to_string(store).unwrap().lines().count(), 6);

    let summary = longform(&["summarize", "--store", store]);
    assert!(summary.status.success());
    let rows: Vec<Value> = stdout_lines(&summary).iter().map(|l| serde_json::from_str(l).unwrap()).collect();
    let guided = rows.iter().find(|r| r["guided"] == true).unwrap();
    assert_eq!(guided["mean_sections"], 5.0);
    assert_eq!(guided["fsd"], 0.0);
    // Summaries are a pure function of the store.
    assert_eq!(longform(&["summarize", "--store", store]).stdout, summary.stdout);

    let plot = dir.path().join("plot.jsonl");
    let report = longform(&["report", "--store", store, "--format", "csv", "--plot", plot.to_str().unwrap()]);
    assert!(report.status.success());
    let csv = stdout_lines(&report);
    assert!(csv[0].starts_with(
        "spec_id,task,language,complexity,engine,guided,runs,failed_runs,target_words,lsd,mean_length,lvc,mla,fsd"
    ));
    assert_eq!(csv.len(), 3);
    assert_eq!(std::fs::read_to_string(plot).unwrap().lines().count(), 2);
}

#[test]
fn tampered_store_fails_summarize() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("runs.jsonl");
    let store_s = store.to_str().unwrap();
    let out = longform(&[
        "run",
        "--tasks",
        "story",
        "--languages",
        "EN",
        "--complexity",
        "simple",
        "--scales",
        "5",
        "--words-per-section",
        "20",
        "--n",
        "1",
        "--store",
        store_s,
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&store).unwrap();
    let mut record: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    record["word_count"] = Value::from(record["word_count"].as_u64().unwrap() + 5);
    std::fs::write(&store, format!("{record}\n")).unwrap();
    let out = longform(&["summarize", "--store", store_s]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("word_count"));
}

#[test]
fn unreachable_endpoint_marks_runs_failed() {
    let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("runs.jsonl");
    let url = format!("http://127.0.0.1:{port}/v1/chat/completions");
    let out = longform(&[
        "run",
        "--tasks",
        "story",
        "--languages",
        "EN",
        "--complexity",
        "simple",
        "--scales",
        "5",
        "--n",
        "2",
        "--engine",
        "external",
        "--endpoint",
        &url,
        "--timeout-secs",
        "5",
        "--store",
        store.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows: Vec<Value> = stdout_lines(&out).iter().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows[0]["failed_runs"], 2);
    assert_eq!(rows[0]["runs"], 0);
}

/// Answers every POST with `body` and records the request bodies.
fn mock_http(body: String, expected: usize) -> (String, std::thread::JoinHandle<Vec<Value>>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/judge", listener.local_addr().unwrap());
    let handle = std::thread::spawn(move || {
        let mut seen = Vec::new();
        for stream in listener.incoming().take(expected) {
            let mut stream = stream.unwrap();
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut length = 0;
            let mut auth = String::new();
            loop {
                let mut line = String::new();
                reader.read_line(&mut line).unwrap();
                let lower = line.to_ascii_lowercase();
                if let Some(v) = lower.strip_prefix("content-length:") {
                    length = v.trim().parse().unwrap();
                }
                if lower.starts_with("authorization:") {
                    auth = line.trim()["authorization:".len()..].trim().to_string();
                }
                if line == "\r\n" || line.is_empty() {
                    break;
                }
            }
            let mut buf = vec![0; length];
            reader.read_exact(&mut buf).unwrap();
            let mut request: Value = serde_json::from_slice(&buf).unwrap();
            request["auth"] = Value::from(auth);
            seen.push(request);
            let reply = format!(
                "HTTP/1.1 200 OK\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
            stream.write_all(reply.as_bytes()).unwrap();
        }
        seen
    });
    (url, handle)
}

#[test]
fn judge_scores_runs_through_http() {
    let dir = tempfile::tempdir().unwrap();
    let store = dir.path().join("runs.jsonl");
    let store_s = store.to_str().unwrap();
    let out = longform(&[
        "run",
        "--tasks",
        "story",
        "--languages",
        "EN",
        "--complexity",
        "simple",
        "--scales",
        "5",
        "--words-per-section",
        "20",
        "--n",
        "2",
        "--store",
        store_s,
    ]);
    assert!(out.status.success());

    let content = r#"{"Analysis": "ok", "Relevance": 5, "Accuracy": 4, "Coherence": 5, "Clarity": 3, "Breadth and Depth": 4, "Reading Experience": 3}"#;
    let reply = serde_json::json!({"choices": [{"message": {"content": content}}]}).to_string();
    let (url, server) = mock_http(reply, 2);
    let out = Command::new(env!("CARGO_BIN_EXE_longform"))
        .args(["judge", "--store", store_s, "--judge-endpoint", &url, "--judge-key-env", "LONGFORM_TEST_JUDGE_KEY"])
        .env("LONGFORM_TEST_JUDGE_KEY", "sekrit")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let requests = server.join().unwrap();
    assert_eq!(requests.len(), 2);
    assert_eq!(requests[0]["auth"], "Bearer sekrit");
    let prompt = requests[0]["messages"][0]["content"].as_str().unwrap();
    assert!(prompt.starts_with("You are an expert in evaluating text quality"));
    assert!(prompt.contains("consisting of 5 chapters"));

    let summary = longform(&["summarize", "--store", store_s]);
    let row: Value = serde_json::from_str(&stdout_lines(&summary)[0]).unwrap();
    let uca = row["uca"].as_f64().unwrap();
    assert!((uca - 24.0 / 30.0 * 100.0).abs() < 1e-9, "{uca}");

    // Already judged runs are skipped.
    let again = longform(&["judge", "--store", store_s, "--judge-endpoint", "http://127.0.0.1:1/none"]);
    assert!(again.status.success());
    assert!(String::from_utf8_lossy(&again.stderr).contains("judged 0 runs"));
}

const INIT: &str = r#"{"type":"init","config":{"total_sections":2,"section_token_budget":5,"grace":100,"boost":15.0,"interruption_tokens":[1,2,3],"banned_phrases":[],"title_template":{"kind":"table","titles":[[4,5],[4,6]]},"eos_token":0,"end_marker":[18,19],"mode":"sectioned","freeform_target_tokens":null,"checkpoint_bounds":{"low":300,"high":500}}}"#;

#[test]
fn bridge_over_stdio() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_longform"))
        .arg("bridge")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    let input = format!("{INIT}\n{{\"type\":\"step\",\"last_token_id\":null}}\nnonsense\n{{\"type\":\"close\"}}\n");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let lines: Vec<Value> = stdout_lines(&out).iter().map(|l| serde_json::from_str(l).unwrap()).collect();
    let kinds: Vec<&str> = lines.iter().map(|l| l["type"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["ready", "adjust", "error", "done"], "{lines:?}");
    assert!(lines[1]["entries"].as_array().unwrap().contains(&serde_json::json!([0, "-inf"])));
}

#[test]
fn bridge_over_tcp_hosts_independent_sessions() {
    let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let addr = format!("127.0.0.1:{port}");
    let mut child = Command::new(env!("CARGO_BIN_EXE_longform"))
        .args(["bridge", "--listen", &addr])
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut banner = String::new();
    BufReader::new(child.stderr.take().unwrap()).read_line(&mut banner).unwrap();
    assert!(banner.contains("listening"), "{banner}");

    let talk = |lines: &[&str]| -> Vec<Value> {
        let stream = std::net::TcpStream::connect(&addr).unwrap();
        let mut writer = stream.try_clone().unwrap();
        let mut reader = BufReader::new(stream);
        let mut replies = Vec::new();
        for line in lines {
            writeln!(writer, "{line}").unwrap();
            let mut reply = String::new();
            reader.read_line(&mut reply).unwrap();
            replies.push(serde_json::from_str(&reply).unwrap());
        }
        replies
    };
    let a = talk(&[INIT, r#"{"type":"step","last_token_id":null}"#]);
    let b = talk(&[r#"{"type":"step","last_token_id":null}"#]);
    assert_eq!(a[0]["type"], "ready");
    assert_eq!(a[1]["type"], "adjust");
    assert_eq!(b[0]["code"], "not_initialized");
    let c = talk(&[INIT]);
    assert_ne!(c[0]["session_id"], a[0]["session_id"]);
    child.kill().unwrap();
    child.wait().unwrap();
}

#[test]
fn probe_reports_collapse_and_spikes() {
    let dir = tempfile::tempdir().unwrap();
    let t0 = 4;
    let steps = 60;
    // Prompt token 1 holds half the attention for 30 steps, then almost none.
    let rows: Vec<Vec<Vec<f32>>> = vec![(1..=steps)
        .map(|t| {
            let len = t0 + t - 1;
            let a: f32 = if t <= 30 { 0.5 } else { 0.01 };
            let mut row = vec![(1.0 - a) / (len - 1) as f32; len];
            row[0] = a;
            row
        })
        .collect()];
    let trace = AttentionTrace::from_rows(1, t0, &rows).unwrap();
    let trace_path = dir.path().join("trace.bin");
    trace.save(&trace_path).unwrap();
    let spans = dir.path().join("spans.txt");
    std::fs::write(&spans, "kw: 1\n").unwrap();
    let out = longform(&[
        "probe",
        "--trace",
        trace_path.to_str().unwrap(),
        "--spans",
        spans.to_str().unwrap(),
        "--baseline-span",
        "20",
        "--persistence",
        "10",
        "--median-window",
        "11",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&stdout_lines(&out)[0]).unwrap();
    assert_eq!(v["steps"], 60);
    assert_eq!(v["collapse_onset"], 31);
    assert_eq!(v["convention"], "all");
}
