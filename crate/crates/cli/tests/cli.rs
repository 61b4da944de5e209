use std::io::Write;
use std::process::{Command, Output, Stdio};

fn polyomino(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyomino")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = polyomino(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn counts() {
    assert_eq!(stdout(&["count", "--class", "convex", "--width", "4", "--height", "4"]), "1110\n");
    assert_eq!(stdout(&["count", "--class", "convex", "--width", "2", "--height", "2"]), "5\n");
    assert_eq!(stdout(&["count", "--class", "convex", "--perimeter", "16"]), "2344\n");
    assert_eq!(stdout(&["count", "--class", "directed", "--perimeter", "18"]), "3432\n");
    assert_eq!(stdout(&["count", "--class", "parallelogram", "--perimeter", "10"]), "14\n");
}

#[test]
fn large_counts_are_exact_decimals() {
    let n = stdout(&["count", "--class", "convex", "--perimeter", "400"]);
    assert!(n.trim().len() > 100);
    assert!(n.trim().chars().all(|c| c.is_ascii_digit()));
}

#[test]
fn moments() {
    assert_eq!(stdout(&["moments", "--order", "2", "--width", "2", "--height", "1"]), "92\n");
    assert_eq!(stdout(&["moments", "--order", "1", "--width", "1", "--height", "1"]), "10\n");
    assert_eq!(stdout(&["moments", "--binomial-pair-sum", "--width", "1", "--height", "1"]), "18\n");
}

#[test]
fn flag_errors_exit_with_two() {
    for args in [
        &["count", "--class", "convex", "--perimeter", "15"][..],
        &["count", "--class", "hexagonal", "--width", "2", "--height", "2"],
        &["count", "--class", "convex", "--width", "2"],
        &["sample", "--width", "2", "--height", "2", "--format", "svg"],
        &["sample", "--class", "directed", "--perimeter", "10"],
        &["sample", "--perimeter", "6"],
        &["frobnicate"],
    ] {
        let out = polyomino(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn sample_json_lines() {
    let args = ["sample", "--class", "convex", "--width", "4", "--height", "4", "--n", "3", "--seed", "7", "--format", "json"];
    let text = stdout(&args);
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    for (i, line) in lines.iter().enumerate() {
        assert_eq!(line["index"], i);
        assert_eq!(line["seed"], 7);
        assert!(line["attempts"].as_u64().unwrap() >= 1);
        assert_eq!(line["polyomino"]["width"], 4);
        assert_eq!(line["polyomino"]["columns"].as_array().unwrap().len(), 4);
    }
    assert_eq!(stdout(&args), text);
}

#[test]
fn jobs_keep_index_order() {
    let text = stdout(&["sample", "--width", "3", "--height", "5", "--n", "7", "--jobs", "3", "--seed", "4"]);
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let indices: Vec<u64> = lines.iter().map(|l| l["index"].as_u64().unwrap()).collect();
    let streams: Vec<u64> = lines.iter().map(|l| l["stream"].as_u64().unwrap()).collect();
    assert_eq!(indices, (0..7).collect::<Vec<_>>());
    assert_eq!(streams, vec![0, 1, 2, 0, 1, 2, 0]);
}

#[test]
fn directed_samples_never_reject() {
    let text = stdout(&["sample", "--class", "directed", "--width", "6", "--height", "4", "--n", "20"]);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["attempts"], 1);
        assert_eq!(v["polyomino"]["columns"][0][0], 0);
    }
}

#[test]
fn trace_goes_to_stderr() {
    let out = polyomino(&["sample", "--width", "4", "--height", "4", "--n", "2", "--trace", "--seed", "3"]);
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.matches("accepted").count(), 2);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);
    let out = polyomino(&["sample", "--class", "directed", "--width", "4", "--height", "4", "--trace"]);
    assert!(String::from_utf8(out.stderr).unwrap().contains("paths"));
}

#[test]
fn svg_files_are_written() {
    let dir = std::env::temp_dir().join(format!("polyomino-svg-{}", std::process::id()));
    let text = stdout(&[
        "sample", "--perimeter", "12", "--n", "2", "--format", "svg", "--out-dir", dir.to_str().unwrap(),
    ]);
    assert_eq!(text.lines().count(), 2);
    for path in text.lines() {
        let svg = std::fs::read_to_string(path).unwrap();
        assert!(svg.starts_with("<svg"));
    }
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn render_from_json_and_code() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polyomino"))
        .args(["render", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"width":3,"height":2,"columns":[[0,1],[0,2],[1,2]]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), ".##\n##.\n");
    assert_eq!(stdout(&["render", "--code", "w=2 h=2 a=0 HVVH"]), ".#\n##\n");
    let out = polyomino(&["render", "--code", "w=2 h=2 a=1 VHH"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("intersects itself"));
}

#[test]
fn enumerate_and_budget() {
    assert_eq!(stdout(&["enumerate", "--class", "convex", "--width", "5", "--height", "4"]), "3951\n");
    assert_eq!(stdout(&["enumerate", "--class", "directed", "--width", "2", "--height", "2", "--list"]).lines().count(), 4);
    assert_eq!(stdout(&["enumerate", "--class", "self-intersecting", "--width", "2", "--height", "2"]), "2\n");
    let out = Command::new(env!("CARGO_BIN_EXE_polyomino"))
        .args(["enumerate", "--class", "convex", "--width", "5", "--height", "4"])
        .env("POLYOMINO_BUDGET", "6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("budget"));
}

#[test]
fn verify_passes() {
    let out = polyomino(&["verify", "--max-semiperimeter", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("class"));
    assert!(!text.contains("MISMATCH"));
    assert!(text.trim_end().ends_with("all match"));
}

#[test]
fn bench_reports_both_rates() {
    let text = stdout(&["bench", "--width", "4", "--height", "4", "--trials", "1000", "--seed", "1"]);
    assert!(text.starts_with("exact      37/77 = 0.480519\n"));
    assert!(text.contains("empirical  "));
    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["bench", "--perimeter", "16", "--trials", "0", "--format", "json"])).unwrap();
    assert_eq!(json["exact"], "293/608");
    assert_eq!(json["trials"], 0);
}
