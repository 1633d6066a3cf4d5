use std::fs;
use std::path::{Path, PathBuf};

use singidx_cli::report::Report;
use singidx_cli::run;

struct Case {
    path: PathBuf,
    command: String,
    args: Vec<String>,
    exit: i32,
}

fn header(text: &str, key: &str) -> Option<String> {
    text.lines()
        .filter_map(|l| l.strip_prefix('#'))
        .find_map(|l| l.trim().strip_prefix(key).map(|v| v.trim().to_string()))
}

fn load(path: &Path) -> Case {
    let text = fs::read_to_string(path).unwrap();
    let command = header(&text, "command:").unwrap_or_else(|| {
        let task = text.lines().find_map(|l| l.strip_prefix("task:")).expect("task line");
        task.split_whitespace().next().unwrap().to_string()
    });
    let args = header(&text, "args:").map(|a| a.split_whitespace().map(String::from).collect()).unwrap_or_default();
    let exit = header(&text, "exit:").expect("exit header").parse().unwrap();
    Case { path: path.to_path_buf(), command, args, exit }
}

fn cases() -> Vec<Case> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut paths: Vec<PathBuf> =
        fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|e| e == "prob")).collect();
    paths.sort();
    paths.iter().map(|p| load(p)).collect()
}

fn invoke(case: &Case, env_seed: Option<&str>) -> (i32, String) {
    let mut argv = vec!["singidx".to_string(), case.command.clone(), "--file".into()];
    argv.push(case.path.to_string_lossy().into_owned());
    argv.extend(["--format".into(), "json".into()]);
    argv.extend(case.args.iter().cloned());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, env_seed, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

fn without_timing(json: &str) -> String {
    let mut v: serde_json::Value = serde_json::from_str(json).unwrap();
    v["timing_ms"] = 0.into();
    let mut s = serde_json::to_string(&v).unwrap();
    s.push('\n');
    s
}

#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for case in cases() {
        let (code, out) = invoke(&case, None);
        let name = case.path.file_stem().unwrap().to_string_lossy().into_owned();
        if code != case.exit {
            failures.push(format!("{name}: exit {code}, expected {}\n{out}", case.exit));
            continue;
        }
        let got = without_timing(&out);
        let expected_path = case.path.with_extension("json");
        if update {
            fs::write(&expected_path, &got).unwrap();
            continue;
        }
        let Ok(expected) = fs::read_to_string(&expected_path) else {
            failures.push(format!("{name}: missing {}; rerun with UPDATE_GOLDEN=1", expected_path.display()));
            continue;
        };
        if got != expected {
            failures.push(format!("{name}:\n  got      {got}  expected {expected}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_subcommand_has_a_golden_case() {
    let covered: Vec<String> = cases().into_iter().filter(|c| c.exit == 0).map(|c| c.command).collect();
    for cmd in [
        "vf-index",
        "elk",
        "gsv",
        "milnor",
        "milnor-icis",
        "gm-hypersurface",
        "homological",
        "radial",
        "euler-obstruction",
        "meromorphic",
        "collection",
        "chern",
        "mobius",
        "radial-from-eu",
        "eu-from-radial",
        "bmps",
        "oracle-colength",
    ] {
        assert!(covered.iter().any(|c| c == cmd), "no golden case for {cmd}");
    }
}

#[test]
fn identical_input_and_seed_give_identical_json() {
    for case in cases() {
        let (_, a) = invoke(&case, Some("12345"));
        let (_, b) = invoke(&case, Some("12345"));
        assert_eq!(without_timing(&a), without_timing(&b), "{}", case.path.display());
    }
}

#[test]
fn reports_round_trip_through_json() {
    for case in cases() {
        let (_, out) = invoke(&case, None);
        let report: Report = serde_json::from_str(&out).unwrap();
        let again = singidx_cli::report::emit_report(&report, singidx_cli::report::Format::Json);
        assert_eq!(again, out);
    }
}

#[test]
fn seed_precedence() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let case = load(&dir.join("homological.prob"));
    let seed_of = |out: &str| serde_json::from_str::<Report>(out).unwrap().seed;
    let (_, out) = invoke(&case, None);
    assert_eq!(seed_of(&out), singidx::GenericitySampler::DEFAULT_SEED);
    let (_, out) = invoke(&case, Some("99"));
    assert_eq!(seed_of(&out), 99);
    let mut flagged = load(&dir.join("homological.prob"));
    flagged.args = vec!["--seed".into(), "7".into()];
    let (_, out) = invoke(&flagged, Some("99"));
    assert_eq!(seed_of(&out), 7);
    assert_eq!(invoke(&case, Some("not-a-number")).0, 2);
}

#[test]
fn text_format_prints_index_line() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let path = dir.join("elk_reflection.prob");
    let argv = ["singidx", "elk", "--file", path.to_str().unwrap()];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(argv, None, &mut out, &mut err), 0);
    assert!(String::from_utf8(out).unwrap().contains("index = -1\n"));
}

#[test]
fn usage_errors_exit_2() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["singidx", "frobnicate", "--file", "x"], None, &mut out, &mut err), 2);
    assert_eq!(run(["singidx", "milnor"], None, &mut out, &mut err), 2);
    assert_eq!(run(["singidx", "milnor", "--file", "/nonexistent/problem.prob"], None, &mut out, &mut err), 2);
}
