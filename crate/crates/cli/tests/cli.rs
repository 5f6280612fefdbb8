use std::path::PathBuf;
use std::process::{Command, Output};

fn kgv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(name).display().to_string()
}

#[test]
fn metacyclic_small_fields_report_two_violations() {
    let o = kgv(&["metacyclic", "--max-q", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut names: Vec<&str> = doc["report"]["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["name"].as_str().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["D8", "S4"]);
    let stderr = String::from_utf8(o.stderr).unwrap();
    assert_eq!(stderr.lines().count(), 2);
    assert!(stderr.lines().all(|l| l.contains("\"kGV\":5") && l.contains("\"V\":4")));
}

#[test]
fn metacyclic_without_exceptions_passes() {
    assert_eq!(kgv(&["metacyclic", "--max-q", "3"]).status.code(), Some(0));
}

#[test]
fn brute_agl23() {
    let o = kgv(&["brute", "--file", &example("agl23.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["report"]["group"]["kGV"], 11);
    assert_eq!(doc["report"]["group"]["kGV_direct"], 11);
    assert_eq!(doc["report"]["group"]["order"], 48);
}

#[test]
fn table_csv_has_651() {
    let o = kgv(&["table", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let header: Vec<&str> = out.lines().next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "3/5").unwrap();
    let row = out.lines().find_map(|l| l.strip_prefix("\"Sp(4,5)\"")).unwrap();
    assert!(row.split(',').nth(col).unwrap().starts_with("651 "));
}

#[test]
fn falsified_constants_flip_the_status() {
    assert_eq!(kgv(&["table", "--override", "table:Sp(4,5):3/5=650"]).status.code(), Some(1));
    assert_eq!(kgv(&["table", "--override", "table:Sp(4,5):3/5=651"]).status.code(), Some(0));
    assert_eq!(kgv(&["bounds", "--case", "5,2", "--override", "threshold:5,2=19"]).status.code(), Some(1));
    assert_eq!(kgv(&["bounds", "--case", "5,2"]).status.code(), Some(0));
    assert_eq!(kgv(&["table", "--override", "nonsense=1"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let a = kgv(&["metacyclic", "--max-q", "64", "--format", "json", "--jobs", "1"]);
    let b = kgv(&["metacyclic", "--max-q", "64", "--format", "json", "--jobs", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let a = kgv(&["bounds", "--scan", "--format", "json", "--jobs", "3"]);
    let b = kgv(&["bounds", "--scan", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("kgv-orbits-{}.csv", std::process::id()));
    let o = kgv(&["orbits", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.starts_with("r,a,d1,d2,brute_d1,brute_d2\n"));
    assert!(text.contains("\n2,2,6,10,6,10\n"));
    assert!(text.contains("\n3,2,17,33,17,33\n"));
}

#[test]
fn single_counts() {
    let o = kgv(&["wall", "--group", "Sp:2:5", "--factor", "1,1/1,1", "--factor", "4,1/1,1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["report"]["count"], "650");

    let o = kgv(&["fg", "--a", "2", "--r", "2", "--mu", "2,2", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["report"]["count"], "60");

    // t - 1 with a single part of size 2 needs a sign
    assert_eq!(kgv(&["wall", "--group", "Sp:1:3", "--factor", "2,1/2"]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(kgv(&["fg", "--a", "1", "--r", "3", "--mu", "2", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(kgv(&["brute", "--file", "/nonexistent/gens.json"]).status.code(), Some(2));
    assert_eq!(kgv(&["metacyclic", "--max-q", "5000"]).status.code(), Some(2));
    assert_eq!(kgv(&["wall", "--group", "Sp:1", "--factor", "2,1/2"]).status.code(), Some(2));
}

#[test]
fn census_matches_formulas() {
    let o = kgv(&["brute", "--census"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn section5_small_grid() {
    let o = kgv(&["section5-scan", "--n-max", "64", "--max-q", "4096", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(doc["report"]["checked"].as_u64().unwrap() > 0);
}
