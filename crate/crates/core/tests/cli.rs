use std::path::PathBuf;
use std::process::{Command, Output};

fn bernstein(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bernstein")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bernstein-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn tables_markdown_row() {
    let o = bernstein(&["tables", "--q", "3", "--depth-max", "1", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("| split:+1:m=1 | 40 | 40 |"));
}

#[test]
fn tables_json_grid() {
    let o = bernstein(&["tables", "--q", "5", "--depth-max", "1/2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let tables = v.as_array().unwrap();
    let names: Vec<&str> = tables.iter().map(|t| t["table"].as_str().unwrap()).collect();
    assert_eq!(names, ["table1", "table3", "sigma", "sigma"]);
    for t in tables {
        assert_eq!(t["q"], 5);
        for row in t["rows"].as_array().unwrap() {
            assert!(row["class"].is_string());
            assert!(row["value_num"].is_i64() && row["value_den"].is_i64() && row["q_exponent"].is_i64());
        }
    }
}

#[test]
fn tables_csv_matches_induction_fixture() {
    let tables = stdout(&bernstein(&["tables", "--q", "3", "--format", "csv"]));
    let o = bernstein(&["verify", "--suite", "induction", "--q", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let fixture = stdout(&o);
    let mut lines = tables.lines();
    let header = lines.next().unwrap();
    let sigma: Vec<&str> = lines.filter(|l| l.starts_with("sigma,")).collect();
    let expected = std::iter::once(header).chain(sigma).map(|l| format!("{l}\n")).collect::<String>();
    assert_eq!(fixture, expected);
}

#[test]
fn verify_suites_pass() {
    let o = bernstein(&["verify", "--suite", "gauss", "--q", "3,5,7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["suite"], "gauss");
    assert_eq!(v[0]["cases"][0]["got"], "3");
    let o = bernstein(&["verify", "--suite", "induction", "--q", "3,5", "--depth-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let o = bernstein(&["verify", "--suite", "ft-vanish", "--p", "3", "--ell-max", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn exit_codes() {
    assert_eq!(bernstein(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(bernstein(&["tables", "--q", "4"]).status.code(), Some(2));
    assert_eq!(bernstein(&["frobnicate"]).status.code(), Some(2));
    let o = bernstein(&["ft", "--p", "3", "--Y", "0,1,3,0", "--ell-max", "2", "--point-budget", "100"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("lattice points needed"));
    let o = bernstein(&["ft", "--p", "3", "--Y", "0,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_bernstein"))
        .args(["verify", "--suite", "ft-vanish", "--p", "3", "--ell-max", "2"])
        .env("BERNSTEIN_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn ft_outputs() {
    let o = bernstein(&["ft", "--p", "3", "--Y", "0,1,1,0", "--ell-max", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "0");
    assert_eq!(v["stabilized"], true);
    for key in ["p", "k", "Y", "ell", "histogram_order", "value_exact", "value_float"] {
        assert!(!v[key].is_null(), "missing {key}");
    }
    let o = bernstein(&["ft", "--p", "3", "--Y", "0,1,3,0", "--ell-max", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "-1/3");
    assert_eq!(v["value_float"].as_f64().unwrap(), -1.0 / 3.0);
    assert_eq!(v["stabilized"], true);
    let o = bernstein(&["ft", "--p", "3", "--k", "1", "--Y", "0,1,1,0", "--ell-max", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["k"], 1);
    assert!(v["path"].as_str().unwrap().starts_with("p^3"));
    let o = bernstein(&["ft", "--p", "3", "--Y", "0,1/p^1,1,0", "--ell-max", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "0");
    assert_eq!(v["histogram_order"], 9);
}

#[test]
fn deterministic_output() {
    let args = ["verify", "--suite", "census,table1,homogeneity", "--q", "3,5", "--format", "json"];
    assert_eq!(stdout(&bernstein(&args)), stdout(&bernstein(&args)));
    let args = ["tables", "--q", "3,5", "--format", "csv"];
    assert_eq!(stdout(&bernstein(&args)), stdout(&bernstein(&args)));
}

#[test]
fn config_file_and_output_path() {
    let cfg = scratch("run.cfg");
    let out = scratch("tables.csv");
    std::fs::write(&cfg, format!("q = 5\ndepth_max = 1/2\nformat = json\noutput = {}\n", out.display())).unwrap();
    let o = bernstein(&["tables", "--config", cfg.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("table,q,depth,class"));
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(1) == Some("5")));
    let bad = bernstein(&["tables", "--config", "/nonexistent/run.cfg"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("/nonexistent/run.cfg"));
}

#[test]
fn census_command() {
    let o = bernstein(&["census", "--q", "3", "--depth-max", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let recs = v.as_array().unwrap();
    assert_eq!(recs.len(), 4);
    assert_eq!(recs[1]["depth"], "1");
    assert_eq!(recs[1]["total"], "8");
}
