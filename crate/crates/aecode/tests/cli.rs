use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn aecode(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_aecode"));
    c.args(args);
    for (k, v) in envs {
        c.env(k, v);
    }
    c.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn bundle(dir: &TempDir, name: &str, extra: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut args = vec!["instantiate", "--out", s(&path)];
    args.extend_from_slice(extra);
    let o = aecode(&args, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn i22(dir: &TempDir) -> PathBuf {
    bundle(dir, "i22.json", &["--p", "2", "--m", "2"])
}

#[test]
fn instantiate_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let a = aecode(&["instantiate", "--p", "2", "--m", "2"], &[]);
    let b = aecode(&["instantiate", "--p", "2", "--m", "2"], &[]);
    assert_eq!(a.stdout, b.stdout);
    let path = i22(&dir);
    assert_eq!(std::fs::read(path).unwrap(), a.stdout);
    let v = json(&a);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["n"], 48);
    assert_eq!(v["config"]["r"], "1/2");
}

#[test]
fn second_family_bundle() {
    let o = aecode(&["instantiate", "--p", "2", "--m", "2", "--inst", "II"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["n"], 448);
}

#[test]
fn composite_characteristic_is_a_parameter_error() {
    let o = aecode(&["instantiate", "--p", "4", "--m", "2"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["kind"], "parameter");
    assert!(!o.stderr.is_empty());
}

#[test]
fn missing_file_and_bad_usage() {
    let o = aecode(&["spectrum", "--bundle", "/nonexistent/b.json"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(json(&o)["error"]["kind"].is_string());
    assert_eq!(aecode(&["instantiate"], &[]).status.code(), Some(2));
}

#[test]
fn graph_csv() {
    let dir = TempDir::new().unwrap();
    let b = i22(&dir);
    let o = aecode(&["graph", "--bundle", s(&b)], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("edge_id,left_idx,right_idx"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 48);
    assert!(rows[0].starts_with("0,"));
}

#[test]
fn spectrum_and_rate() {
    let dir = TempDir::new().unwrap();
    let b = i22(&dir);
    let o = aecode(&["spectrum", "--bundle", s(&b)], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["spectrum"]["sigma2_exact_squared"], "1/3");
    assert_eq!(v["all_hold"], true);

    let o = aecode(&["spectrum", "--bundle", s(&b)], &[("AECODE_SVD_MAX_SIDE", "4")]);
    assert_eq!(json(&o)["spectrum"]["sigma2_svd"], "skipped: budget");

    let o = aecode(&["rate", "--bundle", s(&b)], &[]);
    assert_eq!(o.status.code(), Some(0));
    let o = aecode(&["rate", "--bundle", s(&b), "--D", "40"], &[]);
    assert_eq!(json(&o)["rate"]["dim"], 10);
}

#[test]
fn encode_verify_round_trip_and_corruption() {
    let dir = TempDir::new().unwrap();
    let b = i22(&dir);
    let msg = dir.path().join("m.json");
    let mut coords = vec![vec![0u32; 6]; 11];
    coords[0][0] = 1;
    coords[3] = vec![1, 0, 1, 1, 0, 1];
    std::fs::write(
        &msg,
        serde_json::json!({"schema_version": 1, "coordinates": coords}).to_string(),
    )
    .unwrap();
    let cw = dir.path().join("c.json");
    let o = aecode(
        &["encode", "--bundle", s(&b), "--message", s(&msg), "--out", s(&cw)],
        &[],
    );
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let o = aecode(&["verify", "--bundle", s(&b), "--codeword", s(&cw)], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["all_hold"], true);

    let mut file: Value = serde_json::from_slice(&std::fs::read(&cw).unwrap()).unwrap();
    let first = file["values"][0][0].as_u64().unwrap();
    file["values"][0][0] = Value::from(1 - first);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, file.to_string()).unwrap();
    let o = aecode(&["verify", "--bundle", s(&b), "--codeword", s(&bad)], &[]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert!(v["verify"]["failing"].as_u64().unwrap() >= 2);
    let vertices = v["verify"]["vertices"].as_array().unwrap();
    let failing: Vec<&Value> = vertices.iter().filter(|x| x["pass"] == false).collect();
    assert!(failing.iter().any(|x| x["side"] == "left"));
    assert!(failing.iter().any(|x| x["side"] == "right"));

    let o = aecode(&["report", "--bundle", s(&b), "--verify", "--codeword", s(&bad)], &[]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn polynomial_message_outside_the_space_is_rejected() {
    let dir = TempDir::new().unwrap();
    let b = i22(&dir);
    let msg = dir.path().join("m.json");
    let x2 = vec![vec![0u32; 6], vec![0; 6], vec![1, 0, 0, 0, 0, 0]];
    std::fs::write(
        &msg,
        serde_json::json!({"schema_version": 1, "polynomial": x2}).to_string(),
    )
    .unwrap();
    let o = aecode(&["encode", "--bundle", s(&b), "--message", s(&msg)], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["error"]["kind"], "constraint_violation");
}

#[test]
fn distance_and_budget() {
    let dir = TempDir::new().unwrap();
    let b = i22(&dir);
    let o = aecode(&["distance", "--bundle", s(&b), "--budget", "100"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["distance"]["status"], "skipped: budget");
    let o = aecode(&["distance", "--bundle", s(&b)], &[("AECODE_DISTANCE_BUDGET", "100")]);
    assert_eq!(json(&o)["distance"]["status"], "skipped: budget");
    let o = aecode(&["distance", "--bundle", s(&b), "--r", "1/4"], &[]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["distance"]["distance"], 48);
}

#[test]
fn full_report_holds() {
    let dir = TempDir::new().unwrap();
    let b = i22(&dir);
    let o = aecode(&["report", "--bundle", s(&b)], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let v = json(&o);
    assert_eq!(v["all_hold"], true);
    for k in ["spectrum", "rate", "distance", "verify"] {
        assert!(v.get(k).is_some(), "{k}");
    }
    assert_eq!(v["distance"]["distance"], 16);
    let again = aecode(&["report", "--bundle", s(&b)], &[]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn sweep_csv() {
    let o = aecode(
        &["sweep", "--m", "2", "--r", "1/2", "--rho", "1/2,1", "--p", "2,3"],
        &[],
    );
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    let headers = rdr.headers().unwrap().clone();
    assert!(headers.iter().any(|h| h == "rate_lb_polytope"));
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 4);
    let row = rows
        .iter()
        .find(|r| &r[col("rho")] == "1/1" || &r[col("rho")] == "1")
        .unwrap();
    let vol: f64 = row[col("volume")].parse().unwrap();
    assert!((vol - 2.6042e-4).abs() < 1e-7);
    let counts: Vec<&str> = rows.iter().map(|r| &r[col("monomial_count")]).collect();
    assert!(counts.contains(&"2") && counts.contains(&"8"));
}
