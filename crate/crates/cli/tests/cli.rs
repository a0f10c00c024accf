use std::process::Command;

use ldic_cli::document::{OutputDocument, Payload};
use ldic_core::{build_bounds, capacity_region, ChannelParams, RatePoint};
use serde_json::Value;

fn ldic(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ldic"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn with_params(cmd: &str, p: [u32; 6], extra: &[&str]) -> Vec<String> {
    let mut v = vec![cmd.to_string()];
    for (name, value) in ["--n11", "--n22", "--n12", "--n21", "--fb11", "--fb22"].iter().zip(p) {
        v.push(name.to_string());
        v.push(value.to_string());
    }
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

fn run_ok(cmd: &str, p: [u32; 6], extra: &[&str]) -> String {
    let args = with_params(cmd, p, extra);
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, out, err) = ldic(&refs);
    assert_eq!(code, 0, "{err}");
    out
}

fn json(cmd: &str, p: [u32; 6], extra: &[&str]) -> Value {
    serde_json::from_str(&run_ok(cmd, p, extra)).unwrap()
}

fn vertex_pairs(doc: &Value) -> Vec<(String, String)> {
    doc["payload"]["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| (v["r1"].as_str().unwrap().to_string(), v["r2"].as_str().unwrap().to_string()))
        .collect()
}

fn pairs(v: &[(i64, i64)]) -> Vec<(String, String)> {
    v.iter().map(|(a, b)| (format!("{a}/1"), format!("{b}/1"))).collect()
}

#[test]
fn region_vertices_without_feedback() {
    // Hand-derived: R1,R2 <= 10, R1+R2 <= 11, 2R1+R2 <= 20, R1+2R2 <= 20.
    let doc = json("region", [10, 10, 3, 8, 0, 0], &[]);
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["payload"]["kind"], "region");
    assert_eq!(vertex_pairs(&doc), pairs(&[(10, 0), (9, 2), (2, 9), (0, 10), (0, 0)]));
}

#[test]
fn all_zero_channel_is_the_origin() {
    let doc = json("region", [0; 6], &[]);
    assert_eq!(vertex_pairs(&doc), pairs(&[(0, 0)]));
}

#[test]
fn invalid_values_exit_with_two() {
    let (code, out, _) = ldic(&["region", "--n11", "-1", "--n22", "1", "--n12", "0", "--n21", "0"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    let (code, _, _) = ldic(&["region", "--n11", "1"]);
    assert_eq!(code, 2);
    let (code, _, _) = ldic(&["frobnicate"]);
    assert_eq!(code, 2);
    let (code, _, _) = ldic(&with_params("region", [1, 1, 0, 0, 0, 0], &["--format", "xml"])
        .iter()
        .map(String::as_str)
        .collect::<Vec<_>>());
    assert_eq!(code, 2);
}

fn metric_strings(doc: &Value) -> [String; 3] {
    ["delta1", "delta2", "sigma"].map(|k| doc["payload"][k].as_str().unwrap().to_string())
}

#[test]
fn metrics_documents() {
    let doc = json("metrics", [10, 10, 3, 8, 9, 4], &[]);
    assert_eq!(metric_strings(&doc), ["1/1", "1/1", "1/1"]);
    assert_eq!(doc["payload"]["delta1_decimal"], 1.0);
    let thresholds = &doc["payload"]["thresholds"];
    assert_eq!(thresholds[0]["threshold"], 8);
    assert_eq!(thresholds[1]["threshold"], 3);
    assert_eq!(doc["payload"]["feedback_useless"], false);

    let doc = json("metrics", [10, 9, 2, 15, 10, 9], &[]);
    assert_eq!(doc["payload"]["feedback_useless"], true);
    assert_eq!(metric_strings(&doc), ["0/1", "0/1", "0/1"]);

    let doc = json("metrics", [7, 8, 15, 13, 11, 9], &[]);
    assert_eq!(metric_strings(&doc), ["2/1", "3/1", "0/1"]);
}

#[test]
fn metrics_threshold_absent_is_null_and_empty() {
    let doc = json("metrics", [10, 20, 6, 12, 0, 0], &[]);
    assert!(doc["payload"]["thresholds"][0]["threshold"].is_null());
    let csv = run_ok("metrics", [10, 20, 6, 12, 0, 0], &["--format", "csv"]);
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[6], "");
    assert_eq!(row[8], "8");
}

fn sweep_args(fwd: [u32; 4], extra: &[&str]) -> Vec<String> {
    let mut v = vec!["sweep".to_string()];
    for (name, value) in ["--n11", "--n22", "--n12", "--n21"].iter().zip(fwd) {
        v.push(name.to_string());
        v.push(value.to_string());
    }
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

fn sweep_csv(fwd: [u32; 4]) -> Vec<Vec<String>> {
    let args = sweep_args(fwd, &["--format", "csv"]);
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, out, err) = ldic(&refs);
    assert_eq!(code, 0, "{err}");
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "fb11,fb22,delta1,delta1_decimal,delta2,delta2_decimal,sigma,sigma_decimal"
    );
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn sweep_rows() {
    let rows = sweep_csv([20, 15, 12, 13]);
    assert_eq!(rows.len(), 21 * 16);
    // fb11 major, fb22 minor.
    let order: Vec<(u32, u32)> = rows.iter().map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap())).collect();
    let expected: Vec<(u32, u32)> = (0..=20).flat_map(|a| (0..=15).map(move |b| (a, b))).collect();
    assert_eq!(order, expected);
    let find = |a: &str, b: &str| rows.iter().find(|r| r[0] == a && r[1] == b).unwrap().clone();
    assert_eq!(find("0", "0")[2..], ["0/1", "0.000000", "0/1", "0.000000", "0/1", "0.000000"]);
    for a in 0..=13 {
        let r = find(&a.to_string(), "0");
        assert_eq!([&r[2], &r[4], &r[6]], ["0/1", "0/1", "0/1"], "fb11 = {a}");
    }
    assert_ne!(find("14", "0")[2], "0/1");
}

#[test]
fn sweep_json_saturated_corner() {
    let args = sweep_args([7, 8, 15, 13], &[]);
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, out, _) = ldic(&refs);
    assert_eq!(code, 0);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["payload"]["kind"], "surface");
    let cells = doc["payload"]["cells"].as_array().unwrap();
    let corner = cells.last().unwrap();
    assert_eq!((corner["fb11"].as_u64(), corner["fb22"].as_u64()), (Some(15), Some(13)));
    let at = |a: u64, b: u64| {
        cells
            .iter()
            .find(|c| c["fb11"].as_u64() == Some(a) && c["fb22"].as_u64() == Some(b))
            .unwrap()
    };
    let figure = at(11, 9);
    assert_eq!((figure["delta1"].as_str(), figure["delta2"].as_str()), (Some("2/1"), Some("3/1")));
    let direct = json("metrics", [7, 8, 15, 13, 15, 13], &[]);
    for key in ["delta1", "delta2", "sigma"] {
        assert_eq!(corner[key], direct["payload"][key], "{key}");
    }
}

#[test]
fn point_to_point_simulation_is_error_free_and_deterministic() {
    let p = [6, 5, 0, 0, 0, 0];
    let extra = ["--scheme", "point-to-point", "--block-length", "12", "--seed", "7", "--trace"];
    let first = run_ok("simulate", p, &extra);
    let second = run_ok("simulate", p, &extra);
    assert_eq!(first, second);
    let doc: Value = serde_json::from_str(&first).unwrap();
    let users = doc["payload"]["users"].as_array().unwrap();
    assert_eq!(users[0]["p"], "0/1");
    assert_eq!(users[1]["p"], "0/1");
    assert_eq!(users[0]["rate"], "6/1");
    assert_eq!(doc["payload"]["trace"].as_array().unwrap().len(), 12);
    assert_eq!(doc["payload"]["messages"], doc["payload"]["estimates"]);

    let other = run_ok("simulate", p, &["--block-length", "12", "--seed", "8", "--trace"]);
    assert_ne!(first, other);
}

#[test]
fn simulation_usage_errors() {
    let args = with_params("simulate", [3, 3, 1, 1, 0, 0], &["--scheme", "telepathy"]);
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let (code, out, err) = ldic(&refs);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("telepathy"), "{err}");

    let args = with_params("simulate", [3, 3, 1, 1, 0, 0], &["--delay", "0"]);
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    assert_eq!(ldic(&refs).0, 2);
}

#[test]
fn json_round_trip_rebuilds_the_region() {
    for p in [[10, 10, 3, 8, 9, 4], [20, 15, 12, 13, 3, 17], [0, 4, 2, 0, 1, 0]] {
        let doc: OutputDocument = serde_json::from_str(&run_ok("region", p, &[])).unwrap();
        let params = ChannelParams::from(&doc.params);
        assert_eq!(params, ChannelParams::new(p[0], p[1], p[2], p[3], p[4], p[5]));
        let Payload::Region(region) = doc.payload else {
            panic!("not a region document")
        };
        let expected = capacity_region(&params).unwrap();
        let bounds = region.bound_set().unwrap();
        assert_eq!(bounds, build_bounds(&params).unwrap());
        assert_eq!(&bounds, expected.bounds());
        let vertices: Vec<RatePoint> = region.vertex_points().unwrap();
        assert_eq!(vertices, expected.vertices());
    }
}

#[test]
fn csv_and_json_agree() {
    let p = [20, 15, 12, 13, 14, 9];
    let doc = json("metrics", p, &[]);
    let csv = run_ok("metrics", p, &["--format", "csv"]);
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!(lines.next().is_none());
    for key in ["delta1", "delta2", "sigma"] {
        let i = header.iter().position(|h| *h == key).unwrap();
        assert_eq!(row[i], doc["payload"][key].as_str().unwrap());
        let d: f64 = row[i + 1].parse().unwrap();
        assert_eq!(d, doc["payload"][format!("{key}_decimal")].as_f64().unwrap());
    }

    let doc = json("region", p, &[]);
    let csv = run_ok("region", p, &["--format", "csv"]);
    let from_csv: Vec<(String, String)> = csv
        .lines()
        .filter(|l| l.starts_with("vertex,"))
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[5].to_string(), f[7].to_string())
        })
        .collect();
    assert_eq!(from_csv, vertex_pairs(&doc));
    let bound_rows = csv.lines().filter(|l| l.starts_with("bound,")).count();
    assert_eq!(bound_rows, doc["payload"]["bounds"].as_array().unwrap().len());
    assert!(csv.ends_with('\n'));

    let sim = ["--scheme", "echo", "--seed", "3", "--block-length", "9"];
    let doc = json("simulate", p, &sim);
    let mut with_csv = sim.to_vec();
    with_csv.extend(["--format", "csv"]);
    let csv = run_ok("simulate", p, &with_csv);
    for (line, user) in csv.lines().skip(1).zip(doc["payload"]["users"].as_array().unwrap()) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[0], user["user"].to_string());
        assert_eq!(f[2], user["rate"].as_str().unwrap());
        assert_eq!(f[4], user["p"].as_str().unwrap());
    }
}
