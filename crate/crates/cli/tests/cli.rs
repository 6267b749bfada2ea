use std::process::{Command, Output};

use serde_json::Value;

fn qwb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qwb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = qwb(&a);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn dims_of_b21() {
    let v = json(&["dims", "--r", "2", "--s", "1"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "dims");
    let res = &v["runs"][0]["result"];
    assert_eq!(res["sum_of_squares"], 6);
    assert_eq!(res["expected"], 6);
    let mut sq: Vec<u64> = res["labels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["dim_squared"].as_u64().unwrap())
        .collect();
    sq.sort();
    assert_eq!(sq, [1, 1, 4]);
}

#[test]
fn semisimplicity_examples() {
    let v = json(&[
        "semisimple",
        "--r",
        "2",
        "--s",
        "1",
        "--field",
        "q-power:1",
        "--mode",
        "both",
    ]);
    let res = &v["runs"][0]["result"];
    assert_eq!(res["semisimple"], false);
    assert_eq!(res["reason"]["kind"], "rho-power-coincidence");
    assert_eq!(res["reason"]["a"], 1);
    assert_eq!(res["agree"], true);

    let v = json(&[
        "semisimple",
        "--r",
        "3",
        "--s",
        "1",
        "--field",
        "delta-zero",
        "--mode",
        "both",
    ]);
    assert_eq!(v["runs"][0]["result"]["semisimple"], true);
    assert_eq!(v["runs"][0]["result"]["agree"], true);
}

#[test]
fn rho2_expands_to_two_runs() {
    let v = json(&["semisimple", "--r", "2", "--s", "2", "--field", "rho2:2"]);
    let fields: Vec<&str> = v["runs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["field"].as_str().unwrap())
        .collect();
    assert_eq!(fields, ["q-power:2", "neg-q-power:2"]);
    assert!(v["runs"]
        .as_array()
        .unwrap()
        .iter()
        .all(|x| x["result"]["semisimple"] == false));
}

#[test]
fn json_is_deterministic() {
    let args = [
        "central",
        "--r",
        "2",
        "--s",
        "2",
        "--field",
        "gfp:101,3,5",
        "--format",
        "json",
    ];
    let a = qwb(&args);
    let b = qwb(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "gram",
        "1",
        "[1];[1]",
        "--r",
        "2",
        "--s",
        "2",
        "--cache-dir",
        d,
        "--format",
        "json",
    ];
    let cold = qwb(&args);
    assert!(cold.status.success());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let warm = qwb(&args);
    assert_eq!(cold.stdout, warm.stdout);
    let fresh = qwb(&args[..args.len() - 4]
        .iter()
        .chain(&["--format", "json"])
        .copied()
        .collect::<Vec<_>>());
    assert_eq!(cold.stdout, fresh.stdout);
}

#[test]
fn corrupt_cache_is_rebuilt() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["relations", "--r", "1", "--s", "2", "--cache-dir", d];
    assert!(qwb(&args).status.success());
    for f in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(f.unwrap().path(), "not json").unwrap();
    }
    assert!(qwb(&args).status.success());
}

#[test]
fn csv_has_one_header() {
    let out = qwb(&[
        "simples",
        "--r",
        "2",
        "--s",
        "1",
        "--field",
        "generic",
        "--field",
        "delta-zero",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "field,label,simple,gram_rank_positive");
    assert_eq!(lines.iter().filter(|l| l.starts_with("field,")).count(), 1);
    assert_eq!(lines.len(), 1 + 2 * 3);
}

#[test]
fn exit_codes() {
    assert_eq!(
        qwb(&["dims", "--r", "2", "--s", "1"]).status.code(),
        Some(0)
    );
    assert_eq!(
        qwb(&["dims", "--r", "2", "--s", "1", "--field", "bogus"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qwb(&["gram", "3", "[1];[]", "--r", "2", "--s", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qwb(&["gram", "1", "[1", "--r", "2", "--s", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qwb(&["relations", "--r", "4", "--s", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qwb(&["dims", "--r", "0", "--s", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(qwb(&["dims"]).status.code(), Some(2));
}

#[test]
fn gram_of_small_cell_module() {
    let v = json(&["gram", "1", "[1];[]", "--r", "2", "--s", "1"]);
    let res = &v["runs"][0]["result"];
    assert_eq!(res["dim"], 2);
    assert_eq!(res["rank"], 2);
    assert_eq!(res["symmetric"], true);
    let v = json(&[
        "gram",
        "1",
        "[1];[]",
        "--r",
        "2",
        "--s",
        "1",
        "--field",
        "q-power:1",
    ]);
    assert_eq!(v["runs"][0]["result"]["rank"], 1);
    assert_eq!(v["runs"][0]["result"]["det"], "0");
}

#[test]
fn branch_and_sweep_report_ok() {
    let v = json(&["branch", "1", "[1];[1]", "--r", "2", "--s", "2"]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["runs"][0]["result"]["section_dim_sum"], 4);
    let v = json(&["sweep", "--r", "2", "--s", "1"]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["runs"][0]["result"].as_array().unwrap().len(), 14);
}

#[test]
fn cellular_and_relations_pass() {
    for cmd in ["cellular", "relations"] {
        let v = json(&[
            cmd,
            "--r",
            "2",
            "--s",
            "2",
            "--field",
            "generic",
            "--field",
            "gfp:7,3,2",
        ]);
        assert_eq!(v["ok"], true, "{cmd}");
        assert_eq!(v["runs"].as_array().unwrap().len(), 2);
    }
}
