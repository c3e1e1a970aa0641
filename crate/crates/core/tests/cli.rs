use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn lqflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lqflab"))
        .args(args)
        .env_remove("LQFLAB_MAX_NODES")
        .env_remove("LQFLAB_MAX_SUBSET_NODES")
        .env_remove("LQFLAB_JOBS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const LAMBDA1: &str = "3493/10000,3493/10000,3493/10000,3493/10000,3493/10000,3493/10000";
const LAMBDA2: &str = "499/1000,498/1000,498/1000,498/1000,498/1000,498/1000";
const EXAMPLE1: &str = "11/24,3/8,3/8,3/8,3/8,3/8";

#[test]
fn mis_rows() {
    let out = lqflab(&["mis", "--rows", &data("c6.txt")]);
    assert_eq!(
        stdout(&out),
        "1 0 1 0 1 0\n1 0 0 1 0 0\n0 1 0 1 0 1\n0 1 0 0 1 0\n0 0 1 0 0 1\n"
    );
    assert_eq!(
        stdout(&lqflab(&["mis", "--rows", &data("k3.txt")]))
            .lines()
            .count(),
        3
    );
    assert_eq!(
        stdout(&lqflab(&["mis", "--rows", &data("edgeless3.txt")])),
        "1 1 1\n"
    );
    assert_eq!(json(&lqflab(&["mis", &data("c6.txt")]))["count"], 5);
}

#[test]
fn cliques() {
    let v = json(&lqflab(&["cliques", &data("k3.txt")]));
    assert_eq!(v["cliques"], serde_json::json!([[1, 2, 3]]));
}

#[test]
fn member_examples() {
    let c6 = data("c6.txt");
    let m = |region: &str, rates: &str| {
        json(&lqflab(&[
            "member", &c6, "--region", region, "--rates", rates,
        ]))["member"]
            .clone()
    };
    assert_eq!(m("omega", "1,0,1,0,1,0"), true);
    assert_eq!(m("sigma-lambda", "1,0,1,0,1,0"), false);
    assert_eq!(m("delta-c", LAMBDA2), true);
    assert_eq!(m("delta-c", LAMBDA1), false);
}

fn region_members(report: &Value) -> Vec<(String, bool)> {
    report["regions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| {
            (
                v["region"].as_str().unwrap().to_string(),
                v["member"].as_bool().unwrap(),
            )
        })
        .collect()
}

fn member_of(report: &Value, region: &str) -> bool {
    region_members(report)
        .into_iter()
        .find(|(r, _)| r == region)
        .unwrap()
        .1
}

#[test]
fn report_examples() {
    let c6 = data("c6.txt");
    let r = json(&lqflab(&["report", &c6, "--rates", EXAMPLE1]));
    assert!(member_of(&r, "lambda-o"));
    assert!(!member_of(&r, "omega"));
    assert!(member_of(&r, "delta-c"));
    assert_eq!(r["inconsistencies"], serde_json::json!([]));

    let r = json(&lqflab(&["report", &c6, "--rates", LAMBDA1]));
    assert!(!member_of(&r, "delta-c"));
    assert!(member_of(&r, "delta-r"));

    let r = json(&lqflab(&["report", &data("k3.txt"), "--rates", "0,0,0"]));
    assert!(region_members(&r).iter().all(|(_, m)| *m));
    assert_eq!(r["schedule_count"], 3);
}

#[test]
fn output_is_byte_stable() {
    let args = [
        "report",
        &data("c6.txt"),
        "--rates",
        LAMBDA1,
        "--sim-seed",
        "1,2",
        "--horizon",
        "500",
    ];
    let a = lqflab(&args);
    let b = lqflab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with("{\"config\":"), "keys are sorted: {text}");
}

#[test]
fn witnesses_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = data("c6.txt");
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["report", &c6, "--rates", EXAMPLE1], EXAMPLE1),
        (vec!["report", &c6, "--rates", LAMBDA1], LAMBDA1),
        (
            vec![
                "member",
                &c6,
                "--region",
                "lambda",
                "--rates",
                "1,1,0,0,0,0",
            ],
            "1,1,0,0,0,0",
        ),
        (vec!["chi", &c6, "--rates", LAMBDA2], LAMBDA2),
        (vec!["phi", &c6, "--rates", LAMBDA2], LAMBDA2),
        (vec!["tau", &c6, "--rates", LAMBDA1], LAMBDA1),
        (vec!["sigma", &c6, "--set", "1,2,3,4,5,6"], ""),
        (vec!["sigma", &c6, "--link", "2"], ""),
    ];
    for (i, (args, rates)) in cases.iter().enumerate() {
        let out = lqflab(args);
        assert!(out.status.success(), "{args:?}");
        let path = dir.path().join(format!("w{i}.json"));
        std::fs::write(&path, &out.stdout).unwrap();
        let p = path.to_string_lossy().into_owned();
        let mut verify = vec!["verify-witness", &c6, &p];
        if !rates.is_empty() {
            verify.extend(["--rates", rates]);
        }
        let v = json(&lqflab(&verify));
        assert_eq!(v["verified"], true, "{args:?}: {v}");
    }
}

#[test]
fn tampered_witness_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = data("c6.txt");
    let out = lqflab(&["member", &c6, "--region", "omega", "--rates", EXAMPLE1]);
    let mut doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["member"], false);
    doc["certificate"]["margin"] = Value::String("1/2".into());
    let path = dir.path().join("bad.json");
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = lqflab(&[
        "verify-witness",
        &c6,
        &path.to_string_lossy(),
        "--rates",
        EXAMPLE1,
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(
        serde_json::from_slice::<Value>(&out.stdout).unwrap()["verified"],
        false
    );
}

#[test]
fn exit_codes() {
    assert_eq!(lqflab(&[]).status.code(), Some(2));
    assert_eq!(
        lqflab(&[
            "member",
            &data("c6.txt"),
            "--region",
            "nowhere",
            "--rates",
            "0"
        ])
        .status
        .code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "n 3\ne 1 2\ne 1 9\n").unwrap();
    let out = lqflab(&["mis", &bad.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "parse");
    assert!(err["error"]["message"].as_str().unwrap().contains("line 3"));

    let out = lqflab(&[
        "member",
        &data("c6.txt"),
        "--region",
        "omega",
        "--rates",
        "1,2",
    ]);
    assert_eq!(out.status.code(), Some(3));

    let out = lqflab(&["mis", &data("c6.txt"), "--max-nodes", "5"]);
    assert_eq!(out.status.code(), Some(4));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "resource_limit");
}

#[test]
fn limits_from_environment_and_flags() {
    let run = |env: &str, flag: Option<&str>| {
        let c6 = data("c6.txt");
        let mut args = vec![
            "member",
            c6.as_str(),
            "--region",
            "omega",
            "--rates",
            "0,0,0,0,0,0",
        ];
        if let Some(f) = flag {
            args.extend(["--max-subset-nodes", f]);
        }
        Command::new(env!("CARGO_BIN_EXE_lqflab"))
            .args(&args)
            .env("LQFLAB_MAX_SUBSET_NODES", env)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(run("5", None), Some(4));
    assert_eq!(run("5", Some("6")), Some(0));
    assert_eq!(run("6", Some("5")), Some(4));
}

#[test]
fn approx_annotates_without_replacing() {
    let v = json(&lqflab(&[
        "chi",
        &data("c5.txt"),
        "--rates",
        "1/2,1/2,1/2,1/2,1/2",
        "--approx",
    ]));
    assert_eq!(v["value"], "5/4");
    assert_eq!(v["value_approx"], 1.25);
    let v = json(&lqflab(&[
        "chi",
        &data("c5.txt"),
        "--rates",
        "1/2,1/2,1/2,1/2,1/2",
    ]));
    assert!(v.get("value_approx").is_none());
}

#[test]
fn simulate_writes_trace_and_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("trace.csv");
    let catalog = dir.path().join("catalog.json");
    let v = json(&lqflab(&[
        "simulate",
        &data("k3.txt"),
        "--rates",
        "1/4,1/4,1/4",
        "--horizon",
        "50",
        "--ties",
        "random",
        "--seed",
        "3",
        "--csv",
        &csv.to_string_lossy(),
        "--catalog",
        &catalog.to_string_lossy(),
    ]));
    assert_eq!(v["slots"], 50);
    assert_eq!(v["verdict"], "stable_looking");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 51);
    assert!(text.starts_with("slot,max_backlog,total_backlog,schedule_id\n1,"));
    let cat: Value = serde_json::from_str(&std::fs::read_to_string(&catalog).unwrap()).unwrap();
    assert!(!cat.as_array().unwrap().is_empty());

    let out = lqflab(&[
        "simulate",
        &data("k3.txt"),
        "--rates",
        "0,0,0",
        "--horizon",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = lqflab(&[
        "simulate",
        &data("k3.txt"),
        "--rates",
        "0,0,0",
        "--horizon",
        "100",
        "--max-horizon",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn rank_and_sigma() {
    let v = json(&lqflab(&["rank", &data("c6.txt")]));
    assert_eq!(v["rank"], 4);
    assert_eq!(v["high_rank"], false);
    let v = json(&lqflab(&["sigma", &data("c6.txt")]));
    assert_eq!(v["overall"], "2/3");
}
