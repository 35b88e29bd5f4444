use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_complexon"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn list_names_every_experiment() {
    let o = run(&["verify", "--list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for e in complexon_harness::EXPERIMENTS {
        assert!(text.contains(e.name), "{} missing", e.name);
    }
}

#[test]
fn verify_writes_csv_and_exit_code_tracks_failures() {
    for name in ["faceting", "faceted-identity", "cutnorm-oracle"] {
        let o = run(&["verify", name, "--quick", "--seed", "3"]);
        let csv = stdout(&o);
        assert!(csv.starts_with("experiment,n,trial,measured,bound,status,seed,item\n"));
        let failed = csv.lines().any(|l| l.contains(",fail,"));
        assert_eq!(o.status.code(), Some(if failed { 1 } else { 0 }), "{name}");
        let again = run(&["verify", name, "--quick", "--seed", "3"]);
        assert_eq!(csv, stdout(&again));
    }
}

#[test]
fn json_report_and_config_file() {
    let cfg = tmp(
        "faceting.json",
        r#"{"experiment": "faceting", "trials": 2, "dmax": 2, "seed": 9}"#,
    );
    let o = run(&["verify", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["experiment"], "faceting");
    assert_eq!(v["seed"], 9);
    assert_eq!(v["aggregate"]["failed"], 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn unknown_experiment_is_an_error() {
    let o = run(&["verify", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn model_sample_and_density() {
    let o = run(&["model", "flag:1/2", "--dmax", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("complexon homog D 2"));

    let o = run(&["sample", "5", "lm:1:1", "--dmax", "1", "--seed", "4"]);
    let text = stdout(&o);
    let rec = complexon::sampling::SampleRecord::from_text(&text).unwrap();
    assert_eq!(rec.complex().unwrap().count_of_dim(1), 10);
    assert_eq!(rec.seed, 4);

    let o = run(&["sample", "4", "homog:0,1", "--hyper", "--seed", "4"]);
    assert!(stdout(&o).starts_with("hyper n 4"));

    let edge = tmp("edge.txt", "n 2 d 1\n1 2\n");
    let o = run(&["density", edge.to_str().unwrap(), "flag:1/2"]);
    assert!(stdout(&o).starts_with("1/2 "), "{}", stdout(&o));
    let triangle = tmp("triangle.txt", "n 3 d 2\n1 2 3\n");
    let o = run(&["density", edge.to_str().unwrap(), triangle.to_str().unwrap()]);
    assert!(stdout(&o).starts_with("2/3 "), "{}", stdout(&o));
}

#[test]
fn cut_commands() {
    let arr = tmp("checker.txt", "shape 2 2\ndata\n1 -1\n-1 1\n");
    let o = run(&["cutnorm", "--array", arr.to_str().unwrap(), "--exact"]);
    assert!(stdout(&o).starts_with("1/4 "), "{}", stdout(&o));

    let o = run(&["cutdist", "flag:1", "flag:0", "--dmax", "1", "--alphas", "1"]);
    let text = stdout(&o);
    assert!(text.starts_with("labeled 1 "), "{text}");

    let o = run(&["regularize", "homog:1/2", "--blocks", "4"]);
    assert!(stdout(&o).starts_with("classes 1\n"));
}

#[test]
fn hyper_runs_closure_experiments() {
    let o = run(&["hyper", "ul", "--quick"]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().skip(1).all(|l| l.starts_with("ul-convergence,")));
    assert_eq!(run(&["hyper", "bogus"]).status.code(), Some(2));
}
