use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hnr_core::calibration::{calibrate, CalibrationConfig, CalibrationProblem, ModelExport};
use hnr_core::graph::io;
use hnr_core::rankers::hnr_rank;
use serde_json::Value;
use sha2::{Digest, Sha256};
use tempfile::TempDir;

fn hnr(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hnr"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn hnr")
}

fn ok(dir: &Path, args: &[&str]) -> Output {
    let out = hnr(dir, args);
    assert!(
        out.status.success(),
        "hnr {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn code(dir: &Path, args: &[&str]) -> i32 {
    hnr(dir, args).status.code().expect("exit code")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn scores(path: &Path) -> Vec<(String, f64)> {
    io::read_scores(fs::File::open(path).unwrap(), "ranks").unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    fs::write(dir.join(name), text).unwrap();
}

/// Synthetic dataset in a fresh directory.
fn synth(nodes: usize, seed: u64) -> TempDir {
    let dir = TempDir::new().unwrap();
    ok(
        dir.path(),
        &[
            "--quiet",
            "--seed",
            &seed.to_string(),
            "synth",
            "--nodes",
            &nodes.to_string(),
        ],
    );
    dir
}

const SMALL: [&str; 4] = ["--population", "16", "--generations", "10"];

#[test]
fn pagerank_without_damping_is_uniform() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "e.csv",
        "source,target,weight\na,b,1\nb,c,2\nc,a,1\nd,a,1\n",
    );
    ok(
        dir.path(),
        &[
            "rank",
            "--algo",
            "pagerank",
            "--edges",
            "e.csv",
            "--damping",
            "0",
        ],
    );
    let s = scores(&dir.path().join("ranks.csv"));
    assert_eq!(s.len(), 4);
    for (_, v) in s {
        assert_eq!(v, 0.25);
    }
}

#[test]
fn exf_of_path_end_is_zero() {
    let dir = TempDir::new().unwrap();
    write(
        dir.path(),
        "path3.csv",
        "source,target,weight\na,b,1\nb,c,1\n",
    );
    ok(
        dir.path(),
        &[
            "rank",
            "--algo",
            "exf",
            "--edges",
            "path3.csv",
            "--node",
            "a",
        ],
    );
    let text = fs::read_to_string(dir.path().join("exf.csv")).unwrap();
    assert_eq!(text, "node_id,exf\na,0\n");
}

#[test]
fn hnr_rank_reproduces_calibration_best() {
    let dir = synth(150, 4);
    let d = dir.path();
    ok(
        d,
        &[
            "--quiet",
            "--seed",
            "11",
            "calibrate",
            "--edges",
            "edges.csv",
            "--attrs",
            "attrs.csv",
            "--labels",
            "labels.csv",
            "--groups",
            "groups.csv",
        ],
    );
    ok(
        d,
        &[
            "--quiet",
            "rank",
            "--algo",
            "hnr",
            "--edges",
            "edges.csv",
            "--attrs",
            "attrs.csv",
            "--params",
            "model.json",
        ],
    );
    let cli = scores(&d.join("ranks.csv"));

    let graph = io::read_edges_path::<f64>(&d.join("edges.csv")).unwrap();
    let attrs = io::read_attributes_path(&d.join("attrs.csv"), &graph).unwrap();
    let labels = io::read_labels_path(&d.join("labels.csv"), &graph).unwrap();
    let groups = io::read_groups_path(&d.join("groups.csv"), &graph).unwrap();
    let config = CalibrationConfig::default();
    let problem = CalibrationProblem::new(
        &graph,
        &attrs,
        &groups,
        labels.as_sample(),
        config.loss,
        config.iter_options(),
    )
    .unwrap();
    let result = calibrate(&problem, &config, 11).unwrap();
    let internal = hnr_rank(
        &graph,
        &attrs,
        &groups,
        &result.best_params,
        config.iter_options(),
    )
    .unwrap();
    for (i, (id, s)) in cli.iter().enumerate() {
        assert_eq!(id, graph.node_id(i));
        assert!(
            (s - internal.scores[i]).abs() <= 1e-10,
            "{id}: {s} vs {}",
            internal.scores[i]
        );
    }
}

#[test]
fn auto_groups_on_constant_in_strength_records_one_group() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(
        d,
        "e.csv",
        "source,target,weight\na,b,1\nb,c,1\nc,d,1\nd,a,1\n",
    );
    write(d, "x.csv", "node_id,x\na,1\nb,2\nc,3\nd,4\n");
    write(d, "y.csv", "node_id,label\na,1\nb,2\nc,3\nd,4\n");
    let mut args = vec![
        "--quiet",
        "--seed",
        "1",
        "calibrate",
        "--edges",
        "e.csv",
        "--attrs",
        "x.csv",
        "--labels",
        "y.csv",
        "--groups",
        "auto",
    ];
    args.extend(SMALL);
    ok(d, &args);
    let model: ModelExport =
        ModelExport::from_json(&fs::read_to_string(d.join("model.json")).unwrap()).unwrap();
    assert_eq!(model.groups, 1);
    assert_eq!(model.damping.len(), 1);
    assert!(model.node_groups.iter().all(|(_, k)| *k == 0));
}

#[test]
fn calibrate_is_byte_identical_for_a_seed() {
    let dir = synth(80, 2);
    let d = dir.path();
    let run = |out: &str| {
        let mut args = vec![
            "--quiet",
            "--seed",
            "7",
            "calibrate",
            "--edges",
            "edges.csv",
            "--attrs",
            "attrs.csv",
            "--labels",
            "labels.csv",
            "--output",
            out,
        ];
        args.extend(SMALL);
        ok(d, &args);
        fs::read(d.join(out)).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn config_seed_applies_unless_flag_given() {
    let dir = synth(80, 2);
    let d = dir.path();
    write(d, "c.toml", "seed = 7\npopulation = 16\ngenerations = 10\n");
    let base = [
        "calibrate",
        "--edges",
        "edges.csv",
        "--attrs",
        "attrs.csv",
        "--labels",
        "labels.csv",
    ];
    let mut a = vec!["--quiet"];
    a.extend(base);
    a.extend(["--config", "c.toml", "--output", "a.json"]);
    ok(d, &a);
    let mut b = vec!["--quiet", "--seed", "7"];
    b.extend(base);
    b.extend(["--output", "b.json"]);
    b.extend(SMALL);
    ok(d, &b);
    assert_eq!(
        fs::read(d.join("a.json")).unwrap(),
        fs::read(d.join("b.json")).unwrap()
    );
    assert_eq!(json(&d.join("a.manifest.json"))["seed"], 7);
}

#[test]
fn htbreaks_on_constant_values_has_empty_head() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "v.csv", "node_id,v\na,3\nb,3\nc,3\n");
    ok(dir.path(), &["htbreaks", "--values", "v.csv"]);
    let out = json(&dir.path().join("htbreaks.json"));
    let levels = out["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 1);
    assert!(levels[0]["head"].as_array().unwrap().is_empty());
    assert_eq!(levels[0]["tail"].as_array().unwrap().len(), 3);
    assert_eq!(out["column"], "v");
}

#[test]
fn cv_on_272_labels_trains_on_82() {
    let dir = synth(272, 5);
    let d = dir.path();
    let mut args = vec![
        "--quiet",
        "--seed",
        "3",
        "cv",
        "--edges",
        "edges.csv",
        "--attrs",
        "attrs.csv",
        "--labels",
        "labels.csv",
        "--train-frac",
        "0.3",
        "--repeats",
        "10",
    ];
    args.extend(SMALL);
    ok(d, &args);
    let out = json(&d.join("cv.json"));
    assert_eq!(out["train_size"], 82);
    assert_eq!(out["repeats"], 10);
    assert_eq!(out["per_repeat"].as_array().unwrap().len(), 10);
}

#[test]
fn sweep_writes_one_row_per_fraction() {
    let dir = synth(60, 6);
    let d = dir.path();
    ok(
        d,
        &[
            "--quiet",
            "--seed",
            "3",
            "sweep",
            "--edges",
            "edges.csv",
            "--attrs",
            "attrs.csv",
            "--labels",
            "labels.csv",
            "--model",
            "pagerank",
            "--fractions",
            "0.2,0.5,0.8",
            "--repeats",
            "3",
        ],
    );
    let text = fs::read_to_string(d.join("sweep.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "fraction,mean_spearman,sd_spearman");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0.2,"));
}

#[test]
fn synthetic_pipeline_generalizes() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    ok(
        d,
        &[
            "--quiet", "--seed", "1", "synth", "--nodes", "300", "--groups", "2", "--attrs", "3",
        ],
    );
    ok(
        d,
        &[
            "--quiet",
            "--seed",
            "1",
            "calibrate",
            "--edges",
            "edges.csv",
            "--attrs",
            "attrs.csv",
            "--labels",
            "labels.csv",
            "--train-frac",
            "0.3",
        ],
    );
    ok(
        d,
        &[
            "--quiet",
            "rank",
            "--algo",
            "hnr",
            "--edges",
            "edges.csv",
            "--attrs",
            "attrs.csv",
            "--params",
            "model.json",
        ],
    );
    ok(
        d,
        &[
            "--quiet",
            "evaluate",
            "--ranks",
            "ranks.csv",
            "--labels",
            "labels.csv",
            "--held-out",
            "model.json",
        ],
    );
    let report = json(&d.join("report.json"));
    assert_eq!(report["n_evaluated"], 210);
    assert!(
        report["overall_spearman"].as_f64().unwrap() >= 0.95,
        "{report}"
    );
}

#[test]
fn hidden_parameters_reproduce_noiseless_labels() {
    let dir = synth(120, 9);
    let d = dir.path();
    ok(
        d,
        &[
            "--quiet",
            "rank",
            "--algo",
            "hnr",
            "--edges",
            "edges.csv",
            "--attrs",
            "attrs.csv",
            "--params",
            "hidden.json",
        ],
    );
    ok(
        d,
        &[
            "--quiet",
            "evaluate",
            "--ranks",
            "ranks.csv",
            "--labels",
            "labels.csv",
        ],
    );
    let report = json(&d.join("report.json"));
    assert!(report["overall_spearman"].as_f64().unwrap() > 0.99999);
}

#[test]
fn usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(d, "e.csv", "source,target,weight\na,b,1\n");
    assert_eq!(code(d, &["rank", "--edges", "e.csv"]), 2);
    assert_eq!(code(d, &["frobnicate"]), 2);
    assert_eq!(code(d, &["rank", "--algo", "hnr", "--edges", "e.csv"]), 2);
    assert_eq!(
        code(
            d,
            &[
                "--threads",
                "0",
                "rank",
                "--algo",
                "pagerank",
                "--edges",
                "e.csv"
            ]
        ),
        2
    );
    assert_eq!(
        code(
            d,
            &["rank", "--algo", "pagerank", "--edges", "e.csv", "--node", "a"]
        ),
        2
    );
    let out = hnr(d, &["rank", "--algo", "attrirank", "--edges", "e.csv"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--attrs"));
    assert_eq!(
        code(
            d,
            &[
                "rank",
                "--algo",
                "pagerank",
                "--edges",
                "e.csv",
                "--damping",
                "1.5"
            ]
        ),
        2
    );
    assert_eq!(code(d, &["--help"]), 0);
}

#[test]
fn data_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(d, "neg.csv", "source,target,weight\na,b,-1\n");
    write(d, "e.csv", "source,target,weight\na,b,1\nb,c,1\n");
    write(d, "x.csv", "node_id,x\na,1\nb,2\n");
    write(d, "y.csv", "node_id,label\na,1\nzz,2\n");
    let out = hnr(d, &["rank", "--algo", "pagerank", "--edges", "neg.csv"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("neg.csv:2"));
    assert_eq!(
        code(d, &["rank", "--algo", "pagerank", "--edges", "missing.csv"]),
        3
    );
    let out = hnr(
        d,
        &[
            "calibrate",
            "--edges",
            "e.csv",
            "--attrs",
            "x.csv",
            "--labels",
            "y.csv",
        ],
    );
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("x.csv") && err.contains("missing graph nodes: c"),
        "{err}"
    );
}

#[test]
fn non_convergence_exits_4() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(
        d,
        "e.csv",
        "source,target,weight\na,b,1\nb,c,1\nc,a,3\na,c,1\n",
    );
    assert_eq!(
        code(
            d,
            &[
                "rank",
                "--algo",
                "pagerank",
                "--edges",
                "e.csv",
                "--max-iter",
                "1"
            ]
        ),
        4
    );
}

#[test]
fn manifest_digests_match_inputs_and_outputs() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(d, "e.csv", "source,target,weight\na,b,1\nb,c,2\nc,a,1\n");
    ok(
        d,
        &[
            "--quiet", "--seed", "9", "rank", "--algo", "wpr", "--edges", "e.csv",
        ],
    );
    let m = json(&d.join("ranks.manifest.json"));
    assert_eq!(m["command"], "rank");
    assert_eq!(m["seed"], 9);
    assert_eq!(m["tool_version"], env!("CARGO_PKG_VERSION"));
    assert!(m["duration_seconds"].as_f64().unwrap() >= 0.0);
    assert_eq!(m["config"]["rank"]["algo"], "wpr");
    let check = |entry: &Value| {
        let path = entry["path"].as_str().unwrap();
        let bytes = fs::read(d.join(path)).unwrap();
        assert_eq!(
            entry["sha256"].as_str().unwrap(),
            hex::encode(Sha256::digest(&bytes))
        );
        assert_eq!(entry["bytes"].as_u64().unwrap(), bytes.len() as u64);
    };
    check(&m["inputs"][0]);
    check(&m["outputs"][0]);
    assert!(m["inputs"][0]["path"].as_str().unwrap().ends_with("e.csv"));
}

#[test]
fn out_dir_and_quiet() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(d, "e.csv", "source,target,weight\na,b,1\n");
    let out = ok(
        d,
        &[
            "--quiet",
            "--out-dir",
            "res/x",
            "rank",
            "--algo",
            "pagerank",
            "--edges",
            "e.csv",
        ],
    );
    assert!(out.stderr.is_empty());
    assert!(d.join("res/x/ranks.csv").exists());
    assert!(d.join("res/x/ranks.manifest.json").exists());
}

#[test]
fn evaluate_rejects_wrong_label_header() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    write(
        d,
        "r.csv",
        "node_id,score,rank\na,0.5,1\nb,0.3,2\nc,0.2,3\n",
    );
    write(d, "y.csv", "node_id,weight\na,1\nb,2\nc,3\n");
    assert_eq!(
        code(d, &["evaluate", "--ranks", "r.csv", "--labels", "y.csv"]),
        3
    );
}
