use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use groupiso::corpus::by_name;
use groupiso::group::{cyclic, symmetric, FiniteGroup};
use groupiso::perm::PermGroup;
use groupiso::wreath::WreathTower;
use rand::SeedableRng;
use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_groupiso"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON report")
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_vec(v).unwrap()).unwrap();
    p
}

fn group(dir: &Path, name: &str, g: &FiniteGroup) -> String {
    let p = write(dir, name, &serde_json::to_value(g.to_file(name)).unwrap());
    p.to_str().unwrap().to_string()
}

#[test]
fn reduce_examples() {
    let dir = TempDir::new().unwrap();
    let z4 = group(dir.path(), "z4.json", &cyclic(4));
    let r = report(&run(&["reduce", &z4, &z4]));
    assert_eq!(r["outputs"]["iso_order"], 2);
    assert_eq!(r["command"], "reduce");

    let s3 = group(dir.path(), "s3.json", &symmetric(3));
    let z6 = group(dir.path(), "z6.json", &cyclic(6));
    let r = report(&run(&["reduce", &s3, &z6]));
    assert_eq!(r["outputs"]["iso_order"], 0);
    assert!(!r["outputs"]["reason"].is_null());
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = by_name("SL(2,3)").unwrap().group;
    let (h, _) = g.scrambled(5);
    let a = group(dir.path(), "a.json", &g);
    let b = group(dir.path(), "b.json", &h);
    let out1 = dir.path().join("r1.json");
    let out2 = dir.path().join("r2.json");
    for out in [&out1, &out2] {
        let o = run(&["reduce", &a, &b, "--seed", "9", "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let (r1, r2) = (std::fs::read(&out1).unwrap(), std::fs::read(&out2).unwrap());
    assert_eq!(r1, r2);
    let v: Value = serde_json::from_slice(&r1).unwrap();
    assert_eq!(v["seed"], 9);
    assert_eq!(v["outputs"]["iso_order"], 24);
}

#[test]
fn isometry_methods_agree_on_zero_map() {
    let dir = TempDir::new().unwrap();
    let zero = json!({
        "A": {"factors": [[2, 1]]},
        "B": {"factors": [[2, 1], [2, 1]]},
        "table": vec![vec![vec![0]; 4]; 4],
    });
    let f = write(dir.path(), "f.json", &zero);
    let f = f.to_str().unwrap();
    for method in ["brute", "gfgris"] {
        let r = report(&run(&["isometry", f, "--method", method]));
        assert_eq!(r["outputs"]["isometries"]["order"], "6", "{method}");
    }
}

#[test]
fn abelian_commands() {
    let dir = TempDir::new().unwrap();
    let d = write(dir.path(), "d.json", &json!({"factors": [[2, 1], [2, 1], [2, 1]]}));
    let r = report(&run(&["aut-abelian", d.to_str().unwrap()]));
    assert_eq!(r["outputs"]["aut"]["order"], "168");
    assert_eq!(r["outputs"]["composition_factors"], json!(["PSL(2,7)=PSL(3,2)"]));

    let z12 = group(dir.path(), "z12.json", &cyclic(12));
    let r = report(&run(&["canon", &z12]));
    assert_eq!(r["outputs"]["factors"], json!([[2, 2], [3, 1]]));

    let r = report(&run(&["holomorph", &z12]));
    assert_eq!(r["outputs"]["holomorph"]["order"], "48");
}

#[test]
fn series_of_semisimple_top() {
    let dir = TempDir::new().unwrap();
    let g = group(dir.path(), "g.json", &by_name("Z2xA5").unwrap().group);
    let r = report(&run(&["series", &g]));
    assert_eq!(r["outputs"]["factor_orders"], json!([2, 60]));
    assert_eq!(r["outputs"]["solvable"], false);
}

#[test]
fn wreath_eval_matches_library() {
    let dir = TempDir::new().unwrap();
    let t = WreathTower::new(vec![PermGroup::symmetric(3), PermGroup::symmetric(2)]).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let w = t.random_element(&mut rng);
    let tf = write(dir.path(), "t.json", &serde_json::to_value(t.to_file()).unwrap());
    let wf = write(dir.path(), "w.json", &serde_json::to_value(t.element_to_file(&w)).unwrap());
    let r = report(&run(&["wreath-eval", tf.to_str().unwrap(), wf.to_str().unwrap(), "--point", "2,1"]));
    assert_eq!(r["outputs"]["permutation"], json!(t.to_permutation(&w).unwrap().images()));
    assert_eq!(r["outputs"]["image"], json!(t.evaluate(&w, &[2, 1])));
}

#[test]
fn gadget_directions_feed_the_solver() {
    let dir = TempDir::new().unwrap();
    let p3 = write(dir.path(), "p3.json", &json!({"n": 3, "edges": [[0, 1], [1, 2]]}));
    let q3 = write(dir.path(), "q3.json", &json!({"n": 3, "edges": [[1, 2], [2, 0]]}));
    let r = report(&run(&["gadget", "to-color", p3.to_str().unwrap(), q3.to_str().unwrap()]));
    let inst = write(dir.path(), "inst.json", &r["outputs"]);
    let r = report(&run(&["color-iso", inst.to_str().unwrap()]));
    assert_eq!(r["outputs"]["solutions"]["order"], "2");

    let points = json!({
        "mode": "points",
        "coset": {"rep": null, "group": {"n": 3, "generators": [[1, 0, 2], [1, 2, 0]]}},
        "f1": [0, 1, 1],
        "f2": [1, 0, 1],
    });
    let inst = write(dir.path(), "points.json", &points);
    let r = report(&run(&["color-iso", inst.to_str().unwrap()]));
    assert_eq!(r["outputs"]["solutions"]["order"], "2");
    let r = report(&run(&["gadget", "to-graph", inst.to_str().unwrap()]));
    // three points, then hub and 3 clique vertices for color 0, hub and 4 for color 1
    assert_eq!(r["outputs"]["x1"]["n"], 3 + 4 + 5);
}

#[test]
fn gris_with_default_coset() {
    let dir = TempDir::new().unwrap();
    let q8 = by_name("Q8").unwrap().group;
    let (h, _) = q8.scrambled(4);
    let a = group(dir.path(), "a.json", &q8);
    let b = group(dir.path(), "b.json", &h);
    let r = report(&run(&["gris", &a, &b]));
    assert_eq!(r["outputs"]["isomorphisms"]["order"], "24");
}

#[test]
fn verify_suite_passes() {
    let r = report(&run(&["verify", "--suite", "abel-aut", "--seed", "7", "--parallel", "2"]));
    assert_eq!(r["outputs"][0]["suite"], "abel-aut");
    assert_eq!(r["outputs"][0]["failures"], 0);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let missing = run(&["series", "/nonexistent/g.json"]);
    assert_eq!(missing.status.code(), Some(2));

    let bad = write(dir.path(), "bad.json", &json!({"order": 2, "table": [[0, 1], [0, 1]]}));
    assert_eq!(run(&["series", bad.to_str().unwrap()]).status.code(), Some(2));

    let big = group(dir.path(), "big.json", &cyclic(30));
    assert_eq!(run(&["series", &big, "--max-order", "20"]).status.code(), Some(2));

    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    let known_failing = run(&["verify", "--suite", "aut-hom", "--seed", "7"]);
    assert_eq!(known_failing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&known_failing.stderr).contains("aut-hom"));
}
