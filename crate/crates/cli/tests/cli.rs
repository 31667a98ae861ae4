use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn mlsp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mlsp")).args(args).env_remove("MLSP_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn slp_on_octahedron_exits_zero() {
    let oct = corpus("octahedron.json");
    let o = mlsp(&["slp", "--input", path(&oct), "--field", "gf2k:32", "--trials", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("summary: certified"));
}

#[test]
fn counterexample_confirms_degenerate_middle() {
    let o = mlsp(&["counterexample", "--i", "1", "--d", "3", "--n", "5", "--trials", "100"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("degenerate middle confirmed: dim A_1 = dim A_2 = 8"));
}

#[test]
fn missing_input_exits_three() {
    let o = mlsp(&["hvec", "--input", "missing.json"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("missing.json"));
}

#[test]
fn unknown_flag_prints_usage_and_exits_three() {
    let o = mlsp(&["slp", "--bogus"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    assert_eq!(code(&mlsp(&["--help"])), 0);
}

#[test]
fn bad_field_descriptor_is_an_input_error() {
    let oct = corpus("octahedron.json");
    assert_eq!(code(&mlsp(&["slp", "--input", path(&oct), "--field", "gfp:15"])), 3);
    assert_eq!(code(&mlsp(&["slp", "--input", path(&oct), "--trials", "0"])), 3);
}

#[test]
fn refutation_exits_one_with_kernel_witness() {
    let pent = corpus("pentagon.json");
    let o = mlsp(&["slp", "--input", path(&pent), "--field", "gfp:3", "--trials", "1", "--seed", "5", "--format", "json"]);
    assert_eq!(code(&o), 1);
    let r = json(&o);
    assert_eq!(r["summary"]["verdict"], "refuted");
    let refuted: Vec<_> = r["checks"].as_array().unwrap().iter().filter(|c| c["verdict"] == "refuted").collect();
    assert!(refuted[0]["witness"].as_str().unwrap().contains("kernel vector"));
}

#[test]
fn unmet_hypothesis_exits_two() {
    let rp2 = corpus("rp2-six.json");
    let o = mlsp(&["slp", "--input", path(&rp2), "--format", "json"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["summary"]["verdict"], "hypothesis-unmet");
}

#[test]
fn boundary_ratio_case_is_inconclusive() {
    let rp2 = corpus("rp2-six.json");
    let o = mlsp(&["inequalities", "--input", path(&rp2), "--which", "manifold-h-ratio", "--format", "json"]);
    assert_eq!(code(&o), 2);
    let r = json(&o);
    let c = r["checks"].as_array().unwrap().iter().find(|c| c["statement"] == "manifold-h-ratio-boundary").unwrap();
    assert_eq!(c["verdict"], "inconclusive");
    assert_eq!(c["values"], serde_json::json!([6, 3]));
}

#[test]
fn every_verdict_class_maps_to_its_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("r2.json");
    std::fs::write(&f, "{\"facets\": [[1,2,3],[1,3,4],[1,4,5],[1,5,6],[1,2,6],[2,3,5],[2,4,5],[2,4,6],[3,4,6],[3,5,6]]}").unwrap();
    let cases: [(&[&str], i32); 5] = [
        (&["manifold"], 0),
        (&["2cm"], 0),
        (&["slp"], 2),
        (&["inequalities", "--which", "manifold-flag-h"], 0),
        (&["inequalities", "--which", "manifold-flag-h", "--betti", "0,0,5,1"], 1),
    ];
    for (args, want) in cases {
        let mut v = args.to_vec();
        v.extend(["--input", f.to_str().unwrap()]);
        assert_eq!(code(&mlsp(&v)), want, "{args:?}");
    }
}

#[test]
fn same_seed_gives_identical_json() {
    let oct = corpus("octahedron.json");
    let args = ["slp", "--input", path(&oct), "--seed", "11", "--format", "json"];
    assert_eq!(mlsp(&args).stdout, mlsp(&args).stdout);
    let plain = ["artinian", "--input", path(&oct), "--format", "json"];
    assert_eq!(mlsp(&plain).stdout, mlsp(&plain).stdout);
}

#[test]
fn seed_defaults_from_input_hash_and_env_overrides() {
    let oct = corpus("octahedron.json");
    let seed_of = |o: &Output| json(o)["seed"].as_u64().unwrap();
    let a = mlsp(&["artinian", "--input", path(&oct), "--format", "json"]);
    let b = mlsp(&["artinian", "--input", path(&oct), "--format", "json"]);
    assert_eq!(seed_of(&a), seed_of(&b));
    let env = Command::new(env!("CARGO_BIN_EXE_mlsp"))
        .args(["artinian", "--input", path(&oct), "--format", "json"])
        .env("MLSP_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(seed_of(&env), 42);
    let flag = mlsp(&["artinian", "--input", path(&oct), "--format", "json", "--seed", "9"]);
    assert_eq!(seed_of(&flag), 9);
}

#[test]
fn reports_carry_seeds() {
    let oct = corpus("octahedron.json");
    let r = json(&mlsp(&["ends", "--input", path(&oct), "--seed", "100", "--trials", "2", "--format", "json"]));
    let seeds: std::collections::BTreeSet<u64> = r["checks"].as_array().unwrap().iter().map(|c| c["seed"].as_u64().unwrap()).collect();
    assert_eq!(seeds.into_iter().collect::<Vec<_>>(), vec![100, 101]);
}

#[test]
fn hvec_text_for_pentagon() {
    let o = mlsp(&["hvec", "--input", path(&corpus("pentagon.json"))]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().any(|l| l == "h = (1,3,1)"));
}

#[test]
fn parse_defaults_and_balance_errors() {
    let o = json(&mlsp(&["info", "--input", path(&corpus("octahedron.json")), "--format", "json"]));
    assert_eq!(o["balance"], serde_json::json!([1, 1, 1]));
    let dir = tempfile::tempdir().unwrap();
    let plain = dir.path().join("plain.json");
    std::fs::write(&plain, r#"{"facets": [[1,2,3],[1,2,4],[1,3,4],[2,3,4]]}"#).unwrap();
    let o = json(&mlsp(&["info", "--input", plain.to_str().unwrap(), "--format", "json"]));
    assert_eq!(o["balance"], serde_json::json!([3]));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\n  \"facets\": [[\"a\", \"b\"]],\n  \"coloring\": {\"a\": 1, \"b\": 4},\n  \"balance\": [1, 1, 0]\n}\n").unwrap();
    let o = mlsp(&["info", "--input", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"facets\": [[1,2]], \"colour\": {}}").unwrap();
    assert_eq!(code(&mlsp(&["info", "--input", garbage.to_str().unwrap()])), 3);
}

#[test]
fn construct_output_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = out.to_str().unwrap();
    let cases: [&[&str]; 4] = [
        &["construct", "join", "--a", "2,1,1", "-o", o],
        &["construct", "crosspoly", "--d", "4", "-o", o],
        &["construct", "simplexbdry", "--k", "3", "-o", o],
        &["construct", "stacked", "--d", "3", "--n", "6", "--seed", "2", "-o", o],
    ];
    for args in cases {
        assert_eq!(code(&mlsp(args)), 0, "{args:?}");
        assert_eq!(code(&mlsp(&["info", "--input", o])), 0, "{args:?}");
        let again = dir.path().join("again.json");
        let sd = mlsp(&["construct", "sd", "--input", o, "--l", "1", "-o", again.to_str().unwrap()]);
        assert_eq!(code(&sd), 0, "{args:?}");
        assert_eq!(code(&mlsp(&["info", "--input", again.to_str().unwrap()])), 0);
    }
    let stellar = mlsp(&["construct", "stellar", "--input", path(&corpus("octahedron.json")), "--face", "1,3"]);
    assert_eq!(code(&stellar), 0);
    let v: serde_json::Value = serde_json::from_slice(&stellar.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 7);
}

#[test]
fn construct_matches_bundled_corpus() {
    for (args, file) in [
        (vec!["construct", "crosspoly", "--d", "3"], "octahedron.json"),
        (vec!["construct", "join", "--a", "3,3"], "join-3-3.json"),
        (vec!["construct", "simplexbdry", "--k", "3"], "tetrahedron-boundary.json"),
    ] {
        let o = mlsp(&args);
        assert_eq!(stdout(&o), std::fs::read_to_string(corpus(file)).unwrap(), "{file}");
    }
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = mlsp(&["ends", "--input", path(&corpus("tetrahedron-boundary.json")), "--format", "json", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["summary"]["verdict"], "certified");
    let bad = mlsp(&["info", "--input", path(&corpus("pentagon.json")), "-o", "/nonexistent/dir/x"]);
    assert_eq!(code(&bad), 3);
}

#[test]
fn symbolic_commands() {
    let o = mlsp(&["anisotropy", "--input", path(&corpus("pentagon.json")), "--b", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["checks"][0]["rank"], 3);
    let o = mlsp(&["diff-formula", "--input", path(&corpus("triangle.json")), "--general"]);
    assert_eq!(code(&o), 0);
    let o = mlsp(&["artinian", "--input", path(&corpus("octahedron.json")), "--symbolic", "--format", "json"]);
    assert_eq!(json(&o)["coarse"], serde_json::json!([1, 3, 3, 1]));
    let o = mlsp(&["anisotropy", "--input", path(&corpus("pentagon.json")), "--b", "2"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn check_and_bmu_on_rp2() {
    let rp2 = corpus("rp2-six.json");
    let o = json(&mlsp(&["check", "--input", path(&rp2), "--format", "json"]));
    let get = |name: &str| o.as_array().unwrap().iter().find(|p| p["name"] == name).unwrap()["verdict"]["holds"].as_bool().unwrap();
    assert!(get("homology-manifold"));
    assert!(!get("homology-sphere"));
    let q = json(&mlsp(&["check", "--input", path(&rp2), "--field", "rat", "--format", "json"]));
    let orientable = q.as_array().unwrap().iter().find(|p| p["name"] == "orientable").unwrap();
    assert_eq!(orientable["verdict"]["holds"], false);
    let hv = json(&mlsp(&["hvec", "--input", path(&rp2), "--format", "json"]));
    assert_eq!(hv["h_prime"], serde_json::json!([1, 3, 6, 1]));
    assert_eq!(hv["h_double_prime"], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(code(&mlsp(&["bmu", "--input", path(&rp2)])), 0);
}
