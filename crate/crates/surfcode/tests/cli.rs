use clap::Parser;
use serde_json::Value;
use surfcode::cli::{run, Cli};
use surfcode::config::VERSION;

fn config(name: &str) -> String {
    format!("{}/configs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn invoke(args: &[&str]) -> String {
    let cli = Cli::try_parse_from(std::iter::once("surfcode").chain(args.iter().copied()))
        .unwrap_or_else(|e| panic!("{args:?}: {e}"));
    run(&cli).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

fn json(args: &[&str]) -> Value {
    let v: Value = serde_json::from_str(&invoke(args)).unwrap();
    assert_eq!(v["version"], VERSION);
    assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
    v
}

fn csv_body(text: &str) -> Vec<&str> {
    assert!(text.starts_with(&format!("# surfcode {VERSION} ")), "{text}");
    assert!(text.contains("# config_hash "), "{text}");
    text.lines().filter(|l| !l.starts_with('#')).collect()
}

#[test]
fn degeneracy_reports() {
    for (name, q) in [("one_hole.json", 2), ("two_holes.json", 4), ("torus.json", 4), ("three_holes.json", 8)] {
        let v = json(&["degeneracy", "--config", &config(name)]);
        assert_eq!(v["result"]["Q"], q, "{name}");
    }
}

#[test]
fn spectrum_report() {
    let v = json(&["spectrum", "--config", &config("two_holes.json")]);
    let r = &v["result"];
    assert_eq!(r["n_holes"], 2);
    assert_eq!(r["eigenvalues"].as_array().unwrap().len(), 6);
    assert!(r["block"]["dim"].as_u64().unwrap() < 1 << r["n_active"].as_u64().unwrap());
    assert_eq!(r["logical_expectations"].as_array().unwrap().len(), 2);
}

#[test]
fn dispersion_csv() {
    let out = invoke(&["dispersion", "--branch", "vertical", "--hy", "0.1", "--grid", "8"]);
    let rows = csv_body(&out);
    assert_eq!(rows[0], "kx,ky,energy");
    assert_eq!(rows.len(), 1 + 64);
}

#[test]
fn compare_splitting_report() {
    let v = json(&[
        "compare-splitting",
        "--config",
        &config("one_hole.json"),
        "--fields",
        "0.1,0.05",
    ]);
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["ed_splitting"].as_f64().unwrap() > 0.0));
}

#[test]
fn gates_report() {
    for gate in ["pi8", "hadamard"] {
        let v = json(&["gates", "--gate", gate]);
        assert!(v["result"]["max_deviation"].as_f64().unwrap() <= 1e-12);
    }
    let v = json(&["gates", "--gate", "custom", "--theta", "0.3", "--phi", "-1.2", "--gamma", "2"]);
    assert!(v["result"]["unitarity_error"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn init_csv() {
    let out = invoke(&["init", "--n", "2", "--T", "50", "--steps", "40"]);
    let rows = csv_body(&out);
    assert_eq!(rows[0], "t,h,fidelity");
    assert_eq!(rows.len(), 1 + 41);
    assert!(out.contains("# final fidelity"));
}

#[test]
fn tomography_report() {
    let v = json(&["tomography", "--n", "2", "--state", "bell"]);
    assert!(v["result"]["max_parameter_error"].as_f64().unwrap() <= 1e-6);
    let v = json(&["tomography", "--n", "1", "--state", "plus-i", "--shots", "500"]);
    assert_eq!(v["seed"], 7);
}

#[test]
fn decoherence_outputs() {
    let v = json(&["decoherence", "--hx", "0.01", "--Lp", "10"]);
    let t_star = v["result"]["T_star"].as_f64().unwrap();
    assert!((t_star - 0.0668).abs() < 1e-4);
    let out = invoke(&["decoherence", "--sweep", "hx=0.01:0.1:10"]);
    let rows = csv_body(&out);
    assert_eq!(rows.len(), 11);
}

#[test]
fn fixed_seed_is_deterministic() {
    let cases: [&[&str]; 3] = [
        &["--seed", "11", "tomography", "--n", "2", "--state", "random", "--shots", "200"],
        &["--seed", "3", "spectrum", "--config", &config("one_hole.json")],
        &["init", "--n", "2", "--T", "20", "--steps", "10"],
    ];
    for args in cases {
        assert_eq!(invoke(args), invoke(args), "{args:?}");
    }
    let a = invoke(&["--seed", "1", "tomography", "--n", "1"]);
    let b = invoke(&["--seed", "2", "tomography", "--n", "1"]);
    assert_ne!(a, b);
}

#[test]
fn hash_tracks_inputs() {
    let a = json(&["gates", "--gate", "pi8"]);
    let b = json(&["gates", "--gate", "hadamard"]);
    assert_ne!(a["config_hash"], b["config_hash"]);
}

#[test]
fn bad_input_is_an_error() {
    let cli = Cli::try_parse_from(["surfcode", "degeneracy", "--config", "/nonexistent.json"]).unwrap();
    assert!(run(&cli).is_err());
    assert!(Cli::try_parse_from(["surfcode", "frobnicate"]).is_err());
    let cli = Cli::try_parse_from(["surfcode", "decoherence", "--sweep", "hy=1:2:3"]).unwrap();
    assert!(run(&cli).is_err());
}
