//! File-format and harness contracts: golden CSV schemas, edge-list
//! round-trips, manifest echo losslessness, and exit codes.

use std::path::{Path, PathBuf};
use std::process::Command;

use sfperc_cli::config::ExperimentConfig;
use sfperc_cli::output::{parse_edge_list, parse_weights_file};
use sfperc_cli::run_command;

fn workdir(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn first_line(path: &Path) -> String {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string()
}

const GEN_CFG: &str = r#"{
    "model": {"dimension": 2, "alpha": 3.0, "lambda": 0.8,
              "weights": {"kind": "pareto", "tau": 2.5}},
    "geometry": {"side": 16, "boundary": "torus"},
    "seed": 21, "threads": 1
}"#;

#[test]
fn golden_csv_schemas() {
    let dir = workdir("golden");
    let cfg = ExperimentConfig::from_json(
        r#"{
        "model": {"dimension": 1, "alpha": 1.5, "lambda": 1.0,
                  "weights": {"kind": "constant", "value": 1.0}},
        "experiment": {"trials": 4, "sides": [32], "lambdas": [0.2, 1.0],
                       "R": 10.0, "u_grid": [10.0, 20.0, 40.0, 80.0, 160.0,
                                             320.0, 640.0, 1280.0, 2560.0, 5120.0, 10240.0]},
        "seed": 2, "threads": 1
    }"#,
    )
    .unwrap()
    .resolve(None, None);

    run_command("percolation", &cfg, &dir).unwrap();
    assert_eq!(
        first_line(&dir.join("percolation_curve.csv")),
        "L,lambda,trials,mean_fraction,stderr"
    );
    assert_eq!(
        first_line(&dir.join("percolation_trials.csv")),
        "L,trial,lambda,fraction"
    );

    run_command("degrees", &cfg, &dir).unwrap();
    assert_eq!(
        first_line(&dir.join("degrees.csv")),
        "trial,w0,degree,R,truncation_bound"
    );

    run_command("gfun", &cfg, &dir).unwrap();
    assert_eq!(first_line(&dir.join("gfun.csv")), "u,g,envelope_ratio");

    let dist_cfg = ExperimentConfig::from_json(
        r#"{
        "model": {"dimension": 2, "alpha": 3.0, "lambda": 1.0,
                  "weights": {"kind": "pareto", "tau": 2.0}},
        "geometry": {"side": 32, "boundary": "torus"},
        "experiment": {"pair_norms": [4], "pairs_per_norm": 2,
                       "instances": 1, "max_hops": 10},
        "seed": 4, "threads": 1
    }"#,
    )
    .unwrap()
    .resolve(None, None);
    run_command("distances", &dist_cfg, &dir).unwrap();
    assert_eq!(
        first_line(&dir.join("distances.csv")),
        "separation,instance,pair_id,source,target,hops"
    );
}

#[test]
fn edge_list_roundtrip_reproduces_components() {
    let dir = workdir("roundtrip");
    let cfg = ExperimentConfig::from_json(GEN_CFG).unwrap().resolve(None, None);
    run_command("generate", &cfg, &dir).unwrap();

    let (header, edges) = parse_edge_list(&dir.join("edges.txt")).unwrap();
    let keys: Vec<&str> = header.iter().map(|(k, _)| k.as_str()).collect();
    assert_eq!(
        keys,
        ["d", "L", "boundary", "alpha", "lambda", "weights", "seed", "norm", "version"]
    );
    assert!(header.iter().any(|(k, v)| k == "norm" && v == "l2"));
    // Body lines are i < j in ascending lexicographic order.
    assert!(edges.windows(2).all(|w| w[0] < w[1]));
    assert!(edges.iter().all(|&(i, j)| i < j));

    let weights = parse_weights_file(&dir.join("weights.txt")).unwrap();
    assert_eq!(weights.len(), 256);
    assert!(weights.iter().enumerate().all(|(n, &(i, _))| n as u32 == i));

    // Recompute component sizes from the files and compare with in-memory.
    let params = cfg.model_params().unwrap();
    let geometry = sfperc_core::lattice::LatticeBox::new(2, 16, sfperc_core::lattice::Boundary::Torus)
        .unwrap();
    let graph = sfperc_core::graph::generate_graph(&params, &geometry, cfg.seed).unwrap();
    let in_memory = sfperc_core::graph::cluster::connected_components(&graph);

    let mut uf = sfperc_core::graph::cluster::UnionFind::new(256);
    for &(i, j) in &edges {
        uf.union(i, j);
    }
    let mut sizes = std::collections::HashMap::new();
    for v in 0..256u32 {
        *sizes.entry(uf.find(v)).or_insert(0u32) += 1;
    }
    let mut from_file: Vec<u32> = sizes.into_values().collect();
    from_file.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(from_file, in_memory.sizes);

    // Weights in the file round-trip exactly to the sampled field.
    for (i, w) in weights {
        assert_eq!(w, graph.weights.values[i as usize]);
    }
}

#[test]
fn vanishing_lambda_emits_header_only() {
    let dir = workdir("empty");
    let cfg = ExperimentConfig::from_json(&GEN_CFG.replace("0.8", "1e-12"))
        .unwrap()
        .resolve(None, None);
    run_command("generate", &cfg, &dir).unwrap();
    let text = std::fs::read_to_string(dir.join("edges.txt")).unwrap();
    assert!(text.lines().all(|l| l.starts_with('#')));
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn manifest_config_roundtrip_is_lossless() {
    let dir = workdir("manifest");
    let cfg = ExperimentConfig::from_json(GEN_CFG).unwrap().resolve(None, None);
    run_command("generate", &cfg, &dir).unwrap();
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    let echoed: ExperimentConfig =
        serde_json::from_value(manifest["config"].clone()).unwrap();
    assert_eq!(echoed, cfg);
    assert_eq!(manifest["norm"], "l2");
    assert!(manifest["derived"]["regime"]["citations"].is_array());
}

#[test]
fn exit_codes() {
    let bin = env!("CARGO_BIN_EXE_sfperc");
    let dir = workdir("exitcodes");

    // Unknown key: config validation, exit 2.
    let bad = dir.join("bad.json");
    std::fs::write(&bad, GEN_CFG.replace("\"seed\": 21", "\"seed\": 21, \"extra\": 1")).unwrap();
    let status = Command::new(bin)
        .args(["generate", "--config", bad.to_str().unwrap(), "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2), "{status:?}");

    // Pair budget: resource guard, exit 3.
    let huge = dir.join("huge.json");
    std::fs::write(
        &huge,
        GEN_CFG.replace("\"side\": 16", "\"side\": 60000"),
    )
    .unwrap();
    let status = Command::new(bin)
        .args(["generate", "--config", huge.to_str().unwrap(), "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3), "{status:?}");

    // Valid run: exit 0.
    let good = dir.join("good.json");
    std::fs::write(&good, GEN_CFG).unwrap();
    let status = Command::new(bin)
        .args(["generate", "--config", good.to_str().unwrap(), "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0), "{status:?}");
}

#[test]
fn seed_override_changes_outputs() {
    let dir_a = workdir("seed_a");
    let dir_b = workdir("seed_b");
    let cfg = ExperimentConfig::from_json(GEN_CFG).unwrap();
    run_command("generate", &cfg.clone().resolve(Some(1), None), &dir_a).unwrap();
    run_command("generate", &cfg.resolve(Some(2), None), &dir_b).unwrap();
    let a = std::fs::read_to_string(dir_a.join("weights.txt")).unwrap();
    let b = std::fs::read_to_string(dir_b.join("weights.txt")).unwrap();
    assert_ne!(a, b);
}
