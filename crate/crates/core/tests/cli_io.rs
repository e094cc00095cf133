use std::path::Path;
use std::process::Command;

use serde_json::{json, Value};

use xxchain::chain::ChainSpec;
use xxchain::disorder::{Channels, DisorderKind, DisorderSpec, SeedPolicy};
use xxchain::ensemble::{run_sweep, PointStats, SweepConfig};
use xxchain::io::{
    self, emit_sweep, parse_sweep_config, read_sweep_csv, sweep_csv, RunRecord, SWEEP_HEADER,
};
use xxchain::Error;

const BIN: &str = env!("CARGO_BIN_EXE_xxchain");

fn small_sweep() -> SweepConfig {
    SweepConfig {
        chain: ChainSpec::proposed(10, 2.0),
        disorder: DisorderSpec {
            kind: DisorderKind::Dynamic,
            strength: 0.0,
            channels: Channels::ALL,
            n_steps: 4,
            total_time: 6.0,
            fresh_draws: false,
        },
        p_grid: vec![0.01, 0.05],
        realizations: 8,
        seed: SeedPolicy { master_seed: 77 },
    }
}

#[test]
fn csv_round_trips_default_grid() {
    let points: Vec<PointStats> = (1..=100)
        .map(|k| PointStats {
            p: k as f64 * 0.001,
            mean: 1.0 / (1.0 + k as f64 / 7.0),
            stddev: (k as f64).sqrt() / 1e3,
            stderr: (k as f64).sqrt() / 3e4,
            realizations: 1000,
        })
        .collect();
    let text = sweep_csv(&points);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 101);
    assert_eq!(lines[0], SWEEP_HEADER);
    let back = read_sweep_csv(&text).unwrap();
    assert_eq!(back.len(), points.len());
    for (a, b) in points.iter().zip(&back) {
        for (x, y) in [(a.p, b.p), (a.mean, b.mean), (a.stddev, b.stddev), (a.stderr, b.stderr)] {
            assert!((x - y).abs() <= 1e-11 * x.abs().max(1e-300), "{x} vs {y}");
        }
        assert_eq!(a.realizations, b.realizations);
    }
    assert_eq!(sweep_csv(&back), text);
}

#[test]
fn record_reruns_bit_exactly() {
    let cfg = small_sweep();
    let res = run_sweep(&cfg).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let record = RunRecord::for_sweep(&cfg, vec![], &res, io::now_rfc3339()).unwrap();
    let paths = emit_sweep(dir.path(), &res, &record, Some((0.5, 0.25))).unwrap();
    assert_eq!(paths.len(), 3);
    let stem = io::file_stem("sweep", &res.config_hash);
    for p in &paths {
        assert!(p.file_name().unwrap().to_str().unwrap().starts_with(&stem));
    }

    let json: RunRecord = serde_json::from_str(&std::fs::read_to_string(&paths[2]).unwrap()).unwrap();
    assert_eq!(json.schema_revision, io::SCHEMA_REVISION);
    assert_eq!(json.master_seed, Some(77));
    let again = run_sweep(&json.sweep_config().unwrap()).unwrap();
    assert_eq!(again.config_hash, res.config_hash);
    assert_eq!(again.points, json.sweep_points().unwrap());
    assert_eq!(sweep_csv(&again.points), std::fs::read_to_string(&paths[0]).unwrap());

    let overlay = std::fs::read_to_string(&paths[1]).unwrap();
    assert_eq!(overlay.lines().next(), Some(io::OVERLAY_HEADER));
    assert_eq!(overlay.lines().count(), cfg.p_grid.len() + 1);
}

#[test]
fn hash_tracks_config() {
    let a = small_sweep();
    let mut b = small_sweep();
    b.seed.master_seed += 1;
    assert_ne!(io::config_hash(&a).unwrap(), io::config_hash(&b).unwrap());
    assert_eq!(io::config_hash(&a).unwrap(), io::config_hash(&small_sweep()).unwrap());
}

#[test]
fn unwritable_destination_is_an_error() {
    let cfg = small_sweep();
    let res = run_sweep(&cfg).unwrap();
    let record = RunRecord::for_sweep(&cfg, vec![], &res, io::now_rfc3339()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    assert!(matches!(emit_sweep(&blocker.join("sub"), &res, &record, None), Err(Error::Io(_))));
}

#[test]
fn flags_override_and_are_recorded() {
    let doc = json!({"topology": "proposed", "N": 10, "Jm": 2.0, "Tmax": 6.0,
                     "disorder": "fluctuating", "realizations": 50});
    let flags = vec![io::parse_assignment("realizations=5").unwrap()];
    let r = parse_sweep_config(doc, &flags).unwrap();
    assert_eq!(r.config.realizations, 5);
    assert_eq!(r.overrides.len(), 1);
    assert_eq!(r.overrides[0].previous, Some(json!(50)));
}

#[test]
fn invalid_values_name_the_key() {
    let doc = json!({"topology": "proposed", "N": 10, "Jm": 2.0, "Tmax": 6.0,
                     "disorder": "static", "n_steps": 5});
    let err = parse_sweep_config(doc, &[]).unwrap_err();
    assert!(err.to_string().contains("n_steps"), "{err}");
    let doc = json!({"topology": "proposed", "N": 10, "Jm": 2.0, "Tmax": 6.0,
                     "disorder": "static", "bogus": 1});
    assert!(parse_sweep_config(doc, &[]).unwrap_err().to_string().contains("bogus"));
}

#[test]
fn every_preset_parses() {
    for name in io::PRESETS {
        let doc = io::preset(name).unwrap();
        let ok = if name.starts_with("scan") {
            io::parse_scan_config(doc, &[]).is_ok()
        } else {
            parse_sweep_config(doc, &[]).is_ok()
        };
        assert!(ok, "{name}");
    }
}

fn run_bin(args: &[&str], out: &Path) -> std::process::Output {
    Command::new(BIN)
        .args(args)
        .env(io::OUT_DIR_ENV, out)
        .output()
        .unwrap()
}

#[test]
fn binary_sweep_writes_hashed_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    std::fs::write(
        &cfg,
        json!({"topology": "proposed", "N": 10, "Jm": 2.0, "Tmax": 6.0,
               "disorder": "dynamic", "p_grid": [0.01, 0.02], "realizations": 4})
        .to_string(),
    )
    .unwrap();
    let out = run_bin(&["sweep", "--config", cfg.to_str().unwrap(), "--set", "master_seed=3"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let listed: Vec<String> = String::from_utf8(out.stdout).unwrap().lines().map(String::from).collect();
    assert_eq!(listed.len(), 2);
    let csv = std::fs::read_to_string(&listed[0]).unwrap();
    assert_eq!(read_sweep_csv(&csv).unwrap().len(), 2);
    let record: Value = serde_json::from_str(&std::fs::read_to_string(&listed[1]).unwrap()).unwrap();
    assert_eq!(record["overrides"][0]["key"], "master_seed");
    let hash = record["config_hash"].as_str().unwrap();
    assert!(listed[0].contains(&hash[..12]));

    // identical invocation, identical bytes
    let again = run_bin(&["sweep", "--config", cfg.to_str().unwrap(), "--set", "master_seed=3"], dir.path());
    assert!(again.status.success());
    assert_eq!(std::fs::read_to_string(&listed[0]).unwrap(), csv);
}

#[test]
fn binary_rejects_contradictory_sources() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_bin(&["sweep", "--preset", "fig2-static-small-jm", "--config", "x.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = run_bin(&["sweep", "--preset", "no-such-preset"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn binary_validate_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_bin(&["validate", "--configs", "3", "--n", "4"], dir.path());
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 5);

    let out = run_bin(
        &["trace", "--set", "topology=proposed", "--set", "N=10", "--set", "Jm=2.0", "--set", "t_end=2.0", "--set", "dt=0.5"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let listed = String::from_utf8(out.stdout).unwrap();
    let csv = std::fs::read_to_string(listed.lines().next().unwrap()).unwrap();
    assert_eq!(csv.lines().count(), 6);
}
