use std::fs;
use std::path::{Path, PathBuf};

use disaster_summ::pipeline::{run_pipeline, run_to_dir, PipelineConfig, QUARANTINE_DIR, REPORT_FILE, SCHEMA_VERSION};
use disaster_summ::{Error, RegressionKind, SelectorKind};

fn bundled() -> (PipelineConfig, PathBuf) {
    PipelineConfig::load(Path::new(env!("CARGO_MANIFEST_DIR")).join("data/pipeline.toml")).unwrap()
}

#[test]
fn report_materializes_every_default() {
    let (cfg, base) = bundled();
    let report = run_pipeline(&cfg, &base).unwrap();
    let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(json["schema_version"], SCHEMA_VERSION);
    let c = &json["config"];
    for key in [
        "use_extended",
        "top_k",
        "min_freq",
        "w1",
        "w2",
        "regression",
        "selector",
    ] {
        assert!(!c[key].is_null(), "{key} missing from the embedded config");
    }
    assert_eq!(c["selector"]["seed"], 0);
    assert_eq!(c["selector"]["sim1_mode"], "sum");

    // the embedded config alone reproduces the run
    let again: PipelineConfig = serde_json::from_value(c.clone()).unwrap();
    assert_eq!(run_pipeline(&again, &base).unwrap(), report);
}

#[test]
fn toml_round_trip() {
    let (cfg, _) = bundled();
    assert_eq!(PipelineConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
    assert!(PipelineConfig::from_toml("m = 3\nbogus = 1\n").is_err());
}

#[test]
fn homogeneous_filter_picks_the_asian_earthquake() {
    let (cfg, base) = bundled();
    let report = run_pipeline(&cfg, &base).unwrap();
    assert_eq!(report.training.unwrap().dataset_id, "quake_asia");
    let cands = report.candidates.unwrap();
    assert_eq!(cands.iter().filter(|c| c.homogeneous).count(), 1);
    let eval = report.evaluation.unwrap();
    assert_eq!(eval.reference_source, "target_gold");
    assert!(eval.scores.rouge_1.f1 > 0.0);
}

#[test]
fn selector_and_regression_options_reach_the_report() {
    let (mut cfg, base) = bundled();
    cfg.selector.selector_kind = SelectorKind::Kmeans;
    cfg.selector.seed = 11;
    cfg.regression = RegressionKind::Bayesian {
        prior_precision: 0.5,
        noise_precision: 2.0,
    };
    cfg.homogeneous_only = false;
    let report = run_pipeline(&cfg, &base).unwrap();
    let summary = report.summary.unwrap();
    assert_eq!(summary.config.selector_kind, SelectorKind::Kmeans);
    assert_eq!(summary.entries.len(), cfg.m);
    assert!(report.training.unwrap().model.posterior_covariance.is_some());
}

#[test]
fn reference_file_overrides_gold() {
    let (mut cfg, base) = bundled();
    let dir = tempfile::tempdir().unwrap();
    let reference = dir.path().join("reference.txt");
    let first = run_pipeline(&cfg, &base).unwrap();
    fs::write(&reference, first.summary.unwrap().to_text()).unwrap();
    cfg.reference = Some(reference);
    let report = run_pipeline(&cfg, &base).unwrap();
    let eval = report.evaluation.unwrap();
    assert_eq!(eval.reference_source, "file");
    assert_eq!(eval.scores.rouge_l.f1, 1.0);
}

#[test]
fn invalid_config_fails_at_validation() {
    let (mut cfg, base) = bundled();
    cfg.m = 0;
    let (err, partial) = run_pipeline(&cfg, &base).unwrap_err();
    assert!(matches!(err, Error::Stage { stage: "validate", .. }));
    assert!(partial.target.is_none());

    cfg.m = 500;
    let dir = tempfile::tempdir().unwrap();
    let err = run_to_dir(&cfg, &base, dir.path()).unwrap_err();
    assert!(err.to_string().contains("importance"), "{err}");
    assert!(dir.path().join(QUARANTINE_DIR).join(REPORT_FILE).exists());
}
