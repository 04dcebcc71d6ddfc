//! Runs every stage from a TOML config and writes the run report and summary.
//!
//!     cargo run --example pipeline [config.toml] [out_dir]

use std::path::{Path, PathBuf};

use disaster_summ::pipeline::{run_to_dir, PipelineConfig};

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let config = args.next().map_or_else(
        || Path::new(env!("CARGO_MANIFEST_DIR")).join("data/pipeline.toml"),
        PathBuf::from,
    );
    let out = args
        .next()
        .map_or_else(|| std::env::temp_dir().join("disaster-summ-run"), PathBuf::from);

    let (cfg, base) = PipelineConfig::load(&config)?;
    let report = run_to_dir(&cfg, &base, &out)?;

    let target = report.target.as_ref().unwrap();
    let training = report.training.as_ref().unwrap();
    println!(
        "target {}: {:.1}% classified",
        target.dataset_id, target.stats.classified_pct
    );
    println!(
        "trained on {} (dis_sim {:.3})",
        training.dataset_id, training.similarity.dis_sim
    );
    println!("quotas {:?}", report.importance.as_ref().unwrap().counts);
    print!("\n{}", report.summary.as_ref().unwrap().to_text());
    if let Some(eval) = &report.evaluation {
        println!(
            "\nROUGE-1 F1 {:.3} against {}",
            eval.scores.rouge_1.f1, eval.reference_source
        );
    }
    println!("\nreport written to {}", out.display());
    Ok(())
}
