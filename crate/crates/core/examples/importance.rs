//! Fits each regression kind on a training disaster and turns its predictions
//! into per-category summary quotas for the target.
//!
//!     cargo run --example importance

use std::path::Path;

use disaster_summ::corpus::{bundled_stopwords, load_tweets, PosLexicon};
use disaster_summ::ontology::{self, merge_categories, Ontology};
use disaster_summ::{build_training_pairs, classify_corpus, fit, predict_importance, CategorySlot, RegressionKind};

fn main() -> anyhow::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let (stopwords, lexicon) = (bundled_stopwords(), PosLexicon::bundled());
    let onto = merge_categories(
        &Ontology::load(data.join("ontology.json"))?,
        &ontology::load_merges(data.join("merges.json"))?,
    )?;
    let training = load_tweets(data.join("datasets/quake_asia.jsonl"), &stopwords, &lexicon)?;
    let target = load_tweets(data.join("datasets/flood_asia.jsonl"), &stopwords, &lexicon)?;

    let pairs = build_training_pairs(&training, &classify_corpus(&training, &onto, false).partition)?;
    println!("training pairs from {}:", training.id);
    for p in &pairs {
        println!("  {:<22} share {:.3}  gold tweets {}", p.category_id, p.x, p.y);
    }

    let slots = CategorySlot::from_partition(&classify_corpus(&target, &onto, false).partition);
    let m = 8;
    let kinds = [
        RegressionKind::Linear,
        RegressionKind::Ridge { alpha: 0.1 },
        RegressionKind::Bayesian {
            prior_precision: 1.0,
            noise_precision: 1.0,
        },
        RegressionKind::Equal,
    ];
    println!("\nquotas for {} (m = {m}):", target.id);
    for kind in kinds {
        let model = fit(&pairs, kind)?;
        let iv = predict_importance(&model, &slots, m)?;
        let coef = model
            .coefficients
            .map_or("-".to_string(), |c| format!("{:.2}x{:+.2}", c.slope, c.intercept));
        println!("  {:<9} {coef:<14} {:?}", kind.name(), iv.counts);
    }
    Ok(())
}
