//! Every selector on the same categorized disaster and quotas, scored
//! against the gold summary.
//!
//!     cargo run --example ablations

use std::path::Path;

use disaster_summ::corpus::{bundled_stopwords, load_tweets, PosLexicon};
use disaster_summ::ontology::{self, merge_categories, Ontology};
use disaster_summ::rouge::evaluate_texts;
use disaster_summ::selector::DiversityScope;
use disaster_summ::{
    build_training_pairs, classify_corpus, fit, load_word2vec_text, predict_importance, summarize, CategorySlot,
    RegressionKind, SelectorConfig, SelectorKind,
};

fn main() -> anyhow::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let (stopwords, lexicon) = (bundled_stopwords(), PosLexicon::bundled());
    let onto = merge_categories(
        &Ontology::load(data.join("ontology.json"))?,
        &ontology::load_merges(data.join("merges.json"))?,
    )?;
    let table = load_word2vec_text(data.join("embeddings.txt"))?;
    let target = load_tweets(data.join("datasets/hurricane_usa.jsonl"), &stopwords, &lexicon)?;
    let training = load_tweets(data.join("datasets/flood_asia.jsonl"), &stopwords, &lexicon)?;

    let model = fit(
        &build_training_pairs(&training, &classify_corpus(&training, &onto, false).partition)?,
        RegressionKind::Linear,
    )?;
    let cat = classify_corpus(&target, &onto, false);
    let importance = predict_importance(&model, &CategorySlot::from_partition(&cat.partition), 8)?;
    let vocabularies = onto.vocabularies(false);
    let reference = target.gold_texts().unwrap_or_default().join("\n");

    println!(
        "{:<12} {:<14} {:>7} {:>7} {:>7}",
        "selector", "scope", "R-1", "R-2", "R-L"
    );
    for kind in SelectorKind::ALL {
        for scope in [DiversityScope::WholeSummary, DiversityScope::SameCategory] {
            let cfg = SelectorConfig {
                selector_kind: kind,
                diversity_scope: scope,
                lambda: 0.6,
                ..SelectorConfig::default()
            };
            let summary = summarize(&cat.partition, &importance, &vocabularies, &table, &cfg)?;
            let s = evaluate_texts(&summary.to_text(), &reference, &stopwords);
            let scope = format!("{scope:?}");
            println!(
                "{:<12} {scope:<14} {:>7.4} {:>7.4} {:>7.4}",
                kind.name(),
                s.rouge_1.f1,
                s.rouge_2.f1,
                s.rouge_l.f1
            );
        }
    }
    Ok(())
}
