//! Builds a summary with the default diversity-aware selector and prints it
//! next to the reference.
//!
//!     cargo run --example summarize [lambda]

use std::path::Path;

use disaster_summ::corpus::{bundled_stopwords, load_tweets, PosLexicon};
use disaster_summ::ontology::{self, merge_categories, Ontology};
use disaster_summ::rouge::evaluate_texts;
use disaster_summ::{classify_corpus, load_word2vec_text, summarize, CategorySlot, ImportanceVector, SelectorConfig};

fn main() -> anyhow::Result<()> {
    let lambda: f64 = std::env::args().nth(1).map_or(Ok(0.6), |s| s.parse())?;
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let (stopwords, lexicon) = (bundled_stopwords(), PosLexicon::bundled());
    let onto = merge_categories(
        &Ontology::load(data.join("ontology.json"))?,
        &ontology::load_merges(data.join("merges.json"))?,
    )?;
    let table = load_word2vec_text(data.join("embeddings.txt"))?;
    let ds = load_tweets(data.join("datasets/flood_asia.jsonl"), &stopwords, &lexicon)?;

    let cat = classify_corpus(&ds, &onto, false);
    let importance = ImportanceVector::equal(&CategorySlot::from_partition(&cat.partition), 8)?;
    let cfg = SelectorConfig {
        lambda,
        ..SelectorConfig::default()
    };
    let summary = summarize(&cat.partition, &importance, &onto.vocabularies(false), &table, &cfg)?;

    println!("summary (lambda = {lambda}):");
    for e in &summary.entries {
        println!("  [{:<21} {:>6.3}] {}", e.category_id, e.selection_score, e.text);
    }
    let reference = ds.gold_texts().unwrap_or_default().join("\n");
    let scores = evaluate_texts(&summary.to_text(), &reference, &stopwords);
    println!(
        "\nROUGE F1 vs gold: 1 {:.3}  2 {:.3}  L {:.3}",
        scores.rouge_1.f1, scores.rouge_2.f1, scores.rouge_l.f1
    );
    Ok(())
}
