//! Keyword-overlap categorization of one disaster, with and without the
//! extended vocabulary.
//!
//!     cargo run --example categorize

use std::path::Path;

use disaster_summ::corpus::{bundled_stopwords, load_tweets, PosLexicon};
use disaster_summ::ontology::{
    self, apply_approvals, harvest_candidates, merge_categories, Ontology, DEFAULT_MIN_FREQ,
};
use disaster_summ::pipeline::read_documents;
use disaster_summ::{classify_corpus, MatchedBy};

fn main() -> anyhow::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let (stopwords, lexicon) = (bundled_stopwords(), PosLexicon::bundled());
    let onto = merge_categories(
        &Ontology::load(data.join("ontology.json"))?,
        &ontology::load_merges(data.join("merges.json"))?,
    )?;
    let docs = read_documents(&[data.join("docs")])?;
    let candidates = harvest_candidates(&onto, &docs, &lexicon, &stopwords, DEFAULT_MIN_FREQ);
    let onto = apply_approvals(
        &onto,
        &candidates,
        &ontology::load_approvals(data.join("approvals.csv"))?,
    )?;

    let ds = load_tweets(data.join("datasets/flood_asia.jsonl"), &stopwords, &lexicon)?;
    let seed_only = classify_corpus(&ds, &onto, false);
    let extended = classify_corpus(&ds, &onto, true);
    println!("{}: {} tweets", ds.id, ds.tweets.len());
    println!(
        "  seed vocabulary      {:>6.2}% classified",
        seed_only.stats.classified_pct
    );
    println!(
        "  + extended keywords  {:>+6.2}%",
        extended.stats.extended_vocabulary_gain_pct
    );

    println!("\ntweets only the extended vocabulary reaches:");
    for a in extended
        .assignments
        .iter()
        .filter(|a| a.matched_by == MatchedBy::Extended)
    {
        let text = &ds.tweet(&a.tweet_id).unwrap().raw_text;
        println!("  {:<22} {text}", a.category_id.as_deref().unwrap_or("-"));
    }

    println!("\npartition:");
    for (id, n) in extended.partition.counts() {
        println!("  {id:<22} {n}");
    }
    Ok(())
}
