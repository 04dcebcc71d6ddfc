//! Harvests candidate keywords from reference documents and folds the
//! reviewer-approved ones into the ontology.
//!
//!     cargo run --example extend_vocabulary

use std::path::Path;

use disaster_summ::corpus::{bundled_stopwords, PosLexicon};
use disaster_summ::ontology::{
    self, apply_approvals, harvest_candidates, merge_categories, Ontology, DEFAULT_MIN_FREQ,
};
use disaster_summ::pipeline::read_documents;

fn main() -> anyhow::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let seed = Ontology::load(data.join("ontology.json"))?;
    let merged = merge_categories(&seed, &ontology::load_merges(data.join("merges.json"))?)?;
    println!("{} categories, {} after merging", seed.len(), merged.len());

    let docs = read_documents(&[data.join("docs")])?;
    let candidates = harvest_candidates(
        &merged,
        &docs,
        &PosLexicon::bundled(),
        &bundled_stopwords(),
        DEFAULT_MIN_FREQ,
    );
    println!("\ncandidates (frequency >= {DEFAULT_MIN_FREQ}):");
    ontology::write_candidate_report(&candidates, std::io::stdout())?;

    let approvals = ontology::load_approvals(data.join("approvals.csv"))?;
    let extended = apply_approvals(&merged, &candidates, &approvals)?;
    println!();
    for cat in extended.categories() {
        println!(
            "{:<22} seed {:>2}  extended {:?}",
            cat.id,
            cat.seed_keywords.len(),
            cat.extended_keywords
        );
    }
    Ok(())
}
