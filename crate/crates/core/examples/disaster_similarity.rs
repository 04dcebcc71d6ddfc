//! Pairwise disaster similarity over the bundled datasets, and the best
//! training source for a target under the homogeneity filter.
//!
//!     cargo run --example disaster_similarity

use std::path::Path;

use disaster_summ::corpus::{bundled_stopwords, load_tweets, PosLexicon};
use disaster_summ::disaster_sim::{SimilarityMatrix, DEFAULT_TOP_K};
use disaster_summ::ontology::{self, merge_categories, Ontology};
use disaster_summ::{build_profile, classify_corpus, most_similar, DisasterProfile};

fn main() -> anyhow::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let (stopwords, lexicon) = (bundled_stopwords(), PosLexicon::bundled());
    let onto = merge_categories(
        &Ontology::load(data.join("ontology.json"))?,
        &ontology::load_merges(data.join("merges.json"))?,
    )?;

    let mut profiles = Vec::new();
    for name in ["flood_asia", "quake_asia", "hurricane_usa", "shooting_usa"] {
        let ds = load_tweets(data.join(format!("datasets/{name}.jsonl")), &stopwords, &lexicon)?;
        let cat = classify_corpus(&ds, &onto, false);
        profiles.push(DisasterProfile::new(&ds, build_profile(&cat.partition, DEFAULT_TOP_K)?));
    }
    print!("{}", SimilarityMatrix::compute(&profiles, 0.5, 0.5)?.to_csv());

    let (target, rest) = profiles.split_first().unwrap();
    for homogeneous in [false, true] {
        let (best, score) = most_similar(target, rest, homogeneous, 0.5, 0.5)?;
        println!(
            "\n{} -> {} (homogeneous only: {homogeneous})  cat_ic {:.3}  cat_p {:.3}  dis_sim {:.3}",
            target.id, best.id, score.cat_ic, score.cat_p, score.dis_sim
        );
    }
    Ok(())
}
