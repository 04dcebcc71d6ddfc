//! # disaster-summ
//!
//! Extractive summarization of disaster tweets guided by a category ontology.
//!
//! The pipeline runs in three phases:
//!
//! 1. **Categorize**: every tweet goes to the ontology category whose
//!    vocabulary shares the most keywords with it ([`categorizer`]). Category
//!    vocabularies can be grown from reference documents and a reviewer's
//!    approvals ([`ontology`]).
//! 2. **Apportion**: the most similar past disaster ([`disaster_sim`]) provides
//!    training data for a regression that predicts how many summary slots
//!    each category deserves ([`importance`]).
//! 3. **Select**: within each category tweets are picked greedily, trading
//!    embedding relevance to the category vocabulary against redundancy with
//!    the summary so far ([`selector`]).
//!
//! Summaries are scored with ROUGE-1/2/L ([`rouge`]). [`pipeline`] wires the
//! phases together behind a TOML config and a JSON run report.

pub mod categorizer;
pub mod corpus;
pub mod disaster_sim;
pub mod embeddings;
pub mod error;
pub mod importance;
pub mod ontology;
pub mod pipeline;
pub mod rouge;
pub mod selector;

pub use categorizer::{classify, classify_corpus, sem_sim, Categorization, CategoryAssignment, MatchedBy, Partition};
pub use corpus::{
    extract_keywords, load_tweets, preprocess_text, DisasterDataset, DisasterType, PosLexicon, PosTag, PosTagger, Tweet,
};
pub use disaster_sim::{
    build_profile, cat_ic, cat_p, dis_sim, most_similar, CategoryProfile, DisasterProfile, SimilarityScore,
};
pub use embeddings::{cosine, load_word2vec_text, EmbeddingTable};
pub use error::{Error, Result};
pub use importance::{
    build_training_pairs, fit, predict_importance, CategorySlot, ImportanceVector, RegressionKind, RegressionModel,
};
pub use ontology::{apply_approvals, harvest_candidates, merge_categories, CandidateKeyword, Category, Ontology};
pub use pipeline::{run_pipeline, PipelineConfig, RunReport};
pub use rouge::{rouge_l, rouge_n, RougeReport, RougeScore};
pub use selector::{dmmr_select, sim1, sim2, summarize, SelectorConfig, SelectorKind, Sim1Mode, Summary};
