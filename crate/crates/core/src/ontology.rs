//! Category ontology: loading, merging redundant categories and growing
//! category vocabularies from auxiliary documents.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::{preprocess_text, PosTagger};
use crate::error::{Error, Result};

/// Default minimum frequency for a harvested keyword to become a candidate.
pub const DEFAULT_MIN_FREQ: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Category {
    pub id: String,
    pub name: String,
    #[serde(rename = "keywords")]
    pub seed_keywords: BTreeSet<String>,
    #[serde(default, skip_serializing_if = "BTreeSet::is_empty")]
    pub extended_keywords: BTreeSet<String>,
}

impl Category {
    /// The category vocabulary. With `use_extended` false only the seed keywords count.
    pub fn vocabulary(&self, use_extended: bool) -> BTreeSet<&str> {
        let mut vocab: BTreeSet<&str> = self.seed_keywords.iter().map(String::as_str).collect();
        if use_extended {
            vocab.extend(self.extended_keywords.iter().map(String::as_str));
        }
        vocab
    }

    pub fn contains(&self, word: &str, use_extended: bool) -> bool {
        self.seed_keywords.contains(word) || (use_extended && self.extended_keywords.contains(word))
    }
}

/// A flat list of categories, kept sorted by id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ontology {
    categories: Vec<Category>,
}

fn normalize(words: impl IntoIterator<Item = String>) -> BTreeSet<String> {
    words
        .into_iter()
        .map(|w| w.trim().to_lowercase())
        .filter(|w| !w.is_empty())
        .collect()
}

impl Ontology {
    /// Validates and normalizes a category list: ids unique, keywords lowercased, non-empty.
    pub fn new(categories: Vec<Category>) -> Result<Self> {
        if categories.is_empty() {
            return Err(Error::InvalidArgument("ontology has no categories".into()));
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(categories.len());
        for cat in categories {
            if !seen.insert(cat.id.clone()) {
                return Err(Error::DuplicateCategory(cat.id));
            }
            let seed_keywords = normalize(cat.seed_keywords);
            if seed_keywords.is_empty() {
                return Err(Error::EmptyCategory(cat.id));
            }
            let extended_keywords = normalize(cat.extended_keywords)
                .into_iter()
                .filter(|w| !seed_keywords.contains(w))
                .collect();
            out.push(Category {
                id: cat.id,
                name: cat.name,
                seed_keywords,
                extended_keywords,
            });
        }
        out.sort_by(|a, b| a.id.cmp(&b.id));
        Ok(Ontology { categories: out })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct RawCategory {
            id: String,
            #[serde(default)]
            name: Option<String>,
            keywords: Vec<String>,
            #[serde(default)]
            extended_keywords: Vec<String>,
        }
        #[derive(Deserialize)]
        struct RawOntology {
            categories: Vec<RawCategory>,
        }

        let raw: RawOntology = serde_json::from_str(text)?;
        let categories = raw
            .categories
            .into_iter()
            .map(|c| Category {
                name: c.name.unwrap_or_else(|| c.id.clone()),
                id: c.id,
                seed_keywords: c.keywords.into_iter().collect(),
                extended_keywords: c.extended_keywords.into_iter().collect(),
            })
            .collect();
        Ontology::new(categories)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ontology serializes")
    }

    pub fn categories(&self) -> &[Category] {
        &self.categories
    }

    /// Number of categories.
    pub fn len(&self) -> usize {
        self.categories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.categories.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Category> {
        self.categories
            .binary_search_by(|c| c.id.as_str().cmp(id))
            .ok()
            .map(|i| &self.categories[i])
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.categories.iter().map(|c| c.id.as_str())
    }

    /// Vocabulary per category id.
    pub fn vocabularies(&self, use_extended: bool) -> BTreeMap<String, BTreeSet<String>> {
        self.categories
            .iter()
            .map(|c| {
                let vocab = c.vocabulary(use_extended).into_iter().map(str::to_owned).collect();
                (c.id.clone(), vocab)
            })
            .collect()
    }

    /// Every keyword of every category.
    pub fn all_keywords(&self, use_extended: bool) -> BTreeSet<String> {
        self.categories
            .iter()
            .flat_map(|c| c.vocabulary(use_extended))
            .map(str::to_owned)
            .collect()
    }
}

/// Reads a merge file: a JSON object mapping victim id to survivor id.
pub fn load_merges(path: impl AsRef<Path>) -> Result<BTreeMap<String, String>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

/// Folds each victim category into its survivor. Chains (`a -> b`, `b -> c`)
/// resolve to the final survivor; cycles are rejected.
pub fn merge_categories(ontology: &Ontology, merges: &BTreeMap<String, String>) -> Result<Ontology> {
    for (victim, survivor) in merges {
        if victim == survivor {
            return Err(Error::InvalidMerge(format!("`{victim}` merged into itself")));
        }
        for id in [victim, survivor] {
            if ontology.get(id).is_none() {
                return Err(Error::UnknownCategory(id.clone()));
            }
        }
    }

    let resolve = |start: &str| -> Result<String> {
        let mut current = start;
        let mut hops = 0;
        while let Some(next) = merges.get(current) {
            current = next;
            hops += 1;
            if hops > merges.len() {
                return Err(Error::InvalidMerge(format!("cycle through `{start}`")));
            }
        }
        Ok(current.to_owned())
    };

    let mut survivors: BTreeMap<String, Category> = ontology
        .categories
        .iter()
        .filter(|c| !merges.contains_key(&c.id))
        .map(|c| (c.id.clone(), c.clone()))
        .collect();

    for victim in ontology.categories.iter().filter(|c| merges.contains_key(&c.id)) {
        let target = resolve(&victim.id)?;
        let survivor = survivors.get_mut(&target).expect("resolved merge target survives");
        survivor.seed_keywords.extend(victim.seed_keywords.iter().cloned());
        survivor
            .extended_keywords
            .extend(victim.extended_keywords.iter().cloned());
    }

    let categories = survivors
        .into_values()
        .map(|mut c| {
            let seed = &c.seed_keywords;
            c.extended_keywords.retain(|w| !seed.contains(w));
            c
        })
        .collect();
    Ontology::new(categories)
}

/// A word proposed for a category's vocabulary, awaiting review.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateKeyword {
    pub category_id: String,
    pub word: String,
    pub frequency: usize,
    pub approved: bool,
}

/// Splits text into sentences at `.`, `!` or `?` followed by whitespace or end of text.
pub fn split_sentences(doc: &str) -> Vec<&str> {
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut chars = doc.char_indices().peekable();
    while let Some((idx, c)) = chars.next() {
        if matches!(c, '.' | '!' | '?') {
            let at_boundary = match chars.peek() {
                None => true,
                Some((_, next)) => next.is_whitespace(),
            };
            if at_boundary {
                let end = idx + c.len_utf8();
                let sentence = doc[start..end].trim();
                if !sentence.is_empty() {
                    sentences.push(sentence);
                }
                start = end;
            }
        }
    }
    let tail = doc[start..].trim();
    if !tail.is_empty() {
        sentences.push(tail);
    }
    sentences
}

/// Proposes new vocabulary for every category from plain-text documents.
///
/// A sentence is relevant to a category when it contains one of the category's
/// current keywords. Content words of relevant sentences that are not yet in the
/// vocabulary are counted per occurrence; those reaching `min_freq` become
/// candidates. Output is sorted by category id, descending frequency, then word.
pub fn harvest_candidates(
    ontology: &Ontology,
    docs: &[String],
    tagger: &dyn PosTagger,
    stopwords: &HashSet<String>,
    min_freq: usize,
) -> Vec<CandidateKeyword> {
    let min_freq = min_freq.max(1);
    let sentences: Vec<Vec<String>> = docs
        .iter()
        .flat_map(|d| split_sentences(d))
        .map(|s| preprocess_text(s, stopwords))
        .filter(|toks| !toks.is_empty())
        .collect();
    let content: Vec<Vec<bool>> = sentences
        .iter()
        .map(|toks| toks.iter().map(|t| tagger.tag(t).is_content()).collect())
        .collect();

    let mut out = Vec::new();
    for category in &ontology.categories {
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for (tokens, is_content) in sentences.iter().zip(&content) {
            if !tokens.iter().any(|t| category.contains(t, true)) {
                continue;
            }
            for (tok, _) in tokens.iter().zip(is_content).filter(|(_, &c)| c) {
                if !category.contains(tok, true) {
                    *counts.entry(tok.as_str()).or_default() += 1;
                }
            }
        }
        let mut found: Vec<CandidateKeyword> = counts
            .into_iter()
            .filter(|&(_, f)| f >= min_freq)
            .map(|(word, frequency)| CandidateKeyword {
                category_id: category.id.clone(),
                word: word.to_owned(),
                frequency,
                approved: false,
            })
            .collect();
        found.sort_by(|a, b| b.frequency.cmp(&a.frequency).then_with(|| a.word.cmp(&b.word)));
        out.extend(found);
    }
    out
}

/// Writes the candidate report CSV `category_id,word,frequency`.
pub fn write_candidate_report<W: Write>(candidates: &[CandidateKeyword], writer: W) -> Result<()> {
    let mut sorted: Vec<&CandidateKeyword> = candidates.iter().collect();
    sorted.sort_by(|a, b| {
        a.category_id
            .cmp(&b.category_id)
            .then_with(|| b.frequency.cmp(&a.frequency))
            .then_with(|| a.word.cmp(&b.word))
    });
    let mut wtr = csv::Writer::from_writer(writer);
    wtr.write_record(["category_id", "word", "frequency"])?;
    for c in sorted {
        wtr.write_record([c.category_id.as_str(), c.word.as_str(), &c.frequency.to_string()])?;
    }
    wtr.flush().map_err(|e| Error::io("candidate report", e))?;
    Ok(())
}

/// Reads `category_id,word` approval rows. A leading header row is skipped.
pub fn read_approvals<R: Read>(reader: R) -> Result<Vec<(String, String)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut out = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let record = record?;
        if record.len() != 2 {
            return Err(Error::parse("approvals", idx + 1, "expected `category_id,word`"));
        }
        if idx == 0 && &record[0] == "category_id" && &record[1] == "word" {
            continue;
        }
        out.push((record[0].to_owned(), record[1].to_lowercase()));
    }
    Ok(out)
}

pub fn load_approvals(path: impl AsRef<Path>) -> Result<Vec<(String, String)>> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_approvals(file)
}

/// Moves approved candidates into their category's extended vocabulary.
pub fn apply_approvals(
    ontology: &Ontology,
    candidates: &[CandidateKeyword],
    approvals: &[(String, String)],
) -> Result<Ontology> {
    let offered: HashSet<(&str, &str)> = candidates
        .iter()
        .map(|c| (c.category_id.as_str(), c.word.as_str()))
        .collect();
    let mut categories = ontology.categories.clone();
    for (category_id, word) in approvals {
        let idx = categories
            .iter()
            .position(|c| &c.id == category_id)
            .ok_or_else(|| Error::UnknownCategory(category_id.clone()))?;
        if !offered.contains(&(category_id.as_str(), word.as_str())) {
            return Err(Error::UnknownApproval {
                category: category_id.clone(),
                word: word.clone(),
            });
        }
        let category = &mut categories[idx];
        if !category.seed_keywords.contains(word) {
            category.extended_keywords.insert(word.clone());
        }
    }
    Ontology::new(categories)
}
