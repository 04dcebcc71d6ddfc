//! Tweet ingestion: preprocessing, keyword extraction and the JSONL dataset format.
//!
//! A dataset file is JSON lines. The first line is a header
//! `{"id", "disaster_type", "continent"}`; every following line is a tweet
//! `{"id", "text"}`, optionally carrying `"gold_category"` when the tweet is
//! part of the reference summary.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const BUNDLED_STOPWORDS: &str = include_str!("../data/stopwords.txt");
const BUNDLED_LEXICON: &str = include_str!("../data/lexicon.tsv");

/// Minimum token length in characters. Shorter tokens are treated as noise.
pub const MIN_TOKEN_CHARS: usize = 3;

/// A single preprocessed tweet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tweet {
    pub id: String,
    pub raw_text: String,
    pub tokens: Vec<String>,
    /// Nouns, verbs and adjectives among `tokens`.
    pub keywords: BTreeSet<String>,
    /// Set by the categorizer; `None` until then.
    pub category: Option<String>,
}

impl Tweet {
    pub fn new(
        id: impl Into<String>,
        raw_text: impl Into<String>,
        stopwords: &HashSet<String>,
        tagger: &dyn PosTagger,
    ) -> Self {
        let raw_text = raw_text.into();
        let tokens = preprocess_text(&raw_text, stopwords);
        let keywords = extract_keywords(&tokens, tagger);
        Tweet {
            id: id.into(),
            raw_text,
            tokens,
            keywords,
            category: None,
        }
    }

    /// Builds a tweet directly from a keyword set. Tokens are the keywords in sorted order.
    pub fn from_keywords<I, S>(id: impl Into<String>, keywords: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let keywords: BTreeSet<String> = keywords.into_iter().map(Into::into).collect();
        let tokens: Vec<String> = keywords.iter().cloned().collect();
        Tweet {
            id: id.into(),
            raw_text: tokens.join(" "),
            tokens,
            keywords,
            category: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DisasterType {
    Natural,
    ManMade,
}

impl fmt::Display for DisasterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DisasterType::Natural => "natural",
            DisasterType::ManMade => "man-made",
        })
    }
}

/// A reference-summary entry: the tweet and the category annotators gave it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldEntry {
    pub tweet_id: String,
    pub category_id: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DisasterDataset {
    pub id: String,
    pub disaster_type: DisasterType,
    pub continent: String,
    pub tweets: Vec<Tweet>,
    pub gold_summary: Option<Vec<GoldEntry>>,
}

impl DisasterDataset {
    /// Assembles a dataset, enforcing unique tweet ids and a consistent gold summary.
    pub fn new(
        id: impl Into<String>,
        disaster_type: DisasterType,
        continent: impl Into<String>,
        tweets: Vec<Tweet>,
        gold_summary: Option<Vec<GoldEntry>>,
    ) -> Result<Self> {
        let mut seen = HashSet::with_capacity(tweets.len());
        for tweet in &tweets {
            if !seen.insert(tweet.id.as_str()) {
                return Err(Error::DuplicateTweetId(tweet.id.clone()));
            }
        }
        if let Some(gold) = &gold_summary {
            if let Some(missing) = gold.iter().find(|g| !seen.contains(g.tweet_id.as_str())) {
                return Err(Error::UnknownGoldTweet(missing.tweet_id.clone()));
            }
        }
        Ok(DisasterDataset {
            id: id.into(),
            disaster_type,
            continent: continent.into(),
            tweets,
            gold_summary,
        })
    }

    pub fn tweet(&self, id: &str) -> Option<&Tweet> {
        self.tweets.iter().find(|t| t.id == id)
    }

    /// Raw texts of the gold-summary tweets, in file order.
    pub fn gold_texts(&self) -> Option<Vec<&str>> {
        let gold = self.gold_summary.as_ref()?;
        let by_id: HashMap<&str, &Tweet> = self.tweets.iter().map(|t| (t.id.as_str(), t)).collect();
        Some(
            gold.iter()
                .filter_map(|g| by_id.get(g.tweet_id.as_str()).map(|t| t.raw_text.as_str()))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PosTag {
    Noun,
    Verb,
    Adjective,
    Adverb,
    Pronoun,
    Preposition,
    Determiner,
    Conjunction,
    Numeral,
    Interjection,
    Other,
}

impl PosTag {
    /// Content-word tags that make a token a keyword.
    pub fn is_content(self) -> bool {
        matches!(self, PosTag::Noun | PosTag::Verb | PosTag::Adjective)
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "noun" | "n" | "nn" => PosTag::Noun,
            "verb" | "v" | "vb" => PosTag::Verb,
            "adjective" | "adj" | "jj" => PosTag::Adjective,
            "adverb" | "adv" | "rb" => PosTag::Adverb,
            "pronoun" | "pron" | "prp" => PosTag::Pronoun,
            "preposition" | "prep" | "in" => PosTag::Preposition,
            "determiner" | "det" | "dt" => PosTag::Determiner,
            "conjunction" | "conj" | "cc" => PosTag::Conjunction,
            "numeral" | "num" | "cd" => PosTag::Numeral,
            "interjection" | "intj" | "uh" => PosTag::Interjection,
            "other" | "x" => PosTag::Other,
            other => return Err(format!("unknown part-of-speech tag `{other}`")),
        })
    }
}

/// Anything that can assign a part-of-speech tag to a lowercase word.
pub trait PosTagger {
    fn tag(&self, word: &str) -> PosTag;
}

/// Word-to-tag lookup table with a fallback tag for unknown words.
#[derive(Debug, Clone)]
pub struct PosLexicon {
    tags: HashMap<String, PosTag>,
    default_tag: PosTag,
}

impl Default for PosLexicon {
    fn default() -> Self {
        PosLexicon {
            tags: HashMap::new(),
            default_tag: PosTag::Noun,
        }
    }
}

impl PosLexicon {
    pub fn new(default_tag: PosTag) -> Self {
        PosLexicon {
            tags: HashMap::new(),
            default_tag,
        }
    }

    /// The lexicon shipped with the crate, unknown words default to noun.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED_LEXICON, "bundled lexicon").expect("bundled lexicon is well formed")
    }

    pub fn insert(&mut self, word: &str, tag: PosTag) {
        self.tags.insert(word.to_lowercase(), tag);
    }

    pub fn default_tag(&self) -> PosTag {
        self.default_tag
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    /// Parses `word` or `word<TAB>tag` lines. A bare word is tagged as noun.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut lexicon = PosLexicon::default();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, tag) = match line.split_once('\t') {
                Some((word, tag)) => {
                    let tag = tag.parse().map_err(|e| Error::parse(origin, idx + 1, e))?;
                    (word, tag)
                }
                None => (line, PosTag::Noun),
            };
            lexicon.insert(word.trim(), tag);
        }
        Ok(lexicon)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }
}

impl PosTagger for PosLexicon {
    fn tag(&self, word: &str) -> PosTag {
        self.tags.get(word).copied().unwrap_or(self.default_tag)
    }
}

/// Parses a stopword list: one word per line, `#` comments allowed.
pub fn parse_stopwords(text: &str) -> HashSet<String> {
    text.lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_lowercase())
        .collect()
}

pub fn load_stopwords(path: impl AsRef<Path>) -> Result<HashSet<String>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_stopwords(&text))
}

/// The stopword list shipped with the crate.
pub fn bundled_stopwords() -> HashSet<String> {
    parse_stopwords(BUNDLED_STOPWORDS)
}

/// Raw bytes of the bundled stopword file.
pub fn bundled_stopwords_source() -> &'static str {
    BUNDLED_STOPWORDS
}

fn is_emoji(c: char) -> bool {
    matches!(c as u32,
        0x1F000..=0x1FAFF
        | 0x2300..=0x23FF
        | 0x2600..=0x27BF
        | 0x2B00..=0x2BFF
        | 0xFE00..=0xFE0F
        | 0x200D
        | 0x20E3
        | 0xE0020..=0xE007F)
}

fn is_url(token: &str) -> bool {
    token.contains("://") || token.starts_with("www.") || token.starts_with("pic.twitter.com")
}

/// Lowercases and cleans a tweet into content tokens.
///
/// URLs, @-mentions, emoji, surrounding punctuation, stopwords and tokens
/// shorter than three characters or without any letter are dropped.
/// Hashtags keep their word. Token order is preserved.
pub fn preprocess_text(raw: &str, stopwords: &HashSet<String>) -> Vec<String> {
    let cleaned: String = raw.chars().map(|c| if is_emoji(c) { ' ' } else { c }).collect();

    cleaned
        .split_whitespace()
        .filter_map(|piece| {
            let lower = piece.to_lowercase();
            let core = lower.trim_matches(|c: char| !c.is_alphanumeric() && c != '@' && c != '#');
            if core.starts_with('@') || is_url(core) {
                return None;
            }
            let word = core.trim_matches(|c: char| !c.is_alphanumeric());
            if word.chars().count() < MIN_TOKEN_CHARS
                || !word.chars().any(char::is_alphabetic)
                || stopwords.contains(word)
            {
                return None;
            }
            Some(word.to_string())
        })
        .collect()
}

/// Keeps the tokens tagged noun, verb or adjective, deduplicated.
pub fn extract_keywords(tokens: &[String], tagger: &dyn PosTagger) -> BTreeSet<String> {
    tokens.iter().filter(|t| tagger.tag(t).is_content()).cloned().collect()
}

#[derive(Deserialize)]
struct HeaderRecord {
    id: String,
    disaster_type: DisasterType,
    continent: String,
}

#[derive(Deserialize)]
struct TweetRecord {
    id: String,
    text: String,
    #[serde(default)]
    gold_category: Option<String>,
}

/// Parses a dataset in the JSONL tweet format. `origin` names the source in errors.
pub fn parse_tweets(
    text: &str,
    origin: &str,
    stopwords: &HashSet<String>,
    tagger: &dyn PosTagger,
) -> Result<DisasterDataset> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(origin, 1, "missing header record"))?;
    let header: HeaderRecord =
        serde_json::from_str(header).map_err(|e| Error::parse(origin, header_line, format!("bad header: {e}")))?;

    let mut tweets = Vec::new();
    let mut gold = Vec::new();
    let mut seen = HashSet::new();
    for (line_no, line) in lines {
        let record: TweetRecord =
            serde_json::from_str(line).map_err(|e| Error::parse(origin, line_no, format!("bad tweet record: {e}")))?;
        if !seen.insert(record.id.clone()) {
            return Err(Error::DuplicateTweetId(record.id));
        }
        if let Some(category) = record.gold_category {
            gold.push(GoldEntry {
                tweet_id: record.id.clone(),
                category_id: category,
            });
        }
        tweets.push(Tweet::new(record.id, record.text, stopwords, tagger));
    }

    let gold_summary = (!gold.is_empty()).then_some(gold);
    DisasterDataset::new(header.id, header.disaster_type, header.continent, tweets, gold_summary)
}

pub fn load_tweets(
    path: impl AsRef<Path>,
    stopwords: &HashSet<String>,
    tagger: &dyn PosTagger,
) -> Result<DisasterDataset> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_tweets(&text, &path.display().to_string(), stopwords, tagger)
}
