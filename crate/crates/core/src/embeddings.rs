//! Word vectors in the word2vec text format, plus cosine similarity.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Immutable word -> vector table. All vectors share one dimension.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EmbeddingTable {
    dimension: usize,
    vectors: HashMap<String, Vec<f32>>,
}

impl EmbeddingTable {
    pub fn new(dimension: usize) -> Self {
        EmbeddingTable {
            dimension,
            vectors: HashMap::new(),
        }
    }

    /// Builds a table from `(word, vector)` pairs; first occurrence of a word wins.
    pub fn from_pairs<I, S>(dimension: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Vec<f32>)>,
        S: AsRef<str>,
    {
        let mut table = EmbeddingTable::new(dimension);
        for (i, (word, vector)) in pairs.into_iter().enumerate() {
            if vector.len() != dimension {
                return Err(Error::parse(
                    "embedding pairs",
                    i + 1,
                    format!("expected {dimension} components, found {}", vector.len()),
                ));
            }
            if vector.iter().any(|x| !x.is_finite()) {
                return Err(Error::parse("embedding pairs", i + 1, "non-finite component"));
            }
            table.vectors.entry(word.as_ref().to_lowercase()).or_insert(vector);
        }
        Ok(table)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&[f32]> {
        self.vectors.get(word).map(Vec::as_slice)
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.vectors.keys().map(String::as_str)
    }

    /// Parses the text format: a `V D` header followed by `V` rows of `word x1 .. xD`.
    pub fn parse_word2vec_text(text: &str, origin: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(origin, 1, "empty embedding file"))?;
        let mut fields = header.split_whitespace();
        let parse_count = |s: Option<&str>, what: &str| -> Result<usize> {
            s.and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::parse(origin, 1, format!("header must be `V D`, bad {what}")))
        };
        let vocab_size = parse_count(fields.next(), "vocabulary size")?;
        let dimension = parse_count(fields.next(), "dimension")?;
        if fields.next().is_some() {
            return Err(Error::parse(origin, 1, "header must be `V D`"));
        }
        if dimension == 0 {
            return Err(Error::parse(origin, 1, "dimension must be positive"));
        }

        let mut table = EmbeddingTable::new(dimension);
        table.vectors.reserve(vocab_size);
        let mut rows = 0;
        for (line_no, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            rows += 1;
            if rows > vocab_size {
                return Err(Error::parse(origin, line_no, format!("more than {vocab_size} rows")));
            }
            let mut parts = line.split_whitespace();
            let word = parts.next().expect("non-empty line has a first field");
            let vector = parts
                .map(|p| {
                    p.parse::<f32>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| Error::parse(origin, line_no, format!("bad component `{p}`")))
                })
                .collect::<Result<Vec<f32>>>()?;
            if vector.len() != dimension {
                return Err(Error::parse(
                    origin,
                    line_no,
                    format!("expected {dimension} components, found {}", vector.len()),
                ));
            }
            table.vectors.entry(word.to_lowercase()).or_insert(vector);
        }
        if rows != vocab_size {
            return Err(Error::parse(
                origin,
                rows + 1,
                format!("header promises {vocab_size} rows, found {rows}"),
            ));
        }
        Ok(table)
    }

    /// Serializes in the text format, words sorted, with round-trip float precision.
    pub fn to_word2vec_text(&self) -> String {
        let mut words: Vec<&String> = self.vectors.keys().collect();
        words.sort();
        let mut out = format!("{} {}\n", words.len(), self.dimension);
        for word in words {
            out.push_str(word);
            for x in &self.vectors[word] {
                write!(out, " {x}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

pub fn load_word2vec_text(path: impl AsRef<Path>) -> Result<EmbeddingTable> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    EmbeddingTable::parse_word2vec_text(&text, &path.display().to_string())
}

/// Cosine similarity. Zero-norm input scores 0.
pub fn cosine(a: &[f32], b: &[f32]) -> f64 {
    assert_eq!(a.len(), b.len(), "cosine over vectors of different dimension");
    let (mut dot, mut na, mut nb) = (0.0f64, 0.0f64, 0.0f64);
    for (&x, &y) in a.iter().zip(b) {
        let (x, y) = (f64::from(x), f64::from(y));
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    (dot / (na.sqrt() * nb.sqrt())).clamp(-1.0, 1.0)
}
