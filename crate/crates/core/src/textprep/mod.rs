//! Text preprocessing: case folding, URL/mention stripping, tokenization,
//! stopword removal, optional lemmatization and Porter stemming.

mod lemma;
mod porter;
pub mod stopwords;

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::Result;

pub use porter::stem;

/// Ordered list of normalized terms for one document.
pub type TokenList = Vec<String>;

/// Preprocessing options. Immutable and cheap to share across threads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrepConfig {
    pub lowercase: bool,
    pub strip_urls_mentions: bool,
    /// Lowercase stopword set; tokens in it never reach the output.
    pub stopwords: BTreeSet<String>,
    pub stemming: bool,
    /// Optional dictionary-lookup lemma pass applied before stemming.
    pub lemmatize: bool,
    pub min_token_len: usize,
}

impl Default for PrepConfig {
    fn default() -> Self {
        PrepConfig {
            lowercase: true,
            strip_urls_mentions: true,
            stopwords: stopwords::ENGLISH.iter().map(|w| w.to_string()).collect(),
            stemming: true,
            lemmatize: false,
            min_token_len: 2,
        }
    }
}

impl PrepConfig {
    /// Replace the stopword set from a plain-text file, one word per line.
    /// Words are lowercased; blank lines and `#` comments are skipped.
    pub fn with_stopwords_file(mut self, path: impl AsRef<Path>) -> Result<Self> {
        let content = std::fs::read_to_string(path)?;
        self.stopwords = content
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| l.to_lowercase())
            .collect();
        Ok(self)
    }

    pub fn without_stemming(mut self) -> Self {
        self.stemming = false;
        self
    }
}

fn url_mention_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"(?i)\bhttps?://\S+|\bwww\.\S+|@\w+").expect("static regex compiles")
    })
}

/// Full preprocessing pipeline: case folding, URL/@mention removal,
/// splitting on non-alphanumerics (which drops `#` but keeps the hashtag
/// word), stopword and short-token removal, then optional lemma lookup and
/// Porter stemming.
///
/// Stopword and length filters run again after stemming so the output
/// invariants hold even when stemming maps a token onto a stopword.
pub fn preprocess(text: &str, cfg: &PrepConfig) -> TokenList {
    let mut s = if cfg.lowercase { text.to_lowercase() } else { text.to_string() };
    if cfg.strip_urls_mentions {
        s = url_mention_regex().replace_all(&s, " ").into_owned();
    }

    let is_stopword = |tok: &str| {
        if cfg.lowercase {
            cfg.stopwords.contains(tok)
        } else {
            cfg.stopwords.contains(&tok.to_lowercase())
        }
    };

    let mut out = Vec::new();
    for raw in s.split(|c: char| !c.is_alphanumeric()) {
        if raw.is_empty() || raw.chars().count() < cfg.min_token_len || is_stopword(raw) {
            continue;
        }
        let mut token = raw.to_string();
        if cfg.lemmatize {
            if let Some(lemma) = lemma::lookup(&token) {
                token = lemma.to_string();
            }
        }
        if cfg.stemming {
            token = stem(&token);
        }
        if token.chars().count() < cfg.min_token_len || is_stopword(&token) {
            continue;
        }
        out.push(token);
    }
    out
}

/// Preprocess a batch of texts, in parallel when enabled.
pub fn preprocess_all(texts: &[impl AsRef<str> + Sync], cfg: &PrepConfig) -> Vec<TokenList> {
    crate::par::map_slice(texts, |t| preprocess(t.as_ref(), cfg))
}
