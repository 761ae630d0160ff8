//! Tweet and post sentiment: normalize, tokenize, drop stopwords, then score
//! polarity against a word lexicon.

mod io;
mod lexicon;
mod text;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use self::io::{read_posts, read_sentiment_log, write_sentiment_log};
pub use self::lexicon::Lexicon;
pub use self::text::{normalize_text, remove_stopwords, stopwords, tokenize};

#[derive(Debug, Error)]
pub enum SentimentError {
    #[error("polarity {0} outside [-1, 1]")]
    Domain(f64),
    #[error("lexicon line {line}: {reason}")]
    Lexicon { line: usize, reason: String },
    #[error("lexicon entry {0}")]
    InvalidEntry(String),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("{0}: {1}")]
    Format(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PostSource {
    Twitter,
    Reddit,
}

/// A post as collected, before any preprocessing.
#[derive(Debug, Clone, PartialEq)]
pub struct RawPost {
    pub timestamp: i64,
    pub text: String,
    pub source: PostSource,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    Positive,
    Negative,
    Neutral,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SentimentRecord {
    pub timestamp: i64,
    pub tokens: Vec<String>,
    pub polarity: f64,
    pub label: Label,
}

/// Mean lexicon weight of the tokens present in the lexicon; 0 when none are.
pub fn score_polarity(tokens: &[String], lexicon: &Lexicon) -> f64 {
    let (sum, n) = tokens
        .iter()
        .filter_map(|t| lexicon.get(t))
        .fold((0.0, 0usize), |(s, n), w| (s + w, n + 1));
    if n == 0 {
        0.0
    } else {
        // Clamp guards the last ulp of rounding in the mean.
        (sum / n as f64).clamp(-1.0, 1.0)
    }
}

/// Sign rule: positive above zero, negative below, neutral at exactly zero.
pub fn classify(polarity: f64) -> Result<Label, SentimentError> {
    if !(-1.0..=1.0).contains(&polarity) {
        return Err(SentimentError::Domain(polarity));
    }
    Ok(if polarity > 0.0 {
        Label::Positive
    } else if polarity < 0.0 {
        Label::Negative
    } else {
        Label::Neutral
    })
}

/// Run a post through the full preprocessing and scoring chain.
pub fn process_post(post: &RawPost, lexicon: &Lexicon) -> SentimentRecord {
    let normalized = normalize_text(&post.text);
    let tokens = remove_stopwords(&tokenize(&normalized));
    let polarity = score_polarity(&tokens, lexicon);
    let label = classify(polarity).expect("score_polarity stays within [-1, 1]");
    SentimentRecord {
        timestamp: post.timestamp,
        tokens,
        polarity,
        label,
    }
}
