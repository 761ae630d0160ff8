use std::collections::HashSet;
use std::sync::OnceLock;

use regex::Regex;

const BUNDLED_STOPWORDS: &str = include_str!("../../data/stopwords.txt");

fn url_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(?i)\b(?:https?://|www\.)\S+").expect("valid regex"))
}

fn hashtag_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"#+(\w+)").expect("valid regex"))
}

fn mention_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"@+\w+").expect("valid regex"))
}

/// Rewrite tweet-specific markup into plain words.
///
/// In order: links become `URL`, `#word` becomes `word`, `@handle` becomes
/// `User`, and runs of three or more identical letters shrink to two. The
/// rewrite is repeated until nothing changes, so the result is a fixed point.
pub fn normalize_text(text: &str) -> String {
    let mut current = text.to_string();
    loop {
        let next = normalize_pass(&current);
        if next == current {
            return next;
        }
        current = next;
    }
}

fn normalize_pass(text: &str) -> String {
    let s = url_re().replace_all(text, "URL");
    let s = hashtag_re().replace_all(&s, "$1");
    let s = mention_re().replace_all(&s, "User");
    collapse_elongations(&s)
}

/// Shrink runs of 3+ identical letters to exactly two ("cooool" -> "cool").
fn collapse_elongations(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut prev = None;
    let mut run = 0usize;
    for ch in text.chars() {
        if Some(ch) == prev {
            run += 1;
        } else {
            prev = Some(ch);
            run = 1;
        }
        if run <= 2 || !ch.is_alphabetic() {
            out.push(ch);
        }
    }
    out
}

/// Split normalized text on whitespace into lowercase word tokens.
///
/// Symbols clinging to either end of a token are stripped; tokens made only
/// of symbols (emoticons, emoji, punctuation) are dropped.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(|tok| tok.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|tok| !tok.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// The bundled English stopword list.
pub fn stopwords() -> &'static HashSet<&'static str> {
    static SET: OnceLock<HashSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| {
        BUNDLED_STOPWORDS
            .lines()
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .collect()
    })
}

/// Drop tokens found in the bundled stopword list, keeping order.
pub fn remove_stopwords(tokens: &[String]) -> Vec<String> {
    let stop = stopwords();
    tokens
        .iter()
        .filter(|t| !stop.contains(t.as_str()))
        .cloned()
        .collect()
}
