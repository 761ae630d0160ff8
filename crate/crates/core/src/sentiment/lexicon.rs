use std::collections::HashMap;
use std::path::Path;

use super::SentimentError;

const BUNDLED: &str = include_str!("../../data/lexicon.csv");

/// Word → polarity weight table. Keys are lowercase without whitespace and
/// weights lie in [-1, 1].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Lexicon {
    entries: HashMap<String, f64>,
}

impl Lexicon {
    pub fn from_pairs<I, S>(pairs: I) -> Result<Self, SentimentError>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut entries = HashMap::new();
        for (word, weight) in pairs {
            let word = word.into();
            validate(&word, weight)?;
            entries.insert(word, weight);
        }
        Ok(Self { entries })
    }

    /// Parse "word,weight" lines. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, SentimentError> {
        let mut pairs = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: &str| SentimentError::Lexicon {
                line: n + 1,
                reason: reason.to_string(),
            };
            let (word, weight) = line
                .rsplit_once(',')
                .ok_or_else(|| bad("expected word,weight"))?;
            let weight: f64 = weight
                .trim()
                .parse()
                .map_err(|_| bad("weight is not a number"))?;
            let word = word.trim();
            validate(word, weight).map_err(|e| bad(&e.to_string()))?;
            pairs.push((word.to_string(), weight));
        }
        Self::from_pairs(pairs)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, SentimentError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| SentimentError::Io(path.display().to_string(), e))?;
        Self::parse(&text)
    }

    /// The lexicon shipped with the crate.
    pub fn bundled() -> Self {
        Self::parse(BUNDLED).expect("bundled lexicon is valid")
    }

    pub fn get(&self, word: &str) -> Option<f64> {
        self.entries.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

fn validate(word: &str, weight: f64) -> Result<(), SentimentError> {
    if word.is_empty() || word.chars().any(char::is_whitespace) {
        return Err(SentimentError::InvalidEntry(format!(
            "{word:?}: key must be a single word"
        )));
    }
    if word.chars().any(char::is_uppercase) {
        return Err(SentimentError::InvalidEntry(format!(
            "{word:?}: key must be lowercase"
        )));
    }
    if !(-1.0..=1.0).contains(&weight) {
        return Err(SentimentError::InvalidEntry(format!(
            "{word:?}: weight {weight} outside [-1, 1]"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_has_a_few_hundred_entries() {
        let lex = Lexicon::bundled();
        assert!(lex.len() >= 200, "{}", lex.len());
        assert_eq!(lex.get("good"), Some(0.7));
        assert_eq!(lex.get("bad"), Some(-0.7));
        assert!(lex.iter().all(|(_, w)| (-1.0..=1.0).contains(&w)));
    }

    #[test]
    fn parse_reports_line() {
        let err = Lexicon::parse("good,0.7\nbad,-3\n").unwrap_err();
        assert!(matches!(err, SentimentError::Lexicon { line: 2, .. }));
        assert!(Lexicon::parse("Good,0.1").is_err());
        assert!(Lexicon::parse("two words,0.1").is_err());
        assert!(Lexicon::parse("x").is_err());
    }

    #[test]
    fn parse_skips_comments() {
        let lex = Lexicon::parse("# header\n\ngood, 0.7\n").unwrap();
        assert_eq!(lex.len(), 1);
    }
}
