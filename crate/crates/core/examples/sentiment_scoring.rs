//! Tweet preprocessing and lexicon scoring, step by step and in bulk.
//!
//! ```text
//! cargo run --example sentiment_scoring [-- posts.csv]
//! ```

use std::collections::BTreeMap;
use std::fs::File;

use btc_forecast::sentiment::{
    classify, normalize_text, process_post, read_posts, remove_stopwords, score_polarity, tokenize,
    Lexicon,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lexicon = Lexicon::bundled();

    let text = "@Billgates #Bitcoin is sooooo good, best rally ever!!! https://t.co/xyz";
    let normalized = normalize_text(text);
    let tokens = remove_stopwords(&tokenize(&normalized));
    let polarity = score_polarity(&tokens, &lexicon);
    println!("raw:        {text}");
    println!("normalized: {normalized}");
    println!("tokens:     {tokens:?}");
    println!("polarity:   {polarity:.3} -> {:?}", classify(polarity)?);

    let path = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| btc_forecast::fixtures_dir().join("posts.csv"));
    let posts = read_posts(File::open(&path)?)?;
    let mut counts = BTreeMap::new();
    let mut total = 0.0;
    for post in &posts {
        let record = process_post(post, &lexicon);
        *counts.entry(format!("{:?}", record.label)).or_insert(0) += 1;
        total += record.polarity;
    }
    println!("\n{} posts from {}", posts.len(), path.display());
    println!("labels: {counts:?}");
    println!("mean polarity: {:.4}", total / posts.len() as f64);
    Ok(())
}
