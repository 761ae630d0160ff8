use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{classify, Label, PostSource, RawPost, SentimentError, SentimentRecord};

#[derive(Deserialize)]
struct PostRow {
    timestamp: i64,
    source: PostSource,
    text: String,
}

#[derive(Serialize, Deserialize)]
struct SentimentRow {
    timestamp: i64,
    polarity: f64,
    label: Label,
}

/// Read a posts file: header `timestamp,source,text`, text quoted.
pub fn read_posts<R: Read>(reader: R) -> Result<Vec<RawPost>, SentimentError> {
    csv::Reader::from_reader(reader)
        .deserialize::<PostRow>()
        .map(|row| {
            let row = row.map_err(|e| SentimentError::Format("posts".into(), e.to_string()))?;
            Ok(RawPost {
                timestamp: row.timestamp,
                text: row.text,
                source: row.source,
            })
        })
        .collect()
}

/// Write the sentiment log: header `timestamp,polarity,label`.
pub fn write_sentiment_log<W: Write>(
    writer: W,
    records: &[SentimentRecord],
) -> Result<(), SentimentError> {
    let fmt = |e: csv::Error| SentimentError::Format("sentiment log".into(), e.to_string());
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(writer);
    for r in records {
        w.serialize(SentimentRow {
            timestamp: r.timestamp,
            polarity: r.polarity,
            label: r.label,
        })
        .map_err(fmt)?;
    }
    w.flush()
        .map_err(|e| SentimentError::Io("sentiment log".into(), e))
}

/// Read a sentiment log back. Tokens are not stored, so they come back empty.
pub fn read_sentiment_log<R: Read>(reader: R) -> Result<Vec<SentimentRecord>, SentimentError> {
    csv::Reader::from_reader(reader)
        .deserialize::<SentimentRow>()
        .map(|row| {
            let row =
                row.map_err(|e| SentimentError::Format("sentiment log".into(), e.to_string()))?;
            if classify(row.polarity)? != row.label {
                return Err(SentimentError::Format(
                    "sentiment log".into(),
                    format!(
                        "label {:?} disagrees with polarity {} at t={}",
                        row.label, row.polarity, row.timestamp
                    ),
                ));
            }
            Ok(SentimentRecord {
                timestamp: row.timestamp,
                tokens: Vec::new(),
                polarity: row.polarity,
                label: row.label,
            })
        })
        .collect()
}
