use std::fs::{File, OpenOptions};
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use super::record::{BlockchainQuote, MarketSnapshot, PriceTick, Record, Schema};
use super::IngestError;

/// Append-only CSV log of one source's records.
///
/// Each log has a single writer. Appends are whole lines flushed and synced
/// before returning, so a concurrent reader sees a prefix of the accepted
/// records (a torn trailing line is ignored by [`read_log`]).
#[derive(Debug)]
pub struct RecordLog {
    path: PathBuf,
    schema: Schema,
    file: File,
    last_timestamp: Option<i64>,
    len: usize,
}

impl RecordLog {
    /// Open `path` for appending, creating it with a header if it does not
    /// exist yet. Existing logs must carry the header for `schema`.
    pub fn open(path: impl AsRef<Path>, schema: Schema) -> Result<Self, IngestError> {
        let path = path.as_ref().to_path_buf();
        let existing = if path.exists() {
            read_log(&path, schema)?
        } else {
            Vec::new()
        };
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| IngestError::Sink(path.clone(), e))?;
        if file.metadata().map(|m| m.len() == 0).unwrap_or(true) {
            let header = format!("{}\n", schema.header().join(","));
            file.write_all(header.as_bytes())
                .and_then(|_| file.sync_data())
                .map_err(|e| IngestError::Sink(path.clone(), e))?;
        }
        Ok(Self {
            last_timestamp: existing.last().map(Record::timestamp),
            len: existing.len(),
            path,
            schema,
            file,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn schema(&self) -> Schema {
        self.schema
    }

    /// Number of records in the log.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn last_timestamp(&self) -> Option<i64> {
        self.last_timestamp
    }

    /// Append one record. Records whose timestamp does not strictly exceed
    /// the last accepted one are rejected and nothing is written.
    pub fn append(&mut self, record: &Record) -> Result<(), IngestError> {
        if record.schema() != self.schema {
            return Err(IngestError::SchemaMismatch {
                expected: self.schema,
                got: record.schema(),
            });
        }
        let ts = record.timestamp();
        if let Some(last) = self.last_timestamp {
            if ts <= last {
                return Err(IngestError::OutOfOrder { last, got: ts });
            }
        }
        let line = encode(record)?;
        self.file
            .write_all(&line)
            .and_then(|_| self.file.sync_data())
            .map_err(|e| IngestError::Sink(self.path.clone(), e))?;
        self.last_timestamp = Some(ts);
        self.len += 1;
        Ok(())
    }
}

fn encode(record: &Record) -> Result<Vec<u8>, IngestError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    match record {
        Record::Tick(t) => w.serialize(t),
        Record::Snapshot(s) => w.serialize(s),
        Record::Quote(q) => w.serialize(q),
    }
    .map_err(|e| IngestError::Encode(e.to_string()))?;
    w.into_inner()
        .map_err(|e| IngestError::Encode(e.to_string()))
}

/// Read every complete record of a log.
pub fn read_log(path: impl AsRef<Path>, schema: Schema) -> Result<Vec<Record>, IngestError> {
    let path = path.as_ref();
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| IngestError::Sink(path.to_path_buf(), e))?;
    // Drop a trailing line that a concurrent writer has not finished.
    let complete = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
    bytes.truncate(complete);
    if bytes.is_empty() {
        return Ok(Vec::new());
    }

    let mut reader = csv::Reader::from_reader(bytes.as_slice());
    let header = reader
        .headers()
        .map_err(|e| IngestError::Decode(path.to_path_buf(), e.to_string()))?;
    if header.iter().ne(schema.header().iter().copied()) {
        return Err(IngestError::Decode(
            path.to_path_buf(),
            format!("header does not match schema {schema}"),
        ));
    }
    let decode = |e: csv::Error| IngestError::Decode(path.to_path_buf(), e.to_string());
    match schema {
        Schema::BitstampTicker => reader
            .deserialize::<PriceTick>()
            .map(|r| r.map(Record::Tick).map_err(decode))
            .collect(),
        Schema::MarketcapSnapshot => reader
            .deserialize::<MarketSnapshot>()
            .map(|r| r.map(Record::Snapshot).map_err(decode))
            .collect(),
        Schema::BlockchainQuotes => reader
            .deserialize::<BlockchainQuote>()
            .map(|r| r.map(Record::Quote).map_err(decode))
            .collect(),
    }
}
