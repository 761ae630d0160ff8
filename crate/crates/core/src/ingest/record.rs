//! Record types for the three supported payload schemas and the JSON parsing
//! that turns a raw API response into exactly one fully populated record.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::IngestError;

/// Payload layout a source returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Schema {
    /// Bitstamp-style ticker (also used for Coinbase-style tickers).
    BitstampTicker,
    /// Coinmarketcap-style market snapshot.
    MarketcapSnapshot,
    /// Blockchain-Info-style buy/sell quotes.
    BlockchainQuotes,
}

impl Schema {
    pub fn as_str(self) -> &'static str {
        match self {
            Schema::BitstampTicker => "bitstamp_ticker",
            Schema::MarketcapSnapshot => "marketcap_snapshot",
            Schema::BlockchainQuotes => "blockchain_quotes",
        }
    }

    /// Column names of the on-disk record log, in order.
    pub fn header(self) -> &'static [&'static str] {
        match self {
            Schema::BitstampTicker => &[
                "high", "last", "timestamp", "bid", "vwap", "volume", "low", "ask", "open",
                "datetime",
            ],
            Schema::MarketcapSnapshot => &[
                "created",
                "price_usd",
                "24h_volume_usd",
                "market_cap_usd",
                "available_supply",
                "total_supply",
                "percentage_change_1h",
                "percentage_change_24h",
                "percentage_change_7d",
            ],
            Schema::BlockchainQuotes => &["created", "usd_sell", "usd_buy", "usd_15m"],
        }
    }
}

impl std::fmt::Display for Schema {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Schema {
    type Err = IngestError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bitstamp_ticker" => Ok(Schema::BitstampTicker),
            "marketcap_snapshot" => Ok(Schema::MarketcapSnapshot),
            "blockchain_quotes" => Ok(Schema::BlockchainQuotes),
            other => Err(IngestError::Config(format!("unknown schema {other:?}"))),
        }
    }
}

/// One ticker observation. Field order matches the record log header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceTick {
    pub high: f64,
    pub last: f64,
    /// UTC seconds.
    pub timestamp: i64,
    pub bid: f64,
    pub vwap: f64,
    /// Traded volume in BTC.
    pub volume: f64,
    pub low: f64,
    pub ask: f64,
    pub open: f64,
    /// Exchange-reported date string, stored verbatim.
    pub datetime: String,
}

/// Market-wide snapshot from a market-cap aggregator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarketSnapshot {
    /// UTC seconds.
    pub created: i64,
    pub price_usd: f64,
    #[serde(rename = "24h_volume_usd")]
    pub volume_24h_usd: f64,
    pub market_cap_usd: f64,
    pub available_supply: f64,
    pub total_supply: f64,
    #[serde(rename = "percentage_change_1h")]
    pub pct_change_1h: f64,
    #[serde(rename = "percentage_change_24h")]
    pub pct_change_24h: f64,
    #[serde(rename = "percentage_change_7d")]
    pub pct_change_7d: f64,
}

/// Buy/sell quotes from a blockchain explorer ticker.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockchainQuote {
    /// UTC seconds, taken from the ingest clock (the payload carries none).
    pub created: i64,
    pub usd_sell: f64,
    pub usd_buy: f64,
    pub usd_15m: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Record {
    Tick(PriceTick),
    Snapshot(MarketSnapshot),
    Quote(BlockchainQuote),
}

impl Record {
    pub fn schema(&self) -> Schema {
        match self {
            Record::Tick(_) => Schema::BitstampTicker,
            Record::Snapshot(_) => Schema::MarketcapSnapshot,
            Record::Quote(_) => Schema::BlockchainQuotes,
        }
    }

    pub fn timestamp(&self) -> i64 {
        match self {
            Record::Tick(t) => t.timestamp,
            Record::Snapshot(s) => s.created,
            Record::Quote(q) => q.created,
        }
    }

    /// The record's reference USD price: last trade, aggregator price, or
    /// 15-minute delayed market price.
    pub fn price(&self) -> f64 {
        match self {
            Record::Tick(t) => t.last,
            Record::Snapshot(s) => s.price_usd,
            Record::Quote(q) => q.usd_15m,
        }
    }
}

/// Parse one API response body. `now` is used only by schemas whose payload
/// carries no timestamp.
pub fn parse_payload(schema: Schema, body: &str, now: i64) -> Result<Record, IngestError> {
    let value: Value =
        serde_json::from_str(body).map_err(|e| IngestError::Malformed(e.to_string()))?;
    match schema {
        Schema::BitstampTicker => parse_ticker(&value).map(Record::Tick),
        Schema::MarketcapSnapshot => parse_snapshot(&value).map(Record::Snapshot),
        Schema::BlockchainQuotes => parse_quotes(&value, now).map(Record::Quote),
    }
}

fn parse_ticker(value: &Value) -> Result<PriceTick, IngestError> {
    let obj = as_object(value)?;
    Ok(PriceTick {
        high: price(obj, "high")?,
        last: price(obj, "last")?,
        timestamp: integer(obj, "timestamp")?,
        bid: price(obj, "bid")?,
        vwap: price(obj, "vwap")?,
        volume: non_negative(obj, "volume")?,
        low: price(obj, "low")?,
        ask: price(obj, "ask")?,
        open: price(obj, "open")?,
        datetime: string(obj, "datetime")?,
    })
}

fn parse_snapshot(value: &Value) -> Result<MarketSnapshot, IngestError> {
    // The aggregator answers with a one-element list.
    let value = match value {
        Value::Array(items) => items
            .first()
            .ok_or_else(|| IngestError::Malformed("empty snapshot list".into()))?,
        other => other,
    };
    let obj = as_object(value)?;
    let snapshot = MarketSnapshot {
        created: integer(obj, "last_updated")?,
        price_usd: price(obj, "price_usd")?,
        volume_24h_usd: non_negative(obj, "24h_volume_usd")?,
        market_cap_usd: price(obj, "market_cap_usd")?,
        available_supply: non_negative(obj, "available_supply")?,
        total_supply: non_negative(obj, "total_supply")?,
        pct_change_1h: finite(obj, "percent_change_1h")?,
        pct_change_24h: finite(obj, "percent_change_24h")?,
        pct_change_7d: finite(obj, "percent_change_7d")?,
    };
    if snapshot.available_supply > snapshot.total_supply {
        return Err(IngestError::Schema {
            field: "available_supply".into(),
            reason: "exceeds total_supply".into(),
        });
    }
    Ok(snapshot)
}

fn parse_quotes(value: &Value, now: i64) -> Result<BlockchainQuote, IngestError> {
    let usd = as_object(value)?
        .get("USD")
        .ok_or_else(|| IngestError::missing("USD"))?;
    let obj = as_object(usd)?;
    Ok(BlockchainQuote {
        created: now,
        usd_sell: price(obj, "sell")?,
        usd_buy: price(obj, "buy")?,
        usd_15m: price(obj, "15m")?,
    })
}

type Object = serde_json::Map<String, Value>;

fn as_object(value: &Value) -> Result<&Object, IngestError> {
    value
        .as_object()
        .ok_or_else(|| IngestError::Malformed("expected a JSON object".into()))
}

fn field<'a>(obj: &'a Object, name: &str) -> Result<&'a Value, IngestError> {
    match obj.get(name) {
        None | Some(Value::Null) => Err(IngestError::missing(name)),
        Some(v) => Ok(v),
    }
}

/// Exchanges send numbers either as JSON numbers or as decimal strings.
fn finite(obj: &Object, name: &str) -> Result<f64, IngestError> {
    let parsed = match field(obj, name)? {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => s.trim().parse::<f64>().ok(),
        _ => None,
    };
    match parsed {
        Some(x) if x.is_finite() => Ok(x),
        _ => Err(IngestError::Schema {
            field: name.into(),
            reason: "not a finite number".into(),
        }),
    }
}

fn price(obj: &Object, name: &str) -> Result<f64, IngestError> {
    let x = finite(obj, name)?;
    if x > 0.0 {
        Ok(x)
    } else {
        Err(IngestError::Schema {
            field: name.into(),
            reason: "must be positive".into(),
        })
    }
}

fn non_negative(obj: &Object, name: &str) -> Result<f64, IngestError> {
    let x = finite(obj, name)?;
    if x >= 0.0 {
        Ok(x)
    } else {
        Err(IngestError::Schema {
            field: name.into(),
            reason: "must be non-negative".into(),
        })
    }
}

fn integer(obj: &Object, name: &str) -> Result<i64, IngestError> {
    let parsed = match field(obj, name)? {
        Value::Number(n) => n.as_i64(),
        Value::String(s) => s.trim().parse::<i64>().ok(),
        _ => None,
    };
    parsed.ok_or_else(|| IngestError::Schema {
        field: name.into(),
        reason: "not an integer".into(),
    })
}

fn string(obj: &Object, name: &str) -> Result<String, IngestError> {
    match field(obj, name)? {
        Value::String(s) => Ok(s.clone()),
        _ => Err(IngestError::Schema {
            field: name.into(),
            reason: "not a string".into(),
        }),
    }
}
