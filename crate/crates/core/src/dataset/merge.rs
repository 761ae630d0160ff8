use std::collections::BTreeMap;

use super::DatasetError;
use crate::sentiment::SentimentRecord;

/// One day per row for modeling.
pub const DEFAULT_BUCKET_SECS: i64 = 86_400;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergedRow {
    /// Bucket label, UTC seconds.
    pub time: i64,
    /// USD; `NaN` marks a missing value until [`fill_missing`] runs.
    pub price: f64,
    /// Mean polarity in [-1, 1]; `NaN` marks a missing value.
    pub sentiment: f64,
}

/// Time-ordered `time, price, sentiment` rows with unique timestamps.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MergedSeries {
    rows: Vec<MergedRow>,
}

impl MergedSeries {
    pub fn from_rows(rows: Vec<MergedRow>) -> Result<Self, DatasetError> {
        if let Some(w) = rows.windows(2).find(|w| w[1].time <= w[0].time) {
            return Err(DatasetError::Unordered(w[1].time));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[MergedRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn times(&self) -> Vec<i64> {
        self.rows.iter().map(|r| r.time).collect()
    }

    pub fn prices(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.price).collect()
    }

    pub fn sentiments(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.sentiment).collect()
    }

    /// Whether any price or sentiment is missing.
    pub fn has_missing(&self) -> bool {
        self.rows
            .iter()
            .any(|r| !r.price.is_finite() || !r.sentiment.is_finite())
    }
}

/// Right-closed bucket label: `t` belongs to `(label - width, label]`.
fn bucket_label(t: i64, width: i64) -> i64 {
    if t.rem_euclid(width) == 0 {
        t
    } else {
        (t.div_euclid(width) + 1) * width
    }
}

fn check_ordered(times: impl Iterator<Item = i64>) -> Result<(), DatasetError> {
    let mut prev = i64::MIN;
    for t in times {
        if t < prev {
            return Err(DatasetError::Unordered(t));
        }
        prev = t;
    }
    Ok(())
}

/// Combine a price stream and a sentiment stream on a common bucketed axis.
///
/// The time axis is the set of buckets that contain at least one price; each
/// row carries the last price in its bucket and the mean polarity of the
/// posts in it (0.0 when there are none). Posts in buckets without a price
/// are dropped.
pub fn merge(
    prices: &[(i64, f64)],
    sentiments: &[SentimentRecord],
    bucket_secs: i64,
) -> Result<MergedSeries, DatasetError> {
    if bucket_secs <= 0 {
        return Err(DatasetError::BadBucket(bucket_secs));
    }
    if prices.is_empty() {
        return Err(DatasetError::NoPrices);
    }
    check_ordered(prices.iter().map(|p| p.0))?;
    check_ordered(sentiments.iter().map(|s| s.timestamp))?;

    let mut last_price = BTreeMap::new();
    for &(t, p) in prices {
        last_price.insert(bucket_label(t, bucket_secs), p);
    }
    let mut polarity: BTreeMap<i64, (f64, usize)> = BTreeMap::new();
    for s in sentiments {
        let slot = polarity
            .entry(bucket_label(s.timestamp, bucket_secs))
            .or_insert((0.0, 0));
        slot.0 += s.polarity;
        slot.1 += 1;
    }

    let rows = last_price
        .into_iter()
        .map(|(time, price)| {
            let sentiment = polarity
                .get(&time)
                .map_or(0.0, |&(sum, n)| sum / n as f64);
            MergedRow {
                time,
                price,
                sentiment,
            }
        })
        .collect();
    MergedSeries::from_rows(rows)
}

/// Fill missing values: prices forward-filled from the last valid one, with
/// leading gaps back-filled from the first valid one; sentiment gaps become 0.
pub fn fill_missing(series: &MergedSeries) -> Result<MergedSeries, DatasetError> {
    if series.is_empty() {
        return Ok(series.clone());
    }
    let first_valid = series
        .rows
        .iter()
        .map(|r| r.price)
        .find(|p| p.is_finite())
        .ok_or(DatasetError::AllPricesMissing)?;
    let mut carry = first_valid;
    let rows = series
        .rows
        .iter()
        .map(|r| {
            if r.price.is_finite() {
                carry = r.price;
            }
            MergedRow {
                time: r.time,
                price: carry,
                sentiment: if r.sentiment.is_finite() {
                    r.sentiment
                } else {
                    0.0
                },
            }
        })
        .collect();
    Ok(MergedSeries { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sentiment::{classify, SentimentRecord};
    use proptest::prelude::*;

    fn post(timestamp: i64, polarity: f64) -> SentimentRecord {
        SentimentRecord {
            timestamp,
            tokens: vec![],
            polarity,
            label: classify(polarity).unwrap(),
        }
    }

    fn series(prices: &[f64]) -> MergedSeries {
        MergedSeries::from_rows(
            prices
                .iter()
                .enumerate()
                .map(|(i, &price)| MergedRow {
                    time: i as i64,
                    price,
                    sentiment: 0.0,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn post_lands_in_right_closed_bucket() {
        // t=70 falls in (60, 120], so it belongs to the second price bucket.
        let merged = merge(&[(60, 100.0), (120, 101.0)], &[post(70, 0.8)], 60).unwrap();
        let rows = merged.rows();
        assert_eq!(rows.len(), 2);
        assert_eq!((rows[0].time, rows[0].price, rows[0].sentiment), (60, 100.0, 0.0));
        assert_eq!((rows[1].time, rows[1].price, rows[1].sentiment), (120, 101.0, 0.8));
    }

    #[test]
    fn no_posts_means_zero_sentiment() {
        let merged = merge(&[(1, 1.0), (2, 2.0), (3, 3.0)], &[], 1).unwrap();
        assert!(merged.sentiments().iter().all(|&s| s == 0.0));
    }

    #[test]
    fn opposing_posts_cancel() {
        let merged = merge(&[(60, 1.0)], &[post(30, 0.4), post(40, -0.4)], 60).unwrap();
        assert_eq!(merged.rows()[0].sentiment, 0.0);
    }

    #[test]
    fn last_price_in_bucket_wins() {
        let merged = merge(&[(1, 5.0), (30, 6.0), (60, 7.0), (61, 8.0)], &[], 60).unwrap();
        assert_eq!(merged.prices(), vec![7.0, 8.0]);
        assert_eq!(merged.times(), vec![60, 120]);
    }

    #[test]
    fn merge_errors() {
        assert!(matches!(merge(&[], &[post(1, 0.1)], 60), Err(DatasetError::NoPrices)));
        assert!(matches!(merge(&[(1, 1.0)], &[], 0), Err(DatasetError::BadBucket(0))));
        assert!(matches!(
            merge(&[(5, 1.0), (1, 1.0)], &[], 60),
            Err(DatasetError::Unordered(1))
        ));
    }

    #[test]
    fn fill_cases() {
        let nan = f64::NAN;
        assert_eq!(fill_missing(&series(&[100.0, nan, 102.0])).unwrap().prices(), vec![100.0, 100.0, 102.0]);
        assert_eq!(fill_missing(&series(&[nan, 100.0])).unwrap().prices(), vec![100.0, 100.0]);
        let clean = series(&[1.0, 2.0]);
        assert_eq!(fill_missing(&clean).unwrap(), clean);
        assert!(matches!(
            fill_missing(&series(&[nan, nan])),
            Err(DatasetError::AllPricesMissing)
        ));
    }

    #[test]
    fn missing_sentiment_becomes_zero() {
        let s = MergedSeries::from_rows(vec![MergedRow {
            time: 0,
            price: 1.0,
            sentiment: f64::NAN,
        }])
        .unwrap();
        assert_eq!(fill_missing(&s).unwrap().rows()[0].sentiment, 0.0);
    }

    proptest! {
        #[test]
        fn merged_times_strictly_increase(
            mut price_times in proptest::collection::vec(-10_000i64..10_000, 1..60),
            mut post_times in proptest::collection::vec(-10_000i64..10_000, 0..60),
            bucket in 1i64..500,
        ) {
            price_times.sort();
            post_times.sort();
            let prices: Vec<_> = price_times.iter().map(|&t| (t, 1.0 + t as f64 * 1e-3)).collect();
            let posts: Vec<_> = post_times.iter().map(|&t| post(t, 0.5)).collect();
            let merged = merge(&prices, &posts, bucket).unwrap();
            prop_assert!(merged.rows().windows(2).all(|w| w[0].time < w[1].time));
            prop_assert!(merged.rows().iter().all(|r| r.time % bucket == 0));
            prop_assert!(!merged.has_missing());
        }
    }
}
