use std::io::{Read, Write};

use super::{DatasetError, MergedRow, MergedSeries};

const HEADER: [&str; 3] = ["time", "price", "sentiment"];

/// Parse a value cell; empty cells and `NaN` mark missing values.
fn cell(raw: &str, line: u64, column: &str) -> Result<f64, DatasetError> {
    let raw = raw.trim();
    if raw.is_empty() || raw.eq_ignore_ascii_case("nan") {
        return Ok(f64::NAN);
    }
    raw.parse()
        .map_err(|_| DatasetError::Format(format!("line {line}: {column} {raw:?} is not a number")))
}

/// Read a merged dataset file with header `time,price,sentiment`.
pub fn read_merged<R: Read>(reader: R) -> Result<MergedSeries, DatasetError> {
    let mut reader = csv::Reader::from_reader(reader);
    let header = reader
        .headers()
        .map_err(|e| DatasetError::Format(e.to_string()))?;
    if header.iter().map(str::trim).ne(HEADER) {
        return Err(DatasetError::Format(format!(
            "expected header {}, found {}",
            HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| DatasetError::Format(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let time = record[0].trim().parse().map_err(|_| {
            DatasetError::Format(format!("line {line}: time {:?} is not an integer", &record[0]))
        })?;
        rows.push(MergedRow {
            time,
            price: cell(&record[1], line, "price")?,
            sentiment: cell(&record[2], line, "sentiment")?,
        });
    }
    MergedSeries::from_rows(rows)
}

pub fn write_merged<W: Write>(mut writer: W, series: &MergedSeries) -> std::io::Result<()> {
    writeln!(writer, "{}", HEADER.join(","))?;
    for r in series.rows() {
        writeln!(writer, "{},{},{}", r.time, r.price, r.sentiment)?;
    }
    writer.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_cells_read_as_nan() {
        let s = read_merged("time,price,sentiment\n1,100,\n2,,0.5\n3,NaN,0\n".as_bytes()).unwrap();
        assert!(s.rows()[0].sentiment.is_nan());
        assert!(s.rows()[1].price.is_nan());
        assert!(s.rows()[2].price.is_nan());
        assert!(s.has_missing());
    }

    #[test]
    fn write_read_exact() {
        let s = MergedSeries::from_rows(vec![
            MergedRow { time: 60, price: 6453.12, sentiment: -0.125 },
            MergedRow { time: 120, price: 0.1 + 0.2, sentiment: 1.0 / 3.0 },
        ])
        .unwrap();
        let mut buf = Vec::new();
        write_merged(&mut buf, &s).unwrap();
        assert!(buf.starts_with(b"time,price,sentiment\n60,6453.12,-0.125\n"));
        assert_eq!(read_merged(buf.as_slice()).unwrap(), s);
    }

    #[test]
    fn rejects_bad_header_and_order() {
        assert!(read_merged("t,p,s\n".as_bytes()).is_err());
        assert!(read_merged("time,price,sentiment\n2,1,0\n1,1,0\n".as_bytes()).is_err());
        assert!(read_merged("time,price,sentiment\n1,abc,0\n".as_bytes()).is_err());
    }
}
