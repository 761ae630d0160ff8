//! Plain-text parameter file:
//!
//! ```text
//! lstm-params 1
//! n_features 2
//! hidden_size 32
//! tensor w_f 32 34
//! <one line per row, values separated by spaces>
//! tensor b_f 32 1
//! ...
//! ```
//!
//! Tensors appear in [`TENSOR_NAMES`] order, values row-major, printed with
//! the shortest representation that parses back to the same `f64`.

use std::io::{BufRead, Write};
use std::path::Path;

use super::{LstmError, LstmModel, TENSOR_NAMES};

const MAGIC: &str = "lstm-params 1";

pub fn write_model<W: Write>(mut w: W, model: &LstmModel) -> std::io::Result<()> {
    writeln!(w, "{MAGIC}")?;
    writeln!(w, "n_features {}", model.n_features)?;
    writeln!(w, "hidden_size {}", model.hidden)?;
    let shapes = model.tensor_shapes();
    for ((name, data), (rows, cols)) in TENSOR_NAMES.iter().zip(model.tensors()).zip(shapes) {
        writeln!(w, "tensor {name} {rows} {cols}")?;
        for r in 0..rows {
            // Storage is column-major.
            let line: Vec<String> = (0..cols).map(|c| data[c * rows + r].to_string()).collect();
            writeln!(w, "{}", line.join(" "))?;
        }
    }
    w.flush()
}

pub fn save_model(path: impl AsRef<Path>, model: &LstmModel) -> std::io::Result<()> {
    let file = std::fs::File::create(path)?;
    write_model(std::io::BufWriter::new(file), model)
}

struct Lines<R> {
    inner: std::io::Lines<R>,
    number: usize,
}

impl<R: BufRead> Lines<R> {
    fn next_line(&mut self) -> Result<String, LstmError> {
        self.number += 1;
        match self.inner.next() {
            Some(line) => Ok(line?),
            None => Err(self.error("unexpected end of file")),
        }
    }

    fn error(&self, reason: impl Into<String>) -> LstmError {
        LstmError::Parse {
            line: self.number,
            reason: reason.into(),
        }
    }

    fn keyed_usize(&mut self, key: &str) -> Result<usize, LstmError> {
        let line = self.next_line()?;
        line.strip_prefix(key)
            .and_then(|rest| rest.trim().parse().ok())
            .ok_or_else(|| self.error(format!("expected `{key} <n>`")))
    }
}

pub fn read_model<R: BufRead>(reader: R) -> Result<LstmModel, LstmError> {
    let mut lines = Lines {
        inner: reader.lines(),
        number: 0,
    };
    if lines.next_line()?.trim() != MAGIC {
        return Err(lines.error(format!("expected `{MAGIC}`")));
    }
    let n_features = lines.keyed_usize("n_features")?;
    let hidden = lines.keyed_usize("hidden_size")?;
    if n_features == 0 || hidden == 0 {
        return Err(lines.error("dimensions must be positive"));
    }
    let mut model = LstmModel::zeros(n_features, hidden);
    let shapes = model.tensor_shapes();

    for ((name, data), (rows, cols)) in TENSOR_NAMES
        .iter()
        .zip(model.tensors_mut())
        .zip(shapes)
    {
        let header = lines.next_line()?;
        if header.trim() != format!("tensor {name} {rows} {cols}") {
            return Err(lines.error(format!("expected `tensor {name} {rows} {cols}`")));
        }
        for r in 0..rows {
            let line = lines.next_line()?;
            let values: Vec<f64> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|_| lines.error("invalid number"))?;
            if values.len() != cols {
                return Err(lines.error(format!("expected {cols} values, got {}", values.len())));
            }
            if values.iter().any(|v| !v.is_finite()) {
                return Err(lines.error("non-finite parameter"));
            }
            for (c, v) in values.into_iter().enumerate() {
                data[c * rows + r] = v;
            }
        }
    }
    Ok(model)
}

pub fn load_model(path: impl AsRef<Path>) -> Result<LstmModel, LstmError> {
    let file = std::fs::File::open(path)?;
    read_model(std::io::BufReader::new(file))
}
