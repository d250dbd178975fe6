//! CSV emission and readback for norm series: full 17-significant-digit
//! decimal floats, one header row, append-safe across checkpoints.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use wavegrow_core::series::NormSeries;

/// 17 significant digits: enough to reproduce any f64 bit pattern exactly.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub struct CsvWriter {
    out: BufWriter<File>,
}

impl CsvWriter {
    /// Create the file and write the header row `t,<names...>`.
    pub fn create(path: &Path, names: &[String]) -> std::io::Result<Self> {
        let mut out = BufWriter::new(File::create(path)?);
        let mut header = String::from("t");
        for n in names {
            header.push(',');
            header.push_str(n);
        }
        header.push('\n');
        out.write_all(header.as_bytes())?;
        out.flush()?;
        Ok(CsvWriter { out })
    }

    /// Reopen an existing series file for appending (resume path).
    pub fn open_append(path: &Path) -> std::io::Result<Self> {
        let out = BufWriter::new(OpenOptions::new().append(true).open(path)?);
        Ok(CsvWriter { out })
    }

    /// One row; flushed immediately so a crash never loses written rows.
    pub fn row(&mut self, t: f64, values: &[f64]) -> std::io::Result<()> {
        let mut line = fmt_float(t);
        for v in values {
            line.push(',');
            line.push_str(&fmt_float(*v));
        }
        line.push('\n');
        self.out.write_all(line.as_bytes())?;
        self.out.flush()
    }
}

/// Write a whole series at once.
pub fn write_series(series: &NormSeries, path: &Path) -> std::io::Result<()> {
    let mut w = CsvWriter::create(path, series.names())?;
    for (i, &t) in series.times().iter().enumerate() {
        w.row(t, &series.row(i))?;
    }
    Ok(())
}

/// Parsed CSV: column names (without the leading `t`), times, and columns.
pub struct CsvData {
    pub names: Vec<String>,
    pub times: Vec<f64>,
    pub columns: Vec<Vec<f64>>,
}

impl CsvData {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.columns[i].as_slice())
    }
}

pub fn read_csv(path: &Path) -> std::io::Result<CsvData> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines();
    let header = lines.next().ok_or_else(|| bad_data("empty csv file"))??;
    let mut fields = header.split(',');
    let first = fields.next().unwrap_or("");
    if first != "t" {
        return Err(bad_data("csv header must start with `t`"));
    }
    let names: Vec<String> = fields.map(|s| s.to_string()).collect();
    let mut times = Vec::new();
    let mut columns: Vec<Vec<f64>> = names.iter().map(|_| Vec::new()).collect();

    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split(',');
        let t: f64 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| bad_data("bad time field"))?;
        times.push(t);
        for col in columns.iter_mut() {
            let v: f64 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad_data("row shorter than header"))?;
            col.push(v);
        }
        if parts.next().is_some() {
            return Err(bad_data("row longer than header"));
        }
    }
    Ok(CsvData {
        names,
        times,
        columns,
    })
}

fn bad_data(msg: &str) -> std::io::Error {
    std::io::Error::new(std::io::ErrorKind::InvalidData, msg)
}
