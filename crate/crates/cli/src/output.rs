//! Tabular output as CSV or JSON, and the line-list reader used by
//! `invert`.

use std::path::Path;

use parabolic_mr::SpinLevelIndex;
use serde::Serialize;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Spin(SpinLevelIndex),
}

impl Cell {
    /// 17 significant digits for floats; exact decimals for `M`.
    fn text(self) -> String {
        match self {
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Spin(m) => m.value().to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<u32> for Cell {
    fn from(i: u32) -> Self {
        Cell::Int(i.into())
    }
}

impl From<SpinLevelIndex> for Cell {
    fn from(m: SpinLevelIndex) -> Self {
        Cell::Spin(m)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns).map_err(csv_error)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.text())).map_err(csv_error)?;
        }
        w.into_inner()
            .map_err(|e| CliError::invalid(format!("csv: {e}")))
    }

    pub fn encode(&self, format: Format) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => to_json(self),
        }
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::invalid(format!("csv: {e}"))
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| CliError::invalid(format!("json: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// One row of a line list. Only the frequency is mandatory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineRecord {
    pub m_from: Option<f64>,
    pub n_from: Option<u32>,
    pub m_to: Option<f64>,
    pub n_to: Option<u32>,
    pub freq_hz: f64,
}

/// Reads any CSV with a `freq_hz` column, such as `lines.csv`.
pub fn read_line_list(path: &Path) -> Result<Vec<LineRecord>, CliError> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| CliError::invalid(format!("lines_file {}: {e}", path.display())))?;
    let header = reader
        .headers()
        .map_err(|e| CliError::invalid(format!("lines_file {}: {e}", path.display())))?
        .clone();
    let column = |name: &str| header.iter().position(|h| h == name);
    let freq = column("freq_hz").ok_or_else(|| {
        CliError::invalid(format!("lines_file {}: no freq_hz column", path.display()))
    })?;
    let (mf, nf, mt, nt) = (
        column("M_from"),
        column("n_from"),
        column("M_to"),
        column("n_to"),
    );
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record
            .map_err(|e| CliError::invalid(format!("lines_file {}: {e}", path.display())))?;
        let bad = |what: &str| {
            CliError::invalid(format!(
                "lines_file {}: row {}: bad {what}",
                path.display(),
                i + 1
            ))
        };
        let float = |idx: Option<usize>, what: &str| -> Result<Option<f64>, CliError> {
            idx.map(|k| record.get(k).unwrap_or("").trim().parse::<f64>().map_err(|_| bad(what)))
                .transpose()
        };
        let int = |idx: Option<usize>, what: &str| -> Result<Option<u32>, CliError> {
            idx.map(|k| record.get(k).unwrap_or("").trim().parse::<u32>().map_err(|_| bad(what)))
                .transpose()
        };
        out.push(LineRecord {
            m_from: float(mf, "M_from")?,
            n_from: int(nf, "n_from")?,
            m_to: float(mt, "M_to")?,
            n_to: int(nt, "n_to")?,
            freq_hz: float(Some(freq), "freq_hz")?.expect("column present"),
        });
    }
    Ok(out)
}
