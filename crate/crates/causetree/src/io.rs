//! On-disk formats: dataset CSV, generation manifest (JSON lines), and the
//! benchmark report (JSON).
//!
//! Datasets are plain two-column CSV with an `x,y` header. Values are
//! written with `f64`'s `Display`, i.e. the shortest decimal string that
//! round-trips — integers come out without a fractional part and nothing
//! is ever in scientific notation, so files read back bit-identically.
//!
//! The manifest records ground truth and mechanism per dataset, one JSON
//! object per line, kept separate from the data files so inference can
//! never see the labels by accident.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bench::BenchReport;
use crate::data::{validate_dataset, DataKind, Direction, PairDataset};
use crate::scmgen::{LabeledDataset, NoiseMode, NoiseSpec};
use crate::Real;

/// Errors from the file-format layer; the CLI maps all of these to exit
/// code 1.
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: u64,
        message: String,
    },
    #[error(transparent)]
    Data(#[from] crate::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type IoResult<T> = std::result::Result<T, IoError>;

fn parse_err(path: &Path, line: u64, message: impl Into<String>) -> IoError {
    IoError::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

fn with_path(path: &Path) -> impl Fn(std::io::Error) -> IoError + '_ {
    move |source| IoError::File {
        path: path.display().to_string(),
        source,
    }
}

fn open(path: &Path) -> IoResult<File> {
    File::open(path).map_err(with_path(path))
}

fn create(path: &Path) -> IoResult<File> {
    File::create(path).map_err(with_path(path))
}

/// Read a two-column `x,y` CSV and validate it as `kind` data.
pub fn read_pair_csv(path: &Path, kind: DataKind) -> IoResult<PairDataset<f64>> {
    let file = open(path)?;
    // flexible: let our own field-count check report ragged rows, so the
    // message and line number are uniform with the other parse errors.
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(BufReader::new(file));

    {
        let headers = reader.headers().map_err(|e| parse_err(path, 1, e.to_string()))?;
        let fields: Vec<&str> = headers.iter().collect();
        if fields != ["x", "y"] {
            return Err(parse_err(
                path,
                1,
                format!("expected header \"x,y\", found \"{}\"", fields.join(",")),
            ));
        }
    }

    let mut x = Vec::new();
    let mut y = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, csv::Position::line);
            parse_err(path, line, e.to_string())
        })?;
        let line = record.position().map_or(0, csv::Position::line);
        if record.len() != 2 {
            return Err(parse_err(
                path,
                line,
                format!("expected 2 fields, found {}", record.len()),
            ));
        }
        for (field, out) in record.iter().zip([&mut x, &mut y]) {
            let value: f64 = field
                .parse()
                .map_err(|_| parse_err(path, line, format!("not a number: {field:?}")))?;
            out.push(value);
        }
    }
    Ok(validate_dataset(x, y, kind)?)
}

/// Write a dataset as `x,y` CSV.
pub fn write_pair_csv<T: Real>(path: &Path, dataset: &PairDataset<T>) -> IoResult<()> {
    let mut w = BufWriter::new(create(path)?);
    writeln!(w, "x,y")?;
    for (x, y) in dataset.x().iter().zip(dataset.y()) {
        writeln!(w, "{x},{y}")?;
    }
    w.flush()?;
    Ok(())
}

/// One manifest line: where a dataset lives and how it was made.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestRecord {
    pub file: String,
    pub index: u64,
    pub master_seed: u64,
    pub truth: Direction,
    pub noise_x: NoiseSpec,
    pub noise_y: NoiseSpec,
    pub mode: NoiseMode,
    pub mechanism_poly: Vec<i64>,
    pub noise_poly: Vec<i64>,
    pub flipped: bool,
}

impl ManifestRecord {
    pub fn for_dataset(
        file: String,
        index: u64,
        master_seed: u64,
        dataset: &LabeledDataset,
    ) -> Self {
        let m = &dataset.mechanism;
        ManifestRecord {
            file,
            index,
            master_seed,
            truth: dataset.truth,
            noise_x: m.noise_x,
            noise_y: m.noise_y,
            mode: m.mode,
            mechanism_poly: m.mechanism_poly.coeffs.clone(),
            noise_poly: m.noise_poly.coeffs.clone(),
            flipped: m.flipped,
        }
    }
}

/// Write manifest records as JSON lines.
pub fn write_manifest(path: &Path, records: &[ManifestRecord]) -> IoResult<()> {
    let mut w = BufWriter::new(create(path)?);
    for record in records {
        serde_json::to_writer(&mut w, record)?;
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

/// Read a JSON-lines manifest back.
pub fn read_manifest(path: &Path) -> IoResult<Vec<ManifestRecord>> {
    let reader = BufReader::new(open(path)?);
    let mut records = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: ManifestRecord = serde_json::from_str(&line)
            .map_err(|e| parse_err(path, i as u64 + 1, e.to_string()))?;
        records.push(record);
    }
    Ok(records)
}

/// Write the benchmark report as pretty-printed JSON.
pub fn write_report(path: &Path, report: &BenchReport) -> IoResult<()> {
    let mut w = BufWriter::new(create(path)?);
    serde_json::to_writer_pretty(&mut w, report)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn read_report(path: &Path) -> IoResult<BenchReport> {
    Ok(serde_json::from_reader(BufReader::new(open(path)?))?)
}
