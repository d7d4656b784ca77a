//! On-disk formats: operator JSON, sample CSVs, report JSON.
//!
//! Floating-point fields in CSV output carry 17 significant digits so that
//! round-tripping through text is loss-free.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write as _};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::contraction::TermTable;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::linalg::{C64, CMat};
use crate::sphere::SphereGrid;

/// `{:.16e}` — 17 significant digits, enough to reproduce any f64 exactly.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Which space an operator file lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// Spin operator; payload is `2s`.
    Spin(i64),
    /// Particle operator on a truncation; payload is `n_max`.
    Particle(usize),
}

/// A loaded operator matrix together with its space tag.
#[derive(Clone, Debug)]
pub struct OperatorFile {
    pub kind: OperatorKind,
    pub matrix: CMat,
}

#[derive(Serialize, Deserialize)]
struct RawOperator {
    #[serde(skip_serializing_if = "Option::is_none")]
    two_s: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_max: Option<i64>,
    /// Row-major complex entries as `[re, im]` pairs.
    matrix: Vec<Vec<[f64; 2]>>,
}

fn matrix_to_rows(matrix: &CMat) -> Vec<Vec<[f64; 2]>> {
    matrix
        .rows()
        .into_iter()
        .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

fn rows_to_matrix(rows: &[Vec<[f64; 2]>]) -> Result<CMat> {
    let d = rows.len();
    let mut matrix = CMat::zeros((d, d));
    for (i, row) in rows.iter().enumerate() {
        if row.len() != d {
            return Err(Error::Format(format!(
                "operator matrix is not square: row {i} has {} of {d} entries",
                row.len()
            )));
        }
        for (j, &[re, im]) in row.iter().enumerate() {
            matrix[[i, j]] = C64::new(re, im);
        }
    }
    Ok(matrix)
}

/// Write a spin operator as `{"two_s": ..., "matrix": [[[re, im], ...]]}`.
pub fn save_spin_operator<P: AsRef<Path>>(path: P, s: HalfInt, matrix: &CMat) -> Result<()> {
    let d = s.dimension();
    if matrix.dim() != (d, d) {
        return Err(Error::Dimension {
            expected: d,
            actual: matrix.nrows(),
        });
    }
    let raw = RawOperator {
        two_s: Some(s.twice()),
        n_max: None,
        matrix: matrix_to_rows(matrix),
    };
    save_json(path, &raw)
}

/// Write a particle operator as `{"n_max": ..., "matrix": ...}`.
pub fn save_particle_operator<P: AsRef<Path>>(
    path: P,
    n_max: usize,
    matrix: &CMat,
) -> Result<()> {
    let d = n_max + 1;
    if matrix.dim() != (d, d) {
        return Err(Error::Dimension {
            expected: d,
            actual: matrix.nrows(),
        });
    }
    let raw = RawOperator {
        two_s: None,
        n_max: Some(n_max as i64),
        matrix: matrix_to_rows(matrix),
    };
    save_json(path, &raw)
}

/// Read either operator flavor; the key present (`two_s` vs `n_max`)
/// decides the space.
pub fn load_operator<P: AsRef<Path>>(path: P) -> Result<OperatorFile> {
    let file = File::open(path)?;
    let raw: RawOperator = serde_json::from_reader(BufReader::new(file))?;
    let matrix = rows_to_matrix(&raw.matrix)?;
    let kind = match (raw.two_s, raw.n_max) {
        (Some(ts), None) => {
            if ts < 0 {
                return Err(Error::Format("two_s must be non-negative".into()));
            }
            if matrix.nrows() as i64 != ts + 1 {
                return Err(Error::Format(format!(
                    "matrix dimension {} does not match two_s = {ts}",
                    matrix.nrows()
                )));
            }
            OperatorKind::Spin(ts)
        }
        (None, Some(nm)) => {
            if nm < 0 {
                return Err(Error::Format("n_max must be non-negative".into()));
            }
            if matrix.nrows() as i64 != nm + 1 {
                return Err(Error::Format(format!(
                    "matrix dimension {} does not match n_max = {nm}",
                    matrix.nrows()
                )));
            }
            OperatorKind::Particle(nm as usize)
        }
        (Some(_), Some(_)) => {
            return Err(Error::Format(
                "operator file carries both two_s and n_max; exactly one is allowed".into(),
            ))
        }
        (None, None) => {
            return Err(Error::Format(
                "operator file carries neither two_s nor n_max".into(),
            ))
        }
    };
    Ok(OperatorFile { kind, matrix })
}

/// Serialize any report to pretty JSON.
pub fn save_json<P: AsRef<Path>, T: Serialize>(path: P, value: &T) -> Result<()> {
    let file = File::create(path)?;
    let mut writer = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut writer, value)?;
    writer.write_all(b"\n")?;
    writer.flush()?;
    Ok(())
}

/// One spherical symbol sample, as stored on disk.
#[derive(Clone, Copy, Debug)]
pub struct SymbolSample {
    pub theta: f64,
    pub phi: f64,
    pub weight: f64,
    pub value: C64,
}

/// Write symbol samples as `theta,phi,weight,re,im`.
pub fn save_symbol_csv<P: AsRef<Path>>(
    path: P,
    grid: &SphereGrid,
    samples: &[C64],
) -> Result<()> {
    if samples.len() != grid.len() {
        return Err(Error::Dimension {
            expected: grid.len(),
            actual: samples.len(),
        });
    }
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["theta", "phi", "weight", "re", "im"])?;
    for ((point, weight), value) in grid.iter().zip(samples) {
        writer.write_record([
            format_f64(point.theta()),
            format_f64(point.phi()),
            format_f64(weight),
            format_f64(value.re),
            format_f64(value.im),
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Read back `theta,phi,weight,re,im` rows.
pub fn load_symbol_csv<P: AsRef<Path>>(path: P) -> Result<Vec<SymbolSample>> {
    let mut reader = csv::Reader::from_path(path)?;
    let headers = reader.headers()?.clone();
    let expected = ["theta", "phi", "weight", "re", "im"];
    if headers.iter().collect::<Vec<_>>() != expected {
        return Err(Error::Format(format!(
            "symbol CSV header must be {expected:?}, got {headers:?}"
        )));
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record?;
        let field = |i: usize| -> Result<f64> {
            record
                .get(i)
                .ok_or_else(|| Error::Format("short symbol CSV row".into()))?
                .trim()
                .parse::<f64>()
                .map_err(|e| Error::Format(format!("bad float in symbol CSV: {e}")))
        };
        out.push(SymbolSample {
            theta: field(0)?,
            phi: field(1)?,
            weight: field(2)?,
            value: C64::new(field(3)?, field(4)?),
        });
    }
    Ok(out)
}

/// Check that symbol samples sit on the canonical grid for spin `s` and
/// split them into the grid and the sample values.
pub fn symbol_samples_on_grid(
    s: HalfInt,
    samples: &[SymbolSample],
) -> Result<(SphereGrid, Vec<C64>)> {
    let grid = SphereGrid::for_spin(s)?;
    if samples.len() != grid.len() {
        return Err(Error::Format(format!(
            "expected {} samples on the spin-{s} grid, got {}",
            grid.len(),
            samples.len()
        )));
    }
    for (k, ((point, weight), sample)) in grid.iter().zip(samples).enumerate() {
        let off = (point.theta() - sample.theta)
            .abs()
            .max((point.phi() - sample.phi).abs())
            .max((weight - sample.weight).abs());
        if off > 1e-10 {
            return Err(Error::Format(format!(
                "sample {k} does not sit on the canonical spin-{s} grid \
                 (deviation {off:.2e})"
            )));
        }
    }
    Ok((grid, samples.iter().map(|s| s.value).collect()))
}

/// Write a planar Wigner field as `q,p,w`.
pub fn save_field_csv<P: AsRef<Path>>(path: P, rows: &[(f64, f64, f64)]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["q", "p", "w"])?;
    for &(q, p, w) in rows {
        writer.write_record([format_f64(q), format_f64(p), format_f64(w)])?;
    }
    writer.flush()?;
    Ok(())
}

/// Write a contraction term table as `l,x_l,term,partial_sum`.
pub fn save_term_table_csv<P: AsRef<Path>>(path: P, table: &TermTable) -> Result<()> {
    let mut writer = csv::Writer::from_path(path)?;
    writer.write_record(["l", "x_l", "term", "partial_sum"])?;
    for (l, ((&x, &term), &partial)) in table
        .x_values
        .iter()
        .zip(&table.terms)
        .zip(&table.partial_sums)
        .enumerate()
    {
        writer.write_record([
            l.to_string(),
            format_f64(x),
            format_f64(term),
            format_f64(partial),
        ])?;
    }
    writer.flush()?;
    Ok(())
}
