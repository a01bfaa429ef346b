//! File formats: point CSV, contour WKT records, merge-trace JSON lines and
//! JSON documents.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use ddc_core::data::Dataset;
use ddc_core::engine::MergeRecord;
use ddc_core::geometry::wkt::{fmt_sig9, parse_contour_record};
use ddc_core::{Contour, Point2D};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

/// Reads a point CSV with header `x,y` or `x,y,label`.
pub fn read_points(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    read_points_from(open(path)?, path)
}

pub fn read_points_from<R: Read>(reader: R, name: &Path) -> Result<Dataset> {
    let parse_err = |line: u64, message: String| Error::Parse {
        path: name.to_path_buf(),
        line,
        message,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .clone();
    let cols: Vec<&str> = header.iter().collect();
    let labeled = match cols.as_slice() {
        ["x", "y"] => false,
        ["x", "y", "label"] => true,
        _ => {
            return Err(parse_err(
                1,
                format!("expected header x,y[,label], found {}", cols.join(",")),
            ))
        }
    };
    let mut points = Vec::new();
    let mut labels = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let num = |i: usize| -> Result<f64> {
            let text = &record[i];
            text.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_err(line, format!("invalid coordinate {text:?}")))
        };
        points.push(Point2D::new(num(0)?, num(1)?));
        if labeled {
            let text = &record[2];
            let label = text
                .parse::<i32>()
                .ok()
                .filter(|&l| l >= -1)
                .ok_or_else(|| parse_err(line, format!("invalid label {text:?}")))?;
            labels.push(label);
        }
    }
    Ok(Dataset {
        points,
        labels: labeled.then_some(labels),
    })
}

/// Writes coordinates at nine significant digits, with a label column when
/// the dataset carries labels.
pub fn write_points(path: impl AsRef<Path>, dataset: &Dataset) -> Result<()> {
    let path = path.as_ref();
    let mut w = create(path)?;
    write_points_to(&mut w, &dataset.points, dataset.labels.as_deref())
        .map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_points_to<W: Write>(
    w: &mut W,
    points: &[Point2D],
    labels: Option<&[i32]>,
) -> std::io::Result<()> {
    match labels {
        Some(labels) => {
            writeln!(w, "x,y,label")?;
            for (p, l) in points.iter().zip(labels) {
                writeln!(w, "{},{},{l}", fmt_sig9(p.x), fmt_sig9(p.y))?;
            }
        }
        None => {
            writeln!(w, "x,y")?;
            for p in points {
                writeln!(w, "{},{}", fmt_sig9(p.x), fmt_sig9(p.y))?;
            }
        }
    }
    Ok(())
}

/// Size in bytes of the unlabeled point CSV for `points`.
pub fn serialized_size(points: &[Point2D]) -> usize {
    let mut buf = Vec::new();
    write_points_to(&mut buf, points, None).expect("writing to memory");
    buf.len()
}

/// Writes one `point_count;density;POLYGON ((...))` record per line.
pub fn write_contours(path: impl AsRef<Path>, contours: &[Contour]) -> Result<()> {
    let path = path.as_ref();
    let mut w = create(path)?;
    for c in contours {
        writeln!(w, "{}", c.to_record()).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Reads contour records. Source node and eps hint are not part of the
/// format and come back as `0` and `None`.
pub fn read_contours(path: impl AsRef<Path>) -> Result<Vec<Contour>> {
    let path = path.as_ref();
    let reader = BufReader::new(open(path)?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let (count, _density, polygon) = parse_contour_record(&line).map_err(|e| Error::Parse {
            path: path.to_path_buf(),
            line: i as u64 + 1,
            message: e.to_string(),
        })?;
        out.push(Contour::new(polygon, count, 0, None));
    }
    Ok(out)
}

/// Writes the merge trace as JSON lines, one record per group merge.
pub fn write_trace(path: impl AsRef<Path>, trace: &[MergeRecord]) -> Result<()> {
    let path = path.as_ref();
    let mut w = create(path)?;
    for r in trace {
        serde_json::to_writer(&mut w, r).map_err(|e| Error::io(path, e.into()))?;
        writeln!(w).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Error::io(path, e.into()))?;
    writeln!(w).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let reader = BufReader::new(open(path)?);
    serde_json::from_reader(reader).map_err(|e| Error::Parse {
        path: PathBuf::from(path),
        line: e.line() as u64,
        message: e.to_string(),
    })
}

/// Writes CSV text (header plus rows) to `path`.
pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let path = path.as_ref();
    let mut w = create(path)?;
    w.write_all(text.as_bytes())
        .map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}
