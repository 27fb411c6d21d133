//! CSV and JSON export.
//!
//! `records.csv` columns: `algorithm,problem,dim,seed,evaluations,final_best,wall_time_s`.
//! The sibling trace file (`records.trace.csv` for `records.csv`) has
//! `algorithm,problem,seed,evaluations_so_far,best_fitness,diversity`, with an
//! empty diversity cell for single-trajectory methods. Floats are written in
//! shortest round-trip form, so parsing them back is bit-exact.
//!
//! Files are written to a temporary sibling and renamed into place; on error
//! the temporary file is removed.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::experiment::{RunRecord, TracePoint};
use crate::harness::stats::SummaryStats;

pub const RECORD_COLUMNS: [&str; 7] =
    ["algorithm", "problem", "dim", "seed", "evaluations", "final_best", "wall_time_s"];
pub const TRACE_COLUMNS: [&str; 6] =
    ["algorithm", "problem", "seed", "evaluations_so_far", "best_fitness", "diversity"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub records: Vec<RunRecord>,
    pub summary: SummaryStats,
}

/// `dir/stem.trace.csv` for `dir/stem.csv`.
pub fn trace_path(records_path: &Path) -> PathBuf {
    let stem = records_path.file_stem().and_then(|s| s.to_str()).unwrap_or("records");
    records_path.with_file_name(format!("{stem}.trace.csv"))
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> Error + '_ {
    move |source| Error::Csv { path: path.to_path_buf(), source }
}

/// Writes through a temporary sibling file, renaming on success.
fn write_atomically(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    let file_name = path.file_name().and_then(|s| s.to_str()).unwrap_or("out");
    let tmp = path.with_file_name(format!(".{file_name}.partial"));
    let result = (|| {
        let mut w = BufWriter::new(File::create(&tmp).map_err(io_err(path))?);
        body(&mut w)?;
        w.flush().map_err(io_err(path))?;
        drop(w);
        fs::rename(&tmp, path).map_err(io_err(path))
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Writes `path` and its sibling trace file.
pub fn export_csv(records: &[RunRecord], path: &Path) -> Result<()> {
    write_atomically(path, |w| {
        let mut csv = csv::Writer::from_writer(w);
        csv.write_record(RECORD_COLUMNS).map_err(csv_err(path))?;
        for r in records {
            csv.write_record([
                r.algorithm.clone(),
                r.problem.clone(),
                r.dim.to_string(),
                r.seed.to_string(),
                r.evaluations.to_string(),
                r.final_best.to_string(),
                r.wall_time.to_string(),
            ])
            .map_err(csv_err(path))?;
        }
        csv.flush().map_err(io_err(path))
    })?;

    let tpath = trace_path(path);
    write_atomically(&tpath, |w| {
        let mut csv = csv::Writer::from_writer(w);
        csv.write_record(TRACE_COLUMNS).map_err(csv_err(&tpath))?;
        for r in records {
            for t in &r.trace {
                csv.write_record([
                    r.algorithm.clone(),
                    r.problem.clone(),
                    r.seed.to_string(),
                    t.evaluations_so_far.to_string(),
                    t.best_fitness.to_string(),
                    t.diversity.map(|d| d.to_string()).unwrap_or_default(),
                ])
                .map_err(csv_err(&tpath))?;
            }
        }
        csv.flush().map_err(io_err(&tpath))
    })
}

fn field<T: std::str::FromStr>(row: &csv::StringRecord, i: usize, path: &Path) -> Result<T> {
    let raw = row.get(i).unwrap_or("");
    raw.parse().map_err(|_| {
        Error::input(format!(
            "{}: cannot parse column {} value `{raw}` on line {}",
            path.display(),
            i + 1,
            row.position().map_or(0, |p| p.line())
        ))
    })
}

fn check_header(reader: &mut csv::Reader<File>, expected: &[&str], path: &Path) -> Result<()> {
    let header = reader.headers().map_err(csv_err(path))?;
    if header.iter().ne(expected.iter().copied()) {
        return Err(Error::input(format!("{}: unexpected header {:?}", path.display(), header)));
    }
    Ok(())
}

/// Reads records and, when present, their sibling trace file. Trace rows are
/// attached in file order to the records with the same (algorithm, problem, seed).
pub fn import_csv(path: &Path) -> Result<Vec<RunRecord>> {
    let mut reader = csv::Reader::from_path(path).map_err(csv_err(path))?;
    check_header(&mut reader, &RECORD_COLUMNS, path)?;
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(csv_err(path))?;
        records.push(RunRecord {
            algorithm: field(&row, 0, path)?,
            problem: field(&row, 1, path)?,
            dim: field(&row, 2, path)?,
            seed: field(&row, 3, path)?,
            evaluations: field(&row, 4, path)?,
            final_best: field(&row, 5, path)?,
            wall_time: field(&row, 6, path)?,
            trace: Vec::new(),
        });
    }

    let tpath = trace_path(path);
    if !tpath.exists() {
        return Ok(records);
    }
    let mut reader = csv::Reader::from_path(&tpath).map_err(csv_err(&tpath))?;
    check_header(&mut reader, &TRACE_COLUMNS, &tpath)?;
    // Rows arrive in record order, so a cursor is enough to attach them.
    let mut cursor = 0;
    for row in reader.records() {
        let row = row.map_err(csv_err(&tpath))?;
        let (algorithm, problem, seed): (String, String, u64) =
            (field(&row, 0, &tpath)?, field(&row, 1, &tpath)?, field(&row, 2, &tpath)?);
        let point = TracePoint {
            evaluations_so_far: field(&row, 3, &tpath)?,
            best_fitness: field(&row, 4, &tpath)?,
            diversity: match row.get(5).unwrap_or("") {
                "" => None,
                _ => Some(field(&row, 5, &tpath)?),
            },
        };
        let matches = |r: &RunRecord| r.algorithm == algorithm && r.problem == problem && r.seed == seed;
        // Advance past the current record once its trace reaches the record's evaluation count.
        while cursor < records.len()
            && (!matches(&records[cursor])
                || records[cursor].trace.last().is_some_and(|t| t.evaluations_so_far >= records[cursor].evaluations))
        {
            cursor += 1;
        }
        match records.get_mut(cursor) {
            Some(r) => r.trace.push(point),
            None => {
                return Err(Error::input(format!(
                    "{}: trace row for {algorithm}/{problem}/{seed} has no matching record",
                    tpath.display()
                )))
            }
        }
    }
    Ok(records)
}

/// Writes `{"records": [...], "summary": [...]}`. JSON has no representation
/// for infinities or NaN, so any non-finite value is rejected before writing.
pub fn export_json(records: &[RunRecord], summary: &SummaryStats, path: &Path) -> Result<()> {
    let record_values = records.iter().flat_map(|r| {
        [r.final_best, r.wall_time]
            .into_iter()
            .chain(r.trace.iter().flat_map(|t| std::iter::once(t.best_fitness).chain(t.diversity)))
    });
    let summary_values =
        summary.cells.iter().flat_map(|c| [c.min, c.median, c.mean, c.std, c.max].into_iter().chain(c.success_rate));
    if let Some(v) = record_values.chain(summary_values).find(|v| !v.is_finite()) {
        return Err(Error::input(format!("{}: cannot write non-finite value {v} as JSON", path.display())));
    }
    #[derive(Serialize)]
    struct Borrowed<'a> {
        records: &'a [RunRecord],
        summary: &'a SummaryStats,
    }
    write_atomically(path, |w| {
        serde_json::to_writer_pretty(&mut *w, &Borrowed { records, summary })
            .map_err(|source| Error::Json { path: path.to_path_buf(), source })
    })
}

pub fn import_json(path: &Path) -> Result<ExperimentReport> {
    let file = File::open(path).map_err(io_err(path))?;
    serde_json::from_reader(std::io::BufReader::new(file))
        .map_err(|source| Error::Json { path: path.to_path_buf(), source })
}
