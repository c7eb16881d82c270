//! Plot-ready data emission: final-archive objective vectors as CSV, one
//! file per archive, for external plotting tools.

use std::io::Write;
use std::path::{Path, PathBuf};

use ctaea::record::{RunRecord, SolutionRecord};

use crate::BenchError;

/// Writes the final convergence set of `record` to `<target>-ca.csv` and
/// the final diversity set to the parallel `<target>-da.csv` (a `.csv`
/// extension on `target` is stripped first). Each file holds an
/// `f1..fm,cv` header and one row per archive member, printed with
/// shortest-round-trip precision so re-parsing reproduces the stored
/// values exactly. The diversity file is header-only for algorithms
/// without a diversity archive. Returns the two paths written.
pub fn emit_scatter(record: &RunRecord, target: &Path) -> Result<(PathBuf, PathBuf), BenchError> {
    let base = if target.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
        target.with_extension("")
    } else {
        target.to_path_buf()
    };
    let stem = base
        .file_name()
        .and_then(|n| n.to_str())
        .ok_or_else(|| BenchError::Config(format!("unusable scatter target {target:?}")))?
        .to_string();
    let ca_path = base.with_file_name(format!("{stem}-ca.csv"));
    let da_path = base.with_file_name(format!("{stem}-da.csv"));
    write_archive_csv(&ca_path, record.objectives, &record.final_ca)?;
    write_archive_csv(&da_path, record.objectives, &record.final_da)?;
    Ok((ca_path, da_path))
}

fn write_archive_csv(
    path: &Path,
    m: usize,
    members: &[SolutionRecord],
) -> Result<(), BenchError> {
    let mut text = Vec::new();
    for j in 1..=m {
        let _ = write!(text, "f{j},");
    }
    let _ = writeln!(text, "cv");
    for member in members {
        for value in &member.objectives {
            let _ = write!(text, "{value},");
        }
        let _ = writeln!(text, "{}", member.constraint_violation);
    }
    std::fs::write(path, text).map_err(|e| BenchError::io(path, e))
}

/// Reads a scatter CSV back: one `(objectives, cv)` pair per row.
pub fn read_scatter(path: &Path) -> Result<Vec<(Vec<f64>, f64)>, BenchError> {
    let text = std::fs::read_to_string(path).map_err(|e| BenchError::io(path, e))?;
    let bad = |message: String| BenchError::Format {
        path: path.to_path_buf(),
        message,
    };
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty file".into()))?;
    let columns: Vec<&str> = header.split(',').collect();
    if columns.len() < 2 || columns.last() != Some(&"cv") {
        return Err(bad(format!("unrecognized header {header:?}")));
    }
    let m = columns.len() - 1;
    for (j, column) in columns[..m].iter().enumerate() {
        if *column != format!("f{}", j + 1) {
            return Err(bad(format!("unrecognized header {header:?}")));
        }
    }
    let mut rows = Vec::new();
    for (index, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != m + 1 {
            return Err(bad(format!(
                "row {} has {} fields, expected {}",
                index + 2,
                fields.len(),
                m + 1
            )));
        }
        let mut values = Vec::with_capacity(m + 1);
        for field in fields {
            values.push(field.parse::<f64>().map_err(|_| {
                bad(format!("row {}: invalid number {field:?}", index + 2))
            })?);
        }
        let cv = values.pop().expect("m + 1 values");
        rows.push((values, cv));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ctaea::record::RunRecord;

    fn record_with(ca: Vec<SolutionRecord>, da: Vec<SolutionRecord>) -> RunRecord {
        RunRecord {
            algorithm: "ctaea".into(),
            problem: "C2-DTLZ2".into(),
            objectives: 2,
            variables: 3,
            seed: 1,
            population_size: ca.len(),
            max_evaluations: 10,
            evaluations_used: 10,
            generations: 0,
            trace: Vec::new(),
            final_ca: ca,
            final_da: da,
        }
    }

    fn member(objectives: Vec<f64>, cv: f64) -> SolutionRecord {
        SolutionRecord {
            x: vec![0.1, 0.2, 0.3],
            objectives,
            constraint_violation: cv,
        }
    }

    #[test]
    fn scatter_round_trips_exactly_with_headers_and_row_counts() {
        let dir = tempfile::tempdir().unwrap();
        let record = record_with(
            vec![
                member(vec![0.1 + 0.2, 1.0 / 3.0], 0.0),
                member(vec![1e-17, 2.5], 0.0),
            ],
            vec![member(vec![0.5, 0.5], 0.75)],
        );
        let (ca_path, da_path) = emit_scatter(&record, &dir.path().join("run7")).unwrap();
        assert!(ca_path.ends_with("run7-ca.csv"));
        assert!(da_path.ends_with("run7-da.csv"));

        let ca_text = std::fs::read_to_string(&ca_path).unwrap();
        assert_eq!(ca_text.lines().count(), 3, "header plus one row per member");
        assert_eq!(ca_text.lines().next().unwrap(), "f1,f2,cv");

        let rows = read_scatter(&ca_path).unwrap();
        for (row, member) in rows.iter().zip(&record.final_ca) {
            assert_eq!(row.0, member.objectives, "re-parse is exact");
            assert_eq!(row.1, member.constraint_violation);
        }
        let da_rows = read_scatter(&da_path).unwrap();
        assert_eq!(da_rows.len(), 1);
        assert!(da_rows[0].1 > 0.0, "diversity rows may carry violations");
    }

    #[test]
    fn empty_diversity_archive_yields_header_only_file() {
        let dir = tempfile::tempdir().unwrap();
        let record = record_with(vec![member(vec![1.0, 2.0], 0.0)], Vec::new());
        // A .csv extension on the target is tolerated and stripped.
        let (_, da_path) = emit_scatter(&record, &dir.path().join("base.csv")).unwrap();
        assert!(da_path.ends_with("base-da.csv"));
        assert_eq!(read_scatter(&da_path).unwrap().len(), 0);
    }

    #[test]
    fn malformed_scatter_files_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "f1,f2\n1,2\n").unwrap();
        assert!(read_scatter(&path).is_err(), "header must end in cv");
        std::fs::write(&path, "f1,cv\n1,2,3\n").unwrap();
        assert!(read_scatter(&path).is_err(), "row arity must match header");
        std::fs::write(&path, "f1,cv\nx,2\n").unwrap();
        assert!(read_scatter(&path).is_err(), "numbers must parse");
    }
}
