//! CSV ingestion: header auto-detection, column selection by name or
//! 0-based index, locale-independent number parsing.

use std::path::Path;

use crate::CliError;

/// Load one numeric column from a CSV file.
///
/// The first row is treated as a header when the selected column does not
/// parse as a number there (or when the column is addressed by name).
pub fn read_column(path: &Path, column: &str) -> Result<Vec<f64>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("cannot open {}: {e}", path.display())))?;

    let mut records = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec =
            rec.map_err(|e| CliError::Input(format!("{}: row {}: {e}", path.display(), i + 1)))?;
        records.push(rec);
    }
    if records.is_empty() {
        return Err(CliError::Input(format!("{}: empty file", path.display())));
    }

    let (col_idx, mut start_row) = match column.parse::<usize>() {
        Ok(idx) => (idx, 0),
        Err(_) => {
            let header = &records[0];
            let idx = header
                .iter()
                .position(|h| h.trim() == column)
                .ok_or_else(|| {
                    CliError::Input(format!(
                        "{}: no column named '{column}' in header {:?}",
                        path.display(),
                        header.iter().collect::<Vec<_>>()
                    ))
                })?;
            (idx, 1)
        }
    };

    // Index-addressed column: skip the first row when it is not numeric.
    if start_row == 0 {
        let first = records[0].get(col_idx).unwrap_or("");
        if first.trim().parse::<f64>().is_err() {
            start_row = 1;
        }
    }

    let mut values = Vec::with_capacity(records.len());
    for (i, rec) in records.iter().enumerate().skip(start_row) {
        let cell = rec.get(col_idx).ok_or_else(|| {
            CliError::Input(format!(
                "{}: row {} has no column {col_idx}",
                path.display(),
                i + 1
            ))
        })?;
        let v = cell.trim().parse::<f64>().map_err(|_| {
            CliError::Input(format!(
                "{}: row {}, column {col_idx}: cannot parse '{cell}' as a number",
                path.display(),
                i + 1
            ))
        })?;
        values.push(v);
    }
    if values.is_empty() {
        return Err(CliError::Input(format!(
            "{}: no numeric data rows in column {column}",
            path.display()
        )));
    }
    Ok(values)
}
