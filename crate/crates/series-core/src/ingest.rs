use std::fs;
use std::path::Path;

use ndarray::Array2;

use crate::error::{Result, SeriesError};
use crate::month::YearMonth;
use crate::series::MultichannelSeries;

/// Reads a monthly multichannel CSV: header row, column 1 `date` as YYYY-MM,
/// remaining columns numeric. Interior missing cells (empty or `NA`/`NaN`)
/// are repaired by linear interpolation; gaps touching either boundary are
/// errors, as are non-consecutive months.
pub fn ingest_csv(path: &Path) -> Result<MultichannelSeries> {
    let text = fs::read_to_string(path).map_err(|source| SeriesError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_csv(&text)
}

/// Parser behind [`ingest_csv`], split out so in-memory fixtures can be used.
pub fn parse_csv(text: &str) -> Result<MultichannelSeries> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| SeriesError::EmptyInput("CSV has no header row".into()))?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    if columns.len() < 2 {
        return Err(SeriesError::EmptyInput(
            "CSV needs a date column and at least one channel".into(),
        ));
    }
    let channel_names: Vec<String> = columns[1..].iter().map(|s| s.to_string()).collect();
    let m = channel_names.len();

    let mut start: Option<YearMonth> = None;
    let mut expected: Option<YearMonth> = None;
    let mut cells: Vec<Vec<Option<f64>>> = Vec::new();
    for (line_no, line) in lines {
        let row = line_no + 1; // 1-based, matching editor conventions
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != m + 1 {
            return Err(SeriesError::InvalidArgument(format!(
                "row {row} has {} fields, expected {}",
                fields.len(),
                m + 1
            )));
        }
        let date = YearMonth::parse(fields[0])?;
        match expected {
            None => start = Some(date),
            Some(want) if want != date => {
                return Err(SeriesError::NonConsecutiveIndex {
                    expected: want.to_string(),
                    found: date.to_string(),
                    row,
                });
            }
            Some(_) => {}
        }
        expected = Some(date.succ());
        let mut parsed = Vec::with_capacity(m);
        for (c, cell) in fields[1..].iter().enumerate() {
            parsed.push(parse_cell(cell, &channel_names[c], row)?);
        }
        cells.push(parsed);
    }

    let t = cells.len();
    if t == 0 {
        return Err(SeriesError::EmptyInput("CSV has no data rows".into()));
    }
    let mut values = Array2::zeros((t, m));
    for c in 0..m {
        let column: Vec<Option<f64>> = cells.iter().map(|row| row[c]).collect();
        let repaired = repair_interior_gaps(&column, &channel_names[c])?;
        for (r, v) in repaired.into_iter().enumerate() {
            values[(r, c)] = v;
        }
    }
    MultichannelSeries::new(values, channel_names, start.expect("at least one row"))
}

fn parse_cell(cell: &str, column: &str, row: usize) -> Result<Option<f64>> {
    if cell.is_empty() || cell.eq_ignore_ascii_case("na") || cell.eq_ignore_ascii_case("nan") {
        return Ok(None);
    }
    match cell.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(Some(v)),
        _ => Err(SeriesError::NonNumericCell {
            cell: cell.to_string(),
            column: column.to_string(),
            row,
        }),
    }
}

fn repair_interior_gaps(column: &[Option<f64>], name: &str) -> Result<Vec<f64>> {
    let t = column.len();
    if column[0].is_none() {
        return Err(SeriesError::BoundaryGap { channel: name.to_string(), row: 1 });
    }
    if column[t - 1].is_none() {
        return Err(SeriesError::BoundaryGap { channel: name.to_string(), row: t });
    }
    let mut out = Vec::with_capacity(t);
    let mut i = 0;
    while i < t {
        match column[i] {
            Some(v) => {
                out.push(v);
                i += 1;
            }
            None => {
                let left = out[i - 1];
                let mut j = i;
                while column[j].is_none() {
                    j += 1; // terminates: last cell is Some
                }
                let right = column[j].expect("scan stopped at a value");
                let span = (j - i + 1) as f64;
                for k in 0..(j - i) {
                    out.push(left + (right - left) * (k as f64 + 1.0) / span);
                }
                i = j;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_ingestion() {
        let series = parse_csv("date,y\n2006-01,1\n2006-02,2\n2006-03,3\n").unwrap();
        assert_eq!(series.len(), 3);
        assert_eq!(series.channel_count(), 1);
        assert_eq!(series.channel(0).to_vec(), vec![1.0, 2.0, 3.0]);
        assert_eq!(series.start(), YearMonth::new(2006, 1).unwrap());
    }

    #[test]
    fn interior_blank_is_interpolated() {
        let series = parse_csv("date,y\n2006-01,2\n2006-02,\n2006-03,4\n").unwrap();
        assert_eq!(series.channel(0).to_vec(), vec![2.0, 3.0, 4.0]);
    }

    #[test]
    fn multi_cell_gap_is_interpolated_linearly() {
        let series = parse_csv("date,y\n2006-01,0\n2006-02,NA\n2006-03,nan\n2006-04,9\n").unwrap();
        assert_eq!(series.channel(0).to_vec(), vec![0.0, 3.0, 6.0, 9.0]);
    }

    #[test]
    fn month_gap_is_rejected() {
        let err = parse_csv("date,y\n2006-01,1\n2006-03,2\n").unwrap_err();
        assert!(err.to_string().contains("non-consecutive index"), "{err}");
    }

    #[test]
    fn boundary_gap_is_rejected() {
        assert!(parse_csv("date,y\n2006-01,\n2006-02,2\n2006-03,3\n").is_err());
        assert!(parse_csv("date,y\n2006-01,1\n2006-02,2\n2006-03,\n").is_err());
    }

    #[test]
    fn unrepairable_cell_is_rejected() {
        let err = parse_csv("date,y\n2006-01,1\n2006-02,abc\n2006-03,3\n").unwrap_err();
        assert!(matches!(err, SeriesError::NonNumericCell { .. }), "{err}");
    }

    #[test]
    fn pipeline_length_gate() {
        let short = parse_csv("date,y\n2006-01,1\n2006-02,2\n2006-03,3\n").unwrap();
        assert!(short.validate_pipeline_length().is_err());

        let mut text = String::from("date,y\n");
        let mut ym = YearMonth::new(2006, 1).unwrap();
        for v in 0..24 {
            text.push_str(&format!("{ym},{v}\n"));
            ym = ym.succ();
        }
        let ok = parse_csv(&text).unwrap();
        assert!(ok.validate_pipeline_length().is_ok());
    }
}
