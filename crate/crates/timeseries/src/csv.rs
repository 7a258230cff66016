//! CSV ingestion and emission.
//!
//! Format: comma-separated, UTF-8, one header row, decimal point `.`, no
//! thousands separators. Columns are `t`, then w-channels, then u-channels,
//! then y-channels, with names declared in the header. Floats are written in
//! Rust's shortest round-trip form, so a file produced by [`write_csv`]
//! re-loads bit-exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::{Sample, Schema, TimeseriesError, Trajectory};

/// Loads a trajectory from a CSV file, validating the header against
/// `schema`, finiteness of every cell, and constant sample spacing.
pub fn load_csv(path: impl AsRef<Path>, schema: &Schema) -> Result<Trajectory, TimeseriesError> {
    let file = File::open(path)?;
    load_csv_reader(BufReader::new(file), schema)
}

/// As [`load_csv`], from any reader.
pub fn load_csv_reader<R: Read>(
    reader: R,
    schema: &Schema,
) -> Result<Trajectory, TimeseriesError> {
    let reader = BufReader::new(reader);
    let mut lines = reader.lines();

    let header = match lines.next() {
        Some(line) => line?,
        None => {
            return Err(TimeseriesError::Header {
                expected: schema.header(),
                got: String::new(),
            })
        }
    };
    if header.trim_end() != schema.header() {
        return Err(TimeseriesError::Header {
            expected: schema.header(),
            got: header,
        });
    }

    let col_names: Vec<String> = schema.header().split(',').map(str::to_string).collect();
    let ncols = col_names.len();
    let (nw, nu) = (schema.w.len(), schema.u.len());

    let mut rows: Vec<(i64, Vec<f64>)> = Vec::new();
    for (idx, line) in lines.enumerate() {
        let row = idx + 1; // 1-based data row index
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != ncols {
            return Err(TimeseriesError::Csv {
                row,
                col: String::new(),
                reason: format!("expected {ncols} columns, got {}", cells.len()),
            });
        }
        let t: i64 = cells[0].trim().parse().map_err(|_| TimeseriesError::Csv {
            row,
            col: "t".to_string(),
            reason: format!("`{}` is not an integer timestamp", cells[0]),
        })?;
        let mut vals = Vec::with_capacity(ncols - 1);
        for (c, cell) in cells.iter().enumerate().skip(1) {
            let v: f64 = cell.trim().parse().map_err(|_| TimeseriesError::Csv {
                row,
                col: col_names[c].clone(),
                reason: format!("`{cell}` is not a number"),
            })?;
            if !v.is_finite() {
                return Err(TimeseriesError::Csv {
                    row,
                    col: col_names[c].clone(),
                    reason: format!("`{cell}` is not finite"),
                });
            }
            vals.push(v);
        }
        rows.push((t, vals));
    }

    if rows.len() < 2 {
        return Err(TimeseriesError::TooShort {
            need: 2,
            have: rows.len(),
        });
    }

    let dt = rows[1].0 - rows[0].0;
    if dt <= 0 {
        return Err(TimeseriesError::IrregularSpacing {
            row: 2,
            expected: rows[0].0 + 1,
            got: rows[1].0,
        });
    }
    for (i, pair) in rows.windows(2).enumerate() {
        let expected = pair[0].0 + dt;
        if pair[1].0 != expected {
            return Err(TimeseriesError::IrregularSpacing {
                row: i + 2,
                expected,
                got: pair[1].0,
            });
        }
    }

    let mut traj = Trajectory::empty(dt, schema.clone());
    for (t, vals) in rows {
        let w = vals[..nw].to_vec();
        let u = vals[nw..nw + nu].to_vec();
        let y = vals[nw + nu..].to_vec();
        traj.push(Sample::new(t, u, w, y))?;
    }
    Ok(traj)
}

/// Writes a trajectory in canonical form (header + shortest-round-trip floats).
pub fn write_csv(traj: &Trajectory, path: impl AsRef<Path>) -> Result<(), TimeseriesError> {
    let file = File::create(path)?;
    write_csv_writer(traj, BufWriter::new(file))
}

/// As [`write_csv`], to any writer.
pub fn write_csv_writer<W: Write>(traj: &Trajectory, mut w: W) -> Result<(), TimeseriesError> {
    writeln!(w, "{}", traj.schema().header())?;
    for s in traj.samples() {
        write!(w, "{}", s.t)?;
        for v in s.w.iter().chain(s.u.iter()).chain(s.y.iter()) {
            write!(w, ",{v}")?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schema() -> Schema {
        Schema::new(&["t_out", "solar"], &["valve"], &["temp"])
    }

    #[test]
    fn well_formed_file_loads_with_inferred_dt() {
        let data = "t,t_out,solar,valve,temp\n0,5.5,0,0.25,21\n600,5.25,0,0.5,20.875\n";
        let traj = load_csv_reader(data.as_bytes(), &schema()).unwrap();
        assert_eq!(traj.len(), 2);
        assert_eq!(traj.dt(), 600);
        assert_eq!(traj.get(1).unwrap().u[0], 0.5);
        assert_eq!(traj.get(0).unwrap().w, vec![5.5, 0.0]);
    }

    #[test]
    fn nan_cell_is_rejected_naming_row_and_column() {
        let data = "t,t_out,solar,valve,temp\n0,5.5,0,0.25,21\n600,NaN,0,0.5,20.9\n";
        let err = load_csv_reader(data.as_bytes(), &schema()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("row 2"), "got: {msg}");
        assert!(msg.contains("t_out"), "got: {msg}");
    }

    #[test]
    fn irregular_spacing_is_rejected() {
        let data =
            "t,t_out,solar,valve,temp\n0,5,0,0,21\n900,5,0,0,21\n1200,5,0,0,21\n";
        let err = load_csv_reader(data.as_bytes(), &schema()).unwrap_err();
        assert!(err.to_string().contains("irregular spacing"), "got: {err}");
    }

    #[test]
    fn missing_column_is_rejected() {
        let data = "t,t_out,valve,temp\n0,5,0,21\n600,5,0,21\n";
        assert!(matches!(
            load_csv_reader(data.as_bytes(), &schema()),
            Err(TimeseriesError::Header { .. })
        ));
    }

    #[test]
    fn canonical_round_trip_is_bit_exact() {
        let data = "t,t_out,solar,valve,temp\n0,5.5,0,0.25,21\n600,-3.25,120.5,0.5,20.875\n1200,0.1,0,1,19.333333333333332\n";
        let traj = load_csv_reader(data.as_bytes(), &schema()).unwrap();
        let mut out = Vec::new();
        write_csv_writer(&traj, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), data);
    }
}
