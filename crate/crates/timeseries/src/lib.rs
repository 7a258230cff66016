//! Uniformly sampled input/disturbance/output time series shared by the
//! simulators, model fitters and controllers.
//!
//! A [`Trajectory`] is an ordered run of [`Sample`]s at a fixed sampling
//! period `dt`. Timestamps are integer seconds since scenario start;
//! calendar rendering is left to callers.

mod csv;

pub use csv::{load_csv, load_csv_reader, write_csv, write_csv_writer};

use thiserror::Error;

/// Errors raised by trajectory construction and CSV ingestion.
#[derive(Debug, Error)]
pub enum TimeseriesError {
    #[error("timestamp gap: expected t={expected}, got t={got}")]
    TimestampGap { expected: i64, got: i64 },
    #[error("dimension mismatch in {group}: expected {expected}, got {got}")]
    DimensionMismatch {
        group: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("non-finite value in {group} at t={t}")]
    NonFinite { group: &'static str, t: i64 },
    #[error("window out of range: start {start} + len {len} > {length}")]
    WindowOutOfRange {
        start: usize,
        len: usize,
        length: usize,
    },
    #[error("csv row {row}, column `{col}`: {reason}")]
    Csv {
        row: usize,
        col: String,
        reason: String,
    },
    #[error("csv header mismatch: expected `{expected}`, got `{got}`")]
    Header { expected: String, got: String },
    #[error("irregular spacing at row {row}: expected t={expected}, got t={got}")]
    IrregularSpacing { row: usize, expected: i64, got: i64 },
    #[error("trajectory too short: need at least {need} samples, have {have}")]
    TooShort { need: usize, have: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Channel names per signal group, in CSV column order (w, then u, then y).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    pub w: Vec<String>,
    pub u: Vec<String>,
    pub y: Vec<String>,
}

impl Schema {
    pub fn new<S: Into<String> + Clone>(w: &[S], u: &[S], y: &[S]) -> Self {
        Self {
            w: w.iter().cloned().map(Into::into).collect(),
            u: u.iter().cloned().map(Into::into).collect(),
            y: y.iter().cloned().map(Into::into).collect(),
        }
    }

    /// Full CSV header: `t`, then w-channels, u-channels, y-channels.
    pub fn header(&self) -> String {
        let mut cols = vec!["t".to_string()];
        cols.extend(self.w.iter().cloned());
        cols.extend(self.u.iter().cloned());
        cols.extend(self.y.iter().cloned());
        cols.join(",")
    }
}

/// One measurement row: applied inputs `u`, disturbances `w` and outputs `y`
/// at time `t` (seconds since scenario start).
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub t: i64,
    pub u: Vec<f64>,
    pub w: Vec<f64>,
    pub y: Vec<f64>,
}

impl Sample {
    pub fn new(t: i64, u: Vec<f64>, w: Vec<f64>, y: Vec<f64>) -> Self {
        Self { t, u, w, y }
    }

    fn check_finite(&self) -> Result<(), TimeseriesError> {
        for (group, v) in [("u", &self.u), ("w", &self.w), ("y", &self.y)] {
            if v.iter().any(|x| !x.is_finite()) {
                return Err(TimeseriesError::NonFinite { group, t: self.t });
            }
        }
        Ok(())
    }
}

/// Uniformly sampled trajectory. Immutable once built except for
/// single-writer [`Trajectory::push`].
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    dt: i64,
    schema: Schema,
    samples: Vec<Sample>,
}

impl Trajectory {
    /// Empty trajectory with the given sampling period (seconds).
    pub fn empty(dt: i64, schema: Schema) -> Self {
        assert!(dt > 0, "sampling period must be positive");
        Self {
            dt,
            schema,
            samples: Vec::new(),
        }
    }

    pub fn dt(&self) -> i64 {
        self.dt
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn get(&self, i: usize) -> Option<&Sample> {
        self.samples.get(i)
    }

    pub fn last(&self) -> Option<&Sample> {
        self.samples.last()
    }

    /// Appends a sample. The timestamp must continue the grid: first sample
    /// may sit anywhere, every later one at `last.t + dt`.
    pub fn push(&mut self, s: Sample) -> Result<(), TimeseriesError> {
        s.check_finite()?;
        self.check_dims(&s)?;
        if let Some(last) = self.samples.last() {
            let expected = last.t + self.dt;
            if s.t != expected {
                return Err(TimeseriesError::TimestampGap {
                    expected,
                    got: s.t,
                });
            }
        }
        self.samples.push(s);
        Ok(())
    }

    fn check_dims(&self, s: &Sample) -> Result<(), TimeseriesError> {
        let checks = [
            ("u", self.schema.u.len(), s.u.len()),
            ("w", self.schema.w.len(), s.w.len()),
            ("y", self.schema.y.len(), s.y.len()),
        ];
        for (group, expected, got) in checks {
            if expected != got {
                return Err(TimeseriesError::DimensionMismatch {
                    group,
                    expected,
                    got,
                });
            }
        }
        Ok(())
    }

    /// Contiguous copy of `len` samples starting at `start`.
    pub fn window(&self, start: usize, len: usize) -> Result<Trajectory, TimeseriesError> {
        if start + len > self.samples.len() {
            return Err(TimeseriesError::WindowOutOfRange {
                start,
                len,
                length: self.samples.len(),
            });
        }
        Ok(Trajectory {
            dt: self.dt,
            schema: self.schema.clone(),
            samples: self.samples[start..start + len].to_vec(),
        })
    }

    /// Column of one output channel over the whole trajectory.
    pub fn y_channel(&self, ch: usize) -> Vec<f64> {
        self.samples.iter().map(|s| s.y[ch]).collect()
    }

    /// Column of one input channel over the whole trajectory.
    pub fn u_channel(&self, ch: usize) -> Vec<f64> {
        self.samples.iter().map(|s| s.u[ch]).collect()
    }

    /// Column of one disturbance channel over the whole trajectory.
    pub fn w_channel(&self, ch: usize) -> Vec<f64> {
        self.samples.iter().map(|s| s.w[ch]).collect()
    }
}
