//! Experiments over computed runs: overlap and sensitivity curves, block-density
//! geometry comparisons, and PGM rendering.

mod curves;
mod density;
mod render;

pub use curves::{overlap_curve, overlap_at, sensitivity_curve, SensitivityOutcome};
pub use density::{
    density_grid, geometry_correlation, pearson, scale_similarity, scale_similarity_between, DensityGrid,
    Region, SimilarityParams,
};
pub use render::{render_pgm, write_pgm};

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::Path;

use crate::error::{Error, Result};
use crate::persist::write_atomic;

/// Environment variable capping worker threads inside one experiment.
pub const THREADS_ENV: &str = "PASSAGE_THREADS";

/// Worker threads allowed by `PASSAGE_THREADS`, defaulting to the machine's parallelism.
pub fn thread_cap() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// A level-indexed series of values.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSeries {
    pub label: String,
    pub points: Vec<(u32, f64)>,
    pub metadata: BTreeMap<String, String>,
}

impl CurveSeries {
    pub fn new(label: impl Into<String>) -> Self {
        CurveSeries {
            label: label.into(),
            points: Vec::new(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    /// Append a point; levels must increase and values must be finite.
    pub fn push(&mut self, level: u32, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::config(format!("non-finite value at level {level}")));
        }
        if let Some(&(last, _)) = self.points.last() {
            if level <= last {
                return Err(Error::config(format!("level {level} does not follow {last}")));
            }
        }
        self.points.push((level, value));
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn value_at(&self, level: u32) -> Option<f64> {
        self.points
            .binary_search_by_key(&level, |&(x, _)| x)
            .ok()
            .map(|i| self.points[i].1)
    }

    /// Mean of the values whose level lies in `range`.
    pub fn mean_over(&self, range: RangeInclusive<u32>) -> Option<f64> {
        let vals: Vec<f64> = self
            .points
            .iter()
            .filter(|(x, _)| range.contains(x))
            .map(|&(_, v)| v)
            .collect();
        (!vals.is_empty()).then(|| vals.iter().sum::<f64>() / vals.len() as f64)
    }

    /// Largest value among levels in `range`.
    pub fn max_over(&self, range: RangeInclusive<u32>) -> Option<f64> {
        self.points
            .iter()
            .filter(|(x, _)| range.contains(x))
            .map(|&(_, v)| v)
            .reduce(f64::max)
    }

    /// `x,value` with six decimals and LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,value\n");
        for (x, v) in &self.points {
            writeln!(out, "{x},{v:.6}").expect("writing to a String");
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_csv().as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_format() {
        let mut c = CurveSeries::new("t");
        c.push(0, 1.0).unwrap();
        c.push(3, 1.0 / 3.0).unwrap();
        assert_eq!(c.to_csv(), "x,value\n0,1.000000\n3,0.333333\n");
    }

    #[test]
    fn push_rejects_disorder_and_nan() {
        let mut c = CurveSeries::new("t");
        c.push(2, 0.5).unwrap();
        assert!(c.push(2, 0.5).is_err());
        assert!(c.push(1, 0.5).is_err());
        assert!(c.push(3, f64::NAN).is_err());
    }

    #[test]
    fn window_statistics() {
        let mut c = CurveSeries::new("t");
        for x in 0..10 {
            c.push(x, x as f64).unwrap();
        }
        assert_eq!(c.mean_over(2..=4), Some(3.0));
        assert_eq!(c.max_over(0..=9), Some(9.0));
        assert_eq!(c.mean_over(20..=30), None);
        assert_eq!(c.value_at(7), Some(7.0));
    }
}
