//! Time-stamped record of norms, energies and identity terms along a run.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Column-oriented series: strictly increasing times, one named column per
/// recorded quantity, all columns the same length.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct NormSeries {
    times: Vec<f64>,
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
}

impl NormSeries {
    pub fn new(names: Vec<String>) -> Self {
        let columns = names.iter().map(|_| Vec::new()).collect();
        NormSeries {
            times: Vec::new(),
            names,
            columns,
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn push_row(&mut self, t: f64, values: &[f64]) {
        assert_eq!(values.len(), self.columns.len(), "row arity mismatch");
        if let Some(&last) = self.times.last() {
            assert!(t > last, "times must be strictly increasing");
        }
        self.times.push(t);
        for (col, &v) in self.columns.iter_mut().zip(values) {
            col.push(v);
        }
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.columns[i].as_slice())
    }

    pub fn require_column(&self, name: &str) -> Result<&[f64]> {
        self.column(name).ok_or(Error::Domain {
            what: "series column not found",
        })
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[i]).collect()
    }

    /// Uniform sample spacing, or an error when spacing drifts.
    pub fn uniform_dt(&self) -> Result<f64> {
        if self.times.len() < 2 {
            return Err(Error::TooFewSamples {
                got: self.times.len(),
                need: 2,
            });
        }
        let dt = self.times[1] - self.times[0];
        for w in self.times.windows(2) {
            if ((w[1] - w[0]) - dt).abs() > 1e-9 * dt.max(1e-300) {
                return Err(Error::NonUniformSampling);
            }
        }
        Ok(dt)
    }
}
