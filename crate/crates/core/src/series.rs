use serde::Serialize;

use crate::error::{Error, Result};

/// One ranked observation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub rank: usize,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// Positive values indexed by rank `1..=n`, non-increasing in rank.
///
/// Every constructor checks the invariants, so a `RankedSeries` in hand is
/// always safe to take logarithms of.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedSeries {
    entries: Vec<Entry>,
}

impl RankedSeries {
    /// Builds a series from values already in rank order (rank 1 first).
    pub fn from_sorted_values(values: Vec<f64>) -> Result<Self> {
        let entries = values
            .into_iter()
            .enumerate()
            .map(|(i, value)| Entry {
                rank: i + 1,
                value,
                label: None,
            })
            .collect();
        Self::from_entries(entries)
    }

    /// Builds a series from entries, validating ranks, positivity and order.
    pub fn from_entries(entries: Vec<Entry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySeries);
        }
        for (i, e) in entries.iter().enumerate() {
            if e.rank != i + 1 {
                return Err(Error::validation(format!(
                    "expected rank {} at position {}, found {}",
                    i + 1,
                    i,
                    e.rank
                )));
            }
            if !e.value.is_finite() || e.value <= 0.0 {
                return Err(Error::validation(format!(
                    "value at rank {} must be finite and positive, got {}",
                    e.rank, e.value
                )));
            }
        }
        if let Some(w) = entries.windows(2).find(|w| w[1].value > w[0].value) {
            return Err(Error::validation(format!(
                "values must be non-increasing in rank: rank {} has {} but rank {} has {}",
                w[0].rank, w[0].value, w[1].rank, w[1].value
            )));
        }
        Ok(Self { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    /// Natural logarithms of the values, in rank order.
    pub fn log_values(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.value.ln()).collect()
    }

    /// Largest value (rank 1).
    pub fn max(&self) -> f64 {
        self.entries[0].value
    }

    /// Smallest value (rank n).
    pub fn min(&self) -> f64 {
        self.entries[self.entries.len() - 1].value
    }

    /// Copy with every value multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| Entry {
                value: e.value * c,
                ..e.clone()
            })
            .collect();
        Self::from_entries(entries)
    }

    /// First `m` ranks (or all of them when `m >= n`).
    pub fn head(&self, m: usize) -> Result<Self> {
        Self::from_entries(self.entries.iter().take(m).cloned().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_increasing_values() {
        let err = RankedSeries::from_sorted_values(vec![1.0, 2.0]).unwrap_err();
        assert!(matches!(err, Error::Validation { .. }));
    }

    #[test]
    fn rejects_non_positive_and_nan() {
        assert!(RankedSeries::from_sorted_values(vec![1.0, 0.0]).is_err());
        assert!(RankedSeries::from_sorted_values(vec![f64::NAN]).is_err());
        assert!(RankedSeries::from_sorted_values(vec![f64::INFINITY, 1.0]).is_err());
    }

    #[test]
    fn rejects_rank_gap() {
        let entries = vec![
            Entry {
                rank: 1,
                value: 2.0,
                label: None,
            },
            Entry {
                rank: 3,
                value: 1.0,
                label: None,
            },
        ];
        assert!(RankedSeries::from_entries(entries).is_err());
    }

    #[test]
    fn ties_are_allowed() {
        let s = RankedSeries::from_sorted_values(vec![2.0, 2.0, 0.5]).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.max(), 2.0);
        assert_eq!(s.min(), 0.5);
    }

    #[test]
    fn empty_is_an_error() {
        assert!(matches!(
            RankedSeries::from_sorted_values(vec![]),
            Err(Error::EmptySeries)
        ));
    }
}
