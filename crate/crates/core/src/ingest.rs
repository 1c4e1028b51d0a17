//! Reading delimited text into a [`RankedSeries`].
//!
//! Two layouts are accepted:
//!
//! * raw values: `value` or `label,value`, in any order; values are ranked
//!   here by a stable descending sort.
//! * pre-ranked: `rank,value` or `rank,label,value`; ranks must be a
//!   permutation of `1..=n`.
//!
//! A header row is optional. The first row is taken as a header when its value
//! cell does not parse as a number.

use crate::error::{Error, Result};
use crate::series::{Entry, RankedSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IngestMode {
    #[default]
    RawValues,
    PreRanked,
}

/// What to do with zero or negative values, which have no logarithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZeroPolicy {
    #[default]
    Reject,
    DropWithWarning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IngestOptions {
    pub mode: IngestMode,
    pub zero_policy: ZeroPolicy,
    delimiter: u8,
}

impl Default for IngestOptions {
    fn default() -> Self {
        Self {
            mode: IngestMode::RawValues,
            zero_policy: ZeroPolicy::Reject,
            delimiter: b',',
        }
    }
}

impl IngestOptions {
    pub fn new(mode: IngestMode, zero_policy: ZeroPolicy, delimiter: char) -> Result<Self> {
        Ok(Self {
            mode,
            zero_policy,
            delimiter: Self::check_delimiter(delimiter)?,
        })
    }

    pub fn delimiter(&self) -> char {
        self.delimiter as char
    }

    pub fn with_delimiter(mut self, delimiter: char) -> Result<Self> {
        self.delimiter = Self::check_delimiter(delimiter)?;
        Ok(self)
    }

    fn check_delimiter(c: char) -> Result<u8> {
        if c == '\t' || (c.is_ascii_graphic() || c == ' ') && c != '"' {
            Ok(c as u8)
        } else {
            Err(Error::InvalidParams(format!("unsupported delimiter {c:?}")))
        }
    }
}

/// A parsed series plus one message per dropped row.
#[derive(Debug, Clone, PartialEq)]
pub struct Ingested {
    pub series: RankedSeries,
    pub warnings: Vec<String>,
}

struct Row {
    line: u64,
    rank: Option<usize>,
    label: Option<String>,
    value: f64,
}

/// Parses delimited text according to `options`.
pub fn parse_csv(text: &str, options: &IngestOptions) -> Result<Ingested> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .delimiter(options.delimiter)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let mut first = true;
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map(|p| p.line()).unwrap_or(0),
            message: e.to_string(),
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let is_first = std::mem::replace(&mut first, false);

        let fields: Vec<&str> = record.iter().collect();
        let (rank_cell, label, value_cell) = match (options.mode, fields.len()) {
            (IngestMode::RawValues, 1) => (None, None, fields[0]),
            (IngestMode::RawValues, 2) => (None, Some(fields[0]), fields[1]),
            (IngestMode::PreRanked, 2) => (Some(fields[0]), None, fields[1]),
            (IngestMode::PreRanked, 3) => (Some(fields[0]), Some(fields[1]), fields[2]),
            (mode, got) => {
                let expected = match mode {
                    IngestMode::RawValues => "1 or 2",
                    IngestMode::PreRanked => "2 or 3",
                };
                return Err(Error::Parse {
                    line,
                    message: format!("expected {expected} columns, found {got}"),
                });
            }
        };

        let value = match value_cell.parse::<f64>() {
            Ok(v) => v,
            Err(_) if is_first => continue,
            Err(_) => {
                return Err(Error::Parse {
                    line,
                    message: format!("value `{value_cell}` is not a number"),
                })
            }
        };
        if !value.is_finite() {
            return Err(Error::Parse {
                line,
                message: format!("value `{value_cell}` is not finite"),
            });
        }
        let rank = match rank_cell {
            None => None,
            Some(cell) => Some(cell.parse::<usize>().map_err(|_| Error::Parse {
                line,
                message: format!("rank `{cell}` is not a positive integer"),
            })?),
        };
        rows.push(Row {
            line,
            rank,
            label: label.map(str::to_owned),
            value,
        });
    }

    if options.mode == IngestMode::PreRanked {
        check_rank_permutation(&rows)?;
        rows.sort_by_key(|r| r.rank);
    }

    match options.zero_policy {
        ZeroPolicy::Reject => {
            if let Some(row) = rows.iter().find(|r| r.value <= 0.0) {
                return Err(Error::Validation {
                    line: Some(row.line),
                    message: format!("non-positive value {} has no logarithm", row.value),
                });
            }
        }
        ZeroPolicy::DropWithWarning => rows.retain(|row| {
            if row.value > 0.0 {
                return true;
            }
            warnings.push(format!(
                "line {}: dropped non-positive value {}",
                row.line, row.value
            ));
            false
        }),
    }
    build(rows, options.mode, warnings)
}

fn build(rows: Vec<Row>, mode: IngestMode, warnings: Vec<String>) -> Result<Ingested> {
    if rows.is_empty() {
        return Err(Error::EmptySeries);
    }
    let series = match mode {
        IngestMode::RawValues => {
            let (values, labels): (Vec<f64>, Vec<Option<String>>) =
                rows.into_iter().map(|r| (r.value, r.label)).unzip();
            rank_labelled(values, labels)?
        }
        IngestMode::PreRanked => {
            if let Some(w) = rows.windows(2).find(|w| w[1].value > w[0].value) {
                return Err(Error::Validation {
                    line: Some(w[1].line),
                    message: format!(
                        "values must be non-increasing in rank: rank {} has {} after {}",
                        w[1].rank.unwrap_or(0),
                        w[1].value,
                        w[0].value
                    ),
                });
            }
            let entries = rows
                .into_iter()
                .enumerate()
                .map(|(i, r)| Entry {
                    rank: i + 1,
                    value: r.value,
                    label: r.label,
                })
                .collect();
            RankedSeries::from_entries(entries)?
        }
    };
    Ok(Ingested { series, warnings })
}

fn check_rank_permutation(rows: &[Row]) -> Result<()> {
    let n = rows.len();
    let mut seen: Vec<Option<u64>> = vec![None; n];
    for row in rows {
        let rank = row.rank.unwrap_or(0);
        if rank == 0 || rank > n {
            return Err(Error::Validation {
                line: Some(row.line),
                message: format!("rank {rank} outside 1..={n}"),
            });
        }
        if let Some(prev) = seen[rank - 1] {
            return Err(Error::Validation {
                line: Some(row.line),
                message: format!("duplicate rank {rank} (first seen on line {prev})"),
            });
        }
        seen[rank - 1] = Some(row.line);
    }
    Ok(())
}

/// Ranks raw values by a stable descending sort: ties keep input order and
/// receive consecutive ranks.
pub fn rank_raw(values: &[f64], labels: Option<&[String]>) -> Result<RankedSeries> {
    if let Some(labels) = labels {
        if labels.len() != values.len() {
            return Err(Error::validation(format!(
                "{} labels for {} values",
                labels.len(),
                values.len()
            )));
        }
    }
    let labels = match labels {
        Some(l) => l.iter().cloned().map(Some).collect(),
        None => vec![None; values.len()],
    };
    rank_labelled(values.to_vec(), labels)
}

fn rank_labelled(values: Vec<f64>, labels: Vec<Option<String>>) -> Result<RankedSeries> {
    if values.is_empty() {
        return Err(Error::EmptySeries);
    }
    if let Some((i, v)) = values
        .iter()
        .enumerate()
        .find(|(_, v)| !(v.is_finite() && **v > 0.0))
    {
        return Err(Error::validation(format!(
            "value #{} must be finite and positive, got {v}",
            i + 1
        )));
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    // `sort_by` is stable, so equal values keep their input order.
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let mut labels = labels;
    let entries = order
        .into_iter()
        .enumerate()
        .map(|(pos, i)| Entry {
            rank: pos + 1,
            value: values[i],
            label: labels[i].take(),
        })
        .collect();
    RankedSeries::from_entries(entries)
}
