//! Machine-readable JSON report.

use rankfit::{ComparisonReport, FitReport, RankedSeries};
use serde::Serialize;

/// 64-bit FNV-1a of the raw input bytes.
pub fn digest(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    bytes
        .iter()
        .fold(OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(PRIME))
}

#[derive(Debug, Serialize)]
pub struct SeriesSummary {
    pub n: usize,
    pub min: f64,
    pub max: f64,
}

pub enum Payload<'a> {
    Fit(&'a FitReport),
    Comparison(&'a ComparisonReport),
}

#[derive(Debug, Serialize)]
pub struct ReportDocument<'a> {
    pub tool_version: &'static str,
    pub input_digest: String,
    pub series: SeriesSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<&'a FitReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<&'a ComparisonReport>,
    pub warnings: Vec<String>,
}

impl<'a> ReportDocument<'a> {
    pub fn new(
        digest: u64,
        series: &RankedSeries,
        payload: Payload<'a>,
        warnings: Vec<String>,
    ) -> Self {
        let (fit, comparison) = match payload {
            Payload::Fit(f) => (Some(f), None),
            Payload::Comparison(c) => (None, Some(c)),
        };
        Self {
            tool_version: env!("CARGO_PKG_VERSION"),
            input_digest: format!("{digest:016x}"),
            series: SeriesSummary {
                n: series.len(),
                min: series.min(),
                max: series.max(),
            },
            fit,
            comparison,
            warnings,
        }
    }

    /// Pretty JSON with keys sorted at every level, LF-terminated.
    pub fn to_json(&self) -> String {
        // serde_json's default map is a BTreeMap, so round-tripping through
        // `Value` sorts every object's keys.
        let value = serde_json::to_value(self).expect("report is serializable");
        let mut out = serde_json::to_string_pretty(&value).expect("value is serializable");
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv1a_reference_vectors() {
        assert_eq!(digest(b""), 0xcbf2_9ce4_8422_2325);
        assert_eq!(digest(b"a"), 0xaf63_dc4c_8601_ec8c);
        assert_eq!(digest(b"foobar"), 0x8594_4171_f739_67e8);
    }

    #[test]
    fn keys_are_sorted() {
        let s = RankedSeries::from_sorted_values(vec![4.0, 3.0, 2.0, 1.0]).unwrap();
        let fit = rankfit::fit_zipf(&s).unwrap();
        let json = ReportDocument::new(7, &s, Payload::Fit(&fit), vec![]).to_json();
        let top: Vec<usize> = [
            "\"fit\"",
            "\"input_digest\"",
            "\"series\"",
            "\"tool_version\"",
            "\"warnings\"",
        ]
        .iter()
        .map(|k| json.find(k).unwrap())
        .collect();
        assert!(top.windows(2).all(|w| w[0] < w[1]), "{json}");
        assert!(json.contains("\"input_digest\": \"0000000000000007\""));
        assert!(json.ends_with("}\n"));
    }
}
