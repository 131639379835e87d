//! Bound-check reports.
//!
//! Both formats carry the same columns in the same order:
//! `claim, n, N, class, lhs, rhs, satisfied, hypotheses_met, slack, detail`.
//! Exact values are written `"p/q"`, floats in shortest round-trip
//! exponent form (`"1.25e3"`), a vacuous bound as `"inf"`. A float never
//! contains `/`, so reading a report back recovers every row exactly.

use serde::{Deserialize, Serialize};
use weingarten_core::bounds::{BoundCheckResult, BoundValue};
use weingarten_core::rational::{parse_rational, to_pq_string};

use crate::FormatError;

pub const COLUMNS: [&str; 10] = [
    "claim",
    "n",
    "N",
    "class",
    "lhs",
    "rhs",
    "satisfied",
    "hypotheses_met",
    "slack",
    "detail",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct Row {
    claim: String,
    n: usize,
    #[serde(rename = "N")]
    n_eval: String,
    class: String,
    lhs: String,
    rhs: String,
    satisfied: bool,
    hypotheses_met: bool,
    slack: String,
    detail: String,
}

pub fn value_to_text(v: &BoundValue) -> String {
    match v {
        BoundValue::Exact(r) => to_pq_string(r),
        BoundValue::Float(f) => format!("{f:e}"),
        BoundValue::Infinite => "inf".to_string(),
    }
}

pub fn value_from_text(text: &str) -> Result<BoundValue, FormatError> {
    if text == "inf" {
        return Ok(BoundValue::Infinite);
    }
    if text.contains('/') {
        return Ok(BoundValue::Exact(parse_rational(text)?));
    }
    text.parse::<f64>()
        .map(BoundValue::Float)
        .map_err(|_| FormatError::Invalid(format!("not a bound value: {text:?}")))
}

fn to_row(r: &BoundCheckResult) -> Row {
    Row {
        claim: r.claim.clone(),
        n: r.n,
        n_eval: r.n_eval.as_ref().map(to_pq_string).unwrap_or_default(),
        class: r.class.clone(),
        lhs: value_to_text(&r.lhs),
        rhs: value_to_text(&r.rhs),
        satisfied: r.satisfied,
        hypotheses_met: r.hypotheses_met,
        slack: r.slack.map(|s| format!("{s:e}")).unwrap_or_default(),
        detail: r.detail.clone(),
    }
}

fn from_row(row: Row) -> Result<BoundCheckResult, FormatError> {
    let n_eval = if row.n_eval.is_empty() {
        None
    } else {
        Some(parse_rational(&row.n_eval)?)
    };
    let slack = if row.slack.is_empty() {
        None
    } else {
        Some(
            row.slack
                .parse::<f64>()
                .map_err(|_| FormatError::Invalid(format!("bad slack {:?}", row.slack)))?,
        )
    };
    Ok(BoundCheckResult {
        claim: row.claim,
        n: row.n,
        n_eval,
        class: row.class,
        lhs: value_from_text(&row.lhs)?,
        rhs: value_from_text(&row.rhs)?,
        satisfied: row.satisfied,
        hypotheses_met: row.hypotheses_met,
        slack,
        detail: row.detail,
    })
}

pub fn report_to_csv(results: &[BoundCheckResult]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS).expect("in memory");
    for r in results {
        let row = to_row(r);
        w.write_record([
            row.claim,
            row.n.to_string(),
            row.n_eval,
            row.class,
            row.lhs,
            row.rhs,
            row.satisfied.to_string(),
            row.hypotheses_met.to_string(),
            row.slack,
            row.detail,
        ])
        .expect("in memory");
    }
    String::from_utf8(w.into_inner().expect("in memory")).expect("utf-8")
}

pub fn report_from_csv(text: &str) -> Result<Vec<BoundCheckResult>, FormatError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers()?.clone();
    if headers.iter().ne(COLUMNS.iter().copied()) {
        return Err(FormatError::Invalid(format!("unexpected header {headers:?}")));
    }
    r.deserialize::<Row>()
        .map(|row| from_row(row.map_err(FormatError::from)?))
        .collect()
}

pub fn report_to_json(results: &[BoundCheckResult]) -> String {
    let rows: Vec<Row> = results.iter().map(to_row).collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
    s.push('\n');
    s
}

pub fn report_from_json(text: &str) -> Result<Vec<BoundCheckResult>, FormatError> {
    let rows: Vec<Row> = serde_json::from_str(text)?;
    rows.into_iter().map(from_row).collect()
}

pub fn emit_report(results: &[BoundCheckResult], format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => report_to_csv(results),
        ReportFormat::Json => report_to_json(results),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use weingarten_core::rational::ratio;

    fn mixed() -> Vec<BoundCheckResult> {
        vec![
            BoundCheckResult::new(
                "a",
                3,
                Some(&ratio(100_000, 1)),
                "2,1".into(),
                BoundValue::Exact(ratio(-7, 3)),
                BoundValue::Float(0.1 + 0.2),
                true,
                "k=v;x=\"q\"".into(),
            ),
            BoundCheckResult::new(
                "b",
                1,
                None,
                String::new(),
                BoundValue::Float(1e-300),
                BoundValue::Infinite,
                false,
                String::new(),
            ),
        ]
    }

    #[test]
    fn empty_report_is_header_only() {
        assert_eq!(report_to_csv(&[]), "claim,n,N,class,lhs,rhs,satisfied,hypotheses_met,slack,detail\n");
        assert!(report_from_csv(&report_to_csv(&[])).unwrap().is_empty());
        assert_eq!(report_to_json(&[]), "[]\n");
    }

    #[test]
    fn mixed_rows_round_trip() {
        let rows = mixed();
        let csv = report_to_csv(&rows);
        assert_eq!(report_from_csv(&csv).unwrap(), rows);
        assert_eq!(report_to_csv(&report_from_csv(&csv).unwrap()), csv);
        let json = report_to_json(&rows);
        assert_eq!(report_from_json(&json).unwrap(), rows);
        assert!(csv.contains("-7/3"));
        assert!(csv.contains("\"2,1\""));
    }

    #[test]
    fn value_text() {
        assert_eq!(value_to_text(&BoundValue::Exact(ratio(2, 1))), "2/1");
        assert_eq!(value_to_text(&BoundValue::Float(1250.0)), "1.25e3");
        assert!(matches!(value_from_text("1.25e3").unwrap(), BoundValue::Float(f) if f == 1250.0));
        assert!(value_from_text("abc").is_err());
    }
}
