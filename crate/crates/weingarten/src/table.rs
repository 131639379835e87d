//! Weingarten tables as JSON.
//!
//! A table is an array of rows
//! `{"group": "U", "N": "10/1", "level": 2, "partition": "1,1", "value": "1/99"}`
//! ordered by level and then by partition, largest part first. The empty
//! partition is written `"∅"`.

use serde::{Deserialize, Serialize};
use weingarten_core::exact::{Group, WgTable};
use weingarten_core::rational::{parse_rational, to_pq_string};
use weingarten_core::Partition;

use crate::FormatError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub group: String,
    #[serde(rename = "N")]
    pub n_eval: String,
    pub level: usize,
    pub partition: String,
    pub value: String,
    /// Sign marker for values known only up to sign.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<String>,
}

/// Rows of `table`, optionally restricted to a single class.
pub fn table_rows(table: &WgTable, only: Option<&Partition>) -> Vec<TableRow> {
    table
        .rows()
        .into_iter()
        .filter(|(lambda, _)| only.is_none_or(|o| o == *lambda))
        .map(|(lambda, value)| TableRow {
            group: table.group.code().to_string(),
            n_eval: to_pq_string(&table.n_eval),
            level: lambda.size(),
            partition: lambda.to_text(),
            value: to_pq_string(value),
            sign: None,
        })
        .collect()
}

/// Pretty-printed JSON array, newline-terminated.
pub fn table_to_json(table: &WgTable) -> String {
    rows_to_json(&table_rows(table, None))
}

pub fn rows_to_json(rows: &[TableRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

/// Parses a table written by [`table_to_json`]. All rows must share the
/// group and `N`; levels must match the partitions.
pub fn table_from_json(text: &str) -> Result<WgTable, FormatError> {
    let rows: Vec<TableRow> = serde_json::from_str(text)?;
    let first = rows
        .first()
        .ok_or_else(|| FormatError::Invalid("empty table".into()))?;
    let group = Group::from_code(&first.group)
        .ok_or_else(|| FormatError::Invalid(format!("unknown group {:?}", first.group)))?;
    let n_eval = parse_rational(&first.n_eval)?;
    let mut table = WgTable::new(group, n_eval.clone(), 0);
    for row in &rows {
        if row.group != first.group {
            return Err(FormatError::Invalid(format!("mixed groups {} and {}", first.group, row.group)));
        }
        if parse_rational(&row.n_eval)? != n_eval {
            return Err(FormatError::Invalid(format!("mixed N {} and {}", first.n_eval, row.n_eval)));
        }
        let lambda: Partition = row.partition.parse()?;
        if lambda.size() != row.level {
            return Err(FormatError::Invalid(format!(
                "partition {} is not at level {}",
                row.partition, row.level
            )));
        }
        table.insert(lambda, parse_rational(&row.value)?);
    }
    Ok(table)
}
