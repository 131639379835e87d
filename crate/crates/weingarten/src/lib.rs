//! File formats and the command-line frontend for [`weingarten_core`].
//!
//! * [`table`]: Weingarten tables as JSON, `{group, N, level, partition,
//!   value}` rows with exact `"p/q"` strings; parsing gives back the same
//!   table and re-emitting gives the same bytes.
//! * [`trace`]: process trajectories as JSON lines.
//! * [`estimator`]: Monte Carlo reports as JSON.
//! * [`paths`]: path counts as CSV.
//! * [`report`]: bound-check reports as CSV or JSON.
//! * [`cli`]: the `eval`, `paths`, `sample` and `verify` subcommands.

pub mod cli;
pub mod estimator;
pub mod paths;
pub mod report;
pub mod table;
pub mod trace;

use thiserror::Error;
use weingarten_core::ParseError;

/// Failure to read one of the formats back.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Invalid(String),
}
