//! Monte Carlo reports as JSON.

use serde::{Deserialize, Serialize};
use weingarten_core::process::EstimatorReport;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimatorJson {
    pub stat: String,
    pub class: String,
    pub seed: u64,
    pub count: u64,
    pub estimate: f64,
    #[serde(rename = "SE")]
    pub standard_error: f64,
    pub hypotheses_met: bool,
}

impl EstimatorJson {
    pub fn new(stat: &str, class: String, report: &EstimatorReport) -> Self {
        Self {
            stat: stat.to_string(),
            class,
            seed: report.seed,
            count: report.count,
            estimate: report.estimate,
            standard_error: report.standard_error,
            hypotheses_met: report.hypotheses_met,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("report serializes");
        s.push('\n');
        s
    }
}
