//! Process trajectories as JSON lines, one object per time step:
//! `{"t":0,"n_t":3,"state":"(1 2 3)","L_t":3,"C_t":3,"pivotal":true}`.

use std::fmt::Display;

use serde::{Deserialize, Serialize};
use weingarten_core::process::ProcessTrace;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceLine {
    pub t: usize,
    pub n_t: usize,
    pub state: String,
    #[serde(rename = "L_t")]
    pub longest: usize,
    #[serde(rename = "C_t")]
    pub pivotal_cycle: usize,
    pub pivotal: bool,
}

pub fn trace_lines<S: Display>(trace: &ProcessTrace<S>) -> Vec<TraceLine> {
    (0..trace.len())
        .map(|t| TraceLine {
            t,
            n_t: trace.pivots[t],
            state: trace.states[t].to_string(),
            longest: trace.longest[t],
            pivotal_cycle: trace.pivotal_cycle[t],
            pivotal: trace.pivotal[t],
        })
        .collect()
}

pub fn trace_to_jsonl<S: Display>(trace: &ProcessTrace<S>) -> String {
    let mut out = String::new();
    for line in trace_lines(trace) {
        out.push_str(&serde_json::to_string(&line).expect("trace line serializes"));
        out.push('\n');
    }
    out
}

pub fn trace_from_jsonl(text: &str) -> Result<Vec<TraceLine>, serde_json::Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use weingarten_core::process::{run_wp_unitary, SplitSampler};
    use weingarten_core::rng::stream_rng;
    use weingarten_core::Permutation;

    #[test]
    fn identity_trace() {
        let t = run_wp_unitary(&Permutation::identity(2), &mut SplitSampler::new(), &mut stream_rng(0, 0));
        let text = trace_to_jsonl(&t);
        assert_eq!(
            text,
            "{\"t\":0,\"n_t\":2,\"state\":\"()\",\"L_t\":1,\"C_t\":1,\"pivotal\":true}\n\
             {\"t\":1,\"n_t\":1,\"state\":\"()\",\"L_t\":1,\"C_t\":1,\"pivotal\":true}\n\
             {\"t\":2,\"n_t\":0,\"state\":\"∅\",\"L_t\":0,\"C_t\":0,\"pivotal\":true}\n"
        );
        assert_eq!(trace_from_jsonl(&text).unwrap(), trace_lines(&t));
    }
}
