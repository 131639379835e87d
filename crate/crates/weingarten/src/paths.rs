//! Path counts as CSV: `state,g,count` for the unitary graph and
//! `state,g1,g2,count` for the orthogonal one.

use num_bigint::BigUint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathRow {
    Unitary { state: String, g: usize, count: BigUint },
    Orthogonal { state: String, g1: usize, g2: usize, count: BigUint },
}

/// CSV text; all rows must be of the same kind. Empty input gives the
/// unitary header.
pub fn paths_to_csv(rows: &[PathRow]) -> String {
    let orthogonal = matches!(rows.first(), Some(PathRow::Orthogonal { .. }));
    let mut w = csv::Writer::from_writer(Vec::new());
    if orthogonal {
        w.write_record(["state", "g1", "g2", "count"]).expect("in memory");
    } else {
        w.write_record(["state", "g", "count"]).expect("in memory");
    }
    for row in rows {
        match row {
            PathRow::Unitary { state, g, count } => {
                w.write_record([state.clone(), g.to_string(), count.to_string()])
            }
            PathRow::Orthogonal { state, g1, g2, count } => {
                w.write_record([state.clone(), g1.to_string(), g2.to_string(), count.to_string()])
            }
        }
        .expect("in memory");
    }
    String::from_utf8(w.into_inner().expect("in memory")).expect("utf-8")
}
