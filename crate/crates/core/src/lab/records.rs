use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::Result;

pub const CSV_HEADER: [&str; 11] = [
    "class",
    "n",
    "seed",
    "order",
    "assign",
    "s",
    "q",
    "m",
    "conflicts",
    "conflicts_per_edge",
    "millis",
];

/// One heuristic run on one instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub class: String,
    pub n: usize,
    pub seed: u64,
    pub order: String,
    pub assign: String,
    pub s: usize,
    pub q: usize,
    pub m: usize,
    pub conflicts: u64,
    pub conflicts_per_edge: f64,
    /// Assignment wall time, 0 unless timing was requested.
    pub millis: f64,
}

/// Writes the header and one row per record. Floats use the shortest
/// representation that parses back to the same value.
pub fn write_csv<W: Write>(out: W, records: &[RunRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<RunRecord>> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}
