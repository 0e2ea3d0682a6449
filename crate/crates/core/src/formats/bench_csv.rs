use std::fmt;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::FormatError;

pub const BENCH_COLUMNS: [&str; 9] = [
    "construction",
    "n",
    "k_or_S",
    "strategy",
    "dfas",
    "max_states",
    "product_states_explored",
    "time_ns",
    "verdict",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Nonempty,
    Empty,
    /// The case exceeded a cap and was not measured.
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Nonempty => "NONEMPTY",
            Self::Empty => "EMPTY",
            Self::Skipped => "SKIPPED",
        })
    }
}

/// One benchmark measurement. Skipped rows leave the measured columns
/// empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub construction: String,
    pub n: u32,
    #[serde(rename = "k_or_S")]
    pub k_or_s: u32,
    pub strategy: String,
    pub dfas: usize,
    pub max_states: u32,
    pub product_states_explored: Option<u64>,
    pub time_ns: Option<u64>,
    pub verdict: Verdict,
}

/// Writes the header, then one line per row; an empty slice gives just
/// the header.
pub fn write_bench_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<(), FormatError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(BENCH_COLUMNS)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_bench_csv<R: Read>(input: R) -> Result<Vec<BenchRow>, FormatError> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().ne(BENCH_COLUMNS) {
        return Err(FormatError::Validation(format!(
            "unexpected benchmark header '{}'",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}
