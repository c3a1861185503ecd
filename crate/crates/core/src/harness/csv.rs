use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{RunResult, ScenarioKind, StrategyKind};
use crate::{Error, Result};

pub const CSV_HEADER: [&str; 12] = [
    "scenario",
    "n",
    "strategy",
    "trial",
    "seed",
    "delta",
    "plays_total",
    "plays_line5",
    "samples_total",
    "identified_arm",
    "correct",
    "fail_reason",
];

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    scenario: String,
    n: usize,
    strategy: String,
    trial: u32,
    seed: u64,
    delta: f64,
    plays_total: u64,
    plays_line5: u64,
    samples_total: u64,
    /// One-based.
    identified_arm: Option<usize>,
    correct: bool,
    fail_reason: String,
}

impl From<&RunResult> for Row {
    fn from(r: &RunResult) -> Self {
        Row {
            scenario: r.scenario.name().to_string(),
            n: r.n,
            strategy: r.strategy.name().to_string(),
            trial: r.trial,
            seed: r.seed,
            delta: r.delta,
            plays_total: r.plays_total,
            plays_line5: r.plays_line5,
            samples_total: r.samples_total,
            identified_arm: r.identified_arm.map(|a| a + 1),
            correct: r.correct,
            fail_reason: r.fail_reason.clone().unwrap_or_default(),
        }
    }
}

impl TryFrom<Row> for RunResult {
    type Error = Error;

    fn try_from(r: Row) -> Result<Self> {
        Ok(RunResult {
            scenario: r.scenario.parse::<ScenarioKind>()?,
            n: r.n,
            strategy: r.strategy.parse::<StrategyKind>()?,
            trial: r.trial,
            seed: r.seed,
            delta: r.delta,
            plays_total: r.plays_total,
            plays_line5: r.plays_line5,
            samples_total: r.samples_total,
            identified_arm: match r.identified_arm {
                Some(0) => return Err(Error::Csv("identified_arm is one-based".into())),
                other => other.map(|a| a - 1),
            },
            correct: r.correct,
            fail_reason: (!r.fail_reason.is_empty()).then_some(r.fail_reason),
        })
    }
}

fn csv_err(e: impl std::fmt::Display) -> Error {
    Error::Csv(e.to_string())
}

/// Writes the header and one LF-terminated line per row.
pub fn write_csv<W: Write>(rows: &[RunResult], out: W) -> Result<()> {
    let mut w = ::csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(::csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for row in rows {
        w.serialize(Row::from(row)).map_err(csv_err)?;
    }
    w.flush().map_err(csv_err)
}

pub fn parse_csv<R: Read>(input: R) -> Result<Vec<RunResult>> {
    let mut r = ::csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = r.headers().map_err(csv_err)?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Csv(format!("unexpected header {header:?}")));
    }
    r.deserialize::<Row>()
        .map(|row| row.map_err(csv_err).and_then(RunResult::try_from))
        .collect()
}

pub fn read_csv(path: &Path) -> Result<Vec<RunResult>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_csv(std::io::BufReader::new(file))
}
