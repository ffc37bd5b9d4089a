//! CSV formats for run records, aggregates and the ablation table.
//!
//! All output is UTF-8 with LF line endings. Absent values are empty fields.

use std::io;
use std::time::Duration;

use super::{AblationTable, AggregateStats, RunRecord};
use crate::error::HarnessError;

pub const RECORD_HEADER: [&str; 11] = [
    "family",
    "n",
    "p",
    "instance_seed",
    "variant",
    "run",
    "success",
    "evals_to_solution",
    "best_fitness",
    "evals_used",
    "wall_time_ms",
];

pub const AGGREGATE_HEADER: [&str; 6] = ["family", "n", "p", "variant", "sr", "aes"];

const ABLATION_HEADER: [&str; 6] = ["family", "n", "p", "sr_random", "sr_rwde", "improvement_pct"];

fn optional<T: ToString>(value: Option<T>) -> String {
    value.map(|v| v.to_string()).unwrap_or_default()
}

pub fn write_records<W: io::Write>(records: &[RunRecord], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RECORD_HEADER)?;
    for r in records {
        w.write_record([
            r.family.to_string(),
            r.n.to_string(),
            r.p.to_string(),
            r.instance_seed.to_string(),
            r.variant.to_string(),
            r.run_index.to_string(),
            r.success.to_string(),
            optional(r.evals_to_solution),
            r.best_fitness.to_string(),
            r.evals_used.to_string(),
            r.wall_time.as_millis().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: io::Read>(input: R) -> Result<Vec<RunRecord>, HarnessError> {
    let mut reader = csv::Reader::from_reader(input);
    let header = reader.headers()?.clone();
    if header.iter().ne(RECORD_HEADER) {
        return Err(HarnessError::Record {
            row: 1,
            message: format!("expected header `{}`", RECORD_HEADER.join(",")),
        });
    }
    let mut records = Vec::new();
    for row in reader.records() {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let bad = |message: String| HarnessError::Record { row: line, message };
        let field = |i: usize| row.get(i).unwrap_or("");
        fn parse<T: std::str::FromStr>(s: &str, name: &str) -> Result<T, String> {
            s.parse().map_err(|_| format!("invalid {name} `{s}`"))
        }
        let parsed = (|| -> Result<RunRecord, String> {
            let evals_to_solution = match field(7) {
                "" => None,
                s => Some(parse(s, "evals_to_solution")?),
            };
            let success: bool = parse(field(6), "success")?;
            if success != evals_to_solution.is_some() {
                return Err("success flag disagrees with evals_to_solution".into());
            }
            Ok(RunRecord {
                family: field(0).parse()?,
                n: parse(field(1), "n")?,
                p: parse(field(2), "p")?,
                instance_seed: parse(field(3), "instance_seed")?,
                variant: field(4).parse()?,
                run_index: parse(field(5), "run")?,
                success,
                evals_to_solution,
                best_fitness: parse(field(8), "best_fitness")?,
                evals_used: parse(field(9), "evals_used")?,
                wall_time: Duration::from_millis(parse(field(10), "wall_time_ms")?),
            })
        })();
        records.push(parsed.map_err(bad)?);
    }
    Ok(records)
}

pub fn write_aggregate<W: io::Write>(stats: &[AggregateStats], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(AGGREGATE_HEADER)?;
    for s in stats {
        w.write_record([
            s.family.to_string(),
            s.n.to_string(),
            s.p.to_string(),
            s.variant.to_string(),
            format!("{:.6}", s.sr),
            optional(s.aes.map(|a| format!("{a:.6}"))),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Per-`p` rows with six-decimal success rates, then one `avg` row per
/// family with three-decimal averages and the improvement in percent (two
/// decimals), then an `all` row with the mean improvement.
pub fn write_ablation<W: io::Write>(table: &AblationTable, out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(ABLATION_HEADER)?;
    for r in &table.rows {
        w.write_record([
            r.family.to_string(),
            r.n.to_string(),
            r.p.to_string(),
            format!("{:.6}", r.sr_random),
            format!("{:.6}", r.sr_rwde),
            String::new(),
        ])?;
    }
    for s in &table.summaries {
        w.write_record([
            s.family.to_string(),
            s.n.to_string(),
            "avg".into(),
            format!("{:.3}", s.avg_random),
            format!("{:.3}", s.avg_rwde),
            optional(s.improvement_pct.map(|x| format!("{x:.2}"))),
        ])?;
    }
    w.write_record([
        "all".to_string(),
        String::new(),
        "avg".into(),
        String::new(),
        String::new(),
        optional(table.overall_improvement_pct.map(|x| format!("{x:.2}"))),
    ])?;
    w.flush()?;
    Ok(())
}
