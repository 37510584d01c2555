//! CSV artifacts. Floats use 17 significant digits so identical runs give
//! byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use metabench_core::{Trace, TraceEntry};

use crate::error::{HarnessError, Result};
use crate::stats::AggregateReport;

pub const RUN_HEADER: &str = "generation,best_so_far,gen_best,evaluations";
pub const AGGREGATE_HEADER: &str = "generation,algorithm,median,mean,std,min,max";
pub const SUMMARY_HEADER: &str = "algorithm,median,mean,std,min,max,evaluations";

pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn run_csv(trace: &Trace) -> String {
    let mut out = String::from(RUN_HEADER);
    out.push('\n');
    for e in &trace.entries {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            e.generation,
            fmt_float(e.best_so_far),
            fmt_float(e.gen_best),
            e.evaluations
        );
    }
    out
}

/// Parses a per-run CSV back into trace entries.
pub fn parse_run_csv(text: &str) -> Result<Vec<TraceEntry>> {
    let bad = |line: &str| HarnessError::Config(format!("malformed run CSV line `{line}`"));
    let mut lines = text.lines();
    if lines.next() != Some(RUN_HEADER) {
        return Err(HarnessError::Config("run CSV has an unexpected header".into()));
    }
    lines
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 4 {
                return Err(bad(line));
            }
            Ok(TraceEntry {
                generation: f[0].parse().map_err(|_| bad(line))?,
                best_so_far: f[1].parse().map_err(|_| bad(line))?,
                gen_best: f[2].parse().map_err(|_| bad(line))?,
                evaluations: f[3].parse().map_err(|_| bad(line))?,
            })
        })
        .collect()
}

/// Rows ordered by generation, then by algorithm in configuration order.
pub fn aggregate_csv(report: &AggregateReport) -> String {
    let mut out = String::from(AGGREGATE_HEADER);
    out.push('\n');
    for g in 0..report.generations() {
        for a in &report.algorithms {
            let s = &a.per_generation[g];
            let _ = writeln!(
                out,
                "{g},{},{},{},{},{},{}",
                a.algorithm,
                fmt_float(s.median),
                fmt_float(s.mean),
                fmt_float(s.std),
                fmt_float(s.min),
                fmt_float(s.max)
            );
        }
    }
    out
}

/// Final best-so-far statistics per algorithm.
pub fn summary_csv(report: &AggregateReport) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for a in &report.algorithms {
        let s = a.final_best();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            a.algorithm,
            fmt_float(s.median),
            fmt_float(s.mean),
            fmt_float(s.std),
            fmt_float(s.min),
            fmt_float(s.max),
            a.evaluations.last().copied().unwrap_or(0)
        );
    }
    out
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| HarnessError::io(path, e))
}

pub fn ensure_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|e| HarnessError::io(path, e))
}
