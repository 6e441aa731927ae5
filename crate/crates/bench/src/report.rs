//! CSV and JSON report files.
//!
//! Floats are written with 17 significant digits and rows follow the order
//! of the results, so equal results give byte-identical files.

use crate::case::STRIKE_COUNTS;
use crate::error::Result;
use crate::suite::SuiteReport;
use crate::throughput::Scope;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub const SUMMARY_FILE: &str = "summary.csv";
pub const ACCURACY_FILE: &str = "accuracy.csv";
pub const THROUGHPUT_FILE: &str = "throughput.csv";
pub const SAMPLES_FILE: &str = "samples.csv";
pub const ASSERTIONS_FILE: &str = "assertions.csv";
pub const JSON_FILE: &str = "report.json";

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn strike_columns(report: &SuiteReport) -> Vec<usize> {
    let mut counts: Vec<usize> = report.throughput.iter().map(|t| t.strikes).collect();
    if counts.is_empty() {
        counts = STRIKE_COUNTS.to_vec();
    }
    counts.sort_unstable();
    counts.dedup();
    counts
}

/// One row per (case, backend): options per second for each scope and
/// strike count, then the accuracy columns.
pub fn summary_csv(report: &SuiteReport) -> String {
    let counts = strike_columns(report);
    let mut out = String::from("case,backend");
    for scope in Scope::ALL {
        for j in &counts {
            write!(out, ",{}_ops_{j}", scope.name().replace('-', "_")).unwrap();
        }
    }
    out.push_str(",rmse,max_abs,mean_abs\n");
    let mut rows: Vec<(&str, cosnufft::Backend)> = Vec::new();
    let keys = report
        .accuracy
        .iter()
        .map(|a| (a.case.as_str(), a.backend))
        .chain(report.throughput.iter().map(|t| (t.case.as_str(), t.backend)));
    for key in keys {
        if !rows.contains(&key) {
            rows.push(key);
        }
    }
    for (case, backend) in rows {
        write!(out, "{case},{backend}").unwrap();
        for scope in Scope::ALL {
            for &j in &counts {
                let cell = report
                    .throughput
                    .iter()
                    .find(|t| t.case == case && t.backend == backend && t.scope == scope && t.strikes == j);
                out.push(',');
                if let Some(t) = cell {
                    out.push_str(&num(t.options_per_second));
                }
            }
        }
        match report.accuracy.iter().find(|a| a.case == case && a.backend == backend) {
            Some(a) => writeln!(out, ",{},{},{}", num(a.rmse), num(a.max_abs), num(a.mean_abs)).unwrap(),
            None => out.push_str(",,,\n"),
        }
    }
    out
}

pub fn accuracy_csv(report: &SuiteReport) -> String {
    let mut out = String::from("case,backend,reference,strikes,rmse,max_abs,mean_abs\n");
    for a in &report.accuracy {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            a.case,
            a.backend,
            a.reference,
            a.strikes,
            num(a.rmse),
            num(a.max_abs),
            num(a.mean_abs)
        )
        .unwrap();
    }
    out
}

pub fn throughput_csv(report: &SuiteReport) -> String {
    let mut out = String::from("case,backend,scope,strikes,threads,inner_loop,median_seconds,options_per_second\n");
    for t in &report.throughput {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            t.case,
            t.backend,
            t.scope.name(),
            t.strikes,
            t.threads,
            t.inner_loop,
            num(t.median_seconds),
            num(t.options_per_second)
        )
        .unwrap();
    }
    out
}

/// Raw timing samples, one row per repetition.
pub fn samples_csv(report: &SuiteReport) -> String {
    let mut out = String::from("case,backend,scope,strikes,repetition,seconds\n");
    for t in &report.throughput {
        for (i, s) in t.samples.iter().enumerate() {
            writeln!(out, "{},{},{},{},{i},{}", t.case, t.backend, t.scope.name(), t.strikes, num(*s)).unwrap();
        }
    }
    out
}

pub fn assertions_csv(report: &SuiteReport) -> String {
    let mut out = String::from("label,case,backend,metric,value,lower,upper,passed\n");
    for a in &report.assertions {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            a.label,
            a.case,
            a.backend,
            a.metric.name(),
            num(a.value),
            num(a.lower),
            num(a.upper),
            a.passed
        )
        .unwrap();
    }
    out
}

/// Writes every report file into `dir`, creating it if needed.
pub fn emit_report(report: &SuiteReport, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut json = serde_json::to_string_pretty(report)?;
    json.push('\n');
    let files = [
        (SUMMARY_FILE, summary_csv(report)),
        (ACCURACY_FILE, accuracy_csv(report)),
        (THROUGHPUT_FILE, throughput_csv(report)),
        (SAMPLES_FILE, samples_csv(report)),
        (ASSERTIONS_FILE, assertions_csv(report)),
        (JSON_FILE, json),
    ];
    let mut paths = Vec::with_capacity(files.len());
    for (name, contents) in files {
        let path = dir.join(name);
        std::fs::write(&path, contents)?;
        paths.push(path);
    }
    Ok(paths)
}
