//! Report assembly and the JSON, CSV and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::record::VerificationRecord;
use crate::scan::ScanConfig;

pub const CSV_HEADER: [&str; 7] = [
    "suite",
    "equation",
    "prime_or_index",
    "lhs",
    "rhs",
    "pass",
    "witness",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::InvalidConfig(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub informational: usize,
}

impl Tally {
    fn add(&mut self, rec: &VerificationRecord) {
        self.total += 1;
        if rec.informational {
            self.informational += 1;
        } else if rec.pass {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub informational: usize,
    pub suites: BTreeMap<String, Tally>,
}

impl Summary {
    pub fn from_records(records: &[VerificationRecord]) -> Self {
        let mut all = Tally::default();
        let mut suites: BTreeMap<String, Tally> = BTreeMap::new();
        for rec in records {
            all.add(rec);
            suites
                .entry(rec.suite.name().to_string())
                .or_default()
                .add(rec);
        }
        Summary {
            total: all.total,
            passed: all.passed,
            failed: all.failed,
            informational: all.informational,
            suites,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: ScanConfig,
    pub records: Vec<VerificationRecord>,
    pub summary: Summary,
    pub wall_time_seconds: f64,
}

/// Everything except the wall time, which varies between identical runs.
#[derive(Serialize)]
struct CanonicalReport<'a> {
    config: &'a ScanConfig,
    records: &'a [VerificationRecord],
    summary: &'a Summary,
}

impl Report {
    pub fn new(config: ScanConfig, records: Vec<VerificationRecord>, wall_time: Duration) -> Self {
        let summary = Summary::from_records(&records);
        Report {
            config,
            records,
            summary,
            wall_time_seconds: wall_time.as_secs_f64(),
        }
    }

    pub fn has_failures(&self) -> bool {
        self.records.iter().any(VerificationRecord::is_failure)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON without the wall time, byte-identical across identical runs.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string_pretty(&CanonicalReport {
            config: &self.config,
            records: &self.records,
            summary: &self.summary,
        })
        .expect("report serializes")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let to_err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(CSV_HEADER).map_err(to_err)?;
        for rec in &self.records {
            let prime_or_index = rec.prime_or_index.to_string();
            let equation = if rec.instance.is_empty() {
                rec.equation.clone()
            } else {
                format!("{} [{}]", rec.equation, rec.instance)
            };
            let witness = rec
                .witness
                .as_ref()
                .map(ToString::to_string)
                .unwrap_or_default();
            w.write_record([
                rec.suite.name(),
                &equation,
                &prime_or_index,
                &rec.lhs.canonical,
                &rec.rhs.canonical,
                if rec.pass { "true" } else { "false" },
                &witness,
            ])
            .map_err(to_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        writeln!(
            out,
            "{:<14} {:>8} {:>8} {:>8} {:>8}",
            "suite", "total", "passed", "failed", "info"
        )
        .unwrap();
        for (name, t) in &s.suites {
            writeln!(
                out,
                "{:<14} {:>8} {:>8} {:>8} {:>8}",
                name, t.total, t.passed, t.failed, t.informational
            )
            .unwrap();
        }
        writeln!(
            out,
            "{:<14} {:>8} {:>8} {:>8} {:>8}",
            "all", s.total, s.passed, s.failed, s.informational
        )
        .unwrap();
        let failures: Vec<_> = self.records.iter().filter(|r| r.is_failure()).collect();
        if !failures.is_empty() {
            writeln!(out, "\nfailures:").unwrap();
            for rec in failures {
                let witness = rec
                    .witness
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default();
                writeln!(out, "  {} {} {witness}", rec.suite, rec.equation).unwrap();
            }
        }
        writeln!(out, "\nwall time: {:.2}s", self.wall_time_seconds).unwrap();
        out
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        Ok(match format {
            OutputFormat::Json => self.to_json() + "\n",
            OutputFormat::Csv => self.to_csv()?,
            OutputFormat::Text => self.to_text(),
        })
    }
}

/// Writes the rendered report to `path`, or to stdout when `path` is `None`.
/// Returns the number of bytes written.
pub fn emit(report: &Report, format: OutputFormat, path: Option<&Path>) -> Result<usize> {
    let body = report.render(format)?;
    match path {
        Some(path) => std::fs::write(path, &body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(body.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::Residue;
    use crate::record::{Instance, Suite};

    fn report(records: Vec<VerificationRecord>) -> Report {
        Report::new(ScanConfig::default(), records, Duration::from_millis(5))
    }

    fn rec(pass: bool) -> VerificationRecord {
        VerificationRecord::residues(
            Suite::Lemmas,
            "demo",
            5,
            Instance::ij(1, 2),
            Residue::new(1, 5),
            Residue::new(if pass { 1 } else { 4 }, 5),
        )
    }

    #[test]
    fn csv_header_is_fixed() {
        let csv = report(vec![rec(true), rec(false)]).to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "suite,equation,prime_or_index,lhs,rhs,pass,witness"
        );
        assert_eq!(lines.next().unwrap(), "lemmas,demo [i=1 j=2],5,1,1,true,");
        assert_eq!(
            lines.next().unwrap(),
            "lemmas,demo [i=1 j=2],5,1,4,false,at 5 i=1 j=2: lhs=1 rhs=4"
        );
    }

    #[test]
    fn json_has_top_level_sections() {
        let r = report(vec![rec(true)]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for key in ["config", "records", "summary", "wall_time_seconds"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let canon: serde_json::Value = serde_json::from_str(&r.canonical_json()).unwrap();
        assert!(canon.get("wall_time_seconds").is_none());
        assert_eq!(v["records"][0]["rhs"]["canonical"], "1");
    }

    #[test]
    fn summary_counts_match_records() {
        let mut info = rec(false).informational();
        info.equation = "info".into();
        let r = report(vec![rec(true), rec(false), info]);
        assert_eq!(r.summary.total, 3);
        assert_eq!(r.summary.passed, 1);
        assert_eq!(r.summary.failed, 1);
        assert_eq!(r.summary.informational, 1);
        assert_eq!(r.summary.suites["lemmas"].total, 3);
        assert!(r.has_failures());
        assert!(!report(vec![rec(true)]).has_failures());
    }

    #[test]
    fn text_lists_failures() {
        let text = report(vec![rec(false)]).to_text();
        assert!(text.contains("failures:"));
        assert!(text.contains("lhs=1 rhs=4"));
    }

    #[test]
    fn emit_writes_file() {
        let dir = std::env::temp_dir().join(format!("supercat-emit-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("r.csv");
        let n = emit(&report(vec![rec(true)]), OutputFormat::Csv, Some(&path)).unwrap();
        assert_eq!(std::fs::read(&path).unwrap().len(), n);
        assert!(emit(
            &report(vec![]),
            OutputFormat::Json,
            Some(&dir.join("missing/x.json"))
        )
        .is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
