use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Duration;

use indcomplex_core::Complex;
use serde::Serialize;
use serde_json::Value;

use crate::check::{slug, write_certificate, CheckKind};

/// Reports with more instances than this list only the records that did not
/// pass; the counts always cover every instance.
pub const ELIDE_PASSING_ABOVE: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unknown,
    Skipped,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub input: String,
    pub status: Status,
    pub verdicts: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<CertificateFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
    /// Certificates not yet written to disk.
    #[serde(skip)]
    pub pending: Vec<Pending>,
}

/// A certificate on disk. Replay with
/// `check <kind> <input> --verify-only <path>`; `input` is a complex JSON
/// file when the record's own descriptor is not a parseable input.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateFile {
    pub kind: CheckKind,
    pub path: PathBuf,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct Pending {
    pub tag: String,
    pub kind: CheckKind,
    pub complex: Value,
    pub certificate: Value,
}

impl InstanceRecord {
    pub fn new(input: impl Into<String>) -> Self {
        InstanceRecord {
            input: input.into(),
            status: Status::Pass,
            verdicts: BTreeMap::new(),
            certificates: Vec::new(),
            note: None,
            elapsed: Duration::ZERO,
            pending: Vec::new(),
        }
    }

    /// Keeps a certificate for `complex` until the report decides whether
    /// this record is listed.
    pub fn hold_certificate(&mut self, tag: &str, kind: CheckKind, complex: &Complex, cert: impl Serialize) {
        self.pending.push(Pending {
            tag: tag.to_string(),
            kind,
            complex: serde_json::to_value(complex).expect("complexes serialize"),
            certificate: serde_json::to_value(cert).expect("certificates serialize"),
        });
    }

    pub fn verdict(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.verdicts.insert(
            key.to_string(),
            serde_json::to_value(value).expect("verdicts serialize"),
        );
        self
    }

    /// Marks the record failed unless it already is.
    pub fn fail(&mut self, why: impl Into<String>) {
        if self.status != Status::Fail {
            self.status = Status::Fail;
            self.note = Some(why.into());
        }
    }

    pub fn unknown(&mut self, why: impl Into<String>) {
        if self.status == Status::Pass {
            self.status = Status::Unknown;
            self.note = Some(why.into());
        }
    }
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub deep: bool,
    /// Budgeted suites list unknowns without failing.
    pub budgeted: bool,
    pub pass: bool,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub unknown: usize,
    pub skipped: usize,
    pub errors: usize,
    pub elided: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
    pub records: Vec<InstanceRecord>,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, deep: bool, budgeted: bool) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            deep,
            budgeted,
            pass: true,
            instances: 0,
            passed: 0,
            failed: 0,
            unknown: 0,
            skipped: 0,
            errors: 0,
            elided: 0,
            notes: Vec::new(),
            elapsed: Duration::ZERO,
            records: Vec::new(),
        }
    }

    /// Adds records in order, keeping only non-passing ones for large suites.
    pub fn extend(&mut self, records: Vec<InstanceRecord>) {
        let elide = records.len() + self.instances > ELIDE_PASSING_ABOVE;
        for r in records {
            self.push(r, elide);
        }
    }

    pub fn push(&mut self, r: InstanceRecord, elide_passing: bool) {
        self.instances += 1;
        match r.status {
            Status::Pass => self.passed += 1,
            Status::Fail => self.failed += 1,
            Status::Unknown => self.unknown += 1,
            Status::Skipped => self.skipped += 1,
            Status::Error => self.errors += 1,
        }
        if elide_passing && r.status == Status::Pass {
            self.elided += 1;
        } else {
            self.records.push(r);
        }
        self.pass = self.failed == 0 && self.errors == 0 && (self.budgeted || self.unknown == 0);
    }

    /// Writes the held certificates of every listed record under
    /// `dir/<suite>/` and records their paths.
    pub fn write_certificates(&mut self, dir: &Path) -> anyhow::Result<()> {
        let root = dir.join(slug(&self.suite));
        for r in &mut self.records {
            for p in std::mem::take(&mut r.pending) {
                let stem = format!("{}-{}", slug(&r.input), p.tag);
                let input = write_certificate(&root.join(format!("{stem}.input.json")), &p.complex)?;
                let path = write_certificate(&root.join(format!("{stem}.json")), &p.certificate)?;
                r.certificates.push(CertificateFile {
                    kind: p.kind,
                    path,
                    input: Some(input),
                });
            }
        }
        Ok(())
    }

    /// Merges a sub-report produced by another suite.
    pub fn absorb(&mut self, other: SuiteReport) {
        let tag = other.suite.clone();
        self.instances += other.instances;
        self.passed += other.passed;
        self.failed += other.failed;
        self.unknown += other.unknown;
        self.skipped += other.skipped;
        self.errors += other.errors;
        self.elided += other.elided;
        self.notes.extend(other.notes.into_iter().map(|n| format!("{tag}: {n}")));
        self.records.extend(other.records.into_iter().map(|mut r| {
            r.input = format!("{tag}/{}", r.input);
            r
        }));
        self.pass &= other.pass;
    }

    /// 0 when the suite passes, 1 on any failure, 2 when only errors or
    /// unknowns stand in the way.
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else if self.failed > 0 {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} (seed {}{}): {}",
            self.suite,
            self.seed,
            if self.deep { ", deep" } else { "" },
            if self.pass { "PASS" } else { "FAIL" }
        )?;
        writeln!(
            f,
            "  {} instances: {} pass, {} fail, {} unknown, {} skipped, {} error  [{:.2}s]",
            self.instances,
            self.passed,
            self.failed,
            self.unknown,
            self.skipped,
            self.errors,
            self.elapsed.as_secs_f64()
        )?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        let shown = self.records.iter().filter(|r| r.status != Status::Pass || self.records.len() <= 20);
        for r in shown.take(50) {
            let verdicts: Vec<String> = r.verdicts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "  {:<8} {:<32} {}", format!("{:?}", r.status).to_lowercase(), r.input, verdicts.join(" "))?;
            if let Some(n) = &r.note {
                write!(f, "  ({n})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(status: Status) -> InstanceRecord {
        InstanceRecord {
            status,
            ..InstanceRecord::new("x")
        }
    }

    #[test]
    fn pass_rules() {
        let mut r = SuiteReport::new("t", 0, false, false);
        r.extend(vec![record(Status::Pass), record(Status::Skipped)]);
        assert!(r.pass);
        assert_eq!(r.exit_code(), 0);
        r.extend(vec![record(Status::Unknown)]);
        assert!(!r.pass);
        assert_eq!(r.exit_code(), 2);
        r.extend(vec![record(Status::Fail)]);
        assert_eq!(r.exit_code(), 1);

        let mut budgeted = SuiteReport::new("t", 0, false, true);
        budgeted.extend(vec![record(Status::Unknown)]);
        assert!(budgeted.pass);
    }

    #[test]
    fn large_suites_elide_passes() {
        let mut r = SuiteReport::new("t", 0, false, false);
        let mut recs = vec![record(Status::Pass); ELIDE_PASSING_ABOVE];
        recs.push(record(Status::Fail));
        r.extend(recs);
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.elided, ELIDE_PASSING_ABOVE);
        assert_eq!(r.instances, ELIDE_PASSING_ABOVE + 1);
    }

    #[test]
    fn fail_keeps_first_reason() {
        let mut r = InstanceRecord::new("x");
        r.fail("first");
        r.fail("second");
        r.unknown("late");
        assert_eq!(r.note.as_deref(), Some("first"));
        assert_eq!(r.status, Status::Fail);
    }
}
