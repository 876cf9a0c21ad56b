//! Single-instance checks and certificate replay.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use indcomplex_core::{
    alpha, is_cohen_macaulay, reduced_homology, shelling, verify_shed_tree, verify_shelling,
    vertex_decomposition, Complex, Error, HomologyOptions, SearchOptions, SearchStats, ShedTree,
    ShellingCertificate, Verdict,
};
use serde::Serialize;

use crate::config::RunConfig;
use crate::input::parse_input;
use crate::report::{CertificateFile, InstanceRecord, Status, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    Pure,
    Shellable,
    Vd,
    Cm,
    Alpha,
    Homology,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CheckKind::Pure => "pure",
            CheckKind::Shellable => "shellable",
            CheckKind::Vd => "vd",
            CheckKind::Cm => "cm",
            CheckKind::Alpha => "alpha",
            CheckKind::Homology => "homology",
        };
        f.write_str(name)
    }
}

/// A decision with budget exhaustion and non-pure input kept apart from no.
#[derive(Clone, Debug)]
pub enum Answer<C> {
    Yes(C),
    No,
    Unknown,
    NotPure,
}

impl<C> Answer<C> {
    pub fn label(&self) -> &'static str {
        match self {
            Answer::Yes(_) => "yes",
            Answer::No => "no",
            Answer::Unknown => "unknown",
            Answer::NotPure => "not-pure",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Answer::Yes(_))
    }

    pub fn is_decided(&self) -> bool {
        matches!(self, Answer::Yes(_) | Answer::No)
    }
}

fn lift<C>(r: indcomplex_core::Result<indcomplex_core::CheckOutcome<C>>) -> Result<(Answer<C>, SearchStats)> {
    match r {
        Ok(out) => {
            let answer = match out.verdict {
                Verdict::Yes(c) => Answer::Yes(c),
                Verdict::No => Answer::No,
            };
            Ok((answer, out.stats))
        }
        Err(Error::Timeout(stats)) => Ok((Answer::Unknown, stats)),
        Err(Error::NotPure) => Ok((Answer::NotPure, SearchStats::default())),
        Err(e) => Err(e.into()),
    }
}

pub fn decide_shellable(d: &Complex, opts: &SearchOptions) -> Result<(Answer<ShellingCertificate>, SearchStats)> {
    lift(shelling(d, opts))
}

pub fn decide_vd(d: &Complex, opts: &SearchOptions) -> Result<(Answer<ShedTree>, SearchStats)> {
    lift(vertex_decomposition(d, opts))
}

pub fn decide_cm(d: &Complex, opts: &HomologyOptions) -> Result<Answer<()>> {
    match is_cohen_macaulay(d, opts) {
        Ok(true) => Ok(Answer::Yes(())),
        Ok(false) => Ok(Answer::No),
        Err(Error::Timeout(_)) => Ok(Answer::Unknown),
        Err(e) => Err(e.into()),
    }
}

/// A file name fragment for an input descriptor.
pub fn slug(desc: &str) -> String {
    let mut s: String = desc
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' })
        .collect();
    if s.len() > 60 {
        let mut h = DefaultHasher::new();
        desc.hash(&mut h);
        s.truncate(60);
        s.push_str(&format!("-{:016x}", h.finish()));
    }
    s
}

pub fn write_certificate(path: &Path, cert: &impl Serialize) -> Result<PathBuf> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, serde_json::to_string(cert)?)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(path.to_path_buf())
}

/// Runs one property check. The record passes when the property holds; for
/// `alpha` and `homology` it passes whenever the value was computed.
pub fn run_check(kind: CheckKind, desc: &str, cfg: &RunConfig, certificate: Option<&Path>) -> Result<SuiteReport> {
    let input = parse_input(desc)?;
    let d = input.complex()?;
    let started = Instant::now();
    let mut rec = InstanceRecord::new(desc);
    let cert_path = |kind: CheckKind| -> Option<PathBuf> {
        certificate
            .map(Path::to_path_buf)
            .or_else(|| cfg.cert_dir.as_ref().map(|dir| dir.join(format!("{kind}-{}.json", slug(desc)))))
    };
    match kind {
        CheckKind::Pure => {
            rec.verdict("pure", d.is_pure());
            if !d.is_pure() {
                rec.fail("facets of different sizes");
            }
        }
        CheckKind::Alpha => {
            let a = match &input {
                crate::input::Input::Graph(g) => alpha(g)?,
                crate::input::Input::Complex(_) => d.facets().iter().map(|f| f.len()).max().unwrap_or(0),
            };
            rec.verdict("alpha", a).verdict("facets", d.facets().len());
        }
        CheckKind::Shellable => {
            let (answer, stats) = decide_shellable(&d, &cfg.search(1))?;
            rec.verdict("shellable", answer.label()).verdict("stats", stats);
            settle(&mut rec, kind, &answer, cert_path(kind))?;
        }
        CheckKind::Vd => {
            let (answer, stats) = decide_vd(&d, &cfg.search(cfg.threads))?;
            rec.verdict("vd", answer.label()).verdict("stats", stats);
            settle(&mut rec, kind, &answer, cert_path(kind))?;
        }
        CheckKind::Cm => {
            let answer = decide_cm(&d, &cfg.homology())?;
            rec.verdict("cm", answer.is_yes());
            match answer {
                Answer::No => rec.fail("Reisner's criterion fails over Q"),
                Answer::Unknown => rec.unknown("budget exhausted"),
                _ => {}
            }
        }
        CheckKind::Homology => match reduced_homology(&d, &cfg.homology()) {
            Ok(profile) => {
                rec.verdict("homology", &profile).verdict("f_vector", profile.f_vector());
            }
            Err(Error::Timeout(_)) => rec.unknown("budget exhausted"),
            Err(e) => return Err(e.into()),
        },
    }
    rec.elapsed = started.elapsed();
    let mut report = SuiteReport::new(&format!("check {kind}"), cfg.seed, cfg.deep, false);
    report.extend(vec![rec]);
    report.elapsed = started.elapsed();
    Ok(report)
}

fn settle<C: Serialize>(rec: &mut InstanceRecord, kind: CheckKind, answer: &Answer<C>, path: Option<PathBuf>) -> Result<()> {
    match answer {
        Answer::Yes(cert) => {
            if let Some(p) = path {
                rec.certificates.push(CertificateFile {
                    kind,
                    path: write_certificate(&p, cert)?,
                    input: None,
                });
            }
        }
        Answer::No => rec.fail("exhaustive search found no certificate"),
        Answer::Unknown => rec.unknown("budget exhausted"),
        Answer::NotPure => {
            rec.status = Status::Error;
            rec.note = Some(Error::NotPure.to_string());
        }
    }
    Ok(())
}

/// Replays a certificate file against the input without searching.
pub fn verify_only(kind: CheckKind, desc: &str, path: &Path) -> Result<SuiteReport> {
    let d = parse_input(desc)?.complex()?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let started = Instant::now();
    let accepted = match kind {
        CheckKind::Shellable => {
            let cert: ShellingCertificate = serde_json::from_str(&text)?;
            verify_shelling(&d, &cert)?
        }
        CheckKind::Vd => {
            let tree: ShedTree = serde_json::from_str(&text)?;
            verify_shed_tree(&d, &tree)
        }
        other => bail!("{other} has no certificates to verify"),
    };
    let mut rec = InstanceRecord::new(desc);
    rec.verdict("certificate", if accepted { "accepted" } else { "rejected" });
    rec.certificates.push(CertificateFile {
        kind,
        path: path.to_path_buf(),
        input: None,
    });
    if !accepted {
        rec.fail("verifier rejected the certificate");
    }
    rec.elapsed = started.elapsed();
    let mut report = SuiteReport::new(&format!("verify {kind}"), 0, false, false);
    report.extend(vec![rec]);
    report.elapsed = started.elapsed();
    Ok(report)
}
