//! Acceptance run: one PASS/FAIL line per criterion. Criteria 1 and 2 go
//! through the binary exactly as a user would type them.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use indcomplex_cli::{run_check, run_suite, verify_only, CheckKind, RunConfig, Status, SuiteReport};
use serde_json::Value;

struct Run {
    code: Option<i32>,
    report: Value,
}

fn indcomplex(args: &[&str], cwd: &Path) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_indcomplex"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code(),
        report: serde_json::from_slice(&out.stdout).unwrap_or(Value::Null),
    }
}

fn verdict(run: &Run, key: &str) -> Value {
    run.report["records"][0]["verdicts"][key].clone()
}

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1(dir: &Path) -> Outcome {
    let started = Instant::now();
    let cert = dir.join("c16-shelling.json");
    let cert = cert.to_str().unwrap();
    let sh = indcomplex(&["check", "shellable", "C16(1,4,8)", "--certificate", cert], dir);
    ensure(sh.code == Some(0) && verdict(&sh, "shellable") == "yes", format!("shellable: exit {:?}", sh.code))?;
    let replay = indcomplex(&["check", "shellable", "C16(1,4,8)", "--verify-only", cert], dir);
    ensure(replay.code == Some(0) && verdict(&replay, "certificate") == "accepted", "certificate rejected")?;
    let vd = indcomplex(&["check", "vd", "C16(1,4,8)"], dir);
    ensure(vd.code == Some(1) && verdict(&vd, "vd") == "no", format!("vd: exit {:?}", vd.code))?;
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(30 * 60), "over 30 minutes")?;
    Ok(format!("shellable yes (certificate accepted), vd exhaustive no, {:.2}s", elapsed.as_secs_f64()))
}

fn criterion_2(dir: &Path) -> Outcome {
    let started = Instant::now();
    let c20 = indcomplex(&["check", "vd", "C20(1,5,10)"], dir);
    ensure(c20.code == Some(1) && verdict(&c20, "vd") == "no", format!("C20 vd: exit {:?}", c20.code))?;
    let cm = indcomplex(&["check", "cm", "C24(1,6,12)"], dir);
    ensure(cm.code == Some(0) && verdict(&cm, "cm") == true, format!("C24 cm: exit {:?}", cm.code))?;
    let vd = indcomplex(&["check", "vd", "C24(1,6,12)"], dir);
    ensure(vd.code == Some(1) && verdict(&vd, "vd") == "no", format!("C24 vd: exit {:?}", vd.code))?;
    let suite = indcomplex(&["suite", "paper-milestones", "--deep"], dir);
    ensure(suite.code == Some(0), format!("paper-milestones --deep: exit {:?}", suite.code))?;
    Ok(format!(
        "C20 vd no, C24 cm true, C24 vd no, deep milestone suite passes, {:.2}s",
        started.elapsed().as_secs_f64()
    ))
}

fn suite(name: &str, cfg: &RunConfig, limit: Option<Duration>, min_instances: usize) -> Result<SuiteReport, String> {
    let report = run_suite(name, cfg).map_err(|e| format!("{e:#}"))?;
    ensure(
        report.pass && report.failed == 0 && report.unknown == 0 && report.errors == 0,
        format!(
            "{} failed, {} unknown, {} errors; first: {:?}",
            report.failed,
            report.unknown,
            report.errors,
            report.records.iter().find(|r| r.status != Status::Pass).map(|r| (&r.input, &r.note))
        ),
    )?;
    ensure(
        report.instances >= min_instances,
        format!("only {} instances, expected at least {min_instances}", report.instances),
    )?;
    if let Some(limit) = limit {
        ensure(report.elapsed < limit, format!("took {:.1}s", report.elapsed.as_secs_f64()))?;
    }
    Ok(report)
}

fn summary(r: &SuiteReport) -> String {
    format!("{} instances, 0 failures, {:.2}s", r.instances, r.elapsed.as_secs_f64())
}

fn criterion_9(cfg: &RunConfig) -> Outcome {
    let r = suite("homology", cfg, None, 30_000)?;
    let c5 = run_check(CheckKind::Homology, "C5(1)", cfg, None).map_err(|e| e.to_string())?;
    let betti = &c5.records[0].verdicts["homology"]["betti"];
    ensure(betti["0"] == 0 && betti["1"] == 1, format!("C5 betti {betti}"))?;
    Ok(format!("{}; Ind(C5(1)) has (b0, b1) = (0, 1)", summary(&r)))
}

fn criterion_8(cfg: &RunConfig) -> Outcome {
    let r = suite("chain", cfg, None, 5_000)?;
    // replay every written certificate through the stand-alone verifier
    let mut replayed = 0;
    for rec in &r.records {
        for c in &rec.certificates {
            let input = c.input.as_ref().ok_or("certificate without input")?;
            let out = verify_only(c.kind, input.to_str().unwrap(), &c.path).map_err(|e| e.to_string())?;
            ensure(out.records[0].status == Status::Pass, format!("{} rejected", c.path.display()))?;
            replayed += 1;
        }
    }
    ensure(replayed > 0, "no certificates written")?;
    Ok(format!("{}; {replayed} certificates replayed", summary(&r)))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let cfg = RunConfig {
        cert_dir: Some(dir.path().join("certificates")),
        ..RunConfig::default()
    };
    let five_minutes = Some(Duration::from_secs(300));
    let criteria: Vec<Criterion> = vec![
        ("C16(1,4,8) shellable with certificate, not vertex decomposable", Box::new(|| criterion_1(dir.path()))),
        ("deep milestones C20 vd, C24 cm, C24 vd", Box::new(|| criterion_2(dir.path()))),
        (
            "topp-volkmann purity equivalence",
            Box::new(|| suite("topp-volkmann", &cfg, five_minutes, 75 * 75).map(|r| summary(&r))),
        ),
        (
            "alpha-product multiplicativity",
            Box::new(|| suite("alpha-product", &cfg, five_minutes, 1099 * 1099).map(|r| summary(&r))),
        ),
        ("nonshellable lexicographic products", Box::new(|| suite("nonshellable", &cfg, None, 4_000).map(|r| summary(&r)))),
        ("expansion preserves vd and shellability", Box::new(|| suite("expansion", &cfg, None, 30_000).map(|r| summary(&r)))),
        ("circulant-product edge equality", Box::new(|| suite("circulant-product", &cfg, None, 45 * 45).map(|r| summary(&r)))),
        ("vd => shellable => Cohen-Macaulay chain", Box::new(|| criterion_8(&cfg))),
        ("homology self-consistency", Box::new(|| criterion_9(&cfg))),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", k + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {}: {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
