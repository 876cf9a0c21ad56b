use std::path::Path;
use std::process::{Command, Output};

use indcomplex_cli::{run_suite, verify_only, RunConfig, Status};
use serde_json::Value;

fn indcomplex(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_indcomplex"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report JSON on stdout")
}

#[test]
fn exit_codes_follow_the_property() {
    let dir = tempfile::tempdir().unwrap();
    let alpha = indcomplex(&["check", "alpha", "C5(1)"], dir.path());
    assert_eq!(alpha.status.code(), Some(0));
    assert_eq!(report(&alpha)["records"][0]["verdicts"]["alpha"], 2);

    let vd = indcomplex(&["check", "vd", "C16(1,4,8)"], dir.path());
    assert_eq!(vd.status.code(), Some(1));
    assert_eq!(report(&vd)["records"][0]["verdicts"]["vd"], "no");

    let pure = indcomplex(&["check", "pure", "C16(1,4,8)"], dir.path());
    assert_eq!(pure.status.code(), Some(0));

    let cm = indcomplex(&["check", "cm", "C5(1)"], dir.path());
    assert_eq!(cm.status.code(), Some(0));
}

#[test]
fn non_pure_input_is_an_error_for_the_checkers() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = r#"{"n":3,"edges":[[0,1],[1,2]]}"#;
    for kind in ["shellable", "vd"] {
        let out = indcomplex(&["check", kind, p3], dir.path());
        assert_eq!(out.status.code(), Some(2), "{kind}");
        let note = report(&out)["records"][0]["note"].as_str().unwrap().to_string();
        assert!(note.contains("not pure"), "{note}");
    }
    // purity itself is an ordinary property
    assert_eq!(indcomplex(&["check", "pure", p3], dir.path()).status.code(), Some(1));
}

#[test]
fn usage_and_parse_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["check", "vd", "C(1)"][..],
        &["check", "frobnicate", "C5(1)"],
        &["suite", "no-such-suite"],
        &["family", "3", "5"],
        &["graph", "not-a-graph"],
    ] {
        assert_eq!(indcomplex(args, dir.path()).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn certificate_replay() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c16.json");
    let cert_arg = cert.to_str().unwrap();
    let found = indcomplex(&["check", "shellable", "C16(1,4,8)", "--certificate", cert_arg], dir.path());
    assert_eq!(found.status.code(), Some(0));
    let replay = indcomplex(&["check", "shellable", "C16(1,4,8)", "--verify-only", cert_arg], dir.path());
    assert_eq!(replay.status.code(), Some(0));

    // swapping the first two facets breaks the order
    let mut order: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let list = order["order"].as_array_mut().unwrap();
    list.swap(1, 40);
    std::fs::write(&cert, order.to_string()).unwrap();
    let tampered = indcomplex(&["check", "shellable", "C16(1,4,8)", "--verify-only", cert_arg], dir.path());
    assert_eq!(tampered.status.code(), Some(1));

    std::fs::write(&cert, r#"{"order":[0,0]}"#).unwrap();
    let malformed = indcomplex(&["check", "shellable", "C16(1,4,8)", "--verify-only", cert_arg], dir.path());
    assert_eq!(malformed.status.code(), Some(2));

    let tree = dir.path().join("c5.json");
    let vd = indcomplex(&["check", "vd", "C5(1)", "--certificate", tree.to_str().unwrap()], dir.path());
    assert_eq!(vd.status.code(), Some(0));
    let replay = indcomplex(&["check", "vd", "C5(1)", "--verify-only", tree.to_str().unwrap()], dir.path());
    assert_eq!(replay.status.code(), Some(0));
    let wrong = indcomplex(&["check", "vd", "C7(1)", "--verify-only", tree.to_str().unwrap()], dir.path());
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn default_certificate_location() {
    let dir = tempfile::tempdir().unwrap();
    let out = indcomplex(&["check", "shellable", "C5(1)"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let path = report(&out)["records"][0]["certificates"][0]["path"].as_str().unwrap().to_string();
    assert!(dir.path().join(&path).is_file(), "{path}");
    assert!(path.starts_with("certificates"));
}

#[test]
fn dot_export() {
    let dir = tempfile::tempdir().unwrap();
    for (desc, nodes, edges) in [
        ("C4(1)", 4, 4),
        ("C16(1,4,8)", 16, 40),
        (r#"{"n":2,"edges":[[0,1]]}"#, 2, 1),
    ] {
        let out = indcomplex(&["graph", desc, "--dot"], dir.path());
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("circo") || text.contains("pos="), "circular layout hint");
        assert_eq!(text.matches(" -- ").count(), edges, "{desc}");
        assert_eq!(text.lines().filter(|l| l.contains("[pos=")).count(), nodes, "{desc}");
    }
    let json = indcomplex(&["graph", "C4(1)", "--json"], dir.path());
    assert_eq!(
        String::from_utf8(json.stdout).unwrap().trim(),
        r#"{"n":4,"edges":[[0,1],[0,3],[1,2],[2,3]]}"#
    );
}

#[test]
fn suite_certificates_replay_through_verify_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig {
        cert_dir: Some(dir.path().to_path_buf()),
        ..RunConfig::default()
    };
    let report = run_suite("main-a", &cfg).unwrap();
    assert!(report.pass);
    let mut replayed = 0;
    for r in &report.records {
        for c in &r.certificates {
            let input = c.input.as_ref().unwrap().to_str().unwrap().to_string();
            let replay = verify_only(c.kind, &input, &c.path).unwrap();
            assert_eq!(replay.records[0].status, Status::Pass, "{}", c.path.display());
            replayed += 1;
        }
    }
    assert!(replayed > 300, "{replayed}");
}

fn fingerprint(name: &str, seed: u64) -> Vec<(String, String)> {
    let cfg = RunConfig {
        seed,
        ..RunConfig::default()
    };
    run_suite(name, &cfg)
        .unwrap()
        .records
        .iter()
        .map(|r| (r.input.clone(), serde_json::to_string(&r.verdicts).unwrap()))
        .collect()
}

#[test]
fn seeded_suites_are_reproducible() {
    let a = fingerprint("topp-volkmann", 7);
    assert_eq!(a, fingerprint("topp-volkmann", 7));
    assert_ne!(a, fingerprint("topp-volkmann", 8));
}

#[test]
fn verdicts_do_not_depend_on_thread_count() {
    let run = |threads| {
        let cfg = RunConfig {
            threads,
            ..RunConfig::default()
        };
        let r = run_suite("main-bc", &cfg).unwrap();
        r.records
            .iter()
            .map(|r| (r.input.clone(), serde_json::to_string(&r.verdicts).unwrap()))
            .collect::<Vec<_>>()
    };
    assert_eq!(run(1), run(4));
}
