//! Named suites. Grids up to the stated sizes are exhaustive over labeled
//! graphs; larger grids are sampled from the configured seed.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use indcomplex_core::{
    alpha, boundary_matrices, independence_complex, reduced_homology, verify_shed_tree,
    verify_shelling, CirculantSpec, Complex, ExpansionVector, Face, Graph, HomologyProfile,
    SearchOptions, ShedTree, ShellingCertificate, DEFAULT_FACE_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use crate::check::{decide_cm, decide_shellable, decide_vd, Answer, CheckKind};
use crate::config::RunConfig;
use crate::report::{InstanceRecord, Status, SuiteReport, ELIDE_PASSING_ABOVE};

pub const SUITES: &[&str] = &[
    "topp-volkmann",
    "alpha-product",
    "main-a",
    "main-bc",
    "nonshellable",
    "expansion",
    "circulant-product",
    "chain",
    "homology",
    "paper-milestones",
    "all",
];

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut report = match name {
        "topp-volkmann" => topp_volkmann(cfg),
        "alpha-product" => alpha_product(cfg),
        "main-a" => main_a(cfg),
        "main-bc" => main_bc(cfg),
        "nonshellable" => nonshellable(cfg),
        "expansion" => expansion(cfg),
        "circulant-product" => circulant_product(cfg),
        "chain" => chain(cfg),
        "homology" => homology(cfg),
        "paper-milestones" => milestones(cfg)?,
        "all" => {
            let mut all = SuiteReport::new("all", cfg.seed, cfg.deep, false);
            for sub in SUITES.iter().filter(|&&s| s != "all") {
                all.absorb(run_suite(sub, cfg)?);
            }
            all
        }
        other => bail!("unknown suite {other:?}; known suites: {}", SUITES.join(", ")),
    };
    if let Some(dir) = &cfg.cert_dir {
        report.write_certificates(dir)?;
    }
    report.elapsed = started.elapsed();
    Ok(report)
}

/// Evaluates `check` over `items` on the worker pool and streams the records
/// into a report, in input order.
fn grid<T: Sync>(
    name: &str,
    cfg: &RunConfig,
    items: &[T],
    check: impl Fn(&T, &mut InstanceRecord) -> Result<()> + Sync,
    describe: impl Fn(&T) -> String + Sync,
) -> SuiteReport {
    let mut report = SuiteReport::new(name, cfg.seed, cfg.deep, false);
    let elide = items.len() > ELIDE_PASSING_ABOVE;
    let pool = cfg.pool();
    for chunk in items.chunks(1 << 16) {
        let records: Vec<InstanceRecord> = pool.install(|| {
            chunk
                .par_iter()
                .map(|item| {
                    let started = Instant::now();
                    let mut rec = InstanceRecord::new(String::new());
                    if let Err(e) = check(item, &mut rec) {
                        rec.status = Status::Error;
                        rec.note = Some(format!("{e:#}"));
                    }
                    if !(elide && rec.status == Status::Pass) {
                        rec.input = describe(item);
                    }
                    rec.elapsed = started.elapsed();
                    rec
                })
                .collect()
        });
        for r in records {
            report.push(r, elide);
        }
    }
    report
}

fn graphs_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(Graph::all_labeled).collect()
}

fn pair_name(g: &Graph, h: &Graph) -> String {
    format!("{}[{}]", g.descriptor(), h.descriptor())
}

/// Shellability with the certificate replayed through the verifier.
fn shellable_checked(d: &Complex, opts: &SearchOptions, rec: &mut InstanceRecord, tag: &str) -> Result<Answer<ShellingCertificate>> {
    let (answer, _) = decide_shellable(d, opts)?;
    if let Answer::Yes(cert) = &answer {
        if !verify_shelling(d, cert)? {
            rec.fail(format!("{tag}: shelling certificate rejected"));
        }
        rec.hold_certificate(tag, CheckKind::Shellable, d, cert);
    }
    if matches!(answer, Answer::Unknown) {
        rec.unknown(format!("{tag}: budget exhausted"));
    }
    Ok(answer)
}

fn vd_checked(d: &Complex, opts: &SearchOptions, rec: &mut InstanceRecord, tag: &str) -> Result<Answer<ShedTree>> {
    let (answer, _) = decide_vd(d, opts)?;
    if let Answer::Yes(tree) = &answer {
        if !verify_shed_tree(d, tree) {
            rec.fail(format!("{tag}: shed tree rejected"));
        }
        rec.hold_certificate(tag, CheckKind::Vd, d, tree);
    }
    if matches!(answer, Answer::Unknown) {
        rec.unknown(format!("{tag}: budget exhausted"));
    }
    Ok(answer)
}

/// Fails the record when two decided answers differ; a non-pure complex
/// counts as neither shellable nor vertex decomposable.
fn same<A, B>(rec: &mut InstanceRecord, what: &str, a: &Answer<A>, b: &Answer<B>) {
    rec.verdict(&format!("{what}.base"), a.label())
        .verdict(&format!("{what}.derived"), b.label());
    let unknown = matches!(a, Answer::Unknown) || matches!(b, Answer::Unknown);
    if !unknown && a.is_yes() != b.is_yes() {
        rec.fail(format!("{what}: {} vs {}", a.label(), b.label()));
    }
}

fn topp_volkmann(cfg: &RunConfig) -> SuiteReport {
    let small = graphs_up_to(4);
    let mut pairs: Vec<(Graph, Graph)> = small
        .iter()
        .flat_map(|g| small.iter().map(move |h| (g.clone(), h.clone())))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for k in 0..1000 {
        // at least one factor on five vertices
        let (ng, nh) = match k % 3 {
            0 => (5, 5),
            1 => (5, rng.gen_range(1..=4)),
            _ => (rng.gen_range(1..=4), 5),
        };
        pairs.push((random_graph(&mut rng, ng), random_graph(&mut rng, nh)));
    }
    let mut report = grid(
        "topp-volkmann",
        cfg,
        &pairs,
        |(g, h), rec| {
            let (ig, ih) = (independence_complex(g)?, independence_complex(h)?);
            let product = independence_complex(&g.lex_product(h))?;
            let (lhs, rhs) = (product.is_pure(), ig.is_pure() && ih.is_pure());
            rec.verdict("product_pure", lhs).verdict("factors_pure", rhs);
            if lhs != rhs {
                rec.fail("purity equivalence");
            }
            if lhs {
                let ng = g.vertex_count();
                let projected = product.facets().iter().all(|f| {
                    let shadow: Face = f.iter().map(|v| v % ng).collect();
                    ig.facets().binary_search_by(|x| x.canonical_cmp(&shadow)).is_ok()
                });
                rec.verdict("projection", projected);
                if !projected {
                    rec.fail("facet projection is not a facet of Ind(G)");
                }
            }
            Ok(())
        },
        |(g, h)| pair_name(g, h),
    );
    report.notes.push("exhaustive for n_G, n_H <= 4; 1000 seeded pairs with a 5-vertex factor".into());
    report
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Graph::new(n, edges).expect("valid edges")
}

fn alpha_product(cfg: &RunConfig) -> SuiteReport {
    let graphs = graphs_up_to(5);
    let alphas: Vec<usize> = graphs.iter().map(|g| alpha(g).expect("small graph")).collect();
    let pairs: Vec<(usize, usize)> = (0..graphs.len())
        .flat_map(|i| (0..graphs.len()).map(move |j| (i, j)))
        .collect();
    grid(
        "alpha-product",
        cfg,
        &pairs,
        |&(i, j), rec| {
            let got = alpha(&graphs[i].lex_product(&graphs[j]))?;
            let want = alphas[i] * alphas[j];
            if got != want {
                rec.verdict("alpha", got).verdict("expected", want);
                rec.fail("alpha(G[H]) != alpha(G) alpha(H)");
            }
            Ok(())
        },
        |&(i, j)| pair_name(&graphs[i], &graphs[j]),
    )
}

fn main_a(cfg: &RunConfig) -> SuiteReport {
    let items: Vec<(Graph, usize)> = graphs_up_to(4)
        .into_iter()
        .flat_map(|h| (1..=3).map(move |k| (h.clone(), k)))
        .collect();
    let mut report = grid(
        "main-a",
        cfg,
        &items,
        |(h, k), rec| {
            let opts = cfg.search(1);
            let base = independence_complex(h)?;
            let copies = independence_complex(&Graph::edgeless(*k).lex_product(h))?;
            let a = shellable_checked(&base, &opts, rec, "H-shellable")?;
            let b = shellable_checked(&copies, &opts, rec, "kH-shellable")?;
            same(rec, "shellable", &a, &b);
            let a = vd_checked(&base, &opts, rec, "H-vd")?;
            let b = vd_checked(&copies, &opts, rec, "kH-vd")?;
            same(rec, "vd", &a, &b);
            Ok(())
        },
        |(h, k)| format!("{k}x{}", h.descriptor()),
    );
    report.notes.push("kH built as the lexicographic product E_k[H]".into());
    report
}

fn main_bc(cfg: &RunConfig) -> SuiteReport {
    let items: Vec<(Graph, usize)> = graphs_up_to(5)
        .into_iter()
        .flat_map(|g| [2, 3].map(|m| (g.clone(), m)))
        .collect();
    let mut report = grid(
        "main-bc",
        cfg,
        &items,
        |(g, m), rec| {
            let opts = cfg.search(1);
            let base = independence_complex(g)?;
            let blown = independence_complex(&g.lex_product(&Graph::complete(*m)?))?;
            let a = vd_checked(&base, &opts, rec, "G-vd")?;
            let b = vd_checked(&blown, &opts, rec, "GKm-vd")?;
            same(rec, "vd", &a, &b);
            let a = shellable_checked(&base, &opts, rec, "G-shellable")?;
            let b = shellable_checked(&blown, &opts, rec, "GKm-shellable")?;
            same(rec, "shellable", &a, &b);
            Ok(())
        },
        |(g, m)| format!("{}[K{m}]", g.descriptor()),
    );
    report.notes.push("checked as equivalences in both directions".into());
    report
}

fn nonshellable(cfg: &RunConfig) -> SuiteReport {
    let small = graphs_up_to(4);
    let pairs: Vec<(Graph, Graph)> = small
        .iter()
        .filter(|g| !g.is_edgeless())
        .flat_map(|g| {
            small
                .iter()
                .filter(|h| !h.is_complete())
                .map(move |h| (g.clone(), h.clone()))
        })
        .collect();
    let mut report = grid(
        "nonshellable",
        cfg,
        &pairs,
        |(g, h), rec| {
            let d = independence_complex(&g.lex_product(h))?;
            let answer = shellable_checked(&d, &cfg.search(1), rec, "shellable")?;
            rec.verdict("shellable", answer.label());
            if answer.is_yes() {
                rec.fail("G[H] is shellable");
            }
            Ok(())
        },
        |(g, h)| pair_name(g, h),
    );
    let not_pure = pairs
        .iter()
        .filter(|(g, h)| independence_complex(g).is_ok_and(|d| !d.is_pure()) || independence_complex(h).is_ok_and(|d| !d.is_pure()))
        .count();
    report.notes.push(format!(
        "non-pure Ind(G[H]) counts as not shellable ({not_pure} of {} pairs have a non-pure factor)",
        pairs.len()
    ));
    report
}

fn expansion(cfg: &RunConfig) -> SuiteReport {
    let items: Vec<(Graph, ExpansionVector)> = graphs_up_to(5)
        .into_iter()
        .flat_map(|g| {
            let n = g.vertex_count();
            (0u32..1 << n).map(move |mask| {
                let s = (0..n).map(|i| 1 + (mask >> i & 1) as usize).collect();
                (g.clone(), ExpansionVector::new(s).expect("positive entries"))
            })
        })
        .collect();
    grid(
        "expansion",
        cfg,
        &items,
        |(g, s), rec| {
            let opts = cfg.search(1);
            let base = independence_complex(g)?;
            let expanded = independence_complex(&g.expansion(s)?)?;
            let a = vd_checked(&base, &opts, rec, "G-vd")?;
            let b = vd_checked(&expanded, &opts, rec, "Gs-vd")?;
            same(rec, "vd", &a, &b);
            let a = shellable_checked(&base, &opts, rec, "G-shellable")?;
            let b = shellable_checked(&expanded, &opts, rec, "Gs-shellable")?;
            rec.verdict("shellable.base", a.label())
                .verdict("shellable.derived", b.label());
            if a.is_yes() && b.is_decided() && !b.is_yes() {
                rec.fail("shellability not preserved by expansion");
            }
            Ok(())
        },
        |(g, s)| format!("{}^{:?}", g.descriptor(), s.as_slice()),
    )
}

fn circulant_product(cfg: &RunConfig) -> SuiteReport {
    let specs: Vec<CirculantSpec> = (1..=8).flat_map(CirculantSpec::all_normalized).collect();
    let pairs: Vec<(CirculantSpec, CirculantSpec)> = specs
        .iter()
        .flat_map(|a| specs.iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    let mut report = grid(
        "circulant-product",
        cfg,
        &pairs,
        |(a, b), rec| {
            let c = a.lex_connection(b);
            rec.verdict("connection", c.to_string());
            if c.graph() != a.graph().lex_product(&b.graph()) {
                rec.fail("edge sets differ");
            }
            Ok(())
        },
        |(a, b)| format!("{a}[{b}]"),
    );
    let complete: Vec<usize> = (1..=12).collect();
    let sub = grid(
        "complete-circulants",
        cfg,
        &complete,
        |&n, rec| {
            let spec = CirculantSpec::new(n, (1..=n as i64 / 2).collect::<Vec<_>>())?;
            if spec.graph() != Graph::complete(n)? {
                rec.fail("circulant with full connection set is not complete");
            }
            Ok(())
        },
        |&n| format!("C{n}(1..{})", n / 2),
    );
    report.extend(sub.records);
    report
}

/// The shedding condition with the dimension requirement on the deletion
/// dropped (purity of deletion and link kept), decided without memo.
fn vd_without_dimension_rule(d: &Complex, memo: &mut HashMap<Vec<Face>, bool>) -> bool {
    if d.facets().len() <= 1 {
        return true;
    }
    if let Some(&v) = memo.get(d.facets()) {
        return v;
    }
    let v = d.vertices().iter().any(|x| {
        let (Ok(del), Ok(link)) = (d.deletion(x), d.link(Face::singleton(x))) else {
            return false;
        };
        del.is_pure()
            && link.is_pure()
            && vd_without_dimension_rule(&del, memo)
            && vd_without_dimension_rule(&link, memo)
    });
    memo.insert(d.facets().to_vec(), v);
    v
}

fn chain(cfg: &RunConfig) -> SuiteReport {
    let graphs: Vec<Graph> = graphs_up_to(6)
        .into_iter()
        .filter(|g| independence_complex(g).is_ok_and(|d| d.is_pure()))
        .collect();
    let disagreements = AtomicUsize::new(0);
    let mut report = grid(
        "chain",
        cfg,
        &graphs,
        |g, rec| {
            let d = independence_complex(g)?;
            let opts = cfg.search(1);
            let vd = vd_checked(&d, &opts, rec, "vd")?;
            let sh = shellable_checked(&d, &opts, rec, "shellable")?;
            let cm = decide_cm(&d, &cfg.homology())?;
            rec.verdict("vd", vd.label())
                .verdict("shellable", sh.label())
                .verdict("cm", cm.label());
            if vd.is_yes() && sh.is_decided() && !sh.is_yes() {
                rec.fail("vertex decomposable but not shellable");
            }
            if sh.is_yes() && cm.is_decided() && !cm.is_yes() {
                rec.fail("shellable but not Cohen-Macaulay");
            }
            if vd.is_decided() {
                let relaxed = vd_without_dimension_rule(&d, &mut HashMap::new());
                rec.verdict("vd_relaxed", relaxed);
                if relaxed != vd.is_yes() {
                    disagreements.fetch_add(1, Ordering::Relaxed);
                    rec.verdict("readings_disagree", true);
                    rec.note = Some("pure and relaxed shedding readings disagree".into());
                }
            }
            Ok(())
        },
        |g| g.descriptor(),
    );
    report.notes.push(format!(
        "{} pure Ind(G) with n <= 6; disagreements between the pure and relaxed shedding readings: {}",
        graphs.len(),
        disagreements.into_inner()
    ));
    report
}

fn profile_ok(d: &Complex, profile: &HomologyProfile, rec: &mut InstanceRecord) -> Result<()> {
    let maps = boundary_matrices(d, DEFAULT_FACE_CAP)?;
    let squares = maps.windows(2).all(|w| w[0].composes_to_zero(&w[1]));
    if !squares {
        rec.fail("boundary maps do not compose to zero");
    }
    if !profile.satisfies_euler_relation() {
        rec.fail("Euler relation fails");
    }
    Ok(())
}

fn homology(cfg: &RunConfig) -> SuiteReport {
    let mut inputs: Vec<(String, Graph)> = graphs_up_to(6).into_iter().map(|g| (g.descriptor(), g)).collect();
    for spec in ["C5(1)", "C16(1,4,8)"] {
        let c: CirculantSpec = spec.parse().expect("literal spec");
        inputs.push((spec.to_string(), c.graph()));
    }
    let c5 = Mutex::new(None);
    let mut report = grid(
        "homology",
        cfg,
        &inputs,
        |(name, g), rec| {
            let d = independence_complex(g)?;
            let profile = reduced_homology(&d, &cfg.homology())?;
            profile_ok(&d, &profile, rec)?;
            if name == "C5(1)" {
                rec.verdict("homology", &profile);
                *c5.lock().expect("no poisoning") = Some(serde_json::to_string(&profile)?);
                if (profile.betti(0), profile.betti(1)) != (0, 1) {
                    rec.fail("Ind(C5(1)) should have b0 = 0, b1 = 1");
                }
            }
            Ok(())
        },
        |(name, _)| name.clone(),
    );
    match c5.into_inner().expect("no poisoning") {
        Some(p) => report.notes.push(format!("Ind(C5(1)) profile: {p}")),
        None => report.extend(vec![missing("C5(1)", "profile of Ind(C5(1)) was not computed")]),
    }
    report
}

fn missing(input: &str, why: &str) -> InstanceRecord {
    let mut rec = InstanceRecord::new(input);
    rec.fail(why);
    rec
}

type Regression = BTreeMap<String, BTreeMap<String, Value>>;

fn load_regression(cfg: &RunConfig) -> Result<Regression> {
    match std::fs::read_to_string(&cfg.regression) {
        Ok(text) => serde_json::from_str(&text).with_context(|| format!("parsing {}", cfg.regression.display())),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Regression::new()),
        Err(e) => Err(e).with_context(|| format!("reading {}", cfg.regression.display())),
    }
}

/// Compares freshly computed constants with the regression file, or records
/// them when blessing.
fn regress(store: &mut Regression, cfg: &RunConfig, spec: &str, key: &str, value: Value, rec: &mut InstanceRecord) {
    let entry = store.entry(spec.to_string()).or_default();
    rec.verdict(key, &value);
    if cfg.bless {
        entry.insert(key.to_string(), value);
        return;
    }
    match entry.get(key) {
        Some(old) if *old == value => {}
        Some(old) => rec.fail(format!("{key} regressed: stored {old}, computed {value}")),
        None => rec.fail(format!("{key} has no blessed value; rerun with --bless")),
    }
}

fn milestone_constants(store: &mut Regression, cfg: &RunConfig, spec: &str, rec: &mut InstanceRecord) -> Result<Complex> {
    let c: CirculantSpec = spec.parse()?;
    let g = c.graph();
    let d = independence_complex(&g)?;
    regress(store, cfg, spec, "alpha", alpha(&g)?.into(), rec);
    regress(store, cfg, spec, "facets", d.facets().len().into(), rec);
    regress(store, cfg, spec, "f_vector", serde_json::to_value(d.f_vector(DEFAULT_FACE_CAP)?)?, rec);
    if !d.is_pure() {
        rec.fail("Ind is not pure");
    }
    Ok(d)
}

fn milestones(cfg: &RunConfig) -> Result<SuiteReport> {
    let mut store = load_regression(cfg)?;
    let mut report = SuiteReport::new("paper-milestones", cfg.seed, cfg.deep, false);
    let timed = |f: &mut dyn FnMut(&mut InstanceRecord) -> Result<()>, name: &str| {
        let started = Instant::now();
        let mut rec = InstanceRecord::new(name);
        if let Err(e) = f(&mut rec) {
            rec.status = Status::Error;
            rec.note = Some(format!("{e:#}"));
        }
        rec.elapsed = started.elapsed();
        rec
    };
    let opts = cfg.search(cfg.threads);

    let c16 = "C16(1,4,8)";
    report.extend(vec![timed(
        &mut |rec| {
            let d = milestone_constants(&mut store, cfg, c16, rec)?;
            let profile = reduced_homology(&d, &cfg.homology())?;
            profile_ok(&d, &profile, rec)?;
            regress(&mut store, cfg, c16, "homology", serde_json::to_value(&profile)?, rec);
            let sh = shellable_checked(&d, &opts, rec, "shellable")?;
            rec.verdict("shellable", sh.label());
            if !sh.is_yes() {
                rec.fail(format!("expected shellable, got {}", sh.label()));
            }
            let vd = vd_checked(&d, &opts, rec, "vd")?;
            rec.verdict("vd", vd.label());
            if !matches!(vd, Answer::No) {
                rec.fail(format!("expected an exhaustive no for vd, got {}", vd.label()));
            }
            Ok(())
        },
        c16,
    )]);

    let deep: [(&str, &str, bool); 3] = [
        ("C20(1,5,10)", "vd", false),
        ("C24(1,6,12)", "cm", true),
        ("C24(1,6,12)", "vd", false),
    ];
    for (spec, kind, expected) in deep {
        let name = format!("{spec} {kind}");
        if !cfg.deep {
            let mut rec = InstanceRecord::new(name);
            rec.status = Status::Skipped;
            rec.note = Some("deep milestone, rerun with --deep".into());
            report.extend(vec![rec]);
            continue;
        }
        report.extend(vec![timed(
            &mut |rec| {
                let d = milestone_constants(&mut store, cfg, spec, rec)?;
                let answer = match kind {
                    "cm" => decide_cm(&d, &cfg.homology())?.label(),
                    _ => vd_checked(&d, &opts, rec, "vd")?.label(),
                };
                rec.verdict(kind, answer);
                match answer {
                    "unknown" => rec.unknown("budget exhausted; raise --timeout"),
                    a if (a == "yes") != expected => rec.fail(format!("expected {}, got {a}", if expected { "yes" } else { "no" })),
                    _ => {}
                }
                Ok(())
            },
            &name,
        )]);
    }
    if cfg.bless {
        let text = serde_json::to_string_pretty(&store)? + "\n";
        std::fs::write(&cfg.regression, text).with_context(|| format!("writing {}", cfg.regression.display()))?;
        report.notes.push(format!("blessed {}", cfg.regression.display()));
    }
    Ok(report)
}

/// Budgeted attempts at `Ind(C_{4s}(1,s,2s))` for `s_min..=s_max`.
pub fn explore_family(s_min: usize, s_max: usize, cfg: &RunConfig) -> Result<SuiteReport> {
    if s_min < 4 || s_max < s_min {
        bail!("family range must satisfy 4 <= s-min <= s-max");
    }
    if 4 * s_max > indcomplex_core::VertexSet::CAPACITY {
        bail!("s-max is limited to {}", indcomplex_core::VertexSet::CAPACITY / 4);
    }
    let started = Instant::now();
    let mut report = SuiteReport::new("family", cfg.seed, cfg.deep, true);
    for s in s_min..=s_max {
        let spec = CirculantSpec::new(4 * s, [1, s as i64, 2 * s as i64])?;
        let began = Instant::now();
        let mut rec = InstanceRecord::new(spec.to_string());
        let outcome = (|| -> Result<()> {
            let d = independence_complex(&spec.graph())?;
            rec.verdict("facets", d.facets().len()).verdict("pure", d.is_pure());
            let opts = cfg.search(cfg.threads);
            let sh = shellable_checked(&d, &cfg.search(1), &mut rec, "shellable")?;
            let vd = vd_checked(&d, &opts, &mut rec, "vd")?;
            let cm = decide_cm(&d, &cfg.homology()).unwrap_or(Answer::Unknown);
            rec.verdict("shellable", sh.label())
                .verdict("vd", vd.label())
                .verdict("cm", cm.label());
            // known values for the first three members
            let known: &[(&str, &str)] = match s {
                4 => &[("shellable", "yes"), ("vd", "no")],
                5 => &[("vd", "no")],
                6 => &[("vd", "no"), ("cm", "yes")],
                _ => &[],
            };
            for &(prop, want) in known {
                let got = rec.verdicts[prop].as_str().unwrap_or_default().to_string();
                if got != "unknown" && got != want {
                    rec.fail(format!("{prop}: expected {want}, got {got}"));
                }
            }
            if [sh.label(), vd.label(), cm.label()].contains(&"unknown") {
                rec.unknown("some property undecided within the budget");
            }
            Ok(())
        })();
        if let Err(e) = outcome {
            rec.status = Status::Error;
            rec.note = Some(format!("{e:#}"));
        }
        rec.elapsed = began.elapsed();
        report.extend(vec![rec]);
    }
    report.notes.push(format!(
        "per-check budget: {}",
        cfg.timeout.map_or("none".to_string(), |t: Duration| format!("{}s", t.as_secs_f64()))
    ));
    if let Some(dir) = &cfg.cert_dir {
        report.write_certificates(dir)?;
    }
    report.elapsed = started.elapsed();
    Ok(report)
}
