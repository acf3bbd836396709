//! One line per acceptance criterion, all run from a single test so the shared wall-time
//! budget is measured over the whole suite.

use lie4::catalog::{self, FamilyId};
use lie4::io::ReportDocument;
use lie4::product::{self, tables, Certificate, PcType, SearchBudget};
use lie4::rational::{q, qf};
use lie4::report::{Report, Status};
use lie4::verify::{self, VerifyOptions};
use lie4::{complex, forms, par};
use std::time::{Duration, Instant};

const CATALOG_LIMIT: Duration = Duration::from_secs(1);
const ROUND_TRIP_LIMIT: Duration = Duration::from_secs(30);
const SUITE_LIMIT: Duration = Duration::from_secs(120);
const MIN_GRID: usize = 60;
const BASIS_CHANGES: usize = 20;
const THREAD_COUNTS: [usize; 3] = [1, 2, 8];

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_report(r: &Report) -> Outcome {
    let problems = r.problems();
    let mut detail = format!("{} checks, {} fail, {} undecided", r.checks.len(), r.count(Status::Fail), r.count(Status::Undecided));
    for c in problems.iter().take(6) {
        detail.push_str(&format!("\n      {:?} {}: {}", c.status, c.id, c.detail));
    }
    Outcome { ok: r.passed() && !r.checks.is_empty(), detail }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let mut o = f();
    let el = t.elapsed();
    o.detail = format!("{:.2}s; {}", el.as_secs_f64(), o.detail);
    if let Some(l) = limit {
        if el > l {
            o.ok = false;
            o.detail.push_str(&format!(" (over {}s)", l.as_secs()));
        }
    }
    o
}

fn c1() -> Outcome {
    let n = catalog::grid_instances().len();
    let mut o = from_report(&verify::verify_catalog());
    o.ok &= n >= MIN_GRID;
    o.detail = format!("{n} instances; {}", o.detail);
    o
}

fn c3() -> Outcome {
    let opts = VerifyOptions { basis_changes: BASIS_CHANGES, ..Default::default() };
    let r = verify::verify_round_trip(&opts);
    let mismatch = r.checks.iter().any(|c| c.detail.contains("InternalMismatch") || c.detail.contains("failed verification"));
    let mut o = from_report(&r);
    o.ok &= !mismatch;
    o
}

/// pc table plus a direct look at the d'4,λ certificates.
fn c6() -> Outcome {
    let budget = SearchBudget::default();
    let r = tables::verify_table_pc(&budget);
    let mut o = from_report(&r);
    o.ok &= r.count(Status::Undecided) == 0;
    let e3 = vec![q(0), q(0), q(0), q(1)];
    for lam in [q(0), qf(1, 2), q(1), q(2)] {
        let g = catalog::make(FamilyId::D4pLambda, std::slice::from_ref(&lam)).unwrap();
        let forced = product::forced_vector_certificate(&g, &e3);
        if !matches!(forced, Certificate::ForcedVector { .. }) {
            o.ok = false;
            o.detail.push_str(&format!("\n      d'4,{lam}: e3 not forced ({})", forced.kind()));
        }
        for t in PcType::ALL {
            let s = product::paracomplex_search(&g, t, &budget).unwrap();
            if !s.found.is_empty() || !s.certificate.decided_empty() {
                o.ok = false;
                o.detail.push_str(&format!("\n      d'4,{lam} {}: {}", t.tag(), s.certificate.kind()));
            }
        }
    }
    o
}

/// Every R2 ⋈ R2 structure found anywhere on the grid lives on a two-step solvable algebra.
fn c7() -> Outcome {
    let budget = SearchBudget::default();
    let fams = catalog::grid_instances_dim(4);
    let rows = par::map(&fams, |f| {
        let g = f.make().unwrap();
        let s = product::paracomplex_search(&g, PcType::R2R2, &budget).unwrap();
        let d = g.derived();
        let two_step = g.bracket_spaces(&d, &d).dim() == 0;
        (f.to_string(), s.found.len(), two_step)
    });
    let hits: Vec<_> = rows.iter().filter(|r| r.1 > 0).collect();
    let bad: Vec<_> = hits.iter().filter(|r| !r.2).map(|r| r.0.clone()).collect();
    Outcome {
        ok: !hits.is_empty() && bad.is_empty(),
        detail: format!("{} instances carry R2 x R2 structures; violations: {:?}", hits.len(), bad),
    }
}

fn c14(start: Instant) -> Outcome {
    let opts = VerifyOptions::default();
    let digest = lie4::io::digest(&serde_json::to_vec(&lie4::external::catalog_document()).unwrap());
    let outs: Vec<String> = THREAD_COUNTS
        .iter()
        .map(|&n| {
            let reps = par::with_threads(Some(n), || verify::run_table("all", &opts).unwrap());
            ReportDocument::new("verify --table all", digest.clone(), Some(opts.seed), &reps).to_json()
        })
        .collect();
    let same = outs.windows(2).all(|w| w[0] == w[1]);
    let doc = ReportDocument::from_json(&outs[0]).unwrap();
    let mut names: Vec<&str> = doc.tables.iter().flat_map(|t| t.checks.iter().map(|c| c.name.as_str())).collect();
    let total = names.len();
    names.sort_unstable();
    names.dedup();
    let wall = start.elapsed();
    Outcome {
        ok: same && doc.consistent() && names.len() == total && wall < SUITE_LIMIT,
        detail: format!(
            "threads {:?} identical: {same}; {} bytes; unique names {}/{total}; suite wall {:.1}s (limit {}s)",
            THREAD_COUNTS,
            outs[0].len(),
            names.len(),
            wall.as_secs_f64(),
            SUITE_LIMIT.as_secs()
        ),
    }
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let budget = SearchBudget::default();
    let opts = VerifyOptions::default();
    let mut lines = Vec::new();
    let mut run = |k: usize, name: &str, o: Outcome| {
        let tag = if o.ok { "PASS" } else { "FAIL" };
        let line = format!("[{tag}] criterion {k:>2} {name}: {}", o.detail);
        println!("{line}");
        lines.push((k, o.ok, line));
    };
    run(1, "catalog soundness", timed(Some(CATALOG_LIMIT), c1));
    run(2, "derivation dimensions", timed(None, || from_report(&verify::verify_derivations())));
    run(3, "classification round trip", timed(Some(ROUND_TRIP_LIMIT), c3));
    run(4, "separation", timed(None, || from_report(&verify::verify_separation(&opts))));
    run(5, "commutator classes", timed(None, || from_report(&verify::verify_table_comm())));
    run(6, "paracomplex table", timed(None, c6));
    run(7, "two-step property", timed(None, c7));
    run(8, "three-dimensional subalgebras", timed(None, || from_report(&tables::verify_table_13())));
    run(9, "semidirect statements", timed(None, || from_report(&tables::verify_semidirect_props())));
    run(10, "Manin triples", timed(None, || from_report(&forms::verify_table_manin(&budget))));
    run(11, "complex product structures", timed(None, || from_report(&complex::verify_cps_all(&budget))));
    run(12, "matrix realizations", timed(None, || from_report(&verify::verify_appendix1())));
    run(13, "name dictionaries", timed(None, || from_report(&verify::verify_appendix2())));
    run(14, "determinism and wall time", c14(start));

    let failed: Vec<usize> = lines.iter().filter(|l| !l.1).map(|l| l.0).collect();
    println!("acceptance: {}/{} criteria pass", lines.len() - failed.len(), lines.len());
    assert!(failed.is_empty(), "failing criteria: {failed:?}\n{}", lines.iter().map(|l| l.2.as_str()).collect::<Vec<_>>().join("\n"));
}
