//! One line per acceptance criterion. Runs as a plain binary so the lines
//! always reach the test log.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use complexon::rational::rat;
use complexon::HomogeneousComplexon;
use complexon_harness::bounds::cech_cycle_threshold;
use complexon_harness::experiments::{self, EXPERIMENTS};
use complexon_harness::Report;

/// Criteria that fail on this implementation, with the reason. Each is
/// recorded in the decision ledger.
const EXPECTED_FAILURES: &[(usize, &str)] = &[
    (3, "facet products double count shared faces; the identity does not hold as written"),
    (11, "upper closure of H(n, faceted W) keeps all three edges without the triangle with positive probability; K(n, flag) never does"),
];

struct Outcome {
    id: usize,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn run_default(name: &str) -> (Report, Duration) {
    let cfg = experiments::defaults_for(name).expect("known experiment");
    let start = Instant::now();
    let report = experiments::run(&cfg).unwrap_or_else(|e| panic!("{name}: {e:#}"));
    (report, start.elapsed())
}

fn summary(r: &Report) -> String {
    let a = r.aggregate();
    format!(
        "{}: {} checked, {} pass, {} vacuous, {} fail, max measured {:.4e}",
        r.experiment, a.checked, a.passed, a.vacuous, a.failed, a.max_measured
    )
}

/// Criterion backed by one experiment at its default configuration.
fn by_experiment(id: usize, title: &'static str, name: &str, limit_secs: u64) -> Outcome {
    let (report, elapsed) = run_default(name);
    let within = elapsed <= Duration::from_secs(limit_secs);
    let consistent = report.statuses_consistent();
    Outcome {
        id,
        title,
        pass: report.all_pass() && within && consistent,
        detail: format!(
            "{}{}{}",
            summary(&report),
            if within { String::new() } else { format!(", over the {limit_secs} s limit") },
            if consistent { "" } else { ", statuses inconsistent with rows" }
        ),
        elapsed,
    }
}

fn faceting_value() -> Outcome {
    let start = Instant::now();
    let h = HomogeneousComplexon::new(vec![rat(1, 2), rat(1, 1)]).unwrap();
    let v = h.facet().prob(2);
    let elapsed = start.elapsed();
    let (report, _) = run_default("faceting");
    let pass = v == rat(1, 8) && elapsed < Duration::from_millis(1) && report.all_pass();
    Outcome {
        id: 1,
        title: "faceted homogeneous complexon, dimension 2 value 1/8",
        pass,
        detail: format!("value {v}, computed in {elapsed:?}; {}", summary(&report)),
        elapsed,
    }
}

fn cech() -> Outcome {
    let mut o = by_experiment(13, "bouquet samples have no induced 4..8-cycles", "cech-bouquet", 180);
    let t = cech_cycle_threshold(0.5).unwrap();
    o.pass &= t == 12;
    o.detail = format!("threshold {t}; {}", o.detail);
    o
}

fn determinism() -> Outcome {
    let start = Instant::now();
    let mut differing = Vec::new();
    for e in EXPERIMENTS {
        let cfg = (e.quick)();
        let a = experiments::run(&cfg).unwrap_or_else(|err| panic!("{}: {err:#}", e.name)).to_csv();
        let b = experiments::run(&cfg).unwrap_or_else(|err| panic!("{}: {err:#}", e.name)).to_csv();
        if a != b {
            differing.push(e.name);
        }
    }
    Outcome {
        id: 14,
        title: "identical CSV bytes on rerun with the same config and seed",
        pass: differing.is_empty(),
        detail: format!("{} experiments at reduced size, differing: {differing:?}", EXPERIMENTS.len()),
        elapsed: start.elapsed(),
    }
}

fn main() -> ExitCode {
    let outcomes = vec![
        faceting_value(),
        by_experiment(2, "t(F, K) = t(F, pixel(K)) on all pairs up to 4 vertices", "pixel-consistency", 120),
        by_experiment(3, "t(F, W) = t(faceted F, faceted W) for random steps", "faceted-identity", 120),
        by_experiment(4, "K(3, flag(1/2)) frequencies within 4 SE of induced densities", "ind-sample", 60),
        by_experiment(5, "counting lemma inequalities, 50 step pairs", "counting-lemma", 300),
        by_experiment(6, "inclusion-exclusion equals induced density", "inclusion-exclusion", 120),
        by_experiment(7, "heuristic cut norm against exhaustive search", "cutnorm-oracle", 60),
        by_experiment(8, "disjoint-set cut norm sandwich", "disjoint-sandwich", 60),
        by_experiment(9, "sampling lemma bound and decreasing medians", "sampling-lemma", 600),
        by_experiment(10, "closures of H(n, W) with W on triples only", "ul-convergence", 60),
        by_experiment(11, "three sampling routes agree within TV 0.01", "hypergraph-equivalence", 120),
        by_experiment(12, "block permutations leave densities and distance unchanged", "permutation-invariance", 60),
        cech(),
        determinism(),
    ];
    let mut unexpected = 0;
    for o in &outcomes {
        let expected = EXPECTED_FAILURES.iter().find(|(id, _)| *id == o.id);
        let verdict = match (o.pass, expected) {
            (true, None) => "PASS".to_string(),
            (true, Some(_)) => "PASS (listed as an expected failure)".to_string(),
            (false, Some((_, why))) => format!("FAIL (expected, see ledger: {why})"),
            (false, None) => {
                unexpected += 1;
                "FAIL".to_string()
            }
        };
        println!(
            "criterion {:>2} [{:>8.2?}] {verdict}: {} | {}",
            o.id, o.elapsed, o.title, o.detail
        );
    }
    let fails: Vec<usize> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    println!("acceptance: {} of {} criteria pass; failing {fails:?}", outcomes.len() - fails.len(), outcomes.len());
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
