//! The ten acceptance criteria, each timed against its limit. One
//! PASS/FAIL line per criterion is printed; run with `--nocapture` to see them.

use std::time::{Duration, Instant};

use oddsymp::par::Exec;
use oddsymp::report::VerificationReport;
use oddsymp::suite::{default_grid, Job, DEFAULT_SEED};

struct Criterion {
    id: u32,
    name: &'static str,
    checks: &'static [&'static str],
    limit: Duration,
    /// Whether the limit applies to each job separately rather than the total.
    per_job: bool,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        name: "oracle agrees with the bialternant (n=1 cap 6, n=2 cap 7)",
        checks: &["oracle"],
        limit: Duration::from_secs(60),
        per_job: false,
    },
    Criterion {
        id: 2,
        name: "denominator formulas, n = 1, 2, 3",
        checks: &["osp-den", "sp-den", "proctor-den"],
        limit: Duration::from_secs(30),
        per_job: false,
    },
    Criterion {
        id: 3,
        name: "z = 1 specialization equals Proctor's formula, |λ| ≤ 4, n ≤ 3",
        checks: &["proctor"],
        limit: Duration::from_secs(60),
        per_job: false,
    },
    Criterion {
        id: 4,
        name: "principal specialization product, |λ| ≤ 4, n ≤ 3",
        checks: &["principal"],
        limit: Duration::from_secs(60),
        per_job: false,
    },
    Criterion {
        id: 5,
        name: "BKW identity on six (m, n, r) cases",
        checks: &["bkw"],
        limit: Duration::from_secs(120),
        per_job: true,
    },
    Criterion {
        id: 6,
        name: "reduction lemma, n and r in 1..=3",
        checks: &["reduction-osp", "reduction-sp"],
        limit: Duration::from_secs(120),
        per_job: false,
    },
    Criterion {
        id: 7,
        name: "key lemma: 20 exact trials at n = 1, 2, 3 and symbolic n = 1",
        checks: &["key-lemma", "key-lemma-symbolic"],
        limit: Duration::from_secs(60),
        per_job: false,
    },
    Criterion {
        id: 8,
        name: "Cauchy determinants n = 1..4 and Cauchy–Binet",
        checks: &["cauchy1", "cauchy2", "cauchy-binet"],
        limit: Duration::from_secs(30),
        per_job: false,
    },
    Criterion {
        id: 9,
        name: "spot values",
        checks: &["spot"],
        limit: Duration::from_secs(30),
        per_job: false,
    },
    Criterion {
        id: 10,
        name: "property suites over the grids",
        checks: &["symmetry", "z-minus-one"],
        limit: Duration::from_secs(120),
        per_job: false,
    },
];

fn jobs(c: &Criterion) -> Vec<Job> {
    c.checks
        .iter()
        .flat_map(|name| default_grid(name).unwrap())
        .map(|mut j| {
            j.seed = DEFAULT_SEED;
            j
        })
        .collect()
}

fn run(c: &Criterion) -> (bool, String) {
    let start = Instant::now();
    let reports: Vec<VerificationReport> = jobs(c).iter().map(|j| j.run(Exec::default())).collect();
    let total = start.elapsed();
    let mut problems = Vec::new();
    for r in &reports {
        if !r.pass {
            problems.push(format!("{} {}: {}", r.check, r.params, r.detail));
        }
        if c.per_job && Duration::from_secs_f64(r.elapsed_ms / 1e3) > c.limit {
            problems.push(format!("{} {} took {:.1} ms", r.check, r.params, r.elapsed_ms));
        }
    }
    if !c.per_job && total > c.limit {
        problems.push(format!("total {:.2?} over the limit", total));
    }
    let scope = if c.per_job { "each" } else { "total" };
    let line = format!(
        "{} criterion {:>2}: {} [{} reports, {:.2?}, limit {:?} {}]",
        if problems.is_empty() { "PASS" } else { "FAIL" },
        c.id,
        c.name,
        reports.len(),
        total,
        c.limit,
        scope
    );
    let detail = if problems.is_empty() {
        line
    } else {
        format!("{line}\n    {}", problems.join("\n    "))
    };
    (problems.is_empty(), detail)
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    println!();
    for c in CRITERIA {
        let (ok, line) = run(c);
        println!("{line}");
        if !ok {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
