//! Named checks, their default grids, and the full acceptance run.

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::characters::{
    osp_char, osp_den_identity, osp_vars, proctor_den_identity, q_integer, q_vars, s_to_q,
    schur, sp_den_identity, x_vars,
};
use crate::identities::{
    verify_bkw_with, verify_cauchy_binet_with, verify_key_lemma, verify_key_lemma_symbolic,
    verify_osp_vs_oracle_with, verify_principal_with, verify_proctor_with,
    verify_reduction_osp_with, verify_reduction_sp_with, verify_symmetry_with, verify_z_minus_one,
};
use crate::laurent::LaurentPoly;
use crate::linalg::{cauchy_det_check, CauchyVariant};
use crate::par::Exec;
use crate::partition::Partition;
use crate::report::{Outcome, VerificationReport};

pub const DEFAULT_SEED: u64 = 7;

/// Every check name understood by [`run_check`].
pub const CHECKS: &[&str] = &[
    "oracle",
    "osp-den",
    "sp-den",
    "proctor-den",
    "proctor",
    "principal",
    "bkw",
    "reduction-osp",
    "reduction-sp",
    "key-lemma",
    "key-lemma-symbolic",
    "cauchy1",
    "cauchy2",
    "cauchy-binet",
    "spot",
    "symmetry",
    "z-minus-one",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown check {0:?}; known checks: {list}", list = CHECKS.join(", "))]
    UnknownCheck(String),
    #[error("check {check} needs --{flag}")]
    MissingParam { check: String, flag: &'static str },
}

/// Parameters for one run of a check. `None` fields fall back to the
/// check's default grid.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckArgs {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub r: Option<u32>,
    pub trials: Option<usize>,
    pub degree: Option<u32>,
    pub seed: Option<u64>,
}

/// A fully specified check invocation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Job {
    pub check: String,
    pub n: usize,
    pub m: usize,
    pub r: u32,
    pub trials: usize,
    pub degree: u32,
    pub seed: u64,
}

impl Job {
    fn new(check: &str) -> Self {
        Job {
            check: check.to_string(),
            n: 0,
            m: 0,
            r: 0,
            trials: 0,
            degree: 0,
            seed: DEFAULT_SEED,
        }
    }

    fn n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    fn m(mut self, m: usize) -> Self {
        self.m = m;
        self
    }

    fn r(mut self, r: u32) -> Self {
        self.r = r;
        self
    }

    fn trials(mut self, t: usize) -> Self {
        self.trials = t;
        self
    }

    fn degree(mut self, d: u32) -> Self {
        self.degree = d;
        self
    }

    pub fn run(&self, exec: Exec) -> VerificationReport {
        let Job { n, m, r, trials, degree, seed, .. } = *self;
        match self.check.as_str() {
            "oracle" => verify_osp_vs_oracle_with(n, degree, exec),
            "osp-den" => osp_den_identity(n),
            "sp-den" => sp_den_identity(n),
            "proctor-den" => proctor_den_identity(n),
            "proctor" => verify_proctor_with(n, degree, exec),
            "principal" => verify_principal_with(n, degree, exec),
            "bkw" => verify_bkw_with(m, n, r, exec),
            "reduction-osp" => verify_reduction_osp_with(n, r, exec),
            "reduction-sp" => verify_reduction_sp_with(n, r, exec),
            "key-lemma" => verify_key_lemma(n, trials, seed),
            "key-lemma-symbolic" => verify_key_lemma_symbolic(n),
            "cauchy1" => cauchy_det_check(n, CauchyVariant::Difference),
            "cauchy2" => cauchy_det_check(n, CauchyVariant::OneMinus),
            "cauchy-binet" => verify_cauchy_binet_with(trials, seed, exec),
            "spot" => spot_values(),
            "symmetry" => verify_symmetry_with(n, degree, exec),
            "z-minus-one" => verify_z_minus_one(n, degree),
            other => unreachable!("job built for unknown check {other}"),
        }
    }
}

/// The acceptance grid for one check.
pub fn default_grid(check: &str) -> Result<Vec<Job>, SuiteError> {
    let j = || Job::new(check);
    let ns = |range: std::ops::RangeInclusive<usize>| range.map(|n| j().n(n)).collect::<Vec<_>>();
    Ok(match check {
        "oracle" | "z-minus-one" => vec![j().n(1).degree(6), j().n(2).degree(7)],
        "osp-den" | "sp-den" | "proctor-den" => ns(1..=3),
        "proctor" | "principal" => (0..=3).map(|n| j().n(n).degree(4)).collect(),
        "symmetry" => (1..=3).map(|n| j().n(n).degree(6)).collect(),
        "bkw" => [(1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 2, 1), (1, 2, 2), (2, 2, 1)]
            .into_iter()
            .map(|(m, n, r)| j().m(m).n(n).r(r))
            .collect(),
        "reduction-osp" | "reduction-sp" => (1..=3)
            .flat_map(|n| (1..=3).map(move |r| Job::new(check).n(n).r(r)))
            .collect(),
        "key-lemma" => (1..=3).map(|n| j().n(n).trials(20)).collect(),
        "key-lemma-symbolic" => vec![j().n(1)],
        "cauchy1" | "cauchy2" => ns(1..=4),
        "cauchy-binet" => vec![j().trials(50)],
        "spot" => vec![j()],
        other => return Err(SuiteError::UnknownCheck(other.to_string())),
    })
}

fn uses(check: &str) -> &'static [&'static str] {
    match check {
        "oracle" | "z-minus-one" | "proctor" | "principal" | "symmetry" => &["n", "degree"],
        "bkw" => &["m", "n", "r"],
        "reduction-osp" | "reduction-sp" => &["n", "r"],
        "key-lemma" => &["n", "trials", "seed"],
        "cauchy-binet" => &["trials", "seed"],
        "spot" => &[],
        _ => &["n"],
    }
}

/// Jobs for `check` under `args`: the default grid filtered by the given
/// flags, or a single job built from the flags when the grid has no match.
pub fn plan(check: &str, args: &CheckArgs) -> Result<Vec<Job>, SuiteError> {
    let grid = default_grid(check)?;
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let keep = |job: &Job| {
        args.n.is_none_or(|v| v == job.n)
            && args.m.is_none_or(|v| v == job.m)
            && args.r.is_none_or(|v| v == job.r)
            && args.degree.is_none_or(|v| v == job.degree)
    };
    let mut jobs: Vec<Job> = grid.iter().filter(|g| keep(g)).cloned().collect();
    for job in &mut jobs {
        job.seed = seed;
        if let Some(t) = args.trials {
            job.trials = t;
        }
    }
    if !jobs.is_empty() {
        return Ok(jobs);
    }
    let template = &grid[0];
    let need = |flag: &'static str, v: Option<usize>, fallback: usize| -> Result<usize, SuiteError> {
        match v {
            Some(v) => Ok(v),
            None if uses(check).contains(&flag) && flag != "degree" && flag != "trials" => {
                Err(SuiteError::MissingParam {
                    check: check.to_string(),
                    flag,
                })
            }
            None => Ok(fallback),
        }
    };
    let n = need("n", args.n, template.n)?;
    let degree = match args.degree {
        Some(d) => d,
        None if check == "oracle" || check == "z-minus-one" => crate::series::default_cap(n),
        None => template.degree,
    };
    Ok(vec![Job {
        check: check.to_string(),
        n,
        m: need("m", args.m, template.m)?,
        r: need("r", args.r.map(|r| r as usize), template.r as usize)? as u32,
        trials: args.trials.unwrap_or(template.trials),
        degree,
        seed,
    }])
}

pub fn run_check(check: &str, args: &CheckArgs, exec: Exec) -> Result<Vec<VerificationReport>, SuiteError> {
    Ok(exec.map(&plan(check, args)?, |job| job.run(exec)))
}

/// Every check over its full grid, reports in grid order.
pub fn acceptance_jobs(seed: u64) -> Vec<Job> {
    CHECKS
        .iter()
        .flat_map(|c| default_grid(c).expect("listed checks have grids"))
        .map(|mut j| {
            j.seed = seed;
            j
        })
        .collect()
}

pub fn run_all(seed: u64, exec: Exec) -> Vec<VerificationReport> {
    exec.map(&acceptance_jobs(seed), |job| job.run(exec))
}

/// `Sp₃((1); x; z) = x + x⁻¹ + z`, `s_{(2,1)}(x₁, x₂) = x₁²x₂ + x₁x₂²`, `[3]_q = q + 1 + q⁻¹`.
pub fn spot_values() -> VerificationReport {
    VerificationReport::run("spot", json!({}), || -> Result<Outcome, String> {
        let err = |e: &dyn std::fmt::Display| e.to_string();
        let p = |parts: &[u32]| Partition::from_parts(parts).map_err(|e| err(&e));
        let cases = [
            (
                "Sp3((1))",
                osp_char(&p(&[1])?, 1).map_err(|e| err(&e))?,
                LaurentPoly::parse("x1 + x1^-1 + z", &osp_vars(1)).map_err(|e| err(&e))?,
            ),
            (
                "s(2,1)",
                schur(&p(&[2, 1])?, 2).map_err(|e| err(&e))?,
                LaurentPoly::parse("x1^2*x2 + x1*x2^2", &x_vars(2)).map_err(|e| err(&e))?,
            ),
            (
                "[3]_q",
                q_integer(3).and_then(|s| s_to_q(&s)).map_err(|e| err(&e))?,
                LaurentPoly::parse("q + 1 + q^-1", &q_vars()).map_err(|e| err(&e))?,
            ),
        ];
        for (name, got, want) in cases {
            if got != want {
                return Ok(Outcome::Fail(format!("{name}: got {got}, expected {want}")));
            }
        }
        Ok(Outcome::Pass("3 values".into()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_has_a_grid() {
        for c in CHECKS {
            assert!(!default_grid(c).unwrap().is_empty(), "{c}");
        }
        assert!(matches!(default_grid("nope"), Err(SuiteError::UnknownCheck(_))));
    }

    #[test]
    fn planning_filters_and_falls_back() {
        let a = CheckArgs {
            m: Some(1),
            n: Some(1),
            r: Some(1),
            ..Default::default()
        };
        let jobs = plan("bkw", &a).unwrap();
        assert_eq!(jobs.len(), 1);
        assert_eq!((jobs[0].m, jobs[0].n, jobs[0].r), (1, 1, 1));
        let jobs = plan("bkw", &CheckArgs { n: Some(2), ..Default::default() }).unwrap();
        assert_eq!(jobs.len(), 3);
        let off_grid = CheckArgs {
            m: Some(1),
            n: Some(3),
            r: Some(1),
            ..Default::default()
        };
        assert_eq!(plan("bkw", &off_grid).unwrap()[0].n, 3);
        let partial = CheckArgs { n: Some(5), ..Default::default() };
        assert!(matches!(plan("bkw", &partial), Err(SuiteError::MissingParam { .. })));
        let o = plan("oracle", &CheckArgs { n: Some(3), ..Default::default() }).unwrap();
        assert_eq!(o[0].degree, crate::series::default_cap(3));
    }

    #[test]
    fn seeds_propagate() {
        let jobs = plan(
            "key-lemma",
            &CheckArgs {
                n: Some(2),
                trials: Some(5),
                seed: Some(11),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(jobs.len(), 1);
        assert_eq!((jobs[0].trials, jobs[0].seed), (5, 11));
        assert!(acceptance_jobs(3).iter().all(|j| j.seed == 3));
    }

    #[test]
    fn spot_values_pass() {
        let r = spot_values();
        assert!(r.pass, "{r}");
    }
}
