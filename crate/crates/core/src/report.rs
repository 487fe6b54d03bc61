//! Structured pass/fail records for the identity checks.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub params: Value,
    pub pass: bool,
    /// Summary on success; on failure, the first mismatching term or point.
    pub detail: String,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    /// Runs `body`, timing it. `Ok(None)` is a pass; `Ok(Some(w))` a failure
    /// with witness `w`; an error is a failure carrying the error text.
    pub fn run<F, E>(check: &str, params: Value, body: F) -> Self
    where
        F: FnOnce() -> Result<Outcome, E>,
        E: fmt::Display,
    {
        let start = Instant::now();
        let result = body();
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        let (pass, detail) = match result {
            Ok(Outcome::Pass(summary)) => (true, summary),
            Ok(Outcome::Fail(witness)) => (false, witness),
            Err(e) => (false, format!("error: {e}")),
        };
        let detail = if !pass && detail.is_empty() {
            "failed without witness".to_string()
        } else {
            detail
        };
        VerificationReport {
            check: check.to_string(),
            params,
            pass,
            detail,
            elapsed_ms,
        }
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{:<4}  {:<22} {:<34} {:>10.1} ms  {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.params.to_string(),
            self.elapsed_ms,
            self.detail
        )
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary_line())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass(String),
    Fail(String),
}

impl Outcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass(_))
    }
}

/// `None` when equal; otherwise a witness naming the leading differing term.
pub fn poly_mismatch(lhs: &LaurentPoly, rhs: &LaurentPoly) -> Option<String> {
    if lhs == rhs {
        return None;
    }
    let diff = match lhs.try_sub(rhs) {
        Ok(d) => d,
        Err(e) => return Some(e.to_string()),
    };
    let (m, _) = diff.leading_term()?;
    let at = LaurentPoly::monomial(lhs.vars(), m.clone(), 1);
    Some(format!(
        "mismatch at {at}: lhs coeff {}, rhs coeff {}",
        lhs.coeff(m),
        rhs.coeff(m)
    ))
}

/// Folds per-item outcomes: pass iff all pass, else the first failure.
pub fn all_pass<I>(outcomes: I, summary: String) -> Outcome
where
    I: IntoIterator<Item = Outcome>,
{
    for o in outcomes {
        if let Outcome::Fail(w) = o {
            return Outcome::Fail(w);
        }
    }
    Outcome::Pass(summary)
}
