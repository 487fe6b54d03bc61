//! Truncated power series in `u1, …, uk` with Laurent coefficients, and the
//! generating-function definition of odd symplectic characters read off
//! from the Cauchy kernel.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::characters::osp_vars;
use crate::laurent::{LaurentPoly, RingError, Vars};
use crate::partition::{enumerate_bounded, index_set, Partition, PartitionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("degree caps differ ({0} vs {1})")]
    CapMismatch(u32, u32),
    #[error("u-variable counts differ ({0} vs {1})")]
    CountMismatch(usize, usize),
    #[error("constant term must be 1 to invert")]
    ConstantTermNotOne,
    #[error("cap {cap} is too small for {lambda}: needs {needed}")]
    CapTooSmall { lambda: Partition, needed: u32, cap: u32 },
    #[error("series has {got} u-variables, expected {expected}")]
    WrongCount { expected: usize, got: usize },
    #[error("coefficient of {0} has a negative power of z")]
    NotPolynomialInZ(Partition),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// `Σ c_e u^e` over exponent vectors of total degree at most `degree_cap`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    vars: Vars,
    u_count: usize,
    degree_cap: u32,
    terms: BTreeMap<Vec<u32>, LaurentPoly>,
}

fn total(e: &[u32]) -> u32 {
    e.iter().sum()
}

impl TruncatedSeries {
    pub fn zero(vars: &Vars, u_count: usize, degree_cap: u32) -> Self {
        TruncatedSeries {
            vars: vars.clone(),
            u_count,
            degree_cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars, u_count: usize, degree_cap: u32) -> Self {
        let mut s = Self::zero(vars, u_count, degree_cap);
        s.add(vec![0; u_count], LaurentPoly::one(vars));
        s
    }

    /// Builds from `(u-exponents, coefficient)` pairs; terms past the cap are dropped.
    pub fn from_terms<I>(vars: &Vars, u_count: usize, degree_cap: u32, terms: I) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (Vec<u32>, LaurentPoly)>,
    {
        let mut s = Self::zero(vars, u_count, degree_cap);
        for (e, c) in terms {
            if e.len() != u_count {
                return Err(SeriesError::WrongCount {
                    expected: u_count,
                    got: e.len(),
                });
            }
            s.add(e, c.with_vars(vars)?);
        }
        Ok(s)
    }

    fn add(&mut self, e: Vec<u32>, c: LaurentPoly) {
        if total(&e) > self.degree_cap || c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn u_count(&self) -> usize {
        self.u_count
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> LaurentPoly {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(&self.vars))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &LaurentPoly)> {
        self.terms.iter()
    }

    /// Every coefficient of total u-degree `d`.
    pub fn degree_part(&self, d: u32) -> impl Iterator<Item = (&Vec<u32>, &LaurentPoly)> {
        self.terms.iter().filter(move |(e, _)| total(e) == d)
    }
}

fn check_compatible(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<(), SeriesError> {
    if a.degree_cap != b.degree_cap {
        return Err(SeriesError::CapMismatch(a.degree_cap, b.degree_cap));
    }
    if a.u_count != b.u_count {
        return Err(SeriesError::CountMismatch(a.u_count, b.u_count));
    }
    if a.vars.names() != b.vars.names() {
        return Err(RingError::VarMismatch(a.vars.names().to_vec(), b.vars.names().to_vec()).into());
    }
    Ok(())
}

pub fn series_add(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    check_compatible(a, b)?;
    let mut out = a.clone();
    for (e, c) in &b.terms {
        out.add(e.clone(), c.clone());
    }
    Ok(out)
}

/// Product, truncated at the shared cap.
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    check_compatible(a, b)?;
    let cap = a.degree_cap;
    let mut out = TruncatedSeries::zero(&a.vars, a.u_count, cap);
    for (ea, ca) in &a.terms {
        let da = total(ea);
        for (eb, cb) in &b.terms {
            if da + total(eb) > cap {
                continue;
            }
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            out.add(e, ca.try_mul(cb)?);
        }
    }
    Ok(out)
}

/// `1/f` for `f` with constant term 1, as `Σ_k (1 − f)^k`.
pub fn series_geom_inverse(f: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let zero = vec![0; f.u_count];
    if !f.coeff(&zero).is_one() {
        return Err(SeriesError::ConstantTermNotOne);
    }
    let one = TruncatedSeries::one(&f.vars, f.u_count, f.degree_cap);
    let mut h = TruncatedSeries::zero(&f.vars, f.u_count, f.degree_cap);
    for (e, c) in &f.terms {
        if *e != zero {
            h.add(e.clone(), -c);
        }
    }
    let mut out = one.clone();
    let mut power = one;
    for _ in 0..f.degree_cap {
        power = series_mul(&power, &h)?;
        if power.is_empty() {
            break;
        }
        out = series_add(&out, &power)?;
    }
    Ok(out)
}

fn unit_u(u_count: usize, j: usize, k: u32) -> Vec<u32> {
    let mut e = vec![0; u_count];
    e[j] = k;
    e
}

/// `1 − a·u_j`
fn one_minus(a: &LaurentPoly, u_count: usize, j: usize, cap: u32) -> Result<TruncatedSeries, SeriesError> {
    let vars = a.vars();
    TruncatedSeries::from_terms(
        vars,
        u_count,
        cap,
        [(vec![0; u_count], LaurentPoly::one(vars)), (unit_u(u_count, j, 1), -a)],
    )
}

/// The kernel `∏_{i<j}(1 − u_i u_j) / [∏_{i,j}(1 − x_i u_j)(1 − x_i⁻¹ u_j) ∏_j (1 − z u_j)]`
/// in `u1, …, u_{n+1}` with coefficients over `x1, …, xn, z`.
pub fn cauchy_rhs(n: usize, degree_cap: u32) -> Result<TruncatedSeries, SeriesError> {
    let vars = osp_vars(n);
    let k = n + 1;
    let mut letters: Vec<LaurentPoly> = Vec::with_capacity(2 * n + 1);
    for i in 0..n {
        letters.push(LaurentPoly::var_pow(&vars, i, 1));
        letters.push(LaurentPoly::var_pow(&vars, i, -1));
    }
    letters.push(LaurentPoly::var(&vars, n));

    let mut out = TruncatedSeries::one(&vars, k, degree_cap);
    for j in 0..k {
        for a in &letters {
            let inv = series_geom_inverse(&one_minus(a, k, j, degree_cap)?)?;
            out = series_mul(&out, &inv)?;
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let mut e = vec![0; k];
            e[i] = 1;
            e[j] = 1;
            let f = TruncatedSeries::from_terms(
                &vars,
                k,
                degree_cap,
                [(vec![0; k], LaurentPoly::one(&vars)), (e, LaurentPoly::constant(&vars, -1))],
            )?;
            out = series_mul(&out, &f)?;
        }
    }
    Ok(out)
}

/// `∏_{i<j}(u_i − u_j) = det(u_i^{k−j})` with integer coefficients.
pub fn vandermonde_series(vars: &Vars, u_count: usize, degree_cap: u32) -> Result<TruncatedSeries, SeriesError> {
    let mut out = TruncatedSeries::one(vars, u_count, degree_cap);
    for i in 0..u_count {
        for j in i + 1..u_count {
            let f = TruncatedSeries::from_terms(
                vars,
                u_count,
                degree_cap,
                [
                    (unit_u(u_count, i, 1), LaurentPoly::one(vars)),
                    (unit_u(u_count, j, 1), LaurentPoly::constant(vars, -1)),
                ],
            )?;
            out = series_mul(&out, &f)?;
        }
    }
    Ok(out)
}

/// `n(n+1)/2 + 4`: every `|λ| ≤ 4` is reachable.
pub fn default_cap(n: usize) -> u32 {
    (n * (n + 1) / 2 + 4) as u32
}

/// Degree of `u^{λ+δ}`, the smallest cap from which `λ` can be read.
pub fn needed_cap(lambda: &Partition, n: usize) -> u32 {
    lambda.size() + (n * (n + 1) / 2) as u32
}

/// The series times the u-Vandermonde; its coefficient at `u^{λ+δ}` is the
/// character indexed by `λ`.
pub fn alternated(s: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    series_mul(s, &vandermonde_series(&s.vars, s.u_count, s.degree_cap)?)
}

fn read(alt: &TruncatedSeries, lambda: &Partition, n: usize) -> Result<LaurentPoly, SeriesError> {
    let needed = needed_cap(lambda, n);
    if needed > alt.degree_cap {
        return Err(SeriesError::CapTooSmall {
            lambda: lambda.clone(),
            needed,
            cap: alt.degree_cap,
        });
    }
    let e: Vec<u32> = index_set(lambda, n + 1)?
        .descending()
        .iter()
        .map(|&x| x as u32)
        .collect();
    let c = alt.coeff(&e);
    if !c.is_polynomial_in(&[n]) {
        return Err(SeriesError::NotPolynomialInZ(lambda.clone()));
    }
    Ok(c)
}

/// The coefficient for one `λ`.
pub fn extract_character(s: &TruncatedSeries, n: usize, lambda: &Partition) -> Result<LaurentPoly, SeriesError> {
    if s.u_count != n + 1 {
        return Err(SeriesError::WrongCount {
            expected: n + 1,
            got: s.u_count,
        });
    }
    read(&alternated(s)?, lambda, n)
}

/// Every character reachable under the series cap, keyed by `λ`.
pub fn extract_characters(s: &TruncatedSeries, n: usize) -> Result<BTreeMap<Partition, LaurentPoly>, SeriesError> {
    if s.u_count != n + 1 {
        return Err(SeriesError::WrongCount {
            expected: n + 1,
            got: s.u_count,
        });
    }
    let alt = alternated(s)?;
    let shift = (n * (n + 1) / 2) as u32;
    let mut out = BTreeMap::new();
    if s.degree_cap < shift {
        return Ok(out);
    }
    let budget = s.degree_cap - shift;
    for lambda in enumerate_bounded(n + 1, budget) {
        if lambda.size() <= budget {
            let c = read(&alt, &lambda, n)?;
            out.insert(lambda, c);
        }
    }
    Ok(out)
}

/// Sum of absolute coefficient values, a cheap size measure for reports.
pub fn weight(p: &LaurentPoly) -> BigInt {
    p.terms().fold(BigInt::zero(), |acc, (_, c)| acc + c.abs())
}

/// One row of an oracle dump.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleRow {
    pub lambda: Partition,
    pub poly: LaurentPoly,
}

pub fn oracle_table(n: usize, degree_cap: u32) -> Result<Vec<OracleRow>, SeriesError> {
    let s = cauchy_rhs(n, degree_cap)?;
    Ok(extract_characters(&s, n)?
        .into_iter()
        .map(|(lambda, poly)| OracleRow { lambda, poly })
        .collect())
}
