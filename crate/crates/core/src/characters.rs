//! Bialternant characters: Schur, even and odd symplectic, Proctor's `z = 1`
//! form, and the principal specialization as a product of q-integers.
//!
//! Half-integer exponents never appear directly. Where a formula needs
//! `x_i^{1/2}` it is written in `t_i` with `x_i = t_i²`, and `q^{1/2}` is `s`.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::laurent::{LaurentPoly, RingError, VarTable, Vars};
use crate::linalg::{LinalgError, RingMatrix};
use crate::par::Exec;
use crate::partition::{enumerate_bounded, Partition, PartitionError};
use crate::report::{poly_mismatch, Outcome, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("character has a negative power of z: {0}")]
    NotPolynomialInZ(String),
    #[error("odd power of s in {0}, no rewrite in q")]
    OddExponent(String),
    #[error("q-integer index must be positive, got {0}")]
    NonPositiveQInteger(i64),
    #[error("unknown character family {0:?} (expected schur, sp_even, osp or osp_proctor)")]
    UnknownFamily(String),
    #[error("expected {expected} variable indices, got {got}")]
    Arity { expected: usize, got: usize },
}

fn table<I: IntoIterator<Item = String>>(names: I) -> Vars {
    VarTable::new(names).expect("generated names are distinct")
}

/// `x1, …, xn`
pub fn x_vars(n: usize) -> Vars {
    table((1..=n).map(|i| format!("x{i}")))
}

/// `x1, …, xn, z`
pub fn osp_vars(n: usize) -> Vars {
    table((1..=n).map(|i| format!("x{i}")).chain(["z".to_string()]))
}

/// `t1, …, tn` with `x_i = t_i²`.
pub fn t_vars(n: usize) -> Vars {
    table((1..=n).map(|i| format!("t{i}")))
}

pub fn s_vars() -> Vars {
    table(["s".to_string()])
}

pub fn q_vars() -> Vars {
    table(["q".to_string()])
}

fn pow(vars: &Vars, v: usize, e: i64) -> LaurentPoly {
    LaurentPoly::var_pow(vars, v, e as i32)
}

/// `v^e − v^{−e}`
fn odd_pair(vars: &Vars, v: usize, e: i64) -> LaurentPoly {
    pow(vars, v, e) - pow(vars, v, -e)
}

/// `v^e + v^{−e}`
fn even_pair(vars: &Vars, v: usize, e: i64) -> LaurentPoly {
    pow(vars, v, e) + pow(vars, v, -e)
}

fn padded(lambda: &Partition, len: usize) -> Result<Vec<i64>, CharError> {
    Ok(lambda.padded(len)?.into_iter().map(i64::from).collect())
}

fn ratio(num: &RingMatrix, den: &RingMatrix) -> Result<LaurentPoly, CharError> {
    Ok(num.det()?.exact_div(&den.det()?)?)
}

/// Schur polynomial in the variables `xs` of `vars`.
pub fn schur_in(lambda: &Partition, vars: &Vars, xs: &[usize]) -> Result<LaurentPoly, CharError> {
    let n = xs.len();
    let l = padded(lambda, n)?;
    let alt = |shift: &[i64]| {
        RingMatrix::from_fn(vars, n, n, |i, j| pow(vars, xs[i], shift[j] + (n - 1 - j) as i64))
    };
    ratio(&alt(&l), &alt(&vec![0; n]))
}

pub fn schur(lambda: &Partition, n: usize) -> Result<LaurentPoly, CharError> {
    let v = x_vars(n);
    schur_in(lambda, &v, &(0..n).collect::<Vec<_>>())
}

fn sp_alternant(vars: &Vars, xs: &[usize], l: &[i64]) -> RingMatrix {
    let n = xs.len();
    RingMatrix::from_fn(vars, n, n, |i, j| odd_pair(vars, xs[i], l[j] + (n - j) as i64))
}

/// Even symplectic character `Sp_{2n}(λ)` in the variables `xs` of `vars`.
/// With no variables this is the constant 1.
pub fn sp_even_in(lambda: &Partition, vars: &Vars, xs: &[usize]) -> Result<LaurentPoly, CharError> {
    let n = xs.len();
    let l = padded(lambda, n)?;
    ratio(&sp_alternant(vars, xs, &l), &sp_alternant(vars, xs, &vec![0; n]))
}

pub fn sp_even(lambda: &Partition, n: usize) -> Result<LaurentPoly, CharError> {
    let v = x_vars(n);
    sp_even_in(lambda, &v, &(0..n).collect::<Vec<_>>())
}

/// The `(n+1)×(n+1)` matrix `A_λ` over `x_{xs[0]}, …, z`.
pub fn matrix_a_in(
    lambda: &Partition,
    vars: &Vars,
    xs: &[usize],
    z: usize,
) -> Result<RingMatrix, CharError> {
    let n = xs.len();
    let l = padded(lambda, n + 1)?;
    let zinv = pow(vars, z, -1);
    Ok(RingMatrix::from_fn(vars, n + 1, n + 1, |i, j| {
        let e = l[j] + (n - j) as i64;
        if i < n {
            odd_pair(vars, xs[i], e + 1) - &zinv * &odd_pair(vars, xs[i], e)
        } else {
            pow(vars, z, e)
        }
    }))
}

pub fn matrix_a(lambda: &Partition, n: usize) -> Result<RingMatrix, CharError> {
    let v = osp_vars(n);
    matrix_a_in(lambda, &v, &(0..n).collect::<Vec<_>>(), n)
}

/// `Sp_{2n+1}(λ; x; z) = det A_λ / det A_∅`, checked to be polynomial in `z`.
pub fn osp_char_in(
    lambda: &Partition,
    vars: &Vars,
    xs: &[usize],
    z: usize,
) -> Result<LaurentPoly, CharError> {
    let num = matrix_a_in(lambda, vars, xs, z)?;
    let den = matrix_a_in(&Partition::empty(), vars, xs, z)?;
    let c = ratio(&num, &den)?;
    if !c.is_polynomial_in(&[z]) {
        return Err(CharError::NotPolynomialInZ(c.to_string()));
    }
    Ok(c)
}

pub fn osp_char(lambda: &Partition, n: usize) -> Result<LaurentPoly, CharError> {
    let v = osp_vars(n);
    osp_char_in(lambda, &v, &(0..n).collect::<Vec<_>>(), n)
}

/// Proctor's `B_λ` in `t1, …, tn`: entries `t_i^{k} + t_i^{−k}` with
/// `k = 2λ_j + 2n − 2j + 3`, last row all ones.
pub fn matrix_b(lambda: &Partition, n: usize) -> Result<RingMatrix, CharError> {
    let v = t_vars(n);
    let l = padded(lambda, n + 1)?;
    Ok(RingMatrix::from_fn(&v, n + 1, n + 1, |i, j| {
        if i < n {
            even_pair(&v, i, 2 * l[j] + 2 * (n - j) as i64 + 1)
        } else {
            LaurentPoly::one(&v)
        }
    }))
}

/// `Sp_{2n+1}(λ; x; 1)` in `t`-variables, as `det B_λ / det B_∅`.
pub fn osp_proctor(lambda: &Partition, n: usize) -> Result<LaurentPoly, CharError> {
    ratio(&matrix_b(lambda, n)?, &matrix_b(&Partition::empty(), n)?)
}

/// `osp_char(λ, n)` at `z = 1`, rewritten in `t` with `x_i = t_i²`.
pub fn osp_at_z1_in_t(lambda: &Partition, n: usize) -> Result<LaurentPoly, CharError> {
    let c = osp_char(lambda, n)?;
    let one = LaurentPoly::one(c.vars());
    let at1 = c.substitute(n, &one)?;
    Ok(at1.map_exponents(&t_vars(n), |e| e[..n].iter().map(|k| 2 * k).collect())?)
}

/// A polynomial in `t1, …, tn` at `t_i = s^{n−i+1}`.
pub fn principal_in_s(poly: &LaurentPoly, n: usize) -> Result<LaurentPoly, CharError> {
    Ok(poly.map_exponents(&s_vars(), |e| {
        vec![e.iter().enumerate().map(|(i, k)| k * (n - i) as i32).sum()]
    })?)
}

/// `q^k → s^{2k}`
pub fn q_to_s(poly: &LaurentPoly) -> Result<LaurentPoly, CharError> {
    Ok(poly.map_exponents(&s_vars(), |e| vec![2 * e[0]])?)
}

/// `s^{2k} → q^k`; any odd power of `s` is an error.
pub fn s_to_q(poly: &LaurentPoly) -> Result<LaurentPoly, CharError> {
    if poly.terms().any(|(m, _)| m.exp(0) % 2 != 0) {
        return Err(CharError::OddExponent(poly.to_string()));
    }
    Ok(poly.map_exponents(&q_vars(), |e| vec![e[0] / 2])?)
}

/// `[m]_q` in `s = q^{1/2}`: `s^{−(m−1)} + s^{−(m−3)} + … + s^{m−1}`.
pub fn q_integer(m: i64) -> Result<LaurentPoly, CharError> {
    if m < 1 {
        return Err(CharError::NonPositiveQInteger(m));
    }
    let v = s_vars();
    Ok((0..m).fold(LaurentPoly::zero(&v), |acc, k| acc + pow(&v, 0, 2 * k - (m - 1))))
}

/// `ε_i + ε_j` when `plus`, else `ε_i − ε_j`; indices 0-based with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    pub i: usize,
    pub j: usize,
    pub plus: bool,
}

/// `Δ⁺(D_{n+1})` and `2ρ = (2n+1, 2n−1, …, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatum {
    pub roots: Vec<Root>,
    pub two_rho: Vec<i64>,
}

impl RootDatum {
    pub fn d(n: usize) -> Self {
        let k = n + 1;
        let mut roots = Vec::with_capacity(n * k);
        for i in 0..k {
            for j in i + 1..k {
                roots.push(Root { i, j, plus: false });
                roots.push(Root { i, j, plus: true });
            }
        }
        let two_rho = (0..k).map(|i| 2 * (n - i) as i64 + 1).collect();
        RootDatum { roots, two_rho }
    }

    /// `⟨v, α⟩` from the doubled vector `2v`.
    pub fn pairing(two_v: &[i64], a: &Root) -> i64 {
        let doubled = if a.plus {
            two_v[a.i] + two_v[a.j]
        } else {
            two_v[a.i] - two_v[a.j]
        };
        assert!(doubled % 2 == 0, "pairing of λ+ρ with a D-root is integral");
        doubled / 2
    }
}

/// Product of `[⟨λ+ρ,α⟩]_q / [⟨ρ,α⟩]_q` over `Δ⁺(D_{n+1})`, in `q`.
pub fn osp_principal_q(lambda: &Partition, n: usize) -> Result<LaurentPoly, CharError> {
    let l = padded(lambda, n + 1)?;
    let rd = RootDatum::d(n);
    let two_lr: Vec<i64> = rd.two_rho.iter().zip(&l).map(|(r, p)| r + 2 * p).collect();
    let s = s_vars();
    let mut num = LaurentPoly::one(&s);
    let mut den = LaurentPoly::one(&s);
    for a in &rd.roots {
        num = num * q_integer(RootDatum::pairing(&two_lr, a))?;
        den = den * q_integer(RootDatum::pairing(&rd.two_rho, a))?;
    }
    s_to_q(&num.exact_div(&den)?)
}

/// `(t_i t_j − t_i⁻¹ t_j⁻¹)(t_i t_j⁻¹ − t_i⁻¹ t_j)`, i.e. `x_i^{1/2}x_j^{1/2} − …`
/// times `x_i^{1/2}x_j^{−1/2} − …`.
fn pair_factor(v: &Vars, i: usize, j: usize) -> LaurentPoly {
    let m = |a: i32, b: i32| {
        let mut e = vec![0; v.len()];
        e[i] = a;
        e[j] = b;
        LaurentPoly::monomial(v, crate::laurent::Monomial::from_exps(&e), 1)
    };
    (m(1, 1) - m(-1, -1)) * (m(1, -1) - m(-1, 1))
}

fn pair_product(v: &Vars, k: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one(v);
    for i in 0..k {
        for j in i + 1..k {
            acc = acc * pair_factor(v, i, j);
        }
    }
    acc
}

fn compare(lhs: &LaurentPoly, rhs: &LaurentPoly) -> Outcome {
    match poly_mismatch(lhs, rhs) {
        None => Outcome::Pass(format!("{} terms", lhs.len())),
        Some(w) => Outcome::Fail(w),
    }
}

/// `det A_∅ = ∏(x_i − x_i⁻¹) ∏_{i<j≤n+1} pair(i, j)` with `x_{n+1} = z`.
pub fn osp_den_identity(n: usize) -> VerificationReport {
    VerificationReport::run("osp-den", json!({ "n": n }), || -> Result<Outcome, CharError> {
        let det = matrix_a(&Partition::empty(), n)?.det()?;
        let t = t_vars(n + 1);
        let lhs = det.map_exponents(&t, |e| e.iter().map(|k| 2 * k).collect())?;
        let mut rhs = pair_product(&t, n + 1);
        for i in 0..n {
            rhs = rhs * odd_pair(&t, i, 2);
        }
        Ok(compare(&lhs, &rhs))
    })
}

/// Symplectic Weyl denominator with the pair factor
/// `x_i^{1/2}x_j^{−1/2} − x_i^{−1/2}x_j^{1/2}`.
pub fn sp_den_identity(n: usize) -> VerificationReport {
    VerificationReport::run("sp-den", json!({ "n": n }), || -> Result<Outcome, CharError> {
        let x = x_vars(n);
        let idx: Vec<usize> = (0..n).collect();
        let det = sp_alternant(&x, &idx, &vec![0; n]).det()?;
        let t = t_vars(n);
        let lhs = det.map_exponents(&t, |e| e.iter().map(|k| 2 * k).collect())?;
        let mut rhs = pair_product(&t, n);
        for i in 0..n {
            rhs = rhs * odd_pair(&t, i, 2);
        }
        Ok(compare(&lhs, &rhs))
    })
}

/// `det B_∅ = ∏(x_i^{1/2} − x_i^{−1/2})(x_i − x_i⁻¹) ∏_{i<j≤n} pair(i, j)`.
pub fn proctor_den_identity(n: usize) -> VerificationReport {
    VerificationReport::run("proctor-den", json!({ "n": n }), || -> Result<Outcome, CharError> {
        let lhs = matrix_b(&Partition::empty(), n)?.det()?;
        let t = t_vars(n);
        let mut rhs = pair_product(&t, n);
        for i in 0..n {
            rhs = rhs * odd_pair(&t, i, 1) * odd_pair(&t, i, 2);
        }
        Ok(compare(&lhs, &rhs))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Schur,
    SpEven,
    Osp,
    OspProctor,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Schur, Family::SpEven, Family::Osp, Family::OspProctor];

    pub fn name(self) -> &'static str {
        match self {
            Family::Schur => "schur",
            Family::SpEven => "sp_even",
            Family::Osp => "osp",
            Family::OspProctor => "osp_proctor",
        }
    }

    /// Longest admissible λ at rank `n`.
    pub fn max_len(self, n: usize) -> usize {
        match self {
            Family::Schur | Family::SpEven => n,
            Family::Osp | Family::OspProctor => n + 1,
        }
    }

    pub fn vars(self, n: usize) -> Vars {
        match self {
            Family::Schur | Family::SpEven => x_vars(n),
            Family::Osp => osp_vars(n),
            Family::OspProctor => t_vars(n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = CharError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "schur" | "gl" => Ok(Family::Schur),
            "sp_even" | "sp" => Ok(Family::SpEven),
            "osp" => Ok(Family::Osp),
            "osp_proctor" | "proctor" => Ok(Family::OspProctor),
            _ => Err(CharError::UnknownFamily(s.to_string())),
        }
    }
}

/// A validated `(family, λ, n)` triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterSpec {
    pub family: Family,
    pub lambda: Partition,
    pub n: usize,
}

impl CharacterSpec {
    pub fn new(family: Family, lambda: Partition, n: usize) -> Result<Self, CharError> {
        lambda.check_len(family.max_len(n))?;
        Ok(CharacterSpec { family, lambda, n })
    }

    pub fn vars(&self) -> Vars {
        self.family.vars(self.n)
    }

    pub fn compute(&self) -> Result<LaurentPoly, CharError> {
        match self.family {
            Family::Schur => schur(&self.lambda, self.n),
            Family::SpEven => sp_even(&self.lambda, self.n),
            Family::Osp => osp_char(&self.lambda, self.n),
            Family::OspProctor => osp_proctor(&self.lambda, self.n),
        }
    }
}

/// Characters for every λ in the `max_len × max_part` box, in enumeration order.
pub fn character_table(
    family: Family,
    max_len: usize,
    max_part: u32,
    n: usize,
    exec: Exec,
) -> Result<Vec<(Partition, LaurentPoly)>, CharError> {
    let specs = enumerate_bounded(max_len, max_part)
        .into_iter()
        .map(|l| CharacterSpec::new(family, l, n))
        .collect::<Result<Vec<_>, _>>()?;
    exec.map(&specs, |s| s.compute().map(|c| (s.lambda.clone(), c)))
        .into_iter()
        .collect()
}

/// Same polynomial with `x_v ↦ x_v⁻¹`.
pub fn invert_var(poly: &LaurentPoly, v: usize) -> LaurentPoly {
    poly.map_exponents(poly.vars(), |e| {
        let mut e = e.to_vec();
        e[v] = -e[v];
        e
    })
    .expect("same table")
}

/// Same polynomial with variables `a` and `b` exchanged.
pub fn swap_vars(poly: &LaurentPoly, a: usize, b: usize) -> LaurentPoly {
    poly.map_exponents(poly.vars(), |e| {
        let mut e = e.to_vec();
        e.swap(a, b);
        e
    })
    .expect("same table")
}

/// True for the constant 1.
pub fn is_unit(poly: &LaurentPoly) -> bool {
    poly.as_constant().is_some_and(|c| c.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    fn parse(text: &str, v: &Vars) -> LaurentPoly {
        LaurentPoly::parse(text, v).unwrap()
    }

    #[test]
    fn schur_spot_values() {
        assert_eq!(schur(&p(&[1]), 2).unwrap(), parse("x1 + x2", &x_vars(2)));
        assert!(is_unit(&schur(&Partition::empty(), 3).unwrap()));
        assert_eq!(
            schur(&p(&[2, 1]), 2).unwrap(),
            parse("x1^2*x2 + x1*x2^2", &x_vars(2))
        );
        assert_eq!(
            schur(&p(&[2]), 2).unwrap(),
            parse("x1^2 + x1*x2 + x2^2", &x_vars(2))
        );
        assert!(schur(&p(&[1, 1, 1]), 2).is_err());
    }

    #[test]
    fn sp_even_spot_values() {
        assert_eq!(sp_even(&p(&[1]), 1).unwrap(), parse("x1 + x1^-1", &x_vars(1)));
        assert_eq!(sp_even(&p(&[2]), 1).unwrap(), parse("x1^2 + 1 + x1^-2", &x_vars(1)));
        for n in 0..4 {
            assert!(is_unit(&sp_even(&Partition::empty(), n).unwrap()));
        }
        // the 5-dimensional representation of Sp_4
        let v = x_vars(2);
        assert_eq!(
            sp_even(&p(&[1, 1]), 2).unwrap(),
            parse("x1*x2 + x1*x2^-1 + x1^-1*x2 + x1^-1*x2^-1 + 1", &v)
        );
    }

    #[test]
    fn matrix_a_small_cases() {
        let v = osp_vars(1);
        let a = matrix_a(&Partition::empty(), 1).unwrap();
        assert_eq!(*a.get(0, 0), parse("x1^2 - x1^-2 - z^-1*x1 + z^-1*x1^-1", &v));
        assert_eq!(*a.get(0, 1), parse("x1 - x1^-1", &v));
        assert_eq!(*a.get(1, 0), parse("z", &v));
        assert!(a.get(1, 1).is_one());
        let a1 = matrix_a(&p(&[1]), 1).unwrap();
        assert_eq!(*a1.get(1, 0), parse("z^2", &v));
        assert!(a1.get(1, 1).is_one());
        let a0 = matrix_a(&p(&[3]), 0).unwrap();
        assert_eq!(a0.rows(), 1);
        assert_eq!(*a0.get(0, 0), parse("z^3", &osp_vars(0)));
        assert!(matrix_a(&p(&[1, 1, 1]), 1).is_err());
    }

    #[test]
    fn osp_spot_values() {
        let v = osp_vars(1);
        assert_eq!(osp_char(&p(&[1]), 1).unwrap(), parse("x1 + x1^-1 + z", &v));
        // hand expansion of the (1,1) coefficient of the kernel at n = 1
        assert_eq!(osp_char(&p(&[1, 1]), 1).unwrap(), parse("x1*z + x1^-1*z", &v));
        for n in 0..4 {
            assert!(is_unit(&osp_char(&Partition::empty(), n).unwrap()));
        }
        assert_eq!(osp_char(&p(&[4]), 0).unwrap(), parse("z^4", &osp_vars(0)));
    }

    #[test]
    fn proctor_matrix_and_values() {
        let t = t_vars(1);
        let b = matrix_b(&Partition::empty(), 1).unwrap();
        assert_eq!(*b.get(0, 0), parse("t1^3 + t1^-3", &t));
        assert_eq!(*b.get(0, 1), parse("t1 + t1^-1", &t));
        assert!(b.get(1, 0).is_one() && b.get(1, 1).is_one());
        let b1 = matrix_b(&p(&[1]), 1).unwrap();
        assert_eq!(b1.get(0, 0).exponent_range(0), Some((-5, 5)));
        assert_eq!(osp_proctor(&p(&[1]), 1).unwrap(), parse("t1^2 + 1 + t1^-2", &t));
        assert_eq!(
            osp_proctor(&p(&[1, 1]), 2).unwrap(),
            osp_at_z1_in_t(&p(&[1, 1]), 2).unwrap()
        );
    }

    #[test]
    fn q_integers() {
        let s = s_vars();
        assert!(q_integer(1).unwrap().is_one());
        assert_eq!(q_integer(2).unwrap(), parse("s + s^-1", &s));
        assert_eq!(q_integer(3).unwrap(), parse("s^2 + 1 + s^-2", &s));
        assert!(q_integer(0).is_err());
        assert_eq!(s_to_q(&q_integer(3).unwrap()).unwrap(), parse("q + 1 + q^-1", &q_vars()));
        assert!(matches!(s_to_q(&q_integer(2).unwrap()), Err(CharError::OddExponent(_))));
    }

    #[test]
    fn root_datum_shape() {
        for n in 0..5 {
            let rd = RootDatum::d(n);
            assert_eq!(rd.roots.len(), n * (n + 1));
            assert_eq!(rd.two_rho.len(), n + 1);
            assert_eq!(*rd.two_rho.last().unwrap(), 1);
        }
        assert_eq!(RootDatum::d(2).two_rho, vec![5, 3, 1]);
    }

    #[test]
    fn principal_spot_values() {
        let q = q_vars();
        assert_eq!(osp_principal_q(&p(&[1]), 1).unwrap(), parse("q + 1 + q^-1", &q));
        for n in 0..4 {
            assert!(is_unit(&osp_principal_q(&Partition::empty(), n).unwrap()));
        }
        let lhs = q_to_s(&osp_principal_q(&p(&[1, 1]), 2).unwrap()).unwrap();
        let rhs = principal_in_s(&osp_proctor(&p(&[1, 1]), 2).unwrap(), 2).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn denominators() {
        for n in 1..=3 {
            for r in [osp_den_identity(n), sp_den_identity(n), proctor_den_identity(n)] {
                assert!(r.pass, "{r}");
            }
        }
    }

    #[test]
    fn family_parsing_and_lengths() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("gl7".parse::<Family>().is_err());
        assert!(CharacterSpec::new(Family::Osp, p(&[1, 1]), 1).is_ok());
        assert!(CharacterSpec::new(Family::SpEven, p(&[1, 1]), 1).is_err());
        let j = serde_json::to_value(CharacterSpec::new(Family::Osp, p(&[2]), 1).unwrap()).unwrap();
        assert_eq!(j, json!({"family": "osp", "lambda": [2], "n": 1}));
    }

    #[test]
    fn table_order_and_modes() {
        let seq = character_table(Family::Osp, 2, 1, 1, Exec::Sequential).unwrap();
        let par = character_table(Family::Osp, 2, 1, 1, Exec::Parallel).unwrap();
        assert_eq!(seq, par);
        let lambdas: Vec<_> = seq.iter().map(|(l, _)| l.clone()).collect();
        assert_eq!(lambdas, vec![Partition::empty(), p(&[1]), p(&[1, 1])]);
        assert!(character_table(Family::Schur, 2, 1, 1, Exec::Sequential).is_err());
    }

    fn small_lambda(max_len: usize) -> impl Strategy<Value = Partition> {
        let all: Vec<Partition> = enumerate_bounded(max_len, 3)
            .into_iter()
            .filter(|l| l.size() <= 4)
            .collect();
        proptest::sample::select(all)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn osp_is_polynomial_in_z_and_weyl_invariant(n in 1usize..=3, seed in any::<u64>()) {
            let all: Vec<Partition> = enumerate_bounded(n + 1, 3)
                .into_iter()
                .filter(|l| l.size() <= 4)
                .collect();
            let lambda = &all[(seed % all.len() as u64) as usize];
            let c = osp_char(lambda, n).unwrap();
            prop_assert!(c.is_polynomial_in(&[n]));
            for i in 0..n {
                prop_assert_eq!(&invert_var(&c, i), &c);
            }
            for i in 0..n {
                for j in i + 1..n {
                    prop_assert_eq!(&swap_vars(&c, i, j), &c);
                }
            }
        }

        #[test]
        fn schur_is_symmetric(lambda in small_lambda(3)) {
            let c = schur(&lambda, 3).unwrap();
            prop_assert_eq!(&swap_vars(&c, 0, 1), &c);
            prop_assert_eq!(&swap_vars(&c, 1, 2), &c);
            prop_assert!(c.is_polynomial_in(&[0, 1, 2]));
        }

        #[test]
        fn sp_even_is_inversion_invariant(lambda in small_lambda(2)) {
            let c = sp_even(&lambda, 2).unwrap();
            prop_assert_eq!(&invert_var(&c, 0), &c);
            prop_assert_eq!(&invert_var(&c, 1), &c);
            prop_assert_eq!(&swap_vars(&c, 0, 1), &c);
        }

        #[test]
        fn proctor_is_z_one_image(lambda in small_lambda(3)) {
            prop_assert_eq!(osp_proctor(&lambda, 2).unwrap(), osp_at_z1_in_t(&lambda, 2).unwrap());
        }
    }
}
