//! Verifiers for the reduction lemma, the key determinant lemma, the
//! Brent–Krattenthaler–Warnaar identity and the cross-checks between the
//! different character formulas.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use crate::characters::{
    invert_var, osp_at_z1_in_t, osp_char, osp_char_in, osp_principal_q, osp_proctor, osp_vars,
    principal_in_s, q_to_s, schur, sp_even, sp_even_in, swap_vars, x_vars, CharError,
};
use crate::laurent::{LaurentPoly, RingError, VarTable, Vars};
use crate::linalg::{cauchy_binet_sum_with, rational_det, LinalgError, RingMatrix};
use crate::par::Exec;
use crate::partition::{enumerate_bounded, enumerate_by_size, prepend_rect, rectangle, Partition, PartitionError};
use crate::report::{all_pass, poly_mismatch, Outcome, VerificationReport};
use crate::series::{cauchy_rhs, extract_characters, SeriesError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error(transparent)]
    Char(#[from] CharError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("singular evaluation point: {0}")]
    Singular(String),
    #[error("{0}")]
    Precondition(String),
}

type Res<T> = Result<T, IdentityError>;

fn compare(what: impl std::fmt::Display, lhs: &LaurentPoly, rhs: &LaurentPoly) -> Outcome {
    match poly_mismatch(lhs, rhs) {
        None => Outcome::Pass(String::new()),
        Some(w) => Outcome::Fail(format!("{what}: {w}")),
    }
}

fn fold(outcomes: Vec<Res<Outcome>>, summary: String) -> Res<Outcome> {
    let outcomes = outcomes.into_iter().collect::<Res<Vec<_>>>()?;
    Ok(all_pass(outcomes, summary))
}

/// `p(x, y, z, a, b)·(1 − xy)(x − y)`:
/// `(1−xz)(1−yz)(x−y) − a(x−z)(1−yz)(1−xy) + b(1−xz)(y−z)(1−xy) − ab(x−z)(y−z)(x−y)`.
pub fn p_function(
    x: &LaurentPoly,
    y: &LaurentPoly,
    z: &LaurentPoly,
    a: &LaurentPoly,
    b: &LaurentPoly,
) -> LaurentPoly {
    let one = LaurentPoly::one(x.vars());
    let om = |u: &LaurentPoly, v: &LaurentPoly| &one - &(u * v);
    let (xy, xz, yz) = (om(x, y), om(x, z), om(y, z));
    let (dxy, dxz, dyz) = (x - y, x - z, y - z);
    &(&xz * &yz) * &dxy - &(a * &(&dxz * &yz)) * &xy + &(b * &(&xz * &dyz)) * &xy
        - &(&(a * b) * &(&dxz * &dyz)) * &dxy
}

/// Direct evaluation of `p` as the rational function it is defined to be.
pub fn p_rational(
    x: &BigRational,
    y: &BigRational,
    z: &BigRational,
    a: &BigRational,
    b: &BigRational,
) -> Res<BigRational> {
    let one = BigRational::one();
    let d1 = &one - x * y;
    let d2 = x - y;
    if d1.is_zero() || d2.is_zero() {
        return Err(IdentityError::Singular(format!("x={x}, y={y}")));
    }
    Ok((&one - x * z) * (&one - y * z) / &d1 - a * (x - z) * (&one - y * z) / &d2
        + b * (&one - x * z) * (y - z) / &d2
        - a * b * (x - z) * (y - z) / &d1)
}

/// A point for the key lemma.
#[derive(Debug, Clone, PartialEq)]
pub struct KeyPoint {
    pub xs: Vec<BigRational>,
    pub ys: Vec<BigRational>,
    pub z: BigRational,
    pub a: Vec<BigRational>,
    pub b: Vec<BigRational>,
    pub c: BigRational,
}

fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let pick = |rng: &mut ChaCha8Rng| loop {
        let k: i64 = rng.gen_range(-9..=9);
        if k != 0 {
            return k;
        }
    };
    let num = pick(rng);
    let den = pick(rng);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl KeyPoint {
    /// Draws points until none of `x_i y_j = 1`, `x_i = y_j`, `z = ±1` holds.
    pub fn sample(n: usize, rng: &mut ChaCha8Rng) -> Self {
        loop {
            let mut draw = |k: usize| (0..k).map(|_| small_rational(rng)).collect::<Vec<_>>();
            let xs = draw(n);
            let ys = draw(n);
            let a = draw(n);
            let b = draw(n);
            let mut rest = draw(2);
            let c = rest.pop().unwrap();
            let z = rest.pop().unwrap();
            let p = KeyPoint { xs, ys, z, a, b, c };
            if !p.is_singular() {
                return p;
            }
        }
    }

    pub fn is_singular(&self) -> bool {
        let one = BigRational::one();
        if self.z == one || self.z == -one.clone() {
            return true;
        }
        self.xs
            .iter()
            .any(|x| self.ys.iter().any(|y| x == y || x * y == one))
    }

    fn describe(&self) -> String {
        let list = |v: &[BigRational]| v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",");
        format!(
            "x=({}) y=({}) z={} a=({}) b=({}) c={}",
            list(&self.xs),
            list(&self.ys),
            self.z,
            list(&self.a),
            list(&self.b),
            self.c
        )
    }
}

/// The `(n+1)×(n+1)` matrix `C`. Bulk entries are `p(x_i, y_j, z, a_i, b_j)`;
/// the border carries `1 − a_i` in the last column of row `i`, `1 − b_j` in
/// the last row under column `j`, and `(1 − c)/(1 − z²)` in the corner.
pub fn matrix_c(pt: &KeyPoint) -> Res<Vec<Vec<BigRational>>> {
    let n = pt.xs.len();
    let one = BigRational::one();
    let zz = &one - &pt.z * &pt.z;
    if zz.is_zero() {
        return Err(IdentityError::Singular(format!("z={}", pt.z)));
    }
    let mut rows = Vec::with_capacity(n + 1);
    for i in 0..n {
        let mut row = Vec::with_capacity(n + 1);
        for j in 0..n {
            row.push(p_rational(&pt.xs[i], &pt.ys[j], &pt.z, &pt.a[i], &pt.b[j])?);
        }
        row.push(&one - &pt.a[i]);
        rows.push(row);
    }
    let mut last: Vec<BigRational> = pt.b.iter().map(|b| &one - b).collect();
    last.push((&one - &pt.c) / zz);
    rows.push(last);
    Ok(rows)
}

/// The `(2n+1)×(2n+1)` matrix `V` with rows `w^{j−1} − e·w^{2n+1−j}` for
/// `(w, e)` running over `(x_i, a_i)`, `(y_i, b_i)` and `(z, c)`.
pub fn matrix_v(pt: &KeyPoint) -> Vec<Vec<BigRational>> {
    let n = pt.xs.len();
    let size = 2 * n + 1;
    let row = |w: &BigRational, e: &BigRational| -> Vec<BigRational> {
        (1..=size)
            .map(|j| {
                let lo = num_traits::pow::Pow::pow(w, (j - 1) as u32);
                let hi = num_traits::pow::Pow::pow(w, (size - j) as u32);
                lo - e * hi
            })
            .collect()
    };
    let mut rows: Vec<Vec<BigRational>> = pt.xs.iter().zip(&pt.a).map(|(x, a)| row(x, a)).collect();
    rows.extend(pt.ys.iter().zip(&pt.b).map(|(y, b)| row(y, b)));
    rows.push(row(&pt.z, &pt.c));
    rows
}

/// Both sides of the key identity at a point.
pub fn key_sides(pt: &KeyPoint) -> Res<(BigRational, BigRational)> {
    let n = pt.xs.len();
    let one = BigRational::one();
    let lhs = rational_det(&matrix_c(pt)?)?;
    let mut den = &one - &pt.z * &pt.z;
    for x in &pt.xs {
        for y in &pt.ys {
            den *= (x - y) * (&one - x * y);
        }
    }
    let mut rhs = rational_det(&matrix_v(pt))? / den;
    if n % 2 == 1 {
        rhs = -rhs;
    }
    Ok((lhs, rhs))
}

/// Seeded exact-rational trials of the key identity.
pub fn verify_key_lemma(n: usize, trials: usize, seed: u64) -> VerificationReport {
    let params = json!({ "n": n, "trials": trials, "seed": seed });
    VerificationReport::run("key-lemma", params, || -> Res<Outcome> {
        if n == 0 {
            return Err(IdentityError::Precondition("n must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in 0..trials {
            let pt = KeyPoint::sample(n, &mut rng);
            let (lhs, rhs) = key_sides(&pt)?;
            if lhs != rhs {
                return Ok(Outcome::Fail(format!(
                    "trial {t} at {}: det C = {lhs}, right side = {rhs}",
                    pt.describe()
                )));
            }
        }
        Ok(Outcome::Pass(format!("{trials} exact trials")))
    })
}

/// Symbolic form of the key identity with denominators cleared: row `i` of
/// `C` times `∏_j (1 − x_i y_j)(x_i − y_j)` and the last row times `1 − z²`;
/// the determinant of the result must be `(−1)ⁿ det V`.
pub fn verify_key_lemma_symbolic(n: usize) -> VerificationReport {
    VerificationReport::run("key-lemma-symbolic", json!({ "n": n }), || -> Res<Outcome> {
        if n == 0 {
            return Err(IdentityError::Precondition("n must be at least 1".into()));
        }
        let mut names: Vec<String> = Vec::new();
        for pre in ["x", "y", "a", "b"] {
            names.extend((1..=n).map(|i| format!("{pre}{i}")));
        }
        names.push("z".into());
        names.push("c".into());
        let v = VarTable::new(names)?;
        let var = |i: usize| LaurentPoly::var(&v, i);
        let (x, y, a, b) = (
            |i: usize| var(i),
            |i: usize| var(n + i),
            |i: usize| var(2 * n + i),
            |i: usize| var(3 * n + i),
        );
        let z = var(4 * n);
        let c = var(4 * n + 1);
        let one = LaurentPoly::one(&v);
        let factor = |i: usize, k: usize| (&one - &(x(i) * y(k))) * (x(i) - y(k));
        let row_den = |i: usize| (0..n).fold(one.clone(), |acc, k| acc * factor(i, k));
        let zz = &one - &(&z * &z);

        let cleared = RingMatrix::from_fn(&v, n + 1, n + 1, |i, j| match (i < n, j < n) {
            (true, true) => {
                let rest = (0..n).filter(|&k| k != j).fold(one.clone(), |acc, k| acc * factor(i, k));
                p_function(&x(i), &y(j), &z, &a(i), &b(j)) * rest
            }
            (true, false) => (&one - &a(i)) * row_den(i),
            (false, true) => (&one - &b(j)) * &zz,
            (false, false) => &one - &c,
        });
        let size = 2 * n + 1;
        let vrow = |w: &LaurentPoly, e: &LaurentPoly, j: usize| w.pow(j as u32) - e * &w.pow((size - 1 - j) as u32);
        let vmat = RingMatrix::from_fn(&v, size, size, |i, j| {
            if i < n {
                vrow(&x(i), &a(i), j)
            } else if i < 2 * n {
                vrow(&y(i - n), &b(i - n), j)
            } else {
                vrow(&z, &c, j)
            }
        });
        let lhs = cleared.det()?;
        let mut rhs = vmat.det()?;
        if n % 2 == 1 {
            rhs = -rhs;
        }
        Ok(match poly_mismatch(&lhs, &rhs) {
            None => Outcome::Pass(format!("{} terms", lhs.len())),
            Some(w) => Outcome::Fail(w),
        })
    })
}

fn monomial_product(v: &Vars, vars: &[usize], e: i32) -> LaurentPoly {
    vars.iter()
        .fold(LaurentPoly::one(v), |acc, &i| acc * LaurentPoly::var_pow(v, i, e))
}

/// Lemma (a): `(x1⋯xn)^r Sp_{2n+1}(λ)` is polynomial in the `x`'s and at
/// `x1 = 0` reduces to `(x2⋯xn)^r Sp_{2n−1}((λ2, …, λ_{n+1}))` when `λ1 = r`,
/// and to 0 otherwise. Runs over the `(n+1) × r` box.
pub fn verify_reduction_osp(n: usize, r: u32) -> VerificationReport {
    verify_reduction_osp_with(n, r, Exec::default())
}

pub fn verify_reduction_osp_with(n: usize, r: u32, exec: Exec) -> VerificationReport {
    VerificationReport::run("reduction-osp", json!({ "n": n, "r": r }), || -> Res<Outcome> {
        if n == 0 {
            return Err(IdentityError::Precondition("n must be at least 1".into()));
        }
        let v = osp_vars(n);
        let xs: Vec<usize> = (0..n).collect();
        let box_ = enumerate_bounded(n + 1, r);
        let count = box_.len();
        let outcomes = exec.map(&box_, |lambda| -> Res<Outcome> {
            let lifted = monomial_product(&v, &xs, r as i32) * osp_char_in(lambda, &v, &xs, n)?;
            if !lifted.is_polynomial_in(&xs) {
                return Ok(Outcome::Fail(format!("{lambda}: not polynomial in x: {lifted}")));
            }
            let at0 = lifted.substitute(0, &LaurentPoly::zero(&v))?;
            let want = if lambda.first() == r {
                monomial_product(&v, &xs[1..], r as i32) * osp_char_in(&lambda.tail(), &v, &xs[1..], n)?
            } else {
                LaurentPoly::zero(&v)
            };
            Ok(compare(lambda, &at0, &want))
        });
        fold(outcomes, format!("{count} partitions"))
    })
}

/// Lemma (b), the even symplectic analogue with `Sp_0 ≡ 1`; `n × r` box.
pub fn verify_reduction_sp(n: usize, r: u32) -> VerificationReport {
    verify_reduction_sp_with(n, r, Exec::default())
}

pub fn verify_reduction_sp_with(n: usize, r: u32, exec: Exec) -> VerificationReport {
    VerificationReport::run("reduction-sp", json!({ "n": n, "r": r }), || -> Res<Outcome> {
        if n == 0 {
            return Err(IdentityError::Precondition("n must be at least 1".into()));
        }
        let v = x_vars(n);
        let xs: Vec<usize> = (0..n).collect();
        let box_ = enumerate_bounded(n, r);
        let count = box_.len();
        let outcomes = exec.map(&box_, |lambda| -> Res<Outcome> {
            let lifted = monomial_product(&v, &xs, r as i32) * sp_even_in(lambda, &v, &xs)?;
            if !lifted.is_polynomial_in(&xs) {
                return Ok(Outcome::Fail(format!("{lambda}: not polynomial in x: {lifted}")));
            }
            let at0 = lifted.substitute(0, &LaurentPoly::zero(&v))?;
            let want = if lambda.first() == r {
                monomial_product(&v, &xs[1..], r as i32) * sp_even_in(&lambda.tail(), &v, &xs[1..])?
            } else {
                LaurentPoly::zero(&v)
            };
            Ok(compare(lambda, &at0, &want))
        });
        fold(outcomes, format!("{count} partitions"))
    })
}

/// Variables `x1..xm, y1..yn, z` shared by both sides of the identity.
pub fn bkw_vars(m: usize, n: usize) -> Vars {
    let names = (1..=m)
        .map(|i| format!("x{i}"))
        .chain((1..=n).map(|i| format!("y{i}")))
        .chain(["z".to_string()]);
    VarTable::new(names).expect("distinct names")
}

/// Left side: `Σ_λ z^{−r} Sp_{2m+1}(λ; x; z) Sp_{2n+1}((r^{n−m}) ∪ λ; y; z)` over
/// the `(m+1) × r` box, partial sums reduced in enumeration order.
pub fn bkw_lhs(m: usize, n: usize, r: u32, exec: Exec) -> Res<LaurentPoly> {
    let v = bkw_vars(m, n);
    let xs: Vec<usize> = (0..m).collect();
    let ys: Vec<usize> = (m..m + n).collect();
    let z = m + n;
    let zr = LaurentPoly::var_pow(&v, z, -(r as i32));
    let terms = exec.map(&enumerate_bounded(m + 1, r), |lambda| -> Res<LaurentPoly> {
        let left = osp_char_in(lambda, &v, &xs, z)?;
        let right = osp_char_in(&prepend_rect(r, n - m, lambda)?, &v, &ys, z)?;
        Ok(&zr * &(left * right))
    });
    let mut acc = LaurentPoly::zero(&v);
    for t in terms {
        acc = acc + t?;
    }
    Ok(acc)
}

/// Right side: `Sp_{2(m+n+1)}((r^{m+n+1}); x, y, z)`.
pub fn bkw_rhs(m: usize, n: usize, r: u32) -> Res<LaurentPoly> {
    let v = bkw_vars(m, n);
    let all: Vec<usize> = (0..m + n + 1).collect();
    Ok(sp_even_in(&rectangle(r, m + n + 1), &v, &all)?)
}

pub fn verify_bkw(m: usize, n: usize, r: u32) -> VerificationReport {
    verify_bkw_with(m, n, r, Exec::default())
}

pub fn verify_bkw_with(m: usize, n: usize, r: u32, exec: Exec) -> VerificationReport {
    VerificationReport::run("bkw", json!({ "m": m, "n": n, "r": r }), || -> Res<Outcome> {
        if m == 0 || m > n {
            return Err(IdentityError::Precondition(format!("need 1 ≤ m ≤ n, got m={m}, n={n}")));
        }
        let lhs = bkw_lhs(m, n, r, exec)?;
        let rhs = bkw_rhs(m, n, r)?;
        Ok(match poly_mismatch(&lhs, &rhs) {
            None => Outcome::Pass(format!("{} terms", lhs.len())),
            Some(w) => Outcome::Fail(w),
        })
    })
}

/// Every character the oracle reaches under `degree_cap` against the bialternant.
pub fn verify_osp_vs_oracle(n: usize, degree_cap: u32) -> VerificationReport {
    verify_osp_vs_oracle_with(n, degree_cap, Exec::default())
}

pub fn verify_osp_vs_oracle_with(n: usize, degree_cap: u32, exec: Exec) -> VerificationReport {
    VerificationReport::run("oracle", json!({ "n": n, "degree": degree_cap }), || -> Res<Outcome> {
        let table: Vec<(Partition, LaurentPoly)> =
            extract_characters(&cauchy_rhs(n, degree_cap)?, n)?.into_iter().collect();
        let count = table.len();
        let outcomes = exec.map(&table, |(lambda, c)| -> Res<Outcome> {
            Ok(compare(lambda, c, &osp_char(lambda, n)?))
        });
        fold(outcomes, format!("{count} partitions"))
    })
}

/// Bialternant and oracle, both specialized at `z = −1`.
pub fn verify_z_minus_one(n: usize, degree_cap: u32) -> VerificationReport {
    VerificationReport::run("z-minus-one", json!({ "n": n, "degree": degree_cap }), || -> Res<Outcome> {
        let table = extract_characters(&cauchy_rhs(n, degree_cap)?, n)?;
        let count = table.len();
        let mut outcomes = Vec::with_capacity(count);
        for (lambda, c) in &table {
            let m1 = LaurentPoly::constant(c.vars(), -1);
            let lhs = osp_char(lambda, n)?.substitute(n, &m1)?;
            let rhs = c.substitute(n, &m1)?;
            outcomes.push(Ok(compare(lambda, &lhs, &rhs)));
        }
        fold(outcomes, format!("{count} partitions"))
    })
}

/// `osp_char` at `z = 1` in `t` against Proctor's `det B_λ / det B_∅`, `|λ| ≤ max_size`.
pub fn verify_proctor(n: usize, max_size: u32) -> VerificationReport {
    verify_proctor_with(n, max_size, Exec::default())
}

pub fn verify_proctor_with(n: usize, max_size: u32, exec: Exec) -> VerificationReport {
    VerificationReport::run("proctor", json!({ "n": n, "max_size": max_size }), || -> Res<Outcome> {
        let grid = enumerate_by_size(n + 1, max_size);
        let count = grid.len();
        let outcomes = exec.map(&grid, |lambda| -> Res<Outcome> {
            Ok(compare(lambda, &osp_at_z1_in_t(lambda, n)?, &osp_proctor(lambda, n)?))
        });
        fold(outcomes, format!("{count} partitions"))
    })
}

/// The q-product over `Δ⁺(D_{n+1})` against Proctor's formula at `t_i = s^{n−i+1}`.
pub fn verify_principal(n: usize, max_size: u32) -> VerificationReport {
    verify_principal_with(n, max_size, Exec::default())
}

pub fn verify_principal_with(n: usize, max_size: u32, exec: Exec) -> VerificationReport {
    VerificationReport::run("principal", json!({ "n": n, "max_size": max_size }), || -> Res<Outcome> {
        let grid = enumerate_by_size(n + 1, max_size);
        let count = grid.len();
        let outcomes = exec.map(&grid, |lambda| -> Res<Outcome> {
            let product = q_to_s(&osp_principal_q(lambda, n)?)?;
            let specialized = principal_in_s(&osp_proctor(lambda, n)?, n)?;
            Ok(compare(lambda, &product, &specialized))
        });
        fold(outcomes, format!("{count} partitions"))
    })
}

/// Structural symmetries over `|λ| ≤ max_size`: `osp_char` is polynomial in
/// `z` and invariant under `x_i ↔ x_i⁻¹` and permutations of the `x`'s;
/// `sp_even` is inversion invariant; Schur polynomials are symmetric.
pub fn verify_symmetry(n: usize, max_size: u32) -> VerificationReport {
    verify_symmetry_with(n, max_size, Exec::default())
}

fn symmetric_under_transpositions(c: &LaurentPoly, k: usize) -> bool {
    (0..k.saturating_sub(1)).all(|i| &swap_vars(c, i, i + 1) == c)
}

fn inversion_invariant(c: &LaurentPoly, k: usize) -> bool {
    (0..k).all(|i| &invert_var(c, i) == c)
}

pub fn verify_symmetry_with(n: usize, max_size: u32, exec: Exec) -> VerificationReport {
    VerificationReport::run("symmetry", json!({ "n": n, "max_size": max_size }), || -> Res<Outcome> {
        let osp_grid = enumerate_by_size(n + 1, max_size);
        let small_grid = enumerate_by_size(n, max_size);
        let count = osp_grid.len() + 2 * small_grid.len();
        let mut outcomes = exec.map(&osp_grid, |lambda| -> Res<Outcome> {
            let c = osp_char(lambda, n)?;
            Ok(if !c.is_polynomial_in(&[n]) {
                Outcome::Fail(format!("osp {lambda}: negative power of z"))
            } else if !inversion_invariant(&c, n) {
                Outcome::Fail(format!("osp {lambda}: not invariant under x_i ↔ 1/x_i"))
            } else if !symmetric_under_transpositions(&c, n) {
                Outcome::Fail(format!("osp {lambda}: not symmetric in x"))
            } else {
                Outcome::Pass(String::new())
            })
        });
        outcomes.extend(exec.map(&small_grid, |lambda| -> Res<Outcome> {
            let s = schur(lambda, n)?;
            let sp = sp_even(lambda, n)?;
            Ok(if !symmetric_under_transpositions(&s, n) {
                Outcome::Fail(format!("schur {lambda}: not symmetric"))
            } else if !inversion_invariant(&sp, n) || !symmetric_under_transpositions(&sp, n) {
                Outcome::Fail(format!("sp_even {lambda}: not Weyl invariant"))
            } else {
                Outcome::Pass(String::new())
            })
        }));
        fold(outcomes, format!("{count} characters"))
    })
}

/// Cauchy–Binet on seeded random integer matrices with at most 4 rows and
/// 7 columns, plus the 2×3 example whose squared minors sum to 3.
pub fn verify_cauchy_binet(trials: usize, seed: u64) -> VerificationReport {
    verify_cauchy_binet_with(trials, seed, Exec::default())
}

pub fn verify_cauchy_binet_with(trials: usize, seed: u64, exec: Exec) -> VerificationReport {
    let params = json!({ "trials": trials, "seed": seed });
    VerificationReport::run("cauchy-binet", params, || -> Res<Outcome> {
        let v = VarTable::new(["u"])?;
        let example = RingMatrix::from_ints(&v, &[vec![1, 0, 1], vec![0, 1, 1]])?;
        let (lhs, rhs) = cauchy_binet_sum_with(&example, &example, exec)?;
        let three = LaurentPoly::constant(&v, 3);
        if lhs != three || rhs != three {
            return Ok(Outcome::Fail(format!("worked example: sum {lhs}, det {rhs}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in 0..trials {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(rows..=7);
            let mut draw = || -> Vec<Vec<i64>> {
                (0..rows)
                    .map(|_| (0..cols).map(|_| rng.gen_range(-5..=5)).collect())
                    .collect()
            };
            let (xi, yi) = (draw(), draw());
            let x = RingMatrix::from_ints(&v, &xi)?;
            let y = RingMatrix::from_ints(&v, &yi)?;
            let (lhs, rhs) = cauchy_binet_sum_with(&x, &y, exec)?;
            if lhs != rhs {
                return Ok(Outcome::Fail(format!(
                    "trial {t} ({rows}×{cols}) X={xi:?} Y={yi:?}: sum {lhs}, det {rhs}"
                )));
            }
        }
        Ok(Outcome::Pass(format!("{trials} random trials and the 2×3 example")))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    #[test]
    fn cleared_p_special_cases() {
        let v = VarTable::new(["x", "y", "z", "a", "b"]).unwrap();
        let g = |i| LaurentPoly::var(&v, i);
        let zero = LaurentPoly::zero(&v);
        let got = p_function(&g(0), &g(1), &g(2), &zero, &zero);
        let one = LaurentPoly::one(&v);
        let want = (&one - &(g(0) * g(2))) * (&one - &(g(1) * g(2))) * (g(0) - g(1));
        assert_eq!(got, want);
        // (x, a) ↔ (y, b) negates the cleared form
        let full = p_function(&g(0), &g(1), &g(2), &g(3), &g(4));
        let swapped = p_function(&g(1), &g(0), &g(2), &g(4), &g(3));
        assert_eq!(swapped, -full);
    }

    #[test]
    fn cleared_p_matches_rational_evaluation() {
        let v = VarTable::new(["x", "y", "z", "a", "b"]).unwrap();
        let g = |i| LaurentPoly::var(&v, i);
        let cleared = p_function(&g(0), &g(1), &g(2), &g(3), &g(4));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut checked = 0;
        while checked < 30 {
            let pt: Vec<BigRational> = (0..5).map(|_| small_rational(&mut rng)).collect();
            let (x, y) = (&pt[0], &pt[1]);
            if x == y || x * y == BigRational::one() {
                continue;
            }
            let direct = p_rational(x, y, &pt[2], &pt[3], &pt[4]).unwrap();
            let scale = (BigRational::one() - x * y) * (x - y);
            assert_eq!(cleared.eval(&pt).unwrap(), direct * scale);
            checked += 1;
        }
    }

    #[test]
    fn matrix_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pt = KeyPoint::sample(2, &mut rng);
        let c = matrix_c(&pt).unwrap();
        assert_eq!((c.len(), c[0].len()), (3, 3));
        assert_eq!(c[0][1], p_rational(&pt.xs[0], &pt.ys[1], &pt.z, &pt.a[0], &pt.b[1]).unwrap());
        assert_eq!(c[1][2], BigRational::one() - &pt.a[1]);
        assert_eq!(c[2][0], BigRational::one() - &pt.b[0]);
        let vm = matrix_v(&pt);
        assert_eq!((vm.len(), vm[0].len()), (5, 5));
        // first column: 1 − a·x^4
        assert_eq!(vm[0][0], BigRational::one() - &pt.a[0] * num_traits::pow::Pow::pow(&pt.xs[0], 4u32));
    }

    #[test]
    fn corner_is_one_when_c_is_z_squared() {
        let pt = KeyPoint {
            xs: vec![q(2, 1)],
            ys: vec![q(3, 1)],
            z: q(1, 2),
            a: vec![q(0, 1)],
            b: vec![q(0, 1)],
            c: q(1, 4),
        };
        assert!(matrix_c(&pt).unwrap()[1][1].is_one());
        let plain = matrix_v(&KeyPoint { c: q(0, 1), ..pt });
        assert_eq!(plain[0], vec![q(1, 1), q(2, 1), q(4, 1)]);
    }

    #[test]
    fn singular_points_are_rejected() {
        let pt = KeyPoint {
            xs: vec![q(2, 1)],
            ys: vec![q(1, 2)],
            z: q(3, 1),
            a: vec![q(1, 1)],
            b: vec![q(1, 1)],
            c: q(1, 1),
        };
        assert!(pt.is_singular());
        assert!(KeyPoint { ys: vec![q(5, 1)], z: q(-1, 1), ..pt.clone() }.is_singular());
        assert!(!KeyPoint { ys: vec![q(5, 1)], ..pt }.is_singular());
    }

    #[test]
    fn key_lemma_trials() {
        for (n, trials) in [(1, 20), (2, 20), (3, 10)] {
            let r = verify_key_lemma(n, trials, 7);
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn key_lemma_is_seed_deterministic() {
        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(9);
        assert_eq!(KeyPoint::sample(2, &mut a), KeyPoint::sample(2, &mut b));
    }

    #[test]
    fn key_lemma_symbolic_small() {
        let r = verify_key_lemma_symbolic(1);
        assert!(r.pass, "{r}");
    }

    #[test]
    fn reduction_hand_cases() {
        let v = osp_vars(1);
        let c = osp_char(&p(&[1]), 1).unwrap();
        let lifted = LaurentPoly::var(&v, 0) * c;
        assert_eq!(lifted, LaurentPoly::parse("x1^2 + 1 + x1*z", &v).unwrap());
        assert!(lifted.substitute(0, &LaurentPoly::zero(&v)).unwrap().is_one());
        for (n, r) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let a = verify_reduction_osp(n, r);
            assert!(a.pass, "{a}");
            let b = verify_reduction_sp(n, r);
            assert!(b.pass, "{b}");
        }
    }

    #[test]
    fn bkw_small_cases() {
        let r0 = verify_bkw(1, 1, 0);
        assert!(r0.pass, "{r0}");
        let v = bkw_vars(1, 1);
        assert!(bkw_rhs(1, 1, 0).unwrap().is_one());
        assert_eq!(bkw_rhs(1, 1, 0).unwrap().vars().names(), v.names());
        for (m, n, r) in [(1, 1, 1), (1, 2, 1)] {
            let rep = verify_bkw(m, n, r);
            assert!(rep.pass, "{rep}");
        }
        assert!(!verify_bkw(2, 1, 1).pass);
    }

    #[test]
    fn bkw_sequential_and_parallel_agree() {
        assert_eq!(
            bkw_lhs(1, 1, 2, Exec::Sequential).unwrap(),
            bkw_lhs(1, 1, 2, Exec::Parallel).unwrap()
        );
    }

    #[test]
    fn oracle_agreement_small() {
        for (n, cap) in [(1, 5), (1, 1), (2, 5)] {
            let r = verify_osp_vs_oracle(n, cap);
            assert!(r.pass, "{r}");
        }
        let r = verify_z_minus_one(1, 4);
        assert!(r.pass, "{r}");
    }

    #[test]
    fn formula_cross_checks_small() {
        for n in 1..=2 {
            for r in [verify_proctor(n, 3), verify_principal(n, 3), verify_symmetry(n, 3)] {
                assert!(r.pass, "{r}");
            }
        }
    }

    #[test]
    fn cauchy_binet_trials() {
        let r = verify_cauchy_binet(10, 4);
        assert!(r.pass, "{r}");
    }

    #[test]
    fn failing_reports_have_witnesses() {
        let r = verify_key_lemma(0, 1, 0);
        assert!(!r.pass);
        assert!(r.detail.contains("n must be"));
    }
}
