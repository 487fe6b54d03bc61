//! Dense matrices over the Laurent ring: determinants, column minors, the
//! Cauchy–Binet expansion and the two Cauchy determinant evaluations.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;
use thiserror::Error;

use crate::laurent::{LaurentPoly, RingError, VarTable, Vars};
use crate::par::Exec;
use crate::partition::IndexSet;
use crate::report::{poly_mismatch, Outcome, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("matrix is {rows}×{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("column index {index} out of range for {cols} columns")]
    IndexOutOfRange { index: usize, cols: usize },
    #[error("fraction-free elimination hit an inexact division at step {step}; this is a bug")]
    InexactElimination { step: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RingMatrix {
    vars: Vars,
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl RingMatrix {
    pub fn from_fn<F>(vars: &Vars, rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> LaurentPoly,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert!(
                    e.vars() == vars || e.vars().names() == vars.names(),
                    "matrix entries must share the matrix variable table"
                );
                entries.push(e);
            }
        }
        RingMatrix {
            vars: vars.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows(vars: &Vars, rows: Vec<Vec<LaurentPoly>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        for e in rows.iter().flatten() {
            if e.vars().names() != vars.names() {
                return Err(RingError::VarMismatch(
                    vars.names().to_vec(),
                    e.vars().names().to_vec(),
                )
                .into());
            }
        }
        Ok(RingMatrix {
            vars: vars.clone(),
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix embedded as constants.
    pub fn from_ints(vars: &Vars, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&k| LaurentPoly::constant(vars, k)).collect())
            .collect();
        Self::from_rows(vars, rows)
    }

    pub fn identity(vars: &Vars, n: usize) -> Self {
        Self::from_fn(vars, n, n, |i, j| {
            if i == j {
                LaurentPoly::one(vars)
            } else {
                LaurentPoly::zero(vars)
            }
        })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn transpose(&self) -> RingMatrix {
        Self::from_fn(&self.vars, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn try_mul(&self, other: &RingMatrix) -> Result<RingMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentPoly::zero(&self.vars);
                for k in 0..self.cols {
                    acc = acc.try_add(&self.get(i, k).try_mul(other.get(k, j))?)?;
                }
                out.push(acc);
            }
        }
        Ok(RingMatrix {
            vars: self.vars.clone(),
            rows: self.rows,
            cols: other.cols,
            entries: out,
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Applies `f` to every entry.
    pub fn map<F>(&self, mut f: F) -> Result<RingMatrix, RingError>
    where
        F: FnMut(&LaurentPoly) -> Result<LaurentPoly, RingError>,
    {
        let entries = self.entries.iter().map(&mut f).collect::<Result<Vec<_>, _>>()?;
        let vars = entries.first().map_or(self.vars.clone(), |e| e.vars().clone());
        Ok(RingMatrix {
            vars,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Columns listed in `cols`, in ascending index order.
    pub fn submatrix_cols(&self, cols: &IndexSet) -> Result<RingMatrix, LinalgError> {
        let picked = cols.ascending();
        if let Some(&bad) = picked.iter().find(|&&c| c >= self.cols) {
            return Err(LinalgError::IndexOutOfRange {
                index: bad,
                cols: self.cols,
            });
        }
        Ok(Self::from_fn(&self.vars, self.rows, picked.len(), |i, j| {
            self.get(i, picked[j]).clone()
        }))
    }

    fn check_square(&self) -> Result<usize, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Exact determinant: cofactor expansion up to 4×4, fraction-free
    /// Bareiss elimination above.
    pub fn det(&self) -> Result<LaurentPoly, LinalgError> {
        let n = self.check_square()?;
        if n <= 4 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Result<LaurentPoly, LinalgError> {
        let n = self.check_square()?;
        let cols: Vec<usize> = (0..n).collect();
        Ok(self.laplace(0, &cols))
    }

    fn laplace(&self, row: usize, cols: &[usize]) -> LaurentPoly {
        match cols.len() {
            0 => LaurentPoly::one(&self.vars),
            1 => self.get(row, cols[0]).clone(),
            2 => {
                self.get(row, cols[0]) * self.get(row + 1, cols[1])
                    - self.get(row, cols[1]) * self.get(row + 1, cols[0])
            }
            _ => {
                let mut acc = LaurentPoly::zero(&self.vars);
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(row, c);
                    if a.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = a * &self.laplace(row + 1, &rest);
                    acc = if k % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    /// Bareiss fraction-free elimination. Every interior division is exact
    /// in an integral domain, so a failed division signals a bug.
    pub fn det_bareiss(&self) -> Result<LaurentPoly, LinalgError> {
        let n = self.check_square()?;
        if n == 0 {
            return Ok(LaurentPoly::one(&self.vars));
        }
        let mut m = self.clone();
        let mut negate = false;
        let mut prev = LaurentPoly::one(&self.vars);
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !m.get(i, k).is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Ok(LaurentPoly::zero(&self.vars)),
                }
            }
            let pivot = m.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let cross = &(m.get(i, j) * &pivot) - &(m.get(i, k) * m.get(k, j));
                    let e = cross.exact_div(&prev).map_err(|e| match e {
                        RingError::NotDivisible => LinalgError::InexactElimination { step: k },
                        other => other.into(),
                    })?;
                    m.entries[i * n + j] = e;
                }
                m.entries[i * n + k] = LaurentPoly::zero(&self.vars);
            }
            prev = pivot;
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if negate { -d } else { d })
    }
}

/// All `k`-subsets of `0..n` in ascending lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Both sides of Cauchy–Binet for `rows ≤ cols`:
/// `Σ_I det X(I)·det Y(I)` over row-count-sized column subsets, and `det(X·Yᵀ)`.
pub fn cauchy_binet_sum(
    x: &RingMatrix,
    y: &RingMatrix,
) -> Result<(LaurentPoly, LaurentPoly), LinalgError> {
    cauchy_binet_sum_with(x, y, Exec::default())
}

pub fn cauchy_binet_sum_with(
    x: &RingMatrix,
    y: &RingMatrix,
    exec: Exec,
) -> Result<(LaurentPoly, LaurentPoly), LinalgError> {
    if x.rows != y.rows || x.cols != y.cols {
        return Err(LinalgError::Shape(format!(
            "{}×{} vs {}×{}",
            x.rows, x.cols, y.rows, y.cols
        )));
    }
    if x.rows > x.cols {
        return Err(LinalgError::Shape("more rows than columns".into()));
    }
    let subsets = combinations(x.cols, x.rows);
    let minors = exec.map(&subsets, |cols| -> Result<LaurentPoly, LinalgError> {
        let set = IndexSet::new(cols.clone()).expect("combinations are distinct");
        let dx = x.submatrix_cols(&set)?.det()?;
        let dy = y.submatrix_cols(&set)?.det()?;
        Ok(dx.try_mul(&dy)?)
    });
    let mut lhs = LaurentPoly::zero(&x.vars);
    for m in minors {
        lhs = lhs.try_add(&m?)?;
    }
    let rhs = x.try_mul(&y.transpose())?.det()?;
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CauchyVariant {
    /// `det(1/(x_i − y_j))`
    Difference,
    /// `det(1/(1 − x_i y_j))`
    OneMinus,
}

impl CauchyVariant {
    pub fn name(self) -> &'static str {
        match self {
            CauchyVariant::Difference => "difference",
            CauchyVariant::OneMinus => "one_minus",
        }
    }
}

/// Checks a Cauchy determinant in cleared form: row `i` is multiplied by
/// `∏_k d(x_i, y_k)`, leaving entries `∏_{k≠j} d(x_i, y_k)`, whose
/// determinant must equal `±∏_{i<j}(x_i − x_j)(y_i − y_j)`.
pub fn cauchy_det_check(n: usize, variant: CauchyVariant) -> VerificationReport {
    VerificationReport::run(
        &format!("cauchy-{}", variant.name()),
        json!({ "n": n }),
        || -> Result<Outcome, LinalgError> {
            let names: Vec<String> = (1..=n)
                .map(|i| format!("x{i}"))
                .chain((1..=n).map(|i| format!("y{i}")))
                .collect();
            let vars = VarTable::new(names)?;
            let x = |i: usize| LaurentPoly::var(&vars, i);
            let y = |j: usize| LaurentPoly::var(&vars, n + j);
            let one = LaurentPoly::one(&vars);
            let factor = |i: usize, k: usize| match variant {
                CauchyVariant::Difference => x(i) - y(k),
                CauchyVariant::OneMinus => &one - &(x(i) * y(k)),
            };
            let cleared = RingMatrix::from_fn(&vars, n, n, |i, j| {
                (0..n)
                    .filter(|&k| k != j)
                    .fold(one.clone(), |acc, k| acc * factor(i, k))
            });
            let lhs = cleared.det()?;
            let mut rhs = one.clone();
            for i in 0..n {
                for j in i + 1..n {
                    rhs = rhs * (x(i) - x(j)) * (y(i) - y(j));
                }
            }
            if variant == CauchyVariant::Difference && (n * (n - 1) / 2) % 2 == 1 {
                rhs = -rhs;
            }
            Ok(match poly_mismatch(&lhs, &rhs) {
                None => Outcome::Pass(format!("{} terms", lhs.len())),
                Some(w) => Outcome::Fail(w),
            })
        },
    )
}

/// Determinant over the rationals by Gaussian elimination.
pub fn rational_det(rows: &[Vec<BigRational>]) -> Result<BigRational, LinalgError> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(LinalgError::NotSquare {
            rows: n,
            cols: rows.first().map_or(0, Vec::len),
        });
    }
    let mut m = rows.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Ok(BigRational::zero());
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot_row = m[k].clone();
        let pivot = &pivot_row[k];
        det *= pivot;
        for row in m.iter_mut().skip(k + 1) {
            if row[k].is_zero() {
                continue;
            }
            let f = &row[k] / pivot;
            for (a, b) in row.iter_mut().zip(&pivot_row).skip(k) {
                *a -= &f * b;
            }
        }
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn vars(names: &[&str]) -> Vars {
        VarTable::new(names.iter().copied()).unwrap()
    }

    fn random_ints(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Vec<Vec<i64>> {
        (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-5..=5)).collect())
            .collect()
    }

    // Leibniz formula over all permutations: independent of both det routes.
    fn leibniz(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0i64;
        permute(&mut perm, 0, m, &mut total);
        total
    }

    fn permute(p: &mut Vec<usize>, k: usize, m: &[Vec<i64>], total: &mut i64) {
        if k == p.len() {
            let mut inv = 0;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            let prod: i64 = (0..p.len()).map(|i| m[i][p[i]]).product();
            *total += if inv % 2 == 0 { prod } else { -prod };
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, m, total);
            p.swap(k, i);
        }
    }

    #[test]
    fn vandermonde_two_by_two() {
        let v = vars(&["x1", "x2"]);
        let m = RingMatrix::from_rows(
            &v,
            vec![
                vec![LaurentPoly::var(&v, 0), LaurentPoly::one(&v)],
                vec![LaurentPoly::var(&v, 1), LaurentPoly::one(&v)],
            ],
        )
        .unwrap();
        assert_eq!(m.det().unwrap(), LaurentPoly::parse("x1 - x2", &v).unwrap());
    }

    #[test]
    fn identity_has_unit_determinant() {
        let v = vars(&["x"]);
        for n in 0..7 {
            assert!(RingMatrix::identity(&v, n).det().unwrap().is_one());
            assert!(RingMatrix::identity(&v, n).det_bareiss().unwrap().is_one());
        }
    }

    #[test]
    fn non_square_is_rejected() {
        let v = vars(&["x"]);
        let m = RingMatrix::from_ints(&v, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(m.det(), Err(LinalgError::NotSquare { rows: 1, cols: 3 }));
    }

    #[test]
    fn bareiss_matches_cofactor_and_leibniz_on_integers() {
        let v = vars(&["x"]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=5 {
            for _ in 0..10 {
                let ints = random_ints(&mut rng, n, n);
                let m = RingMatrix::from_ints(&v, &ints).unwrap();
                let want = LaurentPoly::constant(&v, leibniz(&ints));
                assert_eq!(m.det_bareiss().unwrap(), want);
                assert_eq!(m.det_cofactor().unwrap(), want);
            }
        }
    }

    #[test]
    fn bareiss_with_zero_pivots() {
        let v = vars(&["x"]);
        let ints = vec![
            vec![0, 1, 2, 0, 1],
            vec![0, 3, 1, 1, 0],
            vec![2, 0, 0, 1, 1],
            vec![1, 1, 0, 0, 2],
            vec![0, 0, 1, 2, 3],
        ];
        let m = RingMatrix::from_ints(&v, &ints).unwrap();
        assert_eq!(m.det_bareiss().unwrap(), LaurentPoly::constant(&v, leibniz(&ints)));
        let singular = RingMatrix::from_ints(&v, &[vec![0, 1], vec![0, 2]]).unwrap();
        assert!(singular.det_bareiss().unwrap().is_zero());
    }

    #[test]
    fn bareiss_over_laurent_entries() {
        let v = vars(&["x", "y", "z"]);
        let entry = |i: usize, j: usize| {
            let var = LaurentPoly::var(&v, i % 3);
            let e = (i as i32 + 1) * (j as i32) - 2;
            var.ipow(e).unwrap() + LaurentPoly::var_pow(&v, (i + j) % 3, -1)
        };
        let m = RingMatrix::from_fn(&v, 5, 5, entry);
        assert_eq!(m.det_bareiss().unwrap(), m.det_cofactor().unwrap());
    }

    #[test]
    fn row_swap_negates() {
        let v = vars(&["x", "y"]);
        let m = RingMatrix::from_fn(&v, 3, 3, |i, j| {
            LaurentPoly::var_pow(&v, (i + j) % 2, i as i32 - j as i32) + LaurentPoly::constant(&v, (i * j) as i64)
        });
        let mut s = m.clone();
        s.swap_rows(0, 2);
        assert_eq!(s.det().unwrap(), -m.det().unwrap());
    }

    #[test]
    fn determinant_is_multiplicative() {
        let v = vars(&["x"]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=5 {
            let a = RingMatrix::from_ints(&v, &random_ints(&mut rng, n, n)).unwrap();
            let b = RingMatrix::from_ints(&v, &random_ints(&mut rng, n, n)).unwrap();
            let ab = a.try_mul(&b).unwrap();
            assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }
    }

    #[test]
    fn column_selection() {
        let v = vars(&["x"]);
        let m = RingMatrix::from_ints(&v, &[vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8, 9]]).unwrap();
        let sub = m.submatrix_cols(&IndexSet::new(vec![3, 0]).unwrap()).unwrap();
        assert_eq!(sub, RingMatrix::from_ints(&v, &[vec![0, 3], vec![5, 8]]).unwrap());
        let all = m.submatrix_cols(&IndexSet::new((0..5).collect()).unwrap()).unwrap();
        assert_eq!(all, m);
        assert_eq!(
            m.submatrix_cols(&IndexSet::new(vec![7]).unwrap()),
            Err(LinalgError::IndexOutOfRange { index: 7, cols: 5 })
        );
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(combinations(7, 4).len(), 35);
    }

    #[test]
    fn cauchy_binet_worked_example() {
        let v = vars(&["x"]);
        let x = RingMatrix::from_ints(&v, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let (lhs, rhs) = cauchy_binet_sum(&x, &x).unwrap();
        assert_eq!(lhs, LaurentPoly::constant(&v, 3));
        assert_eq!(rhs, LaurentPoly::constant(&v, 3));
    }

    #[test]
    fn cauchy_binet_square_case() {
        let v = vars(&["x"]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = RingMatrix::from_ints(&v, &random_ints(&mut rng, 3, 3)).unwrap();
        let y = RingMatrix::from_ints(&v, &random_ints(&mut rng, 3, 3)).unwrap();
        let (lhs, rhs) = cauchy_binet_sum(&x, &y).unwrap();
        assert_eq!(lhs, x.det().unwrap() * y.det().unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cauchy_binet_against_brute_minors() {
        let v = vars(&["x"]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let xi = random_ints(&mut rng, 3, 5);
            let yi = random_ints(&mut rng, 3, 5);
            let mut brute = 0i64;
            for cols in combinations(5, 3) {
                let pick = |m: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
                    m.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect()
                };
                brute += leibniz(&pick(&xi)) * leibniz(&pick(&yi));
            }
            let x = RingMatrix::from_ints(&v, &xi).unwrap();
            let y = RingMatrix::from_ints(&v, &yi).unwrap();
            let (lhs, rhs) = cauchy_binet_sum(&x, &y).unwrap();
            assert_eq!(lhs, LaurentPoly::constant(&v, brute));
            assert_eq!(rhs, lhs);
        }
    }

    #[test]
    fn cauchy_binet_shape_errors() {
        let v = vars(&["x"]);
        let a = RingMatrix::from_ints(&v, &[vec![1, 2]]).unwrap();
        let b = RingMatrix::from_ints(&v, &[vec![1], vec![2]]).unwrap();
        assert!(matches!(cauchy_binet_sum(&a, &b), Err(LinalgError::Shape(_))));
        assert!(matches!(cauchy_binet_sum(&b, &b), Err(LinalgError::Shape(_))));
    }

    #[test]
    fn cauchy_determinants_small() {
        assert!(cauchy_det_check(1, CauchyVariant::OneMinus).pass);
        assert!(cauchy_det_check(1, CauchyVariant::Difference).pass);
        assert!(cauchy_det_check(2, CauchyVariant::Difference).pass);
        assert!(cauchy_det_check(3, CauchyVariant::OneMinus).pass);
    }

    #[test]
    fn rational_determinant() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let m = vec![vec![q(1, 2), q(1, 3)], vec![q(1, 4), q(1, 5)]];
        assert_eq!(rational_det(&m).unwrap(), q(1, 10) - q(1, 12));
        let z = vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]];
        assert_eq!(rational_det(&z).unwrap(), q(-1, 1));
        assert!(rational_det(&[vec![q(1, 1)], vec![q(1, 1)]]).is_err());
    }
}
