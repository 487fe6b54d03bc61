//! Sparse multivariate Laurent polynomials with arbitrary-precision integer
//! coefficients.
//!
//! A polynomial carries a shared [`VarTable`]; every monomial is an exponent
//! vector with one slot per table entry. Terms are kept in a `BTreeMap` keyed
//! by graded-lexicographic order, so two polynomials are equal exactly when
//! their term maps are equal. The order is compatible with multiplication by
//! monomials (it is a group order on `Z^n`), which is what makes leading-term
//! exact division work in the Laurent setting.

mod json;
mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

pub use json::{PolyJson, TermJson};
pub use text::variables_in;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("polynomials live over different variable tables ({0:?} vs {1:?})")]
    VarMismatch(Vec<String>, Vec<String>),
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("negative power of a non-monomial")]
    NegativePower,
    #[error("division by zero")]
    DivisionByZero,
    #[error("no exact quotient exists")]
    NotDivisible,
    #[error("substituting a non-unit for {0} where it appears with a negative exponent")]
    NegativeExponentAtNonUnit(String),
    #[error("variable {0} is zero but appears with a negative exponent")]
    ZeroAtNegativePower(String),
    #[error("variable {0} has no assigned value")]
    Unassigned(String),
    #[error("exponent vector has {got} slots, table has {expected}")]
    ExponentLength { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Ordered, duplicate-free list of variable names.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
}

pub type Vars = Arc<VarTable>;

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Vars, RingError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(RingError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VarTable { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize, RingError> {
        self.index_of(name)
            .ok_or_else(|| RingError::UnknownVariable(name.to_string()))
    }

    /// A new table with `extra` names appended (names already present are skipped).
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Vars {
        let mut names = self.names.clone();
        for e in extra {
            if !names.iter().any(|n| n == e.as_ref()) {
                names.push(e.as_ref().to_string());
            }
        }
        Arc::new(VarTable { names })
    }
}

fn same_table(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

/// Exponent vector, one signed slot per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[i32; 8]>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(SmallVec::from_elem(0, len))
    }

    pub fn from_exps(exps: &[i32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn exp(&self, var: usize) -> i32 {
        self.0[var]
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An exact Laurent polynomial over a [`VarTable`].
#[derive(Clone)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Monomial, BigInt>,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, 1)
    }

    pub fn constant(vars: &Vars, c: impl Into<BigInt>) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    /// `c · m`; a zero coefficient gives the zero polynomial.
    pub fn monomial(vars: &Vars, m: Monomial, c: impl Into<BigInt>) -> Self {
        assert_eq!(m.0.len(), vars.len(), "monomial width must match the variable table");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly {
            vars: vars.clone(),
            terms,
        }
    }

    /// The single variable `vars[i]` raised to `e` (any sign).
    pub fn var_pow(vars: &Vars, i: usize, e: i32) -> Self {
        let mut m = Monomial::one(vars.len());
        m.0[i] = e;
        Self::monomial(vars, m, 1)
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::var_pow(vars, i, 1)
    }

    /// Builds from `(exponents, coefficient)` pairs, combining repeats.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = (Vec<i32>, BigInt)>,
    {
        let mut out = Self::zero(vars);
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(RingError::ExponentLength {
                    expected: vars.len(),
                    got: exps.len(),
                });
            }
            out.add_term(Monomial::from_exps(&exps), c);
        }
        Ok(out)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Constant term as an integer when the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// A single term with coefficient ±1, i.e. a unit of the ring.
    pub fn as_unit_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        (c.abs().is_one()).then_some((m, c))
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_table(&self, other: &LaurentPoly) -> Result<(), RingError> {
        if same_table(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(RingError::VarMismatch(
                self.vars.names.clone(),
                other.vars.names.clone(),
            ))
        }
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        self.check_table(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = small.terms.iter().next().unwrap();
            return Ok(large.mul_term(m, c));
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(small.len() * large.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(mm, cc)| (mm.mul(m), cc * c))
            .collect();
        LaurentPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        self.mul_term(&Monomial::one(self.vars.len()), c)
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        if let Some((m, c)) = self.as_unit_monomial() {
            let c = if k % 2 == 1 { c.clone() } else { BigInt::one() };
            return Self::monomial(&self.vars, m.pow(k as i32), c);
        }
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power allowing negative exponents for unit monomials.
    pub fn ipow(&self, k: i32) -> Result<LaurentPoly, RingError> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        match self.as_unit_monomial() {
            Some((m, c)) => {
                let c = if k % 2 != 0 { c.clone() } else { BigInt::one() };
                Ok(Self::monomial(&self.vars, m.pow(k), c))
            }
            None => Err(RingError::NegativePower),
        }
    }

    /// Minimum and maximum exponent of `var` over all terms.
    pub fn exponent_range(&self, var: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|m| m.exp(var));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// True iff no term has a negative exponent in any of `vars`.
    pub fn is_polynomial_in(&self, vars: &[usize]) -> bool {
        self.terms
            .keys()
            .all(|m| vars.iter().all(|&v| m.exp(v) >= 0))
    }

    /// Exact quotient `self / den`.
    ///
    /// Leading-term division under the graded-lex group order. Quotient
    /// monomials must stay inside the per-variable exponent box implied by
    /// the extreme degrees of numerator and denominator, which bounds the
    /// loop; leaving the box, or a non-integral coefficient ratio, means no
    /// exact quotient exists.
    pub fn exact_div(&self, den: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        self.check_table(den)?;
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(&self.vars));
        }
        if let Some((m, c)) = den.as_unit_monomial() {
            let inv = m.pow(-1);
            return Ok(self.mul_term(&inv, c));
        }
        let nv = self.vars.len();
        let mut bounds = Vec::with_capacity(nv);
        for v in 0..nv {
            let (nlo, nhi) = self.exponent_range(v).unwrap();
            let (dlo, dhi) = den.exponent_range(v).unwrap();
            let (lo, hi) = (nlo - dlo, nhi - dhi);
            if lo > hi {
                return Err(RingError::NotDivisible);
            }
            bounds.push((lo, hi));
        }
        let (dm, dc) = den.leading_term().unwrap();
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back() {
            let qm = m.div(&dm);
            if qm
                .exps()
                .iter()
                .zip(&bounds)
                .any(|(&e, &(lo, hi))| e < lo || e > hi)
            {
                return Err(RingError::NotDivisible);
            }
            let (qc, r) = c.div_rem(&dc);
            if !r.is_zero() {
                return Err(RingError::NotDivisible);
            }
            for (tm, tc) in &den.terms {
                let key = tm.mul(&qm);
                let delta = tc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
            quot.insert(qm, qc);
        }
        Ok(LaurentPoly {
            vars: self.vars.clone(),
            terms: quot,
        })
    }

    /// Replaces `var` by `value` (a polynomial over the same table).
    ///
    /// A unit monomial may be substituted everywhere. Any other value,
    /// including zero, requires `var` to appear with nonnegative exponents only.
    pub fn substitute(&self, var: usize, value: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        self.check_table(value)?;
        let strip = |m: &Monomial| {
            let mut m = m.clone();
            m.0[var] = 0;
            m
        };
        if let Some((vm, vc)) = value.as_unit_monomial() {
            let mut out = Self::zero(&self.vars);
            for (m, c) in &self.terms {
                let e = m.exp(var);
                let sign_flip = vc.is_negative() && e % 2 != 0;
                let coeff = if sign_flip { -c } else { c.clone() };
                out.add_term(strip(m).mul(&vm.pow(e)), coeff);
            }
            return Ok(out);
        }
        let mut by_power: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e < 0 {
                return Err(if value.is_zero() {
                    RingError::ZeroAtNegativePower(self.vars.name(var).to_string())
                } else {
                    RingError::NegativeExponentAtNonUnit(self.vars.name(var).to_string())
                });
            }
            by_power
                .entry(e)
                .or_insert_with(|| Self::zero(&self.vars))
                .add_term(strip(m), c.clone());
        }
        let mut out = Self::zero(&self.vars);
        let mut power = Self::one(&self.vars);
        let mut at = 0;
        for (e, group) in by_power {
            while at < e {
                power = &power * value;
                at += 1;
            }
            out = &out + &(&group * &power);
        }
        Ok(out)
    }

    /// Substitutes by variable name; see [`LaurentPoly::substitute`].
    pub fn substitute_named(&self, name: &str, value: &LaurentPoly) -> Result<LaurentPoly, RingError> {
        let var = self.vars.require(name)?;
        self.substitute(var, value)
    }

    /// Re-expresses the polynomial over another table, matching variables by
    /// name. Variables absent from `target` must not occur.
    pub fn with_vars(&self, target: &Vars) -> Result<LaurentPoly, RingError> {
        if same_table(&self.vars, target) {
            return Ok(LaurentPoly {
                vars: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut slots = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names.iter().enumerate() {
            let slot = target.index_of(name);
            if slot.is_none() && self.terms.keys().any(|m| m.exp(i) != 0) {
                return Err(RingError::UnknownVariable(name.clone()));
            }
            slots.push(slot);
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(target.len());
            for (i, slot) in slots.iter().enumerate() {
                if let Some(s) = slot {
                    nm.0[*s] += m.exp(i);
                }
            }
            out.add_term(nm, c.clone());
        }
        Ok(out)
    }

    /// Rewrites every exponent vector through `f` into `target`, combining
    /// terms that collide. Monomial substitutions such as `x_i → t_i²` or
    /// a permutation of variables are instances.
    pub fn map_exponents<F>(&self, target: &Vars, f: F) -> Result<LaurentPoly, RingError>
    where
        F: Fn(&[i32]) -> Vec<i32>,
    {
        LaurentPoly::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (f(m.exps()), c.clone())),
        )
    }

    /// Exact value at a rational point given positionally (one entry per variable).
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational, RingError> {
        if point.len() != self.vars.len() {
            return Err(RingError::ExponentLength {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if point[v].is_zero() {
                    if e < 0 {
                        return Err(RingError::ZeroAtNegativePower(self.vars.name(v).to_string()));
                    }
                    t = BigRational::zero();
                    break;
                }
                t *= num_traits::pow::Pow::pow(&point[v], e);
            }
            total += t;
        }
        Ok(total)
    }

    /// Exact value at a rational point given by variable name.
    pub fn eval_rational(&self, point: &BTreeMap<String, BigRational>) -> Result<BigRational, RingError> {
        let mut values = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names.iter().enumerate() {
            match point.get(name) {
                Some(v) => values.push(v.clone()),
                None if self.terms.keys().all(|m| m.exp(i) == 0) => values.push(BigRational::one()),
                None => return Err(RingError::Unassigned(name.clone())),
            }
        }
        self.eval(&values)
    }

    /// Parses the text form, e.g. `x1^2*z^-1 - 3*x2`, over `vars`.
    pub fn parse(text: &str, vars: &Vars) -> Result<LaurentPoly, RingError> {
        text::parse(text, vars)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$checked(rhs).expect("operands share a variable table")
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
