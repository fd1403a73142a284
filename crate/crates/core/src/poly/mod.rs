//! Multivariate polynomials with exact rational coefficients over a shared,
//! ordered variable list.

pub(crate) mod bivariate;
pub(crate) mod modular;
mod parse;
mod univariate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::numeric::BigRat;

pub use parse::{parse_polynomial, parse_polynomial_in};
pub use univariate::{
    factor_low_degree, rational_roots, squarefree_part, univariate_gcd, Factorization,
};

pub(crate) use univariate::rational_roots_dense;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` already present")]
    DuplicateVariable(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("max_deg must be 1 or 2, got {0}")]
    InvalidMaxDegree(u32),
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
}

pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    names.iter().map(|s| s.to_string()).collect()
}

/// Exponent vector, one slot per ambient variable. The derived ordering is
/// lex with the first variable largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Monomial, BigRat>,
}

impl Polynomial {
    pub fn zero(vars: Vars) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars, c: BigRat) -> Self {
        let mut p = Self::zero(vars);
        let n = p.nvars();
        p.add_term(Monomial::one(n), c);
        p
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, BigRat::one())
    }

    pub fn var(vars: Vars, name: &str) -> Result<Self, PolyError> {
        let i = index_of(&vars, name)?;
        Ok(Self::var_at(vars, i))
    }

    pub fn var_at(vars: Vars, i: usize) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        p.add_term(Monomial::var(n, i, 1), BigRat::one());
        p
    }

    pub fn from_terms<I>(vars: Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRat)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), p.nvars(), "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        index_of(&self.vars, name)
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRat> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, BigRat> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Constant term.
    pub fn constant_term(&self) -> BigRat {
        self.terms
            .get(&Monomial::one(self.nvars()))
            .cloned()
            .unwrap_or_else(BigRat::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Leading term under lex with the first variable largest.
    pub fn lex_leading(&self) -> Option<(&Monomial, &BigRat)> {
        self.terms.iter().next_back()
    }

    /// Indices of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch(
                self.vars.to_vec(),
                other.vars.to_vec(),
            ))
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(other)?;
        let mut acc: HashMap<Monomial, BigRat> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Polynomial {
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &BigRat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.vars.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn evaluate(&self, point: &HashMap<String, BigRat>) -> Result<BigRat, PolyError> {
        let mut vals = Vec::with_capacity(self.nvars());
        for (i, name) in self.vars.iter().enumerate() {
            match point.get(name) {
                Some(v) => vals.push(v.clone()),
                None if self.terms.keys().all(|m| m.0[i] == 0) => vals.push(BigRat::zero()),
                None => return Err(PolyError::MissingAssignment(name.clone())),
            }
        }
        Ok(self.eval_slice(&vals))
    }

    /// Evaluation with values given in ambient variable order.
    pub fn eval_slice(&self, vals: &[BigRat]) -> BigRat {
        assert_eq!(vals.len(), self.nvars());
        let mut powers: Vec<Vec<BigRat>> = vec![vec![BigRat::one()]; self.nvars()];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &vals[i];
                    powers[i].push(next);
                }
            }
        }
        let mut acc = BigRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &powers[i][e as usize];
                }
            }
            acc += t;
        }
        acc
    }

    /// Partial evaluation: `assignment[i] = Some(v)` fixes variable `i`.
    /// Fixed variables stay in the ambient list with exponent zero.
    pub fn specialize(&self, assignment: &[Option<BigRat>]) -> Polynomial {
        assert_eq!(assignment.len(), self.nvars());
        let mut out = Polynomial::zero(self.vars.clone());
        for (m, c) in &self.terms {
            let mut c = c.clone();
            let mut e = m.0.clone();
            for (i, a) in assignment.iter().enumerate() {
                if let Some(v) = a {
                    if e[i] > 0 {
                        c *= num_traits::pow(v.clone(), e[i] as usize);
                        e[i] = 0;
                    }
                }
            }
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Composition. Each variable of `self` is replaced by its binding, or by
    /// the same-named variable of `target` when unbound.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, Polynomial>,
        target: &Vars,
    ) -> Result<Polynomial, PolyError> {
        let mut images = Vec::with_capacity(self.nvars());
        for name in self.vars.iter() {
            let img = match bindings.get(name) {
                Some(p) => {
                    if &p.vars != target {
                        return Err(PolyError::VariableMismatch(
                            p.vars.to_vec(),
                            target.to_vec(),
                        ));
                    }
                    p.clone()
                }
                None => Polynomial::var(target.clone(), name)?,
            };
            images.push(img);
        }
        Ok(self.compose(&images, target))
    }

    /// Composition with images listed in ambient variable order.
    pub fn compose(&self, images: &[Polynomial], target: &Vars) -> Polynomial {
        assert_eq!(images.len(), self.nvars());
        let mut cache: Vec<Vec<Polynomial>> =
            vec![vec![Polynomial::one(target.clone())]; self.nvars()];
        let mut out = Polynomial::zero(target.clone());
        // Horner-free but power-cached; fine for the sizes used here.
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap() * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            for (k, v) in t.terms {
                out.add_term(k, v);
            }
        }
        out
    }

    /// `w^d f(x/w, y/w, ...)` with `new_var` prepended to the variable list.
    pub fn homogenize(&self, new_var: &str) -> Result<Polynomial, PolyError> {
        if self.vars.iter().any(|v| v == new_var) {
            return Err(PolyError::DuplicateVariable(new_var.to_string()));
        }
        let d = self.degree().ok_or(PolyError::ZeroPolynomial)?;
        let new_vars: Vars = std::iter::once(new_var.to_string())
            .chain(self.vars.iter().cloned())
            .collect();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = Vec::with_capacity(m.0.len() + 1);
            e.push(d - m.degree());
            e.extend_from_slice(&m.0);
            (Monomial(e), c.clone())
        });
        Ok(Polynomial::from_terms(new_vars, terms))
    }

    /// Sets `var := value` and removes it from the variable list.
    pub fn dehomogenize(&self, var: &str, value: &BigRat) -> Result<Polynomial, PolyError> {
        let i = self.var_index(var)?;
        let new_vars: Vars = self
            .vars
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let mut out = Polynomial::zero(new_vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e.remove(i);
            let c = c * num_traits::pow(value.clone(), k as usize);
            out.add_term(Monomial(e), c);
        }
        Ok(out)
    }

    pub fn derivative(&self, var: &str) -> Result<Polynomial, PolyError> {
        let i = self.var_index(var)?;
        Ok(self.derivative_at(i))
    }

    pub fn derivative_at(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.vars.clone());
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.0.clone();
                let k = e[i];
                e[i] -= 1;
                out.add_term(Monomial(e), c * BigRat::from_integer(BigInt::from(k)));
            }
        }
        out
    }

    /// Re-expresses the polynomial over `new_vars`, which must contain every
    /// variable actually occurring.
    pub fn with_vars(&self, new_vars: &Vars) -> Result<Polynomial, PolyError> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| new_vars.iter().position(|w| w == v))
            .collect();
        let mut out = Polynomial::zero(new_vars.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0; new_vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    let j = map[i].ok_or_else(|| PolyError::UnknownVariable(self.vars[i].clone()))?;
                    e[j] = k;
                }
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Coefficients with respect to variable `i`, lowest power first.
    pub fn coefficients_in(&self, i: usize) -> Vec<Polynomial> {
        let d = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![Polynomial::zero(self.vars.clone()); d + 1];
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[i] as usize;
            e[i] = 0;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Least common multiple of coefficient denominators times the gcd of the
    /// numerators, signed so that the lex-leading coefficient of
    /// `self / content` is positive.
    pub fn content(&self) -> BigRat {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRat::one();
        }
        let lead_negative = self.lex_leading().is_some_and(|(_, c)| c.is_negative());
        let c = BigRat::new(num, den);
        if lead_negative {
            -c
        } else {
            c
        }
    }

    /// Primitive integer representative with positive lex-leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.scale(&c.recip())
    }

    /// Scales so the lex-leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.lex_leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Integer coefficients of a primitive polynomial.
    pub fn integer_terms(&self) -> Vec<(Monomial, BigInt)> {
        self.terms
            .iter()
            .map(|(m, c)| {
                debug_assert!(c.is_integer());
                (m.clone(), c.numer().clone())
            })
            .collect()
    }

    pub fn max_abs_coefficient(&self) -> BigRat {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRat::zero)
    }

    /// Leading form: sum of the terms of maximal total degree.
    pub fn leading_form(&self) -> Polynomial {
        let Some(d) = self.degree() else {
            return self.clone();
        };
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

fn index_of(vars: &Vars, name: &str) -> Result<usize, PolyError> {
    vars.iter()
        .position(|v| v == name)
        .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
}

pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial, PolyError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}

// Operator sugar for internal code paths where the variable lists are known
// to agree; a mismatch is a programming error and panics.
impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("variable lists agree")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("variable lists agree")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("variable lists agree")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

// Printed in the input grammar: terms by descending total degree, then
// descending lex; reparses to an identical polynomial.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.cmp(a.0)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.vars[i], e)),
                }
            }
            if factors.is_empty() || !abs.is_one() {
                factors.insert(0, abs.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
