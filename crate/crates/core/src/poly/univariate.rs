//! Univariate kernels: gcd, squarefree parts, rational roots and the
//! degree <= 2 factor search. Dense coefficient vectors, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modular::{hensel_lift_factor, newton_lift_root, small_primes, symmetric, Fp};
use super::{Monomial, PolyError, Polynomial};
use crate::numeric::BigRat;

pub type DenseInt = Vec<BigInt>;
type DenseRat = Vec<BigRat>;

fn trim_rat(v: &mut DenseRat) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// The single occurring variable (if any) and the dense coefficients.
pub fn poly_to_dense(f: &Polynomial) -> Result<(Option<usize>, DenseRat), PolyError> {
    let support = f.support_vars();
    if support.len() > 1 {
        return Err(PolyError::NotUnivariate);
    }
    let i = support.first().copied();
    let d = i.map_or(0, |i| f.degree_in(i).unwrap_or(0)) as usize;
    let mut out = vec![BigRat::zero(); if f.is_zero() { 0 } else { d + 1 }];
    for (m, c) in f.terms() {
        let k = i.map_or(0, |i| m.0[i]) as usize;
        out[k] = c.clone();
    }
    Ok((i, out))
}

pub fn dense_to_poly(coeffs: &[BigRat], like: &Polynomial, var: usize) -> Polynomial {
    let n = like.nvars();
    Polynomial::from_terms(
        like.vars().clone(),
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| (Monomial::var(n, var, k as u32), c.clone())),
    )
}

pub fn int_gcd_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive integer multiple with positive leading coefficient.
fn to_primitive_int(f: &[BigRat]) -> DenseInt {
    let l = f.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let mut v: DenseInt = f.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let g = int_gcd_content(&v);
    if g.is_zero() {
        return Vec::new();
    }
    let g = if v.last().unwrap().is_negative() { -g } else { g };
    for c in v.iter_mut() {
        *c /= &g;
    }
    v
}

fn to_rat(v: &[BigInt]) -> DenseRat {
    v.iter().cloned().map(BigRat::from_integer).collect()
}

fn monic_rat(f: &[BigRat]) -> DenseRat {
    match f.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = lc.recip();
            f.iter().map(|c| c * &inv).collect()
        }
    }
}

fn divrem_rat(a: &[BigRat], b: &[BigRat]) -> (DenseRat, DenseRat) {
    let mut r = a.to_vec();
    trim_rat(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv = b[db].recip();
    let mut q = vec![BigRat::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &inv;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    trim_rat(&mut r);
    (q, r)
}

fn derivative_rat(f: &[BigRat]) -> DenseRat {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRat::from_integer(BigInt::from(i)))
        .collect()
}

// Primitive-remainder-sequence gcd over Z; returned monic over Q.
fn gcd_rat(a: &[BigRat], b: &[BigRat]) -> DenseRat {
    let mut a = to_primitive_int(a);
    let mut b = to_primitive_int(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = to_primitive_int(&to_rat(&r));
    }
    monic_rat(&to_rat(&a))
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> DenseInt {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn eval_rat(f: &[BigRat], x: &BigRat) -> BigRat {
    f.iter().rev().fold(BigRat::zero(), |acc, c| acc * x + c)
}

/// Squarefree test for a primitive integer polynomial: a quick modular
/// certificate, then the exact gcd.
pub fn is_squarefree_dense(f: &[BigInt]) -> bool {
    if f.len() <= 2 {
        return true;
    }
    let lc = f.last().unwrap();
    for l in small_primes().take(12) {
        if (lc % BigInt::from(l)).is_zero() {
            continue;
        }
        let fp = Fp::new(l);
        if fp.is_squarefree(&fp.reduce_poly(f)) {
            return true;
        }
    }
    let fr = to_rat(f);
    gcd_rat(&fr, &derivative_rat(&fr)).len() == 1
}

/// Squarefree part as a primitive integer polynomial.
pub fn squarefree_dense(f: &[BigRat]) -> DenseInt {
    let p = to_primitive_int(f);
    if is_squarefree_dense(&p) {
        return p;
    }
    let fr = to_rat(&p);
    let g = gcd_rat(&fr, &derivative_rat(&fr));
    to_primitive_int(&divrem_rat(&fr, &g).0)
}

/// Monic gcd of two univariate polynomials in the same variable.
pub fn univariate_gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, PolyError> {
    if f.vars() != g.vars() {
        return Err(PolyError::VariableMismatch(f.vars().to_vec(), g.vars().to_vec()));
    }
    let (vf, df) = poly_to_dense(f)?;
    let (vg, dg) = poly_to_dense(g)?;
    let var = match (vf, vg) {
        (Some(a), Some(b)) if a != b => return Err(PolyError::NotUnivariate),
        (a, b) => a.or(b).unwrap_or(0),
    };
    let r = if dg.is_empty() {
        monic_rat(&df)
    } else if df.is_empty() {
        monic_rat(&dg)
    } else {
        gcd_rat(&df, &dg)
    };
    Ok(dense_to_poly(&r, f, var))
}

/// Product of the distinct irreducible factors, primitive with positive
/// lex-leading coefficient.
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let support = f.support_vars();
    match support.len() {
        0 => Ok(Polynomial::one(f.vars().clone())),
        1 => {
            let (v, d) = poly_to_dense(f)?;
            let s = squarefree_dense(&d);
            Ok(dense_to_poly(&to_rat(&s), f, v.unwrap()))
        }
        2 if bivariate_is_squarefree(f, support[1]) => Ok(f.primitive()),
        _ => Ok(crate::groebner::squarefree_part_general(f)),
    }
}

// Certificate: the content in `u` is squarefree and some specialization
// u = u0 keeping the degree in `v` is squarefree.
fn bivariate_is_squarefree(f: &Polynomial, v: usize) -> bool {
    let coeffs = f.coefficients_in(v);
    let dense: Vec<DenseRat> = coeffs
        .iter()
        .map(|c| poly_to_dense(c).expect("univariate in u").1)
        .collect();
    let mut content: DenseRat = Vec::new();
    for c in &dense {
        if c.is_empty() {
            continue;
        }
        content = if content.is_empty() {
            monic_rat(c)
        } else {
            gcd_rat(&content, c)
        };
        if content.len() == 1 {
            break;
        }
    }
    if content.len() > 1 && !is_squarefree_dense(&to_primitive_int(&content)) {
        return false;
    }
    let lead = dense.last().unwrap();
    for k in 0..40i64 {
        let u0 = BigRat::from_integer(BigInt::from(if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 }));
        if eval_rat(lead, &u0).is_zero() {
            continue;
        }
        let spec: DenseRat = dense.iter().map(|c| eval_rat(c, &u0)).collect();
        if is_squarefree_dense(&to_primitive_int(&spec)) {
            return true;
        }
    }
    false
}

/// Rational roots of a nonzero dense polynomial, ascending, without
/// multiplicity.
pub fn rational_roots_dense(f: &[BigRat]) -> Vec<BigRat> {
    let mut f = f.to_vec();
    trim_rat(&mut f);
    let mut out = Vec::new();
    let k = f.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if k > 0 {
        out.push(BigRat::zero());
        f.drain(..k);
    }
    if f.len() >= 2 {
        let g = squarefree_dense(&f);
        out.extend(nonzero_roots_squarefree(&g));
    }
    out.sort();
    out.dedup();
    out
}

fn good_prime(g: &[BigInt]) -> Fp {
    let lc = g.last().unwrap();
    for l in small_primes() {
        if (lc % BigInt::from(l)).is_zero() {
            continue;
        }
        let fp = Fp::new(l);
        let gm = fp.reduce_poly(g);
        if gm.len() == g.len() && fp.is_squarefree(&gm) {
            return fp;
        }
    }
    unreachable!()
}

// `g` primitive, squarefree, g(0) != 0, degree >= 1.
fn nonzero_roots_squarefree(g: &[BigInt]) -> Vec<BigRat> {
    if g.len() == 2 {
        return vec![BigRat::new(-g[0].clone(), g[1].clone())];
    }
    let lc = g.last().unwrap().clone();
    let fp = good_prime(g);
    let maxc = g.iter().map(|c| c.abs()).max().unwrap();
    // |lc * root| <= |lc| + max|a_i| (Cauchy)
    let bound = (lc.abs() + maxc) * 2;
    let gr = to_rat(g);
    let mut out = Vec::new();
    for r in fp.roots(&fp.reduce_poly(g)) {
        let (x, m) = newton_lift_root(g, r, fp.p, &bound);
        let num = symmetric(&(&lc * x), &m);
        let cand = BigRat::new(num, lc.clone());
        if eval_rat(&gr, &cand).is_zero() {
            out.push(cand);
        }
    }
    out
}

/// All rational roots (ascending, distinct).
pub fn rational_roots(f: &Polynomial) -> Result<Vec<BigRat>, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (_, d) = poly_to_dense(f)?;
    Ok(rational_roots_dense(&d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Monic irreducible factors of degree <= max_deg with multiplicities,
    /// sorted by degree and then coefficients.
    pub factors: Vec<(Polynomial, u32)>,
    /// Monic; free of factors of degree <= max_deg.
    pub cofactor: Polynomial,
}

fn strip_factor(f: &mut DenseRat, h: &[BigRat]) -> u32 {
    let mut k = 0;
    loop {
        let (q, r) = divrem_rat(f, h);
        if !r.is_empty() {
            return k;
        }
        *f = q;
        k += 1;
    }
}

fn isqrt_ceil(n: &BigInt) -> BigInt {
    n.sqrt() + 1
}

/// Monic quadratic factors over Q of a primitive squarefree integer
/// polynomial without rational roots.
fn quadratic_factors(s: &[BigInt]) -> Vec<DenseRat> {
    let mut found: Vec<DenseRat> = Vec::new();
    if s.len() < 3 {
        return found;
    }
    if s.len() == 3 {
        return vec![monic_rat(&to_rat(s))];
    }
    let lc = s.last().unwrap().clone();
    let fp = good_prime(s);
    let (lin, quad) = fp.small_factors(&fp.reduce_poly(s));
    let norm2: BigInt = s.iter().map(|c| c * c).sum();
    // Coefficients of lc * (monic quadratic factor) are at most 2|lc| ||s||_2.
    let half = lc.abs() * isqrt_ceil(&norm2) * 2;
    let bound = &half * 2;

    let mut lifted_lin: Vec<(DenseInt, BigInt)> = Vec::new();
    for l in &lin {
        lifted_lin.push(hensel_lift_factor(s, l, fp, &bound));
    }
    let mut candidates: Vec<(DenseInt, BigInt)> = Vec::new();
    for q in &quad {
        candidates.push(hensel_lift_factor(s, q, fp, &bound));
    }
    for i in 0..lifted_lin.len() {
        for j in i + 1..lifted_lin.len() {
            let (a, m) = &lifted_lin[i];
            let (b, _) = &lifted_lin[j];
            let prod = vec![
                (&a[0] * &b[0]).mod_floor(m),
                (&a[0] * &b[1] + &a[1] * &b[0]).mod_floor(m),
                BigInt::one(),
            ];
            candidates.push((prod, m.clone()));
        }
    }
    let mut rest = to_rat(s);
    for (h, m) in candidates {
        let scaled: DenseInt = h.iter().map(|c| symmetric(&(&lc * c), &m)).collect();
        if scaled.iter().any(|c| c.abs() > half) {
            continue;
        }
        let cand = monic_rat(&to_rat(&scaled));
        let (q, r) = divrem_rat(&rest, &cand);
        if r.is_empty() {
            rest = q;
            found.push(cand);
        }
    }
    found
}

fn sort_key(f: &[BigRat]) -> (usize, Vec<BigRat>) {
    (f.len(), f.to_vec())
}

pub fn factor_low_degree(f: &Polynomial, max_deg: u32) -> Result<Factorization, PolyError> {
    if !(1..=2).contains(&max_deg) {
        return Err(PolyError::InvalidMaxDegree(max_deg));
    }
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let (var, d) = poly_to_dense(f)?;
    let var = var.unwrap_or(0);
    let mut rest = monic_rat(&d);
    let mut factors: Vec<(DenseRat, u32)> = Vec::new();
    for r in rational_roots_dense(&rest.clone()) {
        let h = vec![-r, BigRat::one()];
        let k = strip_factor(&mut rest, &h);
        factors.push((h, k));
    }
    if max_deg == 2 && rest.len() >= 3 {
        let s = squarefree_dense(&rest);
        for h in quadratic_factors(&s) {
            let k = strip_factor(&mut rest, &h);
            factors.push((h, k));
        }
    }
    factors.sort_by_key(|a| sort_key(&a.0));
    Ok(Factorization {
        factors: factors
            .into_iter()
            .map(|(h, k)| (dense_to_poly(&h, f, var), k))
            .collect(),
        cofactor: dense_to_poly(&rest, f, var),
    })
}
