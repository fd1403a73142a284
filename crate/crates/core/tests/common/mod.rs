//! Independent brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ratsearch::numeric::{BigRat, ReducedPoint};
use ratsearch::poly::{Monomial, Polynomial, Vars};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All monomials of total degree `<= d` in `n` variables.
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial(vec![0; n])];
    for i in 0..n {
        let mut next = Vec::new();
        for m in &out {
            let used: u32 = m.0.iter().sum();
            for e in 0..=(d - used) {
                let mut v = m.0.clone();
                v[i] = e;
                next.push(Monomial(v));
            }
        }
        out = next;
    }
    out
}

/// A random polynomial with up to `terms` terms of degree `<= d` and
/// coefficients in `[-c, c]`, forced to have degree exactly `d` when `exact`.
pub fn random_poly(r: &mut ChaCha8Rng, vars: &Vars, d: u32, c: i64, terms: usize, exact: bool) -> Polynomial {
    let n = vars.len();
    let all = monomials(n, d);
    let top: Vec<&Monomial> = all.iter().filter(|m| m.0.iter().sum::<u32>() == d).collect();
    let coeff = |r: &mut ChaCha8Rng| loop {
        let v = r.gen_range(-c..=c);
        if v != 0 {
            return BigRat::from_integer(v.into());
        }
    };
    let mut out: BTreeMap<Monomial, BigRat> = BTreeMap::new();
    if exact {
        let m = top[r.gen_range(0..top.len())].clone();
        out.insert(m, coeff(r));
    }
    for _ in 0..terms {
        let m = all[r.gen_range(0..all.len())].clone();
        out.insert(m, coeff(r));
    }
    Polynomial::from_terms(vars.clone(), out)
}

/// Exact membership by direct evaluation of the homogenized form at
/// `(p, q, r)`.
pub fn on_curve(f: &Polynomial, p: i64, q: i64, r: i64) -> bool {
    let d = f.degree().unwrap_or(0);
    let mut acc = BigInt::zero();
    for (m, c) in f.integer_terms() {
        let (i, j) = (m.0[0], m.0[1]);
        acc += c * BigInt::from(p).pow(i) * BigInt::from(q).pow(j) * BigInt::from(r).pow(d - i - j);
    }
    acc.is_zero()
}

/// Every reduced `(p, q, r)` with `max(|p|, |q|, r) <= h` on `f = 0`, by a
/// plain triple loop, sorted by height then `(p, q, r)`.
pub fn brute_points(f: &Polynomial, h: i64) -> Vec<ReducedPoint> {
    let mut out = Vec::new();
    for r in 1..=h {
        for p in -h..=h {
            for q in -h..=h {
                if p.gcd(&q).gcd(&r) == 1 && on_curve(f, p, q, r) {
                    out.push(ReducedPoint::from_ints(p, q, r).unwrap());
                }
            }
        }
    }
    out.sort_by_key(|pt| (pt.height(), pt.p().clone(), pt.q().clone(), pt.r().clone()));
    out
}

/// Same set as `brute_points`, for large curves: every triple is screened by
/// the homogenized form mod a prime near 2^31, survivors are checked exactly.
pub fn brute_points_modular(f: &Polynomial, h: i64) -> Vec<ReducedPoint> {
    const L: i64 = 2_147_483_629;
    let d = f.degree().unwrap_or(0);
    let terms: Vec<(u32, u32, i64)> = f
        .integer_terms()
        .into_iter()
        .map(|(m, c)| {
            let cm = c.mod_floor(&BigInt::from(L));
            (m.0[0], m.0[1], i64::try_from(cm).unwrap())
        })
        .collect();
    let mulm = |a: i64, b: i64| ((a as i128 * b as i128).rem_euclid(L as i128)) as i64;
    let powers = |b: i64| -> Vec<i64> {
        let mut v = vec![1i64];
        for _ in 0..d {
            v.push(mulm(*v.last().unwrap(), b.rem_euclid(L)));
        }
        v
    };
    let pp: Vec<Vec<i64>> = (-h..=h).map(powers).collect();
    let dy = terms.iter().map(|t| t.1).max().unwrap_or(0) as usize;
    let mut out = Vec::new();
    for r in 1..=h {
        let rp = powers(r);
        for p in -h..=h {
            let ppow = &pp[(p + h) as usize];
            // coefficients of G(p, q, r) as a polynomial in q
            let mut row = vec![0i64; dy + 1];
            for &(i, j, c) in &terms {
                let v = mulm(mulm(c, ppow[i as usize]), rp[(d - i - j) as usize]);
                row[j as usize] = (row[j as usize] + v) % L;
            }
            for q in -h..=h {
                if p.gcd(&q).gcd(&r) != 1 {
                    continue;
                }
                // homogeneous in q: sum row[j] q^j
                let qm = q.rem_euclid(L);
                let mut acc = 0i64;
                for c in row.iter().rev() {
                    acc = (mulm(acc, qm) + c) % L;
                }
                if acc == 0 && on_curve(f, p, q, r) {
                    out.push(ReducedPoint::from_ints(p, q, r).unwrap());
                }
            }
        }
    }
    out.sort_by_key(|pt| (pt.height(), pt.p().clone(), pt.q().clone(), pt.r().clone()));
    out
}

/// Minimal `(height, r, p, q)` solution of `a p^2 + b q^2 = c r^2` with
/// `p, q >= 0`, `1 <= r` and all entries `<= limit`, reduced.
pub fn holzer_brute(a: i64, b: i64, c: i64, limit: i64) -> Option<(i64, i64, i64)> {
    let mut best: Option<(i64, i64, i64, i64)> = None;
    for r in 1..=limit {
        for p in 0..=limit {
            let rest = c * r * r - a * p * p;
            if rest < 0 {
                break;
            }
            if rest % b != 0 {
                continue;
            }
            let q2 = rest / b;
            let q = q2.sqrt();
            if q * q != q2 || q > limit || p.gcd(&q).gcd(&r) != 1 {
                continue;
            }
            let key = (p.max(q).max(r), r, p, q);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    best.map(|(_, r, p, q)| (p, q, r))
}

fn div_exact_int(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    // f, g ascending; exact division over Q with an integer check
    let (n, k) = (f.len() - 1, g.len() - 1);
    if n < k {
        return None;
    }
    let mut rem: Vec<BigRat> = f.iter().map(|c| BigRat::from_integer(c.clone())).collect();
    let lead = BigRat::from_integer(g[k].clone());
    let mut quo = vec![BigRat::zero(); n - k + 1];
    for i in (0..=n - k).rev() {
        let t = rem[i + k].clone() / &lead;
        for (j, gj) in g.iter().enumerate() {
            rem[i + j] -= &t * BigRat::from_integer(gj.clone());
        }
        quo[i] = t;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    quo.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
}

fn eval_i(f: &[BigInt], t: i64) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
}

/// Irreducible factors of degree 1 and 2 of an integer polynomial (ascending
/// coefficients) by exhaustive trial division over primitive integer
/// candidates inside the Landau-Mignotte box, each made monic.
pub fn trial_division_factors(f: &[i64]) -> Vec<(Vec<BigRat>, u32)> {
    let mut f: Vec<BigInt> = f.iter().map(|&c| BigInt::from(c)).collect();
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let b1 = i64::try_from(norm2.sqrt() + 1).unwrap();
    let lc = f.last().unwrap().abs();
    let leads: Vec<i64> = (1..=i64::try_from(&lc).unwrap())
        .filter(|a| (&lc % a).is_zero())
        .collect();
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    for &a in &leads {
        for b in -b1..=b1 {
            if a.gcd(&b) == 1 {
                candidates.push(vec![b, a]);
            }
        }
    }
    for &a in &leads {
        for b in -2 * b1..=2 * b1 {
            for c in -b1..=b1 {
                if c == 0 || a.gcd(&b).gcd(&c) != 1 {
                    continue;
                }
                let disc = b * b - 4 * a * c;
                if disc >= 0 && disc.sqrt().pow(2) == disc {
                    continue;
                }
                candidates.push(vec![c, b, a]);
            }
        }
    }
    const TS: [i64; 5] = [-2, -1, 1, 2, 3];
    let values = |f: &[BigInt]| -> Vec<i128> {
        TS.iter().map(|&t| i128::try_from(eval_i(f, t)).unwrap()).collect()
    };
    let mut fv = values(&f);
    let mut out = Vec::new();
    for g in candidates {
        let gb: Vec<BigInt> = g.iter().map(|&c| BigInt::from(c)).collect();
        let gv: Vec<i128> = TS
            .iter()
            .map(|&t| g.iter().rev().fold(0i128, |acc, &c| acc * t as i128 + c as i128))
            .collect();
        let mut mult = 0;
        loop {
            if f.len() < gb.len() {
                break;
            }
            // necessary condition g(t) | f(t)
            if gv.iter().zip(&fv).any(|(&gt, &ft)| gt != 0 && ft % gt != 0) {
                break;
            }
            match div_exact_int(&f, &gb) {
                Some(q) => {
                    f = q;
                    fv = values(&f);
                    mult += 1;
                }
                None => break,
            }
        }
        if mult > 0 {
            let lead = BigRat::from_integer(gb.last().unwrap().clone());
            let monic: Vec<BigRat> = gb.iter().map(|c| BigRat::from_integer(c.clone()) / &lead).collect();
            out.push((monic, mult));
        }
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    out
}

/// Lex or graded reverse lex comparison, first variable largest.
pub fn cmp_mono(a: &Monomial, b: &Monomial, grevlex: bool) -> Ordering {
    if grevlex {
        let (da, db): (u32, u32) = (a.0.iter().sum(), b.0.iter().sum());
        if da != db {
            return da.cmp(&db);
        }
        for (x, y) in a.0.iter().zip(&b.0).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    } else {
        a.0.cmp(&b.0)
    }
}

pub fn lead(f: &Polynomial, grevlex: bool) -> (Monomial, BigRat) {
    f.terms()
        .iter()
        .max_by(|x, y| cmp_mono(x.0, y.0, grevlex))
        .map(|(m, c)| (m.clone(), c.clone()))
        .expect("nonzero")
}

fn divides(a: &Monomial, b: &Monomial) -> bool {
    a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
}

/// Remainder of multivariate division of `f` by `basis`.
pub fn remainder(f: &Polynomial, basis: &[Polynomial], grevlex: bool) -> Polynomial {
    let mut p = f.clone();
    let mut r = Polynomial::zero(f.vars().clone());
    while !p.is_zero() {
        let (m, c) = lead(&p, grevlex);
        match basis.iter().find(|g| divides(&lead(g, grevlex).0, &m)) {
            Some(g) => {
                let (gm, gc) = lead(g, grevlex);
                let q = Monomial(m.0.iter().zip(&gm.0).map(|(x, y)| x - y).collect());
                p = &p - &g.mul_monomial(&q, &(c / gc));
            }
            None => {
                let t = Polynomial::from_terms(f.vars().clone(), [(m.clone(), c.clone())]);
                r = &r + &t;
                p = &p - &t;
            }
        }
    }
    r
}

pub fn s_poly(f: &Polynomial, g: &Polynomial, grevlex: bool) -> Polynomial {
    let (fm, fc) = lead(f, grevlex);
    let (gm, gc) = lead(g, grevlex);
    let l = Monomial(fm.0.iter().zip(&gm.0).map(|(x, y)| *x.max(y)).collect());
    let mf = Monomial(l.0.iter().zip(&fm.0).map(|(x, y)| x - y).collect());
    let mg = Monomial(l.0.iter().zip(&gm.0).map(|(x, y)| x - y).collect());
    &f.mul_monomial(&mf, &fc.recip()) - &g.mul_monomial(&mg, &gc.recip())
}

/// Largest set of variables containing the support of no leading monomial;
/// -1 when some leading monomial is 1.
pub fn dimension_brute(leads: &[Monomial], n: usize) -> i32 {
    if leads.iter().any(|m| m.0.iter().all(|&e| e == 0)) {
        return -1;
    }
    let mut best = 0;
    for mask in 0usize..(1 << n) {
        let inside = |m: &Monomial| m.0.iter().enumerate().all(|(i, &e)| e == 0 || mask & (1 << i) != 0);
        if leads.iter().all(|m| !inside(m)) {
            best = best.max(mask.count_ones() as i32);
        }
    }
    best
}
