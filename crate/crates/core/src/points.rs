//! Rational points of an affine plane curve in height order.
//!
//! Candidate abscissae `x = p/r` are filtered by sieves mod small primes: the
//! bihomogenized equation `G(X, R, Y, S) = R^dx S^dy F(X/R, Y/S)` has to have
//! a zero `(Y : S)` in `P^1(F_l)` above `(p : r)`. Survivors are solved exactly.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::geometry::PlaneCurve;
use crate::numeric::{rationals_of_height, BigRat, ReducedPoint};
use crate::poly::bivariate::IntBiv;
use crate::poly::modular::{small_primes, Fp};
use crate::poly::{rational_roots, rational_roots_dense, univariate_gcd, vars, Monomial, Polynomial};

const SIEVE_PRIMES: usize = 24;
const SIEVE_START: u64 = 100;

/// Rational solutions of `F(x0, y) = 0` for a fixed `x0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fiber {
    /// `F(x0, y)` vanishes identically.
    Vertical,
    Roots(Vec<BigRat>),
}

struct Sieve {
    fp: Fp,
    inv: Vec<u64>,
    /// `hit[t]` for `(t : 1)`, `hit[l]` for `(1 : 0)`.
    hit: Vec<bool>,
}

impl Sieve {
    fn new(f: &IntBiv, l: u64) -> Self {
        let fp = Fp::new(l);
        let m = f.reduce(fp);
        let dy = f.deg_y() as usize;
        let mut hit: Vec<bool> = (0..l).map(|t| has_zero(fp, &m.at_x(t), dy)).collect();
        hit.push(has_zero(fp, &m.row_top_x(), dy));
        let mut inv = vec![0; l as usize];
        for (a, slot) in inv.iter_mut().enumerate().skip(1) {
            *slot = fp.inv(a as u64);
        }
        Sieve { fp, inv, hit }
    }

    fn admits(&self, p: i64, r: i64) -> bool {
        let l = self.fp.p as i64;
        let (pm, rm) = (p.rem_euclid(l) as u64, r.rem_euclid(l) as u64);
        if rm == 0 {
            return self.hit[l as usize];
        }
        self.hit[self.fp.mul(pm, self.inv[rm as usize]) as usize]
    }
}

// A binary form of formal degree `dy`, given dehomogenized at `S = 1`,
// vanishes somewhere on P^1(F_l).
fn has_zero(fp: Fp, g: &[u64], dy: usize) -> bool {
    if g.len() <= dy {
        return true;
    }
    (0..fp.p).any(|y| fp.eval(g, y) == 0)
}

/// Exhaustive height-ordered search for rational points of one curve.
pub struct PointFinder {
    f: IntBiv,
    /// `coeffs[j][i]` is the coefficient of `x^i y^j`.
    coeffs: Vec<Vec<BigInt>>,
    sieves: Vec<Sieve>,
    vertical: Vec<BigRat>,
}

impl PointFinder {
    pub fn new(curve: &PlaneCurve) -> Self {
        let f = IntBiv::from_poly(curve.f());
        let (dx, dy) = (f.deg_x() as usize, f.deg_y() as usize);
        let mut coeffs = vec![vec![BigInt::zero(); dx + 1]; dy + 1];
        for (i, j, c) in f.terms() {
            coeffs[*j as usize][*i as usize] = c.clone();
        }
        let sieves = small_primes()
            .skip_while(|&l| l < SIEVE_START)
            .take(SIEVE_PRIMES)
            .map(|l| Sieve::new(&f, l))
            .collect();
        let vertical = vertical_lines(curve.f());
        PointFinder {
            f,
            coeffs,
            sieves,
            vertical,
        }
    }

    /// Abscissae of the vertical lines contained in the curve.
    pub fn vertical_lines(&self) -> &[BigRat] {
        &self.vertical
    }

    fn admits(&self, p: i64, r: i64) -> bool {
        self.sieves.iter().all(|s| s.admits(p, r))
    }

    /// All rational `y` with `F(x0, y) = 0`, ascending.
    pub fn fiber(&self, x0: &BigRat) -> Fiber {
        if self.vertical.contains(x0) {
            return Fiber::Vertical;
        }
        let (p, r) = (x0.numer(), x0.denom());
        let dx = self.coeffs[0].len() - 1;
        let mut pp = vec![BigInt::one()];
        let mut rp = vec![BigInt::one()];
        for k in 1..=dx {
            pp.push(&pp[k - 1] * p);
            rp.push(&rp[k - 1] * r);
        }
        let dense: Vec<BigRat> = self
            .coeffs
            .iter()
            .map(|row| {
                let mut acc = BigInt::zero();
                for (i, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        acc += c * &pp[i] * &rp[dx - i];
                    }
                }
                BigRat::from_integer(acc)
            })
            .collect();
        Fiber::Roots(rational_roots_dense(&dense))
    }

    fn fiber_points(&self, p: i64, r: i64, h_max: i64, out: &mut Vec<ReducedPoint>) {
        let x = BigRat::new(p.into(), r.into());
        let bound = BigInt::from(h_max);
        match self.fiber(&x) {
            Fiber::Roots(ys) => {
                for y in ys {
                    debug_assert!(self.f.eval(&x, &y).is_zero());
                    let pt = ReducedPoint::from_affine(&x, &y);
                    if pt.height() <= bound {
                        out.push(pt);
                    }
                }
            }
            Fiber::Vertical => {
                for h in 1..=h_max {
                    for (q, s) in rationals_of_height(h) {
                        let pt = ReducedPoint::from_affine(&x, &BigRat::new(q.into(), s.into()));
                        if pt.height() <= bound {
                            out.push(pt);
                        }
                    }
                }
            }
        }
    }

    /// Every rational point of height `<= h_max`, in enumeration order.
    pub fn points_up_to(&self, h_max: i64) -> Vec<ReducedPoint> {
        let mut out = Vec::new();
        for h in 1..=h_max {
            for (p, r) in rationals_of_height(h) {
                if self.admits(p, r) {
                    self.fiber_points(p, r, h_max, &mut out);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// The first rational point in enumeration order with height `<= cap`.
    pub fn first_point(&self, cap: i64) -> Option<ReducedPoint> {
        // Every point of height h has an abscissa of height <= h, so once all
        // abscissae up to h are solved the smallest pending point of height h
        // is the answer.
        let mut pending: BinaryHeap<Reverse<ReducedPoint>> = BinaryHeap::new();
        let mut buf = Vec::new();
        for h in 1..=cap {
            for (p, r) in rationals_of_height(h) {
                if self.admits(p, r) {
                    // fibers above a vertical line are capped at the level
                    self.fiber_points(p, r, if self.is_vertical(p, r) { h } else { cap }, &mut buf);
                }
            }
            pending.extend(buf.drain(..).map(Reverse));
            if let Some(Reverse(pt)) = pending.peek() {
                if pt.height() <= BigInt::from(h) {
                    return Some(pt.clone());
                }
            }
        }
        None
    }

    fn is_vertical(&self, p: i64, r: i64) -> bool {
        self.vertical.contains(&BigRat::new(p.into(), r.into()))
    }
}

fn vertical_lines(f: &Polynomial) -> Vec<BigRat> {
    let xv = vars(&["x"]);
    let mut g: Option<Polynomial> = None;
    for c in f.coefficients_in(1) {
        let c = Polynomial::from_terms(
            xv.clone(),
            c.terms().iter().map(|(m, v)| (Monomial(vec![m.0[0]]), v.clone())),
        );
        if c.is_zero() {
            continue;
        }
        g = Some(match g {
            None => c,
            Some(acc) => univariate_gcd(&acc, &c).expect("univariate"),
        });
    }
    match g {
        Some(g) if !g.is_constant() => rational_roots(&g).expect("univariate"),
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{enumerate_by_height, int, rat};

    fn finder(s: &str) -> (PlaneCurve, PointFinder) {
        let c = PlaneCurve::parse(s, true).unwrap();
        let f = PointFinder::new(&c);
        (c, f)
    }

    fn brute(c: &PlaneCurve, h: i64) -> Vec<ReducedPoint> {
        enumerate_by_height(h)
            .filter(|pt| c.contains(&pt.x(), &pt.y()))
            .collect()
    }

    #[test]
    fn fibers() {
        let (_, f) = finder("x^4+y^4-1");
        assert_eq!(f.fiber(&int(0)), Fiber::Roots(vec![int(-1), int(1)]));
        assert_eq!(f.fiber(&int(1)), Fiber::Roots(vec![int(0)]));
        assert_eq!(f.fiber(&int(2)), Fiber::Roots(vec![]));
        let (_, g) = finder("(2*x-1)*(y^3-x^5-3)");
        assert_eq!(g.vertical_lines(), &[rat(1, 2)]);
        assert_eq!(g.fiber(&rat(1, 2)), Fiber::Vertical);
    }

    #[test]
    fn matches_brute_force() {
        for s in [
            "x^4+y^4-17",
            "x^4+y^4-1",
            "y^2-x^3+x",
            "4*x^2*y^2-x^4-1+3*y",
            "6*x^2-y^2-5*x*y+y",
            "(2*x-1)*(y-x^2)",
            "y^3-2",
        ] {
            let (c, f) = finder(s);
            assert_eq!(f.points_up_to(12), brute(&c, 12), "{s}");
            assert_eq!(f.first_point(12), brute(&c, 12).first().cloned(), "{s}");
        }
    }

    #[test]
    fn first_points() {
        let (_, f) = finder("x^4+y^4-17");
        assert_eq!(f.first_point(5), Some(ReducedPoint::from_ints(-2, -1, 1).unwrap()));
        let (_, f) = finder("x^4+y^4-1");
        assert_eq!(f.first_point(5), Some(ReducedPoint::from_ints(-1, 0, 1).unwrap()));
        let (_, f) = finder("x^4+y^4+1");
        assert_eq!(f.first_point(100), None);
        let (_, f) = finder("(2*x-1)*(y^3-x^5-3)");
        assert_eq!(f.first_point(5), Some(ReducedPoint::from_ints(1, -2, 2).unwrap()));
    }
}
