//! Secant screening of candidate centers.
//!
//! Two formulations of "two points of C collinear with m":
//! the minor system in `(x, y, z, x2, y2, z2)`, and the line-coordinate
//! system in the image plane. A line through `m` not inside `H` is
//! `(1 : X + a mu : Y + b mu : mu)`; it meets the affine part of `C` where
//! `q(mu) = a mu^2 + (X - p) mu - 1` and `P(mu) = f(X + a mu, Y + b mu)` share
//! a root. With `P mod q = A mu + B`, both roots of `q` lie on `C` exactly
//! when `A = B = 0`; the pair is distinct when `disc = (X - p)^2 + 4a != 0`.

use num_traits::{One, Signed, Zero};

use super::modcert;
use super::{
    boundary_points, plane_vars, BoundaryPoints, CandidateCenter, GeometryError, ScreenVerdict,
    SecantWitness, SpaceCurve,
};
use crate::groebner::{dimension, intersect, saturate, solve_zero_dim, IdealBasis, ZeroDimEntry};
use crate::numeric::{BigRat, HeightEnumerator, ProjPoint3};
use crate::poly::bivariate::IntBiv;
use crate::poly::{rational_roots, univariate_gcd, vars, Monomial, Polynomial, Vars};

fn secant_vars() -> Vars {
    vars(&["x", "y", "z", "x2", "y2", "z2"])
}

fn det3(m: [[&Polynomial; 3]; 3]) -> Polynomial {
    let t = |a: &Polynomial, b: &Polynomial, c: &Polynomial| &(a * b) * c;
    let pos = &(&t(m[0][0], m[1][1], m[2][2]) + &t(m[0][1], m[1][2], m[2][0]))
        + &t(m[0][2], m[1][0], m[2][1]);
    let neg = &(&t(m[0][2], m[1][1], m[2][0]) + &t(m[0][0], m[1][2], m[2][1]))
        + &t(m[0][1], m[1][0], m[2][2]);
    &pos - &neg
}

/// The four 3x3 minors of the 3x4 matrix with the given rows.
fn minors(rows: &[[Polynomial; 4]; 3]) -> Vec<Polynomial> {
    (0..4)
        .map(|skip| {
            let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
            let m = [0, 1, 2].map(|r| [0, 1, 2].map(|k| &rows[r][cols[k]]));
            det3(m)
        })
        .collect()
}

/// Ideal of pairs of affine points of `C` collinear with `m`.
pub fn secant_system(c: &SpaceCurve, center: &CandidateCenter) -> IdealBasis {
    let sv = secant_vars();
    let v = |i| Polynomial::var_at(sv.clone(), i);
    let k = |r: &BigRat| Polynomial::constant(sv.clone(), r.clone());
    let one = Polynomial::one(sv.clone());
    let f = c.source().f();
    let f1 = f.compose(&[v(0), v(1)], &sv);
    let f2 = f.compose(&[v(3), v(4)], &sv);
    let p = k(c.p());
    let h1 = &(&(&v(0) - &p) * &v(2)) - &one;
    let h2 = &(&(&v(3) - &p) * &v(5)) - &one;
    let rows = [
        [one.clone(), v(0), v(1), v(2)],
        [one.clone(), v(3), v(4), v(5)],
        [Polynomial::zero(sv.clone()), k(&center.a), k(&center.b), one.clone()],
    ];
    let mut gens = vec![f1, h1, f2, h2];
    gens.extend(minors(&rows));
    IdealBasis::new(sv, gens).expect("shared variables")
}

/// `f(X + a mu, Y + b mu)` reduced modulo `q(mu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSystem {
    pub center: CandidateCenter,
    pub p: BigRat,
    /// Coefficients of `P(mu)` in `(x, y)`, lowest power first.
    pub coefficients: Vec<Polynomial>,
    /// `A` and `B`; absent when `a = 0` (then `q` is linear).
    pub reduced: Option<(Polynomial, Polynomial)>,
    pub disc: Polynomial,
}

impl LineSystem {
    /// Resultant of `q` and `P` in `mu`, up to a constant: the image curve of
    /// the affine part of `C` under projection from `m`.
    pub fn image_resultant(&self) -> Polynomial {
        let pv = plane_vars();
        let xp = &Polynomial::var_at(pv.clone(), 0) - &Polynomial::constant(pv.clone(), self.p.clone());
        match &self.reduced {
            Some((a_poly, b_poly)) => {
                let ab = a_poly * b_poly;
                &(&(b_poly * b_poly).scale(&self.center.a) - &(&xp * &ab)) - &(a_poly * a_poly)
            }
            None => {
                let n = self.coefficients.len() - 1;
                let mut out = Polynomial::zero(pv.clone());
                let mut pw = Polynomial::one(pv);
                for k in (0..=n).rev() {
                    out = &out + &(&self.coefficients[k] * &pw);
                    pw = &pw * &xp;
                }
                out
            }
        }
    }

    /// Points of `C` on the line of image point `(X, Y)` for the parameter
    /// roots `mu`.
    fn point(&self, x: &BigRat, y: &BigRat, mu: &BigRat) -> ProjPoint3 {
        let c = &self.center;
        ProjPoint3::from_rationals(&[
            BigRat::one(),
            x + &c.a * mu,
            y + &c.b * mu,
            mu.clone(),
        ])
        .expect("w = 1")
    }

    /// Witness for the secant line of image point `(X, Y)` with `A = B = 0`.
    fn witness(&self, x: &BigRat, y: &BigRat) -> SecantWitness {
        let a = &self.center.a;
        let xp = x - &self.p;
        let disc = &xp * &xp + BigRat::from_integer(4.into()) * a;
        if let Some(s) = rational_sqrt(&disc) {
            let two_a = a * BigRat::from_integer(2.into());
            let m1 = (-&xp - &s) / &two_a;
            let m2 = (-&xp + &s) / &two_a;
            let (p1, p2) = (self.point(x, y, &m1), self.point(x, y, &m2));
            return if p1 <= p2 {
                SecantWitness::RationalPair(p1, p2)
            } else {
                SecantWitness::RationalPair(p2, p1)
            };
        }
        let tv = vars(&["t"]);
        let t = Polynomial::var_at(tv.clone(), 0);
        let k = |r: BigRat| Polynomial::constant(tv.clone(), r);
        // q(t) / a
        let min_poly = Polynomial::from_terms(
            tv.clone(),
            [
                (Monomial(vec![2]), BigRat::one()),
                (Monomial(vec![1]), &xp / a),
                (Monomial(vec![0]), -a.recip()),
            ],
        );
        let coordinates = [
            k(BigRat::one()),
            &k(x.clone()) + &t.scale(a),
            &k(y.clone()) + &t.scale(&self.center.b),
            t,
        ];
        SecantWitness::QuadraticPair {
            min_poly,
            coordinates,
        }
    }
}

fn rational_sqrt(r: &BigRat) -> Option<BigRat> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer().sqrt(), r.denom().sqrt());
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRat::new(n, d))
}

pub fn line_system(c: &SpaceCurve, center: &CandidateCenter) -> LineSystem {
    let pv = plane_vars();
    let lv = vars(&["x", "y", "t"]);
    let v = |i| Polynomial::var_at(lv.clone(), i);
    let shifted = c.source().f().compose(
        &[
            &v(0) + &v(2).scale(&center.a),
            &v(1) + &v(2).scale(&center.b),
        ],
        &lv,
    );
    let coefficients: Vec<Polynomial> = shifted
        .coefficients_in(2)
        .iter()
        .map(|p| p.with_vars(&pv).expect("t removed"))
        .collect();
    let xp = &Polynomial::var_at(pv.clone(), 0) - &Polynomial::constant(pv.clone(), c.p().clone());
    let disc = &(&xp * &xp) + &Polynomial::constant(pv.clone(), &center.a * BigRat::from_integer(4.into()));
    let reduced = (!center.a.is_zero()).then(|| {
        // mu^2 = (1 - (X - p) mu) / a
        let inv_a = center.a.recip();
        let mut co = coefficients.clone();
        for k in (2..co.len()).rev() {
            let top = co[k].scale(&inv_a);
            co[k - 2] = &co[k - 2] + &top;
            co[k - 1] = &co[k - 1] - &(&top * &xp);
            co[k] = Polynomial::zero(pv.clone());
        }
        co.resize(2, Polynomial::zero(pv.clone()));
        (co[1].clone(), co[0].clone())
    });
    LineSystem {
        center: center.clone(),
        p: c.p().clone(),
        coefficients,
        reduced,
        disc,
    }
}

fn degeneracy(c: &SpaceCurve, center: &CandidateCenter, bd: &BoundaryPoints) -> Option<String> {
    if bd.degenerate_line {
        return Some("the line w = x = 0 lies on C".into());
    }
    let m = center.point();
    if c.contains(&m) {
        return Some("center on C".into());
    }
    let mr = m.as_rationals();
    for (i, b1) in bd.rational.iter().enumerate() {
        for b2 in &bd.rational[i + 1..] {
            if rank_at_most_two(&[b1.as_rationals(), b2.as_rationals(), mr.clone()]) {
                return Some(format!("center on the line through boundary points {b1} and {b2}"));
            }
        }
    }
    None
}

fn rank_at_most_two(rows: &[[BigRat; 4]; 3]) -> bool {
    (0..4).all(|skip| {
        let c: Vec<usize> = (0..4).filter(|&k| k != skip).collect();
        let e = |r: usize, k: usize| &rows[r][c[k]];
        let det = e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
            - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
        det.is_zero()
    })
}

/// Rational points of `C` other than `B` on the line `m ∨ B`, for each
/// rational boundary point `B`.
fn boundary_secant(
    c: &SpaceCurve,
    center: &CandidateCenter,
    bd: &BoundaryPoints,
) -> Option<SecantWitness> {
    let tv = vars(&["s"]);
    let s = Polynomial::var_at(tv.clone(), 0);
    let m = center.point().as_rationals();
    for b in &bd.rational {
        let br = b.as_rationals();
        // s m + B
        let line: Vec<Polynomial> = (0..4)
            .map(|i| &s.scale(&m[i]) + &Polynomial::constant(tv.clone(), br[i].clone()))
            .collect();
        let r1 = c.g1().compose(&line, &tv);
        let r2 = c.g2().compose(&line, &tv);
        let g = match (r1.is_zero(), r2.is_zero()) {
            (true, true) => continue,
            (true, false) => r2,
            (false, true) => r1,
            (false, false) => univariate_gcd(&r1, &r2).expect("univariate"),
        };
        if g.is_constant() {
            continue;
        }
        for root in rational_roots(&g).expect("univariate") {
            if root.is_zero() {
                continue;
            }
            let pt: [BigRat; 4] = std::array::from_fn(|i| &root * &m[i] + &br[i]);
            let other = ProjPoint3::from_rationals(&pt).expect("nonzero");
            return Some(SecantWitness::RationalPair(b.clone(), other));
        }
    }
    None
}

/// Screens `center` through the line-coordinate system.
pub fn screen_center(c: &SpaceCurve, center: &CandidateCenter) -> ScreenVerdict {
    let bd = boundary_points(c);
    if let Some(reason) = degeneracy(c, center, &bd) {
        return ScreenVerdict::DegenerateCenter(reason);
    }
    if let Some(w) = boundary_secant(c, center, &bd) {
        return ScreenVerdict::RationalSecant(w);
    }
    let ls = line_system(c, center);
    // With a = 0 the quadric restriction is linear: each line through m
    // meets the affine part of C at most once.
    let Some((a_poly, b_poly)) = &ls.reduced else {
        return ScreenVerdict::SafeCenter;
    };
    if a_poly.is_zero() && b_poly.is_zero() {
        return ScreenVerdict::PositiveDimensional;
    }
    if !a_poly.is_zero() && !b_poly.is_zero() {
        let (ia, ib) = (IntBiv::from_poly(a_poly), IntBiv::from_poly(b_poly));
        if modcert::certify(&ia, &ib, &[]).is_some() {
            return ScreenVerdict::SafeCenter;
        }
        let zeros = modcert::lift_rational_zeros(&ia, &ib);
        let mut tangents = Vec::new();
        for (x, y) in zeros {
            if ls.disc.eval_slice(&[x.clone(), y.clone()]).is_zero() {
                tangents.push((x, y));
            } else {
                return ScreenVerdict::RationalSecant(ls.witness(&x, &y));
            }
        }
        if !tangents.is_empty() && modcert::certify(&ia, &ib, &tangents).is_some() {
            return ScreenVerdict::SafeCenter;
        }
    }
    exact_line_screen(&ls, a_poly, b_poly)
}

fn exact_line_screen(ls: &LineSystem, a_poly: &Polynomial, b_poly: &Polynomial) -> ScreenVerdict {
    let ideal = IdealBasis::new(plane_vars(), vec![a_poly.clone(), b_poly.clone()])
        .expect("shared variables");
    let sat = saturate(&ideal, &ls.disc);
    match dimension(&sat) {
        -1 => return ScreenVerdict::SafeCenter,
        0 => {}
        _ => return ScreenVerdict::PositiveDimensional,
    }
    let sol = solve_zero_dim(&sat).expect("zero-dimensional");
    let verdict = match sol.rational_points().next() {
        Some(pt) => ScreenVerdict::RationalSecant(ls.witness(&pt[0], &pt[1])),
        None => ScreenVerdict::SafeCenter,
    };
    verdict
}

/// Screens `center` by solving the collinearity-minor system directly.
pub fn screen_center_literal(c: &SpaceCurve, center: &CandidateCenter) -> ScreenVerdict {
    let bd = boundary_points(c);
    if let Some(reason) = degeneracy(c, center, &bd) {
        return ScreenVerdict::DegenerateCenter(reason);
    }
    let sys = secant_system(c, center);
    let sv = sys.vars().clone();
    let v = |i| Polynomial::var_at(sv.clone(), i);
    let mut off_diagonal: Option<IdealBasis> = None;
    for i in 0..3 {
        let s = saturate(&sys, &(&v(i) - &v(i + 3)));
        off_diagonal = Some(match off_diagonal {
            None => s,
            Some(prev) => intersect(&prev, &s).expect("shared variables"),
        });
    }
    let sat = off_diagonal.expect("three saturations");
    match dimension(&sat) {
        -1 => {}
        0 => {
            let sol = solve_zero_dim(&sat).expect("zero-dimensional");
            for e in &sol.entries {
                match e {
                    ZeroDimEntry::RationalPoint(pt) => {
                        let mk = |k: usize| {
                            ProjPoint3::from_rationals(&[
                                BigRat::one(),
                                pt[k].clone(),
                                pt[k + 1].clone(),
                                pt[k + 2].clone(),
                            ])
                            .expect("w = 1")
                        };
                        let (p1, p2) = (mk(0), mk(3));
                        let (p1, p2) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
                        return ScreenVerdict::RationalSecant(SecantWitness::RationalPair(p1, p2));
                    }
                    ZeroDimEntry::QuadraticPair {
                        min_poly,
                        coordinates,
                    } => {
                        if second_is_conjugate(min_poly, coordinates) {
                            let tv = min_poly.vars().clone();
                            return ScreenVerdict::RationalSecant(SecantWitness::QuadraticPair {
                                min_poly: min_poly.clone(),
                                coordinates: [
                                    Polynomial::one(tv),
                                    coordinates[0].clone(),
                                    coordinates[1].clone(),
                                    coordinates[2].clone(),
                                ],
                            });
                        }
                    }
                }
            }
        }
        _ => return ScreenVerdict::PositiveDimensional,
    }
    if let Some(w) = boundary_secant(c, center, &bd) {
        return ScreenVerdict::RationalSecant(w);
    }
    ScreenVerdict::SafeCenter
}

/// `p mod min_poly` for polynomials in one variable `t`, with monic quadratic
/// `min_poly`.
fn rem_quadratic(p: &Polynomial, min_poly: &Polynomial) -> Polynomial {
    let c1 = min_poly.terms().get(&Monomial(vec![1])).cloned().unwrap_or_default();
    let c0 = min_poly.constant_term();
    let d = p.degree().unwrap_or(0) as usize;
    let mut co = vec![BigRat::zero(); d.max(1) + 1];
    for (m, c) in p.terms() {
        co[m.0[0] as usize] += c;
    }
    for k in (2..co.len()).rev() {
        let top = std::mem::take(&mut co[k]);
        co[k - 1] -= &top * &c1;
        co[k - 2] -= &top * &c0;
    }
    Polynomial::from_terms(
        p.vars().clone(),
        [(Monomial(vec![1]), co[1].clone()), (Monomial(vec![0]), co[0].clone())],
    )
}

/// `q(t)` evaluated at the conjugate root `-c1 - t`.
fn conjugate(q: &Polynomial, min_poly: &Polynomial) -> Polynomial {
    let tv = q.vars().clone();
    let t = Polynomial::var_at(tv.clone(), 0);
    let c1 = min_poly.terms().get(&Monomial(vec![1])).cloned().unwrap_or_default();
    let bar = &Polynomial::constant(tv.clone(), -c1) - &t;
    rem_quadratic(&q.compose(&[bar], &tv), min_poly)
}

fn second_is_conjugate(min_poly: &Polynomial, coords: &[Polynomial]) -> bool {
    (0..3).all(|i| rem_quadratic(&coords[i + 3], min_poly) == conjugate(&coords[i], min_poly))
}

/// Checks that a witness consists of two distinct points of `C` collinear
/// with the center.
pub fn verify_witness(c: &SpaceCurve, center: &CandidateCenter, w: &SecantWitness) -> bool {
    let m = center.point().as_rationals();
    match w {
        SecantWitness::RationalPair(p1, p2) => {
            p1 != p2
                && c.contains(p1)
                && c.contains(p2)
                && rank_at_most_two(&[p1.as_rationals(), p2.as_rationals(), m])
        }
        SecantWitness::QuadraticPair {
            min_poly,
            coordinates,
        } => {
            let tv = min_poly.vars().clone();
            let on_c = |g: &Polynomial| rem_quadratic(&g.compose(coordinates, &tv), min_poly).is_zero();
            let bar: Vec<Polynomial> = coordinates.iter().map(|q| conjugate(q, min_poly)).collect();
            let mrow: [Polynomial; 4] = std::array::from_fn(|i| Polynomial::constant(tv.clone(), m[i].clone()));
            let rows = [coordinates.clone(), std::array::from_fn(|i| bar[i].clone()), mrow];
            let distinct = (0..4).any(|i| rem_quadratic(&coordinates[i], min_poly) != bar[i]);
            distinct
                && on_c(c.g1())
                && on_c(c.g2())
                && minors(&rows).iter().all(|d| rem_quadratic(d, min_poly).is_zero())
        }
    }
}

/// Result of a successful center search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Screening {
    pub center: CandidateCenter,
    /// Every candidate examined, in order, with its verdict.
    pub tried: Vec<(CandidateCenter, ScreenVerdict)>,
}

/// First safe center in height order among the first `cap` candidates.
pub fn find_center(c: &SpaceCurve, cap: usize) -> Result<Screening, GeometryError> {
    let mut tried = Vec::new();
    for pt in HeightEnumerator::unbounded().take(cap) {
        let center = CandidateCenter::new(pt.x(), pt.y());
        let verdict = screen_center(c, &center);
        let safe = verdict.is_safe();
        tried.push((center.clone(), verdict));
        if safe {
            return Ok(Screening { center, tried });
        }
    }
    Err(GeometryError::CandidateCapExceeded(cap))
}
