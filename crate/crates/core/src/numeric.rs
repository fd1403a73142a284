//! Exact rationals, reduced plane points, the height function and the
//! height-ordered enumeration of rational plane points.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type BigRat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumericError {
    #[error("denominator must be positive, got {0}")]
    NonPositiveDenominator(BigInt),
    #[error("triple ({0}, {1}, {2}) is not reduced")]
    NotReduced(BigInt, BigInt, BigInt),
    #[error("projective point has all coordinates zero")]
    ZeroProjectivePoint,
}

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// A rational point `(p/r, q/r)` of the affine plane in lowest terms:
/// `gcd(p, q, r) = 1` and `r >= 1`.
///
/// The derived ordering is the enumeration order: ascending height, then
/// lexicographic on `(p, q, r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedPoint {
    p: BigInt,
    q: BigInt,
    r: BigInt,
}

impl ReducedPoint {
    pub fn new(p: BigInt, q: BigInt, r: BigInt) -> Result<Self, NumericError> {
        if !r.is_positive() {
            return Err(NumericError::NonPositiveDenominator(r));
        }
        if !p.gcd(&q).gcd(&r).is_one() {
            return Err(NumericError::NotReduced(p, q, r));
        }
        Ok(ReducedPoint { p, q, r })
    }

    pub fn from_ints(p: i64, q: i64, r: i64) -> Result<Self, NumericError> {
        Self::new(p.into(), q.into(), r.into())
    }

    /// The unique reduced triple with `p/r = x` and `q/r = y`.
    pub fn from_affine(x: &BigRat, y: &BigRat) -> Self {
        let r = x.denom().lcm(y.denom());
        let p = x.numer() * (&r / x.denom());
        let q = y.numer() * (&r / y.denom());
        ReducedPoint { p, q, r }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    pub fn x(&self) -> BigRat {
        BigRat::new(self.p.clone(), self.r.clone())
    }

    pub fn y(&self) -> BigRat {
        BigRat::new(self.q.clone(), self.r.clone())
    }

    pub fn height(&self) -> BigInt {
        height(self)
    }
}

impl Ord for ReducedPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| self.p.cmp(&other.p))
            .then_with(|| self.q.cmp(&other.q))
            .then_with(|| self.r.cmp(&other.r))
    }
}

impl PartialOrd for ReducedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReducedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.q, self.r)
    }
}

/// `max(|p|, |q|, r)`.
pub fn height(point: &ReducedPoint) -> BigInt {
    let m = point.p.abs().max(point.q.abs());
    m.max(point.r.clone())
}

pub fn reduce_point(x: &BigRat, y: &BigRat) -> ReducedPoint {
    ReducedPoint::from_affine(x, y)
}

/// Height of a single rational number: `max(|numerator|, denominator)`.
pub fn rat_height(x: &BigRat) -> BigInt {
    x.numer().abs().max(x.denom().clone())
}

/// A point of projective 3-space with integer coordinates `(w, x, y, z)`,
/// stored as the canonical representative: coprime coordinates with the
/// first nonzero one positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint3 {
    coords: [BigInt; 4],
}

impl ProjPoint3 {
    pub fn new(coords: [BigInt; 4]) -> Result<Self, NumericError> {
        let g = coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return Err(NumericError::ZeroProjectivePoint);
        }
        let first_negative = coords
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative());
        let g = if first_negative { -g } else { g };
        Ok(ProjPoint3 {
            coords: coords.map(|c| c / &g),
        })
    }

    pub fn from_rationals(coords: &[BigRat; 4]) -> Result<Self, NumericError> {
        let l = coords
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints = [0, 1, 2, 3].map(|i| coords[i].numer() * (&l / coords[i].denom()));
        Self::new(ints)
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Result<Self, NumericError> {
        Self::new([w.into(), x.into(), y.into(), z.into()])
    }

    pub fn coords(&self) -> &[BigInt; 4] {
        &self.coords
    }

    pub fn w(&self) -> &BigInt {
        &self.coords[0]
    }

    /// `(x/w, y/w)` when `w != 0`.
    pub fn affine_xy(&self) -> Option<(BigRat, BigRat)> {
        if self.coords[0].is_zero() {
            return None;
        }
        Some((
            BigRat::new(self.coords[1].clone(), self.coords[0].clone()),
            BigRat::new(self.coords[2].clone(), self.coords[0].clone()),
        ))
    }

    pub fn as_rationals(&self) -> [BigRat; 4] {
        self.coords.clone().map(BigRat::from_integer)
    }
}

impl fmt::Display for ProjPoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [w, x, y, z] = &self.coords;
        write!(f, "({w} : {x} : {y} : {z})")
    }
}

fn gcd3(p: i64, q: i64, r: i64) -> i64 {
    p.gcd(&q).gcd(&r)
}

/// Stateless, restartable generator of reduced plane points in enumeration
/// order. The position is fully determined by the last emitted triple.
#[derive(Clone, Debug)]
pub struct HeightEnumerator {
    h_max: Option<i64>,
    // candidate triple to examine next
    h: i64,
    p: i64,
    q: i64,
    r: i64,
}

impl HeightEnumerator {
    /// Every reduced point with height `<= h_max`.
    pub fn up_to(h_max: i64) -> Self {
        HeightEnumerator {
            h_max: Some(h_max),
            h: 1,
            p: -1,
            q: -1,
            r: 1,
        }
    }

    /// The infinite enumeration.
    pub fn unbounded() -> Self {
        HeightEnumerator {
            h_max: None,
            ..Self::up_to(1)
        }
    }

    /// Resumes right after `last`, which must have been emitted by an
    /// enumeration with the same bound.
    pub fn resume_after(last: &ReducedPoint, h_max: Option<i64>) -> Self {
        let to_i64 = |v: &BigInt| -> i64 { i64::try_from(v).expect("enumerated point fits in i64") };
        let mut e = HeightEnumerator {
            h_max,
            h: to_i64(&last.height()),
            p: to_i64(&last.p),
            q: to_i64(&last.q),
            r: to_i64(&last.r),
        };
        e.advance();
        e
    }

    fn advance(&mut self) {
        let h = self.h;
        if self.r < h && self.p.abs().max(self.q.abs()) == h {
            self.r += 1;
        } else if self.q < h {
            self.q += 1;
            self.r = if self.p.abs().max(self.q.abs()) == h { 1 } else { h };
        } else if self.p < h {
            self.p += 1;
            self.q = -h;
            self.r = 1;
        } else {
            self.h += 1;
            self.p = -self.h;
            self.q = -self.h;
            self.r = 1;
        }
    }
}

impl Iterator for HeightEnumerator {
    type Item = ReducedPoint;

    fn next(&mut self) -> Option<ReducedPoint> {
        loop {
            if self.h_max.is_some_and(|m| self.h > m) {
                return None;
            }
            let (p, q, r) = (self.p, self.q, self.r);
            let on_level = p.abs().max(q.abs()).max(r) == self.h;
            self.advance();
            if on_level && gcd3(p, q, r) == 1 {
                return Some(ReducedPoint {
                    p: p.into(),
                    q: q.into(),
                    r: r.into(),
                });
            }
        }
    }
}

pub fn enumerate_by_height(h_max: i64) -> HeightEnumerator {
    HeightEnumerator::up_to(h_max)
}

/// Rationals `p/r` in lowest terms with `max(|p|, r) == h`, ascending.
pub fn rationals_of_height(h: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    if h == 1 {
        out.extend([(-1, 1), (0, 1), (1, 1)]);
        return out;
    }
    for r in 1..=h {
        for p in [-h, h] {
            if p.gcd(&r) == 1 {
                out.push((p, r));
            }
        }
    }
    for p in (1 - h)..h {
        if p.gcd(&h) == 1 {
            out.push((p, h));
        }
    }
    out.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple(p: i64, q: i64, r: i64) -> ReducedPoint {
        ReducedPoint::from_ints(p, q, r).unwrap()
    }

    #[test]
    fn height_examples() {
        assert_eq!(triple(1, 3, 2).height(), BigInt::from(3));
        assert_eq!(triple(0, 0, 1).height(), BigInt::from(1));
        assert_eq!(triple(2, -5, 3).height(), BigInt::from(5));
    }

    #[test]
    fn reduce_point_examples() {
        assert_eq!(reduce_point(&rat(1, 2), &rat(3, 4)), triple(2, 3, 4));
        assert_eq!(reduce_point(&int(0), &int(0)), triple(0, 0, 1));
        assert_eq!(reduce_point(&int(-2), &int(5)), triple(-2, 5, 1));
    }

    #[test]
    fn rejects_unreduced_triples() {
        assert!(ReducedPoint::from_ints(2, 4, 2).is_err());
        assert!(ReducedPoint::from_ints(1, 1, 0).is_err());
        assert!(ReducedPoint::from_ints(1, 1, -1).is_err());
    }

    #[test]
    fn height_one_block() {
        let pts: Vec<_> = enumerate_by_height(1).collect();
        let expected = [
            (-1, -1, 1),
            (-1, 0, 1),
            (-1, 1, 1),
            (0, -1, 1),
            (0, 0, 1),
            (0, 1, 1),
            (1, -1, 1),
            (1, 0, 1),
            (1, 1, 1),
        ];
        assert_eq!(pts.len(), 9);
        for (pt, (p, q, r)) in pts.iter().zip(expected) {
            assert_eq!(*pt, triple(p, q, r));
        }
    }

    #[test]
    fn first_height_two_point() {
        let pt = enumerate_by_height(2).nth(9).unwrap();
        assert_eq!(pt, triple(-2, -2, 1));
    }

    // independent oracle: triple loop plus sort
    fn brute(h_max: i64) -> Vec<ReducedPoint> {
        let mut v = Vec::new();
        for p in -h_max..=h_max {
            for q in -h_max..=h_max {
                for r in 1..=h_max {
                    if gcd3(p, q, r) == 1 {
                        v.push(triple(p, q, r));
                    }
                }
            }
        }
        v.sort();
        v
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for h in 1..=20 {
            let got: Vec<_> = enumerate_by_height(h).collect();
            assert_eq!(got, brute(h), "h_max = {h}");
        }
    }

    #[test]
    fn emitted_points_are_canonical() {
        for pt in enumerate_by_height(8) {
            assert_eq!(reduce_point(&pt.x(), &pt.y()), pt);
        }
    }

    #[test]
    fn resume_continues_the_sequence() {
        let all: Vec<_> = enumerate_by_height(6).collect();
        for k in [0, 5, 9, 40, all.len() - 2] {
            let rest: Vec<_> = HeightEnumerator::resume_after(&all[k], Some(6)).collect();
            assert_eq!(rest, all[k + 1..].to_vec());
        }
    }

    #[test]
    fn rationals_of_height_cover_levels() {
        for h in 1..=12 {
            let got = rationals_of_height(h);
            let mut want = Vec::new();
            for p in -h..=h {
                for r in 1..=h {
                    if p.gcd(&r) == 1 && p.abs().max(r) == h {
                        want.push((p, r));
                    }
                }
            }
            want.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
            assert_eq!(got, want);
        }
    }

    #[test]
    fn projective_canonical_form() {
        let p = ProjPoint3::from_ints(0, -2, 4, -6).unwrap();
        assert_eq!(p, ProjPoint3::from_ints(0, 1, -2, 3).unwrap());
        assert!(ProjPoint3::from_ints(0, 0, 0, 0).is_err());
        let q = ProjPoint3::from_rationals(&[int(1), rat(-1, 2), int(0), rat(1, 3)]).unwrap();
        assert_eq!(q, ProjPoint3::from_ints(6, -3, 0, 2).unwrap());
    }
}
