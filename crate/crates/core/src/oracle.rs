//! Decision oracles: given a curve, answer whether it has a rational point.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::geometry::PlaneCurve;
use crate::numeric::ReducedPoint;
use crate::points::PointFinder;
use crate::poly::Monomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("Holzer oracle needs a*x^2 + b*y^2 - c with a, b, c > 0, got {0}")]
    OracleShapeMismatch(String),
    #[error("Holzer coefficients must be positive, got ({0}, {1}, {2})")]
    NonPositive(BigInt, BigInt, BigInt),
    #[error("height bound must be at least 1")]
    InvalidBound,
    #[error("point list line {line}: {message}")]
    PointListSyntax { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Yes => "YES",
            Answer::No => "NO",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub answer: Answer,
    pub witness: Option<ReducedPoint>,
}

impl OracleVerdict {
    fn no() -> Self {
        OracleVerdict {
            answer: Answer::No,
            witness: None,
        }
    }

    fn yes(witness: ReducedPoint) -> Self {
        OracleVerdict {
            answer: Answer::Yes,
            witness: Some(witness),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleSpec {
    /// Trusts `B >= m(F)` and searches every point of height `<= B`.
    HeightBound(u64),
    /// Trusts the list to contain every rational point.
    PointList(BTreeSet<ReducedPoint>),
    /// Diagonal conics `a x^2 + b y^2 = c`.
    Holzer,
}

pub fn decide(f: &PlaneCurve, spec: &OracleSpec) -> Result<OracleVerdict, OracleError> {
    let verdict = match spec {
        OracleSpec::HeightBound(0) => return Err(OracleError::InvalidBound),
        OracleSpec::HeightBound(b) => {
            let cap = i64::try_from(*b).map_err(|_| OracleError::InvalidBound)?;
            match PointFinder::new(f).first_point(cap) {
                Some(pt) => OracleVerdict::yes(pt),
                None => OracleVerdict::no(),
            }
        }
        OracleSpec::PointList(points) => {
            match points.iter().find(|pt| f.contains(&pt.x(), &pt.y())) {
                Some(pt) => OracleVerdict::yes(pt.clone()),
                None => OracleVerdict::no(),
            }
        }
        OracleSpec::Holzer => {
            let (a, b, c) = conic_shape(f)?;
            match holzer_decide(&a, &b, &c)? {
                Some(pt) => OracleVerdict::yes(pt),
                None => OracleVerdict::no(),
            }
        }
    };
    if let Some(w) = &verdict.witness {
        assert!(f.contains(&w.x(), &w.y()), "oracle witness {w} is not on {f}");
    }
    Ok(verdict)
}

/// `(a, b, c)` for a curve `a x^2 + b y^2 - c`.
fn conic_shape(f: &PlaneCurve) -> Result<(BigInt, BigInt, BigInt), OracleError> {
    let mismatch = || OracleError::OracleShapeMismatch(f.to_string());
    let terms = f.f().integer_terms();
    let coeff = |e: [u32; 2]| -> BigInt {
        terms
            .iter()
            .find(|(m, _)| *m == Monomial(e.to_vec()))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    };
    let (a, b, c) = (coeff([2, 0]), coeff([0, 2]), -coeff([0, 0]));
    let nonzero = [&a, &b, &c].iter().filter(|v| !v.is_zero()).count();
    if terms.len() != 3 || nonzero != 3 || !(a.is_positive() && b.is_positive() && c.is_positive()) {
        return Err(mismatch());
    }
    Ok((a, b, c))
}

/// `floor(sup{sqrt(ab), sqrt(ac), sqrt(bc)})`.
pub fn holzer_bound(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    let m = (a * b).max(a * c).max(b * c);
    m.sqrt()
}

/// Minimal-height reduced `(p, q, r)` with `a p^2 + b q^2 = c r^2` inside the
/// Holzer box; `None` proves there is no rational point. Signs are taken
/// nonnegative since only squares occur.
pub fn holzer_decide(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
) -> Result<Option<ReducedPoint>, OracleError> {
    if !(a.is_positive() && b.is_positive() && c.is_positive()) {
        return Err(OracleError::NonPositive(a.clone(), b.clone(), c.clone()));
    }
    let bound = holzer_bound(a, b, c);
    let mut best: Option<ReducedPoint> = None;
    let mut r = BigInt::from(1);
    while r <= bound {
        let rhs = c * &r * &r;
        let mut p = BigInt::zero();
        while p <= bound {
            let rest = &rhs - a * &p * &p;
            if rest.is_negative() {
                break;
            }
            let (q2, rem) = rest.div_rem(b);
            if rem.is_zero() {
                let q = q2.sqrt();
                if &q * &q == q2 && q <= bound && p.gcd(&q).gcd(&r) == BigInt::from(1) {
                    let pt = ReducedPoint::new(p.clone(), q, r.clone()).expect("reduced");
                    if best.as_ref().is_none_or(|b| holzer_key(&pt) < holzer_key(b)) {
                        best = Some(pt);
                    }
                }
            }
            p += 1;
        }
        r += 1;
    }
    Ok(best)
}

// minimal height first, then lex on (r, p, q)
fn holzer_key(pt: &ReducedPoint) -> (BigInt, BigInt, BigInt, BigInt) {
    (pt.height(), pt.r().clone(), pt.p().clone(), pt.q().clone())
}

/// Parses `p q r` lines; `#` starts a comment. Triples must be reduced.
pub fn parse_point_list(text: &str) -> Result<BTreeSet<ReducedPoint>, OracleError> {
    let mut out = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| OracleError::PointListSyntax {
            line: idx + 1,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err(format!("expected `p q r`, got {} fields", fields.len())));
        }
        let nums = fields
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| err(format!("`{s}`: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let [p, q, r] = <[BigInt; 3]>::try_from(nums).expect("three fields");
        out.insert(ReducedPoint::new(p, q, r).map_err(|e| err(e.to_string()))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::parse(s, true).unwrap()
    }

    fn pt(p: i64, q: i64, r: i64) -> ReducedPoint {
        ReducedPoint::from_ints(p, q, r).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn height_bound_examples() {
        let v = decide(&curve("x^4+y^4-17"), &OracleSpec::HeightBound(2)).unwrap();
        assert_eq!(v, OracleVerdict::yes(pt(-2, -1, 1)));
        let v = decide(&curve("x^4+y^4+1"), &OracleSpec::HeightBound(1000)).unwrap();
        assert_eq!(v, OracleVerdict::no());
        assert_eq!(
            decide(&curve("x^4+y^4+1"), &OracleSpec::HeightBound(0)),
            Err(OracleError::InvalidBound)
        );
    }

    #[test]
    fn point_lists_are_reverified() {
        let list: BTreeSet<_> = [pt(1, 0, 1), pt(0, 1, 1), pt(-1, 0, 1), pt(0, -1, 1)].into();
        let v = decide(&curve("x^4+y^4-1"), &OracleSpec::PointList(list.clone())).unwrap();
        assert_eq!(v, OracleVerdict::yes(pt(-1, 0, 1)));
        let v = decide(&curve("x^4+y^4-17"), &OracleSpec::PointList(list)).unwrap();
        assert_eq!(v, OracleVerdict::no());
    }

    #[test]
    fn holzer_examples() {
        assert_eq!(holzer_decide(&big(1), &big(1), &big(2)), Ok(Some(pt(1, 1, 1))));
        assert_eq!(holzer_bound(&big(1), &big(1), &big(3)), big(1));
        assert_eq!(holzer_decide(&big(1), &big(1), &big(3)), Ok(None));
        assert_eq!(holzer_decide(&big(1), &big(2), &big(3)), Ok(Some(pt(1, 1, 1))));
        assert!(matches!(
            holzer_decide(&big(0), &big(1), &big(1)),
            Err(OracleError::NonPositive(..))
        ));
    }

    #[test]
    fn holzer_dispatch_checks_shape() {
        let v = decide(&curve("x^2+2*y^2-3"), &OracleSpec::Holzer).unwrap();
        assert_eq!(v, OracleVerdict::yes(pt(1, 1, 1)));
        let v = decide(&curve("x^2+y^2-3"), &OracleSpec::Holzer).unwrap();
        assert_eq!(v, OracleVerdict::no());
        for s in ["x^4+y^4-1", "x^2-y^2-3", "x^2+y^2+x-3", "x^2+y^2+1"] {
            assert!(
                matches!(decide(&curve(s), &OracleSpec::Holzer), Err(OracleError::OracleShapeMismatch(_))),
                "{s}"
            );
        }
    }

    #[test]
    fn point_list_files() {
        let text = "# fixture\n1 0 1\n  -1 0 1  # trailing\n\n0 1 1\n0 -1 1\n";
        let set = parse_point_list(text).unwrap();
        assert_eq!(set.len(), 4);
        assert_eq!(set.iter().next(), Some(&pt(-1, 0, 1)));
        assert!(matches!(
            parse_point_list("1 2"),
            Err(OracleError::PointListSyntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_point_list("\n2 4 2"),
            Err(OracleError::PointListSyntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_point_list("1 x 1"),
            Err(OracleError::PointListSyntax { line: 1, .. })
        ));
    }
}
