//! Modular proofs that a pair of bivariate equations has no rational common
//! zero, and l-adic search for the rational zeros when such a proof fails.
//!
//! A rational zero `(X, Y)` written projectively with coprime integers reduces
//! mod any prime `l` to a common zero in `P^2(F_l)` of the homogenized pair.
//! So the absence of `F_l`-points proves the absence of rational ones.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::numeric::BigRat;
use crate::poly::bivariate::IntBiv;
use crate::poly::modular::{mod_inverse, rational_reconstruct, small_primes, Fp};

/// Primes tried by the certificate.
const CERT_PRIMES: usize = 40;
/// Primes whose zeros are lifted l-adically.
const LIFT_PRIMES: usize = 4;
const LIFT_BITS: u64 = 8192;

/// Affine and infinite common zeros of `a`, `b` over `F_l`; `None` when some
/// vertical line is a common component mod `l`.
pub(crate) struct ModZeros {
    pub affine: Vec<(u64, u64)>,
    pub at_infinity: bool,
}

pub(crate) fn common_zeros(a: &IntBiv, b: &IntBiv, fp: Fp) -> Option<ModZeros> {
    let (ma, mb) = (a.reduce(fp), b.reduce(fp));
    if ma.is_zero() || mb.is_zero() {
        return None;
    }
    let l = fp.p;
    let mut at_infinity = ma.top_at(0, 1) == 0 && mb.top_at(0, 1) == 0;
    for t in 0..l {
        if at_infinity {
            break;
        }
        at_infinity = ma.top_at(1, t) == 0 && mb.top_at(1, t) == 0;
    }
    let mut affine = Vec::new();
    for x0 in 0..l {
        let (pa, pb) = (ma.at_x(x0), mb.at_x(x0));
        let g = match (pa.is_empty(), pb.is_empty()) {
            (true, true) => return None,
            (true, false) => pb,
            (false, true) => pa,
            (false, false) => fp.poly_gcd(&pa, &pb),
        };
        if g.len() > 1 {
            affine.extend(fp.roots(&g).into_iter().map(|y0| (x0, y0)));
        }
    }
    Some(ModZeros {
        affine,
        at_infinity,
    })
}

fn reduce_rat(v: &BigRat, fp: Fp) -> Option<u64> {
    let l = BigInt::from(fp.p);
    if v.denom().is_multiple_of(&l) {
        return None;
    }
    let d = fp.reduce(v.denom());
    Some(fp.mul(fp.reduce(v.numer()), fp.inv(d)))
}

fn jacobian_mod(a: &IntBiv, b: &IntBiv, fp: Fp, x: u64, y: u64) -> u64 {
    let e = |f: IntBiv| f.reduce(fp).eval(x, y);
    let (ax, ay) = (e(a.derivative_x()), e(a.derivative_y()));
    let (bx, by) = (e(b.derivative_x()), e(b.derivative_y()));
    fp.sub(fp.mul(ax, by), fp.mul(ay, bx))
}

/// Searches for a prime proving that every rational common zero of `a`, `b`
/// lies in `known`. A zero mod `l` is excused only when it is the
/// nonsingular reduction of a known zero (Hensel uniqueness then pins it).
pub(crate) fn certify(a: &IntBiv, b: &IntBiv, known: &[(BigRat, BigRat)]) -> Option<u64> {
    'primes: for l in small_primes().skip(2).take(CERT_PRIMES) {
        let fp = Fp::new(l);
        let mut known_mod = Vec::new();
        for (x, y) in known {
            match (reduce_rat(x, fp), reduce_rat(y, fp)) {
                (Some(xm), Some(ym)) => known_mod.push((xm, ym)),
                _ => continue 'primes,
            }
        }
        let Some(zeros) = common_zeros(a, b, fp) else {
            continue;
        };
        if zeros.at_infinity {
            continue;
        }
        for &(x0, y0) in &zeros.affine {
            let excused =
                known_mod.contains(&(x0, y0)) && jacobian_mod(a, b, fp, x0, y0) != 0;
            if !excused {
                continue 'primes;
            }
        }
        return Some(l);
    }
    None
}

/// Rational common zeros recovered by lifting nonsingular zeros mod small
/// primes and reconstructing. Not exhaustive.
pub(crate) fn lift_rational_zeros(a: &IntBiv, b: &IntBiv) -> Vec<(BigRat, BigRat)> {
    let mut found: Vec<(BigRat, BigRat)> = Vec::new();
    let (ax, ay) = (a.derivative_x(), a.derivative_y());
    let (bx, by) = (b.derivative_x(), b.derivative_y());
    for l in small_primes().skip(2).take(LIFT_PRIMES) {
        let fp = Fp::new(l);
        let Some(zeros) = common_zeros(a, b, fp) else {
            continue;
        };
        for (x0, y0) in zeros.affine {
            if jacobian_mod(a, b, fp, x0, y0) == 0 {
                continue;
            }
            let already = found.iter().any(|(x, y)| {
                reduce_rat(x, fp) == Some(x0) && reduce_rat(y, fp) == Some(y0)
            });
            if already {
                continue;
            }
            let mut m = BigInt::from(l);
            let (mut x, mut y) = (BigInt::from(x0), BigInt::from(y0));
            while m.bits() < LIFT_BITS {
                let m2 = &m * &m;
                let fa = a.eval_mod(&x, &y, &m2);
                let fb = b.eval_mod(&x, &y, &m2);
                let j11 = ax.eval_mod(&x, &y, &m2);
                let j12 = ay.eval_mod(&x, &y, &m2);
                let j21 = bx.eval_mod(&x, &y, &m2);
                let j22 = by.eval_mod(&x, &y, &m2);
                let det = (&j11 * &j22 - &j12 * &j21).mod_floor(&m2);
                let inv = mod_inverse(&det, &m2).expect("unit jacobian");
                let dx = ((&j22 * &fa - &j12 * &fb) * &inv).mod_floor(&m2);
                let dy = ((&j11 * &fb - &j21 * &fa) * &inv).mod_floor(&m2);
                x = (&x - dx).mod_floor(&m2);
                y = (&y - dy).mod_floor(&m2);
                m = m2;
                if m.bits() < 64 {
                    continue;
                }
                if let (Some((xn, xd)), Some((yn, yd))) =
                    (rational_reconstruct(&x, &m), rational_reconstruct(&y, &m))
                {
                    let (xr, yr) = (BigRat::new(xn, xd), BigRat::new(yn, yd));
                    if a.eval(&xr, &yr).is_zero() && b.eval(&xr, &yr).is_zero() {
                        if !found.contains(&(xr.clone(), yr.clone())) {
                            found.push((xr, yr));
                        }
                        break;
                    }
                }
            }
        }
    }
    found.sort();
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;
    use crate::poly::parse_polynomial_in;
    use crate::poly::vars;

    fn biv(s: &str) -> IntBiv {
        IntBiv::from_poly(&parse_polynomial_in(s, &vars(&["x", "y"])).unwrap())
    }

    #[test]
    fn certifies_empty_systems() {
        // x^2 + y^2 + 1 has no rational point; second equation is a line
        let a = biv("x^2 + y^2 + 1");
        let b = biv("x - y");
        assert!(certify(&a, &b, &[]).is_some());
    }

    #[test]
    fn refuses_systems_with_rational_zeros() {
        let a = biv("x^2 + y^2 - 2");
        let b = biv("x - y");
        assert!(certify(&a, &b, &[]).is_none());
        let zeros = lift_rational_zeros(&a, &b);
        assert_eq!(zeros, vec![(int(-1), int(-1)), (int(1), int(1))]);
        assert!(certify(&a, &b, &zeros).is_some());
    }

    #[test]
    fn zeros_at_infinity_block_certificates() {
        // parallel lines meet only at infinity
        let a = biv("x - y");
        let b = biv("x - y + 1");
        assert!(certify(&a, &b, &[]).is_none());
    }

    #[test]
    fn lifts_non_integral_zeros() {
        let a = biv("3*x - 1");
        let b = biv("15*y^2 + 15*x*y - 2*y - 2*x");
        let zeros = lift_rational_zeros(&a, &b);
        for (x, y) in &zeros {
            assert!(a.eval(x, y).is_zero() && b.eval(x, y).is_zero());
        }
        let r = crate::numeric::rat;
        assert_eq!(zeros, vec![(r(1, 3), r(-1, 3)), (r(1, 3), r(2, 15))]);
    }
}
