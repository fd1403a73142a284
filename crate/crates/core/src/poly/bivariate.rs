//! Integer bivariate polynomials and their reductions mod small primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::modular::{trim, Fp, Fpoly};
use super::Polynomial;
use crate::numeric::BigRat;

/// Primitive integer polynomial in two variables, terms `c x^i y^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntBiv {
    terms: Vec<(u32, u32, BigInt)>,
    deg: u32,
    deg_x: u32,
    deg_y: u32,
}

impl IntBiv {
    /// Integer representative of a nonzero bivariate polynomial (scaled by
    /// its content).
    pub fn from_poly(p: &Polynomial) -> Self {
        assert_eq!(p.nvars(), 2);
        let prim = p.primitive();
        let terms: Vec<(u32, u32, BigInt)> = prim
            .integer_terms()
            .into_iter()
            .map(|(m, c)| (m.0[0], m.0[1], c))
            .collect();
        let deg = terms.iter().map(|t| t.0 + t.1).max().unwrap_or(0);
        let deg_x = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let deg_y = terms.iter().map(|t| t.1).max().unwrap_or(0);
        IntBiv {
            terms,
            deg,
            deg_x,
            deg_y,
        }
    }

    pub fn deg_x(&self) -> u32 {
        self.deg_x
    }

    pub fn deg_y(&self) -> u32 {
        self.deg_y
    }

    pub fn terms(&self) -> &[(u32, u32, BigInt)] {
        &self.terms
    }

    pub fn derivative_x(&self) -> IntBiv {
        self.derived(|i, j, c| (i > 0).then(|| (i - 1, j, c * BigInt::from(i))))
    }

    pub fn derivative_y(&self) -> IntBiv {
        self.derived(|i, j, c| (j > 0).then(|| (i, j - 1, c * BigInt::from(j))))
    }

    fn derived(&self, d: impl Fn(u32, u32, &BigInt) -> Option<(u32, u32, BigInt)>) -> IntBiv {
        let terms: Vec<_> = self.terms.iter().filter_map(|(i, j, c)| d(*i, *j, c)).collect();
        let deg = terms.iter().map(|t| t.0 + t.1).max().unwrap_or(0);
        let deg_x = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let deg_y = terms.iter().map(|t| t.1).max().unwrap_or(0);
        IntBiv {
            terms,
            deg,
            deg_x,
            deg_y,
        }
    }

    pub fn eval_mod(&self, x: &BigInt, y: &BigInt, m: &BigInt) -> BigInt {
        let xp = powers_mod(x, self.deg_x, m);
        let yp = powers_mod(y, self.deg_y, m);
        let mut acc = BigInt::zero();
        for (i, j, c) in &self.terms {
            acc += c * &xp[*i as usize] * &yp[*j as usize];
        }
        acc.mod_floor(m)
    }

    pub fn eval(&self, x: &BigRat, y: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for (i, j, c) in &self.terms {
            acc += BigRat::from_integer(c.clone())
                * num_traits::pow(x.clone(), *i as usize)
                * num_traits::pow(y.clone(), *j as usize);
        }
        acc
    }

    pub fn reduce(&self, fp: Fp) -> ModBiv {
        let mut rows = vec![vec![0u64; self.deg_y as usize + 1]; self.deg_x as usize + 1];
        let mut top = Vec::new();
        for (i, j, c) in &self.terms {
            let r = fp.reduce(c);
            rows[*i as usize][*j as usize] = r;
            if i + j == self.deg && r != 0 {
                top.push((*i, *j, r));
            }
        }
        let zero = rows.iter().all(|r| r.iter().all(|&c| c == 0));
        ModBiv {
            fp,
            rows,
            top,
            zero,
        }
    }
}

fn powers_mod(x: &BigInt, n: u32, m: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(BigInt::from(1).mod_floor(m));
    for k in 1..=n as usize {
        let next = (&out[k - 1] * x).mod_floor(m);
        out.push(next);
    }
    out
}

/// Reduction of an `IntBiv` modulo a prime.
#[derive(Clone, Debug)]
pub struct ModBiv {
    fp: Fp,
    /// `rows[i][j]` is the coefficient of `x^i y^j`.
    rows: Vec<Vec<u64>>,
    /// Nonzero reductions of the integer top-degree form.
    top: Vec<(u32, u32, u64)>,
    zero: bool,
}

impl ModBiv {
    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// `f(x0, y)` as a trimmed polynomial in `y`.
    pub fn at_x(&self, x0: u64) -> Fpoly {
        let fp = self.fp;
        let mut out = vec![0u64; self.rows[0].len()];
        let mut pw = 1u64;
        for row in &self.rows {
            for (o, &c) in out.iter_mut().zip(row) {
                if c != 0 {
                    *o = fp.add(*o, fp.mul(c, pw));
                }
            }
            pw = fp.mul(pw, x0);
        }
        trim(&mut out);
        out
    }

    /// Coefficient of `x^dx` as a trimmed polynomial in `y`.
    pub fn row_top_x(&self) -> Fpoly {
        let mut out = self.rows.last().expect("at least one row").clone();
        trim(&mut out);
        out
    }

    /// Top-degree form at `(x, y)`.
    pub fn top_at(&self, x: u64, y: u64) -> u64 {
        let fp = self.fp;
        self.top.iter().fold(0, |acc, &(i, j, c)| {
            fp.add(acc, fp.mul(c, fp.mul(fp.pow(x, i as u64), fp.pow(y, j as u64))))
        })
    }

    pub fn eval(&self, x: u64, y: u64) -> u64 {
        self.fp.eval(&self.at_x(x), y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;
    use crate::poly::parse_polynomial;

    #[test]
    fn reduction_and_evaluation() {
        let f = parse_polynomial("2*x^3*y - 4*y^2 + 6").unwrap();
        let b = IntBiv::from_poly(&f);
        assert_eq!((b.deg_x(), b.deg_y()), (3, 2));
        let m = b.reduce(Fp::new(7));
        // x^3 y - 2 y^2 + 3 at (2, 3): 24 - 18 + 3 = 9 = 2 mod 7
        assert_eq!(m.eval(2, 3), 2);
        assert_eq!(m.top_at(2, 3), 24 % 7);
        assert_eq!(b.eval(&int(2), &int(3)), int(9));
        assert_eq!(b.derivative_x().eval(&int(1), &int(1)), int(3));
        assert_eq!(
            b.eval_mod(&BigInt::from(2), &BigInt::from(3), &BigInt::from(7)),
            BigInt::from(2)
        );
    }
}
