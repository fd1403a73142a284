//! Dense univariate arithmetic over F_l and over Z/mZ, plus Hensel lifting.
//! Coefficient vectors are stored lowest degree first and kept trimmed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// 2, 3, 5, 7, ... (unbounded, trial division).
pub fn small_primes() -> impl Iterator<Item = u64> {
    (2u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

pub type Fpoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!((2..1 << 31).contains(&p));
        Fp { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn reduce(self, c: &BigInt) -> u64 {
        let r = c.mod_floor(&BigInt::from(self.p));
        r.to_u64().unwrap()
    }

    pub fn reduce_poly(self, coeffs: &[BigInt]) -> Fpoly {
        let mut v: Fpoly = coeffs.iter().map(|c| self.reduce(c)).collect();
        trim(&mut v);
        v
    }

    pub fn eval(self, f: &[u64], x: u64) -> u64 {
        f.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    pub fn poly_mul(self, a: &[u64], b: &[u64]) -> Fpoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn poly_sub(self, a: &[u64], b: &[u64]) -> Fpoly {
        let n = a.len().max(b.len());
        let mut out: Fpoly = (0..n)
            .map(|i| {
                self.sub(
                    a.get(i).copied().unwrap_or(0),
                    b.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        trim(&mut out);
        out
    }

    /// Quotient and remainder; `b` nonzero.
    pub fn poly_divrem(self, a: &[u64], b: &[u64]) -> (Fpoly, Fpoly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.to_vec();
        trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            q[k] = c;
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = self.sub(r[k + j], self.mul(c, bj));
                }
            }
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn poly_rem(self, a: &[u64], b: &[u64]) -> Fpoly {
        self.poly_divrem(a, b).1
    }

    pub fn monic(self, a: &[u64]) -> Fpoly {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => {
                let inv = self.inv(lc);
                a.iter().map(|&c| self.mul(c, inv)).collect()
            }
        }
    }

    /// Monic gcd.
    pub fn poly_gcd(self, a: &[u64], b: &[u64]) -> Fpoly {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s a + t b = g` monic.
    pub fn poly_xgcd(self, a: &[u64], b: &[u64]) -> (Fpoly, Fpoly, Fpoly) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        trim(&mut r0);
        trim(&mut r1);
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().expect("not both zero"));
        let sc = |v: &[u64]| -> Fpoly {
            let mut w: Fpoly = v.iter().map(|&c| self.mul(c, inv)).collect();
            trim(&mut w);
            w
        };
        (sc(&r0), sc(&s0), sc(&t0))
    }

    pub fn derivative(self, a: &[u64]) -> Fpoly {
        let mut out: Fpoly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        trim(&mut out);
        out
    }

    /// `base^e mod m`.
    pub fn poly_powmod(self, base: &[u64], mut e: u128, m: &[u64]) -> Fpoly {
        let mut result = self.poly_rem(&[1], m);
        let mut b = self.poly_rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.poly_rem(&self.poly_mul(&result, &b), m);
            }
            e >>= 1;
            if e > 0 {
                b = self.poly_rem(&self.poly_mul(&b, &b), m);
            }
        }
        result
    }

    pub fn is_squarefree(self, a: &[u64]) -> bool {
        let d = self.derivative(a);
        if d.is_empty() {
            return a.len() <= 1;
        }
        self.poly_gcd(a, &d).len() == 1
    }

    /// All roots in F_l of a nonzero polynomial, ascending.
    pub fn roots(self, a: &[u64]) -> Vec<u64> {
        if a.len() <= 1 {
            return Vec::new();
        }
        if self.p <= 64 || a.len() as u64 > self.p {
            return (0..self.p).filter(|&x| self.eval(a, x) == 0).collect();
        }
        // Restrict to the split part gcd(a, x^l - x), then split it.
        let xp = self.poly_powmod(&[0, 1], self.p as u128, a);
        let g = self.poly_gcd(a, &self.poly_sub(&xp, &[0, 1]));
        let mut out = Vec::new();
        self.split_linear(&g, &mut out);
        out.sort_unstable();
        out
    }

    // Equal-degree splitting of a product of distinct linear factors.
    fn split_linear(self, g: &[u64], out: &mut Vec<u64>) {
        match g.len() {
            0 | 1 => {}
            2 => out.push(self.neg(self.mul(g[0], self.inv(g[1])))),
            _ => {
                for c in 0..self.p {
                    let h = self.poly_powmod(&[c, 1], ((self.p - 1) / 2) as u128, g);
                    let d = self.poly_gcd(g, &self.poly_sub(&h, &[1]));
                    if d.len() > 1 && d.len() < g.len() {
                        let (q, _) = self.poly_divrem(g, &d);
                        self.split_linear(&d, out);
                        self.split_linear(&self.monic(&q), out);
                        return;
                    }
                }
                unreachable!("equal-degree splitting failed");
            }
        }
    }

    /// Monic irreducible factors of degree 1 and 2 of a squarefree `a`.
    pub fn small_factors(self, a: &[u64]) -> (Vec<Fpoly>, Vec<Fpoly>) {
        let a = self.monic(a);
        let linear: Vec<Fpoly> = self
            .roots(&a)
            .into_iter()
            .map(|r| vec![self.neg(r), 1])
            .collect();
        let mut rest = a.clone();
        for l in &linear {
            rest = self.poly_divrem(&rest, l).0;
        }
        let mut quad = Vec::new();
        if rest.len() < 3 {
            return (linear, quad);
        }
        if self.p == 2 {
            let q = vec![1, 1, 1];
            if self.poly_rem(&rest, &q).is_empty() {
                quad.push(q);
            }
            return (linear, quad);
        }
        let p2 = (self.p as u128) * (self.p as u128);
        let xq = self.poly_powmod(&[0, 1], p2, &rest);
        let g = self.poly_gcd(&rest, &self.poly_sub(&xq, &[0, 1]));
        self.split_quadratic(&g, &mut quad);
        quad.sort();
        (linear, quad)
    }

    fn split_quadratic(self, g: &[u64], out: &mut Vec<Fpoly>) {
        match g.len() {
            0..=2 => {}
            3 => out.push(g.to_vec()),
            _ => {
                let e = ((self.p as u128) * (self.p as u128) - 1) / 2;
                for c in 0..self.p {
                    let h = self.poly_powmod(&[c, 1], e, g);
                    let d = self.poly_gcd(g, &self.poly_sub(&h, &[1]));
                    if d.len() > 1 && d.len() < g.len() {
                        let (q, _) = self.poly_divrem(g, &d);
                        self.split_quadratic(&d, out);
                        self.split_quadratic(&self.monic(&q), out);
                        return;
                    }
                }
                // linear probes can all fail for tiny l; enumerate instead
                for c1 in 0..self.p {
                    for c0 in 0..self.p {
                        let q = vec![c0, c1, 1];
                        if self.poly_rem(g, &q).is_empty() {
                            out.push(q);
                        }
                    }
                }
            }
        }
    }
}

pub fn trim<T: PartialEq + Default>(v: &mut Vec<T>) {
    let zero = T::default();
    while v.last() == Some(&zero) {
        v.pop();
    }
}

fn trim_big(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Dense polynomial arithmetic over Z/mZ with nonnegative residues.
struct ZMod<'a> {
    m: &'a BigInt,
}

impl ZMod<'_> {
    fn red(&self, v: Vec<BigInt>) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = v.into_iter().map(|c| c.mod_floor(self.m)).collect();
        trim_big(&mut v);
        v
    }

    fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.red(out)
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let zero = BigInt::zero();
        self.red(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = a.len().max(b.len());
        let zero = BigInt::zero();
        self.red(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    // division by a monic polynomial
    fn divrem_monic(&self, a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut r = self.red(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let db = b.len() - 1;
        let mut q = vec![BigInt::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = r[k + db].mod_floor(self.m);
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    r[k + j] = (&r[k + j] - &c * bj).mod_floor(self.m);
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.red(q), self.red(r))
    }
}

fn lift_fp(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts a monic factor `h` of `f mod l` (coprime to its cofactor) to a
/// monic factor of `f mod M` for some power `M = l^(2^k) > bound`.
/// Returns the lifted factor and `M`.
pub fn hensel_lift_factor(f: &[BigInt], h: &[u64], fp: Fp, bound: &BigInt) -> (Vec<BigInt>, BigInt) {
    let l = fp.p;
    let f_mod = fp.reduce_poly(f);
    let (g0, rem) = fp.poly_divrem(&f_mod, h);
    debug_assert!(rem.is_empty(), "h divides f mod l");
    let (one, s0, t0) = fp.poly_xgcd(&g0, h);
    debug_assert_eq!(one, vec![1]);

    let mut m = BigInt::from(l);
    let (mut g, mut h, mut s, mut t) = (lift_fp(&g0), lift_fp(h), lift_fp(&s0), lift_fp(&t0));
    while &m <= bound {
        let m2 = &m * &m;
        let z = ZMod { m: &m2 };
        let e = z.sub(f, &z.mul(&g, &h));
        let (q, r) = z.divrem_monic(&z.mul(&s, &e), &h);
        let g_new = z.add(&z.add(&g, &z.mul(&t, &e)), &z.mul(&q, &g));
        let h_new = z.add(&h, &r);
        let b = z.sub(&z.add(&z.mul(&s, &g_new), &z.mul(&t, &h_new)), &[BigInt::one()]);
        let (c, d) = z.divrem_monic(&z.mul(&s, &b), &h_new);
        s = z.sub(&s, &d);
        t = z.sub(&z.sub(&t, &z.mul(&t, &b)), &z.mul(&c, &g_new));
        g = g_new;
        h = h_new;
        m = m2;
    }
    h.resize(h.len().max(1), BigInt::zero());
    (h, m)
}

/// Lifts a simple root `r` of `f mod l` to a root mod `M = l^(2^k) > bound`.
pub fn newton_lift_root(f: &[BigInt], r: u64, l: u64, bound: &BigInt) -> (BigInt, BigInt) {
    let df: Vec<BigInt> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let eval = |p: &[BigInt], x: &BigInt, m: &BigInt| -> BigInt {
        p.iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
    };
    let mut m = BigInt::from(l);
    let mut x = BigInt::from(r);
    while &m <= bound {
        let m2 = &m * &m;
        let fx = eval(f, &x, &m2);
        let dfx = eval(&df, &x, &m2);
        let inv = mod_inverse(&dfx, &m2).expect("simple root");
        x = (&x - fx * inv).mod_floor(&m2);
        m = m2;
    }
    (x, m)
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Representative of `a mod m` in `(-m/2, m/2]`.
pub fn symmetric(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if (&r * 2i32) > *m {
        r - m
    } else {
        r
    }
}

/// Rational reconstruction: `n/d` with `|n|, d <= sqrt(m/2)` and `n ≡ a d (mod m)`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / 2i32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let (n, d) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    if n.gcd(&d).is_one() {
        Some((n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_prefix() {
        let v: Vec<u64> = small_primes().take(8).collect();
        assert_eq!(v, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn roots_and_small_factors_mod_p() {
        let fp = Fp::new(101);
        // (x-3)(x-5)(x^2+1)... x^2+1 splits mod 101 since 101 ≡ 1 mod 4
        let f = fp.poly_mul(&fp.poly_mul(&[98, 1], &[96, 1]), &[1, 0, 1]);
        assert_eq!(fp.roots(&f), vec![3, 5, 10, 91]);
        // -1 and 2 are non-residues mod 107
        let fp = Fp::new(107);
        let f = fp.poly_mul(&[1, 0, 1], &fp.poly_mul(&[105, 0, 1], &[5, 1]));
        let (lin, quad) = fp.small_factors(&f);
        assert_eq!(lin, vec![vec![5, 1]]);
        assert_eq!(quad, vec![vec![1, 0, 1], vec![105, 0, 1]]);
    }

    #[test]
    fn hensel_lifts_a_quadratic_factor() {
        // f = (x^2 - 2)(x^3 + x + 7), lift x^2 - 2 from mod 5
        let f: Vec<BigInt> = [-14, -2, 7, -1, 0, 1].iter().map(|&c| BigInt::from(c)).collect();
        let fp = Fp::new(5);
        let (h, m) = hensel_lift_factor(&f, &[3, 0, 1], fp, &BigInt::from(10_000));
        assert!(m > BigInt::from(10_000));
        let h: Vec<BigInt> = h.iter().map(|c| symmetric(c, &m)).collect();
        assert_eq!(h, vec![BigInt::from(-2), BigInt::zero(), BigInt::one()]);
    }

    #[test]
    fn newton_and_reconstruction() {
        // 3x - 2 has root 2/3
        let f = vec![BigInt::from(-2), BigInt::from(3)];
        let fp = Fp::new(7);
        let r = (0..7).find(|&x| fp.eval(&fp.reduce_poly(&f), x) == 0).unwrap();
        let (x, m) = newton_lift_root(&f, r, 7, &BigInt::from(1000));
        assert_eq!(
            rational_reconstruct(&x, &m),
            Some((BigInt::from(2), BigInt::from(3)))
        );
    }
}
