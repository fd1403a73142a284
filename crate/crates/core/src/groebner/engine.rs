//! Fraction-free Buchberger engine on packed monomials.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::MonomialOrder;
use crate::numeric::BigRat;
use crate::poly::{Monomial, Polynomial, Vars};

pub const MAXV: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub e: [u16; MAXV],
    pub deg: u32,
}

impl Mono {
    pub fn from_monomial(m: &Monomial) -> Mono {
        assert!(m.0.len() <= MAXV, "at most {MAXV} variables supported");
        let mut e = [0u16; MAXV];
        for (i, &k) in m.0.iter().enumerate() {
            e[i] = u16::try_from(k).expect("exponent fits in u16");
        }
        Mono { e, deg: m.degree() }
    }

    pub fn to_monomial(self, n: usize) -> Monomial {
        Monomial(self.e[..n].iter().map(|&k| k as u32).collect())
    }

    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        let mut e = self.e;
        for i in 0..MAXV {
            e[i] += o.e[i];
        }
        Mono { e, deg: self.deg + o.deg }
    }

    #[inline]
    pub fn divides(self, o: Mono) -> bool {
        self.deg <= o.deg && (0..MAXV).all(|i| self.e[i] <= o.e[i])
    }

    #[inline]
    pub fn div(self, o: Mono) -> Mono {
        let mut e = self.e;
        for i in 0..MAXV {
            e[i] -= o.e[i];
        }
        Mono { e, deg: self.deg - o.deg }
    }

    #[inline]
    pub fn lcm(self, o: Mono) -> Mono {
        let mut e = self.e;
        let mut deg = 0;
        for i in 0..MAXV {
            e[i] = e[i].max(o.e[i]);
            deg += e[i] as u32;
        }
        Mono { e, deg }
    }

    #[inline]
    pub fn coprime(self, o: Mono) -> bool {
        (0..MAXV).all(|i| self.e[i] == 0 || o.e[i] == 0)
    }

    pub fn is_one(self) -> bool {
        self.deg == 0
    }

    pub fn support_within(self, mask: u32) -> bool {
        (0..MAXV).all(|i| self.e[i] == 0 || mask & (1 << i) != 0)
    }
}

fn grevlex_range(a: &Mono, b: &Mono, lo: usize, hi: usize) -> Ordering {
    let da: u32 = a.e[lo..hi].iter().map(|&k| k as u32).sum();
    let db: u32 = b.e[lo..hi].iter().map(|&k| k as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (lo..hi).rev() {
        if a.e[i] != b.e[i] {
            return b.e[i].cmp(&a.e[i]);
        }
    }
    Ordering::Equal
}

#[derive(Clone, Copy, Debug)]
pub struct Ord_ {
    pub order: MonomialOrder,
    pub n: usize,
}

impl Ord_ {
    #[inline]
    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        match self.order {
            MonomialOrder::Lex => a.e[..self.n].cmp(&b.e[..self.n]),
            MonomialOrder::GrevLex => {
                if a.deg != b.deg {
                    return a.deg.cmp(&b.deg);
                }
                grevlex_range(a, b, 0, self.n)
            }
            MonomialOrder::Block(k) => grevlex_range(a, b, 0, k)
                .then_with(|| grevlex_range(a, b, k, self.n)),
        }
    }
}

/// Terms sorted descending in the monomial order; integer coefficients.
pub type IPoly = Vec<(Mono, BigInt)>;

pub fn from_poly(f: &Polynomial, ord: &Ord_) -> IPoly {
    let p = f.primitive();
    let mut v: IPoly = p
        .terms()
        .iter()
        .map(|(m, c)| (Mono::from_monomial(m), c.numer().clone()))
        .collect();
    v.sort_by(|a, b| ord.cmp(&b.0, &a.0));
    normalize_sign(&mut v);
    v
}

/// Monic rational polynomial.
pub fn to_poly(f: &IPoly, vars: &Vars) -> Polynomial {
    let n = vars.len();
    let lc = BigRat::from_integer(f[0].1.clone());
    Polynomial::from_terms(
        vars.clone(),
        f.iter()
            .map(|(m, c)| (m.to_monomial(n), BigRat::from_integer(c.clone()) / &lc)),
    )
}

fn normalize_sign(f: &mut IPoly) {
    if f.first().is_some_and(|t| t.1.is_negative()) {
        for t in f.iter_mut() {
            t.1 = -std::mem::take(&mut t.1);
        }
    }
}

pub fn make_primitive(f: &mut IPoly) {
    let mut g = BigInt::zero();
    for (_, c) in f.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if !g.is_zero() && !g.is_one() {
        for t in f.iter_mut() {
            t.1 /= &g;
        }
    }
    normalize_sign(f);
}

/// `a*f - b*q*g` where `q` is a monomial; both inputs sorted.
fn lin_comb(f: &[(Mono, BigInt)], a: &BigInt, q: Mono, b: &BigInt, g: &[(Mono, BigInt)], ord: &Ord_) -> IPoly {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let a_one = a.is_one();
    while i < f.len() || j < g.len() {
        let c = if i == f.len() {
            Ordering::Less
        } else if j == g.len() {
            Ordering::Greater
        } else {
            ord.cmp(&f[i].0, &g[j].0.mul(q))
        };
        match c {
            Ordering::Greater => {
                let v = if a_one { f[i].1.clone() } else { &f[i].1 * a };
                out.push((f[i].0, v));
                i += 1;
            }
            Ordering::Less => {
                out.push((g[j].0.mul(q), -(&g[j].1 * b)));
                j += 1;
            }
            Ordering::Equal => {
                let v = if a_one { f[i].1.clone() } else { &f[i].1 * a } - &g[j].1 * b;
                if !v.is_zero() {
                    out.push((f[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn content_of(r: &[(Mono, BigInt)], p: &[(Mono, BigInt)]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in r.iter().chain(p.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Full reduction of `f` by the polynomials `basis[i]` with `active[i]`.
/// Returns a primitive remainder (possibly empty).
pub fn reduce(f: &IPoly, basis: &[IPoly], active: &[bool], ord: &Ord_) -> IPoly {
    let mut p: IPoly = f.clone();
    let mut r: IPoly = Vec::new();
    let mut steps = 0usize;
    // p is consumed from the front; keep an offset to avoid shifting
    let mut off = 0usize;
    while off < p.len() {
        let (m, c) = (p[off].0, p[off].1.clone());
        let div = basis
            .iter()
            .enumerate()
            .find(|(i, g)| active[*i] && g[0].0.divides(m));
        match div {
            Some((_, g)) => {
                let q = m.div(g[0].0);
                let lg = &g[0].1;
                let gg = c.gcd(lg);
                let a = lg / &gg;
                let b = &c / &gg;
                p = lin_comb(&p[off + 1..], &a, q, &b, &g[1..], ord);
                if !a.is_one() {
                    for t in r.iter_mut() {
                        t.1 *= &a;
                    }
                }
                off = 0;
                steps += 1;
                if steps.is_multiple_of(8) {
                    let g = content_of(&r, &p);
                    if !g.is_zero() && !g.is_one() {
                        for t in r.iter_mut().chain(p.iter_mut()) {
                            t.1 /= &g;
                        }
                    }
                }
            }
            None => {
                r.push((m, c));
                off += 1;
            }
        }
    }
    make_primitive(&mut r);
    r
}

pub fn spoly(f: &IPoly, g: &IPoly, ord: &Ord_) -> IPoly {
    let (mf, cf) = (&f[0].0, &f[0].1);
    let (mg, cg) = (&g[0].0, &g[0].1);
    let l = mf.lcm(*mg);
    let gg = cf.gcd(cg);
    let a = cg / &gg;
    let b = cf / &gg;
    // a * (l/mf) * f - b * (l/mg) * g ; leading terms cancel
    let qf = l.div(*mf);
    let qg = l.div(*mg);
    let ff: IPoly = f[1..].iter().map(|(m, c)| (m.mul(qf), c * &a)).collect();
    let mut out = lin_comb(&ff, &BigInt::one(), qg, &b, &g[1..], ord);
    make_primitive(&mut out);
    out
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
}

struct State<'a> {
    ord: &'a Ord_,
    basis: Vec<IPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State<'_> {
    // Gebauer-Moeller installation of a new element.
    fn update(&mut self, h: IPoly) {
        let k = self.basis.len();
        let lh = h[0].0;
        self.basis.push(h);
        self.active.push(true);

        let mut cands: Vec<(usize, Mono, bool)> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| {
                let lg = self.basis[i][0].0;
                (i, lh.lcm(lg), lh.coprime(lg))
            })
            .collect();

        // chain criterion among the new pairs
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            let (_, la, ca) = cands[a];
            if ca {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let lb = cands[b].1;
                if lb.divides(la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // product criterion; coprime pairs also knock out equal-lcm pairs
        let mut new_pairs = Vec::new();
        let mut idx = 0;
        cands.retain(|_| {
            let r = keep[idx];
            idx += 1;
            r
        });
        for &(i, l, cop) in &cands {
            if cop {
                continue;
            }
            if cands.iter().any(|&(i2, l2, c2)| c2 && l2 == l && i2 != i) {
                continue;
            }
            new_pairs.push(Pair { i, j: k, lcm: l });
        }

        // drop old pairs whose lcm is a multiple of LM(h) in a strict way
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if !lh.divides(p.lcm) {
                return true;
            }
            let li = lh.lcm(basis[p.i][0].0);
            let lj = lh.lcm(basis[p.j][0].0);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);

        for i in 0..k {
            if self.active[i] && lh.divides(self.basis[i][0].0) {
                self.active[i] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for (t, p) in self.pairs.iter().enumerate() {
            let b = &self.pairs[best];
            let key = (p.lcm.deg, p.j, p.i);
            let bkey = (b.lcm.deg, b.j, b.i);
            if key < bkey {
                best = t;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Groebner basis, each element primitive with positive leading
/// coefficient, sorted ascending by leading monomial.
pub fn groebner(input: &[IPoly], ord: &Ord_) -> Vec<IPoly> {
    let mut st = State {
        ord,
        basis: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for f in input {
        if f.is_empty() {
            continue;
        }
        let h = reduce(f, &st.basis, &st.active, ord);
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return vec![h];
        }
        st.update(h);
    }
    while let Some(p) = st.select() {
        let s = spoly(&st.basis[p.i], &st.basis[p.j], st.ord);
        if s.is_empty() {
            continue;
        }
        let h = reduce(&s, &st.basis, &st.active, ord);
        if h.is_empty() {
            continue;
        }
        if h[0].0.is_one() {
            return vec![h];
        }
        st.update(h);
    }
    interreduce(st.basis, st.active, ord)
}

fn interreduce(basis: Vec<IPoly>, active: Vec<bool>, ord: &Ord_) -> Vec<IPoly> {
    let mut g: Vec<IPoly> = basis
        .into_iter()
        .zip(active)
        .filter(|(_, a)| *a)
        .map(|(p, _)| p)
        .collect();
    // minimalize
    let mut keep = vec![true; g.len()];
    for i in 0..g.len() {
        for j in 0..g.len() {
            if i != j && keep[j] && g[j][0].0.divides(g[i][0].0) && (g[j][0].0 != g[i][0].0 || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut k = 0;
    g.retain(|_| {
        let r = keep[k];
        k += 1;
        r
    });
    g.sort_by(|a, b| ord.cmp(&a[0].0, &b[0].0));
    // tail-reduce each element by the others
    for i in 0..g.len() {
        let act: Vec<bool> = (0..g.len()).map(|j| j != i).collect();
        g[i] = reduce_tail(&g[i], &g, &act, ord);
    }
    g
}

// Reduces every non-leading term of `f`.
fn reduce_tail(f: &IPoly, basis: &[IPoly], active: &[bool], ord: &Ord_) -> IPoly {
    let lead = f[0].clone();
    let mut p: IPoly = f[1..].to_vec();
    let mut r: IPoly = Vec::new();
    let mut lead_c = lead.1.clone();
    let mut off = 0usize;
    while off < p.len() {
        let (m, c) = (p[off].0, p[off].1.clone());
        let div = basis
            .iter()
            .enumerate()
            .find(|(i, g)| active[*i] && g[0].0.divides(m));
        match div {
            Some((_, g)) => {
                let q = m.div(g[0].0);
                let lg = &g[0].1;
                let gg = c.gcd(lg);
                let (mut a, mut b) = (lg / &gg, &c / &gg);
                if a.is_negative() {
                    a = -a;
                    b = -b;
                }
                p = lin_comb(&p[off + 1..], &a, q, &b, &g[1..], ord);
                off = 0;
                if !a.is_one() {
                    for t in r.iter_mut() {
                        t.1 *= &a;
                    }
                    lead_c *= &a;
                }
            }
            None => {
                r.push((m, c));
                off += 1;
            }
        }
    }
    let mut out = vec![(lead.0, lead_c)];
    out.extend(r);
    make_primitive(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_and_block_orders() {
        let m = |v: &[u16]| {
            let mut e = [0u16; MAXV];
            e[..v.len()].copy_from_slice(v);
            Mono { e, deg: v.iter().map(|&k| k as u32).sum() }
        };
        let g = Ord_ { order: MonomialOrder::GrevLex, n: 3 };
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(g.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(g.cmp(&m(&[1, 1, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        let b = Ord_ { order: MonomialOrder::Block(1), n: 3 };
        assert_eq!(b.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        let l = Ord_ { order: MonomialOrder::Lex, n: 3 };
        assert_eq!(l.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 9])), Ordering::Greater);
    }
}
