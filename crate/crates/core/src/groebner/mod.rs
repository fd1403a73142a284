//! Groebner bases: Buchberger's algorithm, normal forms, elimination,
//! saturation, dimension and zero-dimensional solving.

mod engine;
mod fglm;
mod solve;

use std::cmp::Ordering;

use thiserror::Error;

use crate::numeric::BigRat;
use crate::poly::{Monomial, Polynomial, Vars};

use engine::{from_poly, to_poly, Mono, Ord_};

pub use fglm::lex_basis;
pub use solve::{solve_zero_dim, ZeroDimEntry, ZeroDimSolution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("ideal is positive-dimensional (dimension {0})")]
    PositiveDimensional(i32),
    #[error("generator variable lists differ")]
    VariableMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

/// Monomial orders on the ambient variable list (first variable largest).
/// `Block(k)`: grevlex on the first `k` variables, ties broken by grevlex on
/// the rest, so it eliminates the first `k` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let ord = Ord_ {
            order: *self,
            n: a.0.len(),
        };
        ord.cmp(&Mono::from_monomial(a), &Mono::from_monomial(b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    vars: Vars,
    generators: Vec<Polynomial>,
}

impl IdealBasis {
    /// Zero generators are dropped.
    pub fn new(vars: Vars, generators: Vec<Polynomial>) -> Result<Self, GroebnerError> {
        if generators.iter().any(|g| g.vars() != &vars) {
            return Err(GroebnerError::VariableMismatch);
        }
        Ok(IdealBasis {
            vars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn from_generators(generators: Vec<Polynomial>) -> Self {
        let vars = generators.first().expect("at least one generator").vars().clone();
        Self::new(vars, generators).expect("shared variable list")
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn with_generator(&self, g: Polynomial) -> IdealBasis {
        let mut gens = self.generators.clone();
        gens.push(g);
        IdealBasis::new(self.vars.clone(), gens).expect("shared variable list")
    }
}

/// Reduced Groebner basis: monic elements sorted ascending by leading
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    vars: Vars,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|e| leading_term(e, self.order).0)
            .collect()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self).is_zero()
    }

    /// Buchberger's criterion checked directly on every pair.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let n = self.elements.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                normal_form(&s_polynomial(&self.elements[i], &self.elements[j], self.order), self)
                    .is_zero()
            })
        })
    }
}

pub fn leading_term(f: &Polynomial, order: MonomialOrder) -> (Monomial, BigRat) {
    let (m, c) = f
        .terms()
        .iter()
        .max_by(|a, b| order.compare(a.0, b.0))
        .expect("nonzero polynomial");
    (m.clone(), c.clone())
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let (mf, cf) = leading_term(f, order);
    let (mg, cg) = leading_term(g, order);
    let l = mf.lcm(&mg);
    let a = f.mul_monomial(&l.div(&mf), &cf.recip());
    let b = g.mul_monomial(&l.div(&mg), &cg.recip());
    &a - &b
}

/// Remainder of multivariate division of `f` by the basis, with rational
/// coefficients.
pub fn normal_form(f: &Polynomial, g: &GroebnerBasis) -> Polynomial {
    let order = g.order;
    let leads: Vec<(Monomial, BigRat)> = g
        .elements
        .iter()
        .map(|e| leading_term(e, order))
        .collect();
    let mut p = f.clone();
    let mut r = Polynomial::zero(f.vars().clone());
    while !p.is_zero() {
        let (m, c) = leading_term(&p, order);
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(i) => {
                let q = m.div(&leads[i].0);
                let k = &c / &leads[i].1;
                p = &p - &g.elements[i].mul_monomial(&q, &k);
            }
            None => {
                r.add_term(m.clone(), c.clone());
                p.add_term(m, -c);
            }
        }
    }
    r
}

/// Reduced Groebner basis. Zero-dimensional lex bases go through grevlex and
/// FGLM, which avoids the coefficient swell of a direct lex run.
pub fn buchberger(ideal: &IdealBasis, order: MonomialOrder) -> GroebnerBasis {
    if order != MonomialOrder::Lex || ideal.vars.len() < 2 {
        return buchberger_direct(ideal, order);
    }
    let g = buchberger_direct(ideal, MonomialOrder::GrevLex);
    if g.is_unit() {
        return GroebnerBasis { order, ..g };
    }
    match dimension_of_leading(&g.leading_monomials(), ideal.vars.len()) {
        0 => fglm::convert_to_lex(ideal, &g),
        _ => buchberger_direct(ideal, order),
    }
}

pub(crate) fn buchberger_direct(ideal: &IdealBasis, order: MonomialOrder) -> GroebnerBasis {
    let ord = Ord_ {
        order,
        n: ideal.vars.len(),
    };
    let input: Vec<_> = ideal.generators.iter().map(|f| from_poly(f, &ord)).collect();
    let gb = engine::groebner(&input, &ord);
    GroebnerBasis {
        vars: ideal.vars.clone(),
        order,
        elements: gb.iter().map(|p| to_poly(p, &ideal.vars)).collect(),
    }
}

/// Generators of the ideal intersected with the subring of the remaining
/// variables, expressed over the remaining variables (original order).
pub fn elimination_ideal(
    ideal: &IdealBasis,
    drop_vars: &[&str],
) -> Result<IdealBasis, GroebnerError> {
    for d in drop_vars {
        if !ideal.vars.iter().any(|v| v == d) {
            return Err(GroebnerError::UnknownVariable(d.to_string()));
        }
    }
    let dropped: Vec<String> = ideal
        .vars
        .iter()
        .filter(|v| drop_vars.contains(&v.as_str()))
        .cloned()
        .collect();
    let kept: Vec<String> = ideal
        .vars
        .iter()
        .filter(|v| !drop_vars.contains(&v.as_str()))
        .cloned()
        .collect();
    let k = dropped.len();
    let reordered: Vars = dropped.into_iter().chain(kept.iter().cloned()).collect();
    let kept: Vars = kept.into();
    let gens: Vec<Polynomial> = ideal
        .generators
        .iter()
        .map(|g| g.with_vars(&reordered).expect("same variable set"))
        .collect();
    let order = if k == 0 {
        MonomialOrder::GrevLex
    } else {
        MonomialOrder::Block(k)
    };
    let gb = buchberger(&IdealBasis::new(reordered, gens)?, order);
    let out = gb
        .elements
        .iter()
        .filter(|e| e.terms().keys().all(|m| m.0[..k].iter().all(|&x| x == 0)))
        .map(|e| e.with_vars(&kept).expect("free of dropped variables"))
        .collect();
    IdealBasis::new(kept, out)
}

fn fresh_name(vars: &Vars, base: &str) -> String {
    let mut name = base.to_string();
    while vars.contains(&name) {
        name.push('_');
    }
    name
}

/// `(I : g^inf)` by adjoining `1 - u g` and eliminating `u`.
pub fn saturate(ideal: &IdealBasis, g: &Polynomial) -> IdealBasis {
    let u = fresh_name(&ideal.vars, "u");
    let ext: Vars = std::iter::once(u.clone())
        .chain(ideal.vars.iter().cloned())
        .collect();
    let lift = |p: &Polynomial| p.with_vars(&ext).expect("superset of variables");
    let mut gens: Vec<Polynomial> = ideal.generators.iter().map(lift).collect();
    let ug = &Polynomial::var_at(ext.clone(), 0) * &lift(g);
    gens.push(&Polynomial::one(ext.clone()) - &ug);
    let extended = IdealBasis::new(ext, gens).expect("shared variables");
    elimination_ideal(&extended, &[u.as_str()]).expect("fresh variable present")
}

/// `I ∩ J` by eliminating `t` from `t I + (1 - t) J`.
pub fn intersect(i: &IdealBasis, j: &IdealBasis) -> Result<IdealBasis, GroebnerError> {
    if i.vars != j.vars {
        return Err(GroebnerError::VariableMismatch);
    }
    let t = fresh_name(&i.vars, "t");
    let ext: Vars = std::iter::once(t.clone()).chain(i.vars.iter().cloned()).collect();
    let tv = Polynomial::var_at(ext.clone(), 0);
    let one_minus = &Polynomial::one(ext.clone()) - &tv;
    let lift = |p: &Polynomial| p.with_vars(&ext).expect("superset of variables");
    let gens = i
        .generators
        .iter()
        .map(|g| &tv * &lift(g))
        .chain(j.generators.iter().map(|g| &one_minus * &lift(g)))
        .collect();
    elimination_ideal(&IdealBasis::new(ext, gens)?, &[t.as_str()])
}

/// Affine dimension of the variety; -1 when empty.
pub fn dimension(ideal: &IdealBasis) -> i32 {
    let gb = buchberger(ideal, MonomialOrder::GrevLex);
    dimension_of_leading(&gb.leading_monomials(), ideal.vars.len())
}

/// Largest independent variable subset for a set of leading monomials.
pub fn dimension_of_leading(leads: &[Monomial], n: usize) -> i32 {
    if leads.iter().any(Monomial::is_one) {
        return -1;
    }
    let monos: Vec<Mono> = leads.iter().map(Mono::from_monomial).collect();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as i32;
        if size > best && monos.iter().all(|m| !m.support_within(mask)) {
            best = size;
        }
    }
    best
}

/// Exact quotient `f / d` if `d` divides `f`.
pub fn divide_exact(f: &Polynomial, d: &Polynomial) -> Option<Polynomial> {
    let (dm, dc) = d.lex_leading().map(|(m, c)| (m.clone(), c.clone()))?;
    let mut rem = f.clone();
    let mut q = Polynomial::zero(f.vars().clone());
    while let Some((m, c)) = rem.lex_leading().map(|(m, c)| (m.clone(), c.clone())) {
        if !dm.divides(&m) {
            return None;
        }
        let qm = m.div(&dm);
        let qc = &c / &dc;
        rem = &rem - &d.mul_monomial(&qm, &qc);
        q.add_term(qm, qc);
    }
    Some(q)
}

/// Multivariate gcd via the lcm `<f> ∩ <g>`.
pub fn poly_gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    let t = fresh_name(f.vars(), "t");
    let ext: Vars = std::iter::once(t.clone()).chain(f.vars().iter().cloned()).collect();
    let tv = Polynomial::var_at(ext.clone(), 0);
    let one = Polynomial::one(ext.clone());
    let fe = f.with_vars(&ext).unwrap();
    let ge = g.with_vars(&ext).unwrap();
    let ideal = IdealBasis::new(ext, vec![&tv * &fe, &(&one - &tv) * &ge]).unwrap();
    let elim = elimination_ideal(&ideal, &[t.as_str()]).unwrap();
    let lcm = elim
        .generators
        .iter()
        .min_by_key(|p| (p.degree(), p.num_terms()))
        .expect("lcm exists")
        .clone();
    divide_exact(&(f * g), &lcm).expect("lcm divides the product").primitive()
}

/// Squarefree part of an arbitrary multivariate polynomial:
/// `f / gcd(f, df/dv_1, ..., df/dv_n)`.
pub fn squarefree_part_general(f: &Polynomial) -> Polynomial {
    let mut g = f.primitive();
    for i in f.support_vars() {
        if g.is_constant() {
            break;
        }
        g = poly_gcd(&g, &f.derivative_at(i));
    }
    if g.is_constant() {
        return f.primitive();
    }
    divide_exact(f, &g).expect("gcd divides f").primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial_in, vars};

    fn xy() -> Vars {
        vars(&["x", "y"])
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial_in(s, &xy()).unwrap()
    }

    fn ideal(gens: &[&str]) -> IdealBasis {
        IdealBasis::new(xy(), gens.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let gb = buchberger(&ideal(&["x"]), MonomialOrder::Lex);
        assert!(normal_form(&p("x^2"), &gb).is_zero());
        let gb = buchberger(&ideal(&["x-y"]), MonomialOrder::Lex);
        assert_eq!(normal_form(&p("x+y"), &gb), p("2*y"));
        let gb = buchberger(&ideal(&["x", "y"]), MonomialOrder::Lex);
        assert_eq!(normal_form(&p("1"), &gb), p("1"));
    }

    #[test]
    fn buchberger_examples() {
        let gb = buchberger(&ideal(&["x-y", "x+y"]), MonomialOrder::Lex);
        assert_eq!(gb.elements(), &[p("y"), p("x")]);
        let gb = buchberger(&ideal(&["x^2+y^2-1", "x-y"]), MonomialOrder::Lex);
        assert_eq!(gb.elements(), &[p("y^2-1/2"), p("x-y")]);
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Block(1)] {
            let gb = buchberger(&ideal(&["x"]), order);
            assert_eq!(gb.elements(), &[p("x")]);
        }
    }

    #[test]
    fn cyclic_three_is_groebner() {
        let v = vars(&["a", "b", "c"]);
        let q = |s: &str| parse_polynomial_in(s, &v).unwrap();
        let i = IdealBasis::new(
            v.clone(),
            vec![q("a+b+c"), q("a*b+b*c+c*a"), q("a*b*c-1")],
        )
        .unwrap();
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex, MonomialOrder::Block(2)] {
            let gb = buchberger(&i, order);
            assert!(gb.satisfies_buchberger_criterion());
            for g in i.generators() {
                assert!(gb.contains(g));
            }
        }
        let gb = buchberger(&i, MonomialOrder::Lex);
        assert_eq!(gb.elements()[0], q("c^3-1"));
    }

    #[test]
    fn elimination_examples() {
        let y_only = vars(&["y"]);
        let e = elimination_ideal(&ideal(&["x^2+y^2-1", "x-y"]), &["x"]).unwrap();
        assert_eq!(
            e.generators(),
            &[parse_polynomial_in("y^2-1/2", &y_only).unwrap()]
        );
        let e = elimination_ideal(&ideal(&["x-y^2"]), &["x"]).unwrap();
        assert!(e.generators().is_empty());
        let e = elimination_ideal(&ideal(&["x", "y"]), &["x"]).unwrap();
        assert_eq!(e.generators(), &[parse_polynomial_in("y", &y_only).unwrap()]);
        assert!(elimination_ideal(&ideal(&["x"]), &["q"]).is_err());
    }

    #[test]
    fn saturation_examples() {
        let s = saturate(&ideal(&["x*y"]), &p("x"));
        assert_eq!(s.generators(), &[p("y")]);
        let s = saturate(&ideal(&["x"]), &p("y"));
        assert_eq!(s.generators(), &[p("x")]);
        let s = saturate(&ideal(&["x^2"]), &p("x"));
        assert_eq!(s.generators(), &[p("1")]);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&ideal(&["x", "y"])), 0);
        assert_eq!(dimension(&ideal(&["x*y"])), 1);
        assert_eq!(dimension(&ideal(&["1"])), -1);
        assert_eq!(dimension(&ideal(&["x^2+y^2-1"])), 1);
        assert_eq!(dimension(&IdealBasis::new(xy(), vec![]).unwrap()), 2);
    }

    #[test]
    fn gcd_and_general_squarefree() {
        assert_eq!(poly_gcd(&p("x^2-y^2"), &p("x^2+2*x*y+y^2")), p("x+y"));
        assert_eq!(poly_gcd(&p("x"), &p("y")), p("1"));
        assert_eq!(squarefree_part_general(&p("(x-y)^3*(x+1)^2")), p("x^2-x*y+x-y"));
    }
}
