//! Zero-dimensional solving with rational / quadratic-pair classification.

use num_traits::One;

use super::{lex_basis, GroebnerError, IdealBasis};
use crate::numeric::BigRat;
use crate::poly::{factor_low_degree, squarefree_part, Monomial, Polynomial, Vars};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroDimEntry {
    RationalPoint(Vec<BigRat>),
    /// Two conjugate solutions: coordinate `i` is `coordinates[i](t)` with
    /// `t` a root of the monic irreducible quadratic `min_poly(t)`.
    QuadraticPair {
        min_poly: Polynomial,
        coordinates: Vec<Polynomial>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ZeroDimSolution {
    pub entries: Vec<ZeroDimEntry>,
    /// Upper bound on the number of remaining solutions, all of degree > 2.
    pub higher_degree: usize,
}

impl ZeroDimSolution {
    pub fn rational_points(&self) -> impl Iterator<Item = &Vec<BigRat>> {
        self.entries.iter().filter_map(|e| match e {
            ZeroDimEntry::RationalPoint(p) => Some(p),
            _ => None,
        })
    }

    pub fn quadratic_pairs(&self) -> impl Iterator<Item = (&Polynomial, &Vec<Polynomial>)> {
        self.entries.iter().filter_map(|e| match e {
            ZeroDimEntry::QuadraticPair {
                min_poly,
                coordinates,
            } => Some((min_poly, coordinates)),
            _ => None,
        })
    }
}

fn t_vars() -> Vars {
    crate::poly::vars(&["t"])
}

/// Univariate polynomial in variable `i` of `like`'s ring, re-expressed in `t`.
fn to_t(p: &Polynomial, i: usize) -> Polynomial {
    let tv = t_vars();
    Polynomial::from_terms(
        tv,
        p.terms()
            .iter()
            .map(|(m, c)| (Monomial(vec![m.0[i]]), c.clone())),
    )
}

fn from_t(p: &Polynomial, vars: &Vars, i: usize) -> Polynomial {
    let n = vars.len();
    Polynomial::from_terms(
        vars.clone(),
        p.terms()
            .iter()
            .map(|(m, c)| (Monomial::var(n, i, m.0[0]), c.clone())),
    )
}

fn constant_t(c: BigRat) -> Polynomial {
    Polynomial::constant(t_vars(), c)
}

fn rem_t(a: &Polynomial, q: &Polynomial) -> Polynomial {
    // univariate remainder modulo a monic q in t
    let dq = q.degree().unwrap();
    let mut r = a.clone();
    while let Some(d) = r.degree() {
        if d < dq {
            break;
        }
        let c = r.terms().get(&Monomial(vec![d])).cloned().unwrap();
        r = &r - &q.mul_monomial(&Monomial(vec![d - dq]), &c);
    }
    r
}

fn univariate_in(p: &Polynomial, i: usize) -> bool {
    p.terms()
        .keys()
        .all(|m| m.0.iter().enumerate().all(|(j, &e)| j == i || e == 0))
}

/// Lex eliminant of the ideal in variable `i` (the ideal must be zero-dimensional).
fn eliminant(ideal: &IdealBasis, i: usize) -> Polynomial {
    let n = ideal.vars().len();
    let mut names: Vec<String> = ideal.vars().to_vec();
    let v = names.remove(i);
    names.push(v);
    let reordered: Vars = names.into();
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.with_vars(&reordered).unwrap())
        .collect();
    let gb = lex_basis(&IdealBasis::new(reordered, gens).unwrap()).expect("zero-dimensional");
    let e = gb
        .elements()
        .iter()
        .find(|e| univariate_in(e, n - 1))
        .expect("zero-dimensional ideal has an eliminant")
        .clone();
    e.with_vars(ideal.vars()).unwrap()
}

pub fn solve_zero_dim(ideal: &IdealBasis) -> Result<ZeroDimSolution, GroebnerError> {
    let n = ideal.vars().len();
    let gb = lex_basis(ideal)?;
    let mut out = ZeroDimSolution::default();
    if gb.is_unit() {
        return Ok(out);
    }
    if n == 0 {
        out.entries.push(ZeroDimEntry::RationalPoint(Vec::new()));
        return Ok(out);
    }
    let last = n - 1;
    let e = gb.elements()[0].clone();
    debug_assert!(univariate_in(&e, last));
    let sq = squarefree_part(&e).expect("nonzero eliminant");
    let fac = factor_low_degree(&to_t(&sq, last), 2).expect("univariate eliminant");

    // sub-ideals are built from the original generators, which keep grevlex cheap
    for (h, _) in &fac.factors {
        if h.degree() == Some(1) {
            let r = -h.constant_term();
            let sub_vars: Vars = ideal.vars()[..last].to_vec().into();
            let sub_gens: Vec<Polynomial> = ideal
                .generators()
                .iter()
                .map(|g| g.dehomogenize(&ideal.vars()[last], &r).unwrap())
                .filter(|g| !g.is_zero())
                .collect();
            let sub = solve_zero_dim(&IdealBasis::new(sub_vars, sub_gens)?)?;
            for entry in sub.entries {
                out.entries.push(match entry {
                    ZeroDimEntry::RationalPoint(mut p) => {
                        p.push(r.clone());
                        ZeroDimEntry::RationalPoint(p)
                    }
                    ZeroDimEntry::QuadraticPair {
                        min_poly,
                        mut coordinates,
                    } => {
                        coordinates.push(constant_t(r.clone()));
                        ZeroDimEntry::QuadraticPair {
                            min_poly,
                            coordinates,
                        }
                    }
                });
            }
            out.higher_degree += sub.higher_degree;
        } else {
            let j = ideal.with_generator(from_t(h, ideal.vars(), last));
            let (entries, higher) = quadratic_fiber(&j, h, last);
            out.entries.extend(entries);
            out.higher_degree += higher;
        }
    }
    if fac.cofactor.degree().unwrap_or(0) > 0 {
        // bound: every standard monomial not used by the low-degree fibers
        let used: usize = out
            .entries
            .iter()
            .map(|e| match e {
                ZeroDimEntry::RationalPoint(_) => 1,
                ZeroDimEntry::QuadraticPair { .. } => 2,
            })
            .sum::<usize>()
            + out.higher_degree;
        let total = super::fglm::standard_monomials(&gb.leading_monomials(), n).len();
        out.higher_degree += total.saturating_sub(used);
    }
    Ok(out)
}

/// Shape-form test: a lex basis `{q(x_last), x_i - phi_i(x_last)}` with
/// `phi_i` of degree below `deg q`. Returns the `phi_i` (in `t`).
fn shape(elements: &[Polynomial], n: usize, last: usize) -> Option<(Polynomial, Vec<Polynomial>)> {
    if elements.len() != n {
        return None;
    }
    let e = &elements[0];
    if !univariate_in(e, last) {
        return None;
    }
    let q = to_t(e, last);
    let mut coords = vec![Polynomial::zero(t_vars()); n];
    coords[last] = Polynomial::var_at(t_vars(), 0);
    for el in &elements[1..] {
        // x_i - phi(x_last), monic in x_i
        let mut var = None;
        let mut phi = Polynomial::zero(el.vars().clone());
        for (m, c) in el.terms() {
            let others: Vec<usize> = (0..n).filter(|&j| j != last && m.0[j] > 0).collect();
            match others.as_slice() {
                [] => phi.add_term(m.clone(), -c.clone()),
                [j] if m.0[*j] == 1 && m.degree() == 1 && c.is_one() && var.is_none() => {
                    var = Some(*j)
                }
                _ => return None,
            }
        }
        coords[var?] = to_t(&phi, last);
    }
    Some((q, coords))
}

fn quadratic_fiber(j: &IdealBasis, q: &Polynomial, last: usize) -> (Vec<ZeroDimEntry>, usize) {
    let n = j.vars().len();
    let gb = lex_basis(j).expect("zero-dimensional");
    if gb.is_unit() {
        return (Vec::new(), 0);
    }
    if let Some((_, coords)) = shape(gb.elements(), n, last) {
        let coordinates = coords.iter().map(|c| rem_t(c, q)).collect();
        return (
            vec![ZeroDimEntry::QuadraticPair {
                min_poly: q.clone(),
                coordinates,
            }],
            0,
        );
    }
    separating_fiber(j)
}

// Radicalize (Seidenberg), then find a separating linear form s and read the
// points off its shape basis.
fn separating_fiber(j: &IdealBasis) -> (Vec<ZeroDimEntry>, usize) {
    let n = j.vars().len();
    let mut rad = j.clone();
    for i in 0..n {
        let e = eliminant(&rad, i);
        rad = rad.with_generator(squarefree_part(&e).unwrap());
    }
    let s_name = {
        let mut s = "s".to_string();
        while j.vars().contains(&s) {
            s.push('_');
        }
        s
    };
    let ext: Vars = j.vars().iter().cloned().chain([s_name]).collect();
    let base: Vec<Polynomial> = rad
        .generators()
        .iter()
        .map(|g| g.with_vars(&ext).unwrap())
        .collect();
    for c in 1..=32i64 {
        // s = x_{n-1} + c x_{n-2} + c^2 x_{n-3} + ...
        let mut lin = Polynomial::var_at(ext.clone(), n);
        let mut w = BigRat::one();
        for i in (0..n).rev() {
            let term = Polynomial::var_at(ext.clone(), i).scale(&w);
            lin = &lin - &term;
            w *= BigRat::from_integer(c.into());
        }
        let mut gens = base.clone();
        gens.push(lin);
        let gb = lex_basis(&IdealBasis::new(ext.clone(), gens).unwrap()).expect("zero-dimensional");
        let Some((e, coords)) = shape(gb.elements(), n + 1, n) else {
            continue;
        };
        let fac = factor_low_degree(&e, 2).unwrap();
        let mut entries = Vec::new();
        for (h, _) in &fac.factors {
            if h.degree() == Some(1) {
                let r = -h.constant_term();
                entries.push(ZeroDimEntry::RationalPoint(
                    coords[..n].iter().map(|p| p.eval_slice(std::slice::from_ref(&r))).collect(),
                ));
            } else {
                entries.push(ZeroDimEntry::QuadraticPair {
                    min_poly: h.clone(),
                    coordinates: coords[..n].iter().map(|p| rem_t(p, h)).collect(),
                });
            }
        }
        let higher = fac.cofactor.degree().unwrap_or(0) as usize;
        return (entries, higher);
    }
    unreachable!("no separating linear form among 32 candidates")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;
    use crate::poly::{parse_polynomial_in, vars};

    fn xy() -> Vars {
        vars(&["x", "y"])
    }

    fn ideal(gens: &[&str]) -> IdealBasis {
        IdealBasis::new(
            xy(),
            gens.iter().map(|s| parse_polynomial_in(s, &xy()).unwrap()).collect(),
        )
        .unwrap()
    }

    fn t(s: &str) -> Polynomial {
        parse_polynomial_in(s, &t_vars()).unwrap()
    }

    #[test]
    fn quadratic_pair_on_diagonal() {
        let s = solve_zero_dim(&ideal(&["x^2-2", "y-x"])).unwrap();
        assert_eq!(
            s.entries,
            vec![ZeroDimEntry::QuadraticPair {
                min_poly: t("t^2-2"),
                coordinates: vec![t("t"), t("t")],
            }]
        );
        assert_eq!(s.higher_degree, 0);
    }

    #[test]
    fn rational_point() {
        let s = solve_zero_dim(&ideal(&["x-1", "y-2"])).unwrap();
        assert_eq!(s.entries, vec![ZeroDimEntry::RationalPoint(vec![int(1), int(2)])]);
    }

    #[test]
    fn quadratic_pair_over_rational_coordinate() {
        let s = solve_zero_dim(&ideal(&["x^2+1", "y"])).unwrap();
        assert_eq!(
            s.entries,
            vec![ZeroDimEntry::QuadraticPair {
                min_poly: t("t^2+1"),
                coordinates: vec![t("t"), t("0")],
            }]
        );
    }

    #[test]
    fn non_shape_fiber_splits_into_two_pairs() {
        // (±√2, ±√2): two conjugate pairs, y = x and y = -x
        let s = solve_zero_dim(&ideal(&["x^2-2", "y^2-2"])).unwrap();
        assert_eq!(s.quadratic_pairs().count(), 2);
        assert_eq!(s.higher_degree, 0);
        for (q, c) in s.quadratic_pairs() {
            // check the generators vanish modulo q
            let x2 = rem_t(&(&c[0] * &c[0]), q);
            assert_eq!(x2, t("2"));
        }
    }

    #[test]
    fn mixed_degrees() {
        let s = solve_zero_dim(&ideal(&["(x-1)*(x^2-3)*(x^3-2)", "y-x^2"])).unwrap();
        let pts: Vec<_> = s.rational_points().cloned().collect();
        assert_eq!(pts, vec![vec![int(1), int(1)]]);
        assert_eq!(s.higher_degree, 3);
        // x^2 - 3 gives y = 3 rational, x conjugate
        assert_eq!(s.quadratic_pairs().count(), 1);
    }

    #[test]
    fn positive_dimensional_rejected() {
        assert_eq!(
            solve_zero_dim(&ideal(&["x*y"])),
            Err(GroebnerError::PositiveDimensional(1))
        );
        assert!(solve_zero_dim(&ideal(&["1"])).unwrap().entries.is_empty());
    }
}
