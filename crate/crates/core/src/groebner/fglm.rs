//! Basis conversion for zero-dimensional ideals: a grevlex basis is turned
//! into the lex basis by linear algebra on the quotient ring.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};

use super::{
    buchberger_direct, dimension_of_leading, normal_form, GroebnerBasis, GroebnerError, IdealBasis,
    MonomialOrder,
};
use crate::numeric::BigRat;
use crate::poly::{Monomial, Polynomial};

type Vector = Vec<BigRat>;

/// Standard monomials of a zero-dimensional basis, ascending.
pub(crate) fn standard_monomials(leads: &[Monomial], n: usize) -> Vec<Monomial> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![Monomial::one(n)];
    while let Some(m) = stack.pop() {
        if seen.contains(&m) || leads.iter().any(|l| l.divides(&m)) {
            continue;
        }
        for i in 0..n {
            stack.push(m.mul(&Monomial::var(n, i, 1)));
        }
        seen.insert(m);
    }
    seen.into_iter().collect()
}

// Row-echelon store of the images of the lex staircase.
struct Echelon {
    // (pivot column, row, combination of staircase elements)
    rows: Vec<(usize, Vector, Vector)>,
}

impl Echelon {
    /// Reduces `v`; returns the combination `c` with `v = sum c_k stair_k`
    /// when dependent, otherwise records `v` as stair element `k`.
    fn insert(&mut self, mut v: Vector, k: usize, total: usize) -> Option<Vector> {
        let mut comb = vec![BigRat::zero(); total];
        comb[k] = BigRat::one();
        for (piv, row, rc) in &self.rows {
            if v[*piv].is_zero() {
                continue;
            }
            let f = v[*piv].clone() / &row[*piv];
            for (a, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
            for (a, b) in comb.iter_mut().zip(rc) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            Some(piv) => {
                self.rows.push((piv, v, comb));
                None
            }
            // v - sum(...) = 0 expressed through comb: comb . stair = 0
            None => Some(comb),
        }
    }
}

/// Reduced lex basis of a zero-dimensional ideal.
pub fn lex_basis(ideal: &IdealBasis) -> Result<GroebnerBasis, GroebnerError> {
    let n = ideal.vars.len();
    let g = buchberger_direct(ideal, MonomialOrder::GrevLex);
    if g.is_unit() || n == 0 {
        return Ok(GroebnerBasis {
            vars: g.vars,
            order: MonomialOrder::Lex,
            elements: g.elements,
        });
    }
    let dim = dimension_of_leading(&g.leading_monomials(), n);
    if dim > 0 {
        return Err(GroebnerError::PositiveDimensional(dim));
    }
    Ok(convert_to_lex(ideal, &g))
}

/// Lex basis from a zero-dimensional grevlex basis `g` of `ideal`.
pub(crate) fn convert_to_lex(ideal: &IdealBasis, g: &GroebnerBasis) -> GroebnerBasis {
    let n = ideal.vars.len();
    let std = standard_monomials(&g.leading_monomials(), n);
    let index: HashMap<&Monomial, usize> = std.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let d = std.len();
    let to_vec = |p: &Polynomial| -> Vector {
        let mut v = vec![BigRat::zero(); d];
        for (m, c) in p.terms() {
            v[index[m]] = c.clone();
        }
        v
    };
    // multiplication matrices: mult[i][k] = NF(x_i * std_k)
    let mult: Vec<Vec<Vector>> = (0..n)
        .map(|i| {
            std.iter()
                .map(|s| {
                    let m = s.mul(&Monomial::var(n, i, 1));
                    let p = Polynomial::from_terms(ideal.vars.clone(), [(m, BigRat::one())]);
                    to_vec(&normal_form(&p, g))
                })
                .collect()
        })
        .collect();
    let times = |i: usize, v: &Vector| -> Vector {
        let mut out = vec![BigRat::zero(); d];
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(&mult[i][k]) {
                if !e.is_zero() {
                    *o += c * e;
                }
            }
        }
        out
    };

    let mut stair: Vec<(Monomial, Vector)> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut elements: Vec<Polynomial> = Vec::new();
    let mut ech = Echelon { rows: Vec::new() };
    let mut one = vec![BigRat::zero(); d];
    one[index[&Monomial::one(n)]] = BigRat::one();
    let mut candidates: BTreeSet<Monomial> = BTreeSet::new();
    // candidate -> (parent stair index, variable)
    let mut origin: HashMap<Monomial, (usize, usize)> = HashMap::new();
    let mut next: Option<(Monomial, Vector)> = Some((Monomial::one(n), one));
    loop {
        let (m, v) = match next.take() {
            Some(x) => x,
            None => {
                let Some(m) = candidates.pop_first() else {
                    break;
                };
                if leads.iter().any(|l| l.divides(&m)) {
                    continue;
                }
                let (parent, var) = origin[&m];
                let v = times(var, &stair[parent].1);
                (m, v)
            }
        };
        let k = stair.len();
        match ech.insert(v.clone(), k, d + 1) {
            None => {
                stair.push((m.clone(), v));
                for i in 0..n {
                    let c = m.mul(&Monomial::var(n, i, 1));
                    if !origin.contains_key(&c) {
                        origin.insert(c.clone(), (k, i));
                        candidates.insert(c);
                    }
                }
            }
            Some(comb) => {
                // comb[k] = 1 for m; the rest express m's dependence
                let mut p = Polynomial::from_terms(ideal.vars.clone(), [(m.clone(), BigRat::one())]);
                for (j, (sm, _)) in stair.iter().enumerate() {
                    if !comb[j].is_zero() {
                        p.add_term(sm.clone(), comb[j].clone());
                    }
                }
                leads.push(m);
                elements.push(p);
            }
        }
    }
    elements.sort_by(|a, b| {
        let la = a.lex_leading().unwrap().0;
        let lb = b.lex_leading().unwrap().0;
        la.cmp(lb)
    });
    GroebnerBasis {
        vars: ideal.vars.clone(),
        order: MonomialOrder::Lex,
        elements,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial_in, vars};

    fn ideal(v: &[&str], gens: &[&str]) -> IdealBasis {
        let vv = vars(v);
        IdealBasis::new(
            vv.clone(),
            gens.iter().map(|s| parse_polynomial_in(s, &vv).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn agrees_with_direct_lex() {
        for (v, gens) in [
            (&["x", "y"][..], &["x^2 + y^2 - 5", "x*y - 2"][..]),
            (&["x", "y", "z"], &["x + y + z", "x*y + y*z + z*x", "x*y*z - 1"]),
            (&["x", "y"], &["x^3 - 2", "y^2 - x"]),
            (&["x", "y"], &["x^2 - 2", "y^2 - 2"]),
            (&["x", "y", "z"], &["x^2 - y", "y^2 - z", "z^2 - x + 3*y"]),
        ] {
            let i = ideal(v, gens);
            let direct = buchberger_direct(&i, MonomialOrder::Lex);
            let converted = lex_basis(&i).unwrap();
            assert_eq!(direct, converted, "{gens:?}");
        }
    }

    #[test]
    fn rejects_positive_dimension() {
        let i = ideal(&["x", "y"], &["x*y"]);
        assert_eq!(lex_basis(&i), Err(GroebnerError::PositiveDimensional(1)));
    }

    #[test]
    fn counts_standard_monomials() {
        let leads = vec![Monomial(vec![2, 0]), Monomial(vec![0, 3])];
        assert_eq!(standard_monomials(&leads, 2).len(), 6);
    }
}
