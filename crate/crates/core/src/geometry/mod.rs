//! Puncture, lift to P^3, center screening, projection and point transport.

mod modcert;
mod project;
mod secant;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::numeric::{BigRat, ProjPoint3};
use crate::poly::{
    factor_low_degree, parse_polynomial_in, squarefree_part, vars, Monomial, PolyError, Polynomial,
    Vars,
};

pub use project::{
    lift_line_gcd, lift_point, project_by_elimination, project_from_center, project_point,
    pullback_chain, push_chain, push_forward,
};
pub use secant::{
    find_center, line_system, screen_center, screen_center_literal, secant_system,
    verify_witness, LineSystem, Screening,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("curve must be a polynomial in exactly x and y, got variables {0:?}")]
    WrongVariables(Vec<String>),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error(transparent)]
    Parse(PolyError),
    #[error("constant polynomial defines no curve")]
    ConstantCurve,
    #[error("the line w = x = 0 lies on the lifted curve; shear x -> x + c*y first")]
    DegenerateBoundary,
    #[error("no safe center among the first {0} candidates")]
    CandidateCapExceeded(usize),
    #[error("elimination ideal is not principal up to radical")]
    EliminationNotPrincipal,
    #[error("projection eliminant is constant")]
    DegenerateProjection,
    #[error("point is not on the image curve")]
    NotOnImage,
    #[error("line through the center meets the curve in {0} rational points")]
    AmbiguousLift(usize),
    #[error("line through the center has no rational point of the curve")]
    MissingLift,
    #[error("point lies on the punctured fiber x = p")]
    OnPuncturedFiber,
}

pub fn plane_vars() -> Vars {
    vars(&["x", "y"])
}

pub fn space_vars() -> Vars {
    vars(&["w", "x", "y", "z"])
}

/// An affine plane curve `f(x, y) = 0`, stored primitive and squarefree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    f: Polynomial,
    degree: u32,
    genus_at_least_two: bool,
}

impl PlaneCurve {
    pub fn new(f: &Polynomial, genus_at_least_two: bool) -> Result<Self, GeometryError> {
        let f = f
            .with_vars(&plane_vars())
            .map_err(|_| GeometryError::WrongVariables(f.vars().to_vec()))?;
        if f.is_zero() {
            return Err(GeometryError::ZeroPolynomial);
        }
        if f.is_constant() {
            return Err(GeometryError::ConstantCurve);
        }
        let f = squarefree_part(&f).expect("nonzero").primitive();
        let degree = f.degree().unwrap();
        Ok(PlaneCurve {
            f,
            degree,
            genus_at_least_two,
        })
    }

    pub fn parse(text: &str, genus_at_least_two: bool) -> Result<Self, GeometryError> {
        let f = parse_polynomial_in(text, &plane_vars()).map_err(|e| match e {
            PolyError::UnknownVariable(v) => GeometryError::WrongVariables(vec![v]),
            e => GeometryError::Parse(e),
        })?;
        Self::new(&f, genus_at_least_two)
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn genus_at_least_two(&self) -> bool {
        self.genus_at_least_two
    }

    pub fn contains(&self, x: &BigRat, y: &BigRat) -> bool {
        self.f.eval_slice(&[x.clone(), y.clone()]).is_zero()
    }

    /// Degree-d form `F_d(x, y)`.
    pub fn leading_form(&self) -> Polynomial {
        self.f.leading_form()
    }

    /// `F(x + c y, y)`.
    pub fn shear(&self, c: &BigInt) -> PlaneCurve {
        let v = plane_vars();
        let x = Polynomial::var_at(v.clone(), 0);
        let y = Polynomial::var_at(v.clone(), 1);
        let cy = y.scale(&BigRat::from_integer(c.clone()));
        let g = self.f.compose(&[&x + &cy, y], &v);
        PlaneCurve::new(&g, self.genus_at_least_two).expect("shear is invertible")
    }

    /// The shear needed before lifting: `None` when the `y^d` coefficient of
    /// the leading form is nonzero, else the smallest `c >= 1` with
    /// `F_d(c, 1) != 0`.
    pub fn boundary_shear(&self) -> Option<BigInt> {
        let lf = self.leading_form();
        let at = |c: i64| lf.eval_slice(&[BigRat::from_integer(c.into()), BigRat::one()]);
        if !at(0).is_zero() {
            return None;
        }
        (1..).find(|&c| !at(c).is_zero()).map(BigInt::from)
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f)
    }
}

/// The curve `C = V(g1, g2)` in P^3 with `g1 = homogenize(f, w)` and
/// `g2 = (x - p w) z - w^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceCurve {
    g1: Polynomial,
    g2: Polynomial,
    p: BigRat,
    source: PlaneCurve,
}

impl SpaceCurve {
    pub fn g1(&self) -> &Polynomial {
        &self.g1
    }

    pub fn g2(&self) -> &Polynomial {
        &self.g2
    }

    pub fn p(&self) -> &BigRat {
        &self.p
    }

    pub fn source(&self) -> &PlaneCurve {
        &self.source
    }

    pub fn contains(&self, pt: &ProjPoint3) -> bool {
        let v = pt.as_rationals();
        self.g1.eval_slice(&v).is_zero() && self.g2.eval_slice(&v).is_zero()
    }
}

pub fn puncture_lift(curve: &PlaneCurve, p: &BigRat) -> SpaceCurve {
    let sv = space_vars();
    let g1 = curve
        .f
        .homogenize("w")
        .expect("nonzero")
        .with_vars(&sv)
        .expect("w, x, y within w, x, y, z");
    let var = |i| Polynomial::var_at(sv.clone(), i);
    let (w, x, z) = (var(0), var(1), var(3));
    let g2 = &(&(&x - &w.scale(p)) * &z) - &(&w * &w);
    SpaceCurve {
        g1,
        g2,
        p: p.clone(),
        source: curve.clone(),
    }
}

/// Points of `C` with `w = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPoints {
    pub rational: Vec<ProjPoint3>,
    /// Boundary points over quadratic fields (counted individually).
    pub quadratic: usize,
    /// Boundary points of degree > 2 (counted individually).
    pub higher: usize,
    /// The whole line `w = x = 0` lies on `C`.
    pub degenerate_line: bool,
}

pub fn boundary_points(c: &SpaceCurve) -> BoundaryPoints {
    let lf = c.source.leading_form();
    let d = c.source.degree;
    let y_only = vars(&["y"]);
    // F_d(1, y)
    let restricted = Polynomial::from_terms(
        y_only.clone(),
        lf.terms()
            .iter()
            .map(|(m, v)| (Monomial(vec![m.0[1]]), v.clone())),
    );
    let c0d = lf
        .terms()
        .get(&Monomial(vec![0, d]))
        .cloned()
        .unwrap_or_else(BigRat::zero);
    let mut out = BoundaryPoints {
        rational: Vec::new(),
        quadratic: 0,
        higher: 0,
        degenerate_line: c0d.is_zero(),
    };
    if !c0d.is_zero() {
        out.rational.push(ProjPoint3::from_ints(0, 0, 0, 1).unwrap());
    }
    // z = 0 branch with x = 1
    if restricted.degree().unwrap_or(0) > 0 {
        let fac = factor_low_degree(&restricted, 2).expect("nonzero");
        for (h, _) in &fac.factors {
            if h.degree() == Some(1) {
                let y0 = -h.constant_term();
                let pt = ProjPoint3::from_rationals(&[
                    BigRat::zero(),
                    BigRat::one(),
                    y0,
                    BigRat::zero(),
                ])
                .unwrap();
                out.rational.push(pt);
            } else {
                out.quadratic += 2;
            }
        }
        out.higher += fac.cofactor.degree().unwrap_or(0) as usize;
    }
    out.rational.sort();
    out
}

/// A candidate projection center `m = (0 : a : b : 1)` on `H = {w = 0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CandidateCenter {
    pub a: BigRat,
    pub b: BigRat,
}

impl CandidateCenter {
    pub fn new(a: BigRat, b: BigRat) -> Self {
        CandidateCenter { a, b }
    }

    pub fn point(&self) -> ProjPoint3 {
        ProjPoint3::from_rationals(&[BigRat::zero(), self.a.clone(), self.b.clone(), BigRat::one()])
            .unwrap()
    }

    /// Integer representative `(0, a r, b r, r)` with `r > 0`.
    pub fn integer_rep(&self) -> [BigInt; 4] {
        use num_integer::Integer;
        let r = self.a.denom().lcm(self.b.denom());
        [
            BigInt::zero(),
            self.a.numer() * (&r / self.a.denom()),
            self.b.numer() * (&r / self.b.denom()),
            r,
        ]
    }
}

impl fmt::Display for CandidateCenter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(0 : {} : {} : 1)", self.a, self.b)
    }
}

/// Witness of a rational secant line through the center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SecantWitness {
    RationalPair(ProjPoint3, ProjPoint3),
    /// Conjugate points `(w, x, y, z)(t)` with `t` a root of `min_poly`.
    QuadraticPair {
        min_poly: Polynomial,
        coordinates: [Polynomial; 4],
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScreenVerdict {
    SafeCenter,
    RationalSecant(SecantWitness),
    PositiveDimensional,
    DegenerateCenter(String),
}

impl ScreenVerdict {
    pub fn is_safe(&self) -> bool {
        matches!(self, ScreenVerdict::SafeCenter)
    }
}

/// One projection: columns `u1..u4` of `basis_change`, with
/// `(w,x,y,z)^T = basis_change * (c1,c2,c3,c4)^T` and image `(X, Y) = (c2/c1, c3/c1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirationalStep {
    pub center: CandidateCenter,
    pub basis_change: [[BigRat; 4]; 4],
    pub image: PlaneCurve,
    pub source: SpaceCurve,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainStep {
    /// `F(x, y) -> F(x + c y, y)`.
    Shear(BigInt),
    Projection(BirationalStep),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MapChain {
    pub steps: Vec<ChainStep>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    fn curve(s: &str) -> PlaneCurve {
        PlaneCurve::parse(s, true).unwrap()
    }

    #[test]
    fn puncture_lift_examples() {
        let sv = space_vars();
        let q = |s: &str| parse_polynomial_in(s, &sv).unwrap();
        let c = puncture_lift(&curve("x^4+y^4-1"), &int(1));
        assert_eq!(c.g1(), &q("x^4+y^4-w^4"));
        assert_eq!(c.g2(), &q("(x-w)*z-w^2"));
        let c = puncture_lift(&curve("x^4+y^4-1"), &int(0));
        assert_eq!(c.g2(), &q("x*z-w^2"));
    }

    #[test]
    fn boundary_examples() {
        let c = puncture_lift(&curve("x^4+y^4-1"), &int(1));
        let b = boundary_points(&c);
        assert_eq!(b.rational, vec![ProjPoint3::from_ints(0, 0, 0, 1).unwrap()]);
        assert!(!b.degenerate_line);
        assert_eq!((b.quadratic, b.higher), (0, 4));
        for pt in &b.rational {
            assert!(c.contains(pt));
        }

        let c = puncture_lift(&curve("y^2-x^5-1"), &int(0));
        assert!(boundary_points(&c).degenerate_line);

        let c = puncture_lift(&curve("x^4+y^4+1"), &int(0));
        assert_eq!(
            boundary_points(&c).rational,
            vec![ProjPoint3::from_ints(0, 0, 0, 1).unwrap()]
        );

        // leading form x^3 y - y^4 = y (x^3 - y^3): roots y = 0 and y = 1 at x = 1
        let c = puncture_lift(&curve("x^3*y - y^4 + x + 1"), &int(0));
        let b = boundary_points(&c);
        assert_eq!(b.rational.len(), 3);
        for pt in &b.rational {
            assert!(c.contains(pt));
        }
    }

    #[test]
    fn shear_repairs_degenerate_boundary() {
        let f = curve("y^2-x^5-1");
        let c = f.boundary_shear().unwrap();
        assert_eq!(c, BigInt::from(1));
        let g = f.shear(&c);
        assert_eq!(g.boundary_shear(), None);
        assert!(!boundary_points(&puncture_lift(&g, &int(0))).degenerate_line);
        assert_eq!(curve("x^4+y^4-1").boundary_shear(), None);
    }

    #[test]
    fn plane_curve_normalization() {
        assert_eq!(curve("2*x^2 - 2*y^2").f(), curve("x^2-y^2").f());
        assert_eq!(curve("(x-y)^2*(x+y)").degree(), 2);
        assert_eq!(
            PlaneCurve::new(&Polynomial::zero(plane_vars()), true),
            Err(GeometryError::ZeroPolynomial)
        );
    }
}
