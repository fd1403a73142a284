//! Projection from a safe center and transport of rational points.

use num_traits::{One, Zero};

use super::secant::line_system;
use super::{
    plane_vars, BirationalStep, CandidateCenter, ChainStep, GeometryError, MapChain, PlaneCurve,
    SpaceCurve,
};
use crate::groebner::{elimination_ideal, IdealBasis};
use crate::numeric::{BigRat, ProjPoint3, ReducedPoint};
use crate::poly::{rational_roots, squarefree_part, univariate_gcd, vars, Polynomial};

fn basis_change(center: &CandidateCenter) -> [[BigRat; 4]; 4] {
    let u4 = center.integer_rep();
    let e = |i: usize, j: usize| if i == j { BigRat::one() } else { BigRat::zero() };
    std::array::from_fn(|row| {
        std::array::from_fn(|col| {
            if col < 3 {
                e(row, col)
            } else {
                BigRat::from_integer(u4[row].clone())
            }
        })
    })
}

fn image_curve(raw: &Polynomial, source: &SpaceCurve) -> Result<PlaneCurve, GeometryError> {
    if raw.is_zero() || raw.is_constant() {
        return Err(GeometryError::DegenerateProjection);
    }
    PlaneCurve::new(raw, source.source().genus_at_least_two())
}

/// Projects `C` from `m` to the plane `(c1 : c2 : c3)` and dehomogenizes at
/// `c1 = 1`. The image is the resultant in the line parameter of the two
/// restrictions of the curve equations to the lines through `m`.
pub fn project_from_center(
    c: &SpaceCurve,
    center: &CandidateCenter,
) -> Result<BirationalStep, GeometryError> {
    let raw = line_system(c, center).image_resultant();
    Ok(BirationalStep {
        center: center.clone(),
        basis_change: basis_change(center),
        image: image_curve(&raw, c)?,
        source: c.clone(),
    })
}

/// Same projection computed by eliminating `c4` from the transformed ideal.
pub fn project_by_elimination(
    c: &SpaceCurve,
    center: &CandidateCenter,
) -> Result<BirationalStep, GeometryError> {
    let cv = vars(&["c1", "c2", "c3", "c4"]);
    let t = basis_change(center);
    let images: Vec<Polynomial> = (0..4)
        .map(|row| {
            let mut acc = Polynomial::zero(cv.clone());
            for (col, coef) in t[row].iter().enumerate() {
                acc = &acc + &Polynomial::var_at(cv.clone(), col).scale(coef);
            }
            acc
        })
        .collect();
    let gens = vec![c.g1().compose(&images, &cv), c.g2().compose(&images, &cv)];
    let ideal = IdealBasis::new(cv, gens).expect("shared variables");
    let elim = elimination_ideal(&ideal, &["c4"]).expect("c4 present");
    let mut radicals: Vec<Polynomial> = elim
        .generators()
        .iter()
        .map(|g| squarefree_part(g).expect("nonzero"))
        .collect();
    radicals.sort_by_key(|g| (g.degree(), g.num_terms()));
    radicals.dedup();
    let Some(h) = radicals.first().cloned() else {
        return Err(GeometryError::DegenerateProjection);
    };
    if radicals.len() > 1 {
        return Err(GeometryError::EliminationNotPrincipal);
    }
    let affine = h
        .dehomogenize("c1", &BigRat::one())
        .expect("c1 present")
        .with_vars(&vars(&["c2", "c3"]))
        .expect("c2, c3");
    let raw = Polynomial::from_terms(plane_vars(), affine.into_terms());
    Ok(BirationalStep {
        center: center.clone(),
        basis_change: t,
        image: image_curve(&raw, c)?,
        source: c.clone(),
    })
}

/// Image `(X, Y)` of a point of `C`; `None` when it maps to the line at
/// infinity `c1 = 0`.
pub fn project_point(pt: &ProjPoint3, step: &BirationalStep) -> Option<(BigRat, BigRat)> {
    let [w, x, y, z] = pt.as_rationals();
    if w.is_zero() {
        return None;
    }
    let (a, b) = (&step.center.a, &step.center.b);
    Some(((&x - a * &z) / &w, (&y - b * &z) / &w))
}

/// Image of an affine point `(x, y)` of the source plane curve.
pub fn push_forward(
    x: &BigRat,
    y: &BigRat,
    step: &BirationalStep,
) -> Result<(BigRat, BigRat), GeometryError> {
    let d = x - step.source.p();
    if d.is_zero() {
        return Err(GeometryError::OnPuncturedFiber);
    }
    let z = d.recip();
    let pt = ProjPoint3::from_rationals(&[BigRat::one(), x.clone(), y.clone(), z])
        .expect("w = 1");
    Ok(project_point(&pt, step).expect("w = 1"))
}

/// The binary forms `g1`, `g2` on the line of `(X, Y)`, dehomogenized at
/// `lambda = 1`, and their gcd.
pub fn lift_line_gcd(x: &BigRat, y: &BigRat, step: &BirationalStep) -> Polynomial {
    let tv = vars(&["mu"]);
    let mu = Polynomial::var_at(tv.clone(), 0);
    let t = &step.basis_change;
    // u1 + X u2 + Y u3 + mu u4
    let line: Vec<Polynomial> = (0..4)
        .map(|row| {
            let base = &t[row][0] + x * &t[row][1] + y * &t[row][2];
            &Polynomial::constant(tv.clone(), base) + &mu.scale(&t[row][3])
        })
        .collect();
    let r1 = step.source.g1().compose(&line, &tv);
    let r2 = step.source.g2().compose(&line, &tv);
    match (r1.is_zero(), r2.is_zero()) {
        (true, _) => r2,
        (_, true) => r1,
        _ => univariate_gcd(&r1, &r2).expect("univariate"),
    }
}

/// The unique rational point of `C` on the line through `m` over `Q`.
pub fn lift_point(
    q: &ReducedPoint,
    step: &BirationalStep,
) -> Result<Option<ProjPoint3>, GeometryError> {
    let (x, y) = (q.x(), q.y());
    if !step.image.contains(&x, &y) {
        return Err(GeometryError::NotOnImage);
    }
    let g = lift_line_gcd(&x, &y, step);
    let m = step.center.point();
    let mut points: Vec<ProjPoint3> = Vec::new();
    if step.source.contains(&m) {
        points.push(m);
    }
    if !g.is_zero() && !g.is_constant() {
        let t = &step.basis_change;
        for mu in rational_roots(&g).expect("univariate") {
            let coords: [BigRat; 4] =
                std::array::from_fn(|row| &t[row][0] + &x * &t[row][1] + &y * &t[row][2] + &mu * &t[row][3]);
            points.push(ProjPoint3::from_rationals(&coords).expect("w = 1"));
        }
    }
    match points.len() {
        0 => Ok(None),
        1 => Ok(points.pop()),
        n => Err(GeometryError::AmbiguousLift(n)),
    }
}

/// Pulls a point of the last curve of `chain` back to the first curve.
pub fn pullback_chain(pt: &ReducedPoint, chain: &MapChain) -> Result<ReducedPoint, GeometryError> {
    let mut cur = pt.clone();
    for step in chain.steps.iter().rev() {
        cur = match step {
            ChainStep::Shear(c) => {
                let (x, y) = (cur.x(), cur.y());
                ReducedPoint::from_affine(&(&x + BigRat::from_integer(c.clone()) * &y), &y)
            }
            ChainStep::Projection(s) => {
                let lifted = lift_point(&cur, s)?.ok_or(GeometryError::MissingLift)?;
                let (x, y) = lifted.affine_xy().ok_or(GeometryError::MissingLift)?;
                ReducedPoint::from_affine(&x, &y)
            }
        };
    }
    Ok(cur)
}

/// Pushes a point of the first curve of `chain` to the last curve; `None`
/// when it lies on a punctured fiber.
pub fn push_chain(pt: &ReducedPoint, chain: &MapChain) -> Option<ReducedPoint> {
    let (mut x, mut y) = (pt.x(), pt.y());
    for step in &chain.steps {
        match step {
            ChainStep::Shear(c) => x = &x - BigRat::from_integer(c.clone()) * &y,
            ChainStep::Projection(s) => (x, y) = push_forward(&x, &y, s).ok()?,
        }
    }
    Some(ReducedPoint::from_affine(&x, &y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{find_center, puncture_lift, screen_center};
    use crate::numeric::int;

    fn step_for(f: &str, p: i64) -> BirationalStep {
        let c = puncture_lift(&PlaneCurve::parse(f, true).unwrap(), &int(p));
        let s = find_center(&c, 100).unwrap();
        project_from_center(&c, &s.center).unwrap()
    }

    #[test]
    fn closed_form_matches_elimination() {
        for (f, p) in [("x^4+y^4-1", 1), ("x^4+y^4-17", -2), ("x^4+y^4-1", -1)] {
            let c = puncture_lift(&PlaneCurve::parse(f, true).unwrap(), &int(p));
            for (a, b) in [(-1, -1), (0, -1), (2, 1)] {
                let center = CandidateCenter::new(int(a), int(b));
                if !screen_center(&c, &center).is_safe() {
                    continue;
                }
                let fast = project_from_center(&c, &center).unwrap();
                let slow = project_by_elimination(&c, &center).unwrap();
                assert_eq!(fast.image, slow.image, "{f} p={p} ({a},{b})");
                assert!(fast.image.degree() <= 2 * c.source().degree());
            }
        }
    }

    #[test]
    fn round_trip_on_fermat_quartic() {
        let step = step_for("x^4+y^4-1", 1);
        for (x, y) in [(-1, 0), (0, 1), (0, -1)] {
            let (xi, yi) = push_forward(&int(x), &int(y), &step).unwrap();
            assert!(step.image.contains(&xi, &yi));
            let q = ReducedPoint::from_affine(&xi, &yi);
            assert_eq!(lift_line_gcd(&xi, &yi, &step).degree(), Some(1));
            let back = lift_point(&q, &step).unwrap().unwrap();
            assert_eq!(back.affine_xy(), Some((int(x), int(y))));
        }
        assert_eq!(
            push_forward(&int(1), &int(0), &step),
            Err(GeometryError::OnPuncturedFiber)
        );
    }

    #[test]
    fn lift_rejects_points_off_the_image() {
        let step = step_for("x^4+y^4-1", 1);
        let q = ReducedPoint::from_ints(7, 3, 1).unwrap();
        assert_eq!(lift_point(&q, &step), Err(GeometryError::NotOnImage));
    }

    #[test]
    fn chains_compose() {
        assert_eq!(
            pullback_chain(&ReducedPoint::from_ints(1, 2, 3).unwrap(), &MapChain::default()),
            Ok(ReducedPoint::from_ints(1, 2, 3).unwrap())
        );
        let s1 = step_for("x^4+y^4-1", 1);
        let c2 = puncture_lift(&s1.image, &int(-1));
        let s2 = project_from_center(&c2, &find_center(&c2, 100).unwrap().center).unwrap();
        let chain = MapChain {
            steps: vec![ChainStep::Projection(s1.clone()), ChainStep::Projection(s2.clone())],
        };
        let mut pushed = 0;
        for (x, y) in [(0, 1), (0, -1), (-1, 0)] {
            let start = ReducedPoint::from_ints(x, y, 1).unwrap();
            let Some(end) = push_chain(&start, &chain) else {
                continue;
            };
            pushed += 1;
            assert!(s2.image.contains(&end.x(), &end.y()));
            assert_eq!(pullback_chain(&end, &chain), Ok(start));
        }
        assert!(pushed >= 1);

        let sheared = MapChain {
            steps: vec![ChainStep::Shear(2.into())],
        };
        let p = ReducedPoint::from_ints(1, 1, 1).unwrap();
        let q = push_chain(&p, &sheared).unwrap();
        assert_eq!(q, ReducedPoint::from_ints(-1, 1, 1).unwrap());
        assert_eq!(pullback_chain(&q, &sheared), Ok(p));
    }
}
