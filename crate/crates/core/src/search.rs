//! The search driver: ask the oracle, find the first point, report its fiber,
//! puncture that fiber and project, then repeat on the image curve.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::geometry::{
    find_center, project_from_center, pullback_chain, push_chain, puncture_lift, CandidateCenter,
    ChainStep, GeometryError, MapChain, PlaneCurve,
};
use crate::numeric::{BigRat, ReducedPoint};
use crate::oracle::{decide, Answer, OracleError, OracleSpec};
use crate::points::PointFinder;
use crate::poly::rational_roots;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("the curve contains the vertical line x = {0}")]
    VerticalComponent(BigRat),
    #[error("lift anomaly: {0}")]
    LiftAnomaly(String),
    #[error("report is not complete")]
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub oracle: OracleSpec,
    pub first_solution_height_cap: u64,
    pub candidate_cap: usize,
    pub max_iterations: usize,
    pub strict_lift: bool,
}

impl SearchConfig {
    /// Default caps: first solution height 10^4, 10^4 candidate centers,
    /// 8 iterations, lenient lifting.
    pub fn new(oracle: OracleSpec) -> Self {
        SearchConfig {
            oracle,
            first_solution_height_cap: 10_000,
            candidate_cap: 10_000,
            max_iterations: 8,
            strict_lift: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cap {
    FirstSolution,
    Candidate,
    MaxIterations,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    Complete,
    CapExceeded(Cap),
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchStatus::Complete => f.write_str("Complete"),
            SearchStatus::CapExceeded(c) => write!(f, "CapExceeded({c:?})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationRecord {
    /// The curve searched in this iteration, after any shear.
    pub curve: PlaneCurve,
    pub shear: Option<BigInt>,
    pub p: BigRat,
    /// Points of `curve` with `x = p`.
    pub fiber_points: Vec<ReducedPoint>,
    pub center: CandidateCenter,
    pub candidates_tried: usize,
    pub image: PlaneCurve,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub status: SearchStatus,
    /// Points of the original curve, in enumeration order.
    pub points: Vec<ReducedPoint>,
    pub iterations: Vec<IterationRecord>,
    pub max_height: Option<BigInt>,
    /// Fiber points whose pullback failed (always empty in strict mode).
    pub lift_anomalies: Vec<String>,
    /// Shears and projections from the original curve to the last one.
    pub chain: MapChain,
}

/// Rational `y` with `F(p, y) = 0`, ascending.
pub fn solve_fiber(f: &PlaneCurve, p: &BigRat) -> Result<Vec<BigRat>, SearchError> {
    let g = f.f().specialize(&[Some(p.clone()), None]);
    if g.is_zero() {
        return Err(SearchError::VerticalComponent(p.clone()));
    }
    if g.is_constant() {
        return Ok(Vec::new());
    }
    Ok(rational_roots(&g).expect("only y remains"))
}

/// First point in enumeration order with height `<= cap`.
pub fn find_first_solution(f: &PlaneCurve, cap: u64) -> Option<ReducedPoint> {
    PointFinder::new(f).first_point(i64::try_from(cap).unwrap_or(i64::MAX))
}

/// Largest height among the points of a complete report.
pub fn max_height(report: &SearchReport) -> Result<Option<BigInt>, SearchError> {
    if report.status != SearchStatus::Complete {
        return Err(SearchError::Incomplete);
    }
    Ok(report.points.iter().map(ReducedPoint::height).max())
}

// A point list for the original curve, moved onto the current curve.
fn transport(spec: &OracleSpec, f: &PlaneCurve, chain: &MapChain) -> OracleSpec {
    match spec {
        OracleSpec::PointList(points) => OracleSpec::PointList(
            points
                .iter()
                .filter(|pt| f.contains(&pt.x(), &pt.y()))
                .filter_map(|pt| push_chain(pt, chain))
                .collect(),
        ),
        other => other.clone(),
    }
}

/// Runs the search loop on `f`, whose genus is asserted to be at least two.
pub fn search_all(f: &PlaneCurve, config: &SearchConfig) -> Result<SearchReport, SearchError> {
    let mut current = f.clone();
    let mut chain = MapChain::default();
    let mut points: BTreeSet<ReducedPoint> = BTreeSet::new();
    let mut iterations = Vec::new();
    let mut anomalies = Vec::new();
    let status = loop {
        let shear = current.boundary_shear();
        if let Some(c) = &shear {
            current = current.shear(c);
            chain.steps.push(ChainStep::Shear(c.clone()));
        }
        let spec = transport(&config.oracle, f, &chain);
        let verdict = decide(&current, &spec)?;
        if verdict.answer == Answer::No {
            break SearchStatus::Complete;
        }
        if iterations.len() >= config.max_iterations {
            break SearchStatus::CapExceeded(Cap::MaxIterations);
        }
        let first = match (&spec, verdict.witness) {
            (OracleSpec::HeightBound(b), Some(w)) if *b <= config.first_solution_height_cap => {
                Some(w)
            }
            _ => find_first_solution(&current, config.first_solution_height_cap),
        };
        let Some(first) = first else {
            break SearchStatus::CapExceeded(Cap::FirstSolution);
        };
        let p = first.x();
        let fiber_points: Vec<ReducedPoint> = solve_fiber(&current, &p)?
            .iter()
            .map(|y| ReducedPoint::from_affine(&p, y))
            .collect();
        for pt in &fiber_points {
            match pullback_chain(pt, &chain) {
                Ok(orig) if f.contains(&orig.x(), &orig.y()) => {
                    points.insert(orig);
                }
                outcome => {
                    let msg = match outcome {
                        Ok(orig) => format!("{pt} pulls back to {orig}, which is not on the curve"),
                        Err(e) => format!("{pt}: {e}"),
                    };
                    if config.strict_lift {
                        return Err(SearchError::LiftAnomaly(msg));
                    }
                    anomalies.push(msg);
                }
            }
        }
        let lifted = puncture_lift(&current, &p);
        let screening = match find_center(&lifted, config.candidate_cap) {
            Ok(s) => s,
            Err(GeometryError::CandidateCapExceeded(_)) => {
                break SearchStatus::CapExceeded(Cap::Candidate)
            }
            Err(e) => return Err(e.into()),
        };
        let step = project_from_center(&lifted, &screening.center)?;
        iterations.push(IterationRecord {
            curve: current.clone(),
            shear,
            p,
            fiber_points,
            center: screening.center.clone(),
            candidates_tried: screening.tried.len(),
            image: step.image.clone(),
        });
        current = step.image.clone();
        chain.steps.push(ChainStep::Projection(step));
    };
    let points: Vec<ReducedPoint> = points.into_iter().collect();
    for pt in &points {
        assert!(f.contains(&pt.x(), &pt.y()), "reported point {pt} is not on {f}");
    }
    let mut report = SearchReport {
        status,
        points,
        iterations,
        max_height: None,
        lift_anomalies: anomalies,
        chain,
    };
    if status == SearchStatus::Complete {
        report.max_height = max_height(&report)?;
    }
    Ok(report)
}

pub fn rational_json(v: &BigRat) -> Value {
    json!({"num": v.numer().to_string(), "den": v.denom().to_string()})
}

pub fn point_json(pt: &ReducedPoint) -> Value {
    json!({
        "x": rational_json(&pt.x()),
        "y": rational_json(&pt.y()),
        "height": pt.height().to_string(),
    })
}

/// The report in its fixed JSON layout.
pub fn report_json(report: &SearchReport) -> Value {
    json!({
        "status": report.status.to_string(),
        "points": report.points.iter().map(point_json).collect::<Vec<_>>(),
        "max_height": report.max_height.as_ref().map(|h| h.to_string()),
        "iterations": report.iterations.iter().map(|it| json!({
            "p": rational_json(&it.p),
            "fiber": it.fiber_points.iter().map(point_json).collect::<Vec<_>>(),
            "center": {"a": rational_json(&it.center.a), "b": rational_json(&it.center.b)},
            "image_degree": it.image.degree(),
        })).collect::<Vec<_>>(),
    })
}
