//! `ratsearch`: decide and enumerate rational points of plane curves.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use ratsearch::geometry::{
    find_center, project_from_center, puncture_lift, screen_center, CandidateCenter, GeometryError,
    PlaneCurve, ScreenVerdict, SecantWitness,
};
use ratsearch::numeric::{enumerate_by_height, BigRat, ReducedPoint};
use ratsearch::oracle::{decide, holzer_bound, holzer_decide, parse_point_list, OracleError, OracleSpec};
use ratsearch::poly::{parse_polynomial, PolyError};
use ratsearch::search::{
    find_first_solution, point_json, rational_json, report_json, search_all, solve_fiber, SearchConfig,
    SearchError, SearchReport, SearchStatus,
};

const EXIT_CAP: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "ratsearch", version, about = "Rational points on plane curves of genus at least two")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ask the oracle whether the curve has a rational point.
    Decide {
        #[command(flatten)]
        equation: EquationArgs,
        #[arg(long, value_name = "SPEC")]
        oracle: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Find every rational point with repeated oracle calls.
    Search {
        #[command(flatten)]
        equation: EquationArgs,
        #[arg(long, value_name = "SPEC")]
        oracle: String,
        #[command(flatten)]
        caps: CapArgs,
        #[arg(long, default_value_t = 8, value_name = "N")]
        max_iter: usize,
        /// Treat a failed pullback of a fiber point as fatal.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Puncture one fiber and project from the first safe center.
    Transform {
        #[command(flatten)]
        equation: EquationArgs,
        /// Abscissa to puncture; defaults to that of the first point found.
        #[arg(long, value_name = "P", allow_hyphen_values = true)]
        at: Option<String>,
        #[command(flatten)]
        caps: CapArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Screen candidate projection centers for rational secants.
    Screen {
        #[command(flatten)]
        equation: EquationArgs,
        /// Abscissa to puncture; defaults to that of the first point found.
        #[arg(long, value_name = "P", allow_hyphen_values = true)]
        at: Option<String>,
        /// Screen every candidate of height at most N instead of stopping at
        /// the first safe one.
        #[arg(long, value_name = "N")]
        height_scan: Option<i64>,
        #[command(flatten)]
        caps: CapArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide a x^2 + b y^2 = c within the Holzer box.
    Holzer {
        #[arg(allow_hyphen_values = true)]
        a: BigInt,
        #[arg(allow_hyphen_values = true)]
        b: BigInt,
        #[arg(allow_hyphen_values = true)]
        c: BigInt,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct EquationArgs {
    /// Polynomial in x and y; the curve is its zero set.
    #[arg(short = 'e', long, value_name = "TEXT", allow_hyphen_values = true)]
    equation: Option<String>,
    #[arg(long, value_name = "PATH")]
    equation_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CapArgs {
    /// Height cap for the first-solution search.
    #[arg(long, default_value_t = 10_000, value_name = "N")]
    first_cap: u64,
    /// Number of candidate centers screened before giving up.
    #[arg(long, default_value_t = 10_000, value_name = "N")]
    candidate_cap: usize,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

/// Rendered output plus whether a cap stopped the computation.
struct Outcome {
    text: String,
    json: Value,
    capped: bool,
}

#[derive(Debug, PartialEq, Eq)]
enum EquationError {
    Syntax { offset: usize, message: String },
    WrongVariables(Vec<String>),
    ZeroPolynomial,
}

impl std::fmt::Display for EquationError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EquationError::Syntax { offset, message } => {
                write!(f, "syntax error at byte {offset}: {message}")
            }
            EquationError::WrongVariables(v) => {
                write!(f, "the equation must use exactly the variables x and y, found {v:?}")
            }
            EquationError::ZeroPolynomial => f.write_str("the equation is identically zero"),
        }
    }
}

/// Parses `text` as `expr = 0`; the curve is stored primitive and squarefree.
fn parse_equation(text: &str) -> Result<PlaneCurve, EquationError> {
    let f = parse_polynomial(text).map_err(|e| match e {
        PolyError::Syntax { offset, message } => EquationError::Syntax { offset, message },
        other => EquationError::Syntax {
            offset: 0,
            message: other.to_string(),
        },
    })?;
    let names: Vec<String> = f.vars().to_vec();
    if names != ["x", "y"] {
        return Err(EquationError::WrongVariables(names));
    }
    if f.is_zero() {
        return Err(EquationError::ZeroPolynomial);
    }
    PlaneCurve::new(&f, true).map_err(|e| match e {
        GeometryError::ZeroPolynomial => EquationError::ZeroPolynomial,
        _ => EquationError::WrongVariables(names),
    })
}

fn load_curve(args: &EquationArgs) -> Result<PlaneCurve, Failure> {
    let text = match (&args.equation, &args.equation_file) {
        (Some(t), None) => t.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?,
        _ => return Err(Failure::Input("give exactly one of --equation and --equation-file".into())),
    };
    parse_equation(text.trim()).map_err(|e| Failure::Input(e.to_string()))
}

fn parse_oracle(spec: &str) -> Result<OracleSpec, Failure> {
    if spec == "holzer" {
        return Ok(OracleSpec::Holzer);
    }
    if let Some(b) = spec.strip_prefix("height-bound:") {
        let b: u64 = b
            .parse()
            .map_err(|e| Failure::Input(format!("bad height bound `{b}`: {e}")))?;
        if b == 0 {
            return Err(Failure::Input(OracleError::InvalidBound.to_string()));
        }
        return Ok(OracleSpec::HeightBound(b));
    }
    if let Some(path) = spec.strip_prefix("list:") {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {path}: {e}")))?;
        let points = parse_point_list(&text).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
        return Ok(OracleSpec::PointList(points));
    }
    Err(Failure::Input(format!(
        "unknown oracle `{spec}`; expected height-bound:B, list:PATH or holzer"
    )))
}

fn parse_rational(s: &str) -> Result<BigRat, Failure> {
    s.parse::<BigRat>()
        .map_err(|_| Failure::Input(format!("`{s}` is not a rational number")))
}

fn oracle_failure(e: OracleError) -> Failure {
    Failure::Input(e.to_string())
}

fn search_failure(e: SearchError) -> Failure {
    match e {
        SearchError::Oracle(e) => oracle_failure(e),
        e @ SearchError::VerticalComponent(_) => Failure::Input(e.to_string()),
        e => Failure::Internal(e.to_string()),
    }
}

fn affine(pt: &ReducedPoint) -> String {
    format!("({}, {})", pt.x(), pt.y())
}

fn run_decide(curve: &PlaneCurve, oracle: &str) -> Result<Outcome, Failure> {
    let spec = parse_oracle(oracle)?;
    let verdict = decide(curve, &spec).map_err(oracle_failure)?;
    let text = match &verdict.witness {
        Some(w) => format!("{} {} height {}\n", verdict.answer, affine(w), w.height()),
        None => format!("{}\n", verdict.answer),
    };
    let json = json!({
        "answer": verdict.answer.to_string(),
        "witness": verdict.witness.as_ref().map(point_json),
    });
    Ok(Outcome { text, json, capped: false })
}

fn search_text(report: &SearchReport) -> String {
    let mut s = String::new();
    writeln!(s, "status: {}", report.status).unwrap();
    writeln!(s, "points: {}", report.points.len()).unwrap();
    for pt in &report.points {
        writeln!(s, "  {} height {}", affine(pt), pt.height()).unwrap();
    }
    match &report.max_height {
        Some(h) => writeln!(s, "max height: {h}").unwrap(),
        None => writeln!(s, "max height: none").unwrap(),
    }
    writeln!(s, "iterations: {}", report.iterations.len()).unwrap();
    for (k, it) in report.iterations.iter().enumerate() {
        let shear = it.shear.as_ref().map(|c| format!("shear x -> x + {c}*y, ")).unwrap_or_default();
        writeln!(
            s,
            "  {}: {shear}p = {}, fiber {}, center (a, b) = ({}, {}), image degree {}",
            k + 1,
            it.p,
            it.fiber_points.iter().map(affine).collect::<Vec<_>>().join(" "),
            it.center.a,
            it.center.b,
            it.image.degree()
        )
        .unwrap();
    }
    for a in &report.lift_anomalies {
        writeln!(s, "lift anomaly: {a}").unwrap();
    }
    s
}

fn run_search(curve: &PlaneCurve, oracle: &str, caps: &CapArgs, max_iter: usize, strict: bool) -> Result<Outcome, Failure> {
    let mut config = SearchConfig::new(parse_oracle(oracle)?);
    config.first_solution_height_cap = caps.first_cap;
    config.candidate_cap = caps.candidate_cap;
    config.max_iterations = max_iter;
    config.strict_lift = strict;
    let report = search_all(curve, &config).map_err(search_failure)?;
    Ok(Outcome {
        text: search_text(&report),
        json: report_json(&report),
        capped: report.status != SearchStatus::Complete,
    })
}

/// The curve after any boundary shear, and the abscissa to puncture.
fn prepare(curve: &PlaneCurve, at: Option<&str>, caps: &CapArgs) -> Result<Option<(PlaneCurve, Option<BigInt>, BigRat)>, Failure> {
    let shear = curve.boundary_shear();
    let current = match &shear {
        Some(c) => curve.shear(c),
        None => curve.clone(),
    };
    let p = match at {
        Some(s) => parse_rational(s)?,
        None => match find_first_solution(&current, caps.first_cap) {
            Some(pt) => pt.x(),
            None => return Ok(None),
        },
    };
    Ok(Some((current, shear, p)))
}

fn no_first_solution(cap: u64) -> Outcome {
    Outcome {
        text: format!("status: CapExceeded(FirstSolution)\nno point of height <= {cap}; pass --at\n"),
        json: json!({"status": "CapExceeded(FirstSolution)"}),
        capped: true,
    }
}

fn shear_text(shear: &Option<BigInt>) -> String {
    match shear {
        Some(c) => format!("x -> x + {c}*y"),
        None => "none".into(),
    }
}

fn center_json(c: &CandidateCenter) -> Value {
    json!({"a": rational_json(&c.a), "b": rational_json(&c.b)})
}

fn run_transform(curve: &PlaneCurve, at: Option<&str>, caps: &CapArgs) -> Result<Outcome, Failure> {
    let Some((current, shear, p)) = prepare(curve, at, caps)? else {
        return Ok(no_first_solution(caps.first_cap));
    };
    let fiber: Vec<ReducedPoint> = solve_fiber(&current, &p)
        .map_err(search_failure)?
        .iter()
        .map(|y| ReducedPoint::from_affine(&p, y))
        .collect();
    let lifted = puncture_lift(&current, &p);
    let screening = match find_center(&lifted, caps.candidate_cap) {
        Ok(s) => s,
        Err(GeometryError::CandidateCapExceeded(n)) => {
            return Ok(Outcome {
                text: format!("status: CapExceeded(Candidate)\nno safe center among {n} candidates\n"),
                json: json!({"status": "CapExceeded(Candidate)"}),
                capped: true,
            })
        }
        Err(e) => return Err(Failure::Internal(e.to_string())),
    };
    let step = project_from_center(&lifted, &screening.center).map_err(|e| Failure::Internal(e.to_string()))?;
    let center = &screening.center;
    let mut text = String::new();
    writeln!(text, "curve: {current}").unwrap();
    writeln!(text, "shear: {}", shear_text(&shear)).unwrap();
    writeln!(text, "p = {p}").unwrap();
    writeln!(text, "fiber: {}", fiber.iter().map(affine).collect::<Vec<_>>().join(" ")).unwrap();
    writeln!(
        text,
        "center: (a, b) = ({}, {}) after {} candidates",
        center.a,
        center.b,
        screening.tried.len()
    )
    .unwrap();
    writeln!(text, "image degree: {}", step.image.degree()).unwrap();
    writeln!(text, "image: {}", step.image).unwrap();
    let json = json!({
        "status": "Complete",
        "curve": current.to_string(),
        "shear": shear.as_ref().map(|c| c.to_string()),
        "p": rational_json(&p),
        "fiber": fiber.iter().map(point_json).collect::<Vec<_>>(),
        "center": center_json(center),
        "candidates_tried": screening.tried.len(),
        "image_degree": step.image.degree(),
        "image": step.image.to_string(),
    });
    Ok(Outcome { text, json, capped: false })
}

fn verdict_parts(v: &ScreenVerdict) -> (&'static str, String) {
    match v {
        ScreenVerdict::SafeCenter => ("SafeCenter", String::new()),
        ScreenVerdict::RationalSecant(SecantWitness::RationalPair(a, b)) => {
            ("RationalSecant", format!("{a} and {b}"))
        }
        ScreenVerdict::RationalSecant(SecantWitness::QuadraticPair { min_poly, .. }) => {
            ("RationalSecant", format!("conjugate pair over {min_poly} = 0"))
        }
        ScreenVerdict::PositiveDimensional => ("PositiveDimensional", String::new()),
        ScreenVerdict::DegenerateCenter(why) => ("DegenerateCenter", why.clone()),
    }
}

fn run_screen(curve: &PlaneCurve, at: Option<&str>, height_scan: Option<i64>, caps: &CapArgs) -> Result<Outcome, Failure> {
    if height_scan.is_some_and(|h| h < 1) {
        return Err(Failure::Input("--height-scan must be at least 1".into()));
    }
    let Some((current, shear, p)) = prepare(curve, at, caps)? else {
        return Ok(no_first_solution(caps.first_cap));
    };
    let lifted = puncture_lift(&current, &p);
    let candidates: Box<dyn Iterator<Item = ReducedPoint>> = match height_scan {
        Some(h) => Box::new(enumerate_by_height(h)),
        None => Box::new(enumerate_by_height(i64::MAX).take(caps.candidate_cap)),
    };
    let mut rows = Vec::new();
    let mut first_safe = None;
    for pt in candidates {
        let center = CandidateCenter::new(pt.x(), pt.y());
        let verdict = screen_center(&lifted, &center);
        let safe = verdict.is_safe();
        rows.push((center.clone(), verdict));
        if safe && first_safe.is_none() {
            first_safe = Some(center);
            if height_scan.is_none() {
                break;
            }
        }
    }
    let mut text = String::new();
    writeln!(text, "curve: {current}").unwrap();
    writeln!(text, "shear: {}", shear_text(&shear)).unwrap();
    writeln!(text, "p = {p}").unwrap();
    for (c, v) in &rows {
        let (name, detail) = verdict_parts(v);
        let sep = if detail.is_empty() { "" } else { ": " };
        writeln!(text, "(a, b) = ({}, {}) {name}{sep}{detail}", c.a, c.b).unwrap();
    }
    match &first_safe {
        Some(c) => writeln!(text, "first safe center: ({}, {})", c.a, c.b).unwrap(),
        None => writeln!(text, "first safe center: none").unwrap(),
    }
    let json = json!({
        "curve": current.to_string(),
        "shear": shear.as_ref().map(|c| c.to_string()),
        "p": rational_json(&p),
        "candidates": rows.iter().map(|(c, v)| {
            let (name, detail) = verdict_parts(v);
            json!({"a": rational_json(&c.a), "b": rational_json(&c.b), "verdict": name, "detail": detail})
        }).collect::<Vec<_>>(),
        "first_safe": first_safe.as_ref().map(center_json),
    });
    Ok(Outcome {
        text,
        json,
        capped: first_safe.is_none() && height_scan.is_none(),
    })
}

fn run_holzer(a: &BigInt, b: &BigInt, c: &BigInt) -> Result<Outcome, Failure> {
    let found = holzer_decide(a, b, c).map_err(oracle_failure)?;
    let bound = holzer_bound(a, b, c);
    let text = match &found {
        Some(pt) => format!("solution ({}, {}, {}) (Holzer bound {bound})\n", pt.p(), pt.q(), pt.r()),
        None => format!("no solution (Holzer bound {bound})\n"),
    };
    let json = json!({
        "bound": bound.to_string(),
        "solution": found.as_ref().map(|pt| json!({
            "p": pt.p().to_string(),
            "q": pt.q().to_string(),
            "r": pt.r().to_string(),
        })),
    });
    Ok(Outcome { text, json, capped: false })
}

fn run(cli: Cli) -> Result<(Outcome, Format), Failure> {
    Ok(match cli.command {
        Command::Decide { equation, oracle, output } => (run_decide(&load_curve(&equation)?, &oracle)?, output.format),
        Command::Search { equation, oracle, caps, max_iter, strict, output } => {
            if max_iter == 0 || caps.first_cap == 0 || caps.candidate_cap == 0 {
                return Err(Failure::Input("caps must be at least 1".into()));
            }
            (run_search(&load_curve(&equation)?, &oracle, &caps, max_iter, strict)?, output.format)
        }
        Command::Transform { equation, at, caps, output } => {
            (run_transform(&load_curve(&equation)?, at.as_deref(), &caps)?, output.format)
        }
        Command::Screen { equation, at, height_scan, caps, output } => {
            (run_screen(&load_curve(&equation)?, at.as_deref(), height_scan, &caps)?, output.format)
        }
        Command::Holzer { a, b, c, output } => (run_holzer(&a, &b, &c)?, output.format),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((outcome, format)) => {
            match format {
                Format::Text => print!("{}", outcome.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&outcome.json).expect("serializable")),
            }
            ExitCode::from(if outcome.capped { EXIT_CAP } else { 0 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equations_are_normalized() {
        let c = parse_equation("x^4 + y^4 - 1").unwrap();
        assert_eq!(c.degree(), 4);
        let c = parse_equation("2*x^2 - 2*y^2").unwrap();
        assert_eq!(c.f(), PlaneCurve::parse("x^2-y^2", true).unwrap().f());
        let c = parse_equation("-(x^2 - y^3 + 1)").unwrap();
        assert_eq!(c.to_string(), parse_equation(&c.to_string()).unwrap().to_string());
    }

    #[test]
    fn equation_errors() {
        assert_eq!(
            parse_equation("x^4 + z^4 - 1"),
            Err(EquationError::WrongVariables(vec!["x".into(), "z".into()]))
        );
        assert!(matches!(parse_equation("x^4 - 1"), Err(EquationError::WrongVariables(_))));
        assert!(matches!(parse_equation("x^4 + * y"), Err(EquationError::Syntax { offset: 6, .. })));
        assert_eq!(parse_equation("x*y - y*x"), Err(EquationError::ZeroPolynomial));
    }

    #[test]
    fn oracle_specs() {
        assert_eq!(parse_oracle("height-bound:100").unwrap(), OracleSpec::HeightBound(100));
        assert_eq!(parse_oracle("holzer").unwrap(), OracleSpec::Holzer);
        for bad in ["height-bound:0", "height-bound:x", "list:/nonexistent/file", "magic"] {
            assert!(matches!(parse_oracle(bad), Err(Failure::Input(_))), "{bad}");
        }
    }
}
