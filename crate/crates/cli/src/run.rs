//! Job dispatch.

use std::time::Instant;

use carlitz_core::carlitz::{act, TensorPoint};
use carlitz_core::criteria::{check_inf_criterion, check_valpha_criterion, CriterionReport};
use carlitz_core::ff::{Field, FieldSpec, RatFunc, Val, DEFAULT_SEED};
use carlitz_core::places::Place;
use carlitz_core::relsolve::{brute_force_relations, c_values, relation_generators, RelationProblem};
use carlitz_core::series::{
    cpl_inf, cpl_v, guard_digits, log_at, place_completion, verify_relation, Completion, Laurent, DEFAULT_PRECISION,
};
use carlitz_core::Error;
use thiserror::Error;

use crate::job::*;
use crate::parse::{parse_fq_t, parse_ratfunc, parse_tpoly, print_constant, print_poly, print_t_poly, ParseError};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Internal(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Domain(_) => 2,
            RunError::Internal(_) => 1,
        }
    }

    fn doc(&self) -> ErrorDoc {
        let kind = match self {
            RunError::Domain(_) => "domain",
            RunError::Internal(_) => "internal",
        };
        ErrorDoc { kind: kind.into(), message: self.to_string() }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => RunError::Internal(e.to_string()),
            _ => RunError::Domain(e.to_string()),
        }
    }
}

fn parse_err(what: &str, idx: usize) -> impl Fn(ParseError) -> RunError + '_ {
    move |e| RunError::Domain(format!("{what} {idx}: {e}"))
}

fn domain<T>(msg: impl Into<String>) -> Result<T, RunError> {
    Err(RunError::Domain(msg.into()))
}

pub fn place_name(w: &Place) -> String {
    match w {
        Place::Infinity => "inf".into(),
        Place::Finite(p) => print_poly(p),
    }
}

fn parse_place(field: &Field, s: &str) -> Result<Place, RunError> {
    if s.trim() == "inf" {
        return Ok(Place::Infinity);
    }
    let r = parse_ratfunc(field, s).map_err(parse_err("place", 0))?;
    let Some(p) = r.as_poly() else {
        return domain(format!("place {s} is not a polynomial"));
    };
    Ok(Place::finite(p.clone())?)
}

fn header(field: &Field) -> FieldHeader {
    let modulus = field.modulus();
    let mut terms = Vec::new();
    for (k, &c) in modulus.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "g".into(),
            _ => format!("g^{k}"),
        };
        terms.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    FieldHeader {
        p: field.p(),
        e: field.e(),
        m: field.m(),
        q: field.q(),
        generator_modulus: if terms.is_empty() { "0".into() } else { terms.join("+") },
    }
}

fn parse_points(field: &Field, job: &JobSpec) -> Result<Vec<TensorPoint>, RunError> {
    if job.points.is_empty() {
        return domain("no points given");
    }
    job.points
        .iter()
        .enumerate()
        .map(|(i, coords)| {
            if coords.len() != job.n {
                return domain(format!("point {} has {} coordinates, expected n = {}", i + 1, coords.len(), job.n));
            }
            let coords = coords
                .iter()
                .map(|s| parse_ratfunc(field, s).map_err(parse_err("point", i + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(TensorPoint::new(coords)?)
        })
        .collect()
}

fn parse_alphas(field: &Field, job: &JobSpec) -> Result<Vec<RatFunc>, RunError> {
    job.alphas
        .iter()
        .enumerate()
        .map(|(i, s)| parse_ratfunc(field, s).map_err(parse_err("alpha", i + 1)))
        .collect()
}

fn series_doc(s: &Laurent, completion: &str) -> SeriesDoc {
    SeriesDoc {
        completion: completion.into(),
        valuation: s.valuation(),
        digits: s.digits().iter().map(|&d| print_constant(s.field(), d)).collect(),
        precision: s.precision(),
    }
}

fn report_doc(r: &CriterionReport) -> ReportDoc {
    ReportDoc {
        cond1: r.cond1,
        cond1_solver: r.cond1_solver,
        points: r
            .points
            .iter()
            .map(|p| PointCheckDoc {
                ord_inf: p.ord_inf.finite(),
                cond2: p.cond2,
                cond3: p.cond3,
                cond3_failures: p.cond3_failures.iter().map(|(w, v)| (place_name(w), *v)).collect(),
                bound: p.bound,
            })
            .collect(),
        overall: r.overall,
        applicable: r.applicable,
    }
}

/// Value of a series at the requested place.
fn evaluate(n: usize, alpha: &RatFunc, place: &Place, prec: i64) -> Result<Laurent, RunError> {
    Ok(match place {
        Place::Infinity => cpl_inf(n, alpha, prec)?,
        v => cpl_v(n, alpha, v, prec)?,
    })
}

fn completion_of(place: &Place) -> Result<Completion, RunError> {
    Ok(match place {
        Place::Infinity => Completion::Infinity,
        v => place_completion(v)?,
    })
}

/// Runs `command` on `job` and returns the field header and output.
pub fn run(command: Command, job: &JobSpec) -> Result<(FieldHeader, Output), RunError> {
    if let Some(c) = job.command {
        if c != command {
            return domain(format!("job is for {}, invoked as {}", c.name(), command.name()));
        }
    }
    if job.n == 0 {
        return domain("n must be positive");
    }
    let spec = FieldSpec::new(job.field.p, job.field.e, job.field.m);
    let field = Field::with_seed(spec, job.options.seed.unwrap_or(DEFAULT_SEED))?;
    let prec = job.options.precision.unwrap_or(DEFAULT_PRECISION);
    if prec <= 0 {
        return domain("precision must be positive");
    }
    let place = match &job.options.place {
        Some(s) => parse_place(&field, s)?,
        None => Place::Infinity,
    };
    let n = job.n;
    let output = match command {
        Command::Relations => {
            let problem = RelationProblem::new(parse_points(&field, job)?)?;
            let module = relation_generators(&problem)?;
            let enumerated = match job.options.degree_bound {
                Some(b) => Some(brute_force_relations(&problem, b)?.len()),
                None => None,
            };
            Output::Relations {
                generators: module.generators.iter().map(|g| g.iter().map(print_t_poly).collect()).collect(),
                c_values: c_values(&problem)?.iter().map(|(w, c)| (place_name(w), *c)).collect(),
                divisor: module.divisor.iter().map(|(w, c)| (place_name(w), c)).collect(),
                d: module.rr_dim,
                degree_bound: module.degree_bound,
                enumerated,
            }
        }
        Command::CheckInf => {
            if job.polynomials.is_empty() {
                return domain("no polynomials given");
            }
            let fs = job
                .polynomials
                .iter()
                .enumerate()
                .map(|(i, s)| parse_tpoly(&field, s).map_err(parse_err("polynomial", i + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            Output::Report { report: report_doc(&check_inf_criterion(&fs, n)?) }
        }
        Command::CheckV => {
            if place == Place::Infinity {
                return domain("check-v needs a finite place in options.place");
            }
            let alphas = parse_alphas(&field, job)?;
            Output::Report { report: report_doc(&check_valpha_criterion(&alphas, &place, n)?) }
        }
        Command::EvalCpl => {
            let name = place_name(&place);
            let values = parse_alphas(&field, job)?
                .iter()
                .map(|a| evaluate(n, a, &place, prec).map(|s| series_doc(&s, &name)))
                .collect::<Result<Vec<_>, _>>()?;
            Output::Series { values }
        }
        Command::EvalLog => {
            let completion = completion_of(&place)?;
            let name = place_name(&place);
            let logs = parse_points(&field, job)?
                .iter()
                .map(|p| log_at(p, completion, prec).map(|v| v.iter().map(|s| series_doc(s, &name)).collect()))
                .collect::<Result<Vec<_>, _>>()?;
            Output::Logs { logs }
        }
        Command::Verify => {
            let alphas = parse_alphas(&field, job)?;
            if alphas.len() != job.coefficients.len() {
                return domain(format!("{} alphas but {} coefficients", alphas.len(), job.coefficients.len()));
            }
            let coeffs = job
                .coefficients
                .iter()
                .enumerate()
                .map(|(i, s)| parse_ratfunc(&field, s).map_err(parse_err("coefficient", i + 1)))
                .collect::<Result<Vec<_>, _>>()?;
            let work = prec + guard_digits(&coeffs, completion_of(&place)?);
            let values = alphas.iter().map(|a| evaluate(n, a, &place, work)).collect::<Result<Vec<_>, _>>()?;
            let residual = verify_relation(&values, &coeffs)?;
            Output::Verify {
                residual_valuation: residual.finite(),
                precision: prec,
                verified: residual >= Val::Finite(prec),
            }
        }
        Command::Act => {
            let Some(a) = &job.a else {
                return domain("act needs `a`");
            };
            let a = parse_fq_t(&field, a).map_err(parse_err("a", 0))?;
            let images = parse_points(&field, job)?
                .iter()
                .map(|p| act(&a, p).map(|img| img.coords().iter().map(crate::parse::print_ratfunc).collect()))
                .collect::<Result<Vec<_>, _>>()?;
            Output::Act { images }
        }
    };
    Ok((header(&field), output))
}

/// Runs a job document and returns the result document and exit code.
/// `seed` and `precision` override the job options.
pub fn execute(command: Command, input: &str, seed: Option<u64>, precision: Option<i64>) -> (JobResult, i32) {
    let start = Instant::now();
    let outcome = serde_json::from_str::<JobSpec>(input)
        .map_err(|e| RunError::Domain(format!("invalid job document: {e}")))
        .and_then(|mut job| {
            if seed.is_some() {
                job.options.seed = seed;
            }
            if precision.is_some() {
                job.options.precision = precision;
            }
            run(command, &job)
        });
    let timing_ms = start.elapsed().as_secs_f64() * 1e3;
    match outcome {
        Ok((field, output)) => (
            JobResult { command: Some(command.name().into()), field: Some(field), output: Some(output), error: None, timing_ms },
            0,
        ),
        Err(e) => {
            let code = e.exit_code();
            (JobResult { command: Some(command.name().into()), field: None, output: None, error: Some(e.doc()), timing_ms }, code)
        }
    }
}
