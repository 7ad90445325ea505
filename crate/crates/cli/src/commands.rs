use std::fmt::Write as _;
use std::fs;
use std::io::Read;

use hodge_core::atypicality::{AtypicalityError, CodimInput, ForcingReport, NLInput};
use hodge_core::jacobian::{residue_degree, Certificate, CouplingLength, Term, TermInput};
use hodge_core::rootsys::build_root_system_with_budget;
use hodge_core::suite::{run_grid, GridConfig, GridSummary};
use hodge_core::{
    build_root_system, correction_term, coupling_length, forcing_check, g_nonvanishing_certificate,
    grade as grade_by, is_atypical, macaulay_check, nl_bounds, CartanSpec, GradingElement,
    HypersurfaceSpec, JacobianError, JacobianRing, Root, RootError, SimpleType, Status,
    VerdictReport,
};
use serde::Serialize;

use crate::report::{tuple, Report};
use crate::CliError;

const DEFAULT_BUDGET: usize = 10_000;

fn invalid(e: impl ToString) -> CliError {
    CliError::Invalid(e.to_string())
}

fn root_error(e: RootError) -> CliError {
    match e {
        RootError::ClosureBudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => invalid(other),
    }
}

fn atyp_error(e: AtypicalityError) -> CliError {
    invalid(e)
}

fn jac_error(e: JacobianError) -> CliError {
    invalid(e)
}

/// Inline JSON, `-` for stdin, or a file path.
fn read_input(arg: &str) -> Result<String, CliError> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Io(format!("cannot read stdin: {e}")))?;
        return Ok(buf);
    }
    fs::read_to_string(arg).map_err(|e| CliError::Io(format!("cannot read {arg}: {e}")))
}

fn parse_json<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T, CliError> {
    let raw = read_input(arg)?;
    serde_json::from_str(&raw).map_err(|e| invalid(format!("malformed input: {e}")))
}

#[derive(Serialize)]
struct RootsReport {
    root_system: String,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    positive_root_count: usize,
    dimension: usize,
    highest_root: Root,
    positive_roots: Vec<Root>,
}

pub fn roots(
    kind: Option<&str>,
    matrix: Option<&str>,
    budget: Option<usize>,
) -> Result<Report, CliError> {
    let spec = match (kind, matrix) {
        (_, Some(m)) => {
            let rows: Vec<Vec<i64>> = serde_json::from_str(m)
                .map_err(|e| invalid(format!("matrix must be a JSON array of integer rows: {e}")))?;
            CartanSpec::Custom(rows)
        }
        (Some(k), None) => k.parse().map_err(root_error)?,
        (None, None) => return Err(invalid("give a type or --matrix")),
    };
    let rs = build_root_system_with_budget(spec, budget.unwrap_or(DEFAULT_BUDGET))
        .map_err(root_error)?;
    let data = RootsReport {
        root_system: rs.label(),
        rank: rs.rank(),
        cartan: rs.cartan().to_vec(),
        positive_root_count: rs.positive_roots().len(),
        dimension: rs.dim(),
        highest_root: rs.highest_root().clone(),
        positive_roots: rs.positive_roots().to_vec(),
    };
    let mut text = String::new();
    let _ = writeln!(text, "root system: {}", data.root_system);
    let _ = writeln!(text, "rank: {}", data.rank);
    let _ = writeln!(text, "dimension: {}", data.dimension);
    let _ = writeln!(text, "positive roots: {}", data.positive_root_count);
    let _ = writeln!(text, "highest root: {}", data.highest_root);
    Ok(Report::new(&data, text, false))
}

#[derive(Serialize)]
struct DegreeDim {
    degree: i64,
    dim: usize,
}

#[derive(Serialize)]
struct GradeReport {
    root_system: String,
    grading_element: Vec<i64>,
    level: i64,
    max_degree: i64,
    classical: bool,
    generated_in_degree_one: bool,
    generated_in_degree_one_oracle: bool,
    degrees: Vec<DegreeDim>,
}

pub fn grade(kind: &str, element: &str) -> Result<Report, CliError> {
    let spec: CartanSpec = kind.parse().map_err(root_error)?;
    let rs = build_root_system(spec).map_err(root_error)?;
    let e: GradingElement = element.parse().map_err(invalid)?;
    let dec = grade_by(&rs, &e).map_err(invalid)?;
    let max = dec.max_degree();
    let data = GradeReport {
        root_system: rs.label(),
        grading_element: e.values().to_vec(),
        level: dec.level(),
        max_degree: max,
        classical: dec.is_classical(),
        generated_in_degree_one: dec.generates_criterion(),
        generated_in_degree_one_oracle: dec.generates_oracle(),
        degrees: (-max..=max)
            .map(|k| DegreeDim {
                degree: k,
                dim: dec.dim(k),
            })
            .collect(),
    };
    let mut text = String::new();
    let _ = writeln!(text, "root system: {}", data.root_system);
    let _ = writeln!(text, "grading element: {}", tuple(&data.grading_element));
    let _ = writeln!(text, "level = {}", data.level);
    let _ = writeln!(text, "classical: {}", data.classical);
    let _ = writeln!(
        text,
        "g^1 generates g^+: {}",
        data.generated_in_degree_one
    );
    for dd in &data.degrees {
        let _ = writeln!(text, "dim g^{} = {}", dd.degree, dd.dim);
    }
    Ok(Report::new(&data, text, false))
}

#[derive(Serialize)]
struct VerifyReport {
    verdict: Status,
    counterexamples: usize,
    #[serde(flatten)]
    summary: GridSummary,
}

pub fn verify(max_rank: usize, max_e: i64, types: Option<Vec<String>>) -> Result<Report, CliError> {
    let types = types
        .map(|letters| {
            letters
                .iter()
                .map(|s| {
                    let mut chars = s.trim().chars();
                    match (chars.next(), chars.next()) {
                        (Some(c), None) => SimpleType::from_letter(c.to_ascii_uppercase())
                            .ok_or_else(|| invalid(format!("unknown type letter `{s}`"))),
                        _ => Err(invalid(format!("unknown type letter `{s}`"))),
                    }
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let config = GridConfig {
        max_rank,
        max_e,
        types,
    };
    let summary = run_grid(&config).map_err(root_error)?;
    let data = VerifyReport {
        verdict: Status::from_bool(summary.all_hold()),
        counterexamples: summary.counterexamples(),
        summary,
    };
    let s = &data.summary;
    let mut text = String::new();
    let _ = writeln!(text, "root systems: {}", s.root_systems.join(" "));
    let _ = writeln!(text, "grid points: {}", s.points);
    let _ = writeln!(text, "generation criterion true: {}", s.criterion_true);
    let _ = writeln!(
        text,
        "criterion agrees with closure oracle: {}/{}",
        s.criterion_matches_oracle, s.points
    );
    let _ = writeln!(
        text,
        "level agrees three ways: {}/{}",
        s.level_three_way_agreement, s.points
    );
    let _ = writeln!(text, "bracket compatible: {}/{}", s.bracket_compatible, s.points);
    let _ = writeln!(text, "generated with level >= 3: {}", s.applicable);
    if s.applicable == 0 {
        let _ = writeln!(
            text,
            "no generated grading reaches level 3; closure checks are vacuous"
        );
    } else {
        let _ = writeln!(
            text,
            "high-degree closure contains degree one: {}/{}",
            s.high_degree_closure_holds, s.applicable
        );
        let _ = writeln!(
            text,
            "bracket witness found: {}/{} ({} from simple roots)",
            s.witness_found, s.applicable, s.simple_witnesses
        );
        let _ = writeln!(
            text,
            "positive part recovered: {}/{}",
            s.positive_part_recovery_holds, s.applicable
        );
    }
    for f in &s.failures {
        let _ = writeln!(
            text,
            "counterexample: {} E={} {}: {}",
            f.root_system, f.element, f.check, f.detail
        );
    }
    if s.all_hold() {
        let _ = writeln!(text, "all verdicts hold; 0 counterexamples");
    } else {
        let _ = writeln!(text, "verdicts fail; {} counterexamples", data.counterexamples);
    }
    let failed = !s.all_hold();
    Ok(Report::new(&data, text, failed))
}

#[derive(Serialize)]
struct HypersurfaceReport {
    n: usize,
    d: usize,
    form: &'static str,
    socle_degree: usize,
    /// Residue degree housing `H^{p,n-p}`, for `p = n..0`.
    residue_degrees: Vec<Option<usize>>,
    hodge_numbers_prim: Vec<usize>,
    coupling_length: CouplingLength,
    certificate: Certificate,
    macaulay: VerdictReport,
}

pub fn hypersurface(
    n: usize,
    d: usize,
    k: usize,
    explicit: Option<&str>,
) -> Result<Report, CliError> {
    let (spec, form) = match explicit {
        Some(arg) => {
            let raw: Vec<TermInput> = parse_json(arg)?;
            let terms = raw
                .into_iter()
                .map(Term::try_from)
                .collect::<Result<Vec<_>, _>>()
                .map_err(jac_error)?;
            (
                HypersurfaceSpec::explicit(n, d, terms).map_err(jac_error)?,
                "explicit",
            )
        }
        None => (HypersurfaceSpec::fermat(n, d).map_err(jac_error)?, "fermat"),
    };
    let jr = JacobianRing::new(spec);
    jr.check_all_degrees().map_err(jac_error)?;
    let data = HypersurfaceReport {
        n,
        d,
        form,
        socle_degree: jr.socle_degree(),
        residue_degrees: (0..=n).rev().map(|p| residue_degree(n, d, p)).collect(),
        hodge_numbers_prim: jr.hodge_numbers_by_elimination().map_err(jac_error)?,
        coupling_length: coupling_length(&jr).map_err(jac_error)?,
        certificate: g_nonvanishing_certificate(&jr, k).map_err(jac_error)?,
        macaulay: macaulay_check(&jr).map_err(jac_error)?,
    };
    let mut text = String::new();
    let _ = writeln!(text, "hypersurface: n={n} d={d} ({form})");
    let _ = writeln!(text, "socle degree: {}", data.socle_degree);
    let _ = writeln!(
        text,
        "primitive Hodge numbers: {}",
        tuple(&data.hodge_numbers_prim)
    );
    let _ = writeln!(text, "coupling length: {}", data.coupling_length.value);
    if let Some(note) = &data.coupling_length.note {
        let _ = writeln!(text, "  {note}");
    }
    let _ = writeln!(text, "certificate g^-{k},{k} nonzero: {}", data.certificate.nonzero);
    for t in &data.certificate.terms {
        let _ = writeln!(
            text,
            "  p={}: R^{} -> R^{} rank {}",
            t.p, t.source_degree, t.target_degree, t.rank
        );
    }
    let _ = writeln!(text, "Macaulay nonvanishing: {}", data.macaulay.verdict.as_str());
    let failed = data.macaulay.verdict == Status::Fails;
    Ok(Report::new(&data, text, failed))
}

#[derive(Serialize)]
struct AtypicalReport {
    expected_codim: u64,
    actual_codim: u64,
    atypical: bool,
    correction: u64,
    forcing: ForcingReport,
}

pub fn atypical(arg: &str) -> Result<Report, CliError> {
    let input: CodimInput = parse_json(arg)?;
    let v = is_atypical(&input).map_err(atyp_error)?;
    let forcing = forcing_check(&input).map_err(atyp_error)?;
    let correction = correction_term(v.expected_codim as i64, v.actual_codim as i64)
        .map_err(atyp_error)?;
    let data = AtypicalReport {
        expected_codim: v.expected_codim,
        actual_codim: v.actual_codim,
        atypical: v.atypical,
        correction,
        forcing,
    };
    let mut text = String::new();
    let _ = writeln!(text, "expected codimension: {}", data.expected_codim);
    let _ = writeln!(text, "actual codimension: {}", data.actual_codim);
    let _ = writeln!(
        text,
        "verdict: {}",
        if data.atypical { "atypical" } else { "typical" }
    );
    let _ = writeln!(text, "correction term: {}", data.correction);
    let f = &data.forcing;
    if let Some(note) = &f.note {
        let _ = writeln!(text, "{note}");
    } else {
        let deficits: Vec<String> = f.deficits.iter().map(|(p, x)| format!("{p}:{x}")).collect();
        let _ = writeln!(text, "forced degrees: {}", tuple(&f.forced_degrees));
        let _ = writeln!(text, "deficits: {}", deficits.join(" "));
        let _ = writeln!(text, "forcing violated: {}", f.violates_forcing);
    }
    let _ = writeln!(text, "tangent deficit: {}", f.tangent_deficit);
    Ok(Report::new(&data, text, false))
}

pub fn nl(arg: &str) -> Result<Report, CliError> {
    let input: NLInput = parse_json(arg)?;
    let b = nl_bounds(&input).map_err(atyp_error)?;
    let mut text = String::new();
    let _ = writeln!(text, "weight: {}", b.weight);
    let _ = writeln!(text, "naive upper bound: {}", b.naive_upper);
    if let Some(c) = b.coarse_upper {
        let _ = writeln!(text, "coarse upper bound: {c}");
    }
    let _ = writeln!(text, "refined upper bound: {}", b.refined_upper);
    if let Some(l) = b.lower {
        let _ = writeln!(text, "lower bound: {l}");
    }
    Ok(Report::new(&b, text, false))
}

#[derive(Serialize)]
struct CorrectionReport {
    expected: i64,
    actual: i64,
    correction: u64,
}

pub fn correction(expected: i64, actual: i64) -> Result<Report, CliError> {
    let c = correction_term(expected, actual).map_err(atyp_error)?;
    let data = CorrectionReport {
        expected,
        actual,
        correction: c,
    };
    Ok(Report::new(&data, format!("correction term: {c}\n"), false))
}
