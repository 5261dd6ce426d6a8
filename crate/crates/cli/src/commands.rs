//! Implementations of the six subcommands. Each returns the stdout payload
//! plus a flag that is false when a verification-style command found a
//! property violation (exit code 1).

use lefschetz_core::ratio::Rational;
use lefschetz_core::{
    barycentric_subdivide, boundary_operator, chain_lefschetz, fixed_point_certificates,
    homological_lefschetz, homology_basis, induced_chain_map, is_hopf_simplicial,
    lefschetz_axiomatic, lefschetz_open_sum, lefschetz_report, subdivision_operator,
    verify_valuation, ChainOperator, Complex, MapPair, VerifyMode,
};

use crate::document::{document_from_problem, emit_document, Problem};
use crate::output::{
    fixed_point_entry, to_json, values_of, EulerReport, FullReport, HomologyReport, HopfReport,
    SingleValue,
};
use crate::CliError;

pub struct CommandOutput {
    pub stdout: String,
    pub ok: bool,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        Self { stdout, ok: true }
    }
}

pub fn euler(problem: &Problem) -> Result<CommandOutput, CliError> {
    let report = EulerReport {
        euler_characteristic: problem.selection.euler_characteristic(),
    };
    Ok(CommandOutput::ok(to_json(&report)))
}

pub fn homology(problem: &Problem) -> Result<CommandOutput, CliError> {
    let basis = homology_basis(problem.subdivision.refined());
    let induced_traces = match &problem.map {
        None => None,
        Some(_) => {
            let induced = basis.induced_map(&problem.whole_pair()?)?;
            Some(
                (0..induced.dims())
                    .map(|q| induced.trace(q).to_string())
                    .collect(),
            )
        }
    };
    let report = HomologyReport {
        betti: basis.betti(),
        induced_traces,
    };
    Ok(CommandOutput::ok(to_json(&report)))
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Axiomatic,
    OpenSum,
    Chain,
    Homological,
    All,
}

pub fn lefschetz(problem: &Problem, method: Method) -> Result<CommandOutput, CliError> {
    let pair = problem.pair()?;
    let single = |name: &str, value: Rational| {
        CommandOutput::ok(to_json(&SingleValue {
            method: name.into(),
            value: value.to_string(),
        }))
    };
    match method {
        Method::Axiomatic => Ok(single("axiomatic", lefschetz_axiomatic(&pair))),
        Method::OpenSum => Ok(single("open-sum", lefschetz_open_sum(&pair))),
        Method::Chain => Ok(single("chain", chain_lefschetz(&pair))),
        Method::Homological => Ok(single("homological", homological_lefschetz(&pair)?)),
        Method::All => {
            let report = lefschetz_report(&pair)?;
            let map = problem.map.as_ref().expect("pair() checked the map");
            let certificates = fixed_point_certificates(map);
            let full = FullReport {
                euler_characteristic: problem.selection.euler_characteristic(),
                betti: report.betti.clone(),
                values: values_of(&report),
                chain_traces: report.chain_traces.iter().map(|t| t.to_string()).collect(),
                homology_traces: report
                    .homology_traces
                    .iter()
                    .map(|t| t.to_string())
                    .collect(),
                agree: report.agree,
                hopf: HopfReport {
                    is_hopf_simplicial: is_hopf_simplicial(map),
                    fixed_points: certificates.iter().map(fixed_point_entry).collect(),
                },
            };
            Ok(CommandOutput {
                stdout: to_json(&full),
                ok: report.agree,
            })
        }
    }
}

pub fn hopf_check(problem: &Problem) -> Result<CommandOutput, CliError> {
    let map = problem.map.as_ref().ok_or_else(|| {
        CliError::Malformed("this command needs a \"map\" in the document".into())
    })?;
    let certificates = fixed_point_certificates(map);
    let report = HopfReport {
        is_hopf_simplicial: is_hopf_simplicial(map),
        fixed_points: certificates.iter().map(fixed_point_entry).collect(),
    };
    Ok(CommandOutput::ok(to_json(&report)))
}

pub fn subdivide(problem: &Problem, rounds: u32) -> Result<CommandOutput, CliError> {
    let mut sub = problem.subdivision.clone();
    for _ in 0..rounds {
        sub = barycentric_subdivide(&sub);
    }
    // the map and selection do not survive a change of vertex set
    let out = Problem {
        subdivision: sub,
        map: None,
        selection: Complex::empty(),
    };
    let mut doc = document_from_problem(&out);
    doc.subcomplex = None;
    Ok(CommandOutput::ok(emit_document(&doc)))
}

/// Runs the verification suites on the document: boundary and subdivision
/// chain identities always, and with a map also the induced chain-map law,
/// four-way agreement, the chain/homology trace identity, integrality, and
/// the valuation law per evaluator. Prints one line per suite.
pub fn verify(problem: &Problem, sample_pairs: usize) -> Result<CommandOutput, CliError> {
    let mut lines: Vec<String> = Vec::new();
    let mut ok = true;
    let suite = |passed: bool, line: String, lines: &mut Vec<String>| {
        lines.push(format!("{} {line}", if passed { "ok  " } else { "FAIL" }));
        passed
    };

    let sub = &problem.subdivision;
    let refined = sub.refined();
    let dim = refined.dimension().unwrap_or(0);

    let mut dd_ok = true;
    for q in 2..=dim {
        let composed = boundary_operator(refined, q - 1).compose(&boundary_operator(refined, q));
        dd_ok &= composed == ChainOperator::zero(q, q - 2);
    }
    ok &= suite(
        dd_ok,
        "boundary-squared: ∂∘∂ = 0 on the refined complex".into(),
        &mut lines,
    );

    let s = subdivision_operator(sub);
    let mut s_ok = true;
    for q in 1..=dim {
        let lhs = boundary_operator(refined, q).compose(&s.operator(q));
        let rhs = s.operator(q - 1).compose(&boundary_operator(sub.base(), q));
        s_ok &= lhs == rhs;
    }
    ok &= suite(
        s_ok,
        "subdivision-chain-map: ∂∘s = s∘∂ in every dimension".into(),
        &mut lines,
    );

    let Some(map) = &problem.map else {
        let stdout = lines.join("\n") + "\n";
        return Ok(CommandOutput { stdout, ok });
    };

    let mut f_ok = true;
    for q in 1..=dim {
        let lhs = boundary_operator(map.base(), q).compose(&induced_chain_map(map, q));
        let rhs = induced_chain_map(map, q - 1).compose(&boundary_operator(refined, q));
        f_ok &= lhs == rhs;
    }
    ok &= suite(
        f_ok,
        "induced-chain-map: ∂∘f = f∘∂ into the base".into(),
        &mut lines,
    );

    let whole = MapPair::whole(map.clone());
    match lefschetz_report(&whole) {
        Ok(report) => {
            ok &= suite(
                report.agree,
                format!(
                    "four-way-agreement: axiomatic {} open-sum {} chain {} homological {}",
                    report.value_axiomatic,
                    report.value_open_sum,
                    report.value_chain,
                    report.value_homological
                ),
                &mut lines,
            );
            ok &= suite(
                report.value_chain == report.value_homological,
                "hopf-trace: chain trace equals homology trace".into(),
                &mut lines,
            );
            ok &= suite(
                report.value_chain.is_integer(),
                "integrality: the Lefschetz number is an integer".into(),
                &mut lines,
            );
        }
        Err(e) => {
            ok &= suite(false, format!("four-way-agreement: {e}"), &mut lines);
        }
    }

    if problem.selection != *refined {
        let pair = problem.pair()?;
        let a = lefschetz_axiomatic(&pair);
        let o = lefschetz_open_sum(&pair);
        let c = chain_lefschetz(&pair);
        ok &= suite(
            a == o && o == c,
            format!("selection-agreement: axiomatic {a} open-sum {o} chain {c} on the selected subcomplex"),
            &mut lines,
        );
    }

    let mode = if refined.len() <= 7 {
        VerifyMode::Exhaustive
    } else {
        VerifyMode::Sampled {
            pairs: sample_pairs,
            seed: 7,
        }
    };
    for (name, evaluate) in [
        ("axiomatic", lefschetz_axiomatic as fn(&MapPair) -> Rational),
        ("open-sum", lefschetz_open_sum),
        ("chain", chain_lefschetz),
    ] {
        let verdict = verify_valuation(
            |a: &Complex| {
                evaluate(&MapPair::new(map.clone(), a.clone()).expect("sampled subcomplexes"))
            },
            refined,
            mode,
        )?;
        ok &= suite(
            verdict.is_pass(),
            format!("valuation-law ({name}): {verdict}"),
            &mut lines,
        );
    }

    let stdout = lines.join("\n") + "\n";
    Ok(CommandOutput { stdout, ok })
}
