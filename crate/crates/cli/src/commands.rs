use std::fmt;

use qci_core::invariants::{ideal_invariants, local_invariants};
use qci_core::qci::{
    exact_zero_divisor_check, ezd_search_linear, grade, is_complete_intersection, qci_analyze,
    Verdict,
};
use qci_core::quotient::QuotientRing;
use qci_core::resolution::{minimal_resolution, ModuleInput};
use qci_core::series::{deviations, graded_tate_series, poincare_series};
use qci_core::tate::check_tate;
use qci_core::verify::{
    verify_deviation_comparison, verify_grade_formulas, verify_hierarchy,
    verify_module_poincare_comparison, verify_poincare_comparison, CheckVerdict, TheoremCheck,
};
use qci_core::{AlgebraError, Field, Polynomial};
use serde_json::json;

use crate::report::{Bounds, Report};
use crate::{CheckName, Input, ModuleChoice, Verb};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Algebra(AlgebraError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Algebra(e)
    }
}

fn verb_name(verb: &Verb) -> &'static str {
    match verb {
        Verb::Analyze(_) => "analyze",
        Verb::Ezd { .. } => "ezd",
        Verb::EzdSearch { .. } => "ezd-search",
        Verb::Tate(_) => "tate",
        Verb::Betti(_) => "betti",
        Verb::Series(_) => "series",
        Verb::Deviations(_) => "deviations",
        Verb::Verify { .. } => "verify",
        Verb::Invariants(_) => "invariants",
    }
}

fn parse_ideal<F: Field>(
    ring: &QuotientRing<F>,
    text: &str,
) -> Result<Vec<Polynomial<F::Elem>>, CliError> {
    if text.trim() == "maximal" {
        return Ok(ring.maximal_ideal());
    }
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            ring.parse(s)
                .map_err(|e| CliError::Usage(format!("ideal generator `{s}`: {e}")))
        })
        .collect()
}

fn required_ideal<F: Field>(
    ring: &QuotientRing<F>,
    input: &Input,
) -> Result<Vec<Polynomial<F::Elem>>, CliError> {
    match &input.ideal {
        Some(t) => parse_ideal(ring, t),
        None => Err(CliError::Usage("this command needs --ideal".into())),
    }
}

fn check_detail(c: &TheoremCheck) -> String {
    let mut s = format!("{}: {} vs {}", c.instance, c.lhs, c.rhs);
    if !c.detail.is_empty() {
        s.push_str("; ");
        s.push_str(&c.detail);
    }
    s
}

fn record_checks(report: &mut Report, checks: &[TheoremCheck]) {
    for c in checks {
        if c.verdict == CheckVerdict::Fail {
            report.failed = true;
        }
        report.verdict(&c.id, c.verdict, c.bound, Some(check_detail(c)));
    }
    let mut all: Vec<serde_json::Value> = report
        .tables
        .get("checks")
        .and_then(|v| v.as_array().cloned())
        .unwrap_or_default();
    all.extend(
        checks
            .iter()
            .map(|c| serde_json::to_value(c).expect("check serializes")),
    );
    report
        .tables
        .insert("checks".into(), serde_json::Value::Array(all));
}

/// Adds the checks, or a not-applicable entry when the checker rejects its input.
fn checks_or_skip(
    report: &mut Report,
    name: &str,
    r: qci_core::Result<Vec<TheoremCheck>>,
) -> Result<(), CliError> {
    match r {
        Ok(c) => record_checks(report, &c),
        Err(AlgebraError::NotApplicable(why)) => {
            report.verdict(name, CheckVerdict::NotApplicable, None, Some(why))
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

pub fn execute<F: Field>(verb: &Verb, input: &Input, field: F) -> Result<Report, CliError> {
    let ring = QuotientRing::from_presentation(&input.presentation, field);
    let d = input.bound;
    let trials = match verb {
        Verb::EzdSearch { trials, .. } => Some(*trials),
        _ => None,
    };
    let mut report = Report::new(
        verb_name(verb),
        &input.label,
        Bounds {
            homological: d,
            seed: input.seed,
            trials,
        },
    );
    match verb {
        Verb::Analyze(_) => {
            let gens = required_ideal(&ring, input)?;
            let qa = qci_analyze(&ring, &gens)?;
            let rep = &qa.report;
            report.verdict("qci", rep.verdict, None, rep.witness.clone());
            report.failed = rep.verdict == Verdict::False;
            let ci = is_complete_intersection(&ring, &gens)?;
            report.verdict("complete-intersection", ci, None, None);
            let mut witnesses = serde_json::Map::new();
            if rep.c == 1 {
                let ezd = exact_zero_divisor_check(&ring, &qa.generators[0])?;
                report.verdict("exact-zero-divisor", ezd.verdict, None, None);
                if let (Verdict::True, Some(b)) = (ezd.verdict, &ezd.witness) {
                    witnesses.insert("b".into(), json!(b));
                }
                report.table("ezd", &ezd);
            }
            report.table("qci", rep);
            report.tables.insert(
                "summary".into(),
                json!({
                    "verdict": rep.verdict.to_string(),
                    "c": rep.c,
                    "h": rep.h,
                    "grade": grade(&ring, &gens)?,
                    "witnesses": witnesses,
                }),
            );
            report
                .notes
                .push(format!("generators: {}", rep.generators.join(", ")));
            report.notes.push(format!("c = {}, h = {:?}", rep.c, rep.h));
            if !rep.cycles.is_empty() {
                report
                    .notes
                    .push(format!("H_1 cycles: {}", rep.cycles.join(", ")));
            }
            if let Some(b) = witnesses.get("b") {
                report
                    .notes
                    .push(format!("(0:a) = ({})", b.as_str().unwrap_or_default()));
            }
        }
        Verb::Ezd { element, .. } => {
            let a = match element {
                Some(e) => ring
                    .parse(e)
                    .map_err(|e| CliError::Usage(format!("element: {e}")))?,
                None => {
                    let g = required_ideal(&ring, input)?;
                    if g.len() != 1 {
                        return Err(CliError::Usage(
                            "ezd needs --element or a principal --ideal".into(),
                        ));
                    }
                    g[0].clone()
                }
            };
            let rep = exact_zero_divisor_check(&ring, &a)?;
            report.verdict(
                "exact-zero-divisor",
                rep.verdict,
                None,
                rep.witness.as_ref().map(|b| format!("b = {b}")),
            );
            report.failed = rep.verdict == Verdict::False;
            report.notes.push(format!(
                "(0:{}) = ({})",
                rep.element,
                rep.annihilator.join(", ")
            ));
            report.table("ezd", &rep);
        }
        Verb::EzdSearch {
            trials, max_hits, ..
        } => {
            let s = ezd_search_linear(&ring, *trials, input.seed, *max_hits)?;
            report.verdict(
                "found",
                Verdict::from_bool(!s.hits.is_empty()),
                None,
                Some(format!("{} hits in {} forms", s.hits.len(), s.scanned)),
            );
            for h in s.hits.iter().take(10) {
                report
                    .notes
                    .push(format!("{}: (0:a) = ({})", h.element, h.partner));
            }
            report.table("search", &s);
        }
        Verb::Tate(_) => {
            let gens = required_ideal(&ring, input)?;
            let (f, check) = check_tate(&ring, &gens, d)?;
            let resolves = check.is_resolution();
            let ranks_match = check.tate_ranks == check.resolution_ranks;
            report.verdict(
                "tate-resolution",
                Verdict::from_bool(resolves),
                Some(d),
                None,
            );
            report.verdict(
                "tate-vs-minimal-resolution",
                Verdict::from_bool(ranks_match),
                Some(d),
                None,
            );
            report.failed = !resolves || !ranks_match;
            report.series.insert(
                "tate_ranks".into(),
                check.tate_ranks.iter().map(|&x| x as i64).collect(),
            );
            report.series.insert(
                "resolution_ranks".into(),
                check.resolution_ranks.iter().map(|&x| x as i64).collect(),
            );
            report.table("tate", &check);
            report.table("shifts", &f.shifts[..=d].to_vec());
            for (n, h) in check.homology.iter().enumerate() {
                report.notes.push(format!("H_{n} = {h}"));
            }
        }
        Verb::Betti(_) => {
            let module = match &input.ideal {
                Some(t) => ModuleInput::Quotient(parse_ideal(&ring, t)?),
                None => ModuleInput::Residue,
            };
            let res = minimal_resolution(&ring, &module, d, None)?;
            report.series.insert(
                "betti".into(),
                res.betti_numbers().iter().map(|&x| x as i64).collect(),
            );
            report.table("betti", &res.betti);
            report
                .tables
                .insert("terminated".into(), json!(res.terminated));
            report.notes.push(res.betti.to_text());
        }
        Verb::Series(_) => {
            let hs = ring.hilbert_series();
            report
                .series
                .insert("hilbert_r".into(), hs.expansion(0, d as i64));
            report
                .tables
                .insert("hilbert_r".into(), json!(hs.to_string()));
            let p = poincare_series(&ring, &ModuleInput::Residue, d)?;
            report
                .series
                .insert("poincare_r".into(), p.coeffs().to_vec());
            report.notes.push(format!("H_R(s) = {hs}"));
            report.notes.push(format!("P^R_k(t) = {p}"));
            if let Some(t) = &input.ideal {
                let gens = parse_ideal(&ring, t)?;
                let qa = qci_analyze(&ring, &gens)?;
                let s = ring.quotient_by(&qa.generators);
                let hs_s = s.hilbert_series();
                report
                    .series
                    .insert("hilbert_s".into(), hs_s.expansion(0, d as i64));
                report
                    .tables
                    .insert("hilbert_s".into(), json!(hs_s.to_string()));
                let ps = poincare_series(&s, &ModuleInput::Residue, d)?;
                report
                    .series
                    .insert("poincare_s".into(), ps.coeffs().to_vec());
                let pr = poincare_series(&ring, &ModuleInput::Quotient(qa.generators.clone()), d)?;
                report
                    .series
                    .insert("poincare_r_of_s".into(), pr.coeffs().to_vec());
                report.notes.push(format!("H_S(s) = {hs_s}"));
                report.notes.push(format!("P^S_k(t) = {ps}"));
                report.notes.push(format!("P^R_S(t) = {pr}"));
                if qa.is_qci() {
                    let g = graded_tate_series(
                        &qa.report.generator_degrees,
                        &qa.report.cycle_degrees,
                        d,
                    );
                    report.notes.push(format!("graded Tate series = {g}"));
                    report.table("graded_tate_series", &g);
                }
            }
        }
        Verb::Deviations(_) => {
            let dev = deviations(&ring, d)?;
            report
                .series
                .insert("deviations".into(), dev.values.clone());
            report.notes.push(format!("ε_1..ε_{d} = {:?}", dev.values));
        }
        Verb::Verify { check, module, .. } => {
            let gens = required_ideal(&ring, input)?;
            let label = input.label.as_str();
            let wanted = |c: CheckName| *check == CheckName::All || *check == c;
            if wanted(CheckName::Grade) {
                checks_or_skip(
                    &mut report,
                    "grade",
                    verify_grade_formulas(&ring, &gens, label),
                )?;
            }
            if wanted(CheckName::Deviations) {
                checks_or_skip(
                    &mut report,
                    "deviations",
                    verify_deviation_comparison(&ring, &gens, d, label),
                )?;
            }
            if wanted(CheckName::Poincare) {
                checks_or_skip(
                    &mut report,
                    "poincare",
                    verify_poincare_comparison(&ring, &gens, d, label).map(|c| vec![c]),
                )?;
            }
            if wanted(CheckName::ModulePoincare) {
                let n = match module {
                    ModuleChoice::Residue => ModuleInput::Residue,
                    ModuleChoice::Quotient => ModuleInput::Quotient(Vec::new()),
                };
                let r =
                    verify_module_poincare_comparison(&ring, &gens, &n, d, label).map(|c| vec![c]);
                checks_or_skip(&mut report, "module-poincare", r)?;
            }
            if wanted(CheckName::Hierarchy) {
                checks_or_skip(
                    &mut report,
                    "hierarchy",
                    verify_hierarchy(&ring, &gens, d, label),
                )?;
            }
        }
        Verb::Invariants(_) => {
            let inv = local_invariants(&ring)?;
            report.notes.push(format!(
                "dim {} depth {} edim {} cmd {} cid {}",
                inv.dim, inv.depth, inv.edim, inv.cmd, inv.cid
            ));
            report.table("ring", &inv);
            if let Some(t) = &input.ideal {
                let gens = parse_ideal(&ring, t)?;
                let ii = ideal_invariants(&ring, &gens)?;
                report
                    .notes
                    .push(format!("grade {} c {} h {:?}", ii.grade, ii.c, ii.h));
                report.table("ideal", &ii);
            }
        }
    }
    Ok(report)
}
