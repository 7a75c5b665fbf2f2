//! Numerical checks of the structural identities satisfied by
//! quasi-complete intersection ideals, evaluated on concrete instances.

use std::fmt;

use serde::Serialize;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::HilbertSeries;
use crate::invariants::{depth, embedding_dimension, krull_dimension};
use crate::poly::Polynomial;
use crate::qci::{
    grade, is_complete_intersection, qci_analyze, quasi_gorenstein_check, QciAnalysis, Verdict,
};
use crate::quotient::QuotientRing;
use crate::resolution::{minimal_resolution, ModuleInput};
use crate::series::{deviations, poincare_series, TruncatedPowerSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckVerdict {
    Pass,
    Fail,
    /// A hypothesis fails; both sides are still reported.
    NotApplicable,
}

impl fmt::Display for CheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckVerdict::Pass => "pass",
            CheckVerdict::Fail => "fail",
            CheckVerdict::NotApplicable => "not-applicable",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Quantity {
    Integer(i64),
    Integers(Vec<i64>),
    /// Power series coefficients through the bound.
    Series(Vec<i64>),
    Text(String),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Integer(n) => write!(f, "{n}"),
            Quantity::Integers(v) => write!(f, "{v:?}"),
            Quantity::Series(c) => write!(
                f,
                "{}",
                TruncatedPowerSeries::new(c.clone(), c.len().saturating_sub(1))
            ),
            Quantity::Text(s) => f.write_str(s),
        }
    }
}

impl From<&TruncatedPowerSeries> for Quantity {
    fn from(p: &TruncatedPowerSeries) -> Self {
        Quantity::Series((0..=p.order()).map(|n| p.coeff(n)).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub id: String,
    pub instance: String,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub verdict: CheckVerdict,
    pub bound: Option<usize>,
    pub detail: String,
}

impl TheoremCheck {
    fn compare(
        id: &str,
        instance: &str,
        lhs: Quantity,
        rhs: Quantity,
        bound: Option<usize>,
        detail: String,
    ) -> Self {
        let verdict = if lhs == rhs {
            CheckVerdict::Pass
        } else {
            CheckVerdict::Fail
        };
        TheoremCheck {
            id: id.into(),
            instance: instance.into(),
            lhs,
            rhs,
            verdict,
            bound,
            detail,
        }
    }

    fn not_applicable(mut self, why: &str) -> Self {
        self.verdict = CheckVerdict::NotApplicable;
        self.detail = if self.detail.is_empty() {
            why.into()
        } else {
            format!("{}; {why}", self.detail)
        };
        self
    }
}

impl fmt::Display for TheoremCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}]: {} vs {} -> {}",
            self.id, self.instance, self.lhs, self.rhs, self.verdict
        )?;
        if let Some(d) = self.bound {
            write!(f, " (D = {d})")?;
        }
        if !self.detail.is_empty() {
            write!(f, "; {}", self.detail)?;
        }
        Ok(())
    }
}

fn require_qci<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
) -> Result<QciAnalysis<F::Elem>> {
    let a = qci_analyze(ring, gens)?;
    if !a.is_qci() {
        return Err(AlgebraError::NotApplicable(format!(
            "ideal is not quasi-complete intersection ({})",
            a.report.witness.as_deref().unwrap_or("no witness")
        )));
    }
    Ok(a)
}

/// Grade against depth, against `c - h`, and against dimension, plus the
/// Hilbert series identity `H_S = H_R ∏(1 - s^{deg a}) / ∏(1 - s^{deg z})`.
pub fn verify_grade_formulas<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
    instance: &str,
) -> Result<Vec<TheoremCheck>> {
    let qa = require_qci(ring, gens)?;
    let s = ring.quotient_by(&qa.generators);
    let g = grade(ring, gens)? as i64;
    let (c, h) = (qa.report.c as i64, qa.report.h.unwrap_or(0) as i64);
    let (depth_r, depth_s) = (depth(ring)?, depth(&s)?);
    let (dim_r, dim_s) = (krull_dimension(ring), krull_dimension(&s));
    let mut rhs_series = ring.hilbert_series();
    for &d in &qa.report.generator_degrees {
        rhs_series = rhs_series.mul_one_minus(d as u32);
    }
    for &d in &qa.report.cycle_degrees {
        rhs_series = rhs_series.div_one_minus(d as u32);
    }
    let hs_s: HilbertSeries = qa.quotient_series.clone();
    let mut hilbert = TheoremCheck::compare(
        "hilbert-identity",
        instance,
        Quantity::Text(hs_s.to_string()),
        Quantity::Text(rhs_series.clone().simplified().to_string()),
        None,
        "compared as rational functions".into(),
    );
    hilbert.verdict = if hs_s == rhs_series {
        CheckVerdict::Pass
    } else {
        CheckVerdict::Fail
    };
    Ok(vec![
        TheoremCheck::compare(
            "grade-depth",
            instance,
            Quantity::Integer(g),
            Quantity::Integer(depth_r - depth_s),
            None,
            format!("depth R = {depth_r}, depth S = {depth_s}"),
        ),
        TheoremCheck::compare(
            "grade-koszul-rank",
            instance,
            Quantity::Integer(g),
            Quantity::Integer(c - h),
            None,
            format!("c = {c}, h = {h}"),
        ),
        TheoremCheck::compare(
            "grade-dimension",
            instance,
            Quantity::Integer(g),
            Quantity::Integer(dim_r - dim_s),
            None,
            format!("dim R = {dim_r}, dim S = {dim_s}"),
        ),
        hilbert,
    ])
}

/// `ε_n(R) = ε_n(S)` for `3 ≤ n ≤ D`, and
/// `ε_2(S) - ε_2(R) = (c - h) + (ε_1(S) - ε_1(R))`.
pub fn verify_deviation_comparison<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
    bound: usize,
    instance: &str,
) -> Result<Vec<TheoremCheck>> {
    let qa = require_qci(ring, gens)?;
    let s = ring.quotient_by(&qa.generators);
    let er = deviations(ring, bound.max(2))?;
    let es = deviations(&s, bound.max(2))?;
    let (c, h) = (qa.report.c as i64, qa.report.h.unwrap_or(0) as i64);
    let high =
        |e: &crate::series::DeviationVector| (3..=bound).map(|n| e.get(n)).collect::<Vec<_>>();
    Ok(vec![
        TheoremCheck::compare(
            "deviations-agree",
            instance,
            Quantity::Integers(high(&es)),
            Quantity::Integers(high(&er)),
            Some(bound),
            "ε_3 … ε_D of S against R".into(),
        ),
        TheoremCheck::compare(
            "deviation-rank",
            instance,
            Quantity::Integer(es.get(2) - er.get(2)),
            Quantity::Integer((c - h) + (es.get(1) - er.get(1))),
            Some(bound),
            format!(
                "ε(R) = {:?}, ε(S) = {:?}, c = {c}, h = {h}",
                er.values, es.values
            ),
        ),
    ])
}

/// `P · (1 - t)^edim / (1 - t^2)^depth` through degree `bound`.
fn normalized<F: Field>(
    ring: &QuotientRing<F>,
    p: &TruncatedPowerSeries,
    bound: usize,
) -> Result<TruncatedPowerSeries> {
    let e = embedding_dimension(ring)? as i64;
    let d = depth(ring)?;
    Ok(
        p.mul(&TruncatedPowerSeries::binomial_power(1, -1, e, bound))
            .mul(&TruncatedPowerSeries::binomial_power(2, -1, -d, bound)),
    )
}

/// Normalized Poincaré series of `k` over `S` against that over `R`.
pub fn verify_poincare_comparison<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
    bound: usize,
    instance: &str,
) -> Result<TheoremCheck> {
    let qa = require_qci(ring, gens)?;
    let s = ring.quotient_by(&qa.generators);
    let lhs = normalized(
        &s,
        &poincare_series(&s, &ModuleInput::Residue, bound)?,
        bound,
    )?;
    let rhs = normalized(
        ring,
        &poincare_series(ring, &ModuleInput::Residue, bound)?,
        bound,
    )?;
    Ok(TheoremCheck::compare(
        "poincare-comparison",
        instance,
        (&lhs).into(),
        (&rhs).into(),
        Some(bound),
        String::new(),
    ))
}

/// Whether `I ∩ m^2 ⊆ mI`, i.e. minimal generators of `I` stay independent in `m/m^2`.
pub fn embeds_in_cotangent_space<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
) -> Result<bool> {
    let a = ring.minimal_generators(gens)?;
    let m = ring.maximal_ideal();
    let m2: Vec<Polynomial<F::Elem>> = m
        .iter()
        .enumerate()
        .flat_map(|(i, x)| m[i..].iter().map(move |y| (x, y)))
        .map(|(x, y)| ring.mul(x, y))
        .collect();
    let r_m2 = ring.quotient_by(&m2);
    let with_i = r_m2.quotient_by(&a);
    let len = |q: &QuotientRing<F>| q.hilbert_series().total_dimension().expect("finite length");
    Ok(len(&r_m2) - len(&with_i) == a.len() as i64)
}

/// The same module over `R`, through `R -> S = R / (a)`.
fn restrict_scalars<E: Clone>(n: &ModuleInput<E>, a: &[Polynomial<E>]) -> ModuleInput<E> {
    match n {
        ModuleInput::Residue => ModuleInput::Residue,
        ModuleInput::Quotient(j) => ModuleInput::Quotient(j.iter().chain(a).cloned().collect()),
        ModuleInput::Cokernel {
            generator_degrees,
            relations,
        } => {
            let mut rels = relations.clone();
            for i in 0..generator_degrees.len() {
                rels.extend(a.iter().map(|p| vec![(i, p.clone())]));
            }
            ModuleInput::Cokernel {
                generator_degrees: generator_degrees.clone(),
                relations: rels,
            }
        }
    }
}

/// Normalized Poincaré series of an `S`-module `N` over `S` against over `R`.
/// Reported not-applicable when `I ∩ m^2 ⊄ mI`.
pub fn verify_module_poincare_comparison<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
    module: &ModuleInput<F::Elem>,
    bound: usize,
    instance: &str,
) -> Result<TheoremCheck> {
    let qa = require_qci(ring, gens)?;
    let s = ring.quotient_by(&qa.generators);
    let lhs = normalized(&s, &poincare_series(&s, module, bound)?, bound)?;
    let over_r = restrict_scalars(module, &qa.generators);
    let rhs = normalized(ring, &poincare_series(ring, &over_r, bound)?, bound)?;
    let check = TheoremCheck::compare(
        "module-poincare-comparison",
        instance,
        (&lhs).into(),
        (&rhs).into(),
        Some(bound),
        String::new(),
    );
    if embeds_in_cotangent_space(ring, &qa.generators)? {
        Ok(check)
    } else {
        Ok(check.not_applicable("I ∩ m^2 is not contained in mI"))
    }
}

/// QCI with finite projective dimension forces complete intersection, and
/// QCI forces quasi-Gorenstein through the bound.
pub fn verify_hierarchy<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
    bound: usize,
    instance: &str,
) -> Result<Vec<TheoremCheck>> {
    let qa = qci_analyze(ring, gens)?;
    let qci = qa.report.verdict;
    let text = |v: Verdict| Quantity::Text(v.to_string());
    if !qa.is_qci() {
        let why = "ideal is not quasi-complete intersection";
        let mk = |id: &str| {
            TheoremCheck::compare(
                id,
                instance,
                text(qci),
                text(Verdict::True),
                Some(bound),
                String::new(),
            )
            .not_applicable(why)
        };
        return Ok(vec![mk("hierarchy-ci"), mk("hierarchy-quasi-gorenstein")]);
    }
    let res = minimal_resolution(
        ring,
        &ModuleInput::Quotient(qa.generators.clone()),
        bound,
        None,
    )?;
    let pd = res.complex.length();
    let ci_check = if res.terminated {
        TheoremCheck::compare(
            "hierarchy-ci",
            instance,
            text(is_complete_intersection(ring, &qa.generators)?),
            text(Verdict::True),
            Some(bound),
            format!("resolution of S stops at step {pd}"),
        )
    } else {
        TheoremCheck::compare(
            "hierarchy-ci",
            instance,
            Quantity::Text(format!("pd > {bound}")),
            Quantity::Text("finite pd".into()),
            Some(bound),
            String::new(),
        )
        .not_applicable("resolution does not stop within the bound")
    };
    let qg = quasi_gorenstein_check(ring, &qa.generators, bound)?;
    let qg_check = TheoremCheck::compare(
        "hierarchy-quasi-gorenstein",
        instance,
        text(qg.verdict),
        text(Verdict::TrueUpToBound(bound)),
        Some(bound),
        qg.witness.unwrap_or_else(|| format!("grade {}", qg.grade)),
    );
    Ok(vec![ci_check, qg_check])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::presentation::parse_ring_spec;

    fn ring(text: &str) -> QuotientRing<PrimeField> {
        let p = parse_ring_spec(text).unwrap();
        QuotientRing::from_presentation(&p, PrimeField::new(32003).unwrap())
    }

    const THM44: &str =
        "field GF 32003\nvars w x y z\nideal w^2, w*x-y^2, w*y-x*z, w*z, x^2+y*z, x*y, z^2\nend";

    fn all_pass(checks: &[TheoremCheck]) {
        for c in checks {
            assert_eq!(c.verdict, CheckVerdict::Pass, "{c}");
        }
    }

    #[test]
    fn grade_formulas() {
        let r = ring(THM44);
        all_pass(&verify_grade_formulas(&r, &[r.parse("x").unwrap()], "thm44").unwrap());
        let p = ring("field GF 32003\nvars x y\nideal\nend");
        let i = [p.parse("x^2").unwrap(), p.parse("y^3").unwrap()];
        let checks = verify_grade_formulas(&p, &i, "ci").unwrap();
        all_pass(&checks);
        assert_eq!(checks[0].lhs, Quantity::Integer(2));
        let d = ring("field GF 32003\nvars x\nideal x^2\nend");
        all_pass(&verify_grade_formulas(&d, &d.maximal_ideal(), "dual").unwrap());
    }

    #[test]
    fn non_qci_input_is_rejected() {
        let r = ring("field GF 32003\nvars x y\nideal x*y, y^2\nend");
        let err = verify_grade_formulas(&r, &[r.parse("x").unwrap()], "xy").unwrap_err();
        assert!(matches!(err, AlgebraError::NotApplicable(_)));
    }

    #[test]
    fn deviation_comparison_on_plane_curve() {
        let p = ring("field GF 32003\nvars x y\nideal\nend");
        let checks =
            verify_deviation_comparison(&p, &[p.parse("x^2").unwrap()], 6, "plane").unwrap();
        all_pass(&checks);
        assert_eq!(checks[1].lhs, Quantity::Integer(1));
        let d = ring("field GF 32003\nvars x\nideal x^2\nend");
        all_pass(&verify_deviation_comparison(&d, &d.maximal_ideal(), 6, "dual").unwrap());
    }

    #[test]
    fn poincare_comparison() {
        let d = ring("field GF 32003\nvars x\nideal x^2\nend");
        let c = verify_poincare_comparison(&d, &d.maximal_ideal(), 10, "dual").unwrap();
        assert_eq!(c.verdict, CheckVerdict::Pass);
        let mut one = vec![0; 11];
        one[0] = 1;
        assert_eq!(c.lhs, Quantity::Series(one));
        let p = ring("field GF 32003\nvars x y\nideal\nend");
        let i = [p.parse("x^2").unwrap(), p.parse("y^3").unwrap()];
        assert_eq!(
            verify_poincare_comparison(&p, &i, 8, "ci").unwrap().verdict,
            CheckVerdict::Pass
        );
    }

    #[test]
    fn module_comparison_control() {
        let r = ring("field GF 32003\nvars x\nideal\nend");
        let c = verify_module_poincare_comparison(
            &r,
            &[r.parse("x^2").unwrap()],
            &ModuleInput::Quotient(vec![]),
            8,
            "line",
        )
        .unwrap();
        assert_eq!(c.verdict, CheckVerdict::NotApplicable);
        let mut lhs = vec![0; 9];
        lhs[0] = 1;
        lhs[1] = -1;
        assert_eq!(c.lhs, Quantity::Series(lhs));
        let mut rhs = vec![0; 9];
        rhs[0] = 1;
        assert_eq!(c.rhs, Quantity::Series(rhs));
        let t = ring(THM44);
        let c = verify_module_poincare_comparison(
            &t,
            &[t.parse("x").unwrap()],
            &ModuleInput::Residue,
            8,
            "thm44",
        )
        .unwrap();
        assert_eq!(c.verdict, CheckVerdict::Pass, "{c}");
    }

    #[test]
    fn cotangent_condition() {
        let r = ring("field GF 32003\nvars x y\nideal\nend");
        assert!(
            embeds_in_cotangent_space(&r, &[r.parse("x").unwrap(), r.parse("x+y").unwrap()])
                .unwrap()
        );
        assert!(!embeds_in_cotangent_space(&r, &[r.parse("x^2").unwrap()]).unwrap());
    }

    #[test]
    fn hierarchy() {
        let p = ring("field GF 32003\nvars x y\nideal\nend");
        let i = [p.parse("x^2").unwrap(), p.parse("y^3").unwrap()];
        let checks = verify_hierarchy(&p, &i, 6, "ci").unwrap();
        all_pass(&checks);
        let d = ring("field GF 32003\nvars x\nideal x^2\nend");
        let checks = verify_hierarchy(&d, &d.maximal_ideal(), 8, "dual").unwrap();
        assert_eq!(checks[0].verdict, CheckVerdict::NotApplicable);
        assert_eq!(checks[1].verdict, CheckVerdict::Pass);
    }
}
