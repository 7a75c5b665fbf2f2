mod support;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use qci_core::instances::{instance, random_quadratic_algebra};
use qci_core::invariants::embedding_dimension;
use qci_core::qci::{
    exact_zero_divisor_check, ezd_search_linear, is_ci_ring, qci_check, quasi_gorenstein_check,
    BackCheck, Verdict,
};
use qci_core::quotient::QuotientRing;
use qci_core::resolution::{minimal_resolution, ModuleInput};
use qci_core::series::{deviations, poincare_series, product_expansion};
use qci_core::tate::check_tate;
use qci_core::verify::{
    verify_deviation_comparison, verify_grade_formulas, verify_hierarchy,
    verify_module_poincare_comparison, verify_poincare_comparison, CheckVerdict, Quantity,
    TheoremCheck,
};
use qci_core::{Polynomial, PrimeField};
use support::builtin;

type Outcome = Result<String, String>;

const SUITE: [&str; 4] = ["thm44", "hypersurface", "ci-x2y3", "gor5"];
const QCI_SUITE: [&str; 5] = ["thm44", "hypersurface", "ci-x2y3", "plane-x2", "line-x2"];

fn setup(name: &str) -> (QuotientRing<PrimeField>, Vec<Polynomial<u32>>) {
    let r = builtin(name);
    let gens = instance(name).unwrap().ideal_in(&r).unwrap();
    (r, gens)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn passes(checks: &[TheoremCheck]) -> Result<(), String> {
    for c in checks {
        ensure(c.verdict == CheckVerdict::Pass, || {
            format!("{} on {}: {:?} vs {:?}", c.id, c.instance, c.lhs, c.rhs)
        })?;
    }
    Ok(())
}

fn exact_zero_divisor_on_thm44() -> Outcome {
    let start = Instant::now();
    let (r, gens) = setup("thm44");
    let x = r.parse("x").unwrap();
    let y = r.parse("y").unwrap();
    ensure(
        r.ideals_equal(&r.annihilator(&x).unwrap(), std::slice::from_ref(&y)),
        || "(0:x) ≠ (y)".into(),
    )?;
    ensure(
        r.ideals_equal(&r.annihilator(&y).unwrap(), std::slice::from_ref(&x)),
        || "(0:y) ≠ (x)".into(),
    )?;
    let ezd = exact_zero_divisor_check(&r, &x).unwrap();
    ensure(ezd.verdict == Verdict::True, || {
        format!("ezd verdict {}", ezd.verdict)
    })?;
    let rep = qci_check(&r, &gens).unwrap();
    ensure(
        rep.verdict == Verdict::True && rep.c == 1 && rep.h == Some(1),
        || format!("qci {} c={} h={:?}", rep.verdict, rep.c, rep.h),
    )?;
    let res = minimal_resolution(&r, &ModuleInput::Quotient(vec![x]), 12, None).unwrap();
    let betti = res.betti_numbers();
    ensure(betti == vec![1; 13], || format!("betti {betti:?}"))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!(
        "betti through 12 = {betti:?}, {:?}",
        start.elapsed()
    ))
}

fn negative_controls() -> Outcome {
    let start = Instant::now();
    let r = builtin("xy-y2");
    let x = r.parse("x").unwrap();
    let y = r.parse("y").unwrap();
    let ezd = exact_zero_divisor_check(&r, &x).unwrap();
    ensure(ezd.verdict == Verdict::False, || {
        format!("x reported {}", ezd.verdict)
    })?;
    let xy = vec![x, y.clone()];
    ensure(r.ideals_equal(&r.annihilator(&y).unwrap(), &xy), || {
        "(0:y) ≠ (x, y)".into()
    })?;
    ensure(
        ezd.check_back
            == BackCheck::Failed {
                annihilator: vec!["x".into(), "y".into()],
            },
        || format!("back check {:?}", ezd.check_back),
    )?;
    let (g, m) = setup("gor5");
    let rep = qci_check(&g, &m).unwrap();
    ensure(rep.verdict == Verdict::False, || {
        format!("gor5 qci {}", rep.verdict)
    })?;
    let qg = quasi_gorenstein_check(&g, &m, 6).unwrap();
    ensure(qg.verdict == Verdict::TrueUpToBound(6), || {
        format!("gor5 quasi-Gorenstein {}", qg.verdict)
    })?;
    within(start, Duration::from_secs(5))?;
    Ok(format!(
        "gor5: qci False, quasi-Gorenstein {}, {:?}",
        qg.verdict,
        start.elapsed()
    ))
}

fn hierarchy() -> Outcome {
    let mut notes = Vec::new();
    for name in SUITE {
        let (r, gens) = setup(name);
        let checks = verify_hierarchy(&r, &gens, 8, name).unwrap();
        let qci = qci_check(&r, &gens).unwrap().verdict.holds();
        for c in &checks {
            ensure(c.verdict != CheckVerdict::Fail, || {
                format!("{} failed on {name}", c.id)
            })?;
            if qci && c.id == "hierarchy-quasi-gorenstein" {
                ensure(c.verdict == CheckVerdict::Pass, || {
                    format!("quasi-Gorenstein not verified on {name}")
                })?;
            }
            if c.id == "hierarchy-ci" && c.verdict == CheckVerdict::Pass {
                notes.push(format!("{name}: ci triggered"));
            }
        }
    }
    Ok(notes.join(", "))
}

fn grade_formulas() -> Outcome {
    for name in QCI_SUITE {
        let (r, gens) = setup(name);
        let checks = verify_grade_formulas(&r, &gens, name).unwrap();
        ensure(checks.len() == 4, || {
            format!("{name}: {} checks", checks.len())
        })?;
        passes(&checks)?;
    }
    Ok(format!("{} instances", QCI_SUITE.len()))
}

fn tate_matches_resolution() -> Outcome {
    for name in QCI_SUITE {
        let (r, gens) = setup(name);
        let (_, chk) = check_tate(&r, &gens, 8).unwrap();
        ensure(chk.tate_ranks[..=8] == chk.resolution_ranks[..=8], || {
            format!(
                "{name}: tate {:?} vs resolution {:?}",
                chk.tate_ranks, chk.resolution_ranks
            )
        })?;
        ensure(chk.is_resolution(), || {
            format!("{name}: homology {:?}", chk.homology)
        })?;
    }
    Ok(format!("{} instances through degree 8", QCI_SUITE.len()))
}

fn deviation_identities() -> Outcome {
    let ci_rings = [
        builtin("hypersurface"),
        support::ring("field GF 32003\nvars x y\nideal x^2, y^3\nend"),
        builtin("ci-x2y3"),
    ];
    for r in &ci_rings {
        ensure(is_ci_ring(r).unwrap() == Verdict::True, || {
            "ring is not a complete intersection".into()
        })?;
        let dev = deviations(r, 10).unwrap();
        ensure((3..=10).all(|n| dev.get(n) == 0), || {
            format!("deviations {:?}", dev.values)
        })?;
        let p = poincare_series(r, &ModuleInput::Residue, 10).unwrap();
        ensure(product_expansion(&dev, 10) == p, || {
            format!("product expansion differs from {:?}", p.coeffs())
        })?;
    }
    let mut all: Vec<QuotientRing<PrimeField>> =
        ["thm44", "gor5", "xy-y2", "hypersurface", "ci-x2y3"]
            .map(builtin)
            .into();
    all.extend(ci_rings);
    for r in &all {
        let p = poincare_series(r, &ModuleInput::Residue, 5).unwrap();
        let dev = deviations(r, 5).unwrap();
        ensure(product_expansion(&dev, 5) == p, || {
            format!("product expansion differs from {:?}", p.coeffs())
        })?;
        let edim = embedding_dimension(r).unwrap() as i64;
        ensure(dev.get(1) == edim, || {
            format!("ε_1 = {} but edim = {edim}", dev.get(1))
        })?;
        let mu = r.ambient().minimal_generators(r.relations()).unwrap().len() as i64;
        ensure(dev.get(2) == mu, || {
            format!("ε_2 = {} but μ(I) = {mu}", dev.get(2))
        })?;
    }
    Ok(format!("{} rings", all.len()))
}

fn deviation_comparison() -> Outcome {
    let start = Instant::now();
    let (r, gens) = setup("thm44");
    let checks = verify_deviation_comparison(&r, &gens, 8, "thm44").unwrap();
    passes(&checks)?;
    let agree = checks
        .iter()
        .find(|c| c.id == "deviations-agree")
        .ok_or("missing deviations-agree")?;
    ensure(
        matches!(&agree.lhs, Quantity::Integers(v) if v.len() == 6),
        || format!("compared {:?}", agree.lhs),
    )?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("ε_3..ε_8 = {:?}, {:?}", agree.lhs, start.elapsed()))
}

fn poincare_comparisons() -> Outcome {
    let mut applicable = 0;
    for name in QCI_SUITE {
        let (r, gens) = setup(name);
        let c = verify_poincare_comparison(&r, &gens, 8, name).unwrap();
        ensure(c.verdict == CheckVerdict::Pass, || {
            format!("{name}: {:?} vs {:?}", c.lhs, c.rhs)
        })?;
        for module in [ModuleInput::Residue, ModuleInput::Quotient(gens.clone())] {
            let c = verify_module_poincare_comparison(&r, &gens, &module, 8, name).unwrap();
            match c.verdict {
                CheckVerdict::Pass => applicable += 1,
                CheckVerdict::NotApplicable => {}
                CheckVerdict::Fail => return Err(format!("{name}: {:?} vs {:?}", c.lhs, c.rhs)),
            }
        }
    }
    let (r, gens) = setup("line-x2");
    let c = verify_module_poincare_comparison(
        &r,
        &gens,
        &ModuleInput::Quotient(gens.clone()),
        8,
        "line-x2",
    )
    .unwrap();
    let mut one_minus_t = vec![1, -1];
    one_minus_t.resize(9, 0);
    let mut one = vec![1];
    one.resize(9, 0);
    ensure(c.verdict == CheckVerdict::NotApplicable, || {
        format!("control reported {}", c.verdict)
    })?;
    ensure(
        c.lhs == Quantity::Series(one_minus_t) && c.rhs == Quantity::Series(one),
        || format!("control sides {:?} vs {:?}", c.lhs, c.rhs),
    )?;
    Ok(format!(
        "{applicable} applicable module comparisons; control 1 - t vs 1 not-applicable"
    ))
}

fn property_suites() -> Outcome {
    support::differentials_square_to_zero();
    support::normal_form_is_idempotent_on_samples();
    support::qci_check_is_independent_of_generators();
    support::quotient_by_regular_element_preserves_qci();
    support::hilbert_series_matches_enumeration();
    let n = support::artinian_back_check_is_implied();
    support::linear_scanner_agrees_with_annihilators();
    Ok(format!("{n} annihilator back-checks"))
}

fn random_quadratic_algebras() -> Outcome {
    let mut found = 0;
    for seed in 0..20 {
        let r = random_quadratic_algebra(101, 3, 2, seed).unwrap();
        let s = ezd_search_linear(&r, 20_000, seed, Some(1)).unwrap();
        ensure(s.exhaustive, || format!("seed {seed}: scan not exhaustive"))?;
        if !s.hits.is_empty() {
            found += 1;
        }
    }
    ensure(found >= 10, || {
        format!("{found}/20 samples with an exact zero-divisor")
    })?;
    Ok(format!("{found}/20 samples with an exact zero-divisor"))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("exact zero-divisor x on thm44", exact_zero_divisor_on_thm44),
        ("negative controls", negative_controls),
        ("hierarchy", hierarchy),
        ("grade formulas", grade_formulas),
        (
            "tate complex vs minimal resolution",
            tate_matches_resolution,
        ),
        ("deviations", deviation_identities),
        ("deviation comparison", deviation_comparison),
        ("poincare comparisons", poincare_comparisons),
        ("property suites", property_suites),
        ("random quadratic algebras", random_quadratic_algebras),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or(e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
