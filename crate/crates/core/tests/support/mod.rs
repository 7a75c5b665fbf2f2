#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qci_core::complexes::{h1_cycles, koszul_complex, GradedFreeComplex};
use qci_core::instances::{instance, random_quadratic_algebra};
use qci_core::linalg::dense_rank;
use qci_core::modules::ModuleOps;
use qci_core::qci::{exact_zero_divisor_check, qci_check, LinearFormScanner, Verdict};
use qci_core::quotient::QuotientRing;
use qci_core::resolution::{minimal_resolution, ModuleInput};
use qci_core::tate::tate_complex;
use qci_core::{parse_ring_spec, Field, Monomial, Polynomial, PrimeField};

pub const P: u32 = 32003;

pub fn ring(text: &str) -> QuotientRing<PrimeField> {
    QuotientRing::from_presentation(&parse_ring_spec(text).unwrap(), PrimeField::new(P).unwrap())
}

pub fn builtin(name: &str) -> QuotientRing<PrimeField> {
    ring(instance(name).unwrap().ring)
}

/// Reduces random elements twice; the second pass must be a no-op.
pub fn normal_form_is_idempotent_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in ["thm44", "gor5", "xy-y2"] {
        let q = builtin(name);
        let r = q.poly_ring();
        let f = r.field();
        for _ in 0..50 {
            let terms = (0..8)
                .map(|_| {
                    let e: Vec<u16> = (0..r.nvars()).map(|_| rng.gen_range(0..4)).collect();
                    (
                        Monomial::from_exponents(&e),
                        f.nth(rng.gen_range(0..P as u64)),
                    )
                })
                .collect();
            let p = r.from_terms(terms);
            let once = q.reduce(&p);
            assert_eq!(q.reduce(&once), once);
            assert!(q.is_zero(&r.sub(&p, &once)));
        }
    }
}

/// `dim_k R_d` by brute-force linear algebra on `I_d = Σ S_{d - deg g} g`.
pub fn dimension_by_enumeration(q: &QuotientRing<PrimeField>, d: i64) -> i64 {
    let r = q.poly_ring();
    let n = r.nvars();
    let monomials_of = |deg: i64| -> Vec<Monomial> {
        let mut out = Vec::new();
        fn rec(i: usize, left: i64, w: &[u32], cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if i == w.len() {
                if left == 0 {
                    out.push(Monomial::from_exponents(cur));
                }
                return;
            }
            let mut k = 0;
            while k as i64 * w[i] as i64 <= left {
                cur[i] = k;
                rec(i + 1, left - k as i64 * w[i] as i64, w, cur, out);
                k += 1;
            }
            cur[i] = 0;
        }
        if deg >= 0 {
            rec(0, deg, r.weights(), &mut vec![0; n], &mut out);
        }
        out
    };
    let basis = monomials_of(d);
    let index = |m: &Monomial| basis.iter().position(|b| b == m).unwrap();
    let f = r.field();
    let mut rows = Vec::new();
    for g in q.relations() {
        let dg = r.weighted_degree(g).unwrap();
        for m in monomials_of(d - dg) {
            let prod = r.mul(&r.monomial(m, f.one()), g);
            let mut row = vec![0u32; basis.len()];
            for (mono, c) in prod.terms() {
                row[index(mono)] = *c;
            }
            rows.push(row);
        }
    }
    basis.len() as i64 - dense_rank(f, &rows) as i64
}

pub fn hilbert_series_matches_enumeration() {
    let mut rings: Vec<QuotientRing<PrimeField>> =
        ["thm44", "gor5", "xy-y2", "hypersurface", "ci-x2y3"]
            .iter()
            .map(|n| builtin(n))
            .collect();
    rings.push(ring(
        "field GF 32003\nvars x y z\nideal\n  x^2 - y*z, x*y*z, y^3 + z^3\nend",
    ));
    rings.push(ring(
        "field GF 32003\nvars x:1 y:2 z:3\nideal\n  x^3 - z, y^3 - z^2, x*y*z\nend",
    ));
    rings.push(random_quadratic_algebra(101, 3, 2, 11).unwrap());
    for q in &rings {
        let hs = q.hilbert_series().expansion(0, 10);
        let brute: Vec<i64> = (0..=10).map(|d| dimension_by_enumeration(q, d)).collect();
        assert_eq!(hs, brute, "{:?}", q.relations());
    }
}

pub fn assert_d_squared_zero(ring: &QuotientRing<PrimeField>, c: &GradedFreeComplex<u32>) {
    let ops = ModuleOps::new(ring);
    for n in 1..c.length() {
        let (dn, dn1) = (c.differential(n).unwrap(), c.differential(n + 1).unwrap());
        for col in &dn1.columns {
            assert!(ops.apply(dn, col).is_empty(), "∂_{n} ∂_{} ≠ 0", n + 1);
        }
    }
    c.check(ring).unwrap();
}

pub fn differentials_square_to_zero() {
    for name in [
        "thm44",
        "gor5",
        "xy-y2",
        "hypersurface",
        "ci-x2y3",
        "plane-x2",
        "line-x2",
    ] {
        let inst = instance(name).unwrap();
        let r = builtin(name);
        let gens = inst.ideal_in(&r).unwrap();
        let e = koszul_complex(&r, &gens).unwrap();
        assert_d_squared_zero(&r, &e);
        let z = h1_cycles(&r, &e).unwrap();
        assert_d_squared_zero(&r, &tate_complex(&r, &e, &z, 5).unwrap());
        let bound = if r.is_artinian() { 5 } else { 4 };
        for module in [ModuleInput::Residue, ModuleInput::Quotient(gens.clone())] {
            assert_d_squared_zero(
                &r,
                &minimal_resolution(&r, &module, bound, None)
                    .unwrap()
                    .complex,
            );
        }
        let m = koszul_complex(&r, &r.maximal_ideal()).unwrap();
        assert_d_squared_zero(&r, &m);
    }
}

/// Replaces generators by an invertible triangular recombination of the same degrees.
pub fn scramble(
    q: &QuotientRing<PrimeField>,
    gens: &[Polynomial<u32>],
    rng: &mut ChaCha8Rng,
) -> Vec<Polynomial<u32>> {
    let r = q.poly_ring();
    let f = r.field();
    let mut sorted = gens.to_vec();
    sorted.sort_by_key(|g| r.weighted_degree(g).unwrap());
    let mut out: Vec<Polynomial<u32>> = Vec::new();
    for (i, g) in sorted.iter().enumerate() {
        let dg = r.weighted_degree(g).unwrap();
        let mut new = r.scale(g, &f.nth(rng.gen_range(1..P as u64)));
        for h in &sorted[..i] {
            let dh = r.weighted_degree(h).unwrap();
            let mults = q.standard_monomials(dg - dh);
            if let Some(m) = mults.get(rng.gen_range(0..mults.len().max(1))) {
                let coef = f.nth(rng.gen_range(0..P as u64));
                new = r.add(&new, &r.mul(&r.monomial(m.clone(), coef), h));
            }
        }
        out.push(new);
    }
    out.reverse();
    out
}

pub fn qci_check_is_independent_of_generators() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let cases: Vec<(QuotientRing<PrimeField>, Vec<&str>)> = vec![
        (builtin("thm44"), vec!["x"]),
        (builtin("thm44"), vec!["x", "y"]),
        (builtin("hypersurface"), vec!["x"]),
        (builtin("ci-x2y3"), vec!["x^2", "y^3"]),
        (builtin("gor5"), vec!["x", "y", "z"]),
        (builtin("xy-y2"), vec!["x", "y"]),
        (
            ring("field GF 32003\nvars x y z\nideal\nend"),
            vec!["x^2", "x*y", "y^2"],
        ),
    ];
    for (q, gens) in cases {
        let gens: Vec<Polynomial<u32>> = gens.iter().map(|s| q.parse(s).unwrap()).collect();
        let base = qci_check(&q, &gens).unwrap();
        for _ in 0..3 {
            let other = scramble(&q, &gens, &mut rng);
            let rep = qci_check(&q, &other).unwrap();
            assert_eq!(
                (rep.verdict, rep.c, rep.h),
                (base.verdict, base.c, base.h),
                "{gens:?}"
            );
            assert_eq!(rep.cycle_degrees, base.cycle_degrees);
        }
    }
}

pub fn quotient_by_regular_element_preserves_qci() {
    // (ring, ideal containing a regular element a, a)
    let cases = [
        (
            "field GF 32003\nvars x y\nideal\nend",
            vec!["x^2", "y^3"],
            "x^2",
            Verdict::True,
        ),
        (
            "field GF 32003\nvars x y z\nideal\nend",
            vec!["x", "y^2"],
            "x",
            Verdict::True,
        ),
        (
            "field GF 32003\nvars x y z\nideal z^2\nend",
            vec!["x", "z"],
            "x",
            Verdict::True,
        ),
        (
            "field GF 32003\nvars t x y\nideal x*y, y^2\nend",
            vec!["t", "x"],
            "t",
            Verdict::False,
        ),
        (
            "field GF 32003\nvars t x y z\nideal x^2-y^2, y^2-z^2, x*y, x*z, y*z\nend",
            vec!["t", "x", "y", "z"],
            "t",
            Verdict::False,
        ),
    ];
    for (text, gens, a, want) in cases {
        let r = ring(text);
        let a = r.parse(a).unwrap();
        assert!(
            r.annihilator(&a).unwrap().is_empty(),
            "{text}: element is not regular"
        );
        let gens: Vec<_> = gens.iter().map(|s| r.parse(s).unwrap()).collect();
        let s = r.quotient_by(&[a]);
        let big = qci_check(&r, &gens).unwrap();
        let small = qci_check(&s, &gens).unwrap();
        assert_eq!(big.verdict, want, "{text}");
        assert_eq!(small.verdict, want, "{text} modulo the regular element");
        assert_eq!(big.c - 1, small.c);
        assert_eq!(big.h, small.h);
    }
}

pub fn random_element(
    q: &QuotientRing<PrimeField>,
    degree: i64,
    rng: &mut ChaCha8Rng,
) -> Polynomial<u32> {
    let r = q.poly_ring();
    let f = r.field();
    let terms = q
        .standard_monomials(degree)
        .into_iter()
        .map(|m| (m, f.nth(rng.gen_range(0..f.size().unwrap()))))
        .collect();
    r.from_terms(terms)
}

/// Returns the number of elements checked.
pub fn artinian_back_check_is_implied() -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut rings: Vec<QuotientRing<PrimeField>> =
        vec![builtin("thm44"), builtin("gor5"), builtin("hypersurface")];
    rings.push(ring("field GF 32003\nvars x y\nideal x^2, y^3\nend"));
    rings.push(ring("field GF 32003\nvars x y\nideal x^2, y^2\nend"));
    for seed in 0..5 {
        rings.push(random_quadratic_algebra(101, 3, 2, seed).unwrap());
    }
    let mut checked = 0;
    let mut principal = 0;
    for (i, q) in rings.iter().enumerate() {
        for trial in 0..12 {
            let deg = if trial % 3 == 2 { 2 } else { 1 };
            let a = random_element(q, deg, &mut rng);
            if q.is_zero(&a) {
                continue;
            }
            let ann = q.annihilator(&a).unwrap();
            checked += 1;
            if ann.len() == 1 {
                principal += 1;
                let back = q.annihilator(&ann[0]).unwrap();
                assert!(
                    q.ideals_equal(&back, std::slice::from_ref(&a)),
                    "ring {i}: (0:b) ≠ (a) for a = {}",
                    q.format(&a)
                );
                assert_eq!(
                    exact_zero_divisor_check(q, &a).unwrap().verdict,
                    Verdict::True
                );
            } else {
                assert_eq!(
                    exact_zero_divisor_check(q, &a).unwrap().verdict,
                    Verdict::False
                );
            }
        }
    }
    assert!(checked >= 100, "only {checked} checks");
    assert!(principal >= 20, "only {principal} principal annihilators");
    checked
}

pub fn linear_scanner_agrees_with_annihilators() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [
        builtin("thm44"),
        builtin("gor5"),
        random_quadratic_algebra(101, 3, 2, 3).unwrap(),
    ] {
        let scanner = LinearFormScanner::new(&q).unwrap();
        let f = q.field();
        for _ in 0..20 {
            let coeffs: Vec<u32> = (0..q.nvars()).map(|_| f.nth(rng.gen_range(0..3))).collect();
            let a = scanner.form(&coeffs);
            if a.is_zero() {
                continue;
            }
            let full = exact_zero_divisor_check(&q, &a).unwrap();
            match scanner.exact_partner(&coeffs) {
                Some(b) => {
                    assert_eq!(full.verdict, Verdict::True, "{}", q.format(&a));
                    assert!(q.ideals_equal(&[b], &q.annihilator(&a).unwrap()));
                }
                None => assert_eq!(full.verdict, Verdict::False, "{}", q.format(&a)),
            }
        }
    }
}
