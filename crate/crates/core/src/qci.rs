//! Decision procedures for complete intersection, quasi-complete
//! intersection, exact zero-divisor and quasi-Gorenstein ideals.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::complexes::{homology, homology_series, koszul_complex, subsets, GradedFreeComplex};
use crate::degreewise::{minimal_generators_mod, subquotient, DegreewiseRing};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::HilbertSeries;
use crate::linalg::{Echelon, SparseVec};
use crate::modules::{FreeElem, GradedMatrix, ModuleOps};
use crate::poly::Polynomial;
use crate::quotient::QuotientRing;
use crate::resolution::{minimal_resolution, ModuleInput, Resolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    /// Holds for every homological degree up to the bound.
    TrueUpToBound(usize),
    Unknown,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    /// `True` or `TrueUpToBound`.
    pub fn holds(self) -> bool {
        matches!(self, Verdict::True | Verdict::TrueUpToBound(_))
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::True => f.write_str("True"),
            Verdict::False => f.write_str("False"),
            Verdict::TrueUpToBound(d) => write!(f, "TrueUpToBound({d})"),
            Verdict::Unknown => f.write_str("Unknown"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Minimal generators of a proper ideal; `UnitIdeal` when `I = R`.
pub fn minimal_ideal_generators<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
) -> Result<Vec<Polynomial<F::Elem>>> {
    if ring.is_zero_ring() || ring.ideal_gb(gens).is_unit_ideal() {
        return Err(AlgebraError::UnitIdeal);
    }
    ring.minimal_generators(gens)
}

/// Whether `H_1` of the Koszul complex on minimal generators of `I` vanishes.
pub fn is_complete_intersection<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
) -> Result<Verdict> {
    let a = minimal_ideal_generators(ring, gens)?;
    if a.is_empty() {
        return Ok(Verdict::True);
    }
    let e = koszul_complex(ring, &a)?;
    Ok(Verdict::from_bool(homology_series(ring, &e, 1)?.is_zero()))
}

/// Whether `I_R` is generated by a regular sequence of the ambient ring.
pub fn is_ci_ring<F: Field>(ring: &QuotientRing<F>) -> Result<Verdict> {
    let ambient = ring.ambient();
    let gens = ambient.minimal_generators(ring.relations())?;
    if gens.len() > ring.nvars() {
        return Ok(Verdict::False);
    }
    is_complete_intersection(&ambient, &gens)
}

/// `x ∧ y` for `x ∈ E_q`, `y ∈ E_r` of a Koszul complex on `c` elements.
pub fn exterior_product<F: Field>(
    ring: &QuotientRing<F>,
    c: usize,
    (q, x): (usize, &FreeElem<F::Elem>),
    (r, y): (usize, &FreeElem<F::Elem>),
) -> FreeElem<F::Elem> {
    let pr = ring.poly_ring();
    let bq = subsets(c, q);
    let br = subsets(c, r);
    let target = subsets(c, q + r);
    let mut acc: Vec<Polynomial<F::Elem>> = vec![pr.zero(); target.len()];
    for (i, p) in x {
        for (j, s) in y {
            let (a, b) = (&bq[*i], &br[*j]);
            if a.iter().any(|t| b.contains(t)) {
                continue;
            }
            let inversions: usize = a.iter().map(|u| b.iter().filter(|v| *v < u).count()).sum();
            let mut merged = [a.as_slice(), b.as_slice()].concat();
            merged.sort_unstable();
            let k = target.binary_search(&merged).expect("subset present");
            let prod = pr.mul(p, s);
            acc[k] = if inversions.is_multiple_of(2) {
                pr.add(&acc[k], &prod)
            } else {
                pr.sub(&acc[k], &prod)
            };
        }
    }
    let e: FreeElem<F::Elem> = acc
        .into_iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .collect();
    ModuleOps::new(ring).reduce_elem(&e)
}

/// Coefficients of `u^p` in `∏ (1 + s^{d_i} u)`, as a polynomial in `s`.
pub fn elementary_series(degrees: &[i64], p: usize) -> HilbertSeries {
    if p > degrees.len() {
        return HilbertSeries::zero();
    }
    let mut total = HilbertSeries::zero();
    for s in subsets(degrees.len(), p) {
        let d: i64 = s.iter().map(|&i| degrees[i]).sum();
        total = total.add(&HilbertSeries::polynomial(d, vec![1]));
    }
    total
}

#[derive(Clone, Debug, Serialize)]
pub struct QciReport {
    pub verdict: Verdict,
    pub c: usize,
    /// Rank of `H_1` when it is free.
    pub h: Option<usize>,
    pub generators: Vec<String>,
    pub generator_degrees: Vec<i64>,
    pub cycles: Vec<String>,
    pub cycle_degrees: Vec<i64>,
    /// Hilbert series of `H_p(E)` for `p = 0 … c`.
    pub homology_series: Vec<String>,
    pub witness: Option<String>,
}

/// Everything computed by [`qci_analyze`], for reuse by later constructions.
#[derive(Clone, Debug)]
pub struct QciAnalysis<E> {
    pub report: QciReport,
    pub generators: Vec<Polynomial<E>>,
    pub koszul: GradedFreeComplex<E>,
    pub cycles: Vec<FreeElem<E>>,
    pub quotient_series: HilbertSeries,
}

impl<E> QciAnalysis<E> {
    pub fn is_qci(&self) -> bool {
        self.report.verdict == Verdict::True
    }
}

/// Decides whether `I` is quasi-complete intersection: `H_1(E)` free over
/// `S = R/I` and `Λ_S H_1(E) -> H_*(E)` bijective, certified by exact
/// Hilbert series and by products of cycles generating each `H_p`.
pub fn qci_analyze<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
) -> Result<QciAnalysis<F::Elem>> {
    let a = minimal_ideal_generators(ring, gens)?;
    let pr = ring.poly_ring();
    let ops = ModuleOps::new(ring);
    let hs_s = ring.quotient_by(&a).hilbert_series();
    let koszul = koszul_complex(ring, &a)?;
    let c = a.len();
    let mut report = QciReport {
        verdict: Verdict::True,
        c,
        h: None,
        generators: a.iter().map(|g| ring.format(g)).collect(),
        generator_degrees: if c > 0 {
            koszul.shifts[1].clone()
        } else {
            Vec::new()
        },
        cycles: Vec::new(),
        cycle_degrees: Vec::new(),
        homology_series: vec![hs_s.to_string()],
        witness: None,
    };
    if c == 0 {
        report.h = Some(0);
        return Ok(QciAnalysis {
            report,
            generators: a,
            koszul,
            cycles: Vec::new(),
            quotient_series: hs_s,
        });
    }
    let basis = |i: usize| format!("v{}", i + 1);
    let h1 = homology(ring, &koszul, 1)?;
    let z = h1.cycle_representatives.clone().unwrap_or_default();
    let dz = h1.generator_degrees.clone();
    report.cycles = z.iter().map(|e| ops.format_elem(e, &basis)).collect();
    report.cycle_degrees = dz.clone();
    let h = z.len();
    // products z_S for every subset, built up one factor at a time
    let mut products: Vec<Vec<FreeElem<F::Elem>>> = vec![vec![vec![(0, pr.one())]]];
    let mut verdict = Verdict::True;
    for p in 1..=c {
        let hp = if p == 1 {
            h1.hilbert.clone()
        } else {
            homology(ring, &koszul, p)?.hilbert
        };
        report.homology_series.push(hp.to_string());
        if verdict == Verdict::False {
            continue;
        }
        let expected = elementary_series(&dz, p).mul(&hs_s);
        if hp != expected {
            verdict = Verdict::False;
            report.witness = Some(if p == 1 {
                format!("H_1 is not free over S: its Hilbert series is {hp}, a free module on the cycle degrees has {expected}")
            } else {
                format!("H_{p} has Hilbert series {hp}, the exterior power of H_1 has {expected}")
            });
            continue;
        }
        if p == 1 {
            report.h = Some(h);
            continue;
        }
        if p > h {
            continue;
        }
        let next: Vec<FreeElem<F::Elem>> = subsets(h, p)
            .iter()
            .map(|s| {
                let prev = subsets(h, p - 1)
                    .binary_search(&s[..p - 1].to_vec())
                    .expect("subset present");
                exterior_product(ring, c, (p - 1, &products[p - 1][prev]), (1, &z[s[p - 1]]))
            })
            .collect();
        let d = koszul.differential(p).expect("p ≤ c");
        let cycles = ops.kernel(d, None);
        let mut span: Vec<FreeElem<F::Elem>> = koszul
            .differential(p + 1)
            .map(|m| {
                m.columns
                    .iter()
                    .map(|col| ops.reduce_elem(col))
                    .filter(|e| !e.is_empty())
                    .collect()
            })
            .unwrap_or_default();
        span.extend(next.iter().filter(|e| !e.is_empty()).cloned());
        let shifts = &koszul.shifts[p];
        if ops.submodule_series(shifts, &span) != ops.submodule_series(shifts, &cycles) {
            verdict = Verdict::False;
            report.witness = Some(format!("products of {p} cycles do not generate H_{p}"));
        }
        products.push(next);
    }
    report.verdict = verdict;
    Ok(QciAnalysis {
        report,
        generators: a,
        koszul,
        cycles: z,
        quotient_series: hs_s,
    })
}

pub fn qci_check<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
) -> Result<QciReport> {
    Ok(qci_analyze(ring, gens)?.report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BackCheck {
    /// `(0:b) = (a)` was computed and holds.
    Verified,
    /// `(0:b)` was computed and differs from `(a)`.
    Failed { annihilator: Vec<String> },
    /// Implied by `(0:a) = (b)` because `R` has finite length.
    ImpliedArtinian,
    /// `(0:a)` is not principal, so no `b` exists.
    NotReached,
}

#[derive(Clone, Debug, Serialize)]
pub struct EzdReport {
    pub verdict: Verdict,
    pub element: String,
    pub annihilator: Vec<String>,
    pub witness: Option<String>,
    pub check_back: BackCheck,
}

fn nonzero_nonunit<F: Field>(
    ring: &QuotientRing<F>,
    a: &Polynomial<F::Elem>,
) -> Result<Polynomial<F::Elem>> {
    let r = ring.reduce(a);
    if r.is_zero() || r.terms().iter().any(|(m, _)| m.is_one()) {
        return Err(AlgebraError::ZeroOrUnit(ring.format(a)));
    }
    Ok(r)
}

/// Decides whether `(0:a) = (b)` and `(0:b) = (a)` for some `b`.
pub fn exact_zero_divisor_check<F: Field>(
    ring: &QuotientRing<F>,
    a: &Polynomial<F::Elem>,
) -> Result<EzdReport> {
    let a = nonzero_nonunit(ring, a)?;
    let ann = ring.annihilator(&a)?;
    let mut report = EzdReport {
        verdict: Verdict::False,
        element: ring.format(&a),
        annihilator: ann.iter().map(|g| ring.format(g)).collect(),
        witness: None,
        check_back: BackCheck::NotReached,
    };
    if ann.len() != 1 {
        return Ok(report);
    }
    let b = ann[0].clone();
    report.witness = Some(ring.format(&b));
    if ring.is_artinian() {
        report.verdict = Verdict::True;
        report.check_back = BackCheck::ImpliedArtinian;
        return Ok(report);
    }
    let ann_b = ring.annihilator(&b)?;
    if ring.ideals_equal(&ann_b, std::slice::from_ref(&a)) {
        report.verdict = Verdict::True;
        report.check_back = BackCheck::Verified;
    } else {
        report.check_back = BackCheck::Failed {
            annihilator: ann_b.iter().map(|g| ring.format(g)).collect(),
        };
    }
    Ok(report)
}

/// Multiplication tables of the variables on an artinian ring, for fast
/// annihilator computations of linear forms.
pub struct LinearFormScanner<'a, F: Field> {
    ring: &'a QuotientRing<F>,
    /// `dims[d] = dim R_d` for `0 ≤ d ≤ top`.
    dims: Vec<usize>,
    bases: Vec<Vec<crate::monomial::Monomial>>,
    /// `tables[d][i][col]`: coordinates of `x_i · (basis col of R_d)` in `R_{d+1}`.
    tables: Vec<Vec<Vec<SparseVec<F::Elem>>>>,
}

impl<'a, F: Field> LinearFormScanner<'a, F> {
    pub fn new(ring: &'a QuotientRing<F>) -> Result<Self> {
        if !ring.is_artinian() || ring.is_zero_ring() {
            return Err(AlgebraError::NotArtinian);
        }
        let top = ring.top_degree().unwrap_or(0);
        let mut dr = DegreewiseRing::new(ring);
        let pr = ring.poly_ring();
        let mut bases = Vec::new();
        let mut tables = Vec::new();
        for d in 0..=top {
            let basis = dr.basis(d).to_vec();
            let mut per_var = Vec::new();
            for i in 0..ring.nvars() {
                let w = pr.weights()[i] as i64;
                let cols: Vec<SparseVec<F::Elem>> = basis
                    .iter()
                    .map(|m| {
                        if w != 1 {
                            return Vec::new();
                        }
                        let prod = m.mul(&crate::monomial::Monomial::var(ring.nvars(), i));
                        dr.nf_monomial(&prod).clone()
                    })
                    .collect();
                per_var.push(cols);
            }
            bases.push(basis);
            tables.push(per_var);
        }
        Ok(LinearFormScanner {
            ring,
            dims: bases.iter().map(|b| b.len()).collect(),
            bases,
            tables,
        })
    }

    fn times(&self, coeffs: &[F::Elem], d: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = self.ring.field();
        let n = self.dims.get(d + 1).copied().unwrap_or(0);
        let mut acc = vec![f.zero(); n];
        for (i, c) in coeffs.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            for (col, x) in v {
                for (row, y) in &self.tables[d][i][*col as usize] {
                    let t = f.mul(c, &f.mul(x, y));
                    acc[*row as usize] = f.add(&acc[*row as usize], &t);
                }
            }
        }
        acc.into_iter()
            .enumerate()
            .filter(|(_, x)| !f.is_zero(x))
            .map(|(i, x)| (i as u32, x))
            .collect()
    }

    /// The linear form with the given coefficients, when nonzero in `R`.
    pub fn form(&self, coeffs: &[F::Elem]) -> Polynomial<F::Elem> {
        let pr = self.ring.poly_ring();
        let terms = (0..self.ring.nvars())
            .filter(|&i| pr.weights()[i] == 1)
            .map(|i| {
                (
                    crate::monomial::Monomial::var(self.ring.nvars(), i),
                    coeffs[i].clone(),
                )
            })
            .collect();
        self.ring.reduce(&pr.from_terms(terms))
    }

    /// For a linear form `a`, returns `b` with `(0:a) = (b)` when the
    /// annihilator is principal (then `a` is an exact zero-divisor).
    pub fn exact_partner(&self, coeffs: &[F::Elem]) -> Option<Polynomial<F::Elem>> {
        let f = self.ring.field();
        let top = self.dims.len() - 1;
        if self.times(coeffs, 0, &vec![(0, f.one())]).is_empty() {
            return None;
        }
        let mut generator: Option<(usize, SparseVec<F::Elem>)> = None;
        let mut span: Vec<SparseVec<F::Elem>> = Vec::new();
        for d in 0..=top {
            // kernel of multiplication by a on R_d
            let mut ech = Echelon::new(f.clone(), self.dims.get(d + 1).copied().unwrap_or(0));
            let mut kernel_dim = 0;
            let mut first_kernel = None;
            for col in 0..self.dims[d] {
                let unit = vec![(col as u32, f.one())];
                let img = self.times(coeffs, d, &unit);
                if let Some(k) = ech.insert_tagged(&img, unit) {
                    kernel_dim += 1;
                    first_kernel.get_or_insert(k);
                }
            }
            match &generator {
                None => {
                    if kernel_dim == 0 {
                        continue;
                    }
                    if kernel_dim != 1 {
                        return None;
                    }
                    let b = first_kernel.expect("kernel vector");
                    generator = Some((d, b.clone()));
                    span = vec![b];
                }
                Some(_) => {
                    let mut next = Echelon::new(f.clone(), self.dims[d]);
                    let mut rows = Vec::new();
                    for v in &span {
                        for i in 0..self.ring.nvars() {
                            let mut e = vec![f.zero(); self.ring.nvars()];
                            e[i] = f.one();
                            let w = self.times(&e, d - 1, v);
                            if next.insert(&w) {
                                rows.push(w);
                            }
                        }
                    }
                    if next.rank() != kernel_dim {
                        return None;
                    }
                    span = rows;
                }
            }
        }
        let (d, b) = generator?;
        let pr = self.ring.poly_ring();
        let terms = b
            .iter()
            .map(|(i, x)| (self.bases[d][*i as usize].clone(), x.clone()))
            .collect();
        Some(pr.from_terms(terms))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EzdHit {
    pub element: String,
    pub partner: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct EzdSearch {
    pub exhaustive: bool,
    pub scanned: u64,
    pub seed: u64,
    pub hits: Vec<EzdHit>,
}

/// Number of points of projective `(n-1)`-space over a field with `q` elements.
fn projective_points(q: u64, n: u32) -> Option<u64> {
    if n == 0 {
        return Some(0);
    }
    let mut total: u64 = 0;
    for k in 0..n {
        total = total.checked_add(q.checked_pow(k)?)?;
    }
    Some(total)
}

/// Coefficient vector of the `idx`-th projective point (first nonzero entry is one).
fn projective_point<F: Field>(f: &F, q: u64, n: usize, mut idx: u64) -> Vec<F::Elem> {
    let mut lead = 0;
    loop {
        let block = q.pow((n - 1 - lead) as u32);
        if idx < block {
            break;
        }
        idx -= block;
        lead += 1;
    }
    let mut out = vec![f.zero(); n];
    out[lead] = f.one();
    for slot in out.iter_mut().skip(lead + 1).rev() {
        *slot = f.nth(idx % q);
        idx /= q;
    }
    out
}

/// Scans linear forms for exact zero-divisors: every projective point when
/// there are at most `trials` of them, else `trials` seeded random forms.
/// Stops after `max_hits` hits when given.
pub fn ezd_search_linear<F: Field>(
    ring: &QuotientRing<F>,
    trials: u64,
    seed: u64,
    max_hits: Option<usize>,
) -> Result<EzdSearch> {
    let scanner = LinearFormScanner::new(ring)?;
    let f = ring.field();
    let n = ring.nvars();
    let q = f.size();
    let points = q.and_then(|q| projective_points(q, n as u32));
    let exhaustive = matches!(points, Some(p) if p <= trials);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = EzdSearch {
        exhaustive,
        scanned: 0,
        seed,
        hits: Vec::new(),
    };
    let total = if exhaustive {
        points.unwrap_or(0)
    } else {
        trials
    };
    for idx in 0..total {
        let coeffs: Vec<F::Elem> = if exhaustive {
            projective_point(f, q.expect("finite field"), n, idx)
        } else {
            let bound = q.unwrap_or(1000);
            let v: Vec<F::Elem> = (0..n).map(|_| f.nth(rng.gen_range(0..bound))).collect();
            if v.iter().all(|x| f.is_zero(x)) {
                out.scanned += 1;
                continue;
            }
            v
        };
        out.scanned += 1;
        if let Some(b) = scanner.exact_partner(&coeffs) {
            out.hits.push(EzdHit {
                element: ring.format(&scanner.form(&coeffs)),
                partner: ring.format(&b),
            });
            if max_hits.is_some_and(|m| out.hits.len() >= m) {
                break;
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct QgorReport {
    pub verdict: Verdict,
    pub grade: usize,
    pub bound: usize,
    /// Hilbert series of `Ext^n_R(S, R)` for `n = 0 … bound`.
    pub ext_series: Vec<String>,
    pub ext_generators: Vec<usize>,
    pub witness: Option<String>,
}

/// `Ext^n_R(M, R)` for `n ≤ bound` from a resolution computed through `bound + 1`.
pub fn ext_to_ring<F: Field>(
    ring: &QuotientRing<F>,
    res: &Resolution<F::Elem>,
    bound: usize,
) -> Vec<(HilbertSeries, Vec<i64>)> {
    let ops = ModuleOps::new(ring);
    let cx = &res.complex;
    let top = if ring.is_artinian() {
        ring.top_degree()
    } else {
        None
    };
    let mut out = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let shifts: Vec<i64> = cx
            .shifts
            .get(n)
            .map(|s| s.iter().map(|d| -d).collect())
            .unwrap_or_default();
        if shifts.is_empty() {
            out.push((HilbertSeries::zero(), Vec::new()));
            continue;
        }
        let forward: GradedMatrix<F::Elem> = match cx.differential(n + 1) {
            Some(d) => d.transpose(),
            None => GradedMatrix::new(Vec::new(), shifts.clone(), vec![Vec::new(); shifts.len()]),
        };
        let back: Vec<(i64, FreeElem<F::Elem>)> = match cx.differential(n) {
            Some(d) => {
                let t = d.transpose();
                t.col_degrees.iter().copied().zip(t.columns).collect()
            }
            None => Vec::new(),
        };
        let mut dr = DegreewiseRing::new(ring);
        if let Some(t) = top {
            let lo = *shifts.iter().min().expect("nonempty");
            let hi = *shifts.iter().max().expect("nonempty") + t;
            let steps = subquotient(
                &mut dr,
                &shifts,
                Some((&forward.columns, &forward.row_degrees)),
                &back,
                lo..=hi,
            );
            let gens = steps
                .iter()
                .flat_map(|s| std::iter::repeat_n(s.degree, s.new_generators.len()))
                .collect();
            let dims = steps.iter().map(|s| s.homology_dim() as i64).collect();
            out.push((HilbertSeries::polynomial(lo, dims), gens));
        } else {
            let cycles: Vec<FreeElem<F::Elem>> = if forward.nrows() == 0 {
                (0..shifts.len())
                    .map(|k| vec![(k, ring.poly_ring().one())])
                    .collect()
            } else {
                ops.kernel(&forward, None)
            };
            let bvec: Vec<FreeElem<F::Elem>> = back
                .iter()
                .map(|b| ops.reduce_elem(&b.1))
                .filter(|e| !e.is_empty())
                .collect();
            let hs = ops
                .submodule_series(&shifts, &cycles)
                .sub(&ops.submodule_series(&shifts, &bvec));
            let with_deg = |v: &[FreeElem<F::Elem>]| -> Vec<(i64, FreeElem<F::Elem>)> {
                v.iter()
                    .map(|e| (ops.elem_degree(&shifts, e).expect("homogeneous"), e.clone()))
                    .collect()
            };
            let gens =
                minimal_generators_mod(&mut dr, &shifts, &with_deg(&bvec), &with_deg(&cycles));
            out.push((hs, gens.iter().map(|g| g.0).collect()));
        }
    }
    out
}

/// `c - max{n : H_n(E) ≠ 0}` for the Koszul complex on minimal generators.
pub fn grade<F: Field>(ring: &QuotientRing<F>, gens: &[Polynomial<F::Elem>]) -> Result<usize> {
    let a = minimal_ideal_generators(ring, gens)?;
    let c = a.len();
    if c == 0 {
        return Ok(0);
    }
    let e = koszul_complex(ring, &a)?;
    for n in (0..=c).rev() {
        if !homology_series(ring, &e, n)?.is_zero() {
            return Ok(c - n);
        }
    }
    Ok(c)
}

/// Bounded test of `Ext^g_R(S, R) ≅ S` at `g = grade` and `Ext^n_R(S, R) = 0`
/// for `g < n ≤ bound`.
pub fn quasi_gorenstein_check<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
    bound: usize,
) -> Result<QgorReport> {
    let g = grade(ring, gens)?;
    if bound < g {
        return Err(AlgebraError::InvalidArgument(format!(
            "homological bound {bound} is below the grade {g}"
        )));
    }
    let a = minimal_ideal_generators(ring, gens)?;
    let hs_s = ring.quotient_by(&a).hilbert_series();
    let res = minimal_resolution(ring, &ModuleInput::Quotient(a), bound + 1, None)?;
    let ext = ext_to_ring(ring, &res, bound);
    let mut report = QgorReport {
        verdict: Verdict::TrueUpToBound(bound),
        grade: g,
        bound,
        ext_series: ext.iter().map(|e| e.0.to_string()).collect(),
        ext_generators: ext.iter().map(|e| e.1.len()).collect(),
        witness: None,
    };
    let (hg, gg) = &ext[g];
    let cyclic = gg.len() == 1 && *hg == hs_s.shift(gg[0]);
    if !cyclic {
        report.verdict = Verdict::False;
        report.witness = Some(format!(
            "Ext^{g} has {} minimal generators and Hilbert series {hg}; S has {hs_s}",
            gg.len()
        ));
        return Ok(report);
    }
    if let Some(n) = (g + 1..=bound).find(|&n| !ext[n].0.is_zero()) {
        report.verdict = Verdict::False;
        report.witness = Some(format!(
            "Ext^{n} is nonzero with Hilbert series {}",
            ext[n].0
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::presentation::parse_ring_spec;

    fn ring(text: &str) -> QuotientRing<PrimeField> {
        let p = parse_ring_spec(text).unwrap();
        let q = p.field.characteristic() as u32;
        QuotientRing::from_presentation(&p, PrimeField::new(q).unwrap())
    }

    const THM44: &str =
        "field GF 32003\nvars w x y z\nideal w^2, w*x-y^2, w*y-x*z, w*z, x^2+y*z, x*y, z^2\nend";
    const GOR5: &str = "field GF 32003\nvars x y z\nideal x^2-y^2, y^2-z^2, x*y, x*z, y*z\nend";

    #[test]
    fn four_variable_ring_principal_ideal() {
        let r = ring(THM44);
        let x = r.parse("x").unwrap();
        let rep = qci_check(&r, std::slice::from_ref(&x)).unwrap();
        assert_eq!((rep.verdict, rep.c, rep.h), (Verdict::True, 1, Some(1)));
        assert_eq!(rep.cycles, vec!["y*v1"]);
        let ezd = exact_zero_divisor_check(&r, &x).unwrap();
        assert_eq!(ezd.verdict, Verdict::True);
        assert_eq!(ezd.witness.as_deref(), Some("y"));
        assert_eq!(ezd.check_back, BackCheck::ImpliedArtinian);
    }

    #[test]
    fn gorenstein_maximal_ideal_is_not_qci() {
        let r = ring(GOR5);
        let m = r.maximal_ideal();
        assert_eq!(qci_check(&r, &m).unwrap().verdict, Verdict::False);
        let q = quasi_gorenstein_check(&r, &m, 6).unwrap();
        assert_eq!(q.verdict, Verdict::TrueUpToBound(6), "{q:?}");
        assert_eq!(q.grade, 0);
    }

    #[test]
    fn non_exact_zero_divisor() {
        let r = ring("field GF 32003\nvars x y\nideal x*y, y^2\nend");
        let rep = exact_zero_divisor_check(&r, &r.parse("x").unwrap()).unwrap();
        assert_eq!(rep.verdict, Verdict::False);
        assert_eq!(rep.annihilator, vec!["y"]);
        assert_eq!(
            rep.check_back,
            BackCheck::Failed {
                annihilator: vec!["x".into(), "y".into()]
            }
        );
        let q = quasi_gorenstein_check(&r, &r.maximal_ideal(), 4).unwrap();
        assert_eq!(q.verdict, Verdict::False);
    }

    #[test]
    fn dual_numbers() {
        let r = ring("field GF 32003\nvars x\nideal x^2\nend");
        let x = r.parse("x").unwrap();
        let rep = qci_check(&r, std::slice::from_ref(&x)).unwrap();
        assert_eq!((rep.verdict, rep.c, rep.h), (Verdict::True, 1, Some(1)));
        assert_eq!(
            exact_zero_divisor_check(&r, &x).unwrap().witness.as_deref(),
            Some("x")
        );
        assert_eq!(
            is_complete_intersection(&r, std::slice::from_ref(&x)).unwrap(),
            Verdict::False
        );
        assert_eq!(is_ci_ring(&r).unwrap(), Verdict::True);
        let s = ezd_search_linear(&r, 1000, 0, None).unwrap();
        assert!(s.exhaustive);
        assert_eq!(s.hits.len(), 1);
        assert_eq!(s.hits[0].element, "x");
    }

    #[test]
    fn complete_intersections() {
        let r = ring("field GF 32003\nvars x y\nideal\nend");
        let i = vec![r.parse("x^2").unwrap(), r.parse("y^3").unwrap()];
        assert_eq!(is_complete_intersection(&r, &i).unwrap(), Verdict::True);
        let rep = qci_check(&r, &i).unwrap();
        assert_eq!((rep.verdict, rep.h), (Verdict::True, Some(0)));
        assert_eq!(grade(&r, &i).unwrap(), 2);
        let q = ring("field GF 32003\nvars x y\nideal x^2, y^3\nend");
        assert_eq!(is_ci_ring(&q).unwrap(), Verdict::True);
        assert_eq!(is_ci_ring(&ring(GOR5)).unwrap(), Verdict::False);
        assert_eq!(is_ci_ring(&ring(THM44)).unwrap(), Verdict::False);
    }

    #[test]
    fn grade_examples() {
        let r = ring("field GF 32003\nvars x y\nideal\nend");
        assert_eq!(
            grade(&r, &[r.parse("x*y").unwrap(), r.parse("y^2").unwrap()]).unwrap(),
            1
        );
        let t = ring(THM44);
        assert_eq!(grade(&t, &[t.parse("x").unwrap()]).unwrap(), 0);
    }

    #[test]
    fn unit_ideal_and_zero_ideal() {
        let r = ring(THM44);
        assert_eq!(
            qci_check(&r, &[r.parse("1").unwrap()]).unwrap_err(),
            AlgebraError::UnitIdeal
        );
        let rep = qci_check(&r, &[]).unwrap();
        assert_eq!((rep.verdict, rep.c, rep.h), (Verdict::True, 0, Some(0)));
        assert!(exact_zero_divisor_check(&r, &Polynomial::zero()).is_err());
    }

    #[test]
    fn four_variable_ring_quasi_gorenstein() {
        let r = ring(THM44);
        let q = quasi_gorenstein_check(&r, &[r.parse("x").unwrap()], 6).unwrap();
        assert_eq!(q.verdict, Verdict::TrueUpToBound(6), "{q:?}");
    }

    #[test]
    fn scan_finds_variables_over_small_field() {
        let r = ring(
            "field GF 7\nvars w x y z\nideal w^2, w*x-y^2, w*y-x*z, w*z, x^2+y*z, x*y, z^2\nend",
        );
        let s = ezd_search_linear(&r, 1_000_000, 0, None).unwrap();
        assert!(s.exhaustive);
        assert_eq!(s.scanned, 400);
        let found: Vec<&str> = s.hits.iter().map(|h| h.element.as_str()).collect();
        assert!(found.contains(&"x") && found.contains(&"y"), "{found:?}");
        for h in &s.hits {
            let a = r.parse(&h.element).unwrap();
            let full = exact_zero_divisor_check(&r, &a).unwrap();
            assert_eq!(full.verdict, Verdict::True);
            assert!(r.ideals_equal(&[r.parse(&h.partner).unwrap()], &r.annihilator(&a).unwrap()));
        }
    }
}
