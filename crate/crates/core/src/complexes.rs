//! Graded free complexes over `R`, the Koszul complex on a sequence of
//! elements, and homology with exact Hilbert series.

use serde::Serialize;

use crate::degreewise::{minimal_generators_mod, DegreewiseRing};
use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::HilbertSeries;
use crate::modules::{FreeElem, GradedMatrix, GradedModuleData, ModuleOps};
use crate::poly::Polynomial;
use crate::quotient::QuotientRing;

/// `F_0 <- F_1 <- ... <- F_n` with `differentials[n - 1] = ∂_n`.
#[derive(Clone, Debug)]
pub struct GradedFreeComplex<E> {
    pub shifts: Vec<Vec<i64>>,
    pub differentials: Vec<GradedMatrix<E>>,
    pub minimal: bool,
}

impl<E: Clone> GradedFreeComplex<E> {
    pub fn from_differentials(f0: Vec<i64>, differentials: Vec<GradedMatrix<E>>) -> Self {
        let mut shifts = vec![f0];
        for d in &differentials {
            shifts.push(d.col_degrees.clone());
        }
        GradedFreeComplex {
            shifts,
            differentials,
            minimal: false,
        }
    }

    /// Highest stored homological degree.
    pub fn length(&self) -> usize {
        self.shifts.len() - 1
    }

    pub fn rank(&self, n: usize) -> usize {
        self.shifts.get(n).map_or(0, |s| s.len())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.shifts.iter().map(|s| s.len()).collect()
    }

    /// `∂_n : F_n -> F_{n-1}` for `1 ≤ n ≤ length`.
    pub fn differential(&self, n: usize) -> Option<&GradedMatrix<E>> {
        if n == 0 {
            None
        } else {
            self.differentials.get(n - 1)
        }
    }
}

impl<E: Clone + PartialEq> GradedFreeComplex<E> {
    /// Checks homogeneity of every differential and `∂_{n} ∘ ∂_{n+1} = 0`.
    pub fn check<F: Field<Elem = E>>(&self, ring: &QuotientRing<F>) -> Result<()> {
        let ops = ModuleOps::new(ring);
        for d in &self.differentials {
            crate::modules::check_homogeneous(ring, d)?;
        }
        for n in 1..self.differentials.len() {
            let (a, b) = (&self.differentials[n - 1], &self.differentials[n]);
            for col in &b.columns {
                if !ops.apply(a, col).is_empty() {
                    return Err(AlgebraError::InvalidArgument(format!(
                        "differentials {n} and {} do not compose to zero",
                        n + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Whether every entry of every differential lies in the maximal ideal.
    pub fn is_minimal<F: Field<Elem = E>>(&self, ring: &QuotientRing<F>) -> bool {
        self.differentials.iter().all(|d| {
            d.columns.iter().all(|c| {
                c.iter()
                    .all(|(_, p)| ring.reduce(p).terms().iter().all(|(m, _)| !m.is_one()))
            })
        })
    }

    pub fn export<F: Field<Elem = E>>(&self, ring: &QuotientRing<F>) -> ComplexExport {
        ComplexExport {
            ranks: self.ranks(),
            shifts: self.shifts.clone(),
            minimal: self.minimal,
            differentials: self
                .differentials
                .iter()
                .map(|d| {
                    let mut entries = Vec::new();
                    for (j, col) in d.columns.iter().enumerate() {
                        for (i, p) in col {
                            entries.push((*i, j, ring.format(p)));
                        }
                    }
                    entries.sort_by_key(|e| (e.0, e.1));
                    entries
                })
                .collect(),
        }
    }
}

/// Serializable form: ranks, shifts and sparse `(row, column, entry)` triples.
#[derive(Clone, Debug, Serialize)]
pub struct ComplexExport {
    pub ranks: Vec<usize>,
    pub shifts: Vec<Vec<i64>>,
    pub minimal: bool,
    pub differentials: Vec<Vec<(usize, usize, String)>>,
}

/// All `q`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(q);
    fn rec(start: usize, n: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < q - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, q, cur, out);
            cur.pop();
        }
    }
    rec(0, n, q, &mut cur, &mut out);
    out
}

/// Reduces the sequence and returns the degrees; rejects zero and unit entries.
pub(crate) fn check_sequence<F: Field>(
    ring: &QuotientRing<F>,
    a: &[Polynomial<F::Elem>],
) -> Result<(Vec<Polynomial<F::Elem>>, Vec<i64>)> {
    let pr = ring.poly_ring();
    let mut elems = Vec::with_capacity(a.len());
    let mut degs = Vec::with_capacity(a.len());
    for p in a {
        let r = ring.reduce(p);
        if r.is_zero() {
            return Err(AlgebraError::ZeroOrUnit(pr.format(p)));
        }
        let d = pr.weighted_degree(&r)?;
        if d == 0 {
            return Err(AlgebraError::ZeroOrUnit(pr.format(p)));
        }
        degs.push(d);
        elems.push(r);
    }
    Ok((elems, degs))
}

/// The Koszul complex `E` on `a`: `E_q = Λ^q(⊕ R v_i)` with `∂(v_i) = a_i`.
pub fn koszul_complex<F: Field>(
    ring: &QuotientRing<F>,
    a: &[Polynomial<F::Elem>],
) -> Result<GradedFreeComplex<F::Elem>> {
    let (a, degs) = check_sequence(ring, a)?;
    let c = a.len();
    let pr = ring.poly_ring();
    let bases: Vec<Vec<Vec<usize>>> = (0..=c).map(|q| subsets(c, q)).collect();
    let shift = |s: &Vec<usize>| s.iter().map(|&i| degs[i]).sum::<i64>();
    let mut differentials = Vec::with_capacity(c);
    for q in 1..=c {
        let rows: Vec<i64> = bases[q - 1].iter().map(shift).collect();
        let cols: Vec<i64> = bases[q].iter().map(shift).collect();
        let columns: Vec<FreeElem<F::Elem>> = bases[q]
            .iter()
            .map(|s| {
                let mut col: FreeElem<F::Elem> = (0..s.len())
                    .map(|k| {
                        let mut rest = s.clone();
                        rest.remove(k);
                        let row = bases[q - 1].binary_search(&rest).expect("subset present");
                        let entry = if k % 2 == 0 {
                            a[s[k]].clone()
                        } else {
                            pr.neg(&a[s[k]])
                        };
                        (row, entry)
                    })
                    .collect();
                col.sort_by_key(|e| e.0);
                col
            })
            .collect();
        differentials.push(GradedMatrix::new(rows, cols, columns));
    }
    let mut complex = GradedFreeComplex::from_differentials(vec![0], differentials);
    complex.check(ring)?;
    complex.minimal = complex.is_minimal(ring);
    Ok(complex)
}

/// `H_i(C)` with minimal generator degrees, exact Hilbert series and cycle
/// representatives of a minimal generating set.
pub fn homology<F: Field>(
    ring: &QuotientRing<F>,
    complex: &GradedFreeComplex<F::Elem>,
    i: usize,
) -> Result<GradedModuleData<F::Elem>> {
    if i > complex.length() {
        return Err(AlgebraError::OutOfRange {
            index: i,
            max: complex.length(),
        });
    }
    let ops = ModuleOps::new(ring);
    let shifts = &complex.shifts[i];
    let cycles: Vec<FreeElem<F::Elem>> = match complex.differential(i) {
        Some(d) => ops.kernel(d, None),
        None => (0..shifts.len())
            .map(|k| vec![(k, ring.poly_ring().one())])
            .collect(),
    };
    let boundaries: Vec<FreeElem<F::Elem>> = match complex.differential(i + 1) {
        Some(d) => d
            .columns
            .iter()
            .map(|c| ops.reduce_elem(c))
            .filter(|c| !c.is_empty())
            .collect(),
        None => Vec::new(),
    };
    let hz = ops.submodule_series(shifts, &cycles);
    let hb = ops.submodule_series(shifts, &boundaries);
    let hilbert = hz.sub(&hb);
    let with_deg = |v: &[FreeElem<F::Elem>]| -> Vec<(i64, FreeElem<F::Elem>)> {
        v.iter()
            .map(|e| {
                (
                    ops.elem_degree(shifts, e).expect("nonzero homogeneous"),
                    e.clone(),
                )
            })
            .collect()
    };
    let mut dr = DegreewiseRing::new(ring);
    let gens = minimal_generators_mod(&mut dr, shifts, &with_deg(&boundaries), &with_deg(&cycles));
    Ok(GradedModuleData {
        generator_degrees: gens.iter().map(|g| g.0).collect(),
        hilbert,
        cycle_representatives: Some(gens.into_iter().map(|g| g.1).collect()),
    })
}

/// Hilbert series of `H_i(C)` alone. Over artinian rings this is computed
/// degree by degree, which is exact there; otherwise via Gröbner bases.
pub fn homology_series<F: Field>(
    ring: &QuotientRing<F>,
    complex: &GradedFreeComplex<F::Elem>,
    i: usize,
) -> Result<HilbertSeries> {
    if i > complex.length() {
        return Err(AlgebraError::OutOfRange {
            index: i,
            max: complex.length(),
        });
    }
    let Some(top) = ring.is_artinian().then(|| ring.top_degree()).flatten() else {
        return Ok(homology(ring, complex, i)?.hilbert);
    };
    let shifts = &complex.shifts[i];
    if shifts.is_empty() {
        return Ok(HilbertSeries::zero());
    }
    let lo = *shifts.iter().min().expect("nonempty");
    let hi = *shifts.iter().max().expect("nonempty") + top;
    let boundary: Vec<(i64, FreeElem<F::Elem>)> = match complex.differential(i + 1) {
        Some(d) => d
            .col_degrees
            .iter()
            .copied()
            .zip(d.columns.iter().cloned())
            .collect(),
        None => Vec::new(),
    };
    let mut dr = DegreewiseRing::new(ring);
    let out = complex
        .differential(i)
        .map(|d| (d.columns.as_slice(), d.row_degrees.as_slice()));
    let steps = crate::degreewise::subquotient(&mut dr, shifts, out, &boundary, lo..=hi);
    let coeffs: Vec<i64> = steps.iter().map(|s| s.homology_dim() as i64).collect();
    Ok(HilbertSeries::polynomial(lo, coeffs))
}

/// Cycles in `E_1` whose classes minimally generate `H_1(E)`.
pub fn h1_cycles<F: Field>(
    ring: &QuotientRing<F>,
    koszul: &GradedFreeComplex<F::Elem>,
) -> Result<Vec<FreeElem<F::Elem>>> {
    if koszul.length() == 0 {
        return Ok(Vec::new());
    }
    let h1 = homology(ring, koszul, 1)?;
    let z = h1.cycle_representatives.unwrap_or_default();
    for c in &z {
        let unit = c
            .iter()
            .any(|(_, p)| p.terms().iter().any(|(m, _)| m.is_one()));
        if unit {
            return Err(AlgebraError::NotMinimal(
                "a cycle representative has a unit coefficient".into(),
            ));
        }
    }
    Ok(z)
}

/// Hilbert series of the free module `⊕ R(-shifts)`.
pub fn free_series<F: Field>(ring: &QuotientRing<F>, shifts: &[i64]) -> HilbertSeries {
    ModuleOps::new(ring).free_series(shifts)
}
