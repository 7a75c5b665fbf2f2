//! Graded free modules over `R = P / I_R`, homogeneous maps between them, and
//! Gröbner-certified kernels, images and subquotients.

use serde::Serialize;

use crate::error::Result;
use crate::field::Field;
use crate::groebner::{syzygies_modulo, HilbertSeries, ModVec, ModuleGb, ModuleSpace};
use crate::poly::Polynomial;
use crate::quotient::QuotientRing;

/// Sparse element of a free module: `(generator index, coefficient)` pairs.
pub type FreeElem<E> = Vec<(usize, Polynomial<E>)>;

/// Homogeneous map `⊕ R(-col_degrees[j]) -> ⊕ R(-row_degrees[i])`, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix<E> {
    pub row_degrees: Vec<i64>,
    pub col_degrees: Vec<i64>,
    pub columns: Vec<FreeElem<E>>,
}

impl<E: Clone> GradedMatrix<E> {
    pub fn new(row_degrees: Vec<i64>, col_degrees: Vec<i64>, columns: Vec<FreeElem<E>>) -> Self {
        assert_eq!(col_degrees.len(), columns.len());
        GradedMatrix {
            row_degrees,
            col_degrees,
            columns,
        }
    }

    pub fn nrows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_degrees.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&Polynomial<E>> {
        self.columns[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map(|(_, p)| p)
    }

    /// Transpose, as the map of dual modules with negated degrees.
    pub fn transpose(&self) -> Self {
        let mut cols: Vec<FreeElem<E>> = vec![Vec::new(); self.nrows()];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, p) in col {
                cols[*i].push((j, p.clone()));
            }
        }
        GradedMatrix {
            row_degrees: self.col_degrees.iter().map(|d| -d).collect(),
            col_degrees: self.row_degrees.iter().map(|d| -d).collect(),
            columns: cols,
        }
    }
}

/// Gröbner-based computations with graded `R`-modules.
pub struct ModuleOps<'a, F: Field> {
    pub ring: &'a QuotientRing<F>,
}

impl<'a, F: Field> ModuleOps<'a, F> {
    pub fn new(ring: &'a QuotientRing<F>) -> Self {
        ModuleOps { ring }
    }

    pub fn space(&self, shifts: &[i64]) -> ModuleSpace<F> {
        ModuleSpace::new(self.ring.poly_ring().clone(), shifts.to_vec())
    }

    pub fn to_vec(&self, shifts: &[i64], e: &FreeElem<F::Elem>) -> ModVec<F::Elem> {
        self.space(shifts).from_polys(e)
    }

    pub fn to_elem(&self, shifts: &[i64], v: &ModVec<F::Elem>) -> FreeElem<F::Elem> {
        self.space(shifts).to_sparse(v)
    }

    /// Reduces every coefficient modulo `I_R` and drops zeros.
    pub fn reduce_elem(&self, e: &FreeElem<F::Elem>) -> FreeElem<F::Elem> {
        let mut acc: Vec<(usize, Polynomial<F::Elem>)> = Vec::new();
        for (i, p) in e {
            match acc.iter_mut().find(|(k, _)| k == i) {
                Some(slot) => slot.1 = self.ring.poly_ring().add(&slot.1, p),
                None => acc.push((*i, p.clone())),
            }
        }
        let mut out: FreeElem<F::Elem> = acc
            .into_iter()
            .map(|(i, p)| (i, self.ring.reduce(&p)))
            .filter(|(_, p)| !p.is_zero())
            .collect();
        out.sort_by_key(|x| x.0);
        out
    }

    /// Degree of a nonzero homogeneous element of `⊕ R(-shifts)`.
    pub fn elem_degree(&self, shifts: &[i64], e: &FreeElem<F::Elem>) -> Option<i64> {
        self.space(shifts).degree(&self.to_vec(shifts, e))
    }

    /// `I_R · e_c` for every component.
    fn ambient(&self, shifts: &[i64]) -> Vec<ModVec<F::Elem>> {
        let sp = self.space(shifts);
        let mut out = Vec::new();
        for c in 0..shifts.len() {
            for g in self.ring.relations() {
                out.push(sp.from_polys(&[(c, g.clone())]));
            }
        }
        out
    }

    /// Gröbner basis of the preimage in `P^r` of the submodule generated by `gens`.
    pub fn submodule_gb(
        &self,
        shifts: &[i64],
        gens: &[FreeElem<F::Elem>],
        limit: Option<i64>,
    ) -> ModuleGb<F> {
        let sp = self.space(shifts);
        let mut all: Vec<ModVec<F::Elem>> = gens.iter().map(|g| sp.from_polys(g)).collect();
        all.extend(self.ambient(shifts));
        ModuleGb::compute(&sp, &all, limit)
    }

    /// Hilbert series of `⊕ R(-shifts) / <gens>`.
    pub fn quotient_series(&self, shifts: &[i64], gens: &[FreeElem<F::Elem>]) -> HilbertSeries {
        self.submodule_gb(shifts, gens, None).quotient_series()
    }

    pub fn free_series(&self, shifts: &[i64]) -> HilbertSeries {
        let h = self.ring.hilbert_series();
        shifts
            .iter()
            .fold(HilbertSeries::zero(), |acc, &d| acc.add(&h.shift(d)))
    }

    /// Hilbert series of the submodule generated by `gens`.
    pub fn submodule_series(&self, shifts: &[i64], gens: &[FreeElem<F::Elem>]) -> HilbertSeries {
        self.free_series(shifts)
            .sub(&self.quotient_series(shifts, gens))
    }

    /// Image of a free element under a matrix (not reduced).
    pub fn apply(&self, m: &GradedMatrix<F::Elem>, e: &FreeElem<F::Elem>) -> FreeElem<F::Elem> {
        let pr = self.ring.poly_ring();
        let mut acc: Vec<Polynomial<F::Elem>> = vec![pr.zero(); m.nrows()];
        for (j, c) in e {
            for (i, p) in &m.columns[*j] {
                acc[*i] = pr.add(&acc[*i], &pr.mul(c, p));
            }
        }
        let e: FreeElem<F::Elem> = acc
            .into_iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .collect();
        self.reduce_elem(&e)
    }

    /// Generators of the kernel of `m` over `R`, reduced modulo `I_R`.
    pub fn kernel(&self, m: &GradedMatrix<F::Elem>, limit: Option<i64>) -> Vec<FreeElem<F::Elem>> {
        let target = self.space(&m.row_degrees);
        let cols: Vec<ModVec<F::Elem>> = m.columns.iter().map(|c| target.from_polys(c)).collect();
        let ambient = self.ambient(&m.row_degrees);
        let syz = syzygies_modulo(
            self.ring.poly_ring(),
            &m.row_degrees,
            &ambient,
            &cols,
            &m.col_degrees,
            limit,
        );
        let src = self.space(&m.col_degrees);
        syz.iter()
            .map(|v| self.reduce_elem(&src.to_sparse(v)))
            .filter(|e| !e.is_empty())
            .collect()
    }

    /// Minimal generators of the subquotient `<cands> + <base> / <base>`, chosen
    /// greedily by ascending degree (ties by the module order of the leads).
    pub fn minimal_generators_modulo(
        &self,
        shifts: &[i64],
        base: &[FreeElem<F::Elem>],
        cands: &[FreeElem<F::Elem>],
    ) -> Vec<FreeElem<F::Elem>> {
        let sp = self.space(shifts);
        let mut sorted: Vec<(i64, ModVec<F::Elem>, FreeElem<F::Elem>)> = cands
            .iter()
            .map(|c| self.reduce_elem(c))
            .filter(|c| !c.is_empty())
            .map(|c| {
                let v = sp.from_polys(&c);
                (sp.degree(&v).expect("homogeneous element"), v, c)
            })
            .collect();
        sorted.sort_by(|a, b| {
            a.0.cmp(&b.0).then_with(|| {
                let (c1, m1, _) = a.1.lead().unwrap();
                let (c2, m2, _) = b.1.lead().unwrap();
                sp.cmp_terms(*c2, m2, *c1, m1)
            })
        });
        let mut kept: Vec<FreeElem<F::Elem>> = Vec::new();
        for (d, v, c) in sorted {
            let mut all = base.to_vec();
            all.extend(kept.iter().cloned());
            let gb = self.submodule_gb(shifts, &all, Some(d));
            if !gb.contains(&v) {
                kept.push(c);
            }
        }
        kept
    }

    /// Whether `e` lies in the submodule generated by `gens`.
    pub fn contains(
        &self,
        shifts: &[i64],
        gens: &[FreeElem<F::Elem>],
        e: &FreeElem<F::Elem>,
    ) -> bool {
        let v = self.to_vec(shifts, e);
        let limit = self.space(shifts).degree(&v);
        self.submodule_gb(shifts, gens, limit).contains(&v)
    }

    pub fn format_elem(&self, e: &FreeElem<F::Elem>, basis: &dyn Fn(usize) -> String) -> String {
        if e.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = e
            .iter()
            .map(|(i, p)| {
                let s = self.ring.format(p);
                if p.len() > 1 {
                    format!("({s})*{}", basis(*i))
                } else if s == "1" {
                    basis(*i)
                } else if s == "-1" {
                    format!("-{}", basis(*i))
                } else {
                    format!("{s}*{}", basis(*i))
                }
            })
            .collect();
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// Minimal generator degrees and exact Hilbert series of a computed module.
#[derive(Clone, Debug, Serialize)]
pub struct GradedModuleData<E> {
    pub generator_degrees: Vec<i64>,
    pub hilbert: HilbertSeries,
    #[serde(skip)]
    pub cycle_representatives: Option<Vec<FreeElem<E>>>,
}

impl<E> GradedModuleData<E> {
    pub fn is_zero(&self) -> bool {
        self.hilbert.is_zero()
    }

    pub fn num_generators(&self) -> usize {
        self.generator_degrees.len()
    }
}

/// Checks homogeneity of every entry against the stated degrees.
pub fn check_homogeneous<F: Field>(
    ring: &QuotientRing<F>,
    m: &GradedMatrix<F::Elem>,
) -> Result<()> {
    let pr = ring.poly_ring();
    for (j, col) in m.columns.iter().enumerate() {
        for (i, p) in col {
            if p.is_zero() {
                continue;
            }
            let d = pr.weighted_degree(p)?;
            if d != m.col_degrees[j] - m.row_degrees[*i] {
                return Err(crate::error::AlgebraError::NonHomogeneous(pr.format(p)));
            }
        }
    }
    Ok(())
}
