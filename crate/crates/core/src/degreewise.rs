//! Degree-by-degree linear algebra over `R`: standard monomial bases,
//! multiplication via cached normal forms, and homogeneous components of
//! free modules and maps between them.

use std::collections::HashMap;

use crate::field::Field;
use crate::linalg::{Echelon, SparseVec};
use crate::modules::FreeElem;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::quotient::QuotientRing;

pub struct DegreewiseRing<'a, F: Field> {
    ring: &'a QuotientRing<F>,
    bases: HashMap<i64, Vec<Monomial>>,
    index: HashMap<Monomial, u32>,
    nf: HashMap<Monomial, SparseVec<F::Elem>>,
}

/// Offsets of the generator blocks of `⊕ R(-g_k)` in one degree.
#[derive(Clone, Debug)]
pub struct Layout {
    pub degree: i64,
    pub offsets: Vec<usize>,
    pub dims: Vec<usize>,
    pub total: usize,
}

impl Layout {
    /// Generator and local basis index of a global index.
    pub fn locate(&self, i: usize) -> (usize, usize) {
        let k = match self.offsets.binary_search(&i) {
            Ok(mut k) => {
                while self.dims[k] == 0 {
                    k += 1;
                }
                k
            }
            Err(k) => k - 1,
        };
        (k, i - self.offsets[k])
    }
}

impl<'a, F: Field> DegreewiseRing<'a, F> {
    pub fn new(ring: &'a QuotientRing<F>) -> Self {
        DegreewiseRing {
            ring,
            bases: HashMap::new(),
            index: HashMap::new(),
            nf: HashMap::new(),
        }
    }

    pub fn ring(&self) -> &QuotientRing<F> {
        self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    /// Standard monomials of degree `d`, descending.
    pub fn basis(&mut self, d: i64) -> &[Monomial] {
        if !self.bases.contains_key(&d) {
            let b = if d < 0 {
                Vec::new()
            } else {
                self.ring.standard_monomials(d)
            };
            for (i, m) in b.iter().enumerate() {
                self.index.insert(m.clone(), i as u32);
            }
            self.bases.insert(d, b);
        }
        &self.bases[&d]
    }

    pub fn dim(&mut self, d: i64) -> usize {
        self.basis(d).len()
    }

    /// Coordinates of the normal form of a monomial.
    pub fn nf_monomial(&mut self, m: &Monomial) -> &SparseVec<F::Elem> {
        if !self.nf.contains_key(m) {
            let d = self.ring.poly_ring().degree(m);
            self.basis(d);
            let p = self.ring.reduce(
                &self
                    .ring
                    .poly_ring()
                    .monomial(m.clone(), self.field().one()),
            );
            let mut v: SparseVec<F::Elem> = p
                .terms()
                .iter()
                .map(|(t, c)| (self.index[t], c.clone()))
                .collect();
            v.sort_by_key(|e| e.0);
            self.nf.insert(m.clone(), v);
        }
        &self.nf[m]
    }

    /// Coordinates of a homogeneous polynomial of degree `d`.
    pub fn coords(&mut self, p: &Polynomial<F::Elem>, d: i64) -> SparseVec<F::Elem> {
        let f = self.field().clone();
        let mut acc: HashMap<u32, F::Elem> = HashMap::new();
        self.basis(d);
        for (m, c) in p.terms() {
            for (i, x) in self.nf_monomial(m).clone() {
                let e = acc.entry(i).or_insert_with(|| f.zero());
                *e = f.add(e, &f.mul(c, &x));
            }
        }
        let mut v: SparseVec<F::Elem> = acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub fn layout(&mut self, gen_degrees: &[i64], j: i64) -> Layout {
        let mut offsets = Vec::with_capacity(gen_degrees.len());
        let mut dims = Vec::with_capacity(gen_degrees.len());
        let mut total = 0;
        for &g in gen_degrees {
            offsets.push(total);
            let d = self.dim(j - g);
            dims.push(d);
            total += d;
        }
        Layout {
            degree: j,
            offsets,
            dims,
            total,
        }
    }

    /// Coordinates in degree `j` of a free-module element.
    pub fn elem_coords(
        &mut self,
        target: &Layout,
        gen_degrees: &[i64],
        e: &FreeElem<F::Elem>,
    ) -> SparseVec<F::Elem> {
        let mut out: SparseVec<F::Elem> = Vec::new();
        for (l, p) in e {
            let off = target.offsets[*l] as u32;
            let v = self.coords(p, target.degree - gen_degrees[*l]);
            out.extend(v.into_iter().map(|(i, x)| (i + off, x)));
        }
        out.sort_by_key(|x| x.0);
        out
    }

    /// Coordinates of `b · image` where `b` is the `bi`-th basis monomial of degree `bd`.
    fn times_basis(
        &mut self,
        bd: i64,
        bi: usize,
        image: &FreeElem<F::Elem>,
        target: &Layout,
        target_gens: &[i64],
    ) -> SparseVec<F::Elem> {
        let f = self.field().clone();
        let b = self.basis(bd)[bi].clone();
        let mut acc: HashMap<u32, F::Elem> = HashMap::new();
        for (l, p) in image {
            if target.degree - target_gens[*l] < 0 {
                continue;
            }
            let off = target.offsets[*l] as u32;
            for (m, c) in p.terms() {
                let prod = b.mul(m);
                for (i, x) in self.nf_monomial(&prod).clone() {
                    let e = acc.entry(i + off).or_insert_with(|| f.zero());
                    *e = f.add(e, &f.mul(c, &x));
                }
            }
        }
        let mut v: SparseVec<F::Elem> = acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    /// Columns, in degree `j`, of the map sending generator `k` of
    /// `⊕ R(-src[k])` to `images[k] ∈ ⊕ R(-tgt[l])`.
    pub fn map_columns(
        &mut self,
        src: &[i64],
        images: &[FreeElem<F::Elem>],
        tgt: &[i64],
        j: i64,
    ) -> (Layout, Layout, Vec<SparseVec<F::Elem>>) {
        let sl = self.layout(src, j);
        let tl = self.layout(tgt, j);
        let mut cols = Vec::with_capacity(sl.total);
        for (k, &g) in src.iter().enumerate() {
            for bi in 0..sl.dims[k] {
                cols.push(self.times_basis(j - g, bi, &images[k], &tl, tgt));
            }
        }
        (sl, tl, cols)
    }

    /// Vectors spanning the degree-`j` part of the submodule generated by `gens`.
    pub fn span_columns(
        &mut self,
        gens: &[(i64, FreeElem<F::Elem>)],
        module: &[i64],
        j: i64,
    ) -> Vec<SparseVec<F::Elem>> {
        let tl = self.layout(module, j);
        let mut out = Vec::new();
        for (d, g) in gens {
            if *d > j {
                continue;
            }
            let n = self.dim(j - d);
            for bi in 0..n {
                let v = self.times_basis(j - d, bi, g, &tl, module);
                if !v.is_empty() {
                    out.push(v);
                }
            }
        }
        out
    }

    /// Inserts degree-`j` multiples of `gens` into `span` until its rank reaches `cap`.
    pub fn fill_span(
        &mut self,
        span: &mut Echelon<F>,
        gens: &[(i64, FreeElem<F::Elem>)],
        module: &[i64],
        j: i64,
        cap: usize,
    ) {
        let tl = self.layout(module, j);
        for (d, g) in gens {
            if *d > j {
                continue;
            }
            for bi in 0..self.dim(j - d) {
                if span.rank() >= cap {
                    return;
                }
                let v = self.times_basis(j - d, bi, g, &tl, module);
                if !v.is_empty() {
                    span.insert(&v);
                }
            }
        }
    }

    /// Converts degree-`j` coordinates back into a free-module element.
    pub fn to_elem(
        &mut self,
        layout: &Layout,
        gen_degrees: &[i64],
        v: &SparseVec<F::Elem>,
    ) -> FreeElem<F::Elem> {
        let mut parts: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); gen_degrees.len()];
        for (i, x) in v {
            let (k, local) = layout.locate(*i as usize);
            let m = self.basis(layout.degree - gen_degrees[k])[local].clone();
            parts[k].push((m, x.clone()));
        }
        let pr = self.ring.poly_ring();
        parts
            .into_iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(|(k, t)| (k, pr.from_terms(t)))
            .collect()
    }
}

fn identity_vectors<F: Field>(field: &F, n: usize) -> Vec<SparseVec<F::Elem>> {
    (0..n as u32).map(|i| vec![(i, field.one())]).collect()
}

/// Result of a degreewise subquotient computation in one degree.
#[derive(Clone, Debug)]
pub struct DegreeStep<E> {
    pub degree: i64,
    /// `dim Z_j` where `Z` is the kernel (or the whole module).
    pub cycles: usize,
    /// `dim B_j` of the boundary submodule.
    pub boundaries: usize,
    /// Elements of `Z_j` that are new minimal generators of `Z / B`.
    pub new_generators: Vec<FreeElem<E>>,
}

impl<E> DegreeStep<E> {
    pub fn homology_dim(&self) -> usize {
        self.cycles - self.boundaries
    }
}

/// For `Z = ker(out) ⊆ ⊕ R(-module)` (or the whole module when `out` is
/// `None`) and `B` the submodule generated by `boundary`, returns per degree
/// the dimensions of `Z`, `B` and minimal generators of `Z / B`.
pub fn subquotient<F: Field>(
    dr: &mut DegreewiseRing<'_, F>,
    module: &[i64],
    out: Option<(&[FreeElem<F::Elem>], &[i64])>,
    boundary: &[(i64, FreeElem<F::Elem>)],
    degrees: std::ops::RangeInclusive<i64>,
) -> Vec<DegreeStep<F::Elem>> {
    let field = dr.field().clone();
    let mut found: Vec<(i64, FreeElem<F::Elem>)> = Vec::new();
    let mut steps = Vec::new();
    for j in degrees {
        let layout = dr.layout(module, j);
        if layout.total == 0 {
            steps.push(DegreeStep {
                degree: j,
                cycles: 0,
                boundaries: 0,
                new_generators: Vec::new(),
            });
            continue;
        }
        // cycles
        let cycles: Vec<SparseVec<F::Elem>> = match out {
            None => identity_vectors(&field, layout.total),
            Some((images, tgt)) => {
                let (_, _, cols) = dr.map_columns(module, images, tgt, j);
                let tl = dr.layout(tgt, j);
                if tl.total == 0 {
                    identity_vectors(&field, layout.total)
                } else {
                    let mut ech = Echelon::new(field.clone(), tl.total);
                    let mut ker = Vec::new();
                    for (c, col) in cols.iter().enumerate() {
                        if let Some(k) = ech.insert_tagged(col, vec![(c as u32, field.one())]) {
                            ker.push(k);
                        }
                    }
                    ker
                }
            }
        };
        // boundaries and products of earlier generators, both inside the cycles
        let mut span = Echelon::new(field.clone(), layout.total);
        dr.fill_span(&mut span, boundary, module, j, cycles.len());
        let boundaries = span.rank();
        dr.fill_span(&mut span, &found, module, j, cycles.len());
        if span.rank() == cycles.len() {
            steps.push(DegreeStep {
                degree: j,
                cycles: cycles.len(),
                boundaries,
                new_generators: Vec::new(),
            });
            continue;
        }
        let mut new_generators = Vec::new();
        for z in &cycles {
            if span.insert(z) {
                let e = dr.to_elem(&layout, module, z);
                found.push((j, e.clone()));
                new_generators.push(e);
            }
        }
        steps.push(DegreeStep {
            degree: j,
            cycles: cycles.len(),
            boundaries,
            new_generators,
        });
    }
    steps
}

/// Minimal generators of `<base> + <cands>` modulo `<base>`, chosen greedily by
/// ascending degree (input order within a degree).
pub fn minimal_generators_mod<F: Field>(
    dr: &mut DegreewiseRing<'_, F>,
    module: &[i64],
    base: &[(i64, FreeElem<F::Elem>)],
    cands: &[(i64, FreeElem<F::Elem>)],
) -> Vec<(i64, FreeElem<F::Elem>)> {
    let field = dr.field().clone();
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by_key(|&i| cands[i].0);
    let mut found: Vec<(i64, FreeElem<F::Elem>)> = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let j = cands[order[k]].0;
        let layout = dr.layout(module, j);
        let mut span = Echelon::new(field.clone(), layout.total);
        dr.fill_span(&mut span, base, module, j, layout.total);
        dr.fill_span(&mut span, &found, module, j, layout.total);
        let mut fresh = Vec::new();
        while k < order.len() && cands[order[k]].0 == j {
            let c = &cands[order[k]];
            let v = dr.elem_coords(&layout, module, &c.1);
            if span.insert(&v) {
                fresh.push(c.clone());
            }
            k += 1;
        }
        found.extend(fresh);
    }
    found
}
