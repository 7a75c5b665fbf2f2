//! Buchberger's algorithm for homogeneous submodules of graded free modules
//! `P^r` over a weighted polynomial ring `P`. Ideals are the rank-one case.

use std::cmp::Ordering;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};

pub mod hilbert;
mod ideal;

pub use hilbert::{monomial_ideal_numerator, HilbertSeries};
pub use ideal::{buchberger, colon_ideal, intersect_ideals, GroebnerBasis};

pub type ModTerm<E> = (u32, Monomial, E);

/// Vector of `P^r`, terms sorted descending in the order of its [`ModuleSpace`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModVec<E> {
    terms: Vec<ModTerm<E>>,
}

impl<E> ModVec<E> {
    pub fn zero() -> Self {
        ModVec { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[ModTerm<E>] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&ModTerm<E>> {
        self.terms.first()
    }

    pub fn lead_component(&self) -> Option<usize> {
        self.terms.first().map(|t| t.0 as usize)
    }
}

/// A graded free module `⊕ P(-shift_c)` with a module monomial order.
///
/// Components `< split` form a block that dominates all others, which turns
/// a Gröbner basis computation into an elimination.
#[derive(Clone, Debug)]
pub struct ModuleSpace<F: Field> {
    ring: PolyRing<F>,
    shifts: Vec<i64>,
    split: usize,
}

impl<F: Field> ModuleSpace<F> {
    pub fn new(ring: PolyRing<F>, shifts: Vec<i64>) -> Self {
        ModuleSpace {
            ring,
            shifts,
            split: 0,
        }
    }

    pub fn with_split(ring: PolyRing<F>, shifts: Vec<i64>, split: usize) -> Self {
        ModuleSpace {
            ring,
            shifts,
            split,
        }
    }

    /// The ring itself as a rank-one module.
    pub fn ideal_space(ring: PolyRing<F>) -> Self {
        Self::new(ring, vec![0])
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i64] {
        &self.shifts
    }

    #[inline]
    pub fn term_degree(&self, c: u32, m: &Monomial) -> i64 {
        self.ring.degree(m) + self.shifts[c as usize]
    }

    pub fn cmp_terms(&self, c1: u32, m1: &Monomial, c2: u32, m2: &Monomial) -> Ordering {
        if self.split > 0 {
            let b1 = (c1 as usize) < self.split;
            let b2 = (c2 as usize) < self.split;
            if b1 != b2 {
                return b1.cmp(&b2);
            }
        }
        let d1 = self.term_degree(c1, m1);
        let d2 = self.term_degree(c2, m2);
        d1.cmp(&d2)
            .then_with(|| self.ring.order().tie_break(m1, m2))
            .then_with(|| c2.cmp(&c1))
    }

    pub fn from_terms(&self, mut terms: Vec<ModTerm<F::Elem>>) -> ModVec<F::Elem> {
        let f = self.ring.field();
        terms.sort_by(|a, b| self.cmp_terms(b.0, &b.1, a.0, &a.1));
        let mut out: Vec<ModTerm<F::Elem>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.0 == t.0 && last.1 == t.1 => {
                    last.2 = f.add(&last.2, &t.2);
                }
                _ => {
                    if matches!(out.last(), Some(l) if f.is_zero(&l.2)) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if matches!(out.last(), Some(l) if f.is_zero(&l.2)) {
            out.pop();
        }
        ModVec { terms: out }
    }

    /// Vector with the given polynomial in each listed component.
    pub fn from_polys(&self, entries: &[(usize, Polynomial<F::Elem>)]) -> ModVec<F::Elem> {
        let mut terms = Vec::new();
        for (c, p) in entries {
            for (m, x) in p.terms() {
                terms.push((*c as u32, m.clone(), x.clone()));
            }
        }
        self.from_terms(terms)
    }

    pub fn unit_vector(&self, c: usize) -> ModVec<F::Elem> {
        ModVec {
            terms: vec![(
                c as u32,
                Monomial::one(self.ring.nvars()),
                self.ring.field().one(),
            )],
        }
    }

    /// Component polynomials, one per component.
    pub fn to_polys(&self, v: &ModVec<F::Elem>) -> Vec<Polynomial<F::Elem>> {
        let mut parts: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); self.rank()];
        for (c, m, x) in &v.terms {
            parts[*c as usize].push((m.clone(), x.clone()));
        }
        parts.into_iter().map(|t| self.ring.from_terms(t)).collect()
    }

    /// Sparse component list of a vector.
    pub fn to_sparse(&self, v: &ModVec<F::Elem>) -> Vec<(usize, Polynomial<F::Elem>)> {
        self.to_polys(v)
            .into_iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }

    /// Re-embeds terms with component `c` mapped to `map(c)` into this space.
    pub fn remap(&self, v: &ModVec<F::Elem>, map: impl Fn(u32) -> Option<u32>) -> ModVec<F::Elem> {
        let terms = v
            .terms
            .iter()
            .filter_map(|(c, m, x)| map(*c).map(|nc| (nc, m.clone(), x.clone())))
            .collect();
        self.from_terms(terms)
    }

    fn merge(
        &self,
        a: &[ModTerm<F::Elem>],
        b: &[ModTerm<F::Elem>],
        sign_b: bool,
    ) -> Vec<ModTerm<F::Elem>> {
        let f = self.ring.field();
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let neg = |x: &F::Elem| if sign_b { f.neg(x) } else { x.clone() };
        while i < a.len() && j < b.len() {
            match self.cmp_terms(a[i].0, &a[i].1, b[j].0, &b[j].1) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, b[j].1.clone(), neg(&b[j].2)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign_b {
                        f.sub(&a[i].2, &b[j].2)
                    } else {
                        f.add(&a[i].2, &b[j].2)
                    };
                    if !f.is_zero(&c) {
                        out.push((a[i].0, a[i].1.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            out.push((t.0, t.1.clone(), neg(&t.2)));
        }
        out
    }

    pub fn add(&self, a: &ModVec<F::Elem>, b: &ModVec<F::Elem>) -> ModVec<F::Elem> {
        ModVec {
            terms: self.merge(&a.terms, &b.terms, false),
        }
    }

    pub fn sub(&self, a: &ModVec<F::Elem>, b: &ModVec<F::Elem>) -> ModVec<F::Elem> {
        ModVec {
            terms: self.merge(&a.terms, &b.terms, true),
        }
    }

    /// `c * m * v`.
    pub fn mul_term(&self, v: &ModVec<F::Elem>, m: &Monomial, c: &F::Elem) -> ModVec<F::Elem> {
        let f = self.ring.field();
        if f.is_zero(c) {
            return ModVec::zero();
        }
        ModVec {
            terms: v
                .terms
                .iter()
                .map(|(k, t, x)| (*k, t.mul(m), f.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul_poly(&self, v: &ModVec<F::Elem>, p: &Polynomial<F::Elem>) -> ModVec<F::Elem> {
        let mut terms = Vec::with_capacity(v.terms.len() * p.len());
        let f = self.ring.field();
        for (m, c) in p.terms() {
            for (k, t, x) in &v.terms {
                terms.push((*k, t.mul(m), f.mul(x, c)));
            }
        }
        self.from_terms(terms)
    }

    pub fn scale(&self, v: &ModVec<F::Elem>, c: &F::Elem) -> ModVec<F::Elem> {
        self.mul_term(v, &Monomial::one(self.ring.nvars()), c)
    }

    pub fn monic(&self, v: &ModVec<F::Elem>) -> ModVec<F::Elem> {
        match v.terms.first() {
            None => ModVec::zero(),
            Some((_, _, c)) => {
                let f = self.ring.field();
                if f.is_one(c) {
                    v.clone()
                } else {
                    self.scale(v, &f.inv(c))
                }
            }
        }
    }

    /// Common degree of a nonzero homogeneous vector.
    pub fn degree(&self, v: &ModVec<F::Elem>) -> Option<i64> {
        let (c, m, _) = v.terms.first()?;
        let d = self.term_degree(*c, m);
        if v.terms.iter().all(|(c, m, _)| self.term_degree(*c, m) == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self, v: &ModVec<F::Elem>) -> bool {
        v.is_zero() || self.degree(v).is_some()
    }

    pub fn format(&self, v: &ModVec<F::Elem>) -> String {
        let parts: Vec<String> = self
            .to_polys(v)
            .iter()
            .map(|p| self.ring.format(p))
            .collect();
        format!("[{}]", parts.join(", "))
    }

    /// Series of `P^r / (leading terms)`, given leading terms.
    pub fn quotient_series_from_leads(&self, leads: &[(u32, Monomial)]) -> HilbertSeries {
        let weights = self.ring.weights();
        let mut total = HilbertSeries::zero();
        for c in 0..self.rank() {
            let gens: Vec<Monomial> = leads
                .iter()
                .filter(|(k, _)| *k as usize == c)
                .map(|(_, m)| m.clone())
                .collect();
            let num = monomial_ideal_numerator(&gens, weights);
            total = total.add(&HilbertSeries::new(self.shifts[c], num, weights.to_vec()));
        }
        total
    }

    pub fn free_series(&self) -> HilbertSeries {
        HilbertSeries::free(&self.shifts, self.ring.weights())
    }
}

struct LeadIndex {
    per_component: Vec<Vec<(Monomial, usize)>>,
}

impl LeadIndex {
    fn new(rank: usize) -> Self {
        LeadIndex {
            per_component: vec![Vec::new(); rank],
        }
    }

    fn insert(&mut self, c: u32, m: Monomial, idx: usize) {
        self.per_component[c as usize].push((m, idx));
    }

    fn find_divisor(&self, c: u32, m: &Monomial) -> Option<(usize, Monomial)> {
        self.per_component[c as usize]
            .iter()
            .find(|(lm, _)| lm.divides(m))
            .map(|(lm, idx)| (*idx, lm.quotient_of(m)))
    }
}

/// Reduces `v` by the indexed basis; `full` also reduces non-leading terms.
fn reduce_by<F: Field>(
    space: &ModuleSpace<F>,
    v: ModVec<F::Elem>,
    basis: &[ModVec<F::Elem>],
    index: &LeadIndex,
    full: bool,
) -> ModVec<F::Elem> {
    let f = space.ring.field();
    let mut out: Vec<ModTerm<F::Elem>> = Vec::new();
    let mut rem = v.terms;
    let mut pos = 0usize;
    while pos < rem.len() {
        let (c, m, coef) = (&rem[pos].0, &rem[pos].1, &rem[pos].2);
        match index.find_divisor(*c, m) {
            Some((idx, q)) => {
                let g = &basis[idx];
                let coef = coef.clone();
                let sub: Vec<ModTerm<F::Elem>> = g
                    .terms
                    .iter()
                    .map(|(k, t, x)| (*k, t.mul(&q), f.mul(x, &coef)))
                    .collect();
                rem = space.merge(&rem[pos..], &sub, true);
                pos = 0;
            }
            None => {
                if !full {
                    out.extend(rem.drain(pos..));
                    break;
                }
                out.push(rem[pos].clone());
                pos += 1;
            }
        }
    }
    ModVec { terms: out }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    comp: u32,
    lcm: Monomial,
    degree: i64,
}

/// A reduced Gröbner basis of a homogeneous submodule, possibly truncated
/// at a degree limit (then valid for all questions in degrees `<=` the limit).
#[derive(Clone, Debug)]
pub struct ModuleGb<F: Field> {
    space: ModuleSpace<F>,
    elems: Vec<ModVec<F::Elem>>,
    index_leads: Vec<(u32, Monomial)>,
    degree_limit: Option<i64>,
}

impl<F: Field> ModuleGb<F> {
    pub fn compute(
        space: &ModuleSpace<F>,
        gens: &[ModVec<F::Elem>],
        degree_limit: Option<i64>,
    ) -> Self {
        let elems = buchberger_module(space, gens, degree_limit);
        let index_leads = elems
            .iter()
            .map(|g| {
                let (c, m, _) = g.lead().unwrap();
                (*c, m.clone())
            })
            .collect();
        ModuleGb {
            space: space.clone(),
            elems,
            index_leads,
            degree_limit,
        }
    }

    pub fn space(&self) -> &ModuleSpace<F> {
        &self.space
    }

    pub fn elements(&self) -> &[ModVec<F::Elem>] {
        &self.elems
    }

    pub fn degree_limit(&self) -> Option<i64> {
        self.degree_limit
    }

    pub fn leads(&self) -> &[(u32, Monomial)] {
        &self.index_leads
    }

    fn index(&self) -> LeadIndex {
        let mut idx = LeadIndex::new(self.space.rank());
        for (i, (c, m)) in self.index_leads.iter().enumerate() {
            idx.insert(*c, m.clone(), i);
        }
        idx
    }

    pub fn reduce(&self, v: &ModVec<F::Elem>) -> ModVec<F::Elem> {
        reduce_by(&self.space, v.clone(), &self.elems, &self.index(), true)
    }

    /// Reduces many vectors sharing one lead index.
    pub fn reduce_all(&self, vs: &[ModVec<F::Elem>]) -> Vec<ModVec<F::Elem>> {
        let idx = self.index();
        vs.iter()
            .map(|v| reduce_by(&self.space, v.clone(), &self.elems, &idx, true))
            .collect()
    }

    pub fn contains(&self, v: &ModVec<F::Elem>) -> bool {
        reduce_by(&self.space, v.clone(), &self.elems, &self.index(), false).is_zero()
    }

    /// Hilbert series of `P^r / M` (exact only without a degree limit).
    pub fn quotient_series(&self) -> HilbertSeries {
        self.space.quotient_series_from_leads(&self.index_leads)
    }
}

fn buchberger_module<F: Field>(
    space: &ModuleSpace<F>,
    gens: &[ModVec<F::Elem>],
    limit: Option<i64>,
) -> Vec<ModVec<F::Elem>> {
    let ideal_case = space.rank() == 1;
    let mut inputs: Vec<(i64, ModVec<F::Elem>)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let d = space.degree(g).expect("generators must be homogeneous");
            (d, space.monic(g))
        })
        .collect();
    inputs.sort_by(|a, b| {
        a.0.cmp(&b.0).then_with(|| {
            let (c1, m1, _) = a.1.lead().unwrap();
            let (c2, m2, _) = b.1.lead().unwrap();
            space.cmp_terms(*c1, m1, *c2, m2)
        })
    });
    inputs.dedup_by(|a, b| a.1 == b.1);

    let mut basis: Vec<ModVec<F::Elem>> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut index = LeadIndex::new(space.rank());
    let mut pairs: Vec<Pair> = Vec::new();
    let mut next_input = 0usize;

    loop {
        let pair_deg = pairs.iter().map(|p| p.degree).min();
        let input_deg = inputs.get(next_input).map(|x| x.0);
        let deg = match (pair_deg, input_deg) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if let Some(l) = limit {
            if deg > l {
                break;
            }
        }
        let mut todo: Vec<ModVec<F::Elem>> = Vec::new();
        let mut current: Vec<Pair> = Vec::new();
        pairs.retain(|p| {
            if p.degree == deg {
                current.push(p.clone());
                false
            } else {
                true
            }
        });
        current.sort_by(|a, b| {
            space
                .cmp_terms(a.comp, &a.lcm, b.comp, &b.lcm)
                .then(a.i.cmp(&b.i))
                .then(a.j.cmp(&b.j))
        });
        for p in &current {
            let gi = &basis[p.i];
            let gj = &basis[p.j];
            let qi = gi.lead().unwrap().1.quotient_of(&p.lcm);
            let qj = gj.lead().unwrap().1.quotient_of(&p.lcm);
            let one = space.ring.field().one();
            let s = space.sub(
                &space.mul_term(gi, &qi, &one),
                &space.mul_term(gj, &qj, &one),
            );
            todo.push(s);
        }
        while next_input < inputs.len() && inputs[next_input].0 == deg {
            todo.push(inputs[next_input].1.clone());
            next_input += 1;
        }
        for f in todo {
            let r = reduce_by(space, f, &basis, &index, true);
            if r.is_zero() {
                continue;
            }
            let r = space.monic(&r);
            let t = basis.len();
            let (hc, hm) = {
                let (c, m, _) = r.lead().unwrap();
                (*c, m.clone())
            };
            update_pairs(space, &basis, &active, &mut pairs, t, hc, &hm, ideal_case);
            for (k, g) in basis.iter().enumerate() {
                if active[k] {
                    let (c, m, _) = g.lead().unwrap();
                    if *c == hc && hm.divides(m) {
                        active[k] = false;
                    }
                }
            }
            index.insert(hc, hm, t);
            basis.push(r);
            active.push(true);
        }
    }
    interreduce(space, basis)
}

#[allow(clippy::too_many_arguments)]
fn update_pairs<F: Field>(
    space: &ModuleSpace<F>,
    basis: &[ModVec<F::Elem>],
    active: &[bool],
    pairs: &mut Vec<Pair>,
    t: usize,
    hc: u32,
    hm: &Monomial,
    ideal_case: bool,
) {
    // chain criterion on existing pairs
    pairs.retain(|p| {
        if p.comp != hc || !hm.divides(&p.lcm) {
            return true;
        }
        let li = basis[p.i].lead().unwrap().1.lcm(hm);
        let lj = basis[p.j].lead().unwrap().1.lcm(hm);
        li == p.lcm || lj == p.lcm
    });

    struct Cand {
        i: usize,
        lcm: Monomial,
        coprime: bool,
    }
    let mut cands: Vec<Cand> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        if !active[i] {
            continue;
        }
        let (c, m, _) = g.lead().unwrap();
        if *c != hc {
            continue;
        }
        cands.push(Cand {
            i,
            lcm: m.lcm(hm),
            coprime: ideal_case && m.is_coprime(hm),
        });
    }
    // drop candidates whose lcm is properly divisible by another lcm
    let keep: Vec<bool> = cands
        .iter()
        .map(|a| {
            !cands
                .iter()
                .any(|b| b.lcm != a.lcm && b.lcm.divides(&a.lcm))
        })
        .collect();
    let mut survivors: Vec<&Cand> = cands
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(c, _)| c)
        .collect();
    // one pair per lcm; none if any pair with that lcm is coprime
    survivors.sort_by(|a, b| space.cmp_terms(hc, &a.lcm, hc, &b.lcm).then(a.i.cmp(&b.i)));
    let mut k = 0;
    while k < survivors.len() {
        let mut e = k;
        while e < survivors.len() && survivors[e].lcm == survivors[k].lcm {
            e += 1;
        }
        let any_coprime = survivors[k..e].iter().any(|c| c.coprime);
        if !any_coprime {
            let c = survivors[k];
            pairs.push(Pair {
                i: c.i,
                j: t,
                comp: hc,
                degree: space.term_degree(hc, &c.lcm),
                lcm: c.lcm.clone(),
            });
        }
        k = e;
    }
}

fn interreduce<F: Field>(
    space: &ModuleSpace<F>,
    basis: Vec<ModVec<F::Elem>>,
) -> Vec<ModVec<F::Elem>> {
    let mut minimal: Vec<ModVec<F::Elem>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let (c, m, _) = g.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let (c2, m2, _) = h.lead().unwrap();
            c2 == c && m2.divides(m) && (m2 != m || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    minimal.sort_by(|a, b| {
        let (c1, m1, _) = a.lead().unwrap();
        let (c2, m2, _) = b.lead().unwrap();
        space.cmp_terms(*c2, m2, *c1, m1)
    });
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let mut idx = LeadIndex::new(space.rank());
        for (j, g) in minimal.iter().enumerate() {
            if j != k {
                let (c, m, _) = g.lead().unwrap();
                idx.insert(*c, m.clone(), j);
            }
        }
        let g = &minimal[k];
        let lead = g.terms[0].clone();
        let tail = ModVec {
            terms: g.terms[1..].to_vec(),
        };
        let tail = reduce_by(space, tail, &minimal, &idx, true);
        let mut terms = vec![lead];
        terms.extend(tail.terms);
        out.push(ModVec { terms });
    }
    out
}

/// Generators of `{ a in P^m : Σ a_j col_j ∈ ambient }` where the columns and
/// the ambient submodule live in `⊕_{c<r} P(-target_shifts[c])` and column `j`
/// is homogeneous of degree `col_degrees[j]`.
pub fn syzygies_modulo<F: Field>(
    ring: &PolyRing<F>,
    target_shifts: &[i64],
    ambient: &[ModVec<F::Elem>],
    columns: &[ModVec<F::Elem>],
    col_degrees: &[i64],
    degree_limit: Option<i64>,
) -> Vec<ModVec<F::Elem>> {
    let r = target_shifts.len();
    let m = columns.len();
    let mut shifts = target_shifts.to_vec();
    shifts.extend_from_slice(col_degrees);
    let big = ModuleSpace::with_split(ring.clone(), shifts, r);
    let mut gens = Vec::with_capacity(m + ambient.len());
    let one = ring.field().one();
    let unit = Monomial::one(ring.nvars());
    for (j, col) in columns.iter().enumerate() {
        let mut terms: Vec<ModTerm<F::Elem>> = col.terms.clone();
        terms.push(((r + j) as u32, unit.clone(), one.clone()));
        gens.push(big.from_terms(terms));
    }
    for a in ambient {
        gens.push(big.from_terms(a.terms.clone()));
    }
    let gb = ModuleGb::compute(&big, &gens, degree_limit);
    let source = ModuleSpace::new(ring.clone(), col_degrees.to_vec());
    gb.elements()
        .iter()
        .filter(|g| g.lead_component().unwrap() >= r)
        .map(|g| source.remap(g, |c| (c as usize >= r).then(|| c - r as u32)))
        .collect()
}
