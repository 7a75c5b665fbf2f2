//! The working ring `R = P / I_R`, represented by a Gröbner basis of `I_R`.

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::groebner::{buchberger, colon_ideal, GroebnerBasis, HilbertSeries};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};
use crate::presentation::GradedRingPresentation;

#[derive(Clone, Debug)]
pub struct QuotientRing<F: Field> {
    ring: PolyRing<F>,
    relations: Vec<Polynomial<F::Elem>>,
    gb: GroebnerBasis<F>,
}

impl<F: Field> QuotientRing<F> {
    pub fn new(ring: PolyRing<F>, relations: Vec<Polynomial<F::Elem>>) -> Self {
        let gb = buchberger(&ring, &relations);
        QuotientRing {
            ring,
            relations,
            gb,
        }
    }

    pub fn from_presentation(p: &GradedRingPresentation, field: F) -> Self {
        let ring = p.poly_ring(field);
        let rel = p.generators_in(&ring);
        Self::new(ring, rel)
    }

    /// The ambient polynomial ring viewed as a quotient by the zero ideal.
    pub fn ambient(&self) -> Self {
        Self::new(self.ring.clone(), Vec::new())
    }

    /// `R / (extra)` as a new quotient of the same ambient ring.
    pub fn quotient_by(&self, extra: &[Polynomial<F::Elem>]) -> Self {
        let mut rel = self.relations.clone();
        rel.extend(extra.iter().cloned());
        Self::new(self.ring.clone(), rel)
    }

    pub fn poly_ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn relations(&self) -> &[Polynomial<F::Elem>] {
        &self.relations
    }

    pub fn gb(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn reduce(&self, p: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        self.gb.normal_form(p)
    }

    pub fn is_zero(&self, p: &Polynomial<F::Elem>) -> bool {
        self.gb.contains(p)
    }

    pub fn mul(&self, a: &Polynomial<F::Elem>, b: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        self.reduce(&self.ring.mul(a, b))
    }

    pub fn is_zero_ring(&self) -> bool {
        self.gb.is_unit_ideal()
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        self.gb.hilbert_series()
    }

    pub fn is_artinian(&self) -> bool {
        matches!(self.hilbert_series().pole_order(), Some(0) | None)
    }

    /// Highest degree with `R_d ≠ 0`, for artinian rings.
    pub fn top_degree(&self) -> Option<i64> {
        self.hilbert_series().top_degree()
    }

    /// Standard monomials of degree `d`, descending in the monomial order.
    pub fn standard_monomials(&self, d: i64) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = Monomial::all_of_degree(self.ring.weights(), d)
            .into_iter()
            .filter(|m| self.gb.is_standard(m))
            .collect();
        v.sort_by(|a, b| self.ring.cmp(b, a));
        v
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial<F::Elem>> {
        Ok(self.reduce(&self.ring.parse(s)?))
    }

    pub fn format(&self, p: &Polynomial<F::Elem>) -> String {
        self.ring.format(p)
    }

    /// Gröbner basis of the preimage `J + I_R` of an ideal `J` of `R`.
    pub fn ideal_gb(&self, gens: &[Polynomial<F::Elem>]) -> GroebnerBasis<F> {
        self.ideal_gb_truncated(gens, None)
    }

    pub fn ideal_gb_truncated(
        &self,
        gens: &[Polynomial<F::Elem>],
        limit: Option<i64>,
    ) -> GroebnerBasis<F> {
        let mut all = self.relations.clone();
        all.extend(gens.iter().cloned());
        GroebnerBasis::truncated(&self.ring, &all, limit)
    }

    pub fn ideal_contains(&self, gens: &[Polynomial<F::Elem>], f: &Polynomial<F::Elem>) -> bool {
        let limit = self.ring.weighted_degree(f).ok();
        self.ideal_gb_truncated(gens, limit).contains(f)
    }

    /// The variables, which generate the irrelevant maximal ideal.
    pub fn maximal_ideal(&self) -> Vec<Polynomial<F::Elem>> {
        (0..self.nvars()).map(|i| self.ring.var(i)).collect()
    }

    /// Minimal homogeneous generators of `J`, chosen greedily by ascending degree.
    ///
    /// Input order is kept among elements of equal degree; zero elements are dropped.
    pub fn minimal_generators(
        &self,
        gens: &[Polynomial<F::Elem>],
    ) -> Result<Vec<Polynomial<F::Elem>>> {
        let mut cands: Vec<(i64, Polynomial<F::Elem>)> = Vec::new();
        for g in gens {
            let r = self.reduce(g);
            if r.is_zero() {
                continue;
            }
            let d = self.ring.weighted_degree(&r)?;
            cands.push((d, r));
        }
        cands.sort_by_key(|c| c.0);
        let mut kept: Vec<Polynomial<F::Elem>> = Vec::new();
        for (d, g) in cands {
            if !self.ideal_gb_truncated(&kept, Some(d)).contains(&g) {
                kept.push(g);
            }
        }
        Ok(kept)
    }

    /// Minimal generators of `(J : f)` in `R`.
    pub fn colon(
        &self,
        gens: &[Polynomial<F::Elem>],
        f: &Polynomial<F::Elem>,
    ) -> Result<Vec<Polynomial<F::Elem>>> {
        let f = self.reduce(f);
        if f.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let mut all = self.relations.clone();
        all.extend(gens.iter().cloned());
        let c = colon_ideal(&self.ring, &all, &f)?;
        self.minimal_generators(&c)
    }

    /// Minimal generators of the annihilator `(0 : f)`.
    pub fn annihilator(&self, f: &Polynomial<F::Elem>) -> Result<Vec<Polynomial<F::Elem>>> {
        self.colon(&[], f)
    }

    /// Whether two ideals of `R` coincide.
    pub fn ideals_equal(&self, a: &[Polynomial<F::Elem>], b: &[Polynomial<F::Elem>]) -> bool {
        let ga = self.ideal_gb(a);
        let gb = self.ideal_gb(b);
        ga.generators() == gb.generators()
    }
}
