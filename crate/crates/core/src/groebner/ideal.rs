use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};

use super::{syzygies_modulo, HilbertSeries, ModVec, ModuleGb, ModuleSpace};

/// Reduced Gröbner basis of a homogeneous ideal of `P`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    inner: ModuleGb<F>,
    generators: Vec<Polynomial<F::Elem>>,
}

fn to_vec<F: Field>(space: &ModuleSpace<F>, p: &Polynomial<F::Elem>) -> ModVec<F::Elem> {
    space.from_polys(&[(0, p.clone())])
}

fn to_poly<F: Field>(v: &ModVec<F::Elem>) -> Polynomial<F::Elem> {
    Polynomial::from_sorted_terms(
        v.terms()
            .iter()
            .map(|(_, m, c)| (m.clone(), c.clone()))
            .collect(),
    )
}

/// Reduced Gröbner basis of the ideal generated by homogeneous `gens`.
pub fn buchberger<F: Field>(ring: &PolyRing<F>, gens: &[Polynomial<F::Elem>]) -> GroebnerBasis<F> {
    GroebnerBasis::truncated(ring, gens, None)
}

impl<F: Field> GroebnerBasis<F> {
    /// Basis complete through the given degree (all degrees when `None`).
    pub fn truncated(ring: &PolyRing<F>, gens: &[Polynomial<F::Elem>], limit: Option<i64>) -> Self {
        let space = ModuleSpace::ideal_space(ring.clone());
        let vecs: Vec<ModVec<F::Elem>> = gens.iter().map(|g| to_vec(&space, g)).collect();
        let inner = ModuleGb::compute(&space, &vecs, limit);
        let generators = inner.elements().iter().map(to_poly::<F>).collect();
        GroebnerBasis { inner, generators }
    }

    /// Same ideal with a different monomial order.
    pub fn with_order(
        ring: &PolyRing<F>,
        gens: &[Polynomial<F::Elem>],
        order: MonomialOrder,
    ) -> Self {
        let r = PolyRing::new(
            ring.field().clone(),
            ring.names().to_vec(),
            ring.weights().to_vec(),
            order,
        );
        let gens: Vec<_> = gens
            .iter()
            .map(|g| r.from_terms(g.terms().to_vec()))
            .collect();
        buchberger(&r, &gens)
    }

    pub fn ring(&self) -> &PolyRing<F> {
        self.inner.space().ring()
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring().order()
    }

    pub fn generators(&self) -> &[Polynomial<F::Elem>] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.inner.leads().iter().map(|(_, m)| m.clone()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        to_poly::<F>(&self.inner.reduce(&to_vec(self.inner.space(), f)))
    }

    pub fn contains(&self, f: &Polynomial<F::Elem>) -> bool {
        self.inner.contains(&to_vec(self.inner.space(), f))
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.inner.leads().iter().any(|(_, m)| m.is_one())
    }

    /// Whether `m` is a standard monomial (not a leading-term multiple).
    pub fn is_standard(&self, m: &Monomial) -> bool {
        !self.inner.leads().iter().any(|(_, l)| l.divides(m))
    }

    /// Hilbert series of `P / I`.
    pub fn hilbert_series(&self) -> HilbertSeries {
        self.inner.quotient_series()
    }
}

/// Reduced Gröbner basis of `(I : f) = { q : q f ∈ I }`.
pub fn colon_ideal<F: Field>(
    ring: &PolyRing<F>,
    ideal: &[Polynomial<F::Elem>],
    f: &Polynomial<F::Elem>,
) -> Result<Vec<Polynomial<F::Elem>>> {
    if f.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let d = ring.weighted_degree(f)?;
    let target = ModuleSpace::ideal_space(ring.clone());
    let ambient: Vec<_> = ideal.iter().map(|g| to_vec(&target, g)).collect();
    let col = to_vec(&target, f);
    let syz = syzygies_modulo(ring, &[0], &ambient, &[col], &[d], None);
    let gens: Vec<Polynomial<F::Elem>> = syz.iter().map(to_poly::<F>).collect();
    Ok(buchberger(ring, &gens).generators().to_vec())
}

/// Reduced Gröbner basis of `I ∩ J`.
pub fn intersect_ideals<F: Field>(
    ring: &PolyRing<F>,
    a: &[Polynomial<F::Elem>],
    b: &[Polynomial<F::Elem>],
) -> Vec<Polynomial<F::Elem>> {
    let b: Vec<_> = b.iter().filter(|p| !p.is_zero()).cloned().collect();
    let target = ModuleSpace::ideal_space(ring.clone());
    let ambient: Vec<_> = a.iter().map(|g| to_vec(&target, g)).collect();
    let cols: Vec<_> = b.iter().map(|g| to_vec(&target, g)).collect();
    let degs: Vec<i64> = b
        .iter()
        .map(|g| ring.weighted_degree(g).expect("homogeneous"))
        .collect();
    let syz = syzygies_modulo(ring, &[0], &ambient, &cols, &degs, None);
    let src = ModuleSpace::new(ring.clone(), degs);
    let gens: Vec<Polynomial<F::Elem>> = syz
        .iter()
        .map(|s| {
            src.to_polys(s)
                .iter()
                .zip(&b)
                .fold(ring.zero(), |acc, (c, g)| ring.add(&acc, &ring.mul(c, g)))
        })
        .collect();
    buchberger(ring, &gens).generators().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, RationalField};

    fn gf() -> PolyRing<PrimeField> {
        PolyRing::standard(PrimeField::new(32003).unwrap(), &["x", "y"])
    }

    fn parse_all<F: Field>(r: &PolyRing<F>, s: &[&str]) -> Vec<Polynomial<F::Elem>> {
        s.iter().map(|t| r.parse(t).unwrap()).collect()
    }

    #[test]
    fn sum_and_difference_over_q() {
        let r = PolyRing::standard(RationalField, &["x", "y"]);
        let gb = buchberger(&r, &parse_all(&r, &["x+y", "x-y"]));
        assert_eq!(gb.generators(), parse_all(&r, &["x", "y"]).as_slice());
    }

    #[test]
    fn already_reduced() {
        let r = gf();
        let gb = buchberger(&r, &parse_all(&r, &["x*y", "y^2"]));
        assert_eq!(gb.generators(), parse_all(&r, &["x*y", "y^2"]).as_slice());
    }

    #[test]
    fn normal_forms() {
        let r = gf();
        let gb = buchberger(&r, &parse_all(&r, &["x*y", "y^2"]));
        assert!(gb.normal_form(&r.parse("x*y").unwrap()).is_zero());
        assert_eq!(
            gb.normal_form(&r.parse("x^2").unwrap()),
            r.parse("x^2").unwrap()
        );
        let sq = buchberger(&r, &parse_all(&r, &["x^2"]));
        assert!(sq.normal_form(&r.parse("x^2").unwrap()).is_zero());
    }

    #[test]
    fn series_of_xy_y2() {
        let r = gf();
        let gb = buchberger(&r, &parse_all(&r, &["x*y", "y^2"]));
        assert_eq!(
            gb.hilbert_series(),
            HilbertSeries::new(0, vec![1, 1, -1], vec![1])
        );
        let zero = buchberger(&r, &[]);
        assert_eq!(
            zero.hilbert_series(),
            HilbertSeries::new(0, vec![1], vec![1, 1])
        );
    }

    #[test]
    fn colons() {
        let r = gf();
        let i = parse_all(&r, &["x*y", "y^2"]);
        assert_eq!(
            colon_ideal(&r, &i, &r.parse("y").unwrap()).unwrap(),
            parse_all(&r, &["x", "y"])
        );
        assert_eq!(
            colon_ideal(&r, &i, &r.parse("x").unwrap()).unwrap(),
            parse_all(&r, &["y"])
        );
        assert_eq!(
            colon_ideal(&r, &i, &r.zero()),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn intersection_of_principal_ideals() {
        let r = gf();
        let got = intersect_ideals(&r, &parse_all(&r, &["x^2"]), &parse_all(&r, &["x*y"]));
        assert_eq!(got, parse_all(&r, &["x^2*y"]));
    }

    #[test]
    fn order_independent_output() {
        let r = gf();
        let a = buchberger(&r, &parse_all(&r, &["x^2+y^2", "x*y", "y^3"]));
        let b = buchberger(&r, &parse_all(&r, &["y^3", "x*y", "x^2+y^2"]));
        assert_eq!(a.generators(), b.generators());
    }
}
