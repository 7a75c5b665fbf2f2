//! Built-in rings and ideals, and seeded random quadratic algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{AlgebraError, Result};
use crate::field::{Field, PrimeField};
use crate::monomial::Monomial;
use crate::poly::{PolyRing, Polynomial};
use crate::presentation::{parse_ring_spec, GradedRingPresentation};
use crate::quotient::QuotientRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealSpec {
    Generators(&'static [&'static str]),
    /// The irrelevant maximal ideal.
    Maximal,
}

#[derive(Clone, Copy, Debug)]
pub struct Instance {
    pub name: &'static str,
    pub description: &'static str,
    pub ring: &'static str,
    pub ideal: IdealSpec,
}

pub const INSTANCES: &[Instance] = &[
    Instance {
        name: "thm44",
        description: "artinian ring with exact zero-divisor x, ideal (x)",
        ring: "field GF 32003\nvars w x y z\nideal\n  w^2, w*x - y^2, w*y - x*z, w*z, x^2 + y*z, x*y, z^2\nend\n",
        ideal: IdealSpec::Generators(&["x"]),
    },
    Instance {
        name: "gor5",
        description: "Gorenstein ring k[x,y,z]/(x^2-y^2, y^2-z^2, xy, xz, yz), maximal ideal",
        ring: "field GF 32003\nvars x y z\nideal\n  x^2 - y^2, y^2 - z^2, x*y, x*z, y*z\nend\n",
        ideal: IdealSpec::Maximal,
    },
    Instance {
        name: "xy-y2",
        description: "k[x,y]/(xy, y^2), ideal (x)",
        ring: "field GF 32003\nvars x y\nideal\n  x*y, y^2\nend\n",
        ideal: IdealSpec::Generators(&["x"]),
    },
    Instance {
        name: "hypersurface",
        description: "k[x]/(x^2), ideal (x)",
        ring: "field GF 32003\nvars x\nideal\n  x^2\nend\n",
        ideal: IdealSpec::Generators(&["x"]),
    },
    Instance {
        name: "ci-x2y3",
        description: "k[x,y], ideal (x^2, y^3)",
        ring: "field GF 32003\nvars x y\nideal\nend\n",
        ideal: IdealSpec::Generators(&["x^2", "y^3"]),
    },
    Instance {
        name: "plane-x2",
        description: "k[x,y], ideal (x^2)",
        ring: "field GF 32003\nvars x y\nideal\nend\n",
        ideal: IdealSpec::Generators(&["x^2"]),
    },
    Instance {
        name: "line-x2",
        description: "k[x], ideal (x^2); I ∩ m^2 is not inside mI",
        ring: "field GF 32003\nvars x\nideal\nend\n",
        ideal: IdealSpec::Generators(&["x^2"]),
    },
];

pub fn instance(name: &str) -> Option<&'static Instance> {
    INSTANCES.iter().find(|i| i.name == name)
}

impl Instance {
    pub fn presentation(&self) -> GradedRingPresentation {
        parse_ring_spec(self.ring).expect("built-in ring parses")
    }

    pub fn ideal_in<F: Field>(&self, ring: &QuotientRing<F>) -> Result<Vec<Polynomial<F::Elem>>> {
        resolve_ideal(ring, &self.ideal)
    }
}

pub fn resolve_ideal<F: Field>(
    ring: &QuotientRing<F>,
    spec: &IdealSpec,
) -> Result<Vec<Polynomial<F::Elem>>> {
    match spec {
        IdealSpec::Maximal => Ok(ring.maximal_ideal()),
        IdealSpec::Generators(g) => g.iter().map(|s| ring.parse(s)).collect(),
    }
}

fn random_quadric(ring: &PolyRing<PrimeField>, rng: &mut ChaCha8Rng) -> Polynomial<u32> {
    let n = ring.nvars();
    let p = ring.field().modulus();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut e = vec![0u16; n];
            e[i] += 1;
            e[j] += 1;
            terms.push((Monomial::from_exponents(&e), rng.gen_range(0..p)));
        }
    }
    ring.from_terms(terms)
}

/// A standard graded artinian algebra `k[x_1..x_e] / (quadrics)` with
/// `dim R_2 = r2`, drawn from a seeded generator; resamples until the rank
/// condition holds.
pub fn random_quadratic_algebra(
    p: u32,
    e: usize,
    r2: usize,
    seed: u64,
) -> Result<QuotientRing<PrimeField>> {
    let quadrics = e * (e + 1) / 2;
    if e == 0 || r2 > quadrics {
        return Err(AlgebraError::InvalidArgument(format!(
            "no quadratic algebra with e = {e} and rank R_2 = {r2}"
        )));
    }
    let field = PrimeField::new(p)?;
    let names: Vec<String> = (1..=e).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = PolyRing::standard(field, &refs);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rels: Vec<Polynomial<u32>> = (0..quadrics - r2)
            .map(|_| random_quadric(&ring, &mut rng))
            .collect();
        let q = QuotientRing::new(ring.clone(), rels);
        if q.standard_monomials(2).len() == r2 && q.is_artinian() {
            return Ok(q);
        }
    }
}
