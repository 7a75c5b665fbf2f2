//! Numerical invariants: dimension, depth, embedding dimension, grade and
//! the Cohen-Macaulay and complete intersection defects.

use serde::Serialize;

use crate::complexes::{homology_series, koszul_complex};
use crate::error::Result;
use crate::field::Field;
use crate::poly::Polynomial;
use crate::qci::{grade, qci_check};
use crate::quotient::QuotientRing;
use crate::series::deviations;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantRecord {
    pub dim: i64,
    pub depth: i64,
    pub edim: usize,
    /// `dim - depth`.
    pub cmd: i64,
    /// `ε_2 - ε_1 + dim`.
    pub cid: i64,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealInvariants {
    pub grade: usize,
    /// Minimal number of generators.
    pub c: usize,
    /// Rank of `H_1` of the Koszul complex when it is free.
    pub h: Option<usize>,
    pub flags: Vec<String>,
}

/// `max{i : H_i(K) ≠ 0}` for the Koszul complex `K` on `gens`, or `None` if all vanish.
fn top_koszul_homology<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
) -> Result<Option<usize>> {
    let k = koszul_complex(ring, gens)?;
    for i in (0..=gens.len()).rev() {
        if !homology_series(ring, &k, i)?.is_zero() {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

pub fn krull_dimension<F: Field>(ring: &QuotientRing<F>) -> i64 {
    ring.hilbert_series().pole_order().map_or(-1, |d| d as i64)
}

pub fn embedding_dimension<F: Field>(ring: &QuotientRing<F>) -> Result<usize> {
    Ok(ring.minimal_generators(&ring.maximal_ideal())?.len())
}

pub fn depth<F: Field>(ring: &QuotientRing<F>) -> Result<i64> {
    if ring.is_zero_ring() {
        return Ok(-1);
    }
    let m = ring.minimal_generators(&ring.maximal_ideal())?;
    let top = top_koszul_homology(ring, &m)?.unwrap_or(0);
    Ok(m.len() as i64 - top as i64)
}

pub fn local_invariants<F: Field>(ring: &QuotientRing<F>) -> Result<InvariantRecord> {
    if ring.is_zero_ring() {
        return Ok(InvariantRecord {
            dim: -1,
            depth: -1,
            edim: 0,
            cmd: 0,
            cid: 0,
            flags: vec!["zero ring: dimension and depth set to -1".into()],
        });
    }
    let dim = krull_dimension(ring);
    let edim = embedding_dimension(ring)?;
    let depth = depth(ring)?;
    let dev = deviations(ring, 2)?;
    Ok(InvariantRecord {
        dim,
        depth,
        edim,
        cmd: dim - depth,
        cid: dev.get(2) - dev.get(1) + dim,
        flags: Vec::new(),
    })
}

pub fn ideal_invariants<F: Field>(
    ring: &QuotientRing<F>,
    gens: &[Polynomial<F::Elem>],
) -> Result<IdealInvariants> {
    let report = qci_check(ring, gens)?;
    let mut flags = Vec::new();
    if report.c == 0 {
        flags.push("zero ideal: grade set to 0".into());
    }
    Ok(IdealInvariants {
        grade: grade(ring, gens)?,
        c: report.c,
        h: report.h,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::presentation::parse_ring_spec;

    fn ring(text: &str) -> QuotientRing<PrimeField> {
        let p = parse_ring_spec(text).unwrap();
        QuotientRing::from_presentation(&p, PrimeField::new(32003).unwrap())
    }

    fn triple(r: &InvariantRecord) -> (i64, i64, usize, i64, i64) {
        (r.dim, r.depth, r.edim, r.cmd, r.cid)
    }

    #[test]
    fn non_cohen_macaulay_ring() {
        let r = ring("field GF 32003\nvars x y\nideal x*y, y^2\nend");
        assert_eq!(triple(&local_invariants(&r).unwrap()), (1, 0, 2, 1, 1));
    }

    #[test]
    fn artinian_examples() {
        let r = ring("field GF 32003\nvars x y\nideal x^2, y^3\nend");
        assert_eq!(triple(&local_invariants(&r).unwrap()), (0, 0, 2, 0, 0));
        let t = ring("field GF 32003\nvars w x y z\nideal w^2, w*x-y^2, w*y-x*z, w*z, x^2+y*z, x*y, z^2\nend");
        assert_eq!(triple(&local_invariants(&t).unwrap()), (0, 0, 4, 0, 3));
    }

    #[test]
    fn polynomial_ring_and_linear_relations() {
        let r = ring("field GF 32003\nvars x y z\nideal\nend");
        assert_eq!(triple(&local_invariants(&r).unwrap()), (3, 3, 3, 0, 0));
        let l = ring("field GF 32003\nvars x y z\nideal x - y, z^2\nend");
        assert_eq!(triple(&local_invariants(&l).unwrap()), (1, 1, 2, 0, 0));
    }

    #[test]
    fn ideal_records() {
        let r = ring("field GF 32003\nvars x y\nideal\nend");
        let inv =
            ideal_invariants(&r, &[r.parse("x*y").unwrap(), r.parse("y^2").unwrap()]).unwrap();
        assert_eq!((inv.grade, inv.c), (1, 2));
        let z = ideal_invariants(&r, &[]).unwrap();
        assert_eq!((z.grade, z.c), (0, 0));
        assert_eq!(z.flags.len(), 1);
    }
}
